// The 39-rule rewrite system over path terms: rule table, redex search,
// single-step application, normalization with traces, and rw-equality.

#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cpath/term.hpp"

namespace cpath {

enum class Fragment {
  Core,   // sigma/tau/rho/subL/subR only
  Mixed,  // xi/mu/nu involved
};

// How a rule's right-hand side is built once the left-hand side matched.
enum class RhsKind {
  Pattern,    // instantiate rhs pattern with the matched substitution
  PlugRho,    // C[rho]: plug rho into the matched context
  KeepSlot1,  // the first context slot unchanged
  KeepSlot2,  // the second context slot unchanged
};

struct Rule {
  int index = 0;  // 1-based, stable
  std::string name;
  Fragment fragment = Fragment::Core;

  // lhs is a pattern over `vars`. Context rules additionally carry two slot
  // variables (slot1/slot2 names inside lhs) related by `relation`; the
  // slots stand for C[x] and C[y] with a shared one-hole context C.
  TermPtr lhs;
  TermPtr rhs;  // Pattern kind only
  std::set<std::string> vars;
  std::optional<ContextRelation> relation;
  std::string slot1, slot2;
  RhsKind rhs_kind = RhsKind::Pattern;

  // First-order (bare-hole) instance, used by the termination and
  // confluence checkers: slots replaced by the related pair over
  // `relation_var`.
  TermPtr fo_lhs;
  TermPtr fo_rhs;
  std::set<std::string> fo_vars;
  std::string relation_var;

  // Human-readable shapes, e.g. "tau(C[r],C[sigma(r)])" => "C[rho]".
  std::string display_lhs;
  std::string display_rhs;

  bool is_context() const { return relation.has_value(); }
};

// The full rule table, indices 1-39. Built once, shared.
const std::vector<Rule>& rule_table();
const Rule& rule_by_name(const std::string& name);
const Rule& rule_by_index(int index);

// A rule subset with a root-operator dispatch table.
class RuleSet {
 public:
  explicit RuleSet(std::vector<const Rule*> rules);

  static const RuleSet& all();    // all 39
  static const RuleSet& core();   // 1-12, 25-27, 33-39
  static const RuleSet& mixed();  // 13-24, 28-32
  // The sigma/tau/rho fragment {1-6, 25, 37-39}: the ten rules that
  // rewrite inverse/composition/identity words. Confluent and terminating
  // on terms built from atoms, rho, sigma and tau.
  static const RuleSet& group();

  static RuleSet by_names(const std::vector<std::string>& names);
  RuleSet without(const std::vector<std::string>& names) const;

  const std::vector<const Rule*>& rules() const { return rules_; }
  const std::vector<const Rule*>& rules_for(Op root) const;
  bool contains(const std::string& name) const;

 private:
  std::vector<const Rule*> rules_;
  std::map<Op, std::vector<const Rule*>> dispatch_;
  std::vector<const Rule*> empty_;
};

// Tries `rule` at the root of `t`; the rewritten root-level term on success.
std::optional<TermPtr> try_rule(const Rule& rule, const TermPtr& t);

struct Redex {
  const Rule* rule;
  Position pos;
};

// Every (rule, position) pair applicable in t, sorted by rule index and
// then by outermost-leftmost position.
std::vector<Redex> applicable_redexes(const TermPtr& t, const RuleSet& rules);

struct RewriteStep {
  std::string rule;
  int rule_index = 0;   // 0 for surface steps recorded outside the table
  bool mixed = false;   // rendered as "[mixed]" after the rule name
  Position pos;
  TermPtr before;  // whole term before the step
  TermPtr after;   // whole term after the step
};

struct RewriteTrace {
  TermPtr initial;
  std::vector<RewriteStep> steps;
  TermPtr result;  // the final term; equals initial when steps is empty
};

class NotApplicableError : public Error {
 public:
  using Error::Error;
};

class StepLimitError : public Error {
 public:
  using Error::Error;
};

// Applies `rule` at position `pos`; throws NotApplicableError otherwise.
RewriteStep apply_step(const TermPtr& t, const Rule& rule, const Position& pos);

enum class Strategy {
  OutermostLeftmost,
  InnermostLeftmost,
  SeededRandom,
};

struct NormalizeOptions {
  Strategy strategy = Strategy::OutermostLeftmost;
  std::uint64_t seed = 0;
  std::size_t step_limit = 10000;
  const RuleSet* rules = nullptr;  // nullptr = all 39
};

// Rewrites to normal form; the trace records every step. Throws
// StepLimitError when the limit is exceeded (the system is terminating, so
// hitting the limit indicates an engine defect, not bad input).
RewriteTrace normalize(const TermPtr& t, const NormalizeOptions& opts = {});

struct RwEqualResult {
  bool equal = false;
  RewriteTrace left;
  RewriteTrace right;
};

// rw-equality: both sides normalize to the same term. The traces witness it.
RwEqualResult rw_equal(const TermPtr& a, const TermPtr& b,
                       const NormalizeOptions& opts = {});

// Serialization: "step <k>: <rule> @ <pos> : <before> => <after>" (1-based k;
// mixed-fragment rules render as "<rule>[mixed]").
std::string step_rule_label(const RewriteStep& step);
std::string print_step(const RewriteStep& step, std::size_t k);
std::vector<std::string> print_trace(const RewriteTrace& trace);

// True when replaying the steps with apply_step reproduces the trace exactly.
bool replay_trace(const RewriteTrace& trace);

// Structural equality: same endpoints and the same steps (rule, position,
// before, after) in the same order.
bool trace_equal(const RewriteTrace& a, const RewriteTrace& b);

}  // namespace cpath
