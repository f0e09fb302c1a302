// Recursive path ordering over path terms, with a configurable operator
// precedence and per-operator status (multiset or left-to-right
// lexicographic). Used to certify rule orientation (lhs > rhs).

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cpath/term.hpp"
#include "cpath/trs.hpp"

namespace cpath {

// Strict precedence over operator symbols. Atoms are minimal constants,
// mutually incomparable and below every operator only through the ordering's
// subterm case (they never appear in the table).
class PrecedenceTable {
 public:
  // Takes strict pairs f > g; stores the transitive closure. Throws Error
  // if the closure is cyclic.
  explicit PrecedenceTable(const std::vector<std::pair<Op, Op>>& pairs);

  bool greater(Op f, Op g) const;
  const std::vector<std::pair<Op, Op>>& pairs() const { return closure_; }

  // The printed precedence: sigma > tau > rho, sigma above the congruence
  // operators and both substitutions, tau > subL.
  static const PrecedenceTable& minimal();
  // minimal() plus tau > subR, which rules 35/36 (tsblr/tsbrr) need; without
  // it no RPO case applies to them under either status.
  static const PrecedenceTable& standard();

 private:
  std::vector<std::pair<Op, Op>> closure_;
};

enum class Status { Multiset, Lexicographic };

using StatusMap = std::map<Op, Status>;

// Everything multiset except tau, which is lexicographic left-to-right
// (plain multiset status cannot orient the associativity rule tt).
StatusMap default_status();
StatusMap all_multiset_status();

bool rpo_greater(const TermPtr& s, const TermPtr& t,
                 const PrecedenceTable& prec, const StatusMap& status);

// Dershowitz-Manna extension of `base`: A >> B iff A != B and every element
// of B - A is dominated by some element of A - B.
bool multiset_greater(
    const std::vector<TermPtr>& a, const std::vector<TermPtr>& b,
    const std::function<bool(const TermPtr&, const TermPtr&)>& base);

struct OrientationResult {
  int index = 0;
  std::string name;
  bool oriented = false;
  // One entry per checked instance (bare hole, plus C = xi1([.]) for
  // context rules): which RPO case decided the root comparison, or why
  // none applied.
  std::string detail;
};

std::vector<OrientationResult> check_rule_orientation(
    const RuleSet& rules, const PrecedenceTable& prec, const StatusMap& status);

}  // namespace cpath
