#include "cpath/trs.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <sstream>

namespace cpath {

namespace {

const std::set<std::string> kVarUniverse{"r", "s", "t", "u", "v", "C1", "C2"};

void collect_vars(const TermPtr& t, std::set<std::string>& out) {
  if (t->op == Op::Atom && kVarUniverse.count(t->name)) out.insert(t->name);
  for (const auto& a : t->args) collect_vars(a, out);
}

// The related pair (side1, side2) a context relation imposes on its hole,
// expressed over the relation variable.
std::pair<TermPtr, TermPtr> relation_sides(ContextRelation rel,
                                           const std::string& var) {
  TermPtr x = atom(var);
  switch (rel) {
    case ContextRelation::PlainVsSigma:
      return {x, sigma(x)};
    case ContextRelation::SigmaVsPlain:
      return {sigma(x), x};
    case ContextRelation::PlainVsRho:
      return {x, rho()};
    case ContextRelation::RhoVsPlain:
      return {rho(), x};
    case ContextRelation::EqualU:
      return {x, x};
  }
  throw Error("unknown context relation");
}

Rule plain_rule(int index, const char* name, Fragment fragment,
                const char* lhs, const char* rhs) {
  Rule r;
  r.index = index;
  r.name = name;
  r.fragment = fragment;
  r.lhs = parse(lhs);
  r.rhs = parse(rhs);
  collect_vars(r.lhs, r.vars);
  r.fo_lhs = r.lhs;
  r.fo_rhs = r.rhs;
  r.fo_vars = r.vars;
  r.display_lhs = print(r.lhs);
  r.display_rhs = print(r.rhs);
  return r;
}

Rule context_rule(int index, const char* name, const char* lhs,
                  ContextRelation rel, RhsKind kind, const char* rhs,
                  const char* relation_var, const char* display_lhs,
                  const char* display_rhs) {
  Rule r;
  r.index = index;
  r.name = name;
  r.fragment = Fragment::Core;  // every context rule is core
  r.lhs = parse(lhs);
  r.relation = rel;
  r.slot1 = "C1";
  r.slot2 = "C2";
  r.rhs_kind = kind;
  r.relation_var = relation_var;
  collect_vars(r.lhs, r.vars);
  if (kind == RhsKind::Pattern) r.rhs = parse(rhs);

  // Bare-hole instance for the first-order checkers.
  auto [side1, side2] = relation_sides(rel, r.relation_var);
  Substitution slots{{"C1", side1}, {"C2", side2}};
  r.fo_lhs = substitute(r.lhs, slots, {"C1", "C2"});
  switch (kind) {
    case RhsKind::Pattern:
      r.fo_rhs = r.rhs;
      break;
    case RhsKind::PlugRho:
      r.fo_rhs = rho();
      break;
    case RhsKind::KeepSlot1:
      r.fo_rhs = side1;
      break;
    case RhsKind::KeepSlot2:
      r.fo_rhs = side2;
      break;
  }
  collect_vars(r.fo_lhs, r.fo_vars);
  r.display_lhs = display_lhs;
  r.display_rhs = display_rhs;
  return r;
}

std::vector<Rule> build_table() {
  using CR = ContextRelation;
  using RK = RhsKind;
  const Fragment core = Fragment::Core;
  const Fragment mixed = Fragment::Mixed;
  std::vector<Rule> t;
  t.reserve(39);
  t.push_back(plain_rule(1, "sr", core, "sigma(rho)", "rho"));
  t.push_back(plain_rule(2, "ss", core, "sigma(sigma(r))", "r"));
  t.push_back(context_rule(3, "tr", "tau(C1,C2)", CR::PlainVsSigma,
                           RK::PlugRho, "", "r", "tau(C[r],C[sigma(r)])",
                           "C[rho]"));
  t.push_back(context_rule(4, "tsr", "tau(C1,C2)", CR::SigmaVsPlain,
                           RK::PlugRho, "", "r", "tau(C[sigma(r)],C[r])",
                           "C[rho]"));
  t.push_back(context_rule(5, "trr", "tau(C1,C2)", CR::PlainVsRho,
                           RK::KeepSlot1, "", "r", "tau(C[r],C[rho])",
                           "C[r]"));
  t.push_back(context_rule(6, "tlr", "tau(C1,C2)", CR::RhoVsPlain,
                           RK::KeepSlot2, "", "r", "tau(C[rho],C[r])",
                           "C[r]"));
  t.push_back(context_rule(7, "slr", "subL(C1,C2)", CR::PlainVsRho,
                           RK::KeepSlot1, "", "r", "subL(C[r],C[rho])",
                           "C[r]"));
  t.push_back(context_rule(8, "srr", "subR(C1,C2)", CR::RhoVsPlain,
                           RK::KeepSlot2, "", "r", "subR(C[rho],C[r])",
                           "C[r]"));
  t.push_back(context_rule(9, "sls", "subL(subL(s,C1),C2)", CR::PlainVsSigma,
                           RK::Pattern, "s", "r",
                           "subL(subL(s,C[r]),C[sigma(r)])", "s"));
  t.push_back(context_rule(10, "slss", "subL(subL(s,C1),C2)",
                           CR::SigmaVsPlain, RK::Pattern, "s", "r",
                           "subL(subL(s,C[sigma(r)]),C[r])", "s"));
  t.push_back(context_rule(11, "srs", "subR(C1,subR(C2,r))", CR::PlainVsSigma,
                           RK::Pattern, "r", "s",
                           "subR(C[s],subR(C[sigma(s)],r))", "r"));
  t.push_back(context_rule(12, "srrr", "subR(C1,subR(C2,r))",
                           CR::SigmaVsPlain, RK::Pattern, "r", "s",
                           "subR(C[sigma(s)],subR(C[s],r))", "r"));
  t.push_back(plain_rule(13, "mx2l1", mixed, "mu1(xi1(r))", "r"));
  t.push_back(plain_rule(14, "mx2l2", mixed, "mu1(xiA(r,s))", "r"));
  t.push_back(plain_rule(15, "mx2r1", mixed, "mu2(xiA(r,s))", "s"));
  t.push_back(plain_rule(16, "mx2r2", mixed, "mu2(xi2(s))", "s"));
  t.push_back(plain_rule(17, "mx3l", mixed, "mu(xi1(r),s,u)", "s"));
  t.push_back(plain_rule(18, "mx3r", mixed, "mu(xi2(r),s,u)", "u"));
  t.push_back(plain_rule(19, "mxl", mixed, "nu(xi(r))", "r"));
  t.push_back(plain_rule(20, "mxr", mixed, "mu(xi2(r),s)", "s"));
  t.push_back(plain_rule(21, "mx", mixed, "xi(mu1(r),mu2(r))", "r"));
  t.push_back(plain_rule(22, "mxx", mixed, "mu(t,xi1(r),xi2(s))", "t"));
  t.push_back(plain_rule(23, "xmr", mixed, "xi(nu(r))", "r"));
  t.push_back(plain_rule(24, "mx1r", mixed, "mu(s,xi2(r))", "s"));
  t.push_back(plain_rule(25, "stss", core, "sigma(tau(r,s))",
                         "tau(sigma(s),sigma(r))"));
  t.push_back(plain_rule(26, "ssbl", core, "sigma(subL(r,s))",
                         "subR(sigma(s),sigma(r))"));
  t.push_back(plain_rule(27, "ssbr", core, "sigma(subR(r,s))",
                         "subL(sigma(s),sigma(r))"));
  t.push_back(plain_rule(28, "sx", mixed, "sigma(xi(r))", "xi(sigma(r))"));
  t.push_back(plain_rule(29, "sxss", mixed, "sigma(xi(s,r))",
                         "xi(sigma(s),sigma(r))"));
  t.push_back(plain_rule(30, "sm", mixed, "sigma(mu(r))", "mu(sigma(r))"));
  t.push_back(plain_rule(31, "smss", mixed, "sigma(mu(s,r))",
                         "mu(sigma(s),sigma(r))"));
  t.push_back(plain_rule(32, "smsss", mixed, "sigma(mu(r,u,v))",
                         "mu(sigma(r),sigma(u),sigma(v))"));
  t.push_back(plain_rule(33, "tsbll", core, "tau(r,subL(rho,s))",
                         "subL(r,s)"));
  t.push_back(plain_rule(34, "tsbrl", core, "tau(r,subR(s,rho))",
                         "subL(r,s)"));
  t.push_back(plain_rule(35, "tsblr", core, "tau(subL(r,s),t)",
                         "tau(r,subR(s,t))"));
  t.push_back(plain_rule(36, "tsbrr", core, "tau(subR(s,t),u)",
                         "subR(s,tau(t,u))"));
  t.push_back(plain_rule(37, "tt", core, "tau(tau(t,r),s)",
                         "tau(t,tau(r,s))"));
  t.push_back(context_rule(38, "tts", "tau(C1,tau(C2,v))", CR::PlainVsSigma,
                           RK::Pattern, "v", "u",
                           "tau(C[u],tau(C[sigma(u)],v))", "v"));
  t.push_back(context_rule(39, "tst", "tau(C1,tau(C2,v))", CR::SigmaVsPlain,
                           RK::Pattern, "v", "u",
                           "tau(C[sigma(u)],tau(C[u],v))", "v"));
  return t;
}

}  // namespace

const std::vector<Rule>& rule_table() {
  static const std::vector<Rule> table = build_table();
  return table;
}

const Rule& rule_by_name(const std::string& name) {
  for (const auto& r : rule_table()) {
    if (r.name == name) return r;
  }
  throw Error("unknown rule name: " + name);
}

const Rule& rule_by_index(int index) {
  if (index < 1 || index > static_cast<int>(rule_table().size())) {
    throw Error("rule index out of range: " + std::to_string(index));
  }
  return rule_table()[index - 1];
}

RuleSet::RuleSet(std::vector<const Rule*> rules) : rules_(std::move(rules)) {
  std::sort(rules_.begin(), rules_.end(),
            [](const Rule* a, const Rule* b) { return a->index < b->index; });
  for (const Rule* r : rules_) dispatch_[r->lhs->op].push_back(r);
}

namespace {
RuleSet subset_by_indices(std::initializer_list<int> indices) {
  std::vector<const Rule*> rs;
  for (int i : indices) rs.push_back(&rule_by_index(i));
  return RuleSet(std::move(rs));
}
}  // namespace

const RuleSet& RuleSet::all() {
  static const RuleSet s = [] {
    std::vector<const Rule*> rs;
    for (const auto& r : rule_table()) rs.push_back(&r);
    return RuleSet(std::move(rs));
  }();
  return s;
}

const RuleSet& RuleSet::core() {
  static const RuleSet s = [] {
    std::vector<const Rule*> rs;
    for (const auto& r : rule_table()) {
      if (r.fragment == Fragment::Core) rs.push_back(&r);
    }
    return RuleSet(std::move(rs));
  }();
  return s;
}

const RuleSet& RuleSet::mixed() {
  static const RuleSet s = [] {
    std::vector<const Rule*> rs;
    for (const auto& r : rule_table()) {
      if (r.fragment == Fragment::Mixed) rs.push_back(&r);
    }
    return RuleSet(std::move(rs));
  }();
  return s;
}

const RuleSet& RuleSet::group() {
  static const RuleSet s =
      subset_by_indices({1, 2, 3, 4, 5, 6, 25, 37, 38, 39});
  return s;
}

RuleSet RuleSet::by_names(const std::vector<std::string>& names) {
  std::vector<const Rule*> rs;
  for (const auto& n : names) rs.push_back(&rule_by_name(n));
  return RuleSet(std::move(rs));
}

RuleSet RuleSet::without(const std::vector<std::string>& names) const {
  std::vector<const Rule*> rs;
  for (const Rule* r : rules_) {
    if (std::find(names.begin(), names.end(), r->name) == names.end()) {
      rs.push_back(r);
    }
  }
  return RuleSet(std::move(rs));
}

const std::vector<const Rule*>& RuleSet::rules_for(Op root) const {
  auto it = dispatch_.find(root);
  return it == dispatch_.end() ? empty_ : it->second;
}

bool RuleSet::contains(const std::string& name) const {
  for (const Rule* r : rules_) {
    if (r->name == name) return true;
  }
  return false;
}

std::optional<TermPtr> try_rule(const Rule& rule, const TermPtr& t) {
  auto subst = match_pattern(rule.lhs, t, rule.vars);
  if (!subst) return std::nullopt;
  if (!rule.is_context()) {
    return substitute(rule.rhs, *subst, rule.vars);
  }
  const TermPtr& a = subst->at(rule.slot1);
  const TermPtr& b = subst->at(rule.slot2);
  auto cm = match_context_pair(a, b, *rule.relation);
  if (!cm) return std::nullopt;
  switch (rule.rhs_kind) {
    case RhsKind::PlugRho:
      return replace_at(a, cm->hole, rho());
    case RhsKind::KeepSlot1:
      return a;
    case RhsKind::KeepSlot2:
      return b;
    case RhsKind::Pattern:
      return substitute(rule.rhs, *subst, rule.vars);
  }
  return std::nullopt;
}

namespace {

struct FoundRedex {
  const Rule* rule;
  Position pos;
  TermPtr replacement;  // rewritten subterm
};

std::optional<FoundRedex> find_outermost(const TermPtr& t, const RuleSet& rs,
                                         Position& path) {
  for (const Rule* rule : rs.rules_for(t->op)) {
    if (auto res = try_rule(*rule, t)) {
      return FoundRedex{rule, path, std::move(*res)};
    }
  }
  for (std::size_t i = 0; i < t->args.size(); ++i) {
    path.push_back(static_cast<int>(i));
    if (auto f = find_outermost(t->args[i], rs, path)) return f;
    path.pop_back();
  }
  return std::nullopt;
}

std::optional<FoundRedex> find_innermost(const TermPtr& t, const RuleSet& rs,
                                         Position& path) {
  for (std::size_t i = 0; i < t->args.size(); ++i) {
    path.push_back(static_cast<int>(i));
    if (auto f = find_innermost(t->args[i], rs, path)) return f;
    path.pop_back();
  }
  for (const Rule* rule : rs.rules_for(t->op)) {
    if (auto res = try_rule(*rule, t)) {
      return FoundRedex{rule, path, std::move(*res)};
    }
  }
  return std::nullopt;
}

void collect_redexes(const TermPtr& t, const RuleSet& rs, Position& path,
                     std::vector<Redex>& out) {
  for (const Rule* rule : rs.rules_for(t->op)) {
    if (try_rule(*rule, t)) out.push_back(Redex{rule, path});
  }
  for (std::size_t i = 0; i < t->args.size(); ++i) {
    path.push_back(static_cast<int>(i));
    collect_redexes(t->args[i], rs, path, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<Redex> applicable_redexes(const TermPtr& t, const RuleSet& rules) {
  std::vector<Redex> out;
  Position path;
  collect_redexes(t, rules, path, out);
  std::sort(out.begin(), out.end(), [](const Redex& a, const Redex& b) {
    if (a.rule->index != b.rule->index) return a.rule->index < b.rule->index;
    return position_preorder_less(a.pos, b.pos);
  });
  return out;
}

RewriteStep apply_step(const TermPtr& t, const Rule& rule,
                       const Position& pos) {
  TermPtr sub = subterm_at(t, pos);
  auto res = try_rule(rule, sub);
  if (!res) {
    throw NotApplicableError("rule " + rule.name + " does not apply at " +
                             print_position(pos) + " in " + print(t));
  }
  RewriteStep step;
  step.rule = rule.name;
  step.rule_index = rule.index;
  step.mixed = rule.fragment == Fragment::Mixed;
  step.pos = pos;
  step.before = t;
  step.after = replace_at(t, pos, *res);
  return step;
}

RewriteTrace normalize(const TermPtr& t, const NormalizeOptions& opts) {
  const RuleSet& rs = opts.rules ? *opts.rules : RuleSet::all();
  RewriteTrace trace;
  trace.initial = t;
  TermPtr cur = t;
  std::mt19937_64 rng(opts.seed);
  for (;;) {
    std::optional<FoundRedex> found;
    if (opts.strategy == Strategy::SeededRandom) {
      auto redexes = applicable_redexes(cur, rs);
      if (!redexes.empty()) {
        const Redex& pick = redexes[rng() % redexes.size()];
        TermPtr sub = subterm_at(cur, pick.pos);
        found = FoundRedex{pick.rule, pick.pos, *try_rule(*pick.rule, sub)};
      }
    } else {
      Position path;
      found = opts.strategy == Strategy::OutermostLeftmost
                  ? find_outermost(cur, rs, path)
                  : find_innermost(cur, rs, path);
    }
    if (!found) break;
    if (trace.steps.size() >= opts.step_limit) {
      throw StepLimitError("step limit of " + std::to_string(opts.step_limit) +
                           " exceeded while normalizing " +
                           print(trace.initial));
    }
    RewriteStep step;
    step.rule = found->rule->name;
    step.rule_index = found->rule->index;
    step.mixed = found->rule->fragment == Fragment::Mixed;
    step.pos = found->pos;
    step.before = cur;
    step.after = replace_at(cur, found->pos, found->replacement);
    cur = step.after;
    trace.steps.push_back(std::move(step));
  }
  trace.result = cur;
  return trace;
}

RwEqualResult rw_equal(const TermPtr& a, const TermPtr& b,
                       const NormalizeOptions& opts) {
  RwEqualResult res;
  res.left = normalize(a, opts);
  res.right = normalize(b, opts);
  res.equal = equal(res.left.result, res.right.result);
  return res;
}

std::string step_rule_label(const RewriteStep& step) {
  return step.mixed ? step.rule + "[mixed]" : step.rule;
}

std::string print_step(const RewriteStep& step, std::size_t k) {
  std::ostringstream out;
  out << "step " << k << ": " << step_rule_label(step) << " @ "
      << print_position(step.pos) << " : " << print(step.before) << " => "
      << print(step.after);
  return out.str();
}

std::vector<std::string> print_trace(const RewriteTrace& trace) {
  std::vector<std::string> lines;
  lines.reserve(trace.steps.size());
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    lines.push_back(print_step(trace.steps[i], i + 1));
  }
  return lines;
}

bool replay_trace(const RewriteTrace& trace) {
  TermPtr cur = trace.initial;
  for (const auto& step : trace.steps) {
    if (!equal(step.before, cur)) return false;
    if (step.rule_index > 0) {
      RewriteStep replayed =
          apply_step(cur, rule_by_index(step.rule_index), step.pos);
      if (!equal(replayed.after, step.after)) return false;
    }
    cur = step.after;
  }
  return equal(cur, trace.result);
}

bool trace_equal(const RewriteTrace& a, const RewriteTrace& b) {
  if (!equal(a.initial, b.initial) || !equal(a.result, b.result)) return false;
  if (a.steps.size() != b.steps.size()) return false;
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    const RewriteStep& x = a.steps[i];
    const RewriteStep& y = b.steps[i];
    if (x.rule != y.rule || x.rule_index != y.rule_index ||
        x.mixed != y.mixed || x.pos != y.pos) {
      return false;
    }
    if (!equal(x.before, y.before) || !equal(x.after, y.after)) return false;
  }
  return true;
}

}  // namespace cpath
