#include "cpath/ordering.hpp"

#include <algorithm>
#include <sstream>

namespace cpath {

PrecedenceTable::PrecedenceTable(const std::vector<std::pair<Op, Op>>& pairs) {
  closure_ = pairs;
  // Warshall-style closure over the small symbol set.
  bool changed = true;
  auto has = [&](Op f, Op g) {
    return std::any_of(closure_.begin(), closure_.end(),
                       [&](const auto& p) { return p.first == f && p.second == g; });
  };
  while (changed) {
    changed = false;
    const auto snapshot = closure_;
    for (const auto& [f, g] : snapshot) {
      for (const auto& [g2, h] : snapshot) {
        if (g == g2 && !has(f, h)) {
          closure_.emplace_back(f, h);
          changed = true;
        }
      }
    }
  }
  for (const auto& [f, g] : closure_) {
    if (f == g) throw Error("precedence is cyclic");
  }
}

bool PrecedenceTable::greater(Op f, Op g) const {
  if (f == Op::Atom || g == Op::Atom) return false;
  return std::any_of(closure_.begin(), closure_.end(),
                     [&](const auto& p) { return p.first == f && p.second == g; });
}

const PrecedenceTable& PrecedenceTable::minimal() {
  static const PrecedenceTable t({
      {Op::Sigma, Op::Tau},
      {Op::Tau, Op::Rho},
      {Op::Sigma, Op::Xi},
      {Op::Sigma, Op::XiA},
      {Op::Sigma, Op::Xi1},
      {Op::Sigma, Op::Xi2},
      {Op::Sigma, Op::Mu},
      {Op::Sigma, Op::Mu1},
      {Op::Sigma, Op::Mu2},
      {Op::Sigma, Op::SubL},
      {Op::Sigma, Op::SubR},
      {Op::Tau, Op::SubL},
  });
  return t;
}

const PrecedenceTable& PrecedenceTable::standard() {
  static const PrecedenceTable t = [] {
    auto pairs = minimal().pairs();
    pairs.emplace_back(Op::Tau, Op::SubR);
    return PrecedenceTable(pairs);
  }();
  return t;
}

StatusMap default_status() { return {{Op::Tau, Status::Lexicographic}}; }
StatusMap all_multiset_status() { return {}; }

namespace {

Status status_of(Op op, const StatusMap& status) {
  auto it = status.find(op);
  return it == status.end() ? Status::Multiset : it->second;
}

bool same_head(const TermPtr& s, const TermPtr& t) {
  if (s->op != t->op) return false;
  return s->op != Op::Atom || s->name == t->name;
}

bool rpo_rec(const TermPtr& s, const TermPtr& t, const PrecedenceTable& prec,
             const StatusMap& status);

bool rpo_ge(const TermPtr& s, const TermPtr& t, const PrecedenceTable& prec,
            const StatusMap& status) {
  return equal(s, t) || rpo_rec(s, t, prec, status);
}

// Left-to-right lexicographic extension with the usual guards: the first
// strictly greater argument decides, provided s dominates every remaining
// argument of t. Equal prefixes of unequal length favour the longer term.
bool lex_args_greater(const TermPtr& s, const TermPtr& t,
                      const PrecedenceTable& prec, const StatusMap& status) {
  const std::size_t n = std::min(s->args.size(), t->args.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (equal(s->args[i], t->args[i])) continue;
    if (!rpo_rec(s->args[i], t->args[i], prec, status)) return false;
    for (std::size_t j = i + 1; j < t->args.size(); ++j) {
      if (!rpo_rec(s, t->args[j], prec, status)) return false;
    }
    return true;
  }
  return s->args.size() > t->args.size();
}

bool multiset_args_greater(const TermPtr& s, const TermPtr& t,
                           const PrecedenceTable& prec,
                           const StatusMap& status) {
  return multiset_greater(s->args, t->args,
                          [&](const TermPtr& a, const TermPtr& b) {
                            return rpo_rec(a, b, prec, status);
                          });
}

bool rpo_rec(const TermPtr& s, const TermPtr& t, const PrecedenceTable& prec,
             const StatusMap& status) {
  // Subterm case: some argument of s already dominates or equals t.
  for (const auto& arg : s->args) {
    if (rpo_ge(arg, t, prec, status)) return true;
  }
  if (same_head(s, t)) {
    return status_of(s->op, status) == Status::Multiset
               ? multiset_args_greater(s, t, prec, status)
               : lex_args_greater(s, t, prec, status);
  }
  if (prec.greater(s->op, t->op)) {
    for (const auto& arg : t->args) {
      if (!rpo_rec(s, arg, prec, status)) return false;
    }
    return true;
  }
  return false;
}

}  // namespace

bool rpo_greater(const TermPtr& s, const TermPtr& t,
                 const PrecedenceTable& prec, const StatusMap& status) {
  if (equal(s, t)) return false;
  return rpo_rec(s, t, prec, status);
}

bool multiset_greater(
    const std::vector<TermPtr>& a, const std::vector<TermPtr>& b,
    const std::function<bool(const TermPtr&, const TermPtr&)>& base) {
  // Cancel common elements (with multiplicity), then require every leftover
  // of b to be dominated by some leftover of a.
  std::vector<TermPtr> x = a;
  std::vector<TermPtr> y = b;
  for (auto it = x.begin(); it != x.end();) {
    auto match = std::find_if(y.begin(), y.end(),
                              [&](const TermPtr& e) { return equal(e, *it); });
    if (match != y.end()) {
      y.erase(match);
      it = x.erase(it);
    } else {
      ++it;
    }
  }
  if (x.empty() && y.empty()) return false;  // equal multisets
  for (const auto& e : y) {
    if (!std::any_of(x.begin(), x.end(),
                     [&](const TermPtr& d) { return base(d, e); })) {
      return false;
    }
  }
  return true;
}

namespace {

const char* op_display(Op op) { return op_token(op); }

// Explains the decision at the root of lhs > rhs, mirroring rpo_rec.
std::string explain_root(const TermPtr& lhs, const TermPtr& rhs,
                         const PrecedenceTable& prec, const StatusMap& status,
                         bool* out_greater) {
  std::ostringstream msg;
  if (equal(lhs, rhs)) {
    *out_greater = false;
    return "sides are equal";
  }
  for (const auto& arg : lhs->args) {
    if (rpo_ge(arg, rhs, prec, status)) {
      *out_greater = true;
      msg << "subterm case: lhs argument " << print(arg)
          << " already covers the rhs";
      return msg.str();
    }
  }
  if (same_head(lhs, rhs)) {
    const Status st = status_of(lhs->op, status);
    const bool ok = st == Status::Multiset
                        ? multiset_args_greater(lhs, rhs, prec, status)
                        : lex_args_greater(lhs, rhs, prec, status);
    *out_greater = ok;
    msg << "equal heads " << op_display(lhs->op) << " with "
        << (st == Status::Multiset ? "multiset" : "lexicographic")
        << " status: argument comparison " << (ok ? "succeeds" : "fails");
    return msg.str();
  }
  if (prec.greater(lhs->op, rhs->op)) {
    bool all = true;
    for (const auto& arg : rhs->args) {
      if (!rpo_rec(lhs, arg, prec, status)) {
        all = false;
        msg << "precedence " << op_display(lhs->op) << " > "
            << op_display(rhs->op) << " applies but lhs does not dominate rhs argument "
            << print(arg);
        *out_greater = false;
        return msg.str();
      }
    }
    (void)all;
    *out_greater = true;
    msg << "precedence case: " << op_display(lhs->op) << " > "
        << op_display(rhs->op) << " and lhs dominates every rhs argument";
    return msg.str();
  }
  *out_greater = false;
  if (lhs->op == rhs->op) {
    msg << "no case applies";
  } else {
    msg << "no case applies: no lhs argument covers the rhs and "
        << op_display(lhs->op) << " > " << op_display(rhs->op)
        << " is not in the precedence";
  }
  return msg.str();
}

// Instantiates pattern variables with themselves as fresh atoms (rule
// patterns contain no other atoms, so the names are fresh by construction).
TermPtr freshen(const TermPtr& pattern) { return pattern; }

TermPtr plug_xi1(const TermPtr& inner) { return make(Op::Xi1, {inner}); }

}  // namespace

std::vector<OrientationResult> check_rule_orientation(
    const RuleSet& rules, const PrecedenceTable& prec,
    const StatusMap& status) {
  std::vector<OrientationResult> report;
  for (const Rule* rule : rules.rules()) {
    OrientationResult res;
    res.index = rule->index;
    res.name = rule->name;

    struct Instance {
      const char* label;
      TermPtr lhs;
      TermPtr rhs;
    };
    std::vector<Instance> instances;
    instances.push_back(
        {"bare hole", freshen(rule->fo_lhs), freshen(rule->fo_rhs)});
    if (rule->is_context()) {
      // Proper-context instance with C = xi1([.]).
      auto [side1, side2] = [&]() -> std::pair<TermPtr, TermPtr> {
        TermPtr x = atom(rule->relation_var);
        switch (*rule->relation) {
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
      }();
      Substitution slots{{rule->slot1, plug_xi1(side1)},
                         {rule->slot2, plug_xi1(side2)}};
      TermPtr lhs = substitute(rule->lhs, slots, {rule->slot1, rule->slot2});
      TermPtr rhs;
      switch (rule->rhs_kind) {
        case RhsKind::Pattern:
          rhs = rule->rhs;
          break;
        case RhsKind::PlugRho:
          rhs = plug_xi1(rho());
          break;
        case RhsKind::KeepSlot1:
          rhs = plug_xi1(side1);
          break;
        case RhsKind::KeepSlot2:
          rhs = plug_xi1(side2);
          break;
      }
      instances.push_back({"context xi1([.])", lhs, rhs});
    }

    bool all_oriented = true;
    std::ostringstream detail;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      bool greater = false;
      std::string why = explain_root(instances[i].lhs, instances[i].rhs, prec,
                                     status, &greater);
      all_oriented = all_oriented && greater;
      if (i) detail << "; ";
      if (instances.size() > 1) detail << instances[i].label << ": ";
      detail << why;
    }
    res.oriented = all_oriented;
    res.detail = detail.str();
    report.push_back(std::move(res));
  }
  return report;
}

}  // namespace cpath
