#include "cpath/confluence.hpp"

#include <algorithm>

namespace cpath {

namespace {

// Renames every variable of `vars` inside `t` by appending a suffix.
TermPtr rename_vars(const TermPtr& t, const std::set<std::string>& vars,
                    const std::string& suffix) {
  Substitution sub;
  for (const auto& v : vars) sub[v] = atom(v + suffix);
  return substitute(t, sub, vars);
}

// Preorder list of positions in `t` whose subterm is not a variable.
void non_variable_positions(const TermPtr& t, const std::set<std::string>& vars,
                            Position& here, std::vector<Position>& out) {
  if (t->op == Op::Atom && vars.count(t->name)) return;
  out.push_back(here);
  for (int i = 0; i < static_cast<int>(t->args.size()); ++i) {
    here.push_back(i);
    non_variable_positions(t->args[static_cast<std::size_t>(i)], vars, here,
                           out);
    here.pop_back();
  }
}

}  // namespace

std::vector<CriticalPair> superpose(const RuleSet& rules) {
  std::vector<CriticalPair> out;
  for (const Rule* outer : rules.rules()) {
    std::set<std::string> all_vars = outer->fo_vars;
    std::vector<Position> positions;
    Position root;
    non_variable_positions(outer->fo_lhs, outer->fo_vars, root, positions);
    for (const Rule* inner : rules.rules()) {
      TermPtr inner_lhs = rename_vars(inner->fo_lhs, inner->fo_vars, "2");
      TermPtr inner_rhs = rename_vars(inner->fo_rhs, inner->fo_vars, "2");
      std::set<std::string> vars = all_vars;
      for (const auto& v : inner->fo_vars) vars.insert(v + "2");
      for (const Position& pos : positions) {
        if (inner == outer && pos.empty()) continue;  // trivial self-overlap
        TermPtr sub = subterm_at(outer->fo_lhs, pos);
        auto mgu = unify(sub, inner_lhs, vars);
        if (!mgu) continue;
        // The mgu binds only unified variables; substitute expects totality.
        for (const auto& v : vars) {
          if (!mgu->count(v)) (*mgu)[v] = atom(v);
        }
        CriticalPair cp;
        cp.outer = outer;
        cp.inner = inner;
        cp.pos = pos;
        cp.peak = substitute(outer->fo_lhs, *mgu, vars);
        cp.left = replace_at(cp.peak, pos, substitute(inner_rhs, *mgu, vars));
        cp.right = substitute(outer->fo_rhs, *mgu, vars);
        out.push_back(std::move(cp));
      }
    }
  }
  return out;  // already ordered by (outer index, inner index, position)
}

CriticalPair check_joinable(CriticalPair cp, const RuleSet& rules,
                            std::size_t step_limit) {
  NormalizeOptions opts;
  opts.rules = &rules;
  opts.step_limit = step_limit;
  cp.nf_left = normalize(cp.left, opts).result;
  cp.nf_right = normalize(cp.right, opts).result;
  cp.joinable = equal(cp.nf_left, cp.nf_right);
  cp.checked = true;
  return cp;
}

std::vector<CriticalPair> critical_pairs(const RuleSet& rules,
                                         std::size_t step_limit) {
  std::vector<CriticalPair> out = superpose(rules);
  for (auto& cp : out) cp = check_joinable(std::move(cp), rules, step_limit);
  return out;
}

std::string print_critical_pair(const CriticalPair& cp) {
  std::string s = "inner=" + cp.inner->name + " outer=" + cp.outer->name +
                  " pos=" + print_position(cp.pos) + " peak=" +
                  print(cp.peak) + " left=" + print(cp.left) + " right=" +
                  print(cp.right);
  if (cp.checked) {
    if (cp.joinable) {
      s += " joinable=yes nf=" + print(cp.nf_left);
    } else {
      s += " joinable=no nf_left=" + print(cp.nf_left) + " nf_right=" +
           print(cp.nf_right);
    }
  }
  return s;
}

}  // namespace cpath
