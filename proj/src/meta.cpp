#include "cpath/meta.hpp"

#include <functional>

namespace cpath {

namespace {

Rw2Ptr make_rw2(Rw2Term t) {
  return std::make_shared<const Rw2Term>(std::move(t));
}

Rw2Ptr rw2_replace(const Rw2Ptr& h, const Position& pos, std::size_t k,
                   const Rw2Ptr& repl) {
  if (k == pos.size()) return repl;
  int i = pos[k];
  if (i < 0 || i >= static_cast<int>(h->args.size())) {
    throw PositionError("position " + print_position(pos) +
                        " does not exist in meta-term " + print_rw2(h));
  }
  Rw2Ptr child =
      rw2_replace(h->args[static_cast<std::size_t>(i)], pos, k + 1, repl);
  if (h->op == Rw2Op::Sigma2) return sigma2(child);
  // Tau2: rule right-hand sides preserve endpoints, so revalidation holds.
  return i == 0 ? tau2(child, h->args[1]) : tau2(h->args[0], child);
}

}  // namespace

Rw2Ptr rw2_atom(RewriteTrace trace) {
  Rw2Term t;
  t.op = Rw2Op::TraceAtom;
  t.trace = std::move(trace);
  return make_rw2(std::move(t));
}

Rw2Ptr rho2(TermPtr point) {
  Rw2Term t;
  t.op = Rw2Op::Rho2;
  t.point = std::move(point);
  return make_rw2(std::move(t));
}

Rw2Ptr sigma2(Rw2Ptr h) {
  Rw2Term t;
  t.op = Rw2Op::Sigma2;
  t.args.push_back(std::move(h));
  return make_rw2(std::move(t));
}

Rw2Ptr tau2(Rw2Ptr a, Rw2Ptr b) {
  if (!equal(rw2_dst(a), rw2_src(b))) {
    throw EndpointError("endpoint mismatch in tau2: first component ends at " +
                        print(rw2_dst(a)) + " but second begins at " +
                        print(rw2_src(b)));
  }
  Rw2Term t;
  t.op = Rw2Op::Tau2;
  t.args.push_back(std::move(a));
  t.args.push_back(std::move(b));
  return make_rw2(std::move(t));
}

TermPtr rw2_src(const Rw2Ptr& h) {
  switch (h->op) {
    case Rw2Op::TraceAtom:
      return h->trace.initial;
    case Rw2Op::Rho2:
      return h->point;
    case Rw2Op::Sigma2:
      return rw2_dst(h->args[0]);
    case Rw2Op::Tau2:
      return rw2_src(h->args[0]);
  }
  return nullptr;
}

TermPtr rw2_dst(const Rw2Ptr& h) {
  switch (h->op) {
    case Rw2Op::TraceAtom:
      return h->trace.result;
    case Rw2Op::Rho2:
      return h->point;
    case Rw2Op::Sigma2:
      return rw2_src(h->args[0]);
    case Rw2Op::Tau2:
      return rw2_dst(h->args[1]);
  }
  return nullptr;
}

bool rw2_term_equal(const Rw2Ptr& a, const Rw2Ptr& b) {
  if (a.get() == b.get()) return true;
  if (a->op != b->op) return false;
  switch (a->op) {
    case Rw2Op::TraceAtom:
      return trace_equal(a->trace, b->trace);
    case Rw2Op::Rho2:
      return equal(a->point, b->point);
    default:
      break;
  }
  if (a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!rw2_term_equal(a->args[i], b->args[i])) return false;
  }
  return true;
}

std::string print_rw2(const Rw2Ptr& h) {
  switch (h->op) {
    case Rw2Op::TraceAtom:
      return "trace{" + print(h->trace.initial) + " => " +
             print(h->trace.result) + "}";
    case Rw2Op::Rho2:
      return "rho2{" + print(h->point) + "}";
    case Rw2Op::Sigma2:
      return "sigma2(" + print_rw2(h->args[0]) + ")";
    case Rw2Op::Tau2:
      return "tau2(" + print_rw2(h->args[0]) + "," + print_rw2(h->args[1]) +
             ")";
  }
  return "";
}

const std::vector<Rw2Rule>& rw2_rule_table() {
  static const std::vector<Rw2Rule> table = [] {
    std::vector<Rw2Rule> t;
    t.push_back({1, "tr2", "tau2(h,sigma2(h)) => rho2",
                 [](const Rw2Ptr& h) -> std::optional<Rw2Ptr> {
                   if (h->op != Rw2Op::Tau2) return std::nullopt;
                   const Rw2Ptr& b = h->args[1];
                   if (b->op == Rw2Op::Sigma2 &&
                       rw2_term_equal(h->args[0], b->args[0])) {
                     return rho2(rw2_src(h->args[0]));
                   }
                   return std::nullopt;
                 }});
    t.push_back({2, "tsr2", "tau2(sigma2(h),h) => rho2",
                 [](const Rw2Ptr& h) -> std::optional<Rw2Ptr> {
                   if (h->op != Rw2Op::Tau2) return std::nullopt;
                   const Rw2Ptr& a = h->args[0];
                   if (a->op == Rw2Op::Sigma2 &&
                       rw2_term_equal(a->args[0], h->args[1])) {
                     return rho2(rw2_dst(h->args[1]));
                   }
                   return std::nullopt;
                 }});
    t.push_back({3, "trr2", "tau2(h,rho2) => h",
                 [](const Rw2Ptr& h) -> std::optional<Rw2Ptr> {
                   if (h->op == Rw2Op::Tau2 && h->args[1]->op == Rw2Op::Rho2) {
                     return h->args[0];
                   }
                   return std::nullopt;
                 }});
    t.push_back({4, "tlr2", "tau2(rho2,h) => h",
                 [](const Rw2Ptr& h) -> std::optional<Rw2Ptr> {
                   if (h->op == Rw2Op::Tau2 && h->args[0]->op == Rw2Op::Rho2) {
                     return h->args[1];
                   }
                   return std::nullopt;
                 }});
    t.push_back({5, "sr2", "sigma2(rho2) => rho2",
                 [](const Rw2Ptr& h) -> std::optional<Rw2Ptr> {
                   if (h->op == Rw2Op::Sigma2 &&
                       h->args[0]->op == Rw2Op::Rho2) {
                     return h->args[0];
                   }
                   return std::nullopt;
                 }});
    t.push_back({6, "ss2", "sigma2(sigma2(h)) => h",
                 [](const Rw2Ptr& h) -> std::optional<Rw2Ptr> {
                   if (h->op == Rw2Op::Sigma2 &&
                       h->args[0]->op == Rw2Op::Sigma2) {
                     return h->args[0]->args[0];
                   }
                   return std::nullopt;
                 }});
    t.push_back({7, "tt2", "tau2(tau2(h,g),f) => tau2(h,tau2(g,f))",
                 [](const Rw2Ptr& h) -> std::optional<Rw2Ptr> {
                   if (h->op == Rw2Op::Tau2 && h->args[0]->op == Rw2Op::Tau2) {
                     const Rw2Ptr& inner = h->args[0];
                     return tau2(inner->args[0],
                                 tau2(inner->args[1], h->args[1]));
                   }
                   return std::nullopt;
                 }});
    return t;
  }();
  return table;
}

namespace {

// Outermost-leftmost redex: rules in index order at each node, root first,
// then arguments left to right.
bool find_rw2_redex(const Rw2Ptr& h, Position& pos, const Rw2Rule** rule,
                    Rw2Ptr* reduct) {
  for (const Rw2Rule& r : rw2_rule_table()) {
    if (auto res = r.match(h)) {
      *rule = &r;
      *reduct = *res;
      return true;
    }
  }
  for (int i = 0; i < static_cast<int>(h->args.size()); ++i) {
    pos.push_back(i);
    if (find_rw2_redex(h->args[static_cast<std::size_t>(i)], pos, rule,
                       reduct)) {
      return true;
    }
    pos.pop_back();
  }
  return false;
}

}  // namespace

Rw2Trace rw2_normalize(const Rw2Ptr& h, std::size_t step_limit) {
  Rw2Trace trace;
  trace.initial = h;
  Rw2Ptr cur = h;
  for (;;) {
    Position pos;
    const Rw2Rule* rule = nullptr;
    Rw2Ptr reduct;
    if (!find_rw2_redex(cur, pos, &rule, &reduct)) break;
    if (trace.steps.size() >= step_limit) {
      throw StepLimitError("step limit of " + std::to_string(step_limit) +
                           " exceeded while normalizing " + print_rw2(h));
    }
    Rw2Step step;
    step.rule = rule->name;
    step.rule_index = rule->index;
    step.pos = pos;
    step.before = cur;
    cur = rw2_replace(cur, pos, 0, reduct);
    step.after = cur;
    trace.steps.push_back(std::move(step));
  }
  trace.result = cur;
  return trace;
}

Rw2EqualResult rw2_equal(const Rw2Ptr& a, const Rw2Ptr& b) {
  Rw2EqualResult r;
  r.left = rw2_normalize(a);
  r.right = rw2_normalize(b);
  r.equal = rw2_term_equal(r.left.result, r.right.result);
  return r;
}

std::vector<RewriteTrace> cd2_interleavings(const RewriteTrace& theta,
                                            const RewriteTrace& phi) {
  if (!theta.initial || !phi.initial) {
    throw Error("cd2 requires non-empty traces");
  }
  std::size_t n = theta.steps.size() + 1;
  std::size_t m = phi.steps.size() + 1;
  if (n + m > 20) {
    throw Error("cd2 interleaving bound exceeded: need n + m <= 20, got " +
                std::to_string(n + m));
  }
  std::vector<TermPtr> left_states{theta.initial};
  for (const auto& s : theta.steps) left_states.push_back(s.after);
  std::vector<TermPtr> right_states{phi.initial};
  for (const auto& s : phi.steps) right_states.push_back(s.after);

  std::vector<RewriteTrace> out;
  RewriteTrace cur;
  cur.initial = tau(left_states[0], right_states[0]);
  // Advance theta before phi at every branch point, so the enumeration is
  // ordered with theta-steps taken as early as possible.
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i,
                                                         std::size_t j) {
    if (i + 1 == n && j + 1 == m) {
      cur.result = tau(left_states[i], right_states[j]);
      out.push_back(cur);
      return;
    }
    if (i + 1 < n) {
      RewriteStep step = theta.steps[i];
      step.pos.insert(step.pos.begin(), 0);
      step.before = tau(left_states[i], right_states[j]);
      step.after = tau(left_states[i + 1], right_states[j]);
      cur.steps.push_back(std::move(step));
      go(i + 1, j);
      cur.steps.pop_back();
    }
    if (j + 1 < m) {
      RewriteStep step = phi.steps[j];
      step.pos.insert(step.pos.begin(), 1);
      step.before = tau(left_states[i], right_states[j]);
      step.after = tau(left_states[i], right_states[j + 1]);
      cur.steps.push_back(std::move(step));
      go(i, j + 1);
      cur.steps.pop_back();
    }
  };
  go(0, 0);
  return out;
}

namespace {

// Extracts the component trace under argument `side` of a tau-composite
// trace; false when the trace is not an interleaving (bad positions, or a
// step that claims one side but changes the other).
bool project_side(const RewriteTrace& x, int side, RewriteTrace& out) {
  if (!x.initial || !x.result) return false;
  if (x.initial->op != Op::Tau || x.result->op != Op::Tau) return false;
  std::size_t s = static_cast<std::size_t>(side);
  out.initial = x.initial->args[s];
  for (const RewriteStep& step : x.steps) {
    if (step.pos.empty() || (step.pos[0] != 0 && step.pos[0] != 1)) {
      return false;
    }
    if (!step.before || !step.after) return false;
    if (step.before->op != Op::Tau || step.after->op != Op::Tau) return false;
    if (step.pos[0] != side) {
      if (!equal(step.before->args[s], step.after->args[s])) return false;
      continue;
    }
    RewriteStep p = step;
    p.pos.erase(p.pos.begin());
    p.before = step.before->args[s];
    p.after = step.after->args[s];
    out.steps.push_back(std::move(p));
  }
  out.result = x.result->args[s];
  TermPtr cur = out.initial;
  for (const auto& p : out.steps) {
    if (!equal(p.before, cur)) return false;
    cur = p.after;
  }
  return equal(cur, out.result);
}

}  // namespace

bool cd2_equal(const RewriteTrace& x, const RewriteTrace& y) {
  RewriteTrace tx, px, ty, py;
  if (!project_side(x, 0, tx) || !project_side(x, 1, px)) return false;
  if (!project_side(y, 0, ty) || !project_side(y, 1, py)) return false;
  return trace_equal(tx, ty) && trace_equal(px, py);
}

}  // namespace cpath
