#include "cpath/pi1.hpp"

#include <algorithm>
#include <cstdlib>

namespace cpath {

namespace {

const std::vector<std::string> kCircleGens = {"loop"};
const std::vector<std::string> kTorusGens = {"alpha", "beta"};
const std::vector<std::string> kProjectiveGens = {"alpha"};

void validate(Surface s, const TermPtr& t) {
  switch (t->op) {
    case Op::Rho:
      return;
    case Op::Sigma:
    case Op::Tau:
      for (const auto& a : t->args) validate(s, a);
      return;
    case Op::Atom: {
      const auto& gens = generators(s);
      if (std::find(gens.begin(), gens.end(), t->name) == gens.end()) {
        throw SurfaceError("foreign atom \"" + t->name +
                           "\" is not a generator of " + surface_name(s));
      }
      if (!t->args.empty()) {
        throw SurfaceError("generator \"" + t->name + "\" of " +
                           surface_name(s) + " must not carry arguments");
      }
      return;
    }
    default:
      throw SurfaceError("operator " + std::string(op_token(t->op)) +
                         " is not allowed in " + surface_name(s) +
                         " paths; allowed: tau, sigma, rho and generators");
  }
}

// Word in written group notation: tau(a,b) means b-then-a applied, so b's
// word precedes a's. Under an odd number of enclosing sigmas the order and
// every letter flip.
void flatten_into(const TermPtr& t, bool inv, LoopWord& out) {
  switch (t->op) {
    case Op::Rho:
      return;
    case Op::Atom:
      out.push_back(Letter{t->name, inv});
      return;
    case Op::Sigma:
      flatten_into(t->args[0], !inv, out);
      return;
    case Op::Tau:
      if (inv) {
        flatten_into(t->args[0], inv, out);
        flatten_into(t->args[1], inv, out);
      } else {
        flatten_into(t->args[1], inv, out);
        flatten_into(t->args[0], inv, out);
      }
      return;
    default:
      return;  // unreachable after validate()
  }
}

LoopWord flatten(const TermPtr& t) {
  LoopWord w;
  flatten_into(t, false, w);
  return w;
}

TermPtr letter_term(const Letter& l) {
  TermPtr g = atom(l.gen);
  return l.inverse ? sigma(g) : g;
}

// Right-associated chain in traversal order (first letter outermost-left).
TermPtr chain(const LoopWord& traversal) {
  if (traversal.empty()) return rho();
  TermPtr cur = letter_term(traversal.back());
  for (std::size_t i = traversal.size() - 1; i-- > 0;) {
    cur = tau(letter_term(traversal[i]), cur);
  }
  return cur;
}

// Position of 0-based letter i inside chain(traversal) of k letters.
Position letter_position(std::size_t i, std::size_t k) {
  Position pos(i, 1);
  if (i + 1 < k) pos.push_back(0);
  return pos;
}

SurfaceElement count_word(Surface s, const LoopWord& w) {
  SurfaceElement e;
  e.surface = s;
  for (const Letter& l : w) {
    long long sign = l.inverse ? -1 : 1;
    switch (s) {
      case Surface::Circle:
        e.a += sign;
        break;
      case Surface::Torus:
        if (l.gen == "beta") {
          e.a += sign;
        } else {
          e.b += sign;
        }
        break;
      case Surface::ProjectivePlane:
        e.a = (e.a + 1) % 2;
        break;
    }
  }
  return e;
}

TermPtr generator_power(const TermPtr& gen, long long n) {
  if (n == 0) return rho();
  if (n < 0) return sigma(generator_power(gen, -n));
  TermPtr cur = gen;
  for (long long i = 1; i < n; ++i) cur = tau(cur, gen);
  return cur;
}

void require_same_surface(const SurfaceElement& x, const SurfaceElement& y) {
  if (x.surface != y.surface) {
    throw SurfaceError("surface mismatch: cannot combine a " +
                       surface_name(x.surface) + " element with a " +
                       surface_name(y.surface) + " element");
  }
}

RewriteStep surface_step(const std::string& rule, Position pos,
                         const TermPtr& before, const TermPtr& after) {
  RewriteStep step;
  step.rule = rule;
  step.rule_index = 0;
  step.pos = std::move(pos);
  step.before = before;
  step.after = after;
  return step;
}

}  // namespace

std::string surface_name(Surface s) {
  switch (s) {
    case Surface::Circle:
      return "circle";
    case Surface::Torus:
      return "torus";
    case Surface::ProjectivePlane:
      return "rp2";
  }
  return "";
}

Surface parse_surface(const std::string& name) {
  if (name == "circle") return Surface::Circle;
  if (name == "torus") return Surface::Torus;
  if (name == "rp2") return Surface::ProjectivePlane;
  throw SurfaceError("unknown surface \"" + name +
                     "\"; expected circle, torus or rp2");
}

const std::vector<std::string>& generators(Surface s) {
  switch (s) {
    case Surface::Circle:
      return kCircleGens;
    case Surface::Torus:
      return kTorusGens;
    case Surface::ProjectivePlane:
      return kProjectiveGens;
  }
  return kCircleGens;
}

bool operator==(const SurfaceElement& x, const SurfaceElement& y) {
  return x.surface == y.surface && x.a == y.a && x.b == y.b;
}

std::string print_element(const SurfaceElement& e) {
  if (e.surface == Surface::Torus) {
    return "(" + std::to_string(e.a) + "," + std::to_string(e.b) + ")";
  }
  return std::to_string(e.a);
}

std::string print_word(const LoopWord& w) {
  if (w.empty()) return "ε";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) s += ".";
    s += w[i].gen;
    if (w[i].inverse) s += "^-1";
  }
  return s;
}

SurfaceElement identity(Surface s) {
  SurfaceElement e;
  e.surface = s;
  return e;
}

SurfaceElement compose(const SurfaceElement& x, const SurfaceElement& y) {
  require_same_surface(x, y);
  SurfaceElement e = x;
  e.a += y.a;
  e.b += y.b;
  if (x.surface == Surface::ProjectivePlane) e.a %= 2;
  return e;
}

SurfaceElement inverse(const SurfaceElement& x) {
  SurfaceElement e = x;
  if (x.surface == Surface::ProjectivePlane) return e;  // self-inverse
  e.a = -e.a;
  e.b = -e.b;
  return e;
}

TermPtr loop_power(long long n) { return generator_power(atom("loop"), n); }

TermPtr to_path(const SurfaceElement& e) {
  switch (e.surface) {
    case Surface::Circle:
      return loop_power(e.a);
    case Surface::Torus: {
      // beta^m alpha^n: alpha-part traversed first, so it is tau's first
      // argument.
      TermPtr alpha_part = generator_power(atom("alpha"), e.b);
      TermPtr beta_part = generator_power(atom("beta"), e.a);
      if (e.a == 0) return alpha_part;
      if (e.b == 0) return beta_part;
      return tau(alpha_part, beta_part);
    }
    case Surface::ProjectivePlane:
      return e.a % 2 != 0 ? atom("alpha") : rho();
  }
  return rho();
}

CanonicalizeResult canonicalize(Surface s, const TermPtr& t) {
  validate(s, t);
  NormalizeOptions opts;
  opts.rules = &RuleSet::core();
  RewriteTrace trace = normalize(t, opts);
  TermPtr cur = trace.result;

  if (s == Surface::Torus) {
    // Traversal order is the reverse of the written word; sorting
    // alpha-letters first here puts beta-letters first in written order.
    LoopWord word = flatten(cur);
    LoopWord traversal(word.rbegin(), word.rend());
    auto is_beta = [](const Letter& l) { return l.gen == "beta"; };
    bool swapped = true;
    while (swapped) {
      swapped = false;
      for (std::size_t i = 0; i + 1 < traversal.size(); ++i) {
        if (is_beta(traversal[i]) && !is_beta(traversal[i + 1])) {
          TermPtr before = chain(traversal);
          std::swap(traversal[i], traversal[i + 1]);
          TermPtr after = chain(traversal);
          trace.steps.push_back(
              surface_step("co", Position(i, 1), before, after));
          cur = after;
          swapped = true;
        }
      }
    }
    // Sorting can expose new cancellations inside each block.
    RewriteTrace again = normalize(cur, opts);
    for (auto& step : again.steps) trace.steps.push_back(std::move(step));
    cur = again.result;
  } else if (s == Surface::ProjectivePlane) {
    // alpha = sigma(alpha): flip every inverse letter, then delete alpha
    // pairs from the front; the count survives mod 2.
    LoopWord word = flatten(cur);
    LoopWord traversal(word.rbegin(), word.rend());
    for (std::size_t i = 0; i < traversal.size(); ++i) {
      if (!traversal[i].inverse) continue;
      TermPtr before = chain(traversal);
      traversal[i].inverse = false;
      TermPtr after = chain(traversal);
      trace.steps.push_back(surface_step(
          "cicl", letter_position(i, traversal.size()), before, after));
      cur = after;
    }
    while (traversal.size() >= 2) {
      TermPtr before = chain(traversal);
      traversal.erase(traversal.begin(), traversal.begin() + 2);
      TermPtr after = chain(traversal);
      trace.steps.push_back(surface_step("cicl", Position(), before, after));
      cur = after;
    }
  }

  trace.result = cur;
  CanonicalizeResult res;
  res.element = count_word(s, flatten(cur));
  res.word = flatten(cur);
  res.trace = std::move(trace);
  return res;
}

SurfaceElement oracle_count(Surface s, const TermPtr& t) {
  validate(s, t);
  return count_word(s, flatten(t));
}

}  // namespace cpath
