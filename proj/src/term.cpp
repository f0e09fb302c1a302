#include "cpath/term.hpp"

#include <array>
#include <sstream>

namespace cpath {

namespace {

struct OpInfo {
  Op op;
  const char* token;
  int min_arity;
  int max_arity;
};

constexpr std::array<OpInfo, 13> kOps{{
    {Op::Rho, "rho", 0, 0},
    {Op::Sigma, "sigma", 1, 1},
    {Op::Tau, "tau", 2, 2},
    {Op::SubL, "subL", 2, 2},
    {Op::SubR, "subR", 2, 2},
    {Op::Xi, "xi", 1, 2},
    {Op::Xi1, "xi1", 1, 1},
    {Op::Xi2, "xi2", 1, 1},
    {Op::XiA, "xiA", 2, 2},
    {Op::Mu, "mu", 1, 3},
    {Op::Mu1, "mu1", 1, 1},
    {Op::Mu2, "mu2", 1, 1},
    {Op::Nu, "nu", 1, 1},
}};

const OpInfo& info(Op op) {
  for (const auto& i : kOps) {
    if (i.op == op) return i;
  }
  throw Error("atom has no operator metadata");
}

}  // namespace

ParseError::ParseError(int line_, int column_, const std::string& what_)
    : Error("syntax error at line " + std::to_string(line_) + ", column " +
            std::to_string(column_) + ": " + what_),
      line(line_),
      column(column_) {}

const char* op_token(Op op) { return info(op).token; }
int op_min_arity(Op op) { return op == Op::Atom ? 0 : info(op).min_arity; }
int op_max_arity(Op op) {
  return op == Op::Atom ? INT32_MAX : info(op).max_arity;
}

bool op_is_congruence(Op op) {
  switch (op) {
    case Op::Xi:
    case Op::Xi1:
    case Op::Xi2:
    case Op::XiA:
    case Op::Mu:
    case Op::Mu1:
    case Op::Mu2:
    case Op::Nu:
      return true;
    default:
      return false;
  }
}

TermPtr atom(std::string name, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->op = Op::Atom;
  t->name = std::move(name);
  t->args = std::move(args);
  return t;
}

TermPtr make(Op op, std::vector<TermPtr> args) {
  if (op == Op::Atom) throw Error("atoms must be built with atom()");
  const auto& i = info(op);
  const int n = static_cast<int>(args.size());
  if (n < i.min_arity || n > i.max_arity) {
    std::ostringstream msg;
    msg << "arity error: " << i.token << " expects ";
    if (i.min_arity == i.max_arity) {
      msg << i.min_arity << (i.min_arity == 1 ? " argument" : " arguments");
    } else {
      msg << i.min_arity << " to " << i.max_arity << " arguments";
    }
    msg << ", got " << n;
    throw ArityError(msg.str());
  }
  auto t = std::make_shared<Term>();
  t->op = op;
  t->args = std::move(args);
  return t;
}

TermPtr rho() {
  static const TermPtr r = make(Op::Rho, {});
  return r;
}
TermPtr sigma(TermPtr a) { return make(Op::Sigma, {std::move(a)}); }
TermPtr tau(TermPtr a, TermPtr b) {
  return make(Op::Tau, {std::move(a), std::move(b)});
}
TermPtr subL(TermPtr a, TermPtr b) {
  return make(Op::SubL, {std::move(a), std::move(b)});
}
TermPtr subR(TermPtr a, TermPtr b) {
  return make(Op::SubR, {std::move(a), std::move(b)});
}

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->op != b->op) return false;
  if (a->op == Op::Atom && a->name != b->name) return false;
  if (a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!equal(a->args[i], b->args[i])) return false;
  }
  return true;
}

std::size_t term_size(const TermPtr& t) {
  std::size_t n = 1;
  for (const auto& a : t->args) n += term_size(a);
  return n;
}

std::size_t term_depth(const TermPtr& t) {
  std::size_t d = 0;
  for (const auto& a : t->args) d = std::max(d, term_depth(a));
  return d + 1;
}

namespace {
void print_into(const TermPtr& t, std::string& out) {
  out += t->op == Op::Atom ? t->name : info(t->op).token;
  if (!t->args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < t->args.size(); ++i) {
      if (i) out += ',';
      print_into(t->args[i], out);
    }
    out += ')';
  }
}
}  // namespace

std::string print(const TermPtr& t) {
  std::string out;
  print_into(t, out);
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  TermPtr run() {
    skip_ws();
    TermPtr t = term();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(line_, column_, msg);
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        column_ = 1;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++column_;
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool eat(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      ++column_;
      return true;
    }
    return false;
  }

  static bool ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool ident_char(char c) {
    return ident_start(c) || (c >= '0' && c <= '9');
  }

  TermPtr term() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected a term");
    if (!ident_start(text_[pos_])) {
      fail(std::string("unexpected character '") + text_[pos_] + "'");
    }
    const int id_line = line_;
    const int id_column = column_;
    std::string id;
    while (pos_ < text_.size() && ident_char(text_[pos_])) {
      id += text_[pos_];
      ++pos_;
      ++column_;
    }
    std::vector<TermPtr> args;
    bool parens = false;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      parens = true;
      eat('(');
      skip_ws();
      if (!eat(')')) {
        args.push_back(term());
        skip_ws();
        while (eat(',')) {
          args.push_back(term());
          skip_ws();
        }
        if (!eat(')')) fail("expected ')' or ','");
      }
    }
    if (parens && args.empty()) fail("empty argument list");
    for (const auto& i : kOps) {
      if (id == i.token) {
        const int n = static_cast<int>(args.size());
        if (n < i.min_arity || n > i.max_arity) {
          std::ostringstream msg;
          msg << "arity error at line " << id_line << ", column " << id_column
              << ": " << i.token << " expects ";
          if (i.min_arity == i.max_arity) {
            msg << i.min_arity
                << (i.min_arity == 1 ? " argument" : " arguments");
          } else {
            msg << i.min_arity << " to " << i.max_arity << " arguments";
          }
          msg << ", got " << n;
          throw ArityError(msg.str());
        }
        return make(i.op, std::move(args));
      }
    }
    return atom(std::move(id), std::move(args));
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

TermPtr parse(const std::string& text) { return Parser(text).run(); }

std::string print_position(const Position& p) {
  if (p.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(p[i]);
  }
  return out;
}

bool position_preorder_less(const Position& a, const Position& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

TermPtr subterm_at(const TermPtr& t, const Position& p) {
  TermPtr cur = t;
  for (int idx : p) {
    if (idx < 0 || idx >= static_cast<int>(cur->args.size())) {
      throw PositionError("invalid position " + print_position(p) + " in " +
                          print(t));
    }
    cur = cur->args[idx];
  }
  return cur;
}

namespace {
TermPtr replace_rec(const TermPtr& t, const Position& p, std::size_t depth,
                    const TermPtr& s, const Position& full,
                    const TermPtr& root) {
  if (depth == p.size()) return s;
  int idx = p[depth];
  if (idx < 0 || idx >= static_cast<int>(t->args.size())) {
    throw PositionError("invalid position " + print_position(full) + " in " +
                        print(root));
  }
  auto copy = std::make_shared<Term>(*t);
  copy->args[idx] = replace_rec(t->args[idx], p, depth + 1, s, full, root);
  return copy;
}
}  // namespace

TermPtr replace_at(const TermPtr& t, const Position& p, const TermPtr& s) {
  return replace_rec(t, p, 0, s, p, t);
}

namespace {
bool match_rec(const TermPtr& pattern, const TermPtr& subject,
               const std::set<std::string>& vars, Substitution& subst) {
  if (pattern->op == Op::Atom && vars.count(pattern->name)) {
    auto [it, inserted] = subst.emplace(pattern->name, subject);
    return inserted || equal(it->second, subject);
  }
  if (pattern->op != subject->op) return false;
  if (pattern->op == Op::Atom && pattern->name != subject->name) return false;
  if (pattern->args.size() != subject->args.size()) return false;
  for (std::size_t i = 0; i < pattern->args.size(); ++i) {
    if (!match_rec(pattern->args[i], subject->args[i], vars, subst)) {
      return false;
    }
  }
  return true;
}
}  // namespace

std::optional<Substitution> match_pattern(const TermPtr& pattern,
                                          const TermPtr& subject,
                                          const std::set<std::string>& vars) {
  Substitution subst;
  if (!match_rec(pattern, subject, vars, subst)) return std::nullopt;
  return subst;
}

TermPtr substitute(const TermPtr& pattern, const Substitution& subst,
                   const std::set<std::string>& vars) {
  if (pattern->op == Op::Atom && vars.count(pattern->name)) {
    auto it = subst.find(pattern->name);
    if (it == subst.end()) throw Error("unbound variable " + pattern->name);
    return it->second;
  }
  if (pattern->args.empty()) return pattern;
  std::vector<TermPtr> args;
  args.reserve(pattern->args.size());
  bool changed = false;
  for (const auto& a : pattern->args) {
    args.push_back(substitute(a, subst, vars));
    changed = changed || args.back().get() != a.get();
  }
  if (!changed) return pattern;
  auto copy = std::make_shared<Term>(*pattern);
  copy->args = std::move(args);
  return copy;
}

namespace {

bool is_var(const TermPtr& t, const std::set<std::string>& vars) {
  return t->op == Op::Atom && vars.count(t->name) > 0;
}

TermPtr walk(TermPtr t, const std::set<std::string>& vars,
             const Substitution& subst) {
  while (is_var(t, vars)) {
    auto it = subst.find(t->name);
    if (it == subst.end()) break;
    t = it->second;
  }
  return t;
}

bool occurs(const std::string& var, const TermPtr& t,
            const std::set<std::string>& vars, const Substitution& subst) {
  TermPtr w = walk(t, vars, subst);
  if (is_var(w, vars)) return w->name == var;
  for (const auto& a : w->args) {
    if (occurs(var, a, vars, subst)) return true;
  }
  return false;
}

bool unify_rec(const TermPtr& a, const TermPtr& b,
               const std::set<std::string>& vars, Substitution& subst) {
  TermPtr x = walk(a, vars, subst);
  TermPtr y = walk(b, vars, subst);
  if (is_var(x, vars)) {
    if (is_var(y, vars) && x->name == y->name) return true;
    if (occurs(x->name, y, vars, subst)) return false;
    subst[x->name] = y;
    return true;
  }
  if (is_var(y, vars)) {
    if (occurs(y->name, x, vars, subst)) return false;
    subst[y->name] = x;
    return true;
  }
  if (x->op != y->op) return false;
  if (x->op == Op::Atom && x->name != y->name) return false;
  if (x->args.size() != y->args.size()) return false;
  for (std::size_t i = 0; i < x->args.size(); ++i) {
    if (!unify_rec(x->args[i], y->args[i], vars, subst)) return false;
  }
  return true;
}

TermPtr resolve(const TermPtr& t, const std::set<std::string>& vars,
                const Substitution& subst) {
  TermPtr w = walk(t, vars, subst);
  if (w->args.empty()) return w;
  std::vector<TermPtr> args;
  args.reserve(w->args.size());
  bool changed = false;
  for (const auto& a : w->args) {
    args.push_back(resolve(a, vars, subst));
    changed = changed || args.back().get() != a.get();
  }
  if (!changed) return w;
  auto copy = std::make_shared<Term>(*w);
  copy->args = std::move(args);
  return copy;
}

}  // namespace

std::optional<Substitution> unify(const TermPtr& a, const TermPtr& b,
                                  const std::set<std::string>& vars) {
  Substitution subst;
  if (!unify_rec(a, b, vars, subst)) return std::nullopt;
  Substitution resolved;
  for (const auto& [name, t] : subst) {
    resolved.emplace(name, resolve(t, vars, subst));
  }
  return resolved;
}

namespace {

// Checks the relation with the hole at the root (bare-hole decomposition).
std::optional<TermPtr> relation_at(const TermPtr& a, const TermPtr& b,
                                   ContextRelation rel) {
  switch (rel) {
    case ContextRelation::PlainVsSigma:
      if (b->op == Op::Sigma && equal(b->args[0], a)) return a;
      return std::nullopt;
    case ContextRelation::SigmaVsPlain:
      if (a->op == Op::Sigma && equal(a->args[0], b)) return b;
      return std::nullopt;
    case ContextRelation::PlainVsRho:
      if (b->op == Op::Rho) return a;
      return std::nullopt;
    case ContextRelation::RhoVsPlain:
      if (a->op == Op::Rho) return b;
      return std::nullopt;
    case ContextRelation::EqualU:
      if (equal(a, b)) return a;
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<ContextMatch> context_rec(const TermPtr& a, const TermPtr& b,
                                        ContextRelation rel) {
  if (auto bound = relation_at(a, b, rel)) {
    return ContextMatch{{}, *bound};
  }
  // Descend through one congruence layer. Both sides must agree on the
  // scaffold node, and exactly one child pair may differ (a one-hole
  // context leaves everything off the hole path equal).
  if (a->op != b->op || !op_is_congruence(a->op)) return std::nullopt;
  if (a->args.size() != b->args.size()) return std::nullopt;
  if (equal(a, b)) {
    // Only the rho-relations can still hold below (hole content r = rho);
    // pick the outermost-leftmost rho reachable through congruence nodes.
    if (rel != ContextRelation::PlainVsRho &&
        rel != ContextRelation::RhoVsPlain) {
      return std::nullopt;
    }
    for (std::size_t i = 0; i < a->args.size(); ++i) {
      if (auto m = context_rec(a->args[i], b->args[i], rel)) {
        m->hole.insert(m->hole.begin(), static_cast<int>(i));
        return m;
      }
    }
    return std::nullopt;
  }
  int diff = -1;
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!equal(a->args[i], b->args[i])) {
      if (diff >= 0) return std::nullopt;
      diff = static_cast<int>(i);
    }
  }
  if (auto m = context_rec(a->args[diff], b->args[diff], rel)) {
    m->hole.insert(m->hole.begin(), diff);
    return m;
  }
  return std::nullopt;
}

}  // namespace

std::optional<ContextMatch> match_context_pair(const TermPtr& a,
                                               const TermPtr& b,
                                               ContextRelation rel) {
  return context_rec(a, b, rel);
}

}  // namespace cpath
