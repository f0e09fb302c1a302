// Path terms: immutable first-order trees over the path operators
// (rho, sigma, tau, subL, subR, xi family, mu family, nu) plus named atoms.
//
// Terms are shared via shared_ptr and never mutated; every "modifying"
// operation returns a new term that shares unchanged subtrees.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpath {

enum class Op : std::uint8_t {
  Atom,   // named constant; may carry inert arguments
  Rho,    // reflexivity, arity 0
  Sigma,  // symmetry, arity 1
  Tau,    // transitivity (composition), arity 2
  SubL,   // left substitution, arity 2
  SubR,   // right substitution, arity 2
  Xi,     // congruence, arity 1 or 2
  Xi1,    // arity 1
  Xi2,    // arity 1
  XiA,    // pairing congruence, arity 2
  Mu,     // elimination congruence, arity 1, 2 or 3
  Mu1,    // arity 1
  Mu2,    // arity 1
  Nu,     // arity 1
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  Op op;
  std::string name;          // atom label; empty for operators
  std::vector<TermPtr> args;
};

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. line/column are 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what);
  int line;
  int column;
};

// Operator applied outside its declared arity range.
class ArityError : public Error {
 public:
  using Error::Error;
};

// Position does not exist in the term.
class PositionError : public Error {
 public:
  using Error::Error;
};

// Operator metadata. Arity ranges follow observed usage: xi takes 1-2
// arguments, mu takes 1-3, everything else is fixed.
const char* op_token(Op op);
int op_min_arity(Op op);
int op_max_arity(Op op);
// True for the congruence operators (xi/mu/nu families) that one-hole
// contexts may descend through.
bool op_is_congruence(Op op);

// Constructors (arity-checked; throw ArityError).
TermPtr atom(std::string name, std::vector<TermPtr> args = {});
TermPtr make(Op op, std::vector<TermPtr> args);
TermPtr rho();
TermPtr sigma(TermPtr a);
TermPtr tau(TermPtr a, TermPtr b);
TermPtr subL(TermPtr a, TermPtr b);
TermPtr subR(TermPtr a, TermPtr b);

bool equal(const TermPtr& a, const TermPtr& b);
std::size_t term_size(const TermPtr& t);   // node count
std::size_t term_depth(const TermPtr& t);  // atoms/rho have depth 1

std::string print(const TermPtr& t);
// Parses the canonical grammar: term := IDENT | IDENT '(' term {',' term} ')'.
// Reserved identifiers are the operator tokens; anything else is an atom.
// Whitespace-insensitive. Throws ParseError / ArityError with line/column.
TermPtr parse(const std::string& text);

// Positions are child-index paths from the root; {} is the root itself.
using Position = std::vector<int>;
std::string print_position(const Position& p);  // root prints as "ε"
// Preorder (outermost-leftmost) order: a prefix precedes its extensions,
// siblings compare left to right.
bool position_preorder_less(const Position& a, const Position& b);

TermPtr subterm_at(const TermPtr& t, const Position& p);
TermPtr replace_at(const TermPtr& t, const Position& p, const TermPtr& s);

// First-order matching and unification. Variables are atoms whose names are
// listed in `vars`; repeated variables must bind syntactically equal terms.
using Substitution = std::map<std::string, TermPtr>;
std::optional<Substitution> match_pattern(const TermPtr& pattern,
                                          const TermPtr& subject,
                                          const std::set<std::string>& vars);
TermPtr substitute(const TermPtr& pattern, const Substitution& subst,
                   const std::set<std::string>& vars);
// Syntactic unification with occurs check; the result is fully resolved
// (bindings contain no bound variables).
std::optional<Substitution> unify(const TermPtr& a, const TermPtr& b,
                                  const std::set<std::string>& vars);

// One-hole contexts, found by structural diff of a term pair. The hole path
// may only pass through congruence operators; the bare hole (both terms are
// the related pair themselves) is always tried first, and the
// outermost-leftmost decomposition wins when several exist.
enum class ContextRelation {
  PlainVsSigma,  // a = C[x], b = C[sigma(x)]
  SigmaVsPlain,  // a = C[sigma(x)], b = C[x]
  PlainVsRho,    // a = C[x], b = C[rho]
  RhoVsPlain,    // a = C[rho], b = C[x]
  EqualU,        // a = C[x], b = C[x]
};

struct ContextMatch {
  Position hole;    // hole position (in both terms)
  TermPtr binding;  // the bound subterm x
};

std::optional<ContextMatch> match_context_pair(const TermPtr& a,
                                               const TermPtr& b,
                                               ContextRelation rel);

}  // namespace cpath
