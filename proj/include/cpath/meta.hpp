// Second-level rewriting: terms built from rho2/sigma2/tau2 over first-level
// rewrite traces, the seven mirrored reduction rules, and the
// independence-of-choice relation cd2 over staircase interleavings.

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cpath/term.hpp"
#include "cpath/trs.hpp"

namespace cpath {

class EndpointError : public Error {
 public:
  using Error::Error;
};

enum class Rw2Op {
  TraceAtom,  // a first-level trace, endpoints initial/result
  Rho2,       // identity sequence at a point term
  Sigma2,     // endpoint-swapping inverse
  Tau2,       // composition; requires dst(lhs) == src(rhs)
};

struct Rw2Term;
using Rw2Ptr = std::shared_ptr<const Rw2Term>;

struct Rw2Term {
  Rw2Op op;
  RewriteTrace trace;        // TraceAtom only
  TermPtr point;             // Rho2 only
  std::vector<Rw2Ptr> args;  // Sigma2: 1, Tau2: 2
};

// Constructors. tau2 throws EndpointError when dst(a) != src(b).
Rw2Ptr rw2_atom(RewriteTrace trace);
Rw2Ptr rho2(TermPtr point);
Rw2Ptr sigma2(Rw2Ptr h);
Rw2Ptr tau2(Rw2Ptr a, Rw2Ptr b);

// Endpoints of the first-level rw-equality a meta-term witnesses.
TermPtr rw2_src(const Rw2Ptr& h);
TermPtr rw2_dst(const Rw2Ptr& h);

bool rw2_term_equal(const Rw2Ptr& a, const Rw2Ptr& b);
std::string print_rw2(const Rw2Ptr& h);

struct Rw2Rule {
  int index;
  std::string name;
  std::string display;  // e.g. "tau2(h,sigma2(h)) => rho2"
  std::function<std::optional<Rw2Ptr>(const Rw2Ptr&)> match;
};

// The seven second-level rules: tr2, tsr2, trr2, tlr2, sr2, ss2, tt2.
const std::vector<Rw2Rule>& rw2_rule_table();

struct Rw2Step {
  std::string rule;
  int rule_index = 0;
  Position pos;
  Rw2Ptr before;  // whole meta-term before the step
  Rw2Ptr after;
};

struct Rw2Trace {
  Rw2Ptr initial;
  std::vector<Rw2Step> steps;
  Rw2Ptr result;
};

// Outermost-leftmost normalization under the seven rules. Endpoints are
// preserved at every step.
Rw2Trace rw2_normalize(const Rw2Ptr& h, std::size_t step_limit = 10000);

struct Rw2EqualResult {
  bool equal = false;
  Rw2Trace left;
  Rw2Trace right;
};

// rw2-equality: both meta-terms normalize to the same normal form.
Rw2EqualResult rw2_equal(const Rw2Ptr& a, const Rw2Ptr& b);

// Every monotone staircase interleaving of theta and phi on the composite
// term tau(s, t): each step advances theta inside the first argument or phi
// inside the second, preserving both orders. With n and m the number of
// terms in theta and phi, the set has binomial(n+m-2, n-1) members; the
// enumeration is bounded by n + m <= 20.
std::vector<RewriteTrace> cd2_interleavings(const RewriteTrace& theta,
                                            const RewriteTrace& phi);

// True when x and y interleave the same pair of traces: projecting the
// steps under argument 0 and argument 1 yields identical components.
bool cd2_equal(const RewriteTrace& x, const RewriteTrace& y);

}  // namespace cpath
