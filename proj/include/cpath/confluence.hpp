// Critical pairs by first-order superposition over the rules' bare-hole
// instances, plus joinability checking by normalization.

#pragma once

#include <string>
#include <vector>

#include "cpath/term.hpp"
#include "cpath/trs.hpp"

namespace cpath {

struct CriticalPair {
  const Rule* outer = nullptr;  // rule whose lhs hosts the overlap
  const Rule* inner = nullptr;  // rule unified into outer's lhs at pos
  Position pos;                 // non-variable position in outer's lhs
  TermPtr peak;                 // the unified instance of outer's lhs
  TermPtr left;                 // one step with inner at pos
  TermPtr right;                // one step with outer at the root

  bool checked = false;
  bool joinable = false;
  TermPtr nf_left;
  TermPtr nf_right;  // equals nf_left when joinable
};

// Enumerates every overlap of one rule's lhs with a non-variable subterm of
// another's (self-overlaps included, except the trivial one of a rule with
// itself at the root). Variables of the two rules are renamed apart; inner
// variables carry a "2" suffix. Deterministically ordered by (outer index,
// inner index, position).
std::vector<CriticalPair> superpose(const RuleSet& rules);

// Normalizes both results with the same rule set; joinable iff the normal
// forms coincide.
CriticalPair check_joinable(CriticalPair cp, const RuleSet& rules,
                            std::size_t step_limit = 10000);

// Convenience: superpose + check every pair.
std::vector<CriticalPair> critical_pairs(const RuleSet& rules,
                                         std::size_t step_limit = 10000);

std::string print_critical_pair(const CriticalPair& cp);

}  // namespace cpath
