// Fundamental-group computations for the circle, the torus, and the real
// projective plane: canonicalization of loop terms to group elements, the
// group operations, path representatives, and an independent counting oracle.

#pragma once

#include <string>
#include <vector>

#include "cpath/term.hpp"
#include "cpath/trs.hpp"

namespace cpath {

class SurfaceError : public Error {
 public:
  using Error::Error;
};

enum class Surface {
  Circle,           // generator loop; group Z
  Torus,            // generators alpha, beta; relation co; group Z x Z
  ProjectivePlane,  // generator alpha; relation cicl; group Z_2
};

std::string surface_name(Surface s);
Surface parse_surface(const std::string& name);  // "circle"|"torus"|"rp2"
const std::vector<std::string>& generators(Surface s);

// Circle: a = winding number. Torus: a = beta exponent m, b = alpha
// exponent n, canonical word beta^m alpha^n. Projective plane: a in {0,1}.
struct SurfaceElement {
  Surface surface = Surface::Circle;
  long long a = 0;
  long long b = 0;
};

bool operator==(const SurfaceElement& x, const SurfaceElement& y);
std::string print_element(const SurfaceElement& e);

// A word in the surface's generators, written in group notation: the
// letter applied last comes first, matching beta^m alpha^n.
struct Letter {
  std::string gen;
  bool inverse = false;
};
using LoopWord = std::vector<Letter>;

std::string print_word(const LoopWord& w);

SurfaceElement identity(Surface s);
// Both throw SurfaceError when the elements belong to different surfaces.
SurfaceElement compose(const SurfaceElement& x, const SurfaceElement& y);
SurfaceElement inverse(const SurfaceElement& x);

// Left-associated power of the circle generator: 0 -> rho, 3 ->
// tau(tau(loop,loop),loop), negative via sigma.
TermPtr loop_power(long long n);

// Canonical path representative; canonicalize(to_path(e)) == e.
TermPtr to_path(const SurfaceElement& e);

struct CanonicalizeResult {
  SurfaceElement element;
  LoopWord word;       // word of the canonical term
  RewriteTrace trace;  // normalization plus surface-relation steps
};

// Normalizes with the core rules, then applies the surface relation: the
// torus sorts beta-letters before alpha-letters (steps labelled "co"), the
// projective plane flips inverses and removes alpha pairs (steps labelled
// "cicl"). Throws SurfaceError on atoms or operators outside the surface's
// path language.
CanonicalizeResult canonicalize(Surface s, const TermPtr& t);

// Counts generators by structural recursion, ignoring the rewrite rules.
// Independent of canonicalize; used to cross-check it.
SurfaceElement oracle_count(Surface s, const TermPtr& t);

}  // namespace cpath
