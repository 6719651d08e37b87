#pragma once

// Segal-type condition checkers.  Each checker quantifies over a finite family
// of comparison squares, decides every "homotopy pullback" question by
// building the canonical comparison functor into the iso-comma pullback and
// testing it for equivalence, and reports the failing instances with their
// equivalence counterexamples.  Instances are independent; TWOSEGAL_PARALLELISM
// many worker threads evaluate them when the variable is set above 1, and the
// report is merged in index order either way.

#include <string>
#include <vector>

#include "twosegal/simplicial.hpp"

namespace twosegal {

// One failed condition instance.  Index fields that do not apply stay at -1;
// f names the slice-level object of a relative family condition or the active
// part of an identity extension square.  The witness comes from
// is_equivalence on the comparison functor.
struct CheckFailure {
  std::string condition;
  int n = -1;
  int i = -1;
  int j = -1;
  std::string f;
  std::string witness;

  bool operator==(const CheckFailure&) const = default;
};

struct CheckReport {
  bool passed = true;
  std::vector<CheckFailure> failures;  // sorted by (n, i, j, f)
  std::string checked_range;           // the instance family that was decided

  explicit operator bool() const { return passed; }
};

// Spine comparisons X_n -> X_{0,1} x_{X_0} ... x_{X_0} X_{n-1,n} for
// 2 <= n <= depth, the pullbacks taken over the shared vertices.  Simplex
// shape; depth above the truncation throws.
CheckReport is_1_segal(const TruncatedSimplicialGroupoid& X, int depth);

// Polygonal comparisons X_n -> X_{0..i,j..n} x_{X_{i,j}} X_{i..j} for
// 3 <= n <= depth and 0 <= i < j <= n.  The degenerate pairs (i, i+1) and
// (0, n) are kept; they are cheap and make the loop uniform.  Simplex shape.
CheckReport is_2_segal(const TruncatedSimplicialGroupoid& X, int depth);

// Image squares of all identity extension squares with corners of size
// <= depth must be homotopy pullbacks.  Simplex or full slice shape.
CheckReport is_decomposition_space(const TruncatedSimplicialGroupoid& X,
                                   int depth);

// Relative family conditions: for every level object f on [n] with
// 3 <= n <= depth and 0 <= i < j <= n, the square
//
//   M_f ------------> M_{f|i..j}
//    |                    |
//   M_{f|0..i,j..n} -> M_{f|i,j}
//
// must be a homotopy pullback.  The full slice shape gives the birelative
// conditions, the left and right shapes their one-sided variants.
CheckReport is_relative_2_segal_family(const TruncatedSimplicialGroupoid& X,
                                       int depth);

// A morphism p: X -> Y of simplex-shaped objects is relative 2-Segal when the
// source is 1-Segal, the target is 2-Segal, and the mixed squares
//
//   X_n ------------> Y_{i..j}
//    |                    |
//   X_{0..i,j..n} ---> Y_{i,j}
//
// are homotopy pullbacks for 1 <= n <= depth and 0 <= i < j <= n.  All three
// condition families are checked to the same depth.
CheckReport is_relative_2_segal_morphism(const SimplicialMorphism& p,
                                         int depth);

}  // namespace twosegal
