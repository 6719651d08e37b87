#pragma once

// The Waldhausen S-construction over a bounded skeleton of finite-dimensional
// F_q vector spaces.  Levels are groupoids of flags in the first-row model:
// one object per weakly increasing dimension pattern, automorphisms the
// invertible matrices preserving every prefix subspace.  On top of the plain
// construction sit induced maps of exact inclusions, closure predicates for
// full subcategories, and the relative construction gluing a flag in the
// source to a one-step-longer flag in the target, with its iota/pi sequence.

#include <functional>
#include <vector>

#include "twosegal/fqvect.hpp"
#include "twosegal/simplicial.hpp"

namespace twosegal {

struct FqVectInstance {
  int q = 2;
  int dmax = 1;
};

// Immutable handle for the skeleton: objects are the dimensions 0..dmax with
// zero object 0, morphisms are matrices over F_q, admissible monos the
// injective ones.  q must be a prime below ten (matrix payloads store one
// digit per entry); prime powers would need polynomial field arithmetic and
// stay out of scope.
struct ExactCategoryOracle {
  int q = 2;
  int dmax = 0;

  bool operator==(const ExactCategoryOracle&) const = default;
};

ExactCategoryOracle make_oracle(const FqVectInstance& inst);

// Isomorphisms a -> b: all invertible matrices when a == b, none otherwise.
std::vector<Mat> iso_morphisms(const ExactCategoryOracle& c, int a, int b);
// Admissible monos a -> b: all injective b x a matrices (none when a > b).
std::vector<Mat> mono_morphisms(const ExactCategoryOracle& c, int a, int b);

// The canonical cokernel of an admissible mono: quotient object b - a, epi
// the projection along the reduced-echelon complement of the image, section
// splitting it.  Deterministic, so quotienting is strictly functorial on the
// isos that preserve the image.
struct QuotientData {
  int object = 0;
  Mat epi;
  Mat section;
};
QuotientData quotient_of_mono(const ExactCategoryOracle& c, const Mat& mono);

// The groupoid of objects and their isomorphisms, one object per dimension.
FinGroupoid core_groupoid(const ExactCategoryOracle& c);

// ---------------------------------------------------------------------------
// Flags.  A point of level n is a chain of n admissible monos' objects
// A_1 >-> ... >-> A_n; the skeletal model stores only the dimension pattern
// d_1 <= ... <= d_n, realized by the standard prefix flag F^{d_1} <= ... <=
// F^{d_n}.  The full triangular array of subquotients is reconstructible and
// exists as a debug utility; nothing downstream consumes it.

struct Flag {
  std::vector<int> dims;
  std::vector<Mat> monos;  // monos[i] : F^{dims[i]} -> F^{dims[i+1]}
};

// The standard prefix flag of a weakly increasing pattern.
Flag canonical_flag(const std::vector<int>& pattern);
// Dimensions of every subquotient A_j / A_i (with A_0 = 0): row i holds the
// entries for j = i..n, so [i][j - i] = dims(A_j) - dims(A_i).
std::vector<std::vector<int>> flag_square(const std::vector<int>& pattern);

// ---------------------------------------------------------------------------
// The S-construction.  Level n is the groupoid of n-object flags; the face
// maps quotient by A_1, delete an inner stage, or drop the top; degeneracies
// repeat a stage.  All structure maps act on automorphisms by extracting the
// window submatrix between two prefix cuts, which is strictly functorial
// because prefix-preserving matrices are block upper triangular.
TruncatedSimplicialGroupoid build_S(const ExactCategoryOracle& c,
                                    int truncation);

// An exact inclusion between skeleta: same field, source bound inside the
// target bound.  Preserves zero, monos, and canonical cokernels on the nose.
struct ExactFunctorData {
  ExactCategoryOracle source, target;
};
ExactFunctorData inclusion_functor(const ExactCategoryOracle& source,
                                   const ExactCategoryOracle& target);

// The levelwise map applying the inclusion to flags.
SimplicialMorphism induced_map_S(const ExactFunctorData& f, int truncation);

// Closure of a full subcategory (selected by a predicate on dimensions, which
// must contain the zero object) under subobjects, quotients, and extensions,
// each decided by exhaustive enumeration within the bound.
struct ClosureReport {
  bool subobject_closed = true;
  bool quotient_closed = true;
  bool extension_closed = true;
};
ClosureReport closure_predicates(const ExactCategoryOracle& c,
                                 const std::function<bool(int)>& sub);

// ---------------------------------------------------------------------------
// The relative construction of an inclusion F: level n is the iso-comma
// pullback of S_n(F) against the top face S_{n+1}(D) -> S_n(D), so a point is
// a source flag, a one-step-longer target flag, and an identification of the
// target flag's truncation with the image of the source flag.  Structure maps
// act on the S_{n+1}(D) part along the join that fixes the top point.
//
//   iota: the constant simplicial groupoid on core(D) includes as the pairs
//         (0 >-> ... >-> 0, 0 >-> ... >-> 0 >-> b);
//   pi:   projection onto the source flag.
struct RelativeSData {
  TruncatedSimplicialGroupoid s_rel;
  SimplicialMorphism iota;
  SimplicialMorphism pi;
};
RelativeSData build_S_rel(const ExactFunctorData& f, int truncation);

}  // namespace twosegal
