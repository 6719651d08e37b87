#pragma once

// Truncated simplicial and relative simplicial groupoids: levels indexed by
// slice objects, structure maps generated by cofaces and codegeneracies, the
// reindexings (twisted arrow, path spaces, forgetful, reversal), levelwise
// products, the left-relative conversion, and nerves of finite categories.

#include <array>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "twosegal/delta.hpp"
#include "twosegal/groupoid.hpp"

namespace twosegal {

struct IndexShape {
  IndexShapeKind kind = IndexShapeKind::Simplex;
  int truncation = 1;

  bool operator==(const IndexShape&) const = default;
};

// The level objects of a shape, ascending.  Simplex levels are the all-zero
// slice objects (n, n+1).  The left/right relative shapes omit the one-point
// corner objects (0,0) resp. (0,1): those lie outside the two embedded copies
// of the simplex category that cover the shape, and no face or degeneracy
// between the remaining levels ever factors through them.
std::vector<OverOneObject> shape_levels(const IndexShape& shape);

// All cofaces and codegeneracies between levels of the shape.  These generate
// every slice map between levels, with all canonical-factorization
// intermediates again levels.
std::vector<OverOneMap> shape_generators(const IndexShape& shape);

struct TruncatedSimplicialGroupoid {
  IndexShape shape;
  std::map<OverOneObject, FinGroupoid> levels;
  std::map<OverOneMap, GroupoidFunctor> maps;

  const FinGroupoid& level(const OverOneObject& x) const;
  // The all-zero level (n, n+1); the only levels a Simplex shape has.
  const FinGroupoid& level(int n) const;
  const GroupoidFunctor& generator(const OverOneMap& f) const;
  // X(d^i) : X_n -> X_{n-1} and X(s^i) : X_n -> X_{n+1} between all-zero
  // levels (0 <= i <= n).
  const GroupoidFunctor& face(int n, int i) const;
  const GroupoidFunctor& degeneracy(int n, int i) const;

  bool operator==(const TruncatedSimplicialGroupoid&) const = default;
};

// Builds levels and generator functors by evaluation; level_of receives each
// level object, map_of each generator.
TruncatedSimplicialGroupoid make_simplicial(
    const IndexShape& shape,
    const std::function<FinGroupoid(const OverOneObject&)>& level_of,
    const std::function<GroupoidFunctor(const OverOneMap&)>& map_of);

// The functor X(f) for any slice map f between levels, as the canonical
// codegeneracies-then-cofaces word in the stored generators.  Strict
// simplicial identities make the result factorization independent; validate
// confirms that on every composable generator pair.
GroupoidFunctor structure_map(const TruncatedSimplicialGroupoid& X,
                              const OverOneMap& f);
// Simplex-shaped shorthand: lifts a plain monotone map between all-zero
// levels.
GroupoidFunctor structure_map(const TruncatedSimplicialGroupoid& X,
                              const MonotoneMap& f);

ValidationReport validate(const TruncatedSimplicialGroupoid& X);

// Drops all levels above new_truncation.
TruncatedSimplicialGroupoid truncate(const TruncatedSimplicialGroupoid& X,
                                     int new_truncation);

struct SimplicialMorphism {
  TruncatedSimplicialGroupoid source, target;
  std::map<OverOneObject, GroupoidFunctor> components;
};

// Checks matching shapes, component endpoints, and strict commutation with
// every generator.
ValidationReport validate_morphism(const SimplicialMorphism& m);

SimplicialMorphism identity_morphism(const TruncatedSimplicialGroupoid& X);
SimplicialMorphism truncate(const SimplicialMorphism& m, int new_truncation);

// ---------------------------------------------------------------------------
// Reindexings (precomposition with index functors).

// tw(X)_n = X_{2n+1} along the edgewise join [n] |-> [n] * [n]^op; the base
// must be truncated at depth >= 2*truncation+1.
TruncatedSimplicialGroupoid twisted_arrow(const TruncatedSimplicialGroupoid& X,
                                          int truncation);
// P(X)_n = X_{n+1} along the join with a point on the left resp. right; the
// result is one level shallower.
TruncatedSimplicialGroupoid initial_path_space(
    const TruncatedSimplicialGroupoid& X);
TruncatedSimplicialGroupoid final_path_space(
    const TruncatedSimplicialGroupoid& X);
// Order reversal.  Simplex-shaped objects stay Simplex-shaped; slice-shaped
// objects flip thresholds, exchanging the left and right relative shapes.
TruncatedSimplicialGroupoid reverse_simplicial(
    const TruncatedSimplicialGroupoid& X);
// Precomposition with the forgetful slice-to-simplex functor: the slice-level
// (n, t) carries X_n.
TruncatedSimplicialGroupoid forget_to_over_one(
    const TruncatedSimplicialGroupoid& X);
// Restriction of a full slice-shaped object to the left or right relative
// shape.
TruncatedSimplicialGroupoid restrict_to_shape(
    const TruncatedSimplicialGroupoid& X, IndexShapeKind kind);

// ---------------------------------------------------------------------------
// Levelwise product.

struct SimplicialProductData {
  TruncatedSimplicialGroupoid product;
  SimplicialMorphism to_left, to_right;
};

SimplicialProductData product_simplicial(const TruncatedSimplicialGroupoid& a,
                                         const TruncatedSimplicialGroupoid& b);

// ---------------------------------------------------------------------------
// The left-relative conversion.
//
// A left relative object X restricts along the two simplex copies inside its
// shape: the one-extra-1 levels (n+1, n+1) form the source, the all-zero
// levels the target, and X(d^{n+1}) the components.  The result is one level
// shallower than X.  The inverse reassembles the left relative object of the
// same depth as the morphism; both composites are levelwise identities after
// matching truncations.

SimplicialMorphism theta_L_convert(const TruncatedSimplicialGroupoid& X);
TruncatedSimplicialGroupoid theta_L_invert(const SimplicialMorphism& m);

// ---------------------------------------------------------------------------
// Nerves of finite categories.

// A finite category presented by total tables; arrows include identities.
// comp maps pair_key(f, g) to "f then g" for each composable pair.
struct FiniteCategory {
  int object_count = 0;
  std::vector<int> src, dst;
  std::vector<int> identity;
  std::map<std::uint64_t, int> comp;

  int arrow_count() const { return static_cast<int>(src.size()); }
  int compose(int f, int g) const;

  static FiniteCategory from_parts(int object_count, std::vector<int> src,
                                   std::vector<int> dst,
                                   std::vector<int> identity,
                                   const std::vector<std::array<int, 3>>& triples);
};

ValidationReport validate(const FiniteCategory& c);

// The poset category on 0..n-1 generated by the given covers (reflexive
// transitive closure).
FiniteCategory poset_category(int n, const std::vector<std::pair<int, int>>& covers);
// One-object category of a finite monoid; mult is in composition order
// (mult[a][b] applies b first) with the given unit element.
FiniteCategory monoid_category(const std::vector<std::vector<int>>& mult, int unit);

// Level n is the discrete groupoid of length-n composable chains.
TruncatedSimplicialGroupoid nerve(const FiniteCategory& c, int truncation);

}  // namespace twosegal
