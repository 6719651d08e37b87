#pragma once

// Index combinatorics: the simplex category, its slice over [1], the
// active/inert factorization system, identity extension squares, edgewise
// subdivision, and the marked-interval localization machinery used by the
// bimodule correspondence.

#include <string>
#include <utility>
#include <vector>

namespace twosegal {

// A weakly monotone map [n] -> [m] between the finite ordinals {0,...,n} and
// {0,...,m}.  values.size() == n+1 always; values nondecreasing in [0, m].
struct MonotoneMap {
  std::vector<int> values;
  int dst = 0;

  MonotoneMap() : values{0} {}
  MonotoneMap(std::vector<int> vals, int dst_size);

  int src() const { return static_cast<int>(values.size()) - 1; }
  int operator()(int i) const { return values[static_cast<size_t>(i)]; }

  bool operator==(const MonotoneMap&) const = default;
  auto operator<=>(const MonotoneMap&) const = default;
};

MonotoneMap identity_map(int n);
// d^i : [n] -> [n+1], the injection missing i (0 <= i <= n+1).
MonotoneMap coface_map(int n, int i);
// s^i : [n+1] -> [n], the surjection taking the value i twice (0 <= i <= n).
MonotoneMap codegeneracy_map(int n, int i);

// Diagrammatic composition: first f, then g.
MonotoneMap compose_monotone(const MonotoneMap& f, const MonotoneMap& g);

bool is_active(const MonotoneMap& f);  // endpoint preserving
bool is_inert(const MonotoneMap& f);   // subinterval inclusion
// Unique factorization f = inert . active (active first).
std::pair<MonotoneMap, MonotoneMap> active_inert_factorize(const MonotoneMap& f);

// rev(f)(i) = m - f(n-i); the order-reversal involution on arrows.
MonotoneMap reverse_map(const MonotoneMap& f);

// Edgewise subdivision: on objects [n] |-> [n] joined with its own reversal,
// i.e. [2n+1]; on arrows the join of f with its reversal.
int edgewise_object(int n);
MonotoneMap edgewise_map(const MonotoneMap& f);
MonotoneMap edgewise_first_inclusion(int n);   // [n] -> [2n+1], i |-> i
MonotoneMap edgewise_second_inclusion(int n);  // [n] -> [2n+1], i |-> n+1+i

// Ordinal join with a single point on the left/right: [n] -> [n+1] shifted
// maps used by the two path-space reindexings.
MonotoneMap join_point_left(const MonotoneMap& f);   // 0 |-> 0, 1+i |-> 1+f(i)
MonotoneMap join_point_right(const MonotoneMap& f);  // f on [n], top |-> top

// The contravariant inner-interstice map of an active f : [n] -> [m] with
// n, m >= 1: interstices of [m] (as the ordinal [m-1]) to interstices of [n].
// (j,j+1) |-> (k,k+1) where k is maximal with f(k) <= j.
MonotoneMap inner_interstices(const MonotoneMap& f);

// ---------------------------------------------------------------------------
// The slice over [1].

// An object f : [n] -> [1], stored as the threshold of its 0->1 step:
// f(i) = 0 iff i < t.  t = n+1 encodes the constant-0 map, t = 0 constant-1.
struct OverOneObject {
  int n = 0;
  int t = 1;

  OverOneObject() = default;
  OverOneObject(int n, int t);

  int value(int i) const { return i >= t ? 1 : 0; }
  bool all_zero() const { return t == n + 1; }
  bool all_one() const { return t == 0; }
  // Takes the value 1 at most once.
  bool in_leq() const { return t >= n; }
  // Takes the value 0 at most once.
  bool in_geq() const { return t <= 1; }

  bool operator==(const OverOneObject&) const = default;
  auto operator<=>(const OverOneObject&) const = default;
};

enum class IndexShapeKind { Simplex, OverOne, OverOneLeq, OverOneGeq };

bool object_in_shape(const OverOneObject& x, IndexShapeKind shape);

// Restriction to the subinterval [a, b] of [n].
OverOneObject restrict_object(const OverOneObject& f, int a, int b);
// Restriction to the two-element subset {i, j}.
OverOneObject restrict_two(const OverOneObject& f, int i, int j);
// Restriction to {0,...,i, j,...,n}, i.e. the complement of the open interval.
OverOneObject restrict_complement(const OverOneObject& f, int i, int j);

// g and f are composable when g ends at the value f starts with.
bool composable(const OverOneObject& g, const OverOneObject& f);
// Glued concatenation on [n+m]: the top point of g is identified with the
// bottom point of f.
OverOneObject star_concatenate(const OverOneObject& g, const OverOneObject& f);

// A morphism of the slice: a monotone map whose target-threshold
// classification agrees pointwise with the source threshold.
struct OverOneMap {
  OverOneObject src, dst;
  MonotoneMap map;

  OverOneMap() = default;
  OverOneMap(OverOneObject src, OverOneObject dst, MonotoneMap map);

  int operator()(int i) const { return map(i); }

  bool operator==(const OverOneMap&) const = default;
  auto operator<=>(const OverOneMap&) const = default;
};

OverOneMap identity_over_one(const OverOneObject& x);
OverOneMap compose_over_one(const OverOneMap& f, const OverOneMap& g);
bool is_active(const OverOneMap& f);
bool is_inert(const OverOneMap& f);
std::pair<OverOneMap, OverOneMap> active_inert_factorize(const OverOneMap& f);
// Lift a plain arrow to the slice between constant-0 objects.
OverOneMap lift_all_zero(const MonotoneMap& f);
// Glued concatenation of maps; the seam values must agree.
OverOneMap star_maps(const OverOneMap& a, const OverOneMap& b);

// Unit-interval decomposition of a morphism over [1]: the restrictions to
// each {i-1, i} of the source plus the two flanking intervals of the target.
struct OverOneDecomposition {
  OverOneObject left_flank;
  std::vector<OverOneMap> unit_parts;
  OverOneObject right_flank;

  bool operator==(const OverOneDecomposition&) const = default;
};

OverOneDecomposition decompose_over_one(const OverOneMap& f);
OverOneMap reassemble(const OverOneDecomposition& d);

// ---------------------------------------------------------------------------
// Identity extension squares.
//
//        g0 --top-->> g1            top, bottom active; left, right inert;
//   left v             v right      bottom restricts to the identity outside
//        h0 -bottom->> h1           the window [offset, offset + g0.n].

struct IdentityExtensionSquare {
  OverOneMap top;
  OverOneMap bottom;
  OverOneMap left;
  OverOneMap right;

  int offset() const { return left.map(0); }

  bool operator==(const IdentityExtensionSquare&) const = default;
};

// Completes an inert map g0 >-> h0 and an active map g0 ->> g1 with shared
// source to the square above (the pushout of the two maps).
IdentityExtensionSquare pushout_active_inert(const OverOneMap& inert,
                                             const OverOneMap& active);

// All identity extension squares with every corner of size <= bound and in
// shape.  Windows are nondegenerate (g0 of size >= 1); squares with a point
// window have identity horizontals and are omitted as degenerate.
// Deterministic lexicographic order.
std::vector<IdentityExtensionSquare> enumerate_identity_extension_squares(
    IndexShapeKind shape, int bound);

// The gluing square of the outer object f over the pair i < j: window
// restriction against the complement restriction.  Its image under a
// simplicial object is the polygonal comparison square at (n, i, j).
IdentityExtensionSquare polygonal_square(const OverOneObject& f, int i, int j);

// ---------------------------------------------------------------------------
// Marked arrows and the localization to composable part sequences.

// An arrow phi : g0 -> g1 of the slice with a marked nondegenerate interval
// [i, j] in its source.
struct MarkedArrow {
  OverOneMap arrow;
  int i = 0;
  int j = 1;

  MarkedArrow() = default;
  MarkedArrow(OverOneMap arrow, int i, int j);

  bool operator==(const MarkedArrow&) const = default;
  auto operator<=>(const MarkedArrow&) const = default;
};

// A morphism of marked arrows: e0 forward on sources, e1 backward on targets,
// commuting over [1]; e0 must carry the marked interval of the source around
// the marked interval of the destination.
struct MarkedArrowMorphism {
  MarkedArrow src, dst;
  OverOneMap e0;  // src source -> dst source
  OverOneMap e1;  // dst target -> src target

  MarkedArrowMorphism() = default;
  MarkedArrowMorphism(MarkedArrow src, MarkedArrow dst, OverOneMap e0,
                      OverOneMap e1);

  bool operator==(const MarkedArrowMorphism&) const = default;
};

MarkedArrowMorphism identity_marked(const MarkedArrow& x);
MarkedArrowMorphism compose_marked(const MarkedArrowMorphism& a,
                                   const MarkedArrowMorphism& b);

// True when e0 restricts to a bijection between the marked intervals and e1
// restricts to a bijection between their images.  These are exactly the
// morphisms the localization collapses.
bool is_window_bijective(const MarkedArrowMorphism& m);

// A nonempty consecutively-composable sequence of slice objects.
struct PartSequence {
  std::vector<OverOneObject> parts;

  PartSequence() = default;
  explicit PartSequence(std::vector<OverOneObject> parts);

  int count() const { return static_cast<int>(parts.size()); }
  int total() const;
  std::vector<int> offsets() const;  // count()+1 glued window offsets
  OverOneObject concatenation() const;

  bool operator==(const PartSequence&) const = default;
  auto operator<=>(const PartSequence&) const = default;
};

// A morphism of part sequences src -> dst: a block map theta on part indices
// (dst parts to src parts) and a map g on concatenations (dst to src) over
// [1], sending each dst part window into the src window of its theta-block.
struct PartSequenceMorphism {
  PartSequence src, dst;
  MonotoneMap theta;  // [dst.count()-1] -> [src.count()-1]
  OverOneMap g;       // concat(dst) -> concat(src)

  PartSequenceMorphism() = default;
  PartSequenceMorphism(PartSequence src, PartSequence dst, MonotoneMap theta,
                       OverOneMap g);

  bool operator==(const PartSequenceMorphism&) const = default;
};

PartSequenceMorphism identity_parts(const PartSequence& x);
PartSequenceMorphism compose_parts(const PartSequenceMorphism& a,
                                   const PartSequenceMorphism& b);

// The localization functor: reads off the target parts between consecutive
// values of the arrow across the marked interval.
PartSequence localize(const MarkedArrow& x);
PartSequenceMorphism localize(const MarkedArrowMorphism& m);

// The initial object of the strict localization fiber over N, with the unit
// extension of the target dictated by the support of the concatenation
// (constant 0: unit appended; surjective: none; constant 1: unit prepended).
MarkedArrow initial_marked_arrow(const PartSequence& N);

// Every marked arrow with source and target of size <= size_cap that
// localizes exactly to N.  Deterministic order.
std::vector<MarkedArrow> enumerate_localization_fiber(const PartSequence& N,
                                                      int size_cap);

// All morphisms of marked arrows from src to dst.
std::vector<MarkedArrowMorphism> enumerate_marked_morphisms(
    const MarkedArrow& src, const MarkedArrow& dst);

// Number of window-bijective morphisms src -> dst, computed without
// materializing candidates.  Requires the mark of src to cover its whole
// source (as it does for initial_marked_arrow results); the forward component
// is then completely determined and the count factors over the free flanks of
// the backward component.
long long count_window_bijective_morphisms(const MarkedArrow& src,
                                           const MarkedArrow& dst);

// ---------------------------------------------------------------------------
// Enumeration helpers (all deterministic, lexicographic).

std::vector<MonotoneMap> enumerate_monotone_maps(int n, int m);
std::vector<OverOneMap> enumerate_over_one_maps(const OverOneObject& src,
                                                const OverOneObject& dst);
std::vector<OverOneObject> enumerate_over_one_objects(int max_n,
                                                      IndexShapeKind shape);

std::string to_string(const MonotoneMap& f);
std::string to_string(const OverOneObject& x);
std::string to_string(const OverOneMap& f);
std::string to_string(const PartSequence& n);

}  // namespace twosegal
