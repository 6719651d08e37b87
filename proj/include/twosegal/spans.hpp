#pragma once

// Spans of simplicial groupoids and the two leg conditions that make a span
// multiplicative: the left leg must be active equifibered (pullbacks against
// the long-edge restriction), the right leg relative Segal (pullbacks against
// the spine).  Spans compose by levelwise iso-comma pullback, and both
// conditions are stable under that composition.
//
// The spine target of the relative Segal square is materialized as an
// explicit iterated iso-comma groupoid over the inner vertex levels; nothing
// is identified implicitly.  Over the terminal object the condition
// collapses to the plain Segal (spine) condition, which pins the reading:
// edge products alone would reject every 1-Segal object with more than one
// vertex.

#include <vector>

#include "twosegal/segal.hpp"
#include "twosegal/simplicial.hpp"

namespace twosegal {

// A span X <- M -> Y; both legs start at the shared apex M.
struct SimplicialSpan {
  SimplicialMorphism left, right;
};

ValidationReport validate_span(const SimplicialSpan& sp);

SimplicialSpan identity_span(const TruncatedSimplicialGroupoid& X);

// For every level object f on [n] with n <= depth, the naturality square of
// the long-edge restriction
//
//     A_f ------------> B_f
//      |                 |
//      v                 v
//     A_{f|{0,n}} -----> B_{f|{0,n}}
//
// must be a homotopy pullback.  The n = 0 instance uses the degenerate pair
// {0,0}, so the endpoints must be truncated at depth >= max(depth, 1).
// Failures carry condition "active-equifibered".
CheckReport is_active_equifibered(const SimplicialMorphism& m, int depth);

// For every level object f on [n] with n <= depth, the square against the
// spine (edge restrictions glued over the inner vertex levels)
//
//     A_f ------------> B_f
//      |                 |
//      v                 v
//     Sp(A)_f ---------> Sp(B)_f
//
// must be a homotopy pullback.  The n = 0 instance is the identity square
// and always passes.  Over a terminal target this is exactly the 1-Segal
// condition.  Failures carry condition "relative-segal".
CheckReport is_relative_segal(const SimplicialMorphism& m, int depth);

// Levelwise composite: first `first`, then `second`.
SimplicialMorphism compose_morphisms(const SimplicialMorphism& first,
                                     const SimplicialMorphism& second);

// Levelwise iso-comma pullback of u and v along their shared target; the
// structure maps of the apex act componentwise on (a, b, gamma) triples.
struct SimplicialPullbackData {
  TruncatedSimplicialGroupoid apex;
  SimplicialMorphism to_left;   // apex -> u.source
  SimplicialMorphism to_right;  // apex -> v.source
};
SimplicialPullbackData pullback_simplicial(const SimplicialMorphism& u,
                                           const SimplicialMorphism& v);

// Composite span over the middle foot: the apex is the levelwise iso-comma
// pullback of a.right against b.left, the legs the projections followed by
// the outer legs.  Requires a.right.target == b.left.target.
SimplicialSpan compose_spans(const SimplicialSpan& a, const SimplicialSpan& b);

// Conjunction: both feet and the apex are 2-Segal (the relative family
// conditions when the shape is a slice shape), the left leg is active
// equifibered, the right leg is relative Segal.  Failures are tagged
// "left-foot-2-segal", "apex-2-segal", "right-foot-2-segal",
// "active-equifibered", "relative-segal".
CheckReport is_2_segal_span(const SimplicialSpan& sp, int depth);

// For a morphism p : Y -> X, an active equifibered f : X -> Z and a relative
// Segal g : W -> X, forms the composite f . p : Y -> Z and the projection
// Y x_X W -> W of the levelwise pullback of p along g.  When p is a relative
// 2-Segal morphism and the leg conditions hold, both outputs are again
// relative 2-Segal morphisms.
struct RelativeCompositionData {
  SimplicialMorphism composite;
  SimplicialMorphism projection;
};
RelativeCompositionData rel2seg_compose_and_pullback(
    const SimplicialMorphism& p, const SimplicialMorphism& f,
    const SimplicialMorphism& g);

}  // namespace twosegal
