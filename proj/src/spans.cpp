#include "twosegal/spans.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace twosegal {
namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void require_depth(int depth, int truncation) {
  require(0 <= depth && depth <= truncation,
          "insufficient truncation: checking depth " + std::to_string(depth) +
              " needs levels up to " + std::to_string(depth) + ", have " +
              std::to_string(truncation));
}

CheckReport report_from(std::vector<CheckFailure> failures,
                        std::string range) {
  std::sort(failures.begin(), failures.end(),
            [](const CheckFailure& a, const CheckFailure& b) {
              return std::tie(a.n, a.i, a.j, a.f, a.condition) <
                     std::tie(b.n, b.i, b.j, b.f, b.condition);
            });
  CheckReport report;
  report.failures = std::move(failures);
  report.passed = report.failures.empty();
  report.checked_range = std::move(range);
  return report;
}

// Slice maps into a level object f: the edge {i, i+1}, the single vertex
// {k}, and the long edge {0, n}.
OverOneMap edge_into(const OverOneObject& f, int i) {
  return OverOneMap(restrict_two(f, i, i + 1), f,
                    MonotoneMap({i, i + 1}, f.n));
}

OverOneMap long_edge_into(const OverOneObject& f) {
  // At n = 0 the pair {0,n} degenerates to the doubled vertex.
  OverOneObject source = f.n == 0 ? OverOneObject(1, f.t == 0 ? 0 : 2)
                                  : restrict_two(f, 0, f.n);
  return OverOneMap(source, f, MonotoneMap({0, f.n}, f.n));
}

// Endpoint inclusions of an edge object e on [1].
OverOneMap first_vertex(const OverOneObject& e) {
  return OverOneMap(restrict_object(e, 0, 0), e, MonotoneMap({0}, 1));
}

OverOneMap last_vertex(const OverOneObject& e) {
  return OverOneMap(restrict_object(e, 1, 1), e, MonotoneMap({1}, 1));
}

// Active equifibered at a single level object: the comparison of A_f into
// the iso-comma pullback of B_f -> B_{f|{0,n}} <- A_{f|{0,n}}.
EquivalenceReport long_edge_square_comparison(const SimplicialMorphism& m,
                                              const OverOneObject& f) {
  OverOneMap edge = long_edge_into(f);
  IsoCommaData pullback = iso_comma_pullback(structure_map(m.target, edge),
                                             m.components.at(edge.src));
  GroupoidFunctor into = induced_to_iso_comma(pullback, m.components.at(f),
                                              structure_map(m.source, edge));
  return is_equivalence(into);
}

// Relative Segal at a single level object f on [n], n >= 1.  Both spines
// Sp(A)_f and Sp(B)_f are built in lockstep as iterated iso-commas of the
// edge levels glued over the inner vertex levels, together with the functor
// between them induced by m; the gluing isomorphisms transport along the
// vertex components of m.  The comparison is then A_f into the iso-comma of
// B_f -> Sp(B)_f <- Sp(A)_f.
EquivalenceReport spine_square_comparison(const SimplicialMorphism& m,
                                          const OverOneObject& f) {
  const TruncatedSimplicialGroupoid& A = m.source;
  const TruncatedSimplicialGroupoid& B = m.target;
  OverOneMap start = edge_into(f, 0);
  GroupoidFunctor src_from = structure_map(A, start);
  GroupoidFunctor tgt_from = structure_map(B, start);
  GroupoidFunctor between = m.components.at(start.src);
  GroupoidFunctor src_last = structure_map(A, last_vertex(start.src));
  GroupoidFunctor tgt_last = structure_map(B, last_vertex(start.src));
  for (int k = 1; k < f.n; ++k) {
    OverOneMap edge = edge_into(f, k);
    const GroupoidFunctor& on_vertex =
        m.components.at(restrict_object(f, k, k));
    IsoCommaData glue_src =
        iso_comma_pullback(src_last, structure_map(A, first_vertex(edge.src)));
    IsoCommaData glue_tgt =
        iso_comma_pullback(tgt_last, structure_map(B, first_vertex(edge.src)));
    std::vector<int> components(static_cast<size_t>(glue_src.apex.objects()));
    for (int q = 0; q < glue_src.apex.objects(); ++q) {
      components[static_cast<size_t>(q)] =
          on_vertex.at_morphism(glue_src.gamma[static_cast<size_t>(q)]);
    }
    GroupoidFunctor next_between = induced_to_iso_comma(
        glue_tgt, compose_functors(glue_src.to_left, between),
        compose_functors(glue_src.to_right, m.components.at(edge.src)),
        components);
    src_from = induced_to_iso_comma(glue_src, src_from, structure_map(A, edge));
    tgt_from = induced_to_iso_comma(glue_tgt, tgt_from, structure_map(B, edge));
    between = std::move(next_between);
    src_last =
        compose_functors(glue_src.to_right, structure_map(A, last_vertex(edge.src)));
    tgt_last =
        compose_functors(glue_tgt.to_right, structure_map(B, last_vertex(edge.src)));
  }
  return pullback_comparison(tgt_from, between, m.components.at(f), src_from);
}

}  // namespace

ValidationReport validate_span(const SimplicialSpan& sp) {
  ValidationReport report;
  report.valid = true;
  auto merge = [&report](const ValidationReport& part, const std::string& leg) {
    for (const std::string& violation : part.violations) {
      report.valid = false;
      report.violations.push_back(leg + ": " + violation);
    }
  };
  merge(validate_morphism(sp.left), "left");
  merge(validate_morphism(sp.right), "right");
  if (!(sp.left.source == sp.right.source)) {
    report.valid = false;
    report.violations.push_back("the legs do not share their apex");
  }
  return report;
}

SimplicialSpan identity_span(const TruncatedSimplicialGroupoid& X) {
  return {identity_morphism(X), identity_morphism(X)};
}

CheckReport is_active_equifibered(const SimplicialMorphism& m, int depth) {
  require(m.source.shape == m.target.shape,
          "morphism endpoints must share their shape");
  // The n = 0 instance is the degenerate pair {0,0}, whose source lives on
  // [1]; every shape is truncated at depth >= 1, so that level exists.
  require_depth(depth, m.source.shape.truncation);
  std::vector<CheckFailure> failures;
  for (const OverOneObject& f :
       shape_levels({m.source.shape.kind, std::max(depth, 1)})) {
    if (f.n > depth) continue;
    EquivalenceReport rep = long_edge_square_comparison(m, f);
    if (!rep) {
      CheckFailure fail;
      fail.condition = "active-equifibered";
      fail.n = f.n;
      fail.i = 0;
      fail.j = f.n;
      if (m.source.shape.kind != IndexShapeKind::Simplex) fail.f = to_string(f);
      fail.witness = rep.witness;
      failures.push_back(std::move(fail));
    }
  }
  return report_from(std::move(failures),
                     "long-edge squares for levels with 0 <= n <= " +
                         std::to_string(depth));
}

CheckReport is_relative_segal(const SimplicialMorphism& m, int depth) {
  require(m.source.shape == m.target.shape,
          "morphism endpoints must share their shape");
  require_depth(depth, m.source.shape.truncation);
  std::vector<CheckFailure> failures;
  for (const OverOneObject& f :
       shape_levels({m.source.shape.kind, std::max(depth, 1)})) {
    if (f.n == 0 || f.n > depth) continue;  // the vertex square is trivial
    EquivalenceReport rep = spine_square_comparison(m, f);
    if (!rep) {
      CheckFailure fail;
      fail.condition = "relative-segal";
      fail.n = f.n;
      if (m.source.shape.kind != IndexShapeKind::Simplex) fail.f = to_string(f);
      fail.witness = rep.witness;
      failures.push_back(std::move(fail));
    }
  }
  return report_from(std::move(failures),
                     "spine squares for levels with 0 <= n <= " +
                         std::to_string(depth) +
                         " (the n = 0 square is trivial)");
}

SimplicialMorphism compose_morphisms(const SimplicialMorphism& first,
                                     const SimplicialMorphism& second) {
  require(first.target == second.source,
          "composable morphisms must share the middle object");
  SimplicialMorphism out;
  out.source = first.source;
  out.target = second.target;
  for (const auto& [level, component] : first.components) {
    out.components[level] =
        compose_functors(component, second.components.at(level));
  }
  return out;
}

SimplicialPullbackData pullback_simplicial(const SimplicialMorphism& u,
                                           const SimplicialMorphism& v) {
  require(u.target == v.target, "pullback needs a shared target");
  require(u.source.shape == u.target.shape &&
              v.source.shape == v.target.shape,
          "morphism endpoints must share their shape");
  std::map<OverOneObject, IsoCommaData> pulled;
  for (const auto& [level, component] : u.components) {
    pulled.emplace(level,
                   iso_comma_pullback(component, v.components.at(level)));
  }
  SimplicialPullbackData out;
  out.apex = make_simplicial(
      u.source.shape,
      [&pulled](const OverOneObject& x) { return pulled.at(x).apex; },
      [&](const OverOneMap& g) {
        return induced_between_iso_commas(
            pulled.at(g.dst), pulled.at(g.src), u.source.generator(g),
            v.source.generator(g), u.target.generator(g));
      });
  out.to_left.source = out.apex;
  out.to_left.target = u.source;
  out.to_right.source = out.apex;
  out.to_right.target = v.source;
  for (const auto& [level, data] : pulled) {
    out.to_left.components[level] = data.to_left;
    out.to_right.components[level] = data.to_right;
  }
  return out;
}

SimplicialSpan compose_spans(const SimplicialSpan& a, const SimplicialSpan& b) {
  require(a.left.source == a.right.source && b.left.source == b.right.source,
          "span legs must share their apex");
  require(a.right.target == b.left.target,
          "the middle feet of the spans must agree");
  SimplicialPullbackData pulled = pullback_simplicial(a.right, b.left);
  return {compose_morphisms(pulled.to_left, a.left),
          compose_morphisms(pulled.to_right, b.right)};
}

CheckReport is_2_segal_span(const SimplicialSpan& sp, int depth) {
  require(sp.left.source == sp.right.source,
          "span legs must share their apex");
  bool simplex = sp.left.source.shape.kind == IndexShapeKind::Simplex;
  auto segal_part = [&](const TruncatedSimplicialGroupoid& X) {
    return simplex ? is_2_segal(X, depth)
                   : is_relative_2_segal_family(X, depth);
  };
  std::vector<CheckFailure> failures;
  auto collect = [&failures](CheckReport rep, const std::string& tag) {
    for (CheckFailure& fail : rep.failures) {
      if (!tag.empty()) fail.condition = tag;
      failures.push_back(std::move(fail));
    }
  };
  collect(segal_part(sp.left.target), "left-foot-2-segal");
  collect(segal_part(sp.left.source), "apex-2-segal");
  collect(segal_part(sp.right.target), "right-foot-2-segal");
  collect(is_active_equifibered(sp.left, depth), "");
  collect(is_relative_segal(sp.right, depth), "");
  return report_from(std::move(failures),
                     "feet, apex, and both leg squares to depth " +
                         std::to_string(depth));
}

RelativeCompositionData rel2seg_compose_and_pullback(
    const SimplicialMorphism& p, const SimplicialMorphism& f,
    const SimplicialMorphism& g) {
  require(p.target == f.source, "the composite needs p to land in f's source");
  require(g.target == p.target, "the pullback needs g to land in p's target");
  RelativeCompositionData out;
  out.composite = compose_morphisms(p, f);
  out.projection = pullback_simplicial(p, g).to_right;
  return out;
}

}  // namespace twosegal
