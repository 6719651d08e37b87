#include "twosegal/simplicial.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace twosegal {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool is_level(const IndexShape& shape, const OverOneObject& x) {
  if (x.n < 0 || x.n > shape.truncation) return false;
  switch (shape.kind) {
    case IndexShapeKind::Simplex:
      return x.all_zero();
    case IndexShapeKind::OverOne:
      return true;
    case IndexShapeKind::OverOneLeq:
      return x.in_leq() && !(x.n == 0 && x.t == 0);
    case IndexShapeKind::OverOneGeq:
      return x.in_geq() && !(x.n == 0 && x.t == 1);
  }
  return false;
}

OverOneObject all_zero_level(int n) { return OverOneObject(n, n + 1); }

// Source object of the coface d^i into x (drop position i).
OverOneObject coface_source(const OverOneObject& x, int i) {
  return OverOneObject(x.n - 1, x.t - (i < x.t ? 1 : 0));
}

// Source object of the codegeneracy s^i into x (duplicate position i).
OverOneObject codegeneracy_source(const OverOneObject& x, int i) {
  return OverOneObject(x.n + 1, x.t + (i < x.t ? 1 : 0));
}

}  // namespace

std::vector<OverOneObject> shape_levels(const IndexShape& shape) {
  require(shape.truncation >= 1, "shape truncation must be at least 1");
  std::vector<OverOneObject> out;
  for (int n = 0; n <= shape.truncation; ++n) {
    for (int t = 0; t <= n + 1; ++t) {
      OverOneObject x(n, t);
      if (is_level(shape, x)) out.push_back(x);
    }
  }
  return out;
}

std::vector<OverOneMap> shape_generators(const IndexShape& shape) {
  std::vector<OverOneMap> out;
  for (const OverOneObject& x : shape_levels(shape)) {
    if (x.n >= 1) {
      for (int i = 0; i <= x.n; ++i) {
        OverOneObject src = coface_source(x, i);
        if (is_level(shape, src)) {
          out.emplace_back(src, x, coface_map(x.n - 1, i));
        }
      }
    }
    for (int i = 0; i <= x.n; ++i) {
      OverOneObject src = codegeneracy_source(x, i);
      if (is_level(shape, src)) {
        out.emplace_back(src, x, codegeneracy_map(x.n, i));
      }
    }
  }
  return out;
}

const FinGroupoid& TruncatedSimplicialGroupoid::level(
    const OverOneObject& x) const {
  auto it = levels.find(x);
  require(it != levels.end(), "no level stored at " + to_string(x));
  return it->second;
}

const FinGroupoid& TruncatedSimplicialGroupoid::level(int n) const {
  return level(all_zero_level(n));
}

const GroupoidFunctor& TruncatedSimplicialGroupoid::generator(
    const OverOneMap& f) const {
  auto it = maps.find(f);
  require(it != maps.end(), "no generator stored for " + to_string(f));
  return it->second;
}

const GroupoidFunctor& TruncatedSimplicialGroupoid::face(int n, int i) const {
  return generator(OverOneMap(all_zero_level(n - 1), all_zero_level(n),
                              coface_map(n - 1, i)));
}

const GroupoidFunctor& TruncatedSimplicialGroupoid::degeneracy(int n,
                                                               int i) const {
  return generator(OverOneMap(all_zero_level(n + 1), all_zero_level(n),
                              codegeneracy_map(n, i)));
}

TruncatedSimplicialGroupoid make_simplicial(
    const IndexShape& shape,
    const std::function<FinGroupoid(const OverOneObject&)>& level_of,
    const std::function<GroupoidFunctor(const OverOneMap&)>& map_of) {
  TruncatedSimplicialGroupoid X;
  X.shape = shape;
  for (const OverOneObject& x : shape_levels(shape)) X.levels[x] = level_of(x);
  for (const OverOneMap& f : shape_generators(shape)) X.maps[f] = map_of(f);
  return X;
}

GroupoidFunctor structure_map(const TruncatedSimplicialGroupoid& X,
                              const OverOneMap& f) {
  require(is_level(X.shape, f.src) && is_level(X.shape, f.dst),
          "structure map endpoints must be levels of the shape: " +
              to_string(f));
  // Canonical word: codegeneracies peeled off the source, then cofaces
  // peeled off the target, least index first.
  std::vector<OverOneMap> word;
  OverOneMap cur = f;
  while (true) {
    int dup = -1;
    for (int i = 0; i < cur.src.n; ++i) {
      if (cur.map(i) == cur.map(i + 1)) {
        dup = i;
        break;
      }
    }
    if (dup < 0) break;
    OverOneObject mid(cur.src.n - 1, cur.src.t - (dup + 1 < cur.src.t ? 1 : 0));
    word.emplace_back(cur.src, mid, codegeneracy_map(cur.src.n - 1, dup));
    std::vector<int> vals;
    for (int k = 0; k <= cur.src.n; ++k) {
      if (k != dup + 1) vals.push_back(cur.map(k));
    }
    cur = OverOneMap(mid, cur.dst, MonotoneMap(std::move(vals), cur.dst.n));
  }
  std::vector<OverOneMap> cofaces;
  while (cur.src.n < cur.dst.n) {
    int miss = -1;
    for (int j = 0, k = 0; j <= cur.dst.n; ++j) {
      if (k <= cur.src.n && cur.map(k) == j) {
        ++k;
      } else {
        miss = j;
        break;
      }
    }
    OverOneObject mid(cur.dst.n - 1, cur.dst.t - (miss < cur.dst.t ? 1 : 0));
    cofaces.emplace_back(mid, cur.dst, coface_map(cur.dst.n - 1, miss));
    std::vector<int> vals;
    for (int k = 0; k <= cur.src.n; ++k) {
      vals.push_back(cur.map(k) > miss ? cur.map(k) - 1 : cur.map(k));
    }
    cur = OverOneMap(cur.src, mid, MonotoneMap(std::move(vals), mid.n));
  }
  word.insert(word.end(), cofaces.rbegin(), cofaces.rend());

  GroupoidFunctor out = identity_functor(X.level(f.dst));
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    out = compose_functors(out, X.generator(*it));
  }
  return out;
}

GroupoidFunctor structure_map(const TruncatedSimplicialGroupoid& X,
                              const MonotoneMap& f) {
  return structure_map(X, lift_all_zero(f));
}

ValidationReport validate(const TruncatedSimplicialGroupoid& X) {
  ValidationReport report;
  report.valid = true;
  auto flag = [&report](const std::string& msg) {
    report.valid = false;
    report.violations.push_back(msg);
  };

  std::vector<OverOneObject> expected = shape_levels(X.shape);
  std::set<OverOneObject> expected_set(expected.begin(), expected.end());
  for (const OverOneObject& x : expected) {
    if (!X.levels.count(x)) flag("missing level " + to_string(x));
  }
  for (const auto& [x, g] : X.levels) {
    if (!expected_set.count(x)) flag("unexpected level " + to_string(x));
  }
  std::vector<OverOneMap> gens = shape_generators(X.shape);
  std::set<OverOneMap> gen_set(gens.begin(), gens.end());
  for (const OverOneMap& f : gens) {
    if (!X.maps.count(f)) flag("missing generator " + to_string(f));
  }
  for (const auto& [f, functor] : X.maps) {
    if (!gen_set.count(f)) flag("unexpected generator " + to_string(f));
  }
  if (!report.valid) return report;

  for (const OverOneMap& f : gens) {
    const GroupoidFunctor& functor = X.generator(f);
    if (!(functor.source == X.level(f.dst)) ||
        !(functor.target == X.level(f.src))) {
      flag("generator " + to_string(f) + " has wrong endpoints");
      continue;
    }
    ValidationReport fr = validate_functor(functor);
    if (!fr.valid) {
      flag("generator " + to_string(f) +
           " is not a functor: " + fr.violations.front());
    }
  }
  if (!report.valid) return report;

  for (const OverOneMap& u : gens) {
    for (const OverOneMap& v : gens) {
      if (!(u.dst == v.src)) continue;
      OverOneMap w = compose_over_one(u, v);
      GroupoidFunctor lhs = structure_map(X, w);
      GroupoidFunctor rhs = compose_functors(X.generator(v), X.generator(u));
      if (!(lhs == rhs)) {
        flag("simplicial identity fails for " + to_string(u) + " then " +
             to_string(v));
      }
    }
  }
  return report;
}

TruncatedSimplicialGroupoid truncate(const TruncatedSimplicialGroupoid& X,
                                     int new_truncation) {
  require(new_truncation >= 1 && new_truncation <= X.shape.truncation,
          "truncation must shrink toward 1");
  TruncatedSimplicialGroupoid out;
  out.shape = IndexShape{X.shape.kind, new_truncation};
  for (const auto& [x, g] : X.levels) {
    if (x.n <= new_truncation) out.levels[x] = g;
  }
  for (const auto& [f, functor] : X.maps) {
    if (f.src.n <= new_truncation && f.dst.n <= new_truncation) {
      out.maps[f] = functor;
    }
  }
  return out;
}

ValidationReport validate_morphism(const SimplicialMorphism& m) {
  ValidationReport report;
  report.valid = true;
  auto flag = [&report](const std::string& msg) {
    report.valid = false;
    report.violations.push_back(msg);
  };

  if (!(m.source.shape == m.target.shape)) {
    flag("source and target shapes differ");
    return report;
  }
  for (const OverOneObject& x : shape_levels(m.source.shape)) {
    auto it = m.components.find(x);
    if (it == m.components.end()) {
      flag("missing component at " + to_string(x));
      continue;
    }
    if (!(it->second.source == m.source.level(x)) ||
        !(it->second.target == m.target.level(x))) {
      flag("component at " + to_string(x) + " has wrong endpoints");
    }
  }
  if (!report.valid) return report;

  for (const OverOneMap& f : shape_generators(m.source.shape)) {
    GroupoidFunctor lhs =
        compose_functors(m.source.generator(f), m.components.at(f.src));
    GroupoidFunctor rhs =
        compose_functors(m.components.at(f.dst), m.target.generator(f));
    if (!(lhs == rhs)) {
      flag("component square fails on " + to_string(f));
    }
  }
  return report;
}

SimplicialMorphism identity_morphism(const TruncatedSimplicialGroupoid& X) {
  SimplicialMorphism m;
  m.source = X;
  m.target = X;
  for (const auto& [x, g] : X.levels) {
    m.components[x] = identity_functor(g);
  }
  return m;
}

SimplicialMorphism truncate(const SimplicialMorphism& m, int new_truncation) {
  SimplicialMorphism out;
  out.source = truncate(m.source, new_truncation);
  out.target = truncate(m.target, new_truncation);
  for (const auto& [x, c] : m.components) {
    if (x.n <= new_truncation) out.components[x] = c;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reindexings.

namespace {

TruncatedSimplicialGroupoid reindex_simplicial(
    const IndexShape& out_shape, const TruncatedSimplicialGroupoid& base,
    const std::function<OverOneObject(const OverOneObject&)>& on_object,
    const std::function<OverOneMap(const OverOneMap&)>& on_map) {
  return make_simplicial(
      out_shape,
      [&](const OverOneObject& x) { return base.level(on_object(x)); },
      [&](const OverOneMap& f) { return structure_map(base, on_map(f)); });
}

OverOneObject flip_object(const OverOneObject& x) {
  return OverOneObject(x.n, x.n + 1 - x.t);
}

}  // namespace

TruncatedSimplicialGroupoid twisted_arrow(const TruncatedSimplicialGroupoid& X,
                                          int truncation) {
  require(X.shape.kind == IndexShapeKind::Simplex,
          "twisted arrow needs a simplex-shaped base");
  require(
      X.shape.truncation >= 2 * truncation + 1,
      "twisted arrow at depth " + std::to_string(truncation) +
          " needs the base truncated at depth " +
          std::to_string(2 * truncation + 1) + "; have " +
          std::to_string(X.shape.truncation));
  return reindex_simplicial(
      IndexShape{IndexShapeKind::Simplex, truncation}, X,
      [](const OverOneObject& x) { return all_zero_level(edgewise_object(x.n)); },
      [](const OverOneMap& f) { return lift_all_zero(edgewise_map(f.map)); });
}

TruncatedSimplicialGroupoid initial_path_space(
    const TruncatedSimplicialGroupoid& X) {
  require(X.shape.kind == IndexShapeKind::Simplex,
          "path spaces need a simplex-shaped base");
  require(X.shape.truncation >= 2,
          "path space needs the base truncated at depth >= 2");
  return reindex_simplicial(
      IndexShape{IndexShapeKind::Simplex, X.shape.truncation - 1}, X,
      [](const OverOneObject& x) { return all_zero_level(x.n + 1); },
      [](const OverOneMap& f) { return lift_all_zero(join_point_left(f.map)); });
}

TruncatedSimplicialGroupoid final_path_space(
    const TruncatedSimplicialGroupoid& X) {
  require(X.shape.kind == IndexShapeKind::Simplex,
          "path spaces need a simplex-shaped base");
  require(X.shape.truncation >= 2,
          "path space needs the base truncated at depth >= 2");
  return reindex_simplicial(
      IndexShape{IndexShapeKind::Simplex, X.shape.truncation - 1}, X,
      [](const OverOneObject& x) { return all_zero_level(x.n + 1); },
      [](const OverOneMap& f) { return lift_all_zero(join_point_right(f.map)); });
}

TruncatedSimplicialGroupoid reverse_simplicial(
    const TruncatedSimplicialGroupoid& X) {
  if (X.shape.kind == IndexShapeKind::Simplex) {
    return reindex_simplicial(
        X.shape, X, [](const OverOneObject& x) { return x; },
        [](const OverOneMap& f) { return lift_all_zero(reverse_map(f.map)); });
  }
  IndexShapeKind kind = X.shape.kind;
  if (kind == IndexShapeKind::OverOneLeq) kind = IndexShapeKind::OverOneGeq;
  else if (kind == IndexShapeKind::OverOneGeq) kind = IndexShapeKind::OverOneLeq;
  return reindex_simplicial(
      IndexShape{kind, X.shape.truncation}, X, flip_object,
      [](const OverOneMap& f) {
        return OverOneMap(flip_object(f.src), flip_object(f.dst),
                          reverse_map(f.map));
      });
}

TruncatedSimplicialGroupoid forget_to_over_one(
    const TruncatedSimplicialGroupoid& X) {
  require(X.shape.kind == IndexShapeKind::Simplex,
          "the forgetful reindexing starts from a simplex-shaped object");
  return reindex_simplicial(
      IndexShape{IndexShapeKind::OverOne, X.shape.truncation}, X,
      [](const OverOneObject& x) { return all_zero_level(x.n); },
      [](const OverOneMap& f) { return lift_all_zero(f.map); });
}

TruncatedSimplicialGroupoid restrict_to_shape(
    const TruncatedSimplicialGroupoid& X, IndexShapeKind kind) {
  require(X.shape.kind == IndexShapeKind::OverOne,
          "shape restriction starts from a full slice-shaped object");
  require(kind == IndexShapeKind::OverOneLeq ||
              kind == IndexShapeKind::OverOneGeq,
          "restriction targets the left or right relative shape");
  return reindex_simplicial(
      IndexShape{kind, X.shape.truncation}, X,
      [](const OverOneObject& x) { return x; },
      [](const OverOneMap& f) { return f; });
}

// ---------------------------------------------------------------------------
// Levelwise product.

SimplicialProductData product_simplicial(const TruncatedSimplicialGroupoid& a,
                                         const TruncatedSimplicialGroupoid& b) {
  require(a.shape == b.shape, "product factors must share their shape");
  std::map<OverOneObject, ProductData> parts;
  for (const OverOneObject& x : shape_levels(a.shape)) {
    parts.emplace(x, product_groupoid(a.level(x), b.level(x)));
  }
  SimplicialProductData out;
  out.product = make_simplicial(
      a.shape, [&](const OverOneObject& x) { return parts.at(x).groupoid; },
      [&](const OverOneMap& f) {
        const ProductData& at_dst = parts.at(f.dst);
        return pair_into_product(
            parts.at(f.src),
            compose_functors(at_dst.to_left, a.generator(f)),
            compose_functors(at_dst.to_right, b.generator(f)));
      });
  out.to_left.source = out.product;
  out.to_left.target = a;
  out.to_right.source = out.product;
  out.to_right.target = b;
  for (const OverOneObject& x : shape_levels(a.shape)) {
    out.to_left.components[x] = parts.at(x).to_left;
    out.to_right.components[x] = parts.at(x).to_right;
  }
  return out;
}

// ---------------------------------------------------------------------------
// The left-relative conversion.

SimplicialMorphism theta_L_convert(const TruncatedSimplicialGroupoid& X) {
  require(X.shape.kind == IndexShapeKind::OverOneLeq,
          "conversion starts from a left relative object");
  require(X.shape.truncation >= 2,
          "conversion needs the base truncated at depth >= 2");
  IndexShape out_shape{IndexShapeKind::Simplex, X.shape.truncation - 1};

  SimplicialMorphism m;
  m.source = reindex_simplicial(
      out_shape, X,
      [](const OverOneObject& x) { return OverOneObject(x.n + 1, x.n + 1); },
      [](const OverOneMap& f) {
        return OverOneMap(OverOneObject(f.src.n + 1, f.src.n + 1),
                          OverOneObject(f.dst.n + 1, f.dst.n + 1),
                          join_point_right(f.map));
      });
  m.target = reindex_simplicial(
      out_shape, X,
      [](const OverOneObject& x) { return x; },
      [](const OverOneMap& f) { return lift_all_zero(f.map); });
  for (const OverOneObject& x : shape_levels(out_shape)) {
    m.components[x] = structure_map(
        X, OverOneMap(x, OverOneObject(x.n + 1, x.n + 1),
                      coface_map(x.n, x.n + 1)));
  }
  return m;
}

TruncatedSimplicialGroupoid theta_L_invert(const SimplicialMorphism& m) {
  require(m.source.shape == m.target.shape &&
              m.source.shape.kind == IndexShapeKind::Simplex,
          "reassembly starts from a morphism of simplex-shaped objects");
  IndexShape out_shape{IndexShapeKind::OverOneLeq, m.source.shape.truncation};
  return make_simplicial(
      out_shape,
      [&](const OverOneObject& x) {
        // One-extra-1 levels carry the morphism's source, all-zero levels
        // its target.
        if (x.t == x.n) return m.source.level(x.n - 1);
        return m.target.level(x.n);
      },
      [&](const OverOneMap& f) -> GroupoidFunctor {
        if (f.src.all_zero() && f.dst.all_zero()) {
          return m.target.generator(
              OverOneMap(all_zero_level(f.src.n), all_zero_level(f.dst.n),
                         f.map));
        }
        if (f.src.t == f.src.n && f.dst.t == f.dst.n) {
          // Both one-extra-1: strip the terminal point the join added.
          std::vector<int> vals;
          for (int k = 0; k < f.src.n; ++k) vals.push_back(f.map(k));
          return m.source.generator(
              OverOneMap(all_zero_level(f.src.n - 1),
                         all_zero_level(f.dst.n - 1),
                         MonotoneMap(std::move(vals), f.dst.n - 1)));
        }
        // The cross coface d^{n+1} carries the component.
        require(f.src.all_zero() && f.dst.t == f.dst.n &&
                    f.map == coface_map(f.src.n, f.src.n + 1),
                "unexpected cross generator " + to_string(f));
        return m.components.at(all_zero_level(f.src.n));
      });
}

// ---------------------------------------------------------------------------
// Nerves of finite categories.

int FiniteCategory::compose(int f, int g) const {
  auto it = comp.find(pair_key(f, g));
  require(it != comp.end(), "missing composite in category table");
  return it->second;
}

FiniteCategory FiniteCategory::from_parts(
    int object_count, std::vector<int> src, std::vector<int> dst,
    std::vector<int> identity, const std::vector<std::array<int, 3>>& triples) {
  FiniteCategory c;
  c.object_count = object_count;
  c.src = std::move(src);
  c.dst = std::move(dst);
  c.identity = std::move(identity);
  require(c.src.size() == c.dst.size(), "arrow table sizes differ");
  require(static_cast<int>(c.identity.size()) == object_count,
          "one identity per object");
  int arrows = c.arrow_count();
  for (int x : c.identity) {
    require(0 <= x && x < arrows, "identity arrow out of range");
  }
  for (int i = 0; i < arrows; ++i) {
    require(0 <= c.src[static_cast<size_t>(i)] &&
                c.src[static_cast<size_t>(i)] < object_count &&
                0 <= c.dst[static_cast<size_t>(i)] &&
                c.dst[static_cast<size_t>(i)] < object_count,
            "arrow endpoints out of range");
  }
  for (const auto& t : triples) {
    require(0 <= t[0] && t[0] < arrows && 0 <= t[1] && t[1] < arrows &&
                0 <= t[2] && t[2] < arrows,
            "composition triple out of range");
    require(c.dst[static_cast<size_t>(t[0])] == c.src[static_cast<size_t>(t[1])],
            "composition triple is not composable");
    require(!c.comp.count(pair_key(t[0], t[1])), "duplicate composition triple");
    c.comp[pair_key(t[0], t[1])] = t[2];
  }
  return c;
}

ValidationReport validate(const FiniteCategory& c) {
  ValidationReport report;
  report.valid = true;
  auto flag = [&report](const std::string& msg) {
    report.valid = false;
    report.violations.push_back(msg);
  };
  int arrows = c.arrow_count();
  for (int x = 0; x < c.object_count; ++x) {
    int e = c.identity[static_cast<size_t>(x)];
    if (c.src[static_cast<size_t>(e)] != x || c.dst[static_cast<size_t>(e)] != x) {
      flag("identity of object " + std::to_string(x) + " has wrong endpoints");
    }
  }
  for (int f = 0; f < arrows; ++f) {
    for (int g = 0; g < arrows; ++g) {
      if (c.dst[static_cast<size_t>(f)] != c.src[static_cast<size_t>(g)]) {
        if (c.comp.count(pair_key(f, g))) {
          flag("composite stored for a non-composable pair");
        }
        continue;
      }
      auto it = c.comp.find(pair_key(f, g));
      if (it == c.comp.end()) {
        flag("missing composite for pair (" + std::to_string(f) + ", " +
             std::to_string(g) + ")");
        continue;
      }
      int h = it->second;
      if (c.src[static_cast<size_t>(h)] != c.src[static_cast<size_t>(f)] ||
          c.dst[static_cast<size_t>(h)] != c.dst[static_cast<size_t>(g)]) {
        flag("composite endpoints wrong for pair (" + std::to_string(f) +
             ", " + std::to_string(g) + ")");
      }
    }
  }
  if (!report.valid) return report;
  for (int f = 0; f < arrows; ++f) {
    int ef = c.identity[static_cast<size_t>(c.src[static_cast<size_t>(f)])];
    int fe = c.identity[static_cast<size_t>(c.dst[static_cast<size_t>(f)])];
    if (c.compose(ef, f) != f || c.compose(f, fe) != f) {
      flag("unit law fails at arrow " + std::to_string(f));
    }
  }
  for (int f = 0; f < arrows && report.valid; ++f) {
    for (int g = 0; g < arrows; ++g) {
      if (c.dst[static_cast<size_t>(f)] != c.src[static_cast<size_t>(g)]) continue;
      for (int h = 0; h < arrows; ++h) {
        if (c.dst[static_cast<size_t>(g)] != c.src[static_cast<size_t>(h)]) continue;
        if (c.compose(c.compose(f, g), h) != c.compose(f, c.compose(g, h))) {
          flag("associativity fails on (" + std::to_string(f) + ", " +
               std::to_string(g) + ", " + std::to_string(h) + ")");
        }
      }
    }
  }
  return report;
}

FiniteCategory poset_category(int n,
                              const std::vector<std::pair<int, int>>& covers) {
  require(n >= 1, "poset needs at least one element");
  std::vector<std::vector<bool>> le(static_cast<size_t>(n),
                                    std::vector<bool>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i) le[static_cast<size_t>(i)][static_cast<size_t>(i)] = true;
  for (const auto& [a, b] : covers) {
    require(0 <= a && a < n && 0 <= b && b < n, "cover out of range");
    le[static_cast<size_t>(a)][static_cast<size_t>(b)] = true;
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (le[static_cast<size_t>(i)][static_cast<size_t>(k)] &&
            le[static_cast<size_t>(k)][static_cast<size_t>(j)]) {
          le[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      require(!(le[static_cast<size_t>(i)][static_cast<size_t>(j)] &&
                le[static_cast<size_t>(j)][static_cast<size_t>(i)]),
              "covers generate a cycle");
    }
  }
  FiniteCategory c;
  c.object_count = n;
  std::vector<std::vector<int>> arrow_of(static_cast<size_t>(n),
                                         std::vector<int>(static_cast<size_t>(n), -1));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (le[static_cast<size_t>(a)][static_cast<size_t>(b)]) {
        arrow_of[static_cast<size_t>(a)][static_cast<size_t>(b)] =
            c.arrow_count();
        c.src.push_back(a);
        c.dst.push_back(b);
      }
    }
  }
  for (int x = 0; x < n; ++x) {
    c.identity.push_back(arrow_of[static_cast<size_t>(x)][static_cast<size_t>(x)]);
  }
  for (int f = 0; f < c.arrow_count(); ++f) {
    for (int g = 0; g < c.arrow_count(); ++g) {
      if (c.dst[static_cast<size_t>(f)] != c.src[static_cast<size_t>(g)]) continue;
      c.comp[pair_key(f, g)] =
          arrow_of[static_cast<size_t>(c.src[static_cast<size_t>(f)])]
                  [static_cast<size_t>(c.dst[static_cast<size_t>(g)])];
    }
  }
  return c;
}

FiniteCategory monoid_category(const std::vector<std::vector<int>>& mult,
                               int unit) {
  int m = static_cast<int>(mult.size());
  require(m >= 1 && 0 <= unit && unit < m, "monoid table malformed");
  FiniteCategory c;
  c.object_count = 1;
  c.src.assign(static_cast<size_t>(m), 0);
  c.dst.assign(static_cast<size_t>(m), 0);
  c.identity = {unit};
  for (int f = 0; f < m; ++f) {
    require(static_cast<int>(mult[static_cast<size_t>(f)].size()) == m,
            "monoid table malformed");
    for (int g = 0; g < m; ++g) {
      // mult is in composition order, so "f then g" is g.f.
      c.comp[pair_key(f, g)] = mult[static_cast<size_t>(g)][static_cast<size_t>(f)];
    }
  }
  return c;
}

namespace {

// Composable chains of length matching the level, lexicographic; a length-0
// chain is a single object id.
std::vector<std::vector<int>> nerve_chains(const FiniteCategory& c, int n) {
  std::vector<std::vector<int>> chains;
  if (n == 0) {
    for (int x = 0; x < c.object_count; ++x) chains.push_back({x});
    return chains;
  }
  for (const std::vector<int>& prefix : nerve_chains(c, n - 1)) {
    for (int a = 0; a < c.arrow_count(); ++a) {
      int end = n == 1 ? prefix[0] : c.dst[static_cast<size_t>(prefix.back())];
      if (c.src[static_cast<size_t>(a)] == end) {
        std::vector<int> chain = n == 1 ? std::vector<int>{} : prefix;
        chain.push_back(a);
        chains.push_back(std::move(chain));
      }
    }
  }
  return chains;
}

int nerve_chain_end(const FiniteCategory& c, const std::vector<int>& chain,
                    int n, int vertex) {
  // Object at the given vertex of a length-n chain.
  if (n == 0) return chain[0];
  if (vertex == 0) return c.src[static_cast<size_t>(chain[0])];
  return c.dst[static_cast<size_t>(chain[static_cast<size_t>(vertex) - 1])];
}

}  // namespace

TruncatedSimplicialGroupoid nerve(const FiniteCategory& c, int truncation) {
  ValidationReport cr = validate(c);
  require(cr.valid, "nerve needs a valid category: " +
                        (cr.violations.empty() ? std::string("?")
                                               : cr.violations.front()));
  IndexShape shape{IndexShapeKind::Simplex, truncation};
  std::vector<std::vector<std::vector<int>>> chains;
  std::vector<std::map<std::vector<int>, int>> index;
  for (int n = 0; n <= truncation; ++n) {
    chains.push_back(nerve_chains(c, n));
    index.emplace_back();
    for (size_t i = 0; i < chains.back().size(); ++i) {
      index.back()[chains.back()[i]] = static_cast<int>(i);
    }
  }
  std::vector<FinGroupoid> levels;
  for (int n = 0; n <= truncation; ++n) {
    std::vector<std::string> labels;
    for (const std::vector<int>& chain : chains[static_cast<size_t>(n)]) {
      std::string s = n == 0 ? "o" : "c";
      for (size_t i = 0; i < chain.size(); ++i) {
        if (i) s += ".";
        s += std::to_string(chain[i]);
      }
      labels.push_back(s);
    }
    levels.push_back(
        discrete_groupoid(static_cast<int>(chains[static_cast<size_t>(n)].size()))
            .with_labels(labels));
  }
  return make_simplicial(
      shape, [&](const OverOneObject& x) { return levels[static_cast<size_t>(x.n)]; },
      [&](const OverOneMap& f) {
        // Contravariant: the functor goes from level f.dst.n to level f.src.n.
        int hi = f.dst.n;
        bool is_face = f.src.n < hi;
        int i = -1;
        if (is_face) {
          // Which value is missing.
          for (int j = 0, k = 0; j <= hi; ++j) {
            if (k <= f.src.n && f.map(k) == j) ++k;
            else { i = j; break; }
          }
        } else {
          for (int j = 0; j < f.src.n; ++j) {
            if (f.map(j) == f.map(j + 1)) { i = j; break; }
          }
        }
        std::vector<int> object_map;
        for (const std::vector<int>& chain : chains[static_cast<size_t>(hi)]) {
          std::vector<int> out;
          if (is_face) {
            int n = hi;
            if (n == 1) {
              out = {nerve_chain_end(c, chain, n, i == 0 ? 1 : 0)};
            } else if (i == 0) {
              out.assign(chain.begin() + 1, chain.end());
            } else if (i == n) {
              out.assign(chain.begin(), chain.end() - 1);
            } else {
              out.assign(chain.begin(), chain.end());
              int merged = c.compose(out[static_cast<size_t>(i) - 1],
                                     out[static_cast<size_t>(i)]);
              out.erase(out.begin() + i);
              out[static_cast<size_t>(i) - 1] = merged;
            }
          } else {
            int n = hi;
            int vertex_obj = nerve_chain_end(c, chain, n, i);
            if (n == 0) {
              out = {c.identity[static_cast<size_t>(vertex_obj)]};
            } else {
              out.assign(chain.begin(), chain.end());
              out.insert(out.begin() + i,
                         c.identity[static_cast<size_t>(vertex_obj)]);
            }
          }
          object_map.push_back(index[static_cast<size_t>(f.src.n)].at(out));
        }
        GroupoidFunctor functor;
        functor.source = levels[static_cast<size_t>(hi)];
        functor.target = levels[static_cast<size_t>(f.src.n)];
        functor.object_map = object_map;
        functor.morphism_map = object_map;
        return functor;
      });
}

}  // namespace twosegal
