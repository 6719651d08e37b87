#include "twosegal/delta.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace twosegal {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// All nondecreasing integer sequences of the given length with entries in
// [lo, hi], in lexicographic order.
std::vector<std::vector<int>> nondecreasing_sequences(int length, int lo,
                                                      int hi) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<size_t>(length));
  auto rec = [&](auto&& self, int pos, int floor) -> void {
    if (pos == length) {
      out.push_back(cur);
      return;
    }
    for (int v = floor; v <= hi; ++v) {
      cur[static_cast<size_t>(pos)] = v;
      self(self, pos + 1, v);
    }
  };
  if (length > 0 && lo > hi) return out;
  rec(rec, 0, lo);
  return out;
}

OverOneObject point_object(int value) {
  return OverOneObject(0, value == 1 ? 0 : 1);
}

}  // namespace

MonotoneMap::MonotoneMap(std::vector<int> vals, int dst_size)
    : values(std::move(vals)), dst(dst_size) {
  require(!values.empty(), "a monotone map needs at least one value");
  require(dst >= 0, "a monotone map target must be a finite ordinal");
  int prev = 0;
  for (int v : values) {
    require(v >= prev && v <= dst,
            "monotone map values must be nondecreasing and within the target");
    prev = v;
  }
}

MonotoneMap identity_map(int n) {
  require(n >= 0, "ordinal size must be nonnegative");
  std::vector<int> vals(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) vals[static_cast<size_t>(i)] = i;
  return MonotoneMap(std::move(vals), n);
}

MonotoneMap coface_map(int n, int i) {
  require(n >= 0 && i >= 0 && i <= n + 1, "coface index out of range");
  std::vector<int> vals(static_cast<size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) vals[static_cast<size_t>(j)] = j < i ? j : j + 1;
  return MonotoneMap(std::move(vals), n + 1);
}

MonotoneMap codegeneracy_map(int n, int i) {
  require(n >= 0 && i >= 0 && i <= n, "codegeneracy index out of range");
  std::vector<int> vals(static_cast<size_t>(n) + 2);
  for (int j = 0; j <= n + 1; ++j)
    vals[static_cast<size_t>(j)] = j <= i ? j : j - 1;
  return MonotoneMap(std::move(vals), n);
}

MonotoneMap compose_monotone(const MonotoneMap& f, const MonotoneMap& g) {
  require(f.dst == g.src(), "composition needs matching middle ordinal");
  std::vector<int> vals;
  vals.reserve(f.values.size());
  for (int v : f.values) vals.push_back(g(v));
  return MonotoneMap(std::move(vals), g.dst);
}

bool is_active(const MonotoneMap& f) {
  return f.values.front() == 0 && f.values.back() == f.dst;
}

bool is_inert(const MonotoneMap& f) {
  for (size_t i = 0; i + 1 < f.values.size(); ++i)
    if (f.values[i + 1] != f.values[i] + 1) return false;
  return true;
}

std::pair<MonotoneMap, MonotoneMap> active_inert_factorize(
    const MonotoneMap& f) {
  int base = f.values.front();
  int top = f.values.back();
  std::vector<int> act;
  act.reserve(f.values.size());
  for (int v : f.values) act.push_back(v - base);
  std::vector<int> in;
  in.reserve(static_cast<size_t>(top - base) + 1);
  for (int v = base; v <= top; ++v) in.push_back(v);
  return {MonotoneMap(std::move(act), top - base),
          MonotoneMap(std::move(in), f.dst)};
}

MonotoneMap reverse_map(const MonotoneMap& f) {
  int n = f.src();
  std::vector<int> vals(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) vals[static_cast<size_t>(i)] = f.dst - f(n - i);
  return MonotoneMap(std::move(vals), f.dst);
}

int edgewise_object(int n) {
  require(n >= 0, "ordinal size must be nonnegative");
  return 2 * n + 1;
}

MonotoneMap edgewise_map(const MonotoneMap& f) {
  int n = f.src();
  int m = f.dst;
  std::vector<int> vals(static_cast<size_t>(2 * n) + 2);
  for (int i = 0; i <= n; ++i) {
    vals[static_cast<size_t>(i)] = f(i);
    vals[static_cast<size_t>(2 * n + 1 - i)] = 2 * m + 1 - f(i);
  }
  return MonotoneMap(std::move(vals), 2 * m + 1);
}

MonotoneMap edgewise_first_inclusion(int n) {
  require(n >= 0, "ordinal size must be nonnegative");
  std::vector<int> vals(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) vals[static_cast<size_t>(i)] = i;
  return MonotoneMap(std::move(vals), 2 * n + 1);
}

MonotoneMap edgewise_second_inclusion(int n) {
  require(n >= 0, "ordinal size must be nonnegative");
  std::vector<int> vals(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) vals[static_cast<size_t>(i)] = n + 1 + i;
  return MonotoneMap(std::move(vals), 2 * n + 1);
}

MonotoneMap join_point_left(const MonotoneMap& f) {
  std::vector<int> vals(f.values.size() + 1);
  vals[0] = 0;
  for (size_t i = 0; i < f.values.size(); ++i) vals[i + 1] = 1 + f.values[i];
  return MonotoneMap(std::move(vals), f.dst + 1);
}

MonotoneMap join_point_right(const MonotoneMap& f) {
  std::vector<int> vals = f.values;
  vals.push_back(f.dst + 1);
  return MonotoneMap(std::move(vals), f.dst + 1);
}

MonotoneMap inner_interstices(const MonotoneMap& f) {
  require(is_active(f), "interstice transpose is defined for active maps");
  int n = f.src();
  int m = f.dst;
  require(n >= 1 && m >= 1, "interstice transpose needs nonempty interiors");
  std::vector<int> vals(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j) {
    int k = 0;
    for (int c = 0; c <= n; ++c)
      if (f(c) <= j) k = c;
    vals[static_cast<size_t>(j)] = k;
  }
  return MonotoneMap(std::move(vals), n - 1);
}

OverOneObject::OverOneObject(int n_, int t_) : n(n_), t(t_) {
  require(n >= 0, "ordinal size must be nonnegative");
  require(t >= 0 && t <= n + 1, "threshold out of range");
}

bool object_in_shape(const OverOneObject& x, IndexShapeKind shape) {
  switch (shape) {
    case IndexShapeKind::Simplex:
      return x.all_zero();
    case IndexShapeKind::OverOne:
      return true;
    case IndexShapeKind::OverOneLeq:
      return x.in_leq();
    case IndexShapeKind::OverOneGeq:
      return x.in_geq();
  }
  return false;
}

OverOneObject restrict_object(const OverOneObject& f, int a, int b) {
  require(0 <= a && a <= b && b <= f.n, "restriction interval out of range");
  int t = std::clamp(f.t - a, 0, b - a + 1);
  return OverOneObject(b - a, t);
}

OverOneObject restrict_two(const OverOneObject& f, int i, int j) {
  require(0 <= i && i < j && j <= f.n, "restriction pair out of range");
  int t = f.value(i) == 1 ? 0 : (f.value(j) == 1 ? 1 : 2);
  return OverOneObject(1, t);
}

OverOneObject restrict_complement(const OverOneObject& f, int i, int j) {
  require(0 <= i && i < j && j <= f.n, "restriction pair out of range");
  int t = f.t <= i ? f.t : (f.t <= j ? i + 1 : f.t - (j - i - 1));
  return OverOneObject(f.n - (j - i - 1), t);
}

bool composable(const OverOneObject& g, const OverOneObject& f) {
  return (g.t <= g.n) == (f.t == 0);
}

OverOneObject star_concatenate(const OverOneObject& g, const OverOneObject& f) {
  require(composable(g, f),
          "concatenation needs the glue point to carry one value");
  return OverOneObject(g.n + f.n, g.t <= g.n ? g.t : g.n + f.t);
}

OverOneMap::OverOneMap(OverOneObject src_, OverOneObject dst_, MonotoneMap map_)
    : src(src_), dst(dst_), map(std::move(map_)) {
  require(map.src() == src.n && map.dst == dst.n,
          "map endpoints must match the slice objects");
  for (int i = 0; i <= src.n; ++i)
    require(dst.value(map(i)) == src.value(i),
            "map must commute with the maps to the interval");
}

OverOneMap identity_over_one(const OverOneObject& x) {
  return OverOneMap(x, x, identity_map(x.n));
}

OverOneMap compose_over_one(const OverOneMap& f, const OverOneMap& g) {
  require(f.dst == g.src, "composition needs matching middle object");
  return OverOneMap(f.src, g.dst, compose_monotone(f.map, g.map));
}

bool is_active(const OverOneMap& f) { return is_active(f.map); }

bool is_inert(const OverOneMap& f) { return is_inert(f.map); }

std::pair<OverOneMap, OverOneMap> active_inert_factorize(const OverOneMap& f) {
  auto [act, in] = active_inert_factorize(f.map);
  OverOneObject mid =
      restrict_object(f.dst, f.map.values.front(), f.map.values.back());
  return {OverOneMap(f.src, mid, act), OverOneMap(mid, f.dst, in)};
}

OverOneMap lift_all_zero(const MonotoneMap& f) {
  return OverOneMap(OverOneObject(f.src(), f.src() + 1),
                    OverOneObject(f.dst, f.dst + 1), f);
}

OverOneMap star_maps(const OverOneMap& a, const OverOneMap& b) {
  require(composable(a.src, b.src) && composable(a.dst, b.dst),
          "concatenation needs composable sources and targets");
  require(a.map.values.back() == a.dst.n,
          "left factor must reach the glue point of its target");
  require(b.map.values.front() == 0,
          "right factor must start at the glue point of its target");
  int n1 = a.src.n;
  int m1 = a.dst.n;
  std::vector<int> vals(static_cast<size_t>(n1 + b.src.n) + 1);
  for (int i = 0; i <= n1; ++i) vals[static_cast<size_t>(i)] = a.map(i);
  for (int i = 1; i <= b.src.n; ++i)
    vals[static_cast<size_t>(n1 + i)] = m1 + b.map(i);
  return OverOneMap(star_concatenate(a.src, b.src),
                    star_concatenate(a.dst, b.dst),
                    MonotoneMap(std::move(vals), m1 + b.dst.n));
}

OverOneDecomposition decompose_over_one(const OverOneMap& f) {
  int n = f.src.n;
  OverOneDecomposition d;
  d.left_flank = restrict_object(f.dst, 0, f.map(0));
  d.right_flank = restrict_object(f.dst, f.map(n), f.dst.n);
  for (int k = 1; k <= n; ++k) {
    int len = f.map(k) - f.map(k - 1);
    d.unit_parts.emplace_back(restrict_object(f.src, k - 1, k),
                              restrict_object(f.dst, f.map(k - 1), f.map(k)),
                              MonotoneMap({0, len}, len));
  }
  return d;
}

OverOneMap reassemble(const OverOneDecomposition& d) {
  if (d.unit_parts.empty()) {
    int v = d.left_flank.value(d.left_flank.n);
    require(v == d.right_flank.value(0),
            "flanks must agree at the source point");
    OverOneObject src = point_object(v);
    OverOneObject dst = star_concatenate(d.left_flank, d.right_flank);
    return OverOneMap(src, dst, MonotoneMap({d.left_flank.n}, dst.n));
  }
  OverOneObject src = d.unit_parts.front().src;
  OverOneObject tgt = d.unit_parts.front().dst;
  std::vector<int> vals{d.left_flank.n,
                        d.left_flank.n + d.unit_parts.front().dst.n};
  require(src.n == 1 && is_active(d.unit_parts.front()),
          "unit parts must be active maps on unit intervals");
  for (size_t k = 1; k < d.unit_parts.size(); ++k) {
    const OverOneMap& part = d.unit_parts[k];
    require(part.src.n == 1 && is_active(part),
            "unit parts must be active maps on unit intervals");
    src = star_concatenate(src, part.src);
    tgt = star_concatenate(tgt, part.dst);
    vals.push_back(vals.back() + part.dst.n);
  }
  OverOneObject dst = star_concatenate(
      star_concatenate(d.left_flank, tgt), d.right_flank);
  return OverOneMap(src, dst, MonotoneMap(std::move(vals), dst.n));
}

IdentityExtensionSquare pushout_active_inert(const OverOneMap& inert,
                                             const OverOneMap& active) {
  require(is_inert(inert) && is_active(active),
          "pushout takes an inert and an active map");
  require(inert.src == active.src, "pushout legs must share their source");
  int c = inert.map.values.front();
  OverOneObject a = restrict_object(inert.dst, 0, c);
  OverOneObject b =
      restrict_object(inert.dst, c + inert.src.n, inert.dst.n);
  OverOneMap bottom = star_maps(
      star_maps(identity_over_one(a), active), identity_over_one(b));
  std::vector<int> rvals(static_cast<size_t>(active.dst.n) + 1);
  for (int i = 0; i <= active.dst.n; ++i) rvals[static_cast<size_t>(i)] = c + i;
  OverOneMap right(active.dst, bottom.dst,
                   MonotoneMap(std::move(rvals), bottom.dst.n));
  return IdentityExtensionSquare{active, bottom, inert, right};
}

std::vector<IdentityExtensionSquare> enumerate_identity_extension_squares(
    IndexShapeKind shape, int bound) {
  require(bound >= 0, "enumeration bound must be nonnegative");
  std::vector<IdentityExtensionSquare> out;
  for (int w = 1; w <= bound; ++w)
    for (int t0 = 0; t0 <= w + 1; ++t0) {
      OverOneObject g0(w, t0);
      if (!object_in_shape(g0, shape)) continue;
      for (int m = 0; m <= bound; ++m)
        for (int t1 = 0; t1 <= m + 1; ++t1) {
          OverOneObject g1(m, t1);
          if (!object_in_shape(g1, shape)) continue;
          for (const OverOneMap& f1 : enumerate_over_one_maps(g0, g1)) {
            if (!is_active(f1)) continue;
            for (int p = 0; p + std::max(w, m) <= bound; ++p)
              for (int ta = 0; ta <= p + 1; ++ta) {
                OverOneObject a(p, ta);
                if (!composable(a, g0)) continue;
                for (int q = 0; p + std::max(w, m) + q <= bound; ++q)
                  for (int tb = 0; tb <= q + 1; ++tb) {
                    OverOneObject b(q, tb);
                    if (!composable(g0, b)) continue;
                    OverOneObject h0 =
                        star_concatenate(star_concatenate(a, g0), b);
                    OverOneObject h1 =
                        star_concatenate(star_concatenate(a, g1), b);
                    if (!object_in_shape(h0, shape) ||
                        !object_in_shape(h1, shape))
                      continue;
                    std::vector<int> ivals(static_cast<size_t>(w) + 1);
                    for (int i = 0; i <= w; ++i)
                      ivals[static_cast<size_t>(i)] = p + i;
                    OverOneMap inert(g0, h0, MonotoneMap(ivals, h0.n));
                    out.push_back(pushout_active_inert(inert, f1));
                  }
              }
          }
        }
    }
  return out;
}

IdentityExtensionSquare polygonal_square(const OverOneObject& f, int i, int j) {
  require(0 <= i && i < j && j <= f.n, "polygonal pair out of range");
  OverOneObject g0 = restrict_two(f, i, j);
  OverOneObject g1 = restrict_object(f, i, j);
  OverOneObject h0 = restrict_complement(f, i, j);
  OverOneMap top(g0, g1, MonotoneMap({0, j - i}, j - i));
  OverOneMap left(g0, h0, MonotoneMap({i, i + 1}, h0.n));
  return pushout_active_inert(left, top);
}

MarkedArrow::MarkedArrow(OverOneMap arrow_, int i_, int j_)
    : arrow(std::move(arrow_)), i(i_), j(j_) {
  require(0 <= i && i < j && j <= arrow.src.n,
          "marked interval must be nondegenerate and in range");
}

MarkedArrowMorphism::MarkedArrowMorphism(MarkedArrow src_, MarkedArrow dst_,
                                         OverOneMap e0_, OverOneMap e1_)
    : src(std::move(src_)),
      dst(std::move(dst_)),
      e0(std::move(e0_)),
      e1(std::move(e1_)) {
  require(e0.src == src.arrow.src && e0.dst == dst.arrow.src,
          "forward component must map marked sources");
  require(e1.src == dst.arrow.dst && e1.dst == src.arrow.dst,
          "backward component must map marked targets");
  for (int x = 0; x <= src.arrow.src.n; ++x)
    require(e1.map(dst.arrow.map(e0.map(x))) == src.arrow.map(x),
            "components must commute with the marked arrows");
  require(e0.map(src.i) <= dst.i && dst.j <= e0.map(src.j),
          "forward component must carry the mark around the target mark");
}

MarkedArrowMorphism identity_marked(const MarkedArrow& x) {
  return MarkedArrowMorphism(x, x, identity_over_one(x.arrow.src),
                             identity_over_one(x.arrow.dst));
}

MarkedArrowMorphism compose_marked(const MarkedArrowMorphism& a,
                                   const MarkedArrowMorphism& b) {
  require(a.dst == b.src, "composition needs matching middle marked arrow");
  return MarkedArrowMorphism(a.src, b.dst, compose_over_one(a.e0, b.e0),
                             compose_over_one(b.e1, a.e1));
}

bool is_window_bijective(const MarkedArrowMorphism& m) {
  if (m.src.j - m.src.i != m.dst.j - m.dst.i) return false;
  for (int r = 0; r <= m.src.j - m.src.i; ++r)
    if (m.e0.map(m.src.i + r) != m.dst.i + r) return false;
  const MonotoneMap& g = m.src.arrow.map;
  const MonotoneMap& gd = m.dst.arrow.map;
  int lo_src = g(m.src.i), hi_src = g(m.src.j);
  int lo_dst = gd(m.dst.i), hi_dst = gd(m.dst.j);
  if (hi_src - lo_src != hi_dst - lo_dst) return false;
  for (int r = 0; r <= hi_dst - lo_dst; ++r)
    if (m.e1.map(lo_dst + r) != lo_src + r) return false;
  return true;
}

PartSequence::PartSequence(std::vector<OverOneObject> parts_)
    : parts(std::move(parts_)) {
  require(!parts.empty(), "a part sequence must be nonempty");
  for (size_t k = 0; k + 1 < parts.size(); ++k)
    require(composable(parts[k], parts[k + 1]),
            "consecutive parts must be composable");
}

int PartSequence::total() const {
  int s = 0;
  for (const OverOneObject& p : parts) s += p.n;
  return s;
}

std::vector<int> PartSequence::offsets() const {
  std::vector<int> off{0};
  for (const OverOneObject& p : parts) off.push_back(off.back() + p.n);
  return off;
}

OverOneObject PartSequence::concatenation() const {
  OverOneObject c = parts.front();
  for (size_t k = 1; k < parts.size(); ++k) c = star_concatenate(c, parts[k]);
  return c;
}

PartSequenceMorphism::PartSequenceMorphism(PartSequence src_, PartSequence dst_,
                                           MonotoneMap theta_, OverOneMap g_)
    : src(std::move(src_)),
      dst(std::move(dst_)),
      theta(std::move(theta_)),
      g(std::move(g_)) {
  require(theta.src() == dst.count() - 1 && theta.dst == src.count() - 1,
          "block map must send target parts to source parts");
  require(g.src == dst.concatenation() && g.dst == src.concatenation(),
          "underlying map must send the target concatenation to the source");
  std::vector<int> offA = src.offsets();
  std::vector<int> offB = dst.offsets();
  for (int jb = 0; jb < dst.count(); ++jb) {
    int tb = theta(jb);
    for (int x = offB[static_cast<size_t>(jb)];
         x <= offB[static_cast<size_t>(jb) + 1]; ++x)
      require(g.map(x) >= offA[static_cast<size_t>(tb)] &&
                  g.map(x) <= offA[static_cast<size_t>(tb) + 1],
              "each target part must land in its assigned source part");
  }
}

PartSequenceMorphism identity_parts(const PartSequence& x) {
  return PartSequenceMorphism(x, x, identity_map(x.count() - 1),
                              identity_over_one(x.concatenation()));
}

PartSequenceMorphism compose_parts(const PartSequenceMorphism& a,
                                   const PartSequenceMorphism& b) {
  require(a.dst == b.src, "composition needs matching middle part sequence");
  return PartSequenceMorphism(a.src, b.dst, compose_monotone(b.theta, a.theta),
                              compose_over_one(b.g, a.g));
}

PartSequence localize(const MarkedArrow& x) {
  std::vector<OverOneObject> parts;
  for (int p = x.i; p < x.j; ++p)
    parts.push_back(
        restrict_object(x.arrow.dst, x.arrow.map(p), x.arrow.map(p + 1)));
  return PartSequence(std::move(parts));
}

PartSequenceMorphism localize(const MarkedArrowMorphism& m) {
  PartSequence nsrc = localize(m.src);
  PartSequence ndst = localize(m.dst);
  std::vector<int> tvals;
  for (int r = 0; r < m.dst.j - m.dst.i; ++r) {
    int k = m.src.i;
    for (int c = m.src.i; c < m.src.j; ++c)
      if (m.e0.map(c) <= m.dst.i + r) k = c;
    tvals.push_back(k - m.src.i);
  }
  MonotoneMap theta(std::move(tvals), nsrc.count() - 1);
  const MonotoneMap& g = m.src.arrow.map;
  const MonotoneMap& gd = m.dst.arrow.map;
  int lo_src = g(m.src.i), lo_dst = gd(m.dst.i);
  std::vector<int> gvals;
  for (int x = lo_dst; x <= gd(m.dst.j); ++x)
    gvals.push_back(m.e1.map(x) - lo_src);
  OverOneMap gmap(ndst.concatenation(), nsrc.concatenation(),
                  MonotoneMap(std::move(gvals), g(m.src.j) - lo_src));
  return PartSequenceMorphism(std::move(nsrc), std::move(ndst),
                              std::move(theta), std::move(gmap));
}

MarkedArrow initial_marked_arrow(const PartSequence& N) {
  int k = N.count();
  int M = N.total();
  std::vector<int> offs = N.offsets();
  OverOneObject conc = N.concatenation();
  std::vector<int> fvals(offs.begin(), offs.end());
  OverOneObject target;
  if (conc.all_zero()) {
    target = OverOneObject(M + 1, M + 1);
  } else if (conc.all_one()) {
    target = OverOneObject(M + 1, 1);
    for (int& v : fvals) ++v;
  } else {
    target = OverOneObject(M, conc.t);
  }
  int t = k + 1;
  for (int s = 0; s <= k; ++s)
    if (target.value(fvals[static_cast<size_t>(s)]) == 1) {
      t = s;
      break;
    }
  OverOneObject source(k, t);
  return MarkedArrow(
      OverOneMap(source, target, MonotoneMap(std::move(fvals), target.n)), 0,
      k);
}

std::vector<MarkedArrow> enumerate_localization_fiber(const PartSequence& N,
                                                      int size_cap) {
  int k = N.count();
  int M = N.total();
  std::vector<int> offs = N.offsets();
  OverOneObject conc = N.concatenation();
  std::vector<MarkedArrow> out;
  for (int n = k; n <= size_cap; ++n)
    for (int i = 0; i + k <= n; ++i)
      for (int l = M; l <= size_cap; ++l)
        for (int w = 0; w + M <= l; ++w)
          for (const std::vector<int>& left :
               nondecreasing_sequences(i, 0, w))
            for (const std::vector<int>& right :
                 nondecreasing_sequences(n - i - k, w + M, l)) {
              std::vector<int> fvals;
              fvals.reserve(static_cast<size_t>(n) + 1);
              fvals.insert(fvals.end(), left.begin(), left.end());
              for (int o : offs) fvals.push_back(w + o);
              fvals.insert(fvals.end(), right.begin(), right.end());
              int tl_lo, tl_hi;
              if (conc.all_zero()) {
                tl_lo = w + M + 1;
                tl_hi = l + 1;
              } else if (conc.all_one()) {
                tl_lo = 0;
                tl_hi = w;
              } else {
                tl_lo = tl_hi = w + conc.t;
              }
              for (int tl = tl_lo; tl <= tl_hi; ++tl) {
                OverOneObject target(l, tl);
                int t = n + 1;
                for (int s = 0; s <= n; ++s)
                  if (target.value(fvals[static_cast<size_t>(s)]) == 1) {
                    t = s;
                    break;
                  }
                out.emplace_back(
                    OverOneMap(OverOneObject(n, t), target,
                               MonotoneMap(fvals, l)),
                    i, i + k);
              }
            }
  return out;
}

std::vector<MarkedArrowMorphism> enumerate_marked_morphisms(
    const MarkedArrow& src, const MarkedArrow& dst) {
  std::vector<MarkedArrowMorphism> out;
  const std::vector<OverOneMap> backs =
      enumerate_over_one_maps(dst.arrow.dst, src.arrow.dst);
  for (const OverOneMap& e0 :
       enumerate_over_one_maps(src.arrow.src, dst.arrow.src)) {
    if (!(e0.map(src.i) <= dst.i && dst.j <= e0.map(src.j))) continue;
    for (const OverOneMap& e1 : backs) {
      bool ok = true;
      for (int x = 0; x <= src.arrow.src.n && ok; ++x)
        ok = e1.map(dst.arrow.map(e0.map(x))) == src.arrow.map(x);
      if (ok) out.emplace_back(src, dst, e0, e1);
    }
  }
  return out;
}

namespace {

// Monotone fillings of cnt consecutive source positions starting at first,
// with values drawn from [lo, hi] of dst and respecting value classes.
long long count_slice_fillings(const OverOneObject& src,
                               const OverOneObject& dst, int first, int cnt,
                               int lo, int hi) {
  auto rec = [&](auto&& self, int pos, int floor) -> long long {
    if (pos == first + cnt) return 1;
    int from = floor;
    int to = hi;
    if (src.value(pos) == 1)
      from = std::max(from, dst.t);
    else
      to = std::min(to, dst.t - 1);
    long long total = 0;
    for (int v = from; v <= to; ++v) total += self(self, pos + 1, v);
    return total;
  };
  return rec(rec, first, lo);
}

}  // namespace

long long count_window_bijective_morphisms(const MarkedArrow& src,
                                           const MarkedArrow& dst) {
  require(src.i == 0 && src.j == src.arrow.src.n,
          "fast count needs the source mark to cover the whole source");
  int w = src.j - src.i;
  if (dst.j - dst.i != w) return 0;
  const MonotoneMap& g = src.arrow.map;
  const MonotoneMap& gd = dst.arrow.map;
  int wi = gd(dst.j) - gd(dst.i);
  if (g(src.j) - g(src.i) != wi) return 0;
  // the forward component is forced to the window shift; it must be a slice
  // map and must commute with the arrows
  for (int r = 0; r <= w; ++r) {
    if (dst.arrow.src.value(dst.i + r) != src.arrow.src.value(r)) return 0;
    if (gd(dst.i + r) - gd(dst.i) + g(0) != g(r)) return 0;
  }
  // the backward component is forced on the image window
  int base_src = g(0);
  int base_dst = gd(dst.i);
  for (int r = 0; r <= wi; ++r)
    if (src.arrow.dst.value(base_src + r) !=
        dst.arrow.dst.value(base_dst + r))
      return 0;
  long long left = count_slice_fillings(dst.arrow.dst, src.arrow.dst, 0,
                                        base_dst, 0, base_src);
  long long right = count_slice_fillings(
      dst.arrow.dst, src.arrow.dst, base_dst + wi + 1,
      dst.arrow.dst.n - base_dst - wi, base_src + wi, src.arrow.dst.n);
  return left * right;
}

std::vector<MonotoneMap> enumerate_monotone_maps(int n, int m) {
  require(n >= 0 && m >= 0, "ordinal sizes must be nonnegative");
  std::vector<MonotoneMap> out;
  for (std::vector<int>& vals : nondecreasing_sequences(n + 1, 0, m))
    out.emplace_back(std::move(vals), m);
  return out;
}

std::vector<OverOneMap> enumerate_over_one_maps(const OverOneObject& src,
                                                const OverOneObject& dst) {
  std::vector<OverOneMap> out;
  std::vector<int> vals(static_cast<size_t>(src.n) + 1);
  auto rec = [&](auto&& self, int pos, int floor) -> void {
    if (pos > src.n) {
      out.emplace_back(src, dst, MonotoneMap(vals, dst.n));
      return;
    }
    int lo = std::max(floor, src.value(pos) == 1 ? dst.t : 0);
    int hi = src.value(pos) == 1 ? dst.n : dst.t - 1;
    for (int v = lo; v <= hi; ++v) {
      vals[static_cast<size_t>(pos)] = v;
      self(self, pos + 1, v);
    }
  };
  rec(rec, 0, 0);
  return out;
}

std::vector<OverOneObject> enumerate_over_one_objects(int max_n,
                                                      IndexShapeKind shape) {
  std::vector<OverOneObject> out;
  for (int n = 0; n <= max_n; ++n)
    for (int t = 0; t <= n + 1; ++t) {
      OverOneObject x(n, t);
      if (object_in_shape(x, shape)) out.push_back(x);
    }
  return out;
}

std::string to_string(const MonotoneMap& f) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < f.values.size(); ++i) {
    if (i) os << ',';
    os << f.values[i];
  }
  os << ")->[" << f.dst << ']';
  return os.str();
}

std::string to_string(const OverOneObject& x) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i <= x.n; ++i) {
    if (i) os << ',';
    os << x.value(i);
  }
  os << ')';
  return os.str();
}

std::string to_string(const OverOneMap& f) {
  return to_string(f.src) + "-" + to_string(f.map) + "->" + to_string(f.dst);
}

std::string to_string(const PartSequence& n) {
  std::string s;
  for (int k = 0; k < n.count(); ++k) {
    if (k) s += '|';
    s += to_string(n.parts[static_cast<size_t>(k)]);
  }
  return s;
}

}  // namespace twosegal
