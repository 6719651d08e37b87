#include "twosegal/groupoid.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace twosegal {

FinGroupoid groupoid_from_data(detail::GroupoidData&& d);

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[b] = a;  // least object index stays the root
  }
};

std::vector<std::vector<int>> out_lists(const FinGroupoid& g) {
  std::vector<std::vector<int>> out(g.objects());
  for (int m = 0; m < g.morphisms(); ++m) out[g.src(m)].push_back(m);
  return out;
}

std::string mor_str(int m) { return std::to_string(m); }

}  // namespace

FinGroupoid groupoid_from_data(detail::GroupoidData&& d) {
  return FinGroupoid(std::make_shared<const detail::GroupoidData>(std::move(d)));
}

FinGroupoid::FinGroupoid() : d_(std::make_shared<const detail::GroupoidData>()) {}

FinGroupoid FinGroupoid::from_parts(int objects, std::vector<int> src,
                                    std::vector<int> dst,
                                    std::vector<int> identity,
                                    std::vector<int> inverse,
                                    const std::vector<std::array<int, 3>>& triples,
                                    std::vector<std::string> labels) {
  require(objects >= 0, "object count must be nonnegative");
  require(src.size() == dst.size(), "src/dst tables differ in length");
  const int m = static_cast<int>(src.size());
  require(static_cast<int>(identity.size()) == objects,
          "identity table must assign one morphism per object");
  require(inverse.size() == src.size(),
          "inverse table must assign one morphism per morphism");
  require(labels.empty() || static_cast<int>(labels.size()) == objects,
          "labels must be empty or one per object");
  for (int i = 0; i < m; ++i) {
    require(src[i] >= 0 && src[i] < objects && dst[i] >= 0 && dst[i] < objects,
            "morphism endpoints out of range");
    require(inverse[i] >= 0 && inverse[i] < m, "inverse index out of range");
  }
  for (int x = 0; x < objects; ++x)
    require(identity[x] >= 0 && identity[x] < m, "identity index out of range");

  detail::GroupoidData d;
  d.objects = objects;
  d.labels = std::move(labels);
  d.src = std::move(src);
  d.dst = std::move(dst);
  d.identity = std::move(identity);
  d.inverse = std::move(inverse);
  d.comp.reserve(triples.size());
  for (const auto& t : triples) {
    require(t[0] >= 0 && t[0] < m && t[1] >= 0 && t[1] < m && t[2] >= 0 && t[2] < m,
            "composition triple index out of range");
    require(d.dst[t[0]] == d.src[t[1]],
            "composition triple keyed by a non-composable pair");
    require(d.comp.emplace(pair_key(t[0], t[1]), t[2]).second,
            "duplicate composition triple");
  }
  return groupoid_from_data(std::move(d));
}

int FinGroupoid::compose(int f, int g) const {
  auto it = d_->comp.find(pair_key(f, g));
  if (it == d_->comp.end())
    throw std::out_of_range("no composite recorded for morphisms " + mor_str(f) +
                            " then " + mor_str(g));
  return it->second;
}

bool FinGroupoid::has_composite(int f, int g) const {
  return d_->comp.find(pair_key(f, g)) != d_->comp.end();
}

const std::string& FinGroupoid::label(int x) const {
  static const std::string empty;
  if (d_->labels.empty()) return empty;
  return d_->labels[x];
}

FinGroupoid FinGroupoid::with_labels(std::vector<std::string> labels) const {
  require(labels.empty() || static_cast<int>(labels.size()) == objects(),
          "labels must be empty or one per object");
  detail::GroupoidData d = *d_;
  d.labels = std::move(labels);
  return groupoid_from_data(std::move(d));
}

std::vector<std::array<int, 3>> FinGroupoid::composition_triples() const {
  std::vector<std::array<int, 3>> out;
  out.reserve(d_->comp.size());
  for (const auto& [key, result] : d_->comp)
    out.push_back({static_cast<int>(key >> 32),
                   static_cast<int>(key & 0xffffffffu), result});
  std::sort(out.begin(), out.end());
  return out;
}

bool FinGroupoid::operator==(const FinGroupoid& other) const {
  if (d_ == other.d_) return true;
  return d_->objects == other.d_->objects && d_->src == other.d_->src &&
         d_->dst == other.d_->dst && d_->identity == other.d_->identity &&
         d_->inverse == other.d_->inverse && d_->comp == other.d_->comp;
}

std::vector<int> hom_set(const FinGroupoid& g, int a, int b) {
  std::vector<int> out;
  for (int m = 0; m < g.morphisms(); ++m)
    if (g.src(m) == a && g.dst(m) == b) out.push_back(m);
  return out;
}

ValidationReport validate(const FinGroupoid& g) {
  ValidationReport report;
  constexpr int kMaxViolations = 64;
  bool truncated = false;
  auto flag = [&](std::string msg) {
    if (static_cast<int>(report.violations.size()) < kMaxViolations) {
      report.violations.push_back(std::move(msg));
    } else {
      truncated = true;
    }
    report.valid = false;
  };

  for (int x = 0; x < g.objects(); ++x) {
    int e = g.identity_of(x);
    if (g.src(e) != x || g.dst(e) != x)
      flag("identity of object " + std::to_string(x) + " has endpoints (" +
           std::to_string(g.src(e)) + ", " + std::to_string(g.dst(e)) + ")");
  }

  auto out = out_lists(g);
  for (int f = 0; f < g.morphisms(); ++f) {
    for (int h : out[g.dst(f)]) {
      if (!g.has_composite(f, h)) {
        flag("missing composite for pair (" + mor_str(f) + ", " + mor_str(h) + ")");
        continue;
      }
      int r = g.compose(f, h);
      if (g.src(r) != g.src(f) || g.dst(r) != g.dst(h))
        flag("composite of (" + mor_str(f) + ", " + mor_str(h) +
             ") has wrong endpoints");
    }
  }

  for (int f = 0; f < g.morphisms(); ++f) {
    int ls = g.identity_of(g.src(f)), rd = g.identity_of(g.dst(f));
    if (g.has_composite(ls, f) && g.compose(ls, f) != f)
      flag("left unit law fails for morphism " + mor_str(f));
    if (g.has_composite(f, rd) && g.compose(f, rd) != f)
      flag("right unit law fails for morphism " + mor_str(f));
  }

  for (int f = 0; f < g.morphisms(); ++f) {
    for (int h : out[g.dst(f)]) {
      if (!g.has_composite(f, h)) continue;
      int fh = g.compose(f, h);
      for (int k : out[g.dst(h)]) {
        if (!g.has_composite(h, k) || !g.has_composite(fh, k)) continue;
        int hk = g.compose(h, k);
        if (!g.has_composite(f, hk)) continue;
        if (g.compose(fh, k) != g.compose(f, hk))
          flag("associativity fails on triple (" + mor_str(f) + ", " + mor_str(h) +
               ", " + mor_str(k) + ")");
      }
    }
  }

  for (int f = 0; f < g.morphisms(); ++f) {
    int v = g.inverse_of(f);
    if (g.src(v) != g.dst(f) || g.dst(v) != g.src(f)) {
      flag("inverse of morphism " + mor_str(f) + " has wrong endpoints");
      continue;
    }
    bool ok = g.has_composite(f, v) && g.has_composite(v, f) &&
              g.compose(f, v) == g.identity_of(g.src(f)) &&
              g.compose(v, f) == g.identity_of(g.dst(f));
    if (!ok) flag("inverse laws fail for morphism " + mor_str(f));
  }

  if (truncated) report.violations.push_back("(further violations suppressed)");
  return report;
}

GroupoidAnalysis analyze(const FinGroupoid& g) {
  GroupoidAnalysis a;
  const int n = g.objects(), m = g.morphisms();
  UnionFind uf(n);
  for (int i = 0; i < m; ++i) uf.unite(g.src(i), g.dst(i));
  a.class_of.assign(n, -1);
  std::vector<int> root_class(n, -1);
  for (int x = 0; x < n; ++x) {
    int r = uf.find(x);
    if (root_class[r] < 0) {
      root_class[r] = static_cast<int>(a.class_rep.size());
      a.class_rep.push_back(x);
    }
    a.class_of[x] = root_class[r];
  }
  a.hom.reserve(m);
  for (int i = 0; i < m; ++i) a.hom[pair_key(g.src(i), g.dst(i))].push_back(i);
  a.aut_order.assign(a.class_rep.size(), 0);
  for (size_t c = 0; c < a.class_rep.size(); ++c) {
    auto it = a.hom.find(pair_key(a.class_rep[c], a.class_rep[c]));
    if (it != a.hom.end()) a.aut_order[c] = static_cast<long long>(it->second.size());
  }
  return a;
}

Rational cardinality(const FinGroupoid& g) {
  auto a = analyze(g);
  Rational total(0);
  for (long long aut : a.aut_order) {
    require(aut > 0, "cardinality needs every object to have an automorphism");
    total += Rational(1, aut);
  }
  return total;
}

FinGroupoid terminal_groupoid() { return discrete_groupoid(1); }

FinGroupoid discrete_groupoid(int count) {
  require(count >= 0, "object count must be nonnegative");
  detail::GroupoidData d;
  d.objects = count;
  for (int i = 0; i < count; ++i) {
    d.src.push_back(i);
    d.dst.push_back(i);
    d.identity.push_back(i);
    d.inverse.push_back(i);
    d.comp.emplace(pair_key(i, i), i);
  }
  return groupoid_from_data(std::move(d));
}

FinGroupoid group_delooping(const std::vector<std::vector<int>>& mult) {
  const int n = static_cast<int>(mult.size());
  require(n >= 1, "a group has at least the unit");
  for (const auto& row : mult) {
    require(static_cast<int>(row.size()) == n, "multiplication table must be square");
    for (int v : row) require(v >= 0 && v < n, "table entry out of range");
  }
  int unit = -1;
  for (int e = 0; e < n && unit < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n; ++x) ok = ok && mult[e][x] == x && mult[x][e] == x;
    if (ok) unit = e;
  }
  require(unit >= 0, "multiplication table has no unit");

  detail::GroupoidData d;
  d.objects = 1;
  d.src.assign(n, 0);
  d.dst.assign(n, 0);
  d.identity.assign(1, unit);
  d.inverse.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (mult[x][y] == unit && mult[y][x] == unit) d.inverse[x] = y;
      // mult is in composition order, so "x then y" is y∘x
      d.comp.emplace(pair_key(x, y), mult[y][x]);
    }
    require(d.inverse[x] >= 0, "element " + std::to_string(x) + " has no inverse");
  }
  return groupoid_from_data(std::move(d));
}

GroupoidAssembler::GroupoidAssembler(int object_count)
    : objects_(object_count), labels_(object_count) {
  require(object_count >= 0, "object count must be nonnegative");
}

void GroupoidAssembler::set_label(int object, std::string label) {
  require(object >= 0 && object < objects_, "object out of range");
  labels_[object] = std::move(label);
}

int GroupoidAssembler::add_arrow(int src, int dst, std::string payload) {
  require(src >= 0 && src < objects_ && dst >= 0 && dst < objects_,
          "arrow endpoints out of range");
  src_.push_back(src);
  dst_.push_back(dst);
  payload_.push_back(std::move(payload));
  return static_cast<int>(src_.size()) - 1;
}

FinGroupoid GroupoidAssembler::assemble(
    const std::function<std::string(const std::string&, const std::string&)>& rule)
    const {
  const int m = static_cast<int>(src_.size());
  std::unordered_map<std::uint64_t, std::unordered_map<std::string, int>> by_hom;
  for (int i = 0; i < m; ++i) {
    auto& bucket = by_hom[pair_key(src_[i], dst_[i])];
    require(bucket.emplace(payload_[i], i).second,
            "duplicate payload within hom(" + std::to_string(src_[i]) + ", " +
                std::to_string(dst_[i]) + ")");
  }
  std::vector<std::vector<int>> out(objects_);
  for (int i = 0; i < m; ++i) out[src_[i]].push_back(i);

  detail::GroupoidData d;
  d.objects = objects_;
  d.src = src_;
  d.dst = dst_;
  bool labeled = false;
  for (const auto& l : labels_) labeled = labeled || !l.empty();
  if (labeled) d.labels = labels_;

  for (int f = 0; f < m; ++f) {
    for (int g : out[dst_[f]]) {
      std::string composite = rule(payload_[f], payload_[g]);
      int found = -1;
      auto bucket = by_hom.find(pair_key(src_[f], dst_[g]));
      if (bucket != by_hom.end()) {
        auto it = bucket->second.find(composite);
        if (it != bucket->second.end()) found = it->second;
      }
      require(found >= 0,
              "composition is not closed over the given arrows: missing composite "
              "of arrows " + mor_str(f) + " then " + mor_str(g));
      d.comp.emplace(pair_key(f, g), found);
    }
  }

  d.identity.assign(objects_, -1);
  for (int x = 0; x < objects_; ++x) {
    for (int e : out[x]) {
      if (dst_[e] != x || d.comp.at(pair_key(e, e)) != e) continue;
      require(d.identity[x] < 0, "two idempotent self-arrows at object " +
                                     std::to_string(x));
      d.identity[x] = e;
    }
    require(d.identity[x] >= 0, "object " + std::to_string(x) +
                                    " has no identity arrow");
  }
  for (int f = 0; f < m; ++f) {
    bool units = d.comp.at(pair_key(d.identity[src_[f]], f)) == f &&
                 d.comp.at(pair_key(f, d.identity[dst_[f]])) == f;
    require(units, "unit laws fail for arrow " + mor_str(f));
  }

  d.inverse.assign(m, -1);
  for (int f = 0; f < m; ++f) {
    for (int g : out[dst_[f]]) {
      if (dst_[g] != src_[f]) continue;
      if (d.comp.at(pair_key(f, g)) == d.identity[src_[f]] &&
          d.comp.at(pair_key(g, f)) == d.identity[dst_[f]]) {
        d.inverse[f] = g;
        break;
      }
    }
    require(d.inverse[f] >= 0, "arrow " + mor_str(f) + " has no inverse");
  }
  return groupoid_from_data(std::move(d));
}

bool GroupoidFunctor::operator==(const GroupoidFunctor& other) const {
  return source == other.source && target == other.target &&
         object_map == other.object_map && morphism_map == other.morphism_map;
}

GroupoidFunctor identity_functor(const FinGroupoid& g) {
  GroupoidFunctor f{g, g, {}, {}};
  f.object_map.resize(g.objects());
  f.morphism_map.resize(g.morphisms());
  for (int x = 0; x < g.objects(); ++x) f.object_map[x] = x;
  for (int m = 0; m < g.morphisms(); ++m) f.morphism_map[m] = m;
  return f;
}

GroupoidFunctor constant_functor(const FinGroupoid& source,
                                 const FinGroupoid& target, int object) {
  require(object >= 0 && object < target.objects(), "object out of range");
  GroupoidFunctor f{source, target, {}, {}};
  f.object_map.assign(source.objects(), object);
  f.morphism_map.assign(source.morphisms(), target.identity_of(object));
  return f;
}

GroupoidFunctor compose_functors(const GroupoidFunctor& f,
                                 const GroupoidFunctor& g) {
  require(f.target == g.source, "functors are not composable");
  GroupoidFunctor out{f.source, g.target, {}, {}};
  out.object_map.resize(f.object_map.size());
  out.morphism_map.resize(f.morphism_map.size());
  for (size_t x = 0; x < f.object_map.size(); ++x)
    out.object_map[x] = g.at_object(f.object_map[x]);
  for (size_t m = 0; m < f.morphism_map.size(); ++m)
    out.morphism_map[m] = g.at_morphism(f.morphism_map[m]);
  return out;
}

ValidationReport validate_functor(const GroupoidFunctor& f) {
  ValidationReport report;
  auto flag = [&](std::string msg) {
    report.valid = false;
    report.violations.push_back(std::move(msg));
  };
  const FinGroupoid& a = f.source;
  const FinGroupoid& b = f.target;
  if (static_cast<int>(f.object_map.size()) != a.objects() ||
      static_cast<int>(f.morphism_map.size()) != a.morphisms()) {
    flag("map tables do not match the source");
    return report;
  }
  for (int x = 0; x < a.objects(); ++x)
    if (f.at_object(x) < 0 || f.at_object(x) >= b.objects()) {
      flag("object image out of range");
      return report;
    }
  for (int m = 0; m < a.morphisms(); ++m)
    if (f.at_morphism(m) < 0 || f.at_morphism(m) >= b.morphisms()) {
      flag("morphism image out of range");
      return report;
    }
  for (int m = 0; m < a.morphisms(); ++m) {
    if (b.src(f.at_morphism(m)) != f.at_object(a.src(m)) ||
        b.dst(f.at_morphism(m)) != f.at_object(a.dst(m)))
      flag("endpoints not preserved at morphism " + mor_str(m));
  }
  for (int x = 0; x < a.objects(); ++x)
    if (f.at_morphism(a.identity_of(x)) != b.identity_of(f.at_object(x)))
      flag("identity not preserved at object " + std::to_string(x));
  for (const auto& t : a.composition_triples()) {
    int bf = f.at_morphism(t[0]), bg = f.at_morphism(t[1]);
    if (!b.has_composite(bf, bg) || b.compose(bf, bg) != f.at_morphism(t[2]))
      flag("composition not preserved on pair (" + mor_str(t[0]) + ", " +
           mor_str(t[1]) + ")");
  }
  return report;
}

EquivalenceReport is_equivalence(const GroupoidFunctor& f) {
  EquivalenceReport r;
  auto fail = [&](std::string msg) {
    r.equivalence = false;
    r.witness = std::move(msg);
    return r;
  };
  GroupoidAnalysis sa = analyze(f.source);
  GroupoidAnalysis ta = analyze(f.target);

  std::vector<char> hit(ta.class_rep.size(), 0);
  for (int x = 0; x < f.source.objects(); ++x) hit[ta.class_of[f.at_object(x)]] = 1;
  for (size_t c = 0; c < hit.size(); ++c)
    if (!hit[c])
      return fail("essential surjectivity fails: nothing maps into the iso class "
                  "of target object " + std::to_string(ta.class_rep[c]));

  for (const auto& [key, mors] : sa.hom) {
    std::vector<int> images;
    images.reserve(mors.size());
    for (int m : mors) images.push_back(f.at_morphism(m));
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end())
      return fail("not faithful on hom(" + std::to_string(int(key >> 32)) + ", " +
                  std::to_string(int(key & 0xffffffffu)) + ")");
  }

  // Hom cardinalities between valid groupoid objects depend only on their iso
  // classes, so comparing on class representatives decides full faithfulness.
  for (int ra : sa.class_rep) {
    for (int rb : sa.class_rep) {
      auto sit = sa.hom.find(pair_key(ra, rb));
      size_t ns = sit == sa.hom.end() ? 0 : sit->second.size();
      auto tit = ta.hom.find(pair_key(f.at_object(ra), f.at_object(rb)));
      size_t nt = tit == ta.hom.end() ? 0 : tit->second.size();
      if (ns != nt)
        return fail("full faithfulness fails on hom(" + std::to_string(ra) + ", " +
                    std::to_string(rb) + "): source size " + std::to_string(ns) +
                    ", target size " + std::to_string(nt));
    }
  }
  return r;
}

SubgroupoidData full_subgroupoid(const FinGroupoid& g, std::vector<int> objects) {
  std::vector<int> new_of(g.objects(), -1);
  for (size_t i = 0; i < objects.size(); ++i) {
    int x = objects[i];
    require(x >= 0 && x < g.objects(), "object out of range");
    require(new_of[x] < 0, "objects must be distinct");
    new_of[x] = static_cast<int>(i);
  }

  detail::GroupoidData d;
  d.objects = static_cast<int>(objects.size());
  std::vector<int> mor_old;  // new morphism -> old
  std::vector<int> mor_new(g.morphisms(), -1);
  for (int m = 0; m < g.morphisms(); ++m) {
    if (new_of[g.src(m)] < 0 || new_of[g.dst(m)] < 0) continue;
    mor_new[m] = static_cast<int>(mor_old.size());
    mor_old.push_back(m);
    d.src.push_back(new_of[g.src(m)]);
    d.dst.push_back(new_of[g.dst(m)]);
  }
  for (int x : objects) d.identity.push_back(mor_new[g.identity_of(x)]);
  for (int m : mor_old) d.inverse.push_back(mor_new[g.inverse_of(m)]);
  for (const auto& [key, result] : g.data().comp) {
    int f = static_cast<int>(key >> 32), h = static_cast<int>(key & 0xffffffffu);
    if (mor_new[f] >= 0 && mor_new[h] >= 0)
      d.comp.emplace(pair_key(mor_new[f], mor_new[h]), mor_new[result]);
  }
  if (!g.data().labels.empty())
    for (int x : objects) d.labels.push_back(g.label(x));

  SubgroupoidData out{groupoid_from_data(std::move(d)),
                      GroupoidFunctor{},
                      std::move(objects)};
  out.inclusion = GroupoidFunctor{out.groupoid, g, out.chosen, std::move(mor_old)};
  return out;
}

SubgroupoidData skeletalize(const FinGroupoid& g) {
  return full_subgroupoid(g, analyze(g).class_rep);
}

RetractionData retraction_onto(const SubgroupoidData& sub) {
  const FinGroupoid& g = sub.inclusion.target;
  const FinGroupoid& s = sub.groupoid;
  GroupoidAnalysis ga = analyze(g);
  std::vector<int> class_sub(ga.class_rep.size(), -1);
  for (int i = 0; i < s.objects(); ++i) {
    int cls = ga.class_of[sub.chosen[static_cast<size_t>(i)]];
    if (class_sub[static_cast<size_t>(cls)] < 0)
      class_sub[static_cast<size_t>(cls)] = i;
  }
  for (size_t cls = 0; cls < class_sub.size(); ++cls)
    require(class_sub[cls] >= 0,
            "the subgroupoid misses the iso class of object " +
                std::to_string(ga.class_rep[cls]));
  std::vector<int> mor_sub(g.morphisms(), -1);
  for (int m = 0; m < s.morphisms(); ++m)
    mor_sub[static_cast<size_t>(sub.inclusion.at_morphism(m))] = m;

  RetractionData out;
  out.iso.resize(static_cast<size_t>(g.objects()));
  out.functor.source = g;
  out.functor.target = s;
  out.functor.object_map.resize(static_cast<size_t>(g.objects()));
  out.functor.morphism_map.resize(static_cast<size_t>(g.morphisms()));
  for (int x = 0; x < g.objects(); ++x) {
    int si = class_sub[static_cast<size_t>(ga.class_of[x])];
    int target = sub.chosen[static_cast<size_t>(si)];
    out.functor.object_map[static_cast<size_t>(x)] = si;
    out.iso[static_cast<size_t>(x)] =
        target == x ? g.identity_of(x) : ga.hom.at(pair_key(x, target)).front();
  }
  for (int m = 0; m < g.morphisms(); ++m) {
    int conjugated =
        g.compose(g.compose(g.inverse_of(out.iso[static_cast<size_t>(g.src(m))]), m),
                  out.iso[static_cast<size_t>(g.dst(m))]);
    require(mor_sub[static_cast<size_t>(conjugated)] >= 0,
            "the subgroupoid is not full");
    out.functor.morphism_map[static_cast<size_t>(m)] =
        mor_sub[static_cast<size_t>(conjugated)];
  }
  return out;
}

ProductData product_groupoid(const FinGroupoid& left, const FinGroupoid& right) {
  const int nb = right.objects(), mb = right.morphisms();
  detail::GroupoidData d;
  d.objects = left.objects() * nb;
  d.src.resize(left.morphisms() * mb);
  d.dst.resize(left.morphisms() * mb);
  d.inverse.resize(left.morphisms() * mb);
  d.identity.resize(d.objects);
  for (int f = 0; f < left.morphisms(); ++f) {
    for (int h = 0; h < mb; ++h) {
      int m = f * mb + h;
      d.src[m] = left.src(f) * nb + right.src(h);
      d.dst[m] = left.dst(f) * nb + right.dst(h);
      d.inverse[m] = left.inverse_of(f) * mb + right.inverse_of(h);
    }
  }
  for (int a = 0; a < left.objects(); ++a)
    for (int b = 0; b < nb; ++b)
      d.identity[a * nb + b] = left.identity_of(a) * mb + right.identity_of(b);
  d.comp.reserve(left.data().comp.size() * right.data().comp.size());
  for (const auto& [ka, ra] : left.data().comp) {
    int f1 = static_cast<int>(ka >> 32), g1 = static_cast<int>(ka & 0xffffffffu);
    for (const auto& [kb, rb] : right.data().comp) {
      int f2 = static_cast<int>(kb >> 32), g2 = static_cast<int>(kb & 0xffffffffu);
      d.comp.emplace(pair_key(f1 * mb + f2, g1 * mb + g2), ra * mb + rb);
    }
  }
  if (!left.data().labels.empty() && !right.data().labels.empty()) {
    d.labels.reserve(d.objects);
    for (int a = 0; a < left.objects(); ++a)
      for (int b = 0; b < nb; ++b)
        d.labels.push_back(left.label(a) + "|" + right.label(b));
  }

  ProductData out{groupoid_from_data(std::move(d)), {}, {}};
  out.to_left = GroupoidFunctor{out.groupoid, left, {}, {}};
  out.to_right = GroupoidFunctor{out.groupoid, right, {}, {}};
  for (int a = 0; a < left.objects(); ++a)
    for (int b = 0; b < nb; ++b) {
      out.to_left.object_map.push_back(a);
      out.to_right.object_map.push_back(b);
    }
  for (int f = 0; f < left.morphisms(); ++f)
    for (int h = 0; h < mb; ++h) {
      out.to_left.morphism_map.push_back(f);
      out.to_right.morphism_map.push_back(h);
    }
  return out;
}

GroupoidFunctor pair_into_product(const ProductData& p, const GroupoidFunctor& u,
                                  const GroupoidFunctor& v) {
  require(u.source == v.source, "the paired functors must share a source");
  require(u.target == p.to_left.target && v.target == p.to_right.target,
          "the paired functors must land in the product factors");
  const int nb = p.to_right.target.objects(), mb = p.to_right.target.morphisms();
  GroupoidFunctor out{u.source, p.groupoid, {}, {}};
  out.object_map.resize(u.object_map.size());
  out.morphism_map.resize(u.morphism_map.size());
  for (size_t x = 0; x < u.object_map.size(); ++x)
    out.object_map[x] = u.object_map[x] * nb + v.object_map[x];
  for (size_t m = 0; m < u.morphism_map.size(); ++m)
    out.morphism_map[m] = u.morphism_map[m] * mb + v.morphism_map[m];
  return out;
}

GroupoidFunctor product_swap(const ProductData& p) {
  require(p.to_left.target == p.to_right.target,
          "swap needs both factors equal");
  const FinGroupoid& g = p.to_left.target;
  const int n = g.objects(), m = g.morphisms();
  GroupoidFunctor out{p.groupoid, p.groupoid, {}, {}};
  out.object_map.resize(n * n);
  out.morphism_map.resize(m * m);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out.object_map[a * n + b] = b * n + a;
  for (int f = 0; f < m; ++f)
    for (int h = 0; h < m; ++h) out.morphism_map[f * m + h] = h * m + f;
  return out;
}

UnionData disjoint_union(const FinGroupoid& left, const FinGroupoid& right) {
  detail::GroupoidData d;
  const int on = left.objects(), om = left.morphisms();
  d.objects = on + right.objects();
  d.src = left.data().src;
  d.dst = left.data().dst;
  d.identity = left.data().identity;
  d.inverse = left.data().inverse;
  for (int m = 0; m < right.morphisms(); ++m) {
    d.src.push_back(right.src(m) + on);
    d.dst.push_back(right.dst(m) + on);
    d.inverse.push_back(right.inverse_of(m) + om);
  }
  for (int x = 0; x < right.objects(); ++x)
    d.identity.push_back(right.identity_of(x) + om);
  d.comp = left.data().comp;
  for (const auto& [key, result] : right.data().comp) {
    int f = static_cast<int>(key >> 32), h = static_cast<int>(key & 0xffffffffu);
    d.comp.emplace(pair_key(f + om, h + om), result + om);
  }
  if (!left.data().labels.empty() || !right.data().labels.empty()) {
    for (int x = 0; x < on; ++x) d.labels.push_back(left.label(x));
    for (int x = 0; x < right.objects(); ++x) d.labels.push_back(right.label(x));
  }

  UnionData out{groupoid_from_data(std::move(d)), {}, {}};
  out.from_left = GroupoidFunctor{left, out.groupoid, {}, {}};
  out.from_right = GroupoidFunctor{right, out.groupoid, {}, {}};
  for (int x = 0; x < on; ++x) out.from_left.object_map.push_back(x);
  for (int m = 0; m < om; ++m) out.from_left.morphism_map.push_back(m);
  for (int x = 0; x < right.objects(); ++x)
    out.from_right.object_map.push_back(x + on);
  for (int m = 0; m < right.morphisms(); ++m)
    out.from_right.morphism_map.push_back(m + om);
  return out;
}

IsoCommaData iso_comma_pullback(const GroupoidFunctor& f,
                                const GroupoidFunctor& g) {
  require(f.target == g.target, "iso-comma pullback needs a common target");
  const FinGroupoid& a = f.source;
  const FinGroupoid& b = g.source;
  const FinGroupoid& c = f.target;
  GroupoidAnalysis ca = analyze(c);

  IsoCommaData p;
  // pair_key(a-object, b-object) -> gamma -> apex object
  std::unordered_map<std::uint64_t, std::unordered_map<int, int>> object_index;
  for (int x = 0; x < a.objects(); ++x) {
    for (int y = 0; y < b.objects(); ++y) {
      auto it = ca.hom.find(pair_key(f.at_object(x), g.at_object(y)));
      if (it == ca.hom.end()) continue;
      auto& slot = object_index[pair_key(x, y)];
      for (int gamma : it->second) {
        slot[gamma] = static_cast<int>(p.gamma.size());
        p.left_object.push_back(x);
        p.right_object.push_back(y);
        p.gamma.push_back(gamma);
      }
    }
  }
  const int objects = static_cast<int>(p.gamma.size());

  auto out_a = out_lists(a);
  auto out_b = out_lists(b);
  detail::GroupoidData d;
  d.objects = objects;
  std::vector<int> mor_left, mor_right;
  // pair_key(apex source, alpha) -> beta -> apex morphism
  std::unordered_map<std::uint64_t, std::unordered_map<int, int>> mor_index;
  std::vector<int> first_out(objects + 1, 0);
  for (int s = 0; s < objects; ++s) {
    int x = p.left_object[s], y = p.right_object[s], gamma = p.gamma[s];
    for (int alpha : out_a[x]) {
      int fa = f.at_morphism(alpha);
      int pre = c.compose(c.inverse_of(fa), gamma);
      auto& slot = mor_index[pair_key(s, alpha)];
      for (int beta : out_b[y]) {
        int target_gamma = c.compose(pre, g.at_morphism(beta));
        int t = object_index.at(pair_key(a.dst(alpha), b.dst(beta)))
                    .at(target_gamma);
        slot[beta] = static_cast<int>(d.src.size());
        d.src.push_back(s);
        d.dst.push_back(t);
        mor_left.push_back(alpha);
        mor_right.push_back(beta);
      }
    }
    first_out[s + 1] = static_cast<int>(d.src.size());
  }

  d.identity.resize(objects);
  for (int s = 0; s < objects; ++s)
    d.identity[s] = mor_index.at(pair_key(s, a.identity_of(p.left_object[s])))
                        .at(b.identity_of(p.right_object[s]));
  d.inverse.resize(d.src.size());
  for (size_t m = 0; m < d.src.size(); ++m)
    d.inverse[m] = mor_index.at(pair_key(d.dst[m], a.inverse_of(mor_left[m])))
                       .at(b.inverse_of(mor_right[m]));
  for (size_t m1 = 0; m1 < d.src.size(); ++m1) {
    int q = d.dst[m1];
    for (int m2 = first_out[q]; m2 < first_out[q + 1]; ++m2) {
      int alpha = a.compose(mor_left[m1], mor_left[m2]);
      int beta = b.compose(mor_right[m1], mor_right[m2]);
      d.comp.emplace(pair_key(static_cast<int>(m1), m2),
                     mor_index.at(pair_key(d.src[m1], alpha)).at(beta));
    }
  }

  p.apex = groupoid_from_data(std::move(d));
  p.to_left = GroupoidFunctor{p.apex, a, p.left_object, std::move(mor_left)};
  p.to_right = GroupoidFunctor{p.apex, b, p.right_object, std::move(mor_right)};
  p.cospan_left = f;
  p.cospan_right = g;
  return p;
}

GroupoidFunctor induced_to_iso_comma(const IsoCommaData& p,
                                     const GroupoidFunctor& u,
                                     const GroupoidFunctor& v,
                                     const std::vector<int>& components) {
  const FinGroupoid& q = u.source;
  require(v.source == q, "the mediating pair must share a source");
  require(u.target == p.cospan_left.source && v.target == p.cospan_right.source,
          "the mediating pair must land in the cospan feet");
  const FinGroupoid& c = p.cospan_left.target;
  require(components.empty() ||
              static_cast<int>(components.size()) == q.objects(),
          "one component per source object expected");

  std::unordered_map<std::uint64_t, std::unordered_map<int, int>> object_index;
  for (size_t s = 0; s < p.gamma.size(); ++s)
    object_index[pair_key(p.left_object[s], p.right_object[s])][p.gamma[s]] =
        static_cast<int>(s);
  std::unordered_map<std::uint64_t, std::unordered_map<int, int>> mor_index;
  for (int m = 0; m < p.apex.morphisms(); ++m)
    mor_index[pair_key(p.apex.src(m), p.to_left.at_morphism(m))]
             [p.to_right.at_morphism(m)] = m;

  GroupoidFunctor out{q, p.apex, {}, {}};
  out.object_map.resize(q.objects());
  out.morphism_map.resize(q.morphisms());
  for (int x = 0; x < q.objects(); ++x) {
    int fa = p.cospan_left.at_object(u.at_object(x));
    int gb = p.cospan_right.at_object(v.at_object(x));
    int gamma;
    if (components.empty()) {
      require(fa == gb, "the square does not commute strictly; pass explicit "
                        "comparison components");
      gamma = c.identity_of(fa);
    } else {
      gamma = components[x];
      require(gamma >= 0 && gamma < c.morphisms() && c.src(gamma) == fa &&
                  c.dst(gamma) == gb,
              "component at object " + std::to_string(x) +
                  " is not a morphism between the two images");
    }
    auto it = object_index.find(pair_key(u.at_object(x), v.at_object(x)));
    require(it != object_index.end() && it->second.count(gamma),
            "no iso-comma object matches the component at object " +
                std::to_string(x));
    out.object_map[x] = it->second.at(gamma);
  }
  for (int m = 0; m < q.morphisms(); ++m) {
    int im = mor_index.at(pair_key(out.object_map[q.src(m)], u.at_morphism(m)))
                 .at(v.at_morphism(m));
    require(p.apex.dst(im) == out.object_map[q.dst(m)],
            "components are not natural along morphism " + mor_str(m));
    out.morphism_map[m] = im;
  }
  return out;
}

GroupoidFunctor induced_between_iso_commas(const IsoCommaData& from,
                                           const IsoCommaData& to,
                                           const GroupoidFunctor& on_left,
                                           const GroupoidFunctor& on_right,
                                           const GroupoidFunctor& on_base) {
  require(on_left.source == from.cospan_left.source &&
              on_right.source == from.cospan_right.source &&
              on_base.source == from.cospan_left.target,
          "the connecting functors must start at the first cospan");
  require(on_left.target == to.cospan_left.source &&
              on_right.target == to.cospan_right.source &&
              on_base.target == to.cospan_left.target,
          "the connecting functors must land in the second cospan");

  std::unordered_map<std::uint64_t, std::unordered_map<int, int>> object_index;
  for (size_t s = 0; s < to.gamma.size(); ++s)
    object_index[pair_key(to.left_object[s], to.right_object[s])][to.gamma[s]] =
        static_cast<int>(s);
  // An apex morphism is determined by its source object and its two
  // projections, so that triple is a faithful lookup key.
  std::unordered_map<std::uint64_t, std::unordered_map<int, int>> mor_index;
  for (int w = 0; w < to.apex.morphisms(); ++w)
    mor_index[pair_key(to.apex.src(w), to.to_left.at_morphism(w))]
             [to.to_right.at_morphism(w)] = w;

  GroupoidFunctor out{from.apex, to.apex, {}, {}};
  out.object_map.resize(from.apex.objects());
  out.morphism_map.resize(from.apex.morphisms());
  for (int o = 0; o < from.apex.objects(); ++o) {
    auto it = object_index.find(pair_key(on_left.at_object(from.left_object[o]),
                                         on_right.at_object(from.right_object[o])));
    int gamma = on_base.at_morphism(from.gamma[o]);
    require(it != object_index.end() && it->second.count(gamma),
            "induced iso-comma image missing at object " + std::to_string(o) +
                ": the connecting squares do not commute strictly");
    out.object_map[o] = it->second.at(gamma);
  }
  for (int w = 0; w < from.apex.morphisms(); ++w) {
    auto it = mor_index.find(
        pair_key(out.object_map[from.apex.src(w)],
                 on_left.at_morphism(from.to_left.at_morphism(w))));
    int right = on_right.at_morphism(from.to_right.at_morphism(w));
    require(it != mor_index.end() && it->second.count(right),
            "induced iso-comma image missing at morphism " + std::to_string(w) +
                ": the connecting squares do not commute strictly");
    out.morphism_map[w] = it->second.at(right);
  }
  return out;
}

EquivalenceReport pullback_comparison(const GroupoidFunctor& u,
                                      const GroupoidFunctor& v,
                                      const GroupoidFunctor& p,
                                      const GroupoidFunctor& r,
                                      long long materialize_limit) {
  require(u.target == v.target, "iso-comma pullback needs a common target");
  require(p.source == r.source, "the mediating pair must share a source");
  require(p.target == u.source && r.target == v.source,
          "the mediating pair must land in the cospan feet");
  const FinGroupoid& q = p.source;
  const FinGroupoid& a = u.source;
  const FinGroupoid& b = v.source;
  const FinGroupoid& c = u.target;
  for (int x = 0; x < q.objects(); ++x)
    require(u.at_object(p.at_object(x)) == v.at_object(r.at_object(x)),
            "the square does not commute strictly on object " + std::to_string(x));
  for (int w = 0; w < q.morphisms(); ++w)
    require(u.at_morphism(p.at_morphism(w)) == v.at_morphism(r.at_morphism(w)),
            "the square does not commute strictly on morphism " + mor_str(w));

  GroupoidAnalysis ca = analyze(c);
  auto base_hom = [&ca](int s, int t) -> const std::vector<int>* {
    auto it = ca.hom.find(pair_key(s, t));
    return it == ca.hom.end() ? nullptr : &it->second;
  };

  // Exact size of the pullback this square is compared against: one object
  // per (a, b, gamma), a morphism for every arrow pair out of (a, b), and a
  // composition entry for every composable pair of those. The arrow fan-out
  // of an object does not depend on its gamma, which makes the composition
  // count a closed sum as well.
  std::vector<long long> fan_a(a.objects(), 0), fan_b(b.objects(), 0);
  for (int m = 0; m < a.morphisms(); ++m) ++fan_a[a.src(m)];
  for (int m = 0; m < b.morphisms(); ++m) ++fan_b[b.src(m)];
  long long weight = 0;
  for (int x = 0; x < a.objects() && weight <= materialize_limit; ++x) {
    for (int y = 0; y < b.objects(); ++y) {
      const auto* homs = base_hom(u.at_object(x), v.at_object(y));
      if (!homs) continue;
      long long fan = fan_a[x] * fan_b[y];
      weight += static_cast<long long>(homs->size()) * (1 + fan + fan * fan);
      if (weight > materialize_limit) break;
    }
  }
  if (weight <= materialize_limit)
    return is_equivalence(induced_to_iso_comma(iso_comma_pullback(u, v), p, r));

  EquivalenceReport rep;
  auto fail = [&rep](std::string msg) {
    rep.equivalence = false;
    rep.witness = std::move(msg);
    return rep;
  };
  GroupoidAnalysis qa = analyze(q);
  GroupoidAnalysis aa = analyze(a);
  GroupoidAnalysis ba = analyze(b);

  // Morphisms of the pullback between mediated objects are the arrow pairs
  // (alpha, beta) whose images downstairs agree, so the mediating functor is
  // faithful exactly when distinct arrows give distinct pairs.
  for (const auto& [key, mors] : qa.hom) {
    std::vector<std::uint64_t> images;
    images.reserve(mors.size());
    for (int w : mors)
      images.push_back(pair_key(p.at_morphism(w), r.at_morphism(w)));
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end())
      return fail("not faithful on hom(" + std::to_string(int(key >> 32)) +
                  ", " + std::to_string(int(key & 0xffffffffu)) + ")");
  }

  // Fullness by counting those pairs. Hom cardinalities only depend on iso
  // classes on both sides, so representatives suffice once faithfulness is
  // known everywhere.
  std::unordered_map<std::uint64_t, std::unordered_map<int, long long>> vcount;
  for (int xr : qa.class_rep) {
    for (int yr : qa.class_rep) {
      auto qit = qa.hom.find(pair_key(xr, yr));
      long long nq = qit == qa.hom.end()
                         ? 0
                         : static_cast<long long>(qit->second.size());
      auto vkey = pair_key(r.at_object(xr), r.at_object(yr));
      auto vit = vcount.find(vkey);
      if (vit == vcount.end()) {
        vit = vcount.emplace(vkey, std::unordered_map<int, long long>{}).first;
        auto bit = ba.hom.find(vkey);
        if (bit != ba.hom.end())
          for (int beta : bit->second) ++vit->second[v.at_morphism(beta)];
      }
      long long ns = 0;
      auto ait = aa.hom.find(pair_key(p.at_object(xr), p.at_object(yr)));
      if (ait != aa.hom.end() && !vit->second.empty()) {
        for (int alpha : ait->second) {
          auto cit = vit->second.find(u.at_morphism(alpha));
          if (cit != vit->second.end()) ns += cit->second;
        }
      }
      if (nq != ns)
        return fail("full faithfulness fails on hom(" + std::to_string(xr) +
                    ", " + std::to_string(yr) + "): source size " +
                    std::to_string(nq) + ", pullback size " +
                    std::to_string(ns));
    }
  }

  // Essential surjectivity: every pullback point (a, b, gamma) must reach a
  // mediated one, that is admit alpha: a -> p(x) and beta: b -> r(x) with
  // "gamma then v(beta)" equal to u(alpha). Transport along isos reduces the
  // points to pairs of class representatives.
  for (int br : ba.class_rep) {
    std::vector<std::unordered_set<int>> vset(q.objects());
    for (int x = 0; x < q.objects(); ++x) {
      auto bit = ba.hom.find(pair_key(br, r.at_object(x)));
      if (bit == ba.hom.end()) continue;
      for (int beta : bit->second) vset[x].insert(v.at_morphism(beta));
    }
    for (int ar : aa.class_rep) {
      const auto* gammas = base_hom(u.at_object(ar), v.at_object(br));
      if (!gammas) continue;
      std::vector<std::pair<int, const std::vector<int>*>> candidates;
      for (int x = 0; x < q.objects(); ++x) {
        if (vset[x].empty()) continue;
        auto ait = aa.hom.find(pair_key(ar, p.at_object(x)));
        if (ait == aa.hom.end()) continue;
        candidates.emplace_back(x, &ait->second);
      }
      for (int gamma : *gammas) {
        int back = c.inverse_of(gamma);
        bool found = false;
        for (const auto& [x, alphas] : candidates) {
          for (int alpha : *alphas) {
            if (vset[x].count(c.compose(back, u.at_morphism(alpha)))) {
              found = true;
              break;
            }
          }
          if (found) break;
        }
        if (!found)
          return fail("essential surjectivity fails: no source object covers "
                      "the pullback point (" + std::to_string(ar) + ", " +
                      std::to_string(br) + ", morphism " +
                      std::to_string(gamma) + ")");
      }
    }
  }
  return rep;
}

MultiProductData product_many(const std::vector<FinGroupoid>& factors) {
  MultiProductData out;
  if (factors.empty()) {
    out.groupoid = terminal_groupoid();
    return out;
  }
  out.groupoid = factors[0];
  out.projections = {identity_functor(factors[0])};
  for (size_t i = 1; i < factors.size(); ++i) {
    ProductData p = product_groupoid(out.groupoid, factors[i]);
    for (auto& proj : out.projections) proj = compose_functors(p.to_left, proj);
    out.projections.push_back(p.to_right);
    out.groupoid = p.groupoid;
  }
  return out;
}

GroupoidFunctor tuple_into_product(const MultiProductData& p,
                                   const FinGroupoid& source,
                                   const std::vector<GroupoidFunctor>& components) {
  require(components.size() == p.projections.size(),
          "one component per factor expected");
  if (components.empty()) return constant_functor(source, p.groupoid, 0);
  GroupoidFunctor out = components[0];
  require(out.source == source, "component sources must match");
  FinGroupoid partial = components[0].target;
  // Rebuild the left-nested products to pair step by step.
  for (size_t i = 1; i < components.size(); ++i) {
    require(components[i].source == source, "component sources must match");
    ProductData step = product_groupoid(partial, components[i].target);
    out = pair_into_product(step, out, components[i]);
    partial = step.groupoid;
  }
  require(partial == p.groupoid, "components do not match the product factors");
  return out;
}

ValidationReport validate_involution(const InvolutionDatum& d) {
  ValidationReport report;
  auto flag = [&](std::string msg) {
    report.valid = false;
    report.violations.push_back(std::move(msg));
  };
  if (!(d.sigma.source == d.sigma.target)) {
    flag("sigma must be an endofunctor");
    return report;
  }
  ValidationReport fr = validate_functor(d.sigma);
  if (!fr.valid) {
    for (auto& v : fr.violations) flag("sigma: " + v);
    return report;
  }
  const FinGroupoid& g = d.sigma.source;
  if (static_cast<int>(d.eta.size()) != g.objects()) {
    flag("eta must assign one morphism per object");
    return report;
  }
  for (int x = 0; x < g.objects(); ++x) {
    int e = d.eta[x];
    if (e < 0 || e >= g.morphisms()) {
      flag("eta out of range at object " + std::to_string(x));
      return report;
    }
    int xx = d.sigma.at_object(d.sigma.at_object(x));
    if (g.src(e) != x || g.dst(e) != xx)
      flag("eta at object " + std::to_string(x) +
           " is not a morphism to the double image");
  }
  if (!report.valid) return report;
  for (int m = 0; m < g.morphisms(); ++m) {
    int mm = d.sigma.at_morphism(d.sigma.at_morphism(m));
    if (g.compose(m, d.eta[g.dst(m)]) != g.compose(d.eta[g.src(m)], mm))
      flag("eta not natural along morphism " + mor_str(m));
  }
  for (int x = 0; x < g.objects(); ++x)
    if (d.sigma.at_morphism(d.eta[x]) != d.eta[d.sigma.at_object(x)])
      flag("cocycle condition fails at object " + std::to_string(x));
  return report;
}

InvolutionDatum trivial_involution(const FinGroupoid& g) {
  InvolutionDatum d{identity_functor(g), {}};
  d.eta.resize(g.objects());
  for (int x = 0; x < g.objects(); ++x) d.eta[x] = g.identity_of(x);
  return d;
}

FixedPointData homotopy_fixed_points(const FinGroupoid& g,
                                     const InvolutionDatum& d) {
  require(d.sigma.source == g, "the involution must act on the given groupoid");
  ValidationReport rep = validate_involution(d);
  require(rep.valid, "invalid involution datum: " +
                         (rep.violations.empty() ? "" : rep.violations.front()));

  GroupoidAnalysis ga = analyze(g);
  FixedPointData out;
  std::unordered_map<int, int> object_of_u;  // the structure map determines x
  for (int x = 0; x < g.objects(); ++x) {
    auto it = ga.hom.find(pair_key(x, d.sigma.at_object(x)));
    if (it == ga.hom.end()) continue;
    for (int u : it->second) {
      if (g.compose(u, d.sigma.at_morphism(u)) != d.eta[x]) continue;
      object_of_u.emplace(u, static_cast<int>(out.base_object.size()));
      out.base_object.push_back(x);
      out.structure_map.push_back(u);
    }
  }
  const int objects = static_cast<int>(out.base_object.size());

  auto out_g = out_lists(g);
  detail::GroupoidData t;
  t.objects = objects;
  std::vector<int> carrier;  // per fixed-point morphism, the morphism of g
  std::unordered_map<std::uint64_t, int> mor_index;  // pair_key(source, carrier)
  std::vector<int> first_out(objects + 1, 0);
  for (int s = 0; s < objects; ++s) {
    int x = out.base_object[s], u = out.structure_map[s];
    for (int h : out_g[x]) {
      // the target structure map is conjugation-transported along h
      int v = g.compose(g.compose(g.inverse_of(h), u), d.sigma.at_morphism(h));
      auto it = object_of_u.find(v);
      if (it == object_of_u.end() || out.base_object[it->second] != g.dst(h))
        continue;
      mor_index.emplace(pair_key(s, h), static_cast<int>(t.src.size()));
      t.src.push_back(s);
      t.dst.push_back(it->second);
      carrier.push_back(h);
    }
    first_out[s + 1] = static_cast<int>(t.src.size());
  }

  t.identity.resize(objects);
  for (int s = 0; s < objects; ++s)
    t.identity[s] =
        mor_index.at(pair_key(s, g.identity_of(out.base_object[s])));
  t.inverse.resize(t.src.size());
  for (size_t m = 0; m < t.src.size(); ++m)
    t.inverse[m] = mor_index.at(pair_key(t.dst[m], g.inverse_of(carrier[m])));
  for (size_t m1 = 0; m1 < t.src.size(); ++m1) {
    int q = t.dst[m1];
    for (int m2 = first_out[q]; m2 < first_out[q + 1]; ++m2)
      t.comp.emplace(
          pair_key(static_cast<int>(m1), m2),
          mor_index.at(pair_key(t.src[m1], g.compose(carrier[m1], carrier[m2]))));
  }

  out.groupoid = groupoid_from_data(std::move(t));
  out.underlying = GroupoidFunctor{out.groupoid, g, out.base_object, carrier};
  return out;
}

}  // namespace twosegal
