#include "twosegal/waldhausen.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "twosegal/delta.hpp"

namespace twosegal {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

// Payloads hold one digit per entry, so the field size must stay below ten.
bool small_prime(int q) { return q == 2 || q == 3 || q == 5 || q == 7; }

void check_oracle(const ExactCategoryOracle& c) {
  require(small_prime(c.q), "q must be a prime below ten");
  require(c.dmax >= 0, "the dimension bound must be nonnegative");
}

void check_object(const ExactCategoryOracle& c, int a) {
  require(a >= 0 && a <= c.dmax, "object out of range");
}

void check_pattern(const std::vector<int>& pattern) {
  for (size_t i = 0; i < pattern.size(); ++i) {
    require(pattern[i] >= 0, "dimensions must be nonnegative");
    require(i == 0 || pattern[i - 1] <= pattern[i],
            "dimensions must be weakly increasing");
  }
}

// dim A_k along the flag, with the implicit A_0 = 0.
int dim_at(const std::vector<int>& pattern, int k) {
  return k == 0 ? 0 : pattern[static_cast<size_t>(k - 1)];
}

std::string pattern_label(const std::vector<int>& pattern) {
  std::string out = "f";
  for (size_t i = 0; i < pattern.size(); ++i) {
    if (i > 0) out += '.';
    out += std::to_string(pattern[i]);
  }
  return out;
}

// Weakly increasing length-tuples with entries in 0..dmax, lexicographic.
std::vector<std::vector<int>> level_patterns(int dmax, int length) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<size_t>(length), 0);
  while (true) {
    out.push_back(cur);
    int i = length - 1;
    while (i >= 0 && cur[static_cast<size_t>(i)] == dmax) --i;
    if (i < 0) break;
    int v = cur[static_cast<size_t>(i)] + 1;
    for (int j = i; j < length; ++j) cur[static_cast<size_t>(j)] = v;
  }
  return out;
}

// Membership in the parabolic: block upper triangular with respect to every
// interior prefix cut, i.e. g maps each F^{d_k} into itself.
bool preserves_prefixes(const std::vector<int>& pattern, const Mat& g) {
  for (size_t k = 0; k + 1 < pattern.size(); ++k) {
    int cut = pattern[k];
    for (int r = cut; r < g.rows; ++r)
      for (int c = 0; c < cut; ++c)
        if (g.at(r, c) != 0) return false;
  }
  return true;
}

std::function<std::string(const std::string&, const std::string&)> matrix_rule(
    int q) {
  // "arrow-with-a then arrow-with-b" on column vectors is the product b * a.
  return [q](const std::string& a, const std::string& b) {
    return to_payload(mat_mul(q, mat_from_payload(b), mat_from_payload(a)));
  };
}

// One level of the flag model: the skeletal groupoid plus the books needed to
// look arrows up by matrix.  Arrow indices follow insertion order, which the
// assembler preserves.
struct FlagLevel {
  std::vector<std::vector<int>> patterns;
  std::map<std::vector<int>, int> pattern_index;
  std::vector<Mat> arrow_matrix;
  std::vector<int> arrow_object;
  std::map<std::pair<int, std::string>, int> arrow_index;
  FinGroupoid groupoid;
};

FlagLevel flag_level(const ExactCategoryOracle& c, int length) {
  FlagLevel out;
  out.patterns = level_patterns(c.dmax, length);
  GroupoidAssembler assembler(static_cast<int>(out.patterns.size()));
  for (size_t p = 0; p < out.patterns.size(); ++p) {
    const std::vector<int>& pattern = out.patterns[p];
    out.pattern_index[pattern] = static_cast<int>(p);
    assembler.set_label(static_cast<int>(p), pattern_label(pattern));
    int top = pattern.empty() ? 0 : pattern.back();
    for (const Mat& g : enumerate_invertible(c.q, top)) {
      if (!preserves_prefixes(pattern, g)) continue;
      int arrow = assembler.add_arrow(static_cast<int>(p), static_cast<int>(p),
                                      to_payload(g));
      out.arrow_matrix.push_back(g);
      out.arrow_object.push_back(static_cast<int>(p));
      out.arrow_index[{static_cast<int>(p), to_payload(g)}] = arrow;
    }
  }
  out.groupoid = assembler.assemble(matrix_rule(c.q));
  return out;
}

std::vector<FlagLevel> flag_levels(const ExactCategoryOracle& c, int top) {
  std::vector<FlagLevel> out;
  out.reserve(static_cast<size_t>(top) + 1);
  for (int n = 0; n <= top; ++n) out.push_back(flag_level(c, n));
  return out;
}

Mat window(const Mat& g, int lo, int hi) {
  Mat out(hi - lo, hi - lo);
  for (int r = lo; r < hi; ++r)
    for (int c = lo; c < hi; ++c) out.at(r - lo, c - lo) = g.at(r, c);
  return out;
}

// The structure map against phi : [m] -> [n], from the level of n-flags to
// the level of m-flags.  On patterns each stage becomes the subquotient
// A_{phi(j)} / A_{phi(0)}; on automorphisms the window submatrix between the
// cuts at phi(0) and phi(m).  Windows of products are products of windows
// because both factors vanish below every cut, so this is strictly
// functorial and strictly simplicial.
GroupoidFunctor flag_structure_map(const FlagLevel& from, const FlagLevel& to,
                                   const MonotoneMap& phi) {
  const int m = phi.src();
  GroupoidFunctor out{from.groupoid, to.groupoid, {}, {}};
  out.object_map.reserve(from.patterns.size());
  for (const std::vector<int>& d : from.patterns) {
    std::vector<int> e(static_cast<size_t>(m));
    for (int j = 1; j <= m; ++j)
      e[static_cast<size_t>(j - 1)] = dim_at(d, phi(j)) - dim_at(d, phi(0));
    out.object_map.push_back(to.pattern_index.at(e));
  }
  out.morphism_map.reserve(from.arrow_matrix.size());
  for (size_t w = 0; w < from.arrow_matrix.size(); ++w) {
    size_t p = static_cast<size_t>(from.arrow_object[w]);
    const std::vector<int>& d = from.patterns[p];
    Mat cut = window(from.arrow_matrix[w], dim_at(d, phi(0)), dim_at(d, phi(m)));
    out.morphism_map.push_back(
        to.arrow_index.at({out.object_map[p], to_payload(cut)}));
  }
  return out;
}

TruncatedSimplicialGroupoid assemble_S(const std::vector<FlagLevel>& levels,
                                       int truncation) {
  return make_simplicial(
      IndexShape{IndexShapeKind::Simplex, truncation},
      [&levels](const OverOneObject& x) {
        return levels[static_cast<size_t>(x.n)].groupoid;
      },
      [&levels](const OverOneMap& g) {
        return flag_structure_map(levels[static_cast<size_t>(g.dst.n)],
                                  levels[static_cast<size_t>(g.src.n)], g.map);
      });
}

// The levelwise full embedding of flag levels along a bound inclusion:
// patterns and matrices carry over unchanged.
GroupoidFunctor inclusion_component(const FlagLevel& from, const FlagLevel& to) {
  GroupoidFunctor out{from.groupoid, to.groupoid, {}, {}};
  out.object_map.reserve(from.patterns.size());
  for (const std::vector<int>& pattern : from.patterns)
    out.object_map.push_back(to.pattern_index.at(pattern));
  out.morphism_map.reserve(from.arrow_matrix.size());
  for (size_t w = 0; w < from.arrow_matrix.size(); ++w) {
    size_t p = static_cast<size_t>(from.arrow_object[w]);
    out.morphism_map.push_back(to.arrow_index.at(
        {out.object_map[p], to_payload(from.arrow_matrix[w])}));
  }
  return out;
}

struct CoreData {
  FinGroupoid groupoid;
  std::vector<Mat> arrow;
};

CoreData core_data(const ExactCategoryOracle& c) {
  CoreData out;
  GroupoidAssembler assembler(c.dmax + 1);
  for (int d = 0; d <= c.dmax; ++d) {
    assembler.set_label(d, "o" + std::to_string(d));
    for (const Mat& g : enumerate_invertible(c.q, d)) {
      assembler.add_arrow(d, d, to_payload(g));
      out.arrow.push_back(g);
    }
  }
  out.groupoid = assembler.assemble(matrix_rule(c.q));
  return out;
}

}  // namespace

ExactCategoryOracle make_oracle(const FqVectInstance& inst) {
  ExactCategoryOracle out{inst.q, inst.dmax};
  check_oracle(out);
  return out;
}

std::vector<Mat> iso_morphisms(const ExactCategoryOracle& c, int a, int b) {
  check_oracle(c);
  check_object(c, a);
  check_object(c, b);
  if (a != b) return {};
  return enumerate_invertible(c.q, a);
}

std::vector<Mat> mono_morphisms(const ExactCategoryOracle& c, int a, int b) {
  check_oracle(c);
  check_object(c, a);
  check_object(c, b);
  if (a > b) return {};
  return enumerate_injective(c.q, b, a);
}

QuotientData quotient_of_mono(const ExactCategoryOracle& c, const Mat& mono) {
  check_oracle(c);
  check_object(c, mono.rows);
  check_object(c, mono.cols);
  require(is_injective(c.q, mono), "the arrow must be an admissible mono");
  CanonicalQuotient cq = canonical_cokernel(c.q, mono);
  return {mono.rows - mono.cols, cq.proj, cq.section};
}

FinGroupoid core_groupoid(const ExactCategoryOracle& c) {
  check_oracle(c);
  return core_data(c).groupoid;
}

Flag canonical_flag(const std::vector<int>& pattern) {
  check_pattern(pattern);
  Flag out;
  out.dims = pattern;
  for (size_t i = 0; i + 1 < pattern.size(); ++i) {
    Mat inc(pattern[i + 1], pattern[i]);
    for (int r = 0; r < pattern[i]; ++r) inc.at(r, r) = 1;
    out.monos.push_back(inc);
  }
  return out;
}

std::vector<std::vector<int>> flag_square(const std::vector<int>& pattern) {
  check_pattern(pattern);
  int n = static_cast<int>(pattern.size());
  std::vector<std::vector<int>> out;
  out.reserve(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    std::vector<int> row;
    row.reserve(static_cast<size_t>(n - i) + 1);
    for (int j = i; j <= n; ++j)
      row.push_back(dim_at(pattern, j) - dim_at(pattern, i));
    out.push_back(row);
  }
  return out;
}

TruncatedSimplicialGroupoid build_S(const ExactCategoryOracle& c,
                                    int truncation) {
  check_oracle(c);
  require(truncation >= 1, "the construction needs at least one level");
  return assemble_S(flag_levels(c, truncation), truncation);
}

ExactFunctorData inclusion_functor(const ExactCategoryOracle& source,
                                   const ExactCategoryOracle& target) {
  check_oracle(source);
  check_oracle(target);
  require(source.q == target.q,
          "structure violation: the skeleta must share the base field");
  require(source.dmax <= target.dmax,
          "structure violation: the source bound must lie inside the target "
          "bound");
  return {source, target};
}

SimplicialMorphism induced_map_S(const ExactFunctorData& f, int truncation) {
  inclusion_functor(f.source, f.target);
  require(truncation >= 1, "the construction needs at least one level");
  std::vector<FlagLevel> lc = flag_levels(f.source, truncation);
  std::vector<FlagLevel> ld = flag_levels(f.target, truncation);
  SimplicialMorphism out;
  out.source = assemble_S(lc, truncation);
  out.target = assemble_S(ld, truncation);
  for (int n = 0; n <= truncation; ++n)
    out.components[OverOneObject(n, n + 1)] =
        inclusion_component(lc[static_cast<size_t>(n)],
                            ld[static_cast<size_t>(n)]);
  return out;
}

ClosureReport closure_predicates(const ExactCategoryOracle& c,
                                 const std::function<bool(int)>& sub) {
  check_oracle(c);
  require(static_cast<bool>(sub), "a predicate is required");
  require(sub(0), "the subcategory must contain the zero object");
  ClosureReport out;
  for (int b = 0; b <= c.dmax; ++b) {
    if (!sub(b)) continue;
    for (int a = 0; a <= b; ++a) {
      for (const Mat& m : mono_morphisms(c, a, b)) {
        if (!sub(a)) out.subobject_closed = false;
        if (!sub(quotient_of_mono(c, m).object)) out.quotient_closed = false;
      }
    }
  }
  // Every extension of c-dimensional by a-dimensional has dimension a + c;
  // middles above the bound fall outside the skeleton and are not judged.
  for (int a = 0; a <= c.dmax; ++a)
    for (int b = 0; b <= c.dmax; ++b)
      if (sub(a) && sub(b) && a + b <= c.dmax && !sub(a + b))
        out.extension_closed = false;
  return out;
}

RelativeSData build_S_rel(const ExactFunctorData& f, int truncation) {
  inclusion_functor(f.source, f.target);
  require(truncation >= 1, "the construction needs at least one level");
  std::vector<FlagLevel> lc = flag_levels(f.source, truncation);
  std::vector<FlagLevel> ld = flag_levels(f.target, truncation + 1);
  TruncatedSimplicialGroupoid sc = assemble_S(lc, truncation);
  TruncatedSimplicialGroupoid sd = assemble_S(ld, truncation + 1);
  CoreData core = core_data(f.target);

  // Level n of the relative construction.
  std::map<int, IsoCommaData> ic;
  for (int n = 0; n <= truncation; ++n) {
    GroupoidFunctor incl = inclusion_component(lc[static_cast<size_t>(n)],
                                               ld[static_cast<size_t>(n)]);
    ic.emplace(n, iso_comma_pullback(incl, structure_map(sd, coface_map(n, n + 1))));
  }

  RelativeSData out;
  // A slice generator phi acts on the long-flag part along the join fixing
  // the top point; that join commutes with the top face on the nose, so the
  // transport below never misses a lookup.
  out.s_rel = make_simplicial(
      IndexShape{IndexShapeKind::Simplex, truncation},
      [&ic](const OverOneObject& x) { return ic.at(x.n).apex; },
      [&](const OverOneMap& g) {
        return induced_between_iso_commas(
            ic.at(g.dst.n), ic.at(g.src.n), structure_map(sc, g.map),
            structure_map(sd, join_point_right(g.map)),
            structure_map(sd, g.map));
      });

  out.pi.source = out.s_rel;
  out.pi.target = sc;
  for (int n = 0; n <= truncation; ++n)
    out.pi.components[OverOneObject(n, n + 1)] = ic.at(n).to_left;

  out.iota.source = make_simplicial(
      IndexShape{IndexShapeKind::Simplex, truncation},
      [&core](const OverOneObject&) { return core.groupoid; },
      [&core](const OverOneMap&) { return identity_functor(core.groupoid); });
  out.iota.target = out.s_rel;
  for (int n = 0; n <= truncation; ++n) {
    const FlagLevel& lcn = lc[static_cast<size_t>(n)];
    const FlagLevel& long_level = ld[static_cast<size_t>(n) + 1];
    GroupoidFunctor u = constant_functor(
        core.groupoid, lcn.groupoid,
        lcn.pattern_index.at(std::vector<int>(static_cast<size_t>(n), 0)));
    // d goes to the flag 0 <= ... <= 0 <= F^d, whose automorphisms are all of
    // GL_d since every interior cut is zero; its top face is the zero flag,
    // so the pair with u commutes strictly.
    GroupoidFunctor v{core.groupoid, long_level.groupoid, {}, {}};
    for (int o = 0; o < core.groupoid.objects(); ++o) {
      std::vector<int> pattern(static_cast<size_t>(n) + 1, 0);
      pattern.back() = o;
      v.object_map.push_back(long_level.pattern_index.at(pattern));
    }
    for (int w = 0; w < core.groupoid.morphisms(); ++w)
      v.morphism_map.push_back(long_level.arrow_index.at(
          {v.object_map[static_cast<size_t>(core.groupoid.src(w))],
           to_payload(core.arrow[static_cast<size_t>(w)])}));
    out.iota.components[OverOneObject(n, n + 1)] =
        induced_to_iso_comma(ic.at(n), u, v);
  }
  return out;
}

}  // namespace twosegal
