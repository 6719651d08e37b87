#include <functional>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "twosegal/segal.hpp"
#include "twosegal/simplicial.hpp"
#include "twosegal/spans.hpp"
#include "twosegal/waldhausen.hpp"

using namespace twosegal;

namespace {

OverOneObject simplex_level(int n) { return OverOneObject(n, n + 1); }

int object_by_label(const FinGroupoid& g, const std::string& want) {
  for (int x = 0; x < g.objects(); ++x)
    if (g.label(x) == want) return x;
  return -1;
}

long long aut_order_of(const FinGroupoid& g, int object) {
  return static_cast<long long>(hom_set(g, object, object).size());
}

}  // namespace

TEST_CASE("the vector space oracle enumerates isos, monos, and quotients") {
  ExactCategoryOracle c = make_oracle({2, 2});

  CHECK(iso_morphisms(c, 1, 2).empty());
  CHECK(iso_morphisms(c, 0, 0).size() == 1);
  CHECK(iso_morphisms(c, 2, 2).size() == 6);
  CHECK(iso_morphisms(make_oracle({3, 2}), 2, 2).size() == 48);

  CHECK(mono_morphisms(c, 2, 1).empty());
  CHECK(mono_morphisms(c, 0, 2).size() == 1);
  std::vector<Mat> lines = mono_morphisms(c, 1, 2);
  CHECK(lines.size() == 3);
  for (const Mat& m : lines) {
    QuotientData qd = quotient_of_mono(c, m);
    CHECK(qd.object == 1);
    CHECK(qd.epi.rows == 1);
    CHECK(qd.epi.cols == 2);
    CHECK(mat_mul(2, qd.epi, m) == Mat(1, 1));
    CHECK(mat_mul(2, qd.epi, qd.section) == mat_identity(1));
  }

  // Quotienting by an iso leaves the zero object, by zero the whole object.
  for (const Mat& g : iso_morphisms(c, 2, 2))
    CHECK(quotient_of_mono(c, g).object == 0);
  CHECK(quotient_of_mono(c, Mat(2, 0)).object == 2);

  // The cokernel of a prefix inclusion is the complementary coordinate
  // projection; the flag model's face maps lean on this normalization.
  CHECK(quotient_of_mono(c, Mat(2, 1, {1, 0})).epi == Mat(1, 2, {0, 1}));

  CHECK_THROWS(quotient_of_mono(c, Mat(2, 1)));
  CHECK_THROWS(quotient_of_mono(c, Mat(3, 1, {1, 0, 0})));

  CHECK_THROWS(make_oracle({4, 2}));
  CHECK_THROWS(make_oracle({9, 2}));
  CHECK_THROWS(make_oracle({11, 2}));
  CHECK_THROWS(make_oracle({2, -1}));
  CHECK_THROWS(iso_morphisms(c, 0, 3));

  FinGroupoid core = core_groupoid(c);
  CHECK(core.objects() == 3);
  CHECK(core.morphisms() == 8);
  CHECK(core.label(2) == "o2");
  CHECK(cardinality(core) == Rational(13, 6));
}

TEST_CASE("canonical flags realize their patterns") {
  Flag f = canonical_flag({1, 2});
  CHECK(f.dims == std::vector<int>{1, 2});
  CHECK(f.monos.size() == 1);
  CHECK(f.monos[0] == Mat(2, 1, {1, 0}));

  CHECK(canonical_flag({}).monos.empty());

  Flag g = canonical_flag({0, 0, 2});
  CHECK(g.monos.size() == 2);
  CHECK(g.monos[0] == Mat(0, 0));
  CHECK(g.monos[1] == Mat(2, 0));
  for (const Mat& m : g.monos) CHECK(is_injective(2, m));

  std::vector<std::vector<int>> square = flag_square({1, 2});
  CHECK(square == std::vector<std::vector<int>>{{0, 1, 2}, {0, 1}, {0}});

  CHECK_THROWS(canonical_flag({2, 1}));
  CHECK_THROWS(canonical_flag({-1}));
}

TEST_CASE("flag levels count automorphisms by parabolic order") {
  ExactCategoryOracle c = make_oracle({2, 2});
  TruncatedSimplicialGroupoid s = build_S(c, 4);
  CHECK(validate(s).valid);

  CHECK(s.level(0).objects() == 1);
  CHECK(s.level(0).morphisms() == 1);
  CHECK(s.level(0).label(0) == "f");

  const FinGroupoid& one = s.level(1);
  CHECK(one.objects() == 3);
  CHECK(one.label(0) == "f0");
  CHECK(one.label(2) == "f2");
  GroupoidAnalysis a1 = analyze(one);
  CHECK(a1.aut_order == std::vector<long long>{1, 1, 6});
  CHECK(cardinality(one) == Rational(13, 6));

  // Level two patterns in order: 00, 01, 02, 11, 12, 22.  The pattern 12 has
  // the upper triangular automorphisms only.
  const FinGroupoid& two = s.level(2);
  CHECK(two.objects() == 6);
  GroupoidAnalysis a2 = analyze(two);
  CHECK(a2.aut_order == std::vector<long long>{1, 1, 6, 1, 2, 6});
  for (int x = 0; x < two.objects(); ++x) CHECK(a2.class_of[x] == x);
  CHECK(cardinality(two) == Rational(23, 6));

  TruncatedSimplicialGroupoid s3 = build_S(make_oracle({3, 2}), 3);
  CHECK(validate(s3).valid);
  CHECK(cardinality(s3.level(1)) == Rational(73, 48));

  TruncatedSimplicialGroupoid zero = build_S(make_oracle({2, 0}), 3);
  for (int n = 0; n <= 3; ++n) {
    CHECK(zero.level(n).objects() == 1);
    CHECK(zero.level(n).morphisms() == 1);
  }

  CHECK_THROWS(build_S(c, 0));
  CHECK_THROWS(build_S(ExactCategoryOracle{6, 2}, 2));
}

TEST_CASE("the face maps quotient, delete, and drop") {
  TruncatedSimplicialGroupoid s = build_S(make_oracle({2, 2}), 2);
  const FinGroupoid& two = s.level(2);
  const FinGroupoid& one = s.level(1);
  int f12 = object_by_label(two, "f1.2");
  int f02 = object_by_label(two, "f0.2");
  REQUIRE(f12 >= 0);
  REQUIRE(f02 >= 0);

  CHECK(s.face(2, 0).at_object(f12) == object_by_label(one, "f1"));
  CHECK(s.face(2, 1).at_object(f12) == object_by_label(one, "f2"));
  CHECK(s.face(2, 2).at_object(f12) == object_by_label(one, "f1"));
  CHECK(s.face(2, 0).at_object(f02) == object_by_label(one, "f2"));

  CHECK(s.degeneracy(1, 0).at_object(object_by_label(one, "f1")) ==
        object_by_label(two, "f0.1"));
  CHECK(s.degeneracy(1, 1).at_object(object_by_label(one, "f1")) ==
        object_by_label(two, "f1.1"));

  // Both outer faces crush the unipotent automorphism of 1 <= 2 to an
  // identity; the quotient face on a full flag stays injective on arrows.
  for (int w : hom_set(two, f12, f12)) {
    CHECK(one.src(s.face(2, 0).at_morphism(w)) == object_by_label(one, "f1"));
    CHECK(s.face(2, 0).at_morphism(w) ==
          one.identity_of(object_by_label(one, "f1")));
    CHECK(s.face(2, 2).at_morphism(w) ==
          one.identity_of(object_by_label(one, "f1")));
  }
  std::set<int> images;
  for (int w : hom_set(two, f02, f02))
    images.insert(s.face(2, 0).at_morphism(w));
  CHECK(images.size() == 6);
}

TEST_CASE("the flag construction is 2-Segal but not 1-Segal") {
  TruncatedSimplicialGroupoid s = build_S(make_oracle({2, 2}), 4);
  CHECK(is_2_segal(s, 4).passed);
  // Two composable monos carry more than two independent ones: 23/6 against
  // the square of 13/6.
  CHECK_FALSE(is_1_segal(s, 2).passed);

  CHECK(is_2_segal(build_S(make_oracle({3, 2}), 3), 3).passed);
  CHECK(is_1_segal(build_S(make_oracle({2, 0}), 3), 3).passed);
}

TEST_CASE("induced maps of inclusions embed flags levelwise") {
  ExactCategoryOracle small = make_oracle({2, 1});
  ExactCategoryOracle big = make_oracle({2, 2});

  SimplicialMorphism identity = induced_map_S(inclusion_functor(big, big), 3);
  CHECK(identity.source == identity.target);
  for (int n = 0; n <= 3; ++n)
    CHECK(identity.components.at(simplex_level(n)) ==
          identity_functor(identity.source.level(n)));
  CHECK(is_active_equifibered(identity, 3).passed);
  CHECK(is_relative_segal(identity, 3).passed);

  SimplicialMorphism m = induced_map_S(inclusion_functor(small, big), 3);
  CHECK(validate_morphism(m).valid);
  CHECK(m.source.level(2).objects() == 3);
  CHECK(m.target.level(2).objects() == 6);

  CHECK(is_active_equifibered(m, 3).passed);
  CheckReport rel = is_relative_segal(m, 3);
  CHECK_FALSE(rel.passed);
  // The first gap is the missing extension: the long flag 1 <= 2 sits over a
  // spine of two admissible one-dimensional steps.
  REQUIRE(!rel.failures.empty());
  CHECK(rel.failures.front().n == 2);
  CHECK(!rel.failures.front().witness.empty());

  CHECK_THROWS(inclusion_functor(make_oracle({3, 1}), big));
  CHECK_THROWS(inclusion_functor(big, small));
  CHECK_THROWS(induced_map_S(inclusion_functor(small, big), 0));
}

TEST_CASE("closure predicates judge subcategories within the bound") {
  ExactCategoryOracle c = make_oracle({2, 2});

  ClosureReport all = closure_predicates(c, [](int) { return true; });
  CHECK(all.subobject_closed);
  CHECK(all.quotient_closed);
  CHECK(all.extension_closed);

  ClosureReport low = closure_predicates(c, [](int d) { return d <= 1; });
  CHECK(low.subobject_closed);
  CHECK(low.quotient_closed);
  CHECK_FALSE(low.extension_closed);

  ClosureReport zero = closure_predicates(c, [](int d) { return d == 0; });
  CHECK(zero.subobject_closed);
  CHECK(zero.quotient_closed);
  CHECK(zero.extension_closed);

  // Skipping the middle dimension breaks both mono-side closures but not
  // extensions: 2 = 1 + 1 needs summands outside the selection.
  ClosureReport gap = closure_predicates(c, [](int d) { return d != 1; });
  CHECK_FALSE(gap.subobject_closed);
  CHECK_FALSE(gap.quotient_closed);
  CHECK(gap.extension_closed);

  ClosureReport wide =
      closure_predicates(make_oracle({3, 3}), [](int d) { return d <= 2; });
  CHECK(wide.subobject_closed);
  CHECK(wide.quotient_closed);
  CHECK_FALSE(wide.extension_closed);

  CHECK_THROWS(closure_predicates(c, [](int d) { return d > 0; }));
  CHECK_THROWS(closure_predicates(c, std::function<bool(int)>()));
}

TEST_CASE("the relative construction pairs flags with one-step-longer flags") {
  ExactFunctorData trivial =
      inclusion_functor(make_oracle({2, 0}), make_oracle({2, 0}));
  RelativeSData rz = build_S_rel(trivial, 2);
  CHECK(validate(rz.s_rel).valid);
  CHECK(validate_morphism(rz.iota).valid);
  CHECK(validate_morphism(rz.pi).valid);
  for (int n = 0; n <= 2; ++n) {
    CHECK(rz.s_rel.level(n).objects() == 1);
    CHECK(rz.s_rel.level(n).morphisms() == 1);
  }

  ExactFunctorData f =
      inclusion_functor(make_oracle({2, 1}), make_oracle({2, 2}));
  RelativeSData rel = build_S_rel(f, 3);
  CHECK(validate(rel.s_rel).valid);
  CHECK(validate_morphism(rel.iota).valid);
  CHECK(validate_morphism(rel.pi).valid);

  // Level zero is the core of the target: a point below, any object on top.
  CHECK(is_equivalence(rel.iota.components.at(simplex_level(0))));
  CHECK(rel.s_rel.level(0).objects() == 3);
  CHECK(rel.s_rel.level(0).morphisms() == 8);

  // Level one: short flags 0, 1 paired with long flags sharing the bottom.
  CHECK(rel.s_rel.level(1).objects() == 5);
  CHECK(rel.s_rel.level(1).morphisms() == 11);

  CHECK(is_active_equifibered(rel.pi, 3).passed);
  CHECK(is_relative_segal(rel.iota, 3).passed);
  CHECK(is_2_segal(rel.s_rel, 3).passed);

  CHECK_THROWS(build_S_rel(f, 0));
}

TEST_CASE("extension-closed full inclusions give one-Segal relative objects") {
  ExactCategoryOracle big = make_oracle({2, 2});

  RelativeSData full = build_S_rel(inclusion_functor(big, big), 3);
  CHECK(is_1_segal(full.s_rel, 3).passed);
  // For the full inclusion the relative object is the path space that fixes
  // the last vertex, level for level.
  TruncatedSimplicialGroupoid paths = final_path_space(build_S(big, 4));
  for (int n = 0; n <= 3; ++n)
    CHECK(cardinality(full.s_rel.level(n)) == cardinality(paths.level(n)));
  CHECK(is_1_segal(paths, 3).passed);

  RelativeSData zero = build_S_rel(
      inclusion_functor(make_oracle({2, 0}), make_oracle({2, 1})), 2);
  CHECK(is_1_segal(zero.s_rel, 2).passed);

  // The one-dimensional subcategory is not extension closed and its relative
  // object detects that: 31/6 two-step pairs against 34/6 spine composites.
  RelativeSData low = build_S_rel(
      inclusion_functor(make_oracle({2, 1}), make_oracle({2, 2})), 2);
  CHECK(cardinality(low.s_rel.level(2)) == Rational(31, 6));
  CHECK_FALSE(is_1_segal(low.s_rel, 2).passed);
}

TEST_CASE("subquotient multiplicities match direct subspace counts") {
  // The index of the parabolic counts the subspaces the flag stage can
  // occupy: |Aut(top)| / |Aut(flag)| = number of d1-dimensional subspaces.
  for (int q : {2, 3}) {
    int dmax = q == 2 ? 3 : 2;
    TruncatedSimplicialGroupoid s = build_S(make_oracle({q, dmax}), 2);
    for (int d2 = 0; d2 <= dmax; ++d2) {
      for (int d1 = 0; d1 <= d2; ++d1) {
        std::string flag_label =
            "f" + std::to_string(d1) + "." + std::to_string(d2);
        long long top = aut_order_of(s.level(1),
                                     object_by_label(s.level(1),
                                                     "f" + std::to_string(d2)));
        long long flag = aut_order_of(s.level(2),
                                      object_by_label(s.level(2), flag_label));
        long long count = static_cast<long long>(
            enumerate_subspace_bases(q, d2, d1).size());
        CHECK(top == flag * count);
      }
    }
  }
}
