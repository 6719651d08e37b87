#include "twosegal/segal.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdlib>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>

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

int worker_count() {
  const char* raw = std::getenv("TWOSEGAL_PARALLELISM");
  if (raw == nullptr) return 1;
  int parsed = std::atoi(raw);
  return parsed < 1 ? 1 : parsed;
}

// Evaluates job(k) for k in [0, count).  Workers pull instances from a shared
// counter and write disjoint slots, so the collected failures come out in
// instance order no matter how the threads interleave.
std::vector<CheckFailure> run_instances(
    int count, const std::function<std::optional<CheckFailure>(int)>& job) {
  std::vector<std::optional<CheckFailure>> slots(count);
  int workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (int k = 0; k < count; ++k) slots[k] = job(k);
  } else {
    std::atomic<int> next{0};
    std::vector<std::future<void>> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.push_back(std::async(std::launch::async, [&slots, &job, &next,
                                                     count] {
        for (int k = next++; k < count; k = next++) slots[k] = job(k);
      }));
    }
    for (auto& worker : pool) worker.get();
  }
  std::vector<CheckFailure> failures;
  for (auto& slot : slots) {
    if (slot) failures.push_back(std::move(*slot));
  }
  return failures;
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

// The image of an identity extension square under X is a homotopy pullback
// exactly when the canonical functor from the image of the outer corner into
// the iso-comma pullback of the cospan is an equivalence.
EquivalenceReport image_square_comparison(const TruncatedSimplicialGroupoid& X,
                                          const IdentityExtensionSquare& sq) {
  return pullback_comparison(structure_map(X, sq.left),
                             structure_map(X, sq.top),
                             structure_map(X, sq.bottom),
                             structure_map(X, sq.right));
}

// [j - i] -> [n] onto the interval i..j.
MonotoneMap window_map(int n, int i, int j) {
  std::vector<int> values;
  for (int v = i; v <= j; ++v) values.push_back(v);
  return MonotoneMap(values, n);
}

// [n - j + i + 1] -> [n] onto 0..i and j..n.
MonotoneMap complement_map(int n, int i, int j) {
  std::vector<int> values;
  for (int v = 0; v <= i; ++v) values.push_back(v);
  for (int v = j; v <= n; ++v) values.push_back(v);
  return MonotoneMap(values, n);
}

// X_n -> X_{0,1} x_{X_0} ... x_{X_0} X_{n-1,n}, glued edge by edge.  Needs
// n >= 2.  face(1,0) picks the last vertex of an edge, face(1,1) the first.
// Each gluing piles up isomorphic copies whose arrow fans multiply, so the
// accumulated spine is collapsed to a skeleton after every step; the chosen
// isos are absorbed into the comparison components of the next gluing.
GroupoidFunctor spine_comparison(const TruncatedSimplicialGroupoid& X, int n) {
  GroupoidFunctor into = structure_map(X, MonotoneMap({0, 1}, n));
  GroupoidFunctor last_vertex = X.face(1, 0);
  const FinGroupoid& base = X.level(0);
  // into against the next gluing vertex, starting strict
  std::vector<int> fix(static_cast<size_t>(into.source.objects()));
  for (int x = 0; x < into.source.objects(); ++x)
    fix[static_cast<size_t>(x)] =
        base.identity_of(last_vertex.at_object(into.at_object(x)));
  for (int k = 2; k <= n; ++k) {
    IsoCommaData pullback = iso_comma_pullback(last_vertex, X.face(1, 1));
    into = induced_to_iso_comma(
        pullback, into, structure_map(X, MonotoneMap({k - 1, k}, n)), fix);
    GroupoidFunctor apex_last = compose_functors(pullback.to_right, X.face(1, 0));
    SubgroupoidData sk = skeletalize(pullback.apex);
    RetractionData back = retraction_onto(sk);
    for (int x = 0; x < into.source.objects(); ++x)
      fix[static_cast<size_t>(x)] = apex_last.at_morphism(pullback.apex.inverse_of(
          back.iso[static_cast<size_t>(into.at_object(x))]));
    into = compose_functors(into, back.functor);
    last_vertex = compose_functors(sk.inclusion, apex_last);
  }
  return into;
}

}  // namespace

CheckReport is_1_segal(const TruncatedSimplicialGroupoid& X, int depth) {
  require(X.shape.kind == IndexShapeKind::Simplex,
          "the spine conditions need a simplex-shaped object");
  require_depth(depth, X.shape.truncation);
  std::vector<int> levels;
  for (int n = 2; n <= depth; ++n) levels.push_back(n);
  auto failures = run_instances(
      static_cast<int>(levels.size()),
      [&](int k) -> std::optional<CheckFailure> {
        EquivalenceReport rep = is_equivalence(spine_comparison(X, levels[k]));
        if (rep.equivalence) return std::nullopt;
        CheckFailure fail;
        fail.condition = "1-segal";
        fail.n = levels[k];
        fail.witness = rep.witness;
        return fail;
      });
  return report_from(std::move(failures),
                     "2 <= n <= " + std::to_string(depth));
}

CheckReport is_2_segal(const TruncatedSimplicialGroupoid& X, int depth) {
  require(X.shape.kind == IndexShapeKind::Simplex,
          "the polygonal conditions need a simplex-shaped object");
  require_depth(depth, X.shape.truncation);
  std::vector<std::array<int, 3>> polygons;
  for (int n = 3; n <= depth; ++n) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j <= n; ++j) polygons.push_back({n, i, j});
    }
  }
  auto failures = run_instances(
      static_cast<int>(polygons.size()),
      [&](int k) -> std::optional<CheckFailure> {
        auto [n, i, j] = polygons[k];
        IdentityExtensionSquare sq =
            polygonal_square(OverOneObject(n, n + 1), i, j);
        EquivalenceReport rep = image_square_comparison(X, sq);
        if (rep.equivalence) return std::nullopt;
        CheckFailure fail;
        fail.condition = "2-segal";
        fail.n = n;
        fail.i = i;
        fail.j = j;
        fail.witness = rep.witness;
        return fail;
      });
  return report_from(
      std::move(failures),
      "3 <= n <= " + std::to_string(depth) + ", 0 <= i < j <= n");
}

CheckReport is_decomposition_space(const TruncatedSimplicialGroupoid& X,
                                   int depth) {
  require(X.shape.kind == IndexShapeKind::Simplex ||
              X.shape.kind == IndexShapeKind::OverOne,
          "the decomposition-space conditions need a simplex or full slice "
          "shape");
  require_depth(depth, X.shape.truncation);
  std::vector<IdentityExtensionSquare> squares =
      enumerate_identity_extension_squares(X.shape.kind, depth);
  auto failures = run_instances(
      static_cast<int>(squares.size()),
      [&](int k) -> std::optional<CheckFailure> {
        const IdentityExtensionSquare& sq = squares[k];
        EquivalenceReport rep = image_square_comparison(X, sq);
        if (rep.equivalence) return std::nullopt;
        CheckFailure fail;
        fail.condition = "decomposition-space";
        fail.n = sq.bottom.dst.n;
        fail.i = sq.offset();
        fail.j = sq.offset() + sq.right.src.n;
        fail.f = to_string(sq.top);
        fail.witness = rep.witness;
        return fail;
      });
  return report_from(std::move(failures),
                     "identity extension squares with corners of size <= " +
                         std::to_string(depth));
}

CheckReport is_relative_2_segal_family(const TruncatedSimplicialGroupoid& X,
                                       int depth) {
  require(X.shape.kind == IndexShapeKind::OverOne ||
              X.shape.kind == IndexShapeKind::OverOneLeq ||
              X.shape.kind == IndexShapeKind::OverOneGeq,
          "the relative family conditions need a slice-shaped object");
  require_depth(depth, X.shape.truncation);
  struct Instance {
    OverOneObject level;
    int i, j;
  };
  std::vector<Instance> instances;
  for (const OverOneObject& f :
       shape_levels(IndexShape{X.shape.kind, depth})) {
    if (f.n < 3) continue;
    for (int i = 0; i < f.n; ++i) {
      for (int j = i + 1; j <= f.n; ++j) instances.push_back({f, i, j});
    }
  }
  auto failures = run_instances(
      static_cast<int>(instances.size()),
      [&](int k) -> std::optional<CheckFailure> {
        const Instance& inst = instances[k];
        IdentityExtensionSquare sq =
            polygonal_square(inst.level, inst.i, inst.j);
        EquivalenceReport rep = image_square_comparison(X, sq);
        if (rep.equivalence) return std::nullopt;
        CheckFailure fail;
        fail.condition = "relative-2-segal";
        fail.n = inst.level.n;
        fail.i = inst.i;
        fail.j = inst.j;
        fail.f = to_string(inst.level);
        fail.witness = rep.witness;
        return fail;
      });
  return report_from(std::move(failures),
                     "level objects on [n], 3 <= n <= " +
                         std::to_string(depth) + ", 0 <= i < j <= n");
}

CheckReport is_relative_2_segal_morphism(const SimplicialMorphism& p,
                                         int depth) {
  require(p.source.shape.kind == IndexShapeKind::Simplex &&
              p.target.shape.kind == IndexShapeKind::Simplex,
          "the relative morphism conditions need simplex-shaped ends");
  require_depth(depth, std::min(p.source.shape.truncation,
                                p.target.shape.truncation));
  std::vector<std::array<int, 3>> squares;
  for (int n = 1; n <= depth; ++n) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j <= n; ++j) squares.push_back({n, i, j});
    }
  }
  auto failures = run_instances(
      static_cast<int>(squares.size()),
      [&](int k) -> std::optional<CheckFailure> {
        auto [n, i, j] = squares[k];
        int m = n - j + i + 1;
        const GroupoidFunctor& comp_n = p.components.at(OverOneObject(n, n + 1));
        const GroupoidFunctor& comp_m = p.components.at(OverOneObject(m, m + 1));
        GroupoidFunctor top = compose_functors(
            comp_n, structure_map(p.target, window_map(n, i, j)));
        GroupoidFunctor left =
            structure_map(p.source, complement_map(n, i, j));
        // In complement coordinates i and j are adjacent; in window
        // coordinates they are the endpoints.
        GroupoidFunctor bottom = compose_functors(
            comp_m, structure_map(p.target, MonotoneMap({i, i + 1}, m)));
        GroupoidFunctor right =
            structure_map(p.target, MonotoneMap({0, j - i}, j - i));
        EquivalenceReport rep = pullback_comparison(bottom, right, left, top);
        if (rep.equivalence) return std::nullopt;
        CheckFailure fail;
        fail.condition = "relative-square";
        fail.n = n;
        fail.i = i;
        fail.j = j;
        fail.witness = rep.witness;
        return fail;
      });
  for (CheckFailure fail : is_1_segal(p.source, depth).failures) {
    fail.condition = "source-1-segal";
    failures.push_back(std::move(fail));
  }
  for (CheckFailure fail : is_2_segal(p.target, depth).failures) {
    fail.condition = "target-2-segal";
    failures.push_back(std::move(fail));
  }
  return report_from(std::move(failures),
                     "source spine and target polygons to depth " +
                         std::to_string(depth) +
                         "; mixed squares 1 <= n <= " + std::to_string(depth));
}

}  // namespace twosegal
