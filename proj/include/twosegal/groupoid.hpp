#pragma once

// Finite groupoids with explicit composition tables, functors between them,
// iso-comma (homotopy) pullbacks, equivalence testing with witnesses, exact
// groupoid cardinality, and homotopy fixed points of a coherent involution.
//
// Everything here is 1-truncated and finite: a groupoid is a plain table of
// objects and morphisms. Values are immutable after construction and share
// their tables, so copies are cheap and all operations are safe to run in
// parallel over independent inputs.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "twosegal/rational.hpp"

namespace twosegal {

namespace detail {
struct GroupoidData {
  int objects = 0;
  std::vector<std::string> labels;  // cosmetic; size == objects or empty
  std::vector<int> src, dst;        // per morphism
  std::vector<int> identity;        // per object
  std::vector<int> inverse;         // per morphism
  // key(f, g) -> composite "f then g", for dst(f) == src(g)
  std::unordered_map<std::uint64_t, int> comp;
};
}  // namespace detail

inline std::uint64_t pair_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

class FinGroupoid {
 public:
  FinGroupoid();  // the empty groupoid

  // Structural checks only (sizes, index ranges, composability of table
  // keys, no duplicate keys). Category axioms are NOT enforced here; run
  // validate() to get a report. triples entries are {f, g, f-then-g}.
  static FinGroupoid from_parts(int objects, std::vector<int> src,
                                std::vector<int> dst, std::vector<int> identity,
                                std::vector<int> inverse,
                                const std::vector<std::array<int, 3>>& triples,
                                std::vector<std::string> labels = {});

  int objects() const { return d_->objects; }
  int morphisms() const { return static_cast<int>(d_->src.size()); }
  int src(int m) const { return d_->src[static_cast<size_t>(m)]; }
  int dst(int m) const { return d_->dst[static_cast<size_t>(m)]; }
  int identity_of(int x) const { return d_->identity[static_cast<size_t>(x)]; }
  int inverse_of(int m) const { return d_->inverse[static_cast<size_t>(m)]; }

  // Composite "f then g"; requires dst(f) == src(g) and a table entry.
  int compose(int f, int g) const;
  bool has_composite(int f, int g) const;

  const std::string& label(int x) const;
  FinGroupoid with_labels(std::vector<std::string> labels) const;

  // Sorted by (f, g); deterministic.
  std::vector<std::array<int, 3>> composition_triples() const;

  // Labels are cosmetic and ignored by equality.
  bool operator==(const FinGroupoid& other) const;

  const detail::GroupoidData& data() const { return *d_; }
  bool same_tables(const FinGroupoid& other) const { return d_ == other.d_; }

 private:
  explicit FinGroupoid(std::shared_ptr<const detail::GroupoidData> d)
      : d_(std::move(d)) {}
  std::shared_ptr<const detail::GroupoidData> d_;
  friend class GroupoidAssembler;
  friend FinGroupoid groupoid_from_data(detail::GroupoidData&&);
};

// All morphisms a -> b, ascending. O(morphisms) scan.
std::vector<int> hom_set(const FinGroupoid& g, int a, int b);

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
};

// Checks the category axioms and the groupoid axiom on the tables: identity
// endpoints and unit laws, totality and endpoint consistency of composition,
// associativity on every composable triple, two-sided inverses.
ValidationReport validate(const FinGroupoid& g);

// Connected (= iso) class decomposition plus hom bookkeeping.
struct GroupoidAnalysis {
  std::vector<int> class_of;               // per object
  std::vector<int> class_rep;              // per class, least object index
  std::vector<long long> aut_order;        // per class, |hom(rep, rep)|
  std::unordered_map<std::uint64_t, std::vector<int>> hom;  // pair_key(a,b)
};
GroupoidAnalysis analyze(const FinGroupoid& g);

// Sum over iso classes of 1/|Aut|; exact.
Rational cardinality(const FinGroupoid& g);

FinGroupoid terminal_groupoid();
FinGroupoid discrete_groupoid(int count);

// One-object groupoid on a finite group. mult is a composition-order table:
// mult[a][b] = a∘b (apply b first). The unit is located by its unit laws.
FinGroupoid group_delooping(const std::vector<std::vector<int>>& mult);

// Builds a groupoid from arrows carrying opaque payload keys (say, encoded
// matrices) and a payload-level composition rule. Identities are located as
// the unique unit in each hom(a, a); inverses by search. Throws on duplicate
// payloads within a hom-set and on any closure failure, so the result
// satisfies the groupoid axioms by construction.
class GroupoidAssembler {
 public:
  explicit GroupoidAssembler(int object_count);
  void set_label(int object, std::string label);
  // payload must be unique within its (src, dst) hom-set; returns the index.
  int add_arrow(int src, int dst, std::string payload);
  // rule(p, q) = payload of "arrow-with-p then arrow-with-q".
  FinGroupoid assemble(
      const std::function<std::string(const std::string&, const std::string&)>&
          rule) const;

 private:
  int objects_;
  std::vector<std::string> labels_;
  std::vector<int> src_, dst_;
  std::vector<std::string> payload_;
};

struct GroupoidFunctor {
  FinGroupoid source, target;
  std::vector<int> object_map;    // size source.objects()
  std::vector<int> morphism_map;  // size source.morphisms()

  int at_object(int x) const { return object_map[static_cast<size_t>(x)]; }
  int at_morphism(int m) const { return morphism_map[static_cast<size_t>(m)]; }

  bool operator==(const GroupoidFunctor& other) const;
};

GroupoidFunctor identity_functor(const FinGroupoid& g);
// Everything to one object and its identity.
GroupoidFunctor constant_functor(const FinGroupoid& source,
                                 const FinGroupoid& target, int object);
// Diagrammatic: first f, then g.
GroupoidFunctor compose_functors(const GroupoidFunctor& f,
                                 const GroupoidFunctor& g);
// Endpoint ranges, identity/composition/src/dst preservation.
ValidationReport validate_functor(const GroupoidFunctor& f);

struct EquivalenceReport {
  bool equivalence = true;
  std::string witness;  // empty iff equivalence
  explicit operator bool() const { return equivalence; }
};

// Essential surjectivity plus full faithfulness. Hom-set cardinalities only
// depend on iso classes, so the count comparison runs on class
// representatives; injectivity is checked on every hom-set bucket.
EquivalenceReport is_equivalence(const GroupoidFunctor& f);

struct SubgroupoidData {
  FinGroupoid groupoid;
  GroupoidFunctor inclusion;
  std::vector<int> chosen;  // new object -> old object
};
// Full subgroupoid on the given (distinct) objects.
SubgroupoidData full_subgroupoid(const FinGroupoid& g, std::vector<int> objects);

struct RetractionData {
  GroupoidFunctor functor;  // ambient -> subgroupoid
  std::vector<int> iso;     // per ambient object: the chosen iso onto its image
};
// A retraction onto a full subgroupoid that meets every iso class: objects go
// to their chosen targets along fixed isos (identities wherever the object
// already lies in the subgroupoid) and morphisms are conjugated to match.
// Composing with the inclusion is isomorphic to the identity, so the
// retraction is an equivalence.
RetractionData retraction_onto(const SubgroupoidData& sub);
// Full subgroupoid on one representative per iso class; inclusion is an
// equivalence.
SubgroupoidData skeletalize(const FinGroupoid& g);

struct ProductData {
  FinGroupoid groupoid;
  GroupoidFunctor to_left, to_right;
};
// Objects (a, b) at index a*right.objects()+b; morphisms likewise row-major.
ProductData product_groupoid(const FinGroupoid& left, const FinGroupoid& right);
// The functor (u, v): Q -> left x right; u, v must share a source and land in
// the factors.
GroupoidFunctor pair_into_product(const ProductData& p, const GroupoidFunctor& u,
                                  const GroupoidFunctor& v);
// Swap self-functor of product_groupoid(g, g).
GroupoidFunctor product_swap(const ProductData& p);

struct UnionData {
  FinGroupoid groupoid;
  GroupoidFunctor from_left, from_right;
};
UnionData disjoint_union(const FinGroupoid& left, const FinGroupoid& right);

// Left-nested iterated binary product; one projection per factor. No factors
// gives the terminal groupoid, a single factor is returned as itself.
struct MultiProductData {
  FinGroupoid groupoid;
  std::vector<GroupoidFunctor> projections;
};
MultiProductData product_many(const std::vector<FinGroupoid>& factors);
// The tuple functor source -> product; component i must land in factor i.
GroupoidFunctor tuple_into_product(const MultiProductData& p,
                                   const FinGroupoid& source,
                                   const std::vector<GroupoidFunctor>& components);

// The iso-comma pullback of a cospan f: A -> C <- B : g. Objects are triples
// (a, b, gamma: f(a) -> g(b)); a morphism (a,b,gamma) -> (a',b',gamma') is a
// pair (alpha: a -> a', beta: b -> b') with gamma' ∘ f(alpha) = g(beta) ∘
// gamma. Enumeration is ascending in (a, b, gamma) and (source, alpha, beta),
// so indices are deterministic.
struct IsoCommaData {
  FinGroupoid apex;
  GroupoidFunctor to_left, to_right;
  GroupoidFunctor cospan_left, cospan_right;   // the f, g that were pulled back
  std::vector<int> left_object, right_object;  // per apex object
  std::vector<int> gamma;                      // per apex object, morphism in C
};
IsoCommaData iso_comma_pullback(const GroupoidFunctor& f,
                                const GroupoidFunctor& g);

// The mediating functor Q -> apex for a square that commutes up to the given
// natural family: components[q]: f(u(q)) -> g(v(q)). An empty components
// vector means the square commutes strictly and identities are used.
// Naturality failures throw.
GroupoidFunctor induced_to_iso_comma(const IsoCommaData& p,
                                     const GroupoidFunctor& u,
                                     const GroupoidFunctor& v,
                                     const std::vector<int>& components = {});

// The functor between two iso-comma pullbacks induced by functors on both
// factors and on the base, acting componentwise on (a, b, gamma). Requires
// the three squares relating the cospans to commute strictly; a missing
// image means they do not and the call throws.
GroupoidFunctor induced_between_iso_commas(const IsoCommaData& from,
                                           const IsoCommaData& to,
                                           const GroupoidFunctor& on_left,
                                           const GroupoidFunctor& on_right,
                                           const GroupoidFunctor& on_base);

// Whether a strictly commuting square is a homotopy pullback square: p and r
// share a source, land in the feet of the cospan (u, v), and u after p must
// equal v after r on the nose. The verdict always matches materializing
// iso_comma_pullback(u, v) and testing the induced functor, and that is what
// happens while the pullback stays below materialize_limit (objects plus
// morphisms plus composition entries). Above the limit the three equivalence
// conditions are decided by counting hom sets instead, which keeps squares
// with large automorphism groups affordable; witnesses then name objects of
// the feet rather than of the pullback.
EquivalenceReport pullback_comparison(const GroupoidFunctor& u,
                                      const GroupoidFunctor& v,
                                      const GroupoidFunctor& p,
                                      const GroupoidFunctor& r,
                                      long long materialize_limit = 4000000);

// A coherent involution: sigma an ordinary endofunctor (contravariant dualities
// are fed in already composed with inversion), eta[x]: x -> sigma(sigma(x)) a
// natural isomorphism satisfying the cocycle sigma(eta[x]) == eta[sigma(x)].
struct InvolutionDatum {
  GroupoidFunctor sigma;
  std::vector<int> eta;
};
ValidationReport validate_involution(const InvolutionDatum& d);

InvolutionDatum trivial_involution(const FinGroupoid& g);

// Homotopy fixed points: objects (x, u: x -> sigma x) with sigma(u) ∘ u =
// eta[x]; morphisms (x,u) -> (y,v) are g: x -> y with v ∘ g = sigma(g) ∘ u.
// Throws if the involution datum is invalid.
struct FixedPointData {
  FinGroupoid groupoid;
  GroupoidFunctor underlying;      // (x, u) -> x
  std::vector<int> base_object;    // per fixed-point object: x
  std::vector<int> structure_map;  // per fixed-point object: u
};
FixedPointData homotopy_fixed_points(const FinGroupoid& g,
                                     const InvolutionDatum& d);

}  // namespace twosegal
