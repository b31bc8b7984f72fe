#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hflab/hfset.hpp"
#include "hflab/hierarchy.hpp"

namespace hflab {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Arrow {
  std::size_t dom = 0;
  std::size_t cod = 0;
  std::string label;
  // Function graph, for categories of sets.
  std::optional<HfSet> graph;
};

// A finite category given by explicit tables. Arrow equality is index
// equality.
class FinCategory {
 public:
  std::size_t add_object(std::string label, std::optional<HfSet> set = std::nullopt);
  // Also sets the identity when dom == cod and `identity` is true.
  std::size_t add_arrow(Arrow a, bool identity = false);
  void set_identity(std::size_t object, std::size_t arrow);
  // Records g . f = h.
  void set_compose(std::size_t g, std::size_t f, std::size_t h);

  std::size_t num_objects() const { return objects_.size(); }
  std::size_t num_arrows() const { return arrows_.size(); }
  const std::string& object_label(std::size_t x) const { return objects_[x]; }
  const std::optional<HfSet>& object_set(std::size_t x) const { return object_sets_[x]; }
  const Arrow& arrow(std::size_t f) const { return arrows_[f]; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  // npos when unset.
  std::size_t identity(std::size_t x) const { return identities_[x]; }
  // g . f, or npos when undefined.
  std::size_t compose(std::size_t g, std::size_t f) const;

  // Arrows x -> y in index order.
  const std::vector<std::size_t>& hom(std::size_t x, std::size_t y) const;

 private:
  void ensure_table() const;

  std::vector<std::string> objects_;
  std::vector<std::optional<HfSet>> object_sets_;
  std::vector<Arrow> arrows_;
  std::vector<std::size_t> identities_;
  // Keyed f * num_arrows + g -> g . f; rebuilt when arrows are added.
  mutable std::vector<std::size_t> table_;
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>> pending_;
  mutable std::vector<std::vector<std::size_t>> homs_;
  mutable bool dirty_ = true;
};

struct LawVerdict {
  bool holds = true;
  // "typing", "left identity", "right identity" or "associativity".
  std::string law;
  // Arrow indices: (f) for identity laws, (f, g) for typing, (f, g, h) with
  // h . (g . f) != (h . g) . f for associativity.
  std::vector<std::size_t> witness;
};

// Throws ConfigError for malformed tables: bad indices, missing identities,
// or composition missing on a composable pair or present on a non-composable
// one.
LawVerdict validate(const FinCategory& c);

bool is_thin(const FinCategory& c);
bool is_mono(const FinCategory& c, std::size_t f);

// --- constructions ---------------------------------------------------------

FinCategory discrete_category(std::size_t m);
// Two objects and two parallel non-identity arrows.
FinCategory parallel_pair_category();
// Objects 0 -> 2 <- 1.
FinCategory cospan_category();
// The poset {0 < 1 < ... < m-1}.
FinCategory chain_category(std::size_t m);

// Objects are the members of V_k; arrows are all functions between them,
// ordered by (dom, cod, graph). Throws ConfigError for k > 3.
FinCategory build_coll(std::size_t k);

// --- limits ----------------------------------------------------------------

struct Diagram {
  FinCategory shape;
  std::vector<std::size_t> on_objects;
  std::vector<std::size_t> on_arrows;
};

Diagram empty_diagram();
Diagram discrete_diagram(const std::vector<std::size_t>& objects);
Diagram parallel_diagram(std::size_t f, std::size_t g, const FinCategory& c);
Diagram cospan_diagram(std::size_t f, std::size_t g, const FinCategory& c);

struct Cone {
  std::size_t apex = 0;
  std::vector<std::size_t> legs;
};

inline constexpr std::uint64_t kDefaultSearchBound = 10'000'000;

// The first limit cone in (apex, legs) order, or nullopt. Throws
// BoundExceeded when more than `bound` cones would be examined.
std::optional<Cone> find_limit(const FinCategory& c, const Diagram& d,
                               std::uint64_t bound = kDefaultSearchBound);
// Whether the cone is a limit cone.
bool is_limit(const FinCategory& c, const Diagram& d, const Cone& cone,
              std::uint64_t bound = kDefaultSearchBound);

// A product of `copies` copies of y, found by counting |Hom(A, P)| against
// |Hom(A, y)|^copies before trying legs.
std::optional<Cone> find_power(const FinCategory& c, std::size_t y, std::size_t copies);

// --- Freyd and Cantor ------------------------------------------------------

struct FreydTarget {
  std::size_t object = 0;
  // A distinct parallel pair into `object`.
  std::size_t f = 0;
  std::size_t g = 0;
  bool power_found = false;
};

struct FreydReport {
  bool thin = true;
  std::size_t hom_count = 0;
  std::vector<FreydTarget> targets;
  // Non-thin and some target has the |Hom|-fold power.
  bool violation = false;
  // When a power exists: distinct tupling arrows into it for a sample of
  // choice vectors, and the lower bound 2^|Hom| on their number.
  std::size_t distinct_tuplings = 0;
};

FreydReport freyd_audit(const FinCategory& c);

struct FreydEnumeration {
  std::uint64_t categories = 0;
  std::uint64_t non_thin = 0;
  std::uint64_t violations = 0;
};

// Every valid category with at most max_objects objects and max_arrows
// arrows (labelled: distinct tables count separately), audited.
FreydEnumeration freyd_enumerate(std::size_t max_objects, std::size_t max_arrows,
                                 const std::function<void(const FinCategory&)>& visit = {});

struct CantorReport {
  std::size_t size = 0;
  std::uint64_t functions = 0;
  std::uint64_t surjective = 0;
  // Functions whose diagonal set was confirmed missing from their image.
  std::uint64_t diagonal_missed = 0;
};

// All functions x -> P(x). Throws ConfigError for |x| > 3.
CantorReport cantor_check(const HfSet& x);

// --- functors ---------------------------------------------------------------

struct Functor {
  std::vector<std::size_t> on_objects;
  std::vector<std::size_t> on_arrows;
};

struct NatTrans {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> components;
};

bool is_functor(const FinCategory& c, const FinCategory& d, const Functor& f);

inline constexpr std::uint64_t kDefaultFunctorCap = 100'000;

struct FunctorCategory {
  FinCategory category;
  std::vector<Functor> functors;
  // Arrow i of category is transformations[i].
  std::vector<NatTrans> transformations;
};

// Objects: all functors c -> d. Arrows: all natural transformations, composed
// componentwise. Throws BoundExceeded when more than `cap` candidate functors
// or transformations are examined.
FunctorCategory functor_category(const FinCategory& c, const FinCategory& d,
                                 std::uint64_t cap = kDefaultFunctorCap);

// --- size taxonomy ---------------------------------------------------------

struct SizeFlags {
  std::size_t n = 0;
  bool small = false;
  bool locally_small = false;
  bool tiny = false;
  bool large = false;
  bool very_large = false;
};

struct SizeReport {
  HfSet ob;
  HfSet hom;
  std::size_t ob_rank = 0;
  std::size_t hom_rank = 0;
  std::size_t max_hom_xy_rank = 0;
  std::vector<SizeFlags> tiers;
};

// Objects are encoded as their sets (von Neumann index otherwise); arrows as
// their graphs (von Neumann index otherwise). V^_n is V_{k_n}; one level
// above the top tier is V_{k_top + 1}.
SizeReport classify_size(const FinCategory& c, const TierConfig& t);

// --- hierarchy embedding and topos audit -----------------------------------

struct EmbeddingReport {
  std::size_t k1 = 0;
  std::size_t k2 = 0;
  bool functor = false;
  bool full = false;
  bool faithful = false;
  std::size_t terminals_checked = 0;
  bool preserves_terminal = false;
  std::size_t products_checked = 0;
  bool preserves_products = false;
};

// Inclusion Coll(V_k1) -> Coll(V_k2). Requires k1 < k2 <= 3.
EmbeddingReport check_embedding(std::size_t k1, std::size_t k2);

struct FeatureVerdict {
  std::string feature;
  bool holds = true;
  std::uint64_t checked = 0;
  // Object or arrow labels of the first failure.
  std::vector<std::string> witness;
};

struct ToposReport {
  std::vector<FeatureVerdict> features;
  // Object used as subobject classifier, when one was found.
  std::optional<std::string> classifier;
};

// Terminal object, binary products, equalizers, exponentials (tested against
// every A for which A x B exists) and a subobject classifier.
ToposReport topos_audit(const FinCategory& c,
                        std::uint64_t bound = kDefaultSearchBound);

}  // namespace hflab
