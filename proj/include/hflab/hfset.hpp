#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hflab {

// Default cardinality guard for powerset and cartesian product.
inline constexpr std::size_t kDefaultSizeBound = 20;

// A hereditarily finite set in canonical form.
//
// Members are kept sorted by Ackermann order and deduplicated, so two HfSets
// are extensionally equal exactly when their member sequences are equal.
// Values are immutable and share structure; copying is cheap.
class HfSet {
 public:
  // The empty set.
  HfSet();

  // Canonicalizes an arbitrary member list (any order, duplicates allowed).
  static HfSet of(std::vector<HfSet> members);
  static HfSet of(std::initializer_list<HfSet> members) {
    return of(std::vector<HfSet>(members));
  }
  // Trusted fast path: members must already be strictly increasing.
  static HfSet from_sorted(std::vector<HfSet> members);

  std::span<const HfSet> members() const;
  std::size_t size() const { return members().size(); }
  bool empty() const { return members().empty(); }
  bool contains(const HfSet& x) const;

  // Ackermann code when it fits in 64 bits.
  std::optional<std::uint64_t> code() const;
  // Throws CodeOverflow when the code does not fit.
  std::uint64_t ackermann() const;

  std::size_t rank() const;
  std::size_t hash() const;

  // Brace notation, members in canonical order: "{{},{{}}}".
  std::string str() const;

  friend bool operator==(const HfSet& a, const HfSet& b);
  friend std::strong_ordering operator<=>(const HfSet& a, const HfSet& b);

 private:
  struct Node;
  static std::shared_ptr<const Node> make_node(std::vector<HfSet> members);
  static const std::shared_ptr<const Node>& empty_node();
  explicit HfSet(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct HfSetHash {
  std::size_t operator()(const HfSet& x) const { return x.hash(); }
};

// decode(ackermann(x)) == x.
HfSet decode(std::uint64_t code);

// Parses "{...}" brace notation or "#n". Whitespace between tokens is allowed.
HfSet parse_hfset(std::string_view text);
// Parses one HF literal starting at `pos`, advancing `pos` past it.
HfSet parse_hfset_prefix(std::string_view text, std::size_t& pos);

// --- constructors -----------------------------------------------------------

HfSet pair_set(const HfSet& x, const HfSet& y);
HfSet singleton(const HfSet& x);
// Kuratowski pair {{x},{x,y}}.
HfSet ordered_pair(const HfSet& x, const HfSet& y);
HfSet successor(const HfSet& x);
HfSet binary_union(const HfSet& x, const HfSet& y);
HfSet binary_intersection(const HfSet& x, const HfSet& y);
HfSet set_difference(const HfSet& x, const HfSet& y);
// von Neumann natural n.
HfSet von_neumann(std::size_t n);

bool is_subset(const HfSet& x, const HfSet& y);

// Union of the members of x.
HfSet big_union(const HfSet& x);
HfSet powerset(const HfSet& x, std::size_t bound = kDefaultSizeBound);
HfSet separation(const HfSet& x, const std::function<bool(const HfSet&)>& pred);
HfSet cartesian_product(const HfSet& x, const HfSet& y,
                        std::size_t bound = kDefaultSizeBound);
// Same set, built literally as {p in P(P(x u y)) | p = (a,b), a in x, b in y}.
// Only feasible for |x u y| <= 4.
HfSet cartesian_product_by_filtration(const HfSet& x, const HfSet& y);

// If p is a Kuratowski pair, its coordinates.
std::optional<std::pair<HfSet, HfSet>> as_ordered_pair(const HfSet& p);

bool is_transitive(const HfSet& x);
bool is_ordinal(const HfSet& x);
// Transitive, and every subset of a member is a member. Throws BoundExceeded
// if some member is larger than `bound`.
bool is_complete(const HfSet& x, std::size_t bound = kDefaultSizeBound);

struct FnView {
  HfSet graph;
  HfSet domain;
  HfSet range;

  // Value at `arg`; nullopt outside the domain.
  std::optional<HfSet> apply(const HfSet& arg) const;
};

// Throws NotAFunction.
FnView fn_view(const HfSet& x);
std::optional<FnView> try_fn_view(const HfSet& x);
bool is_function(const HfSet& x);

struct Classification {
  bool transitive = false;
  bool complete = false;
  bool ordinal = false;
  bool function = false;
};

Classification classify(const HfSet& x, std::size_t bound = kDefaultSizeBound);

}  // namespace hflab

template <>
struct std::hash<hflab::HfSet> {
  std::size_t operator()(const hflab::HfSet& x) const { return x.hash(); }
};
