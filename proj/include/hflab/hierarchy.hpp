#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hflab/formula.hpp"
#include "hflab/hfset.hpp"
#include "hflab/model.hpp"

namespace hflab {

// V_5 has 65536 members; V_6 would have 2^65536.
inline constexpr std::size_t kMaxStage = 5;
// Largest stage allowed in audits that nest three or more quantifiers.
inline constexpr std::size_t kMaxAuditStage = 4;

struct Stage {
  std::size_t k = 0;
  Structure carrier;
};

// Cached and thread-safe. Throws ConfigError for k > kMaxStage.
const Stage& build_stage(std::size_t k);

// The ordinal members of V_k, which is the von Neumann natural k.
HfSet ordinals_of(const Stage& s);

// Strictly increasing stage indices k_0 < k_1 < ... emulating the constants
// C_0, C_1, ...
class TierConfig {
 public:
  explicit TierConfig(std::vector<std::size_t> ks);
  // "2,3,4"
  static TierConfig parse(std::string_view text);

  const std::vector<std::size_t>& ks() const { return ks_; }
  std::size_t size() const { return ks_.size(); }
  std::size_t k(std::size_t n) const;
  std::string str() const;

  // V_{k_n}, with C_m interpreted as V_{k_m} for every m < n.
  Structure carrier(std::size_t n) const;
  // Structure in which formulas about tier n are evaluated: carrier(n + 1),
  // or, at the top tier, V_{k_n + 1} (V_{k_n} when k_n is the largest
  // buildable stage). C_0..C_n are interpreted.
  Structure evaluation_structure(std::size_t n) const;

 private:
  std::vector<std::size_t> ks_;
};

struct A2Tier {
  std::size_t n = 0;
  std::size_t k = 0;
  bool transitive = false;
  bool complete = false;
  AuditReport audit;
};

// Completeness plus the full axiom audit of every tier's carrier. Throws
// ConfigError for tiers above kMaxAuditStage.
std::vector<A2Tier> check_A2(const TierConfig& t,
                             const std::vector<BatteryItem>& battery,
                             const AuditOptions& options = {});

struct A3Pair {
  std::size_t n = 0;
  std::size_t k_lower = 0;
  std::size_t k_upper = 0;
  EfVerdict verdict;
};

// elementary_d on each consecutive pair of carriers.
std::vector<A3Pair> check_A3(const TierConfig& t, std::size_t d,
                             std::size_t max_params, const EfOptions& options = {});

struct CollectionResult {
  HfSet collection;
  // Whether the result is itself a member of the evaluation structure.
  bool member_of_next = false;
  std::size_t evaluated_in_k = 0;
};

// {Y in carrier(n) : evaluation_structure(n) |= f(Y)}. f must be safe above
// n, with literals of rank at most k_n, and have at most one free variable
// (named `var`). Throws ConfigError otherwise or when n is out of range.
CollectionResult collection_build(const TierConfig& t, std::size_t n,
                                  const Formula& f, const std::string& var = "X",
                                  const EvalOptions& options = {});

struct A4Row {
  std::size_t n = 0;
  std::string id;
  std::string predicate;
  CollectionResult result;
  bool subset_of_carrier = false;
};

// collection_build for every battery predicate at every tier.
std::vector<A4Row> check_A4(const TierConfig& t,
                            const std::vector<BatteryItem>& battery,
                            const EvalOptions& options = {});

inline constexpr std::uint64_t kDefaultA5Cap = 200'000;

struct A5RankRow {
  std::uint64_t functions = 0;
  std::uint64_t failures = 0;
};

struct A5Report {
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t functions = 0;
  std::uint64_t failures = 0;
  // Keyed by rank of the range.
  std::map<std::size_t, A5RankRow> by_range_rank;
  // Least failing function graph and its range.
  std::optional<HfSet> witness;
  std::optional<HfSet> witness_range;
  // True when the cap stopped the enumeration early.
  bool sampled = false;
};

// Every function F with dom F in carrier(n) and values in carrier(n),
// checked for rng F in carrier(n). Functions are generated from their
// domain and values rather than filtered out of a larger stage.
A5Report check_A5(const TierConfig& t, std::size_t n,
                  std::uint64_t cap = kDefaultA5Cap);

struct LemmaRow {
  std::size_t n = 0;
  std::size_t k = 0;
  bool equal = false;
  std::size_t built_size = 0;
  std::size_t carrier_size = 0;
};

using CollectionBuilder = std::function<CollectionResult(
    const TierConfig&, std::size_t, const Formula&)>;

// collection_build(t, n, "X = X") == carrier(n) at each tier. The builder can
// be replaced to test the check itself.
std::vector<LemmaRow> universe_lemma_check(const TierConfig& t,
                                           const CollectionBuilder& builder = {});

}  // namespace hflab
