#include "hflab/hierarchy.hpp"

#include <charconv>
#include <mutex>

#include "hflab/error.hpp"

namespace hflab {

namespace {

std::size_t stage_size(std::size_t k) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < k; ++i) n = std::size_t{1} << n;
  return n;
}

}  // namespace

const Stage& build_stage(std::size_t k) {
  if (k > kMaxStage) {
    throw ConfigError("stage V_" + std::to_string(k) + " is too large (max V_" +
                      std::to_string(kMaxStage) + ")");
  }
  static std::mutex mu;
  static std::vector<HfSet> elems;  // V_5 in Ackermann order; V_k is a prefix.
  static std::map<std::size_t, std::unique_ptr<Stage>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(k); it != cache.end()) return *it->second;
  const std::size_t size = stage_size(k);
  // Member i of V_k has code i, so its members are the earlier elements at
  // the set bits of i.
  while (elems.size() < size) {
    const std::size_t i = elems.size();
    std::vector<HfSet> ms;
    for (std::size_t j = 0; (i >> j) != 0; ++j) {
      if ((i >> j) & 1) ms.push_back(elems[j]);
    }
    elems.push_back(HfSet::from_sorted(std::move(ms)));
  }
  auto stage = std::make_unique<Stage>();
  stage->k = k;
  stage->carrier = Structure(
      std::vector<HfSet>(elems.begin(), elems.begin() + static_cast<long>(size)));
  return *cache.emplace(k, std::move(stage)).first->second;
}

HfSet ordinals_of(const Stage& s) {
  std::vector<HfSet> out;
  for (const HfSet& x : s.carrier.universe()) {
    if (is_ordinal(x)) out.push_back(x);
  }
  return HfSet::from_sorted(std::move(out));
}

TierConfig::TierConfig(std::vector<std::size_t> ks) : ks_(std::move(ks)) {
  if (ks_.empty()) throw ConfigError("tier configuration is empty");
  for (std::size_t i = 0; i < ks_.size(); ++i) {
    if (ks_[i] > kMaxStage) {
      throw ConfigError("tier stage " + std::to_string(ks_[i]) + " exceeds V_" +
                        std::to_string(kMaxStage));
    }
    if (i > 0 && ks_[i] <= ks_[i - 1]) {
      throw ConfigError("tier stages must be strictly increasing: " + str());
    }
  }
}

TierConfig TierConfig::parse(std::string_view text) {
  std::vector<std::size_t> ks;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(pos, end - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw ConfigError("bad tier list '" + std::string(text) + "'");
    }
    ks.push_back(value);
    pos = end + 1;
  }
  return TierConfig(std::move(ks));
}

std::size_t TierConfig::k(std::size_t n) const {
  if (n >= ks_.size()) {
    throw ConfigError("tier " + std::to_string(n) + " out of range for " + str());
  }
  return ks_[n];
}

std::string TierConfig::str() const {
  std::string out;
  for (std::size_t i = 0; i < ks_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(ks_[i]);
  }
  return out;
}

Structure TierConfig::carrier(std::size_t n) const {
  std::map<std::size_t, HfSet> consts;
  for (std::size_t m = 0; m < n; ++m) consts[m] = build_stage(ks_[m]).carrier.as_set();
  return build_stage(k(n)).carrier.with_tiers(std::move(consts));
}

Structure TierConfig::evaluation_structure(std::size_t n) const {
  std::map<std::size_t, HfSet> consts;
  for (std::size_t m = 0; m <= n; ++m) consts[m] = build_stage(k(m)).carrier.as_set();
  const std::size_t kk =
      n + 1 < ks_.size() ? ks_[n + 1] : std::min(ks_[n] + 1, kMaxStage);
  return build_stage(kk).carrier.with_tiers(std::move(consts));
}

std::vector<A2Tier> check_A2(const TierConfig& t,
                             const std::vector<BatteryItem>& battery,
                             const AuditOptions& options) {
  for (std::size_t k : t.ks()) {
    if (k > kMaxAuditStage) {
      throw ConfigError("V_" + std::to_string(k) +
                        " is too large for a quantifier-heavy audit (max V_" +
                        std::to_string(kMaxAuditStage) + ")");
    }
  }
  std::vector<A2Tier> out;
  for (std::size_t n = 0; n < t.size(); ++n) {
    A2Tier row;
    row.n = n;
    row.k = t.k(n);
    const Structure c = t.carrier(n);
    const HfSet as_set = c.as_set();
    row.transitive = is_transitive(as_set);
    row.complete = is_complete(as_set, 1u << 16);
    row.audit = axiom_audit(c, battery, options);
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<A3Pair> check_A3(const TierConfig& t, std::size_t d,
                             std::size_t max_params, const EfOptions& options) {
  std::vector<A3Pair> out;
  for (std::size_t n = 0; n + 1 < t.size(); ++n) {
    A3Pair p;
    p.n = n;
    p.k_lower = t.k(n);
    p.k_upper = t.k(n + 1);
    p.verdict = elementary_d(build_stage(p.k_lower).carrier,
                             build_stage(p.k_upper).carrier, d, max_params, options);
    out.push_back(std::move(p));
  }
  return out;
}

CollectionResult collection_build(const TierConfig& t, std::size_t n,
                                  const Formula& f, const std::string& var,
                                  const EvalOptions& options) {
  const std::size_t kn = t.k(n);
  if (!is_safe_above(f, n, kn)) {
    throw ConfigError("formula is not safe above tier " + std::to_string(n) + ": " +
                      render(f));
  }
  for (const auto& v : free_vars(f)) {
    if (v != var) throw ConfigError("unexpected free variable '" + v + "'");
  }
  const Structure eval = t.evaluation_structure(n);
  std::vector<HfSet> members;
  Assignment asg;
  for (const HfSet& y : build_stage(kn).carrier.universe()) {
    asg[var] = y;
    if (satisfies(eval, f, asg, options)) members.push_back(y);
  }
  CollectionResult out;
  out.collection = HfSet::from_sorted(std::move(members));
  out.member_of_next = eval.contains(out.collection);
  out.evaluated_in_k = eval.size() == 0 ? 0 : eval.universe().back().rank() + 1;
  return out;
}

std::vector<A4Row> check_A4(const TierConfig& t,
                            const std::vector<BatteryItem>& battery,
                            const EvalOptions& options) {
  std::vector<A4Row> out;
  for (std::size_t n = 0; n < t.size(); ++n) {
    const HfSet c = build_stage(t.k(n)).carrier.as_set();
    for (const auto& item : battery) {
      A4Row row;
      row.n = n;
      row.id = item.id;
      row.predicate = render(item.phi);
      row.result = collection_build(t, n, item.phi, item.var, options);
      row.subset_of_carrier = is_subset(row.result.collection, c);
      out.push_back(std::move(row));
    }
  }
  return out;
}

A5Report check_A5(const TierConfig& t, std::size_t n, std::uint64_t cap) {
  A5Report r;
  r.n = n;
  r.k = t.k(n);
  const auto& u = build_stage(r.k).carrier.universe();
  for (const HfSet& dom : u) {
    const auto args = dom.members();
    std::vector<std::size_t> idx(args.size(), 0);
    while (true) {
      if (r.functions >= cap) {
        r.sampled = true;
        return r;
      }
      std::vector<HfSet> graph;
      std::vector<HfSet> values;
      for (std::size_t i = 0; i < args.size(); ++i) {
        graph.push_back(ordered_pair(args[i], u[idx[i]]));
        values.push_back(u[idx[i]]);
      }
      const HfSet rng = HfSet::of(std::move(values));
      const bool ok = rng.rank() < r.k;
      ++r.functions;
      auto& row = r.by_range_rank[rng.rank()];
      ++row.functions;
      if (!ok) {
        ++r.failures;
        ++row.failures;
        HfSet g = HfSet::of(std::move(graph));
        if (!r.witness || g < *r.witness) {
          r.witness = g;
          r.witness_range = rng;
        }
      }
      std::size_t pos = idx.size();
      while (pos > 0 && ++idx[pos - 1] == u.size()) {
        idx[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  }
  return r;
}

std::vector<LemmaRow> universe_lemma_check(const TierConfig& t,
                                           const CollectionBuilder& builder) {
  const Formula everything = parse_formula("X = X");
  std::vector<LemmaRow> out;
  for (std::size_t n = 0; n < t.size(); ++n) {
    CollectionResult res = builder ? builder(t, n, everything)
                                   : collection_build(t, n, everything);
    const HfSet c = build_stage(t.k(n)).carrier.as_set();
    out.push_back({n, t.k(n), res.collection == c, res.collection.size(), c.size()});
  }
  return out;
}

}  // namespace hflab
