#include <gtest/gtest.h>

#include "../oracles/naive_eval.hpp"
#include "hflab/error.hpp"
#include "hflab/hierarchy.hpp"

using namespace hflab;

namespace {

Formula F(std::string_view s) { return parse_formula(s); }

}  // namespace

TEST(Stage, SizesAndMembers) {
  const std::vector<std::size_t> sizes{0, 1, 2, 4, 16, 65536};
  for (std::size_t k = 0; k <= 5; ++k) {
    EXPECT_EQ(build_stage(k).carrier.size(), sizes[k]);
  }
  for (std::size_t k = 0; k <= 4; ++k) {
    EXPECT_EQ(build_stage(k).carrier.universe(), oracle::stage(k)) << k;
  }
  std::vector<std::string> v3;
  for (const HfSet& x : build_stage(3).carrier.universe()) v3.push_back(x.str());
  EXPECT_EQ(v3, (std::vector<std::string>{"{}", "{{}}", "{{{}}}", "{{},{{}}}"}));
  EXPECT_THROW(build_stage(6), ConfigError);
  EXPECT_EQ(&build_stage(4), &build_stage(4));
}

TEST(Stage, TransitiveCompleteRankBounded) {
  for (std::size_t k = 0; k <= 4; ++k) {
    const HfSet v = build_stage(k).carrier.as_set();
    EXPECT_TRUE(is_transitive(v));
    EXPECT_TRUE(is_complete(v));
    for (const HfSet& x : v.members()) EXPECT_LT(x.rank(), k);
  }
  // V_5 is too wide for the completeness bound but its members are still
  // rank-bounded.
  for (const HfSet& x : build_stage(5).carrier.universe()) ASSERT_LT(x.rank(), 5u);
}

TEST(Stage, Ordinals) {
  EXPECT_EQ(ordinals_of(build_stage(0)), HfSet());
  EXPECT_EQ(ordinals_of(build_stage(3)).str(), "{{},{{}},{{},{{}}}}");
  for (std::size_t k = 0; k <= 4; ++k) {
    const HfSet o = ordinals_of(build_stage(k));
    EXPECT_EQ(o, von_neumann(k));
    EXPECT_EQ(o.size(), k);
    EXPECT_TRUE(is_ordinal(o));
    EXPECT_FALSE(build_stage(k).carrier.contains(o));
    EXPECT_TRUE(build_stage(k + 1).carrier.contains(o));
  }
}

TEST(Tiers, Validation) {
  EXPECT_EQ(TierConfig::parse("2,3,4").ks(), (std::vector<std::size_t>{2, 3, 4}));
  EXPECT_EQ(TierConfig::parse("2, 3").str(), "2,3");
  EXPECT_THROW(TierConfig::parse("3,3"), ConfigError);
  EXPECT_THROW(TierConfig::parse("3,2"), ConfigError);
  EXPECT_THROW(TierConfig::parse("2,6"), ConfigError);
  EXPECT_THROW(TierConfig::parse("2,x"), ConfigError);
  EXPECT_THROW(TierConfig::parse(""), ConfigError);
}

TEST(Tiers, CarrierInterpretsLowerConstants) {
  const TierConfig t({2, 3, 4});
  const Structure c = t.carrier(2);
  EXPECT_EQ(c.size(), 16u);
  EXPECT_EQ(c.tiers().size(), 2u);
  EXPECT_EQ(c.tiers().at(0), build_stage(2).carrier.as_set());
  const Structure e = t.evaluation_structure(1);
  EXPECT_EQ(e.size(), 16u);
  EXPECT_EQ(e.tiers().size(), 2u);
  // The top tier is evaluated one stage up.
  EXPECT_EQ(t.evaluation_structure(2).size(), 65536u);
  EXPECT_TRUE(satisfies(e, F("C0 in C1")));
}

TEST(A2, CompletenessAndAudits) {
  const auto rows = check_A2(TierConfig({2, 3, 4}), default_battery());
  ASSERT_EQ(rows.size(), 3u);
  for (const A2Tier& r : rows) {
    EXPECT_TRUE(r.transitive);
    EXPECT_TRUE(r.complete);
    // Each audit agrees with the naive oracle axiom by axiom.
    const oracle::World w{oracle::stage(r.k), {}};
    for (const AuditRow& row : r.audit.rows) {
      if (row.axiom == AxiomId::kZ2) continue;
      if (r.k == 4 && (row.axiom == AxiomId::kZ5 || row.axiom == AxiomId::kZ5Literal)) continue;
      const auto o = oracle::check(w, builtin(row.axiom));
      EXPECT_EQ(row.verdict.status == VerdictStatus::kHolds, o.holds) << axiom_name(row.axiom);
      if (!o.holds) EXPECT_EQ(row.verdict.witness, o.witness);
    }
  }
  EXPECT_THROW(check_A2(TierConfig({4, 5}), default_battery()), ConfigError);
}

TEST(A2, EmptyBatteryNotExercised) {
  for (const A2Tier& r : check_A2(TierConfig({2, 3}), {})) {
    EXPECT_EQ(r.audit.row(AxiomId::kZ2).verdict.status, VerdictStatus::kNotExercised);
  }
}

TEST(A3, Examples) {
  const auto a = check_A3(TierConfig({1, 2}), 1, 1);
  ASSERT_EQ(a.size(), 1u);
  ASSERT_FALSE(a[0].verdict.holds);
  EXPECT_EQ(render(*a[0].verdict.witness), "exists y. a in y");
  EXPECT_EQ(a[0].verdict.params, (Binding{{"a", HfSet()}}));
  EXPECT_TRUE(check_A3(TierConfig({2, 3}), 0, 1)[0].verdict.holds);
}

TEST(A3, FailsAtDepthOneForEveryFinitePair) {
  for (const auto& ks : std::vector<std::vector<std::size_t>>{{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}}) {
    const auto a = check_A3(TierConfig(ks), 1, 1);
    ASSERT_FALSE(a[0].verdict.holds) << ks[0] << "," << ks[1];
    EXPECT_TRUE(a[0].verdict.witness.has_value());
  }
}

TEST(A4, Examples) {
  const TierConfig t({2, 3, 4});
  for (std::size_t n = 0; n < 3; ++n) {
    const CollectionResult all = collection_build(t, n, F("X = X"));
    EXPECT_EQ(all.collection, build_stage(t.k(n)).carrier.as_set());
    EXPECT_TRUE(all.member_of_next);
    EXPECT_EQ(collection_build(t, n, F("!(X = X)")).collection, HfSet());
  }
  const TierConfig t34({3, 4});
  EXPECT_EQ(collection_build(t34, 0, defs::is_ordinal("X")).collection, von_neumann(3));
}

TEST(A4, SafetyAndRangeErrors) {
  const TierConfig t({2, 3, 4});
  EXPECT_THROW(collection_build(t, 0, F("X in C1")), ConfigError);
  EXPECT_NO_THROW(collection_build(t, 1, F("X in C1")));
  EXPECT_THROW(collection_build(t, 0, F("X in Y")), ConfigError);
  EXPECT_THROW(collection_build(t, 0, F("X = #4")), ConfigError);
  EXPECT_THROW(collection_build(t, 3, F("X = X")), ConfigError);
  EXPECT_EQ(collection_build(t, 0, F("Y = Y"), "Y").collection.size(), 2u);
}

TEST(A4, BatteryResultsAreSubsetsAndMembers) {
  const TierConfig t({2, 3, 4});
  const auto rows = check_A4(t, default_battery());
  EXPECT_EQ(rows.size(), 3 * default_battery().size());
  for (const A4Row& r : rows) {
    EXPECT_TRUE(r.subset_of_carrier) << r.id;
    EXPECT_TRUE(r.result.member_of_next) << r.id;
    // Independent recomputation with the naive evaluator.
    const Structure e = t.evaluation_structure(r.n);
    const oracle::World w{e.universe(), e.tiers()};
    const auto it = std::find_if(default_battery().begin(), default_battery().end(),
                                 [&](const BatteryItem& b) { return b.id == r.id; });
    std::vector<HfSet> expect;
    for (const HfSet& y : build_stage(t.k(r.n)).carrier.universe()) {
      if (oracle::eval(w, it->phi, {{it->var, y}})) expect.push_back(y);
    }
    EXPECT_EQ(r.result.collection, HfSet::of(expect)) << r.id << " n=" << r.n;
  }
}

// Functions with domain in V_k and values in V_k, counted directly: the
// range leaves V_k exactly when some value has rank k - 1.
TEST(A5, MatchesDirectCount) {
  for (std::size_t k : {2, 3}) {
    const auto vk = oracle::stage(k);
    std::uint64_t functions = 0, failures = 0;
    for (const HfSet& dom : vk) {
      const std::size_t n = dom.size();
      std::vector<std::size_t> idx(n, 0);
      while (true) {
        ++functions;
        bool top = false;
        for (std::size_t i : idx) top |= vk[i].rank() + 1 == k;
        failures += top;
        std::size_t j = 0;
        while (j < n && ++idx[j] == vk.size()) idx[j++] = 0;
        if (j == n) break;
      }
    }
    const A5Report r = check_A5(TierConfig({k, k + 1}), 0);
    EXPECT_EQ(r.functions, functions) << k;
    EXPECT_EQ(r.failures, failures) << k;
    EXPECT_FALSE(r.sampled);
    for (const auto& [rank, row] : r.by_range_rank) {
      if (rank < k) EXPECT_EQ(row.failures, 0u);
      if (rank == k) EXPECT_EQ(row.failures, row.functions);
    }
  }
}

TEST(A5, WitnessAtStageThree) {
  const A5Report r = check_A5(TierConfig({3, 4}), 0);
  EXPECT_EQ(r.functions, 25u);
  EXPECT_EQ(r.failures, 16u);
  ASSERT_TRUE(r.witness.has_value());
  const FnView f = fn_view(*r.witness);
  EXPECT_EQ(f.range, *r.witness_range);
  EXPECT_EQ(r.witness_range->rank(), 3u);
  EXPECT_FALSE(build_stage(3).carrier.contains(f.range));
  EXPECT_TRUE(build_stage(3).carrier.contains(f.domain));
  // A single pair from {} to a rank-2 member also fails.
  const HfSet m = von_neumann(2);
  EXPECT_EQ(fn_view(singleton(ordered_pair(HfSet(), m))).range.rank(), 3u);
  // The empty function always passes.
  EXPECT_TRUE(build_stage(3).carrier.contains(fn_view(HfSet()).range));
}

TEST(A5, CapMarksSampled) {
  const A5Report r = check_A5(TierConfig({4, 5}), 0, 1000);
  EXPECT_TRUE(r.sampled);
  EXPECT_LE(r.functions, 1000u);
}

TEST(Lemma, HoldsAndDetectsMutation) {
  for (const char* cfg : {"2,3", "2,3,4"}) {
    for (const LemmaRow& row : universe_lemma_check(TierConfig::parse(cfg))) {
      EXPECT_TRUE(row.equal) << cfg << " n=" << row.n;
      EXPECT_EQ(row.built_size, row.carrier_size);
    }
  }
  const CollectionBuilder lossy = [](const TierConfig& t, std::size_t n, const Formula& f) {
    CollectionResult r = collection_build(t, n, f);
    std::vector<HfSet> ms(r.collection.members().begin(), r.collection.members().end());
    if (!ms.empty()) ms.pop_back();
    r.collection = HfSet::of(ms);
    return r;
  };
  bool any_failed = false;
  for (const LemmaRow& row : universe_lemma_check(TierConfig({2, 3}), lossy)) {
    any_failed |= !row.equal;
  }
  EXPECT_TRUE(any_failed);
}
