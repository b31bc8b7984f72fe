#include <gtest/gtest.h>

#include <random>

#include "../oracles/naive_eval.hpp"
#include "hflab/error.hpp"
#include "hflab/formula.hpp"
#include "hflab/model.hpp"

using namespace hflab;

namespace {

Formula F(std::string_view s) { return parse_formula(s); }
HfSet P(std::string_view s) { return parse_hfset(s); }

Structure V(std::size_t k) { return Structure(oracle::stage(k)); }

// Formulas over x, y, z without literals, so that relativizing never meets
// a term outside the structure.
Formula random_formula(std::mt19937& rng, int depth) {
  static const std::vector<std::string> vars{"x", "y", "z"};
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  auto v = [&] { return vars[pick(3)]; };
  switch (depth == 0 ? pick(2) : pick(7)) {
    case 0: return Formula::member(var(v()), var(v()));
    case 1: return Formula::equal(var(v()), var(v()));
    case 2: return Formula::negation(random_formula(rng, depth - 1));
    case 3: return Formula::conj(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 4: return Formula::disj(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 5: return Formula::forall(v(), random_formula(rng, depth - 1));
    default: return Formula::exists(v(), random_formula(rng, depth - 1));
  }
}

// Every assignment of `vars` to members of `pool`.
std::vector<Assignment> assignments(const std::set<std::string>& vars,
                                    const std::vector<HfSet>& pool) {
  std::vector<Assignment> out{{}};
  for (const auto& v : vars) {
    std::vector<Assignment> next;
    for (const auto& a : out) {
      for (const HfSet& x : pool) {
        auto b = a;
        b[v] = x;
        next.push_back(std::move(b));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST(Satisfies, Examples) {
  EXPECT_TRUE(satisfies(V(2), F("exists x. forall y. !(y in x)")));
  EXPECT_FALSE(satisfies(V(1), F("exists y. #0 in y")));
  EXPECT_TRUE(satisfies(V(2), F("exists y. #0 in y")));
}

TEST(Satisfies, Errors) {
  EXPECT_THROW(satisfies(V(2), F("x = x")), EvalError);
  EXPECT_THROW(satisfies(V(2), F("exists x. x in C0")), EvalError);
  const Structure tiered = V(2).with_tiers({{0, P("{{}}")}});
  EXPECT_TRUE(satisfies(tiered, F("exists x. x in C0")));
  EvalOptions tight;
  tight.budget = 10;
  EXPECT_THROW(satisfies(V(4), F("forall x. forall y. x = y | !(x = y)"), {}, tight),
               BudgetExceeded);
}

TEST(Satisfies, EmptyUniverse) {
  const Structure empty;
  EXPECT_TRUE(satisfies(empty, F("forall x. x in x")));
  EXPECT_FALSE(satisfies(empty, F("exists x. x = x")));
}

TEST(Satisfies, BoundedQuantifiersStayInUniverse) {
  // The only member of #2 = {{{}}} is {{}}, which lies outside V_1.
  EXPECT_TRUE(satisfies(V(1), F("forall x in #2. !(x = x)")));
  EXPECT_FALSE(satisfies(V(1), F("exists x in #2. x = x")));
  EXPECT_TRUE(satisfies(V(1), F("exists x in #1. x = #0")));
  EXPECT_FALSE(satisfies(Structure({P("{{}}")}), F("exists x in #1. x = x")));
}

TEST(Satisfies, AgreesWithNaiveOnAxioms) {
  for (std::size_t k = 0; k <= 3; ++k) {
    const oracle::World w{oracle::stage(k), {}};
    for (AxiomId id : all_axioms()) {
      EXPECT_EQ(satisfies(V(k), builtin(id)), oracle::eval(w, builtin(id), {}))
          << axiom_name(id) << " in V_" << k;
    }
  }
}

TEST(CheckClosed, WitnessesMatchNaiveOracle) {
  for (std::size_t k = 0; k <= 4; ++k) {
    const Structure m = V(k);
    const oracle::World w{oracle::stage(k), {}};
    for (AxiomId id : all_axioms()) {
      if (k == 4 && (id == AxiomId::kZ5 || id == AxiomId::kZ5Literal)) continue;
      const Verdict v = check_closed(m, builtin(id));
      const oracle::Outcome o = oracle::check(w, builtin(id));
      ASSERT_EQ(v.status == VerdictStatus::kHolds, o.holds) << axiom_name(id) << " V_" << k;
      if (!o.holds) {
        EXPECT_EQ(v.status, VerdictStatus::kFails);
        EXPECT_EQ(v.witness, o.witness) << axiom_name(id) << " V_" << k;
      }
    }
  }
}

TEST(CheckClosed, BudgetGivesSampledVerdict) {
  EvalOptions tight;
  tight.budget = 500;
  const Verdict v = check_closed(V(4), builtin(AxiomId::kZ1), tight);
  EXPECT_EQ(v.status, VerdictStatus::kSampled);
  EXPECT_TRUE(v.sampled_holds);
  EXPECT_GT(v.samples, 0u);
  EXPECT_LT(v.samples, 16u * 16u);
}

TEST(Audit, StageFour) {
  const AuditReport r = axiom_audit(V(4), default_battery());
  const HfSet e, r3 = P("{{{{}}}}");
  EXPECT_EQ(r.row(AxiomId::kZ1).verdict.status, VerdictStatus::kHolds);
  EXPECT_EQ(r.row(AxiomId::kZ2).verdict.status, VerdictStatus::kHolds);
  EXPECT_EQ(r.row(AxiomId::kZ2).instances.size(), default_battery().size());
  const Verdict& z3 = r.row(AxiomId::kZ3).verdict;
  EXPECT_EQ(z3.status, VerdictStatus::kFails);
  EXPECT_EQ(z3.witness, (Binding{{"x", e}, {"y", r3}}));
  EXPECT_EQ(r.row(AxiomId::kZ4).verdict.status, VerdictStatus::kHolds);
  EXPECT_EQ(r.row(AxiomId::kZ5).verdict.status, VerdictStatus::kFails);
  const Verdict& z6 = r.row(AxiomId::kZ6).verdict;
  EXPECT_EQ(z6.status, VerdictStatus::kFails);
  ASSERT_EQ(z6.witness.size(), 1u);
  EXPECT_EQ(z6.witness[0].second, r3);
  EXPECT_EQ(z6.witness[0].second.rank(), 3u);
  const Verdict& z7 = r.row(AxiomId::kZ7).verdict;
  EXPECT_EQ(z7.status, VerdictStatus::kFails);
  EXPECT_EQ(z7.witness.back().second, P("{{{}}}"));
  EXPECT_EQ(r.row(AxiomId::kF1Guarded).verdict.status, VerdictStatus::kHolds);
  const Verdict& f1 = r.row(AxiomId::kF1Literal).verdict;
  EXPECT_EQ(f1.status, VerdictStatus::kFails);
  EXPECT_EQ(f1.witness, (Binding{{"X", e}}));
  EXPECT_FALSE(r.all_headline_hold());
}

TEST(Audit, SingletonUniverse) {
  const AuditReport r = axiom_audit(V(1), default_battery());
  EXPECT_EQ(r.row(AxiomId::kZ1).verdict.status, VerdictStatus::kHolds);
  EXPECT_EQ(r.row(AxiomId::kZ3).verdict.witness, (Binding{{"x", HfSet()}, {"y", HfSet()}}));
  EXPECT_EQ(r.row(AxiomId::kZ5).verdict.status, VerdictStatus::kFails);
}

TEST(Audit, Z5FailsInEveryStage) {
  for (std::size_t k = 0; k <= 4; ++k) {
    EXPECT_EQ(check_closed(V(k), builtin(AxiomId::kZ5)).status, VerdictStatus::kFails) << k;
  }
}

TEST(Audit, HeadlineSwitchesWithLiteralFoundation) {
  AuditOptions opt;
  opt.literal_foundation = true;
  const AuditReport r = axiom_audit(V(2), default_battery(), opt);
  const auto h = r.headline();
  EXPECT_NE(std::find(h.begin(), h.end(), AxiomId::kF1Literal), h.end());
  EXPECT_EQ(std::find(h.begin(), h.end(), AxiomId::kF1Guarded), h.end());
}

TEST(Audit, EmptyBatteryIsNotExercised) {
  const AuditReport r = axiom_audit(V(2), {});
  EXPECT_EQ(r.row(AxiomId::kZ2).verdict.status, VerdictStatus::kNotExercised);
}

TEST(Audit, BatteryParsing) {
  const auto b = make_battery({"Z = Z", "W in W", "exists A in Q. A in P"});
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[0].id, "sep01");
  EXPECT_EQ(b[0].var, "Z");
  EXPECT_EQ(b[1].var, "W");
  EXPECT_EQ(b[2].var, "P");
  EXPECT_EQ(default_battery().size(), 12u);
}

TEST(Property, FailureWitnessesReEvaluateFalse) {
  for (std::size_t k = 1; k <= 4; ++k) {
    const Structure m = V(k);
    const AuditReport r = axiom_audit(m, default_battery());
    for (const AuditRow& row : r.rows) {
      if (row.verdict.status != VerdictStatus::kFails) continue;
      Formula closed = builtin(row.axiom);
      if (row.axiom == AxiomId::kZ2) {
        for (const BatteryItem& b : default_battery()) {
          if (b.id == row.witness_instance) closed = separation_instance(b.phi, b.var);
        }
      }
      auto [prefix, body] = universal_prefix(closed);
      ASSERT_EQ(prefix.size(), row.verdict.witness.size()) << axiom_name(row.axiom);
      EXPECT_FALSE(satisfies(m, body, to_assignment(row.verdict.witness)))
          << axiom_name(row.axiom) << " V_" << k;
    }
  }
}

TEST(Property, StructuralFacts) {
  // Z1 in transitive structures, Z2 and Z4 in complete ones, guarded
  // foundation everywhere.
  const auto v3 = oracle::stage(3);
  for (std::size_t mask = 0; mask < (1u << v3.size()); ++mask) {
    std::vector<HfSet> u;
    for (std::size_t i = 0; i < v3.size(); ++i) {
      if (mask >> i & 1) u.push_back(v3[i]);
    }
    const Structure m(u);
    EXPECT_EQ(check_closed(m, builtin(AxiomId::kF1Guarded)).status, VerdictStatus::kHolds);
    if (is_transitive(m.as_set())) {
      EXPECT_EQ(check_closed(m, builtin(AxiomId::kZ1)).status, VerdictStatus::kHolds);
    }
  }
  for (std::size_t k = 0; k <= 4; ++k) {
    const AuditReport r = axiom_audit(V(k), default_battery());
    EXPECT_EQ(r.row(AxiomId::kZ2).verdict.status, VerdictStatus::kHolds) << k;
    EXPECT_EQ(r.row(AxiomId::kZ4).verdict.status, VerdictStatus::kHolds) << k;
  }
}

TEST(Property, RelativizationLemma) {
  std::mt19937 rng(77);
  std::vector<Formula> battery;
  while (battery.size() < 50) battery.push_back(freshen(random_formula(rng, 3)));
  const Structure m = V(4);
  for (const HfSet& x : m.universe()) {
    const Structure sub = m.induced_by(x);
    const std::vector<HfSet> pool(x.members().begin(), x.members().end());
    for (const Formula& f : battery) {
      const Formula r = relativize(f, literal(x));
      for (const Assignment& a : assignments(free_vars(f), pool)) {
        ASSERT_EQ(satisfies(m, r, a), satisfies(sub, f, a)) << render(f) << " X=" << x.str();
      }
    }
  }
}

TEST(Property, RelativizedEvaluationIsVacuousOutsideBound) {
  const Structure m = V(3);
  const HfSet x = P("{{}}");
  EXPECT_TRUE(satisfies_relativized(m, F("!(y = y)"), literal(x), {{"y", P("{{{}}}")}}));
  EXPECT_FALSE(satisfies_relativized(m, F("!(y = y)"), literal(x), {{"y", HfSet()}}));
}
