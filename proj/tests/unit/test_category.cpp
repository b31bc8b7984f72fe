#include <gtest/gtest.h>

#include <map>

#include "../oracles/category_oracle.hpp"
#include "hflab/category.hpp"
#include "hflab/error.hpp"

using namespace hflab;

namespace {

HfSet P(std::string_view s) { return parse_hfset(s); }

std::size_t object_with_set(const FinCategory& c, const HfSet& x) {
  for (std::size_t i = 0; i < c.num_objects(); ++i) {
    if (c.object_set(i) == x) return i;
  }
  return npos;
}

// One object, identity e and arrows a, b, with products given by `table`
// over indices {e, a, b}.
FinCategory magma_category(const std::array<std::array<int, 2>, 2>& table) {
  FinCategory c;
  c.add_object("*");
  const std::size_t e = c.add_arrow({0, 0, "e", std::nullopt}, true);
  const std::size_t a = c.add_arrow({0, 0, "a", std::nullopt});
  const std::size_t b = c.add_arrow({0, 0, "b", std::nullopt});
  const std::size_t ab[2] = {a, b};
  for (std::size_t x : {e, a, b}) {
    c.set_compose(x, e, x);
    if (x != e) c.set_compose(e, x, x);
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) c.set_compose(ab[i], ab[j], ab[table[i][j]]);
  }
  return c;
}

}  // namespace

TEST(Validate, TerminalCategory) {
  EXPECT_TRUE(validate(discrete_category(1)).holds);
  EXPECT_TRUE(validate(chain_category(4)).holds);
  EXPECT_TRUE(validate(parallel_pair_category()).holds);
  EXPECT_TRUE(validate(cospan_category()).holds);
}

TEST(Validate, NonAssociativeTableGivesWitness) {
  // Search all two-element tables for one whose associativity fails, by
  // direct evaluation, then compare with validate.
  int found = 0;
  for (int code = 0; code < 16; ++code) {
    std::array<std::array<int, 2>, 2> t{};
    for (int i = 0; i < 4; ++i) t[i / 2][i % 2] = code >> i & 1;
    bool assoc = true;
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        for (int z = 0; z < 2; ++z) assoc &= t[x][t[y][z]] == t[t[x][y]][z];
      }
    }
    const FinCategory c = magma_category(t);
    const LawVerdict v = validate(c);
    ASSERT_EQ(v.holds, assoc) << code;
    if (assoc) continue;
    ++found;
    EXPECT_EQ(v.law, "associativity");
    ASSERT_EQ(v.witness.size(), 3u);
    const std::size_t f = v.witness[0], g = v.witness[1], h = v.witness[2];
    EXPECT_NE(c.compose(h, c.compose(g, f)), c.compose(c.compose(h, g), f));
  }
  EXPECT_GT(found, 0);
}

TEST(Validate, MalformedTables) {
  FinCategory missing_id;
  missing_id.add_object("x");
  missing_id.add_arrow({0, 0, "f", std::nullopt});
  EXPECT_THROW(validate(missing_id), ConfigError);

  FinCategory partial;
  partial.add_object("x");
  partial.add_arrow({0, 0, "e", std::nullopt}, true);
  partial.add_arrow({0, 0, "f", std::nullopt});
  EXPECT_THROW(validate(partial), ConfigError);
}

TEST(Coll, Counts) {
  const FinCategory c2 = build_coll(2), c3 = build_coll(3);
  EXPECT_EQ(c2.num_objects(), 2u);
  EXPECT_EQ(c2.num_arrows(), oracle::coll_arrow_count({0, 1}));
  EXPECT_EQ(c2.num_arrows(), 3u);
  EXPECT_EQ(c3.num_objects(), 4u);
  EXPECT_EQ(c3.num_arrows(), oracle::coll_arrow_count({0, 1, 1, 2}));
  EXPECT_EQ(c3.num_arrows(), 18u);
  EXPECT_TRUE(validate(c2).holds);
  EXPECT_TRUE(validate(c3).holds);
  EXPECT_THROW(build_coll(4), ConfigError);
}

TEST(Coll, ArrowsAreFunctionsComposedAsFunctions) {
  const FinCategory c = build_coll(3);
  for (std::size_t f = 0; f < c.num_arrows(); ++f) {
    const Arrow& a = c.arrow(f);
    ASSERT_TRUE(a.graph.has_value());
    const FnView fv = fn_view(*a.graph);
    EXPECT_EQ(fv.domain, *c.object_set(a.dom));
    EXPECT_TRUE(is_subset(fv.range, *c.object_set(a.cod)));
    for (std::size_t g = 0; g < c.num_arrows(); ++g) {
      if (c.arrow(g).dom != a.cod) continue;
      const FnView gv = fn_view(*c.arrow(g).graph);
      const FnView hv = fn_view(*c.arrow(c.compose(g, f)).graph);
      for (const HfSet& x : fv.domain.members()) {
        EXPECT_EQ(hv.apply(x), gv.apply(*fv.apply(x)));
      }
    }
  }
}

TEST(Thin, Examples) {
  EXPECT_TRUE(is_thin(chain_category(5)));
  EXPECT_FALSE(is_thin(parallel_pair_category()));
  EXPECT_TRUE(is_thin(build_coll(2)));
  EXPECT_FALSE(is_thin(build_coll(3)));
}

TEST(Limits, TerminalOfColl2) {
  const FinCategory c = build_coll(2);
  const auto t = find_limit(c, empty_diagram());
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(c.object_set(t->apex), P("{{}}"));
  EXPECT_TRUE(oracle::terminal_by_count(c, t->apex));
}

TEST(Limits, ProductsInColl3AgreeWithCounting) {
  const FinCategory c = build_coll(3);
  const std::size_t two_a = object_with_set(c, P("{{},{{}}}"));
  // The only 2-element object squared has no 4-element apex.
  EXPECT_FALSE(find_limit(c, discrete_diagram({two_a, two_a})).has_value());
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    for (std::size_t y = 0; y < c.num_objects(); ++y) {
      const auto cone = find_limit(c, discrete_diagram({x, y}));
      bool by_count = false;
      for (std::size_t p = 0; p < c.num_objects() && !by_count; ++p) {
        for (std::size_t px : c.hom(p, x)) {
          for (std::size_t py : c.hom(p, y)) {
            by_count |= oracle::product_by_count(c, x, y, p, px, py);
          }
        }
      }
      ASSERT_EQ(cone.has_value(), by_count) << x << "," << y;
      if (cone) {
        EXPECT_TRUE(oracle::product_by_count(c, x, y, cone->apex, cone->legs[0], cone->legs[1]));
        EXPECT_TRUE(is_limit(c, discrete_diagram({x, y}), *cone));
      }
    }
  }
}

TEST(Limits, EqualizerInPosetIsDomain) {
  const FinCategory c = chain_category(3);
  const std::size_t f = c.hom(0, 1).front();
  const auto eq = find_limit(c, parallel_diagram(f, f, c));
  ASSERT_TRUE(eq.has_value());
  EXPECT_EQ(eq->apex, 0u);
}

TEST(Limits, ParallelPairHasNoPowers) {
  const FinCategory c = parallel_pair_category();
  EXPECT_FALSE(find_power(c, 1, 2).has_value());
  EXPECT_TRUE(find_power(c, 1, 1).has_value());
}

TEST(Freyd, Examples) {
  const FreydReport thin = freyd_audit(chain_category(3));
  EXPECT_TRUE(thin.thin);
  EXPECT_FALSE(thin.violation);
  const FreydReport pp = freyd_audit(parallel_pair_category());
  EXPECT_FALSE(pp.thin);
  EXPECT_FALSE(pp.violation);
  ASSERT_FALSE(pp.targets.empty());
  EXPECT_FALSE(pp.targets[0].power_found);
  EXPECT_FALSE(freyd_audit(build_coll(3)).violation);
}

TEST(Freyd, EnumerationSmallCategories) {
  // Each visited category is valid, and for each non-thin one the counting
  // bound rules out every Hom-indexed power: no object P has
  // |Hom(A, P)| = |Hom(A, Y)|^N for all A.
  std::uint64_t visited = 0, non_thin = 0;
  const FreydEnumeration e = freyd_enumerate(2, 4, [&](const FinCategory& c) {
    ++visited;
    ASSERT_TRUE(validate(c).holds);
    if (is_thin(c)) return;
    ++non_thin;
    const std::uint64_t n = c.num_arrows();
    for (std::size_t y = 0; y < c.num_objects(); ++y) {
      bool parallel = false;
      for (std::size_t x = 0; x < c.num_objects(); ++x) parallel |= c.hom(x, y).size() >= 2;
      if (!parallel) continue;
      for (std::size_t p = 0; p < c.num_objects(); ++p) {
        bool matches = true;
        for (std::size_t a = 0; a < c.num_objects(); ++a) {
          matches &= c.hom(a, p).size() == oracle::ipow(c.hom(a, y).size(), n);
        }
        ASSERT_FALSE(matches);
      }
    }
  });
  EXPECT_EQ(e.categories, visited);
  EXPECT_EQ(e.non_thin, non_thin);
  EXPECT_EQ(e.violations, 0u);
  EXPECT_EQ(e.categories, 215u);
}

TEST(Cantor, AllSmallSets) {
  const std::vector<std::uint64_t> counts{1, 2, 16, 512};
  for (std::size_t n = 0; n <= 3; ++n) {
    const CantorReport r = cantor_check(von_neumann(n));
    EXPECT_EQ(r.functions, counts[n]);
    EXPECT_EQ(r.functions, oracle::ipow(oracle::ipow(2, n), n));
    EXPECT_EQ(r.surjective, 0u);
    EXPECT_EQ(r.diagonal_missed, r.functions);
  }
  EXPECT_THROW(cantor_check(von_neumann(4)), ConfigError);
}

TEST(Functors, DiscreteIntoDiscrete) {
  const FunctorCategory fc = functor_category(discrete_category(2), discrete_category(3));
  EXPECT_EQ(fc.category.num_objects(), 9u);
  EXPECT_EQ(fc.category.num_arrows(), 9u);
  EXPECT_TRUE(validate(fc.category).holds);
}

TEST(Functors, ExponentByOne) {
  for (const FinCategory& d : {build_coll(3), parallel_pair_category(), chain_category(3)}) {
    const FunctorCategory fc = functor_category(discrete_category(1), d);
    EXPECT_EQ(fc.category.num_objects(), d.num_objects());
    EXPECT_EQ(fc.category.num_arrows(), d.num_arrows());
    EXPECT_TRUE(validate(fc.category).holds);
  }
}

TEST(Functors, TransformationsAreNatural) {
  const FinCategory c = chain_category(2), d = cospan_category();
  const FunctorCategory fc = functor_category(c, d);
  EXPECT_TRUE(validate(fc.category).holds);
  for (const Functor& f : fc.functors) EXPECT_TRUE(is_functor(c, d, f));
  for (const NatTrans& t : fc.transformations) {
    const Functor& F = fc.functors[t.source];
    const Functor& G = fc.functors[t.target];
    for (std::size_t a = 0; a < c.num_arrows(); ++a) {
      const std::size_t x = c.arrow(a).dom, y = c.arrow(a).cod;
      EXPECT_EQ(d.compose(G.on_arrows[a], t.components[x]),
                d.compose(t.components[y], F.on_arrows[a]));
    }
  }
  // Functors 2 -> cospan are the arrows of the cospan.
  EXPECT_EQ(fc.functors.size(), d.num_arrows());
}

TEST(Functors, CapIsEnforced) {
  EXPECT_THROW(functor_category(build_coll(3), build_coll(3), 10), BoundExceeded);
}

TEST(Size, FlagsFollowRanks) {
  const FinCategory c = build_coll(2);
  for (const char* cfg : {"3,4", "1,2", "2,3,4"}) {
    const TierConfig t = TierConfig::parse(cfg);
    const SizeReport r = classify_size(c, t);
    EXPECT_EQ(r.ob_rank, r.ob.rank());
    EXPECT_EQ(r.hom_rank, r.hom.rank());
    EXPECT_EQ(r.ob, build_stage(2).carrier.as_set());
    ASSERT_EQ(r.tiers.size(), t.size());
    for (const SizeFlags& f : r.tiers) {
      const std::size_t k = t.k(f.n);
      const std::size_t up = f.n + 1 < t.size() ? t.k(f.n + 1) : t.ks().back() + 1;
      EXPECT_EQ(f.small, r.ob_rank < k && r.hom_rank < k) << cfg << " n=" << f.n;
      EXPECT_EQ(f.large, !f.small && r.ob_rank < up && r.hom_rank < up) << cfg << " n=" << f.n;
      EXPECT_EQ(f.very_large, !f.small && !f.large) << cfg << " n=" << f.n;
    }
  }
  const SizeReport r34 = classify_size(c, TierConfig({3, 4}));
  EXPECT_EQ(r34.ob_rank, 2u);
  EXPECT_FALSE(r34.tiers[0].small);
  EXPECT_TRUE(r34.tiers[0].very_large);
  EXPECT_TRUE(r34.tiers[1].large);
}

TEST(Embedding, TwoIntoThree) {
  const EmbeddingReport r = check_embedding(2, 3);
  EXPECT_TRUE(r.functor);
  EXPECT_TRUE(r.full);
  EXPECT_TRUE(r.faithful);
  EXPECT_EQ(r.terminals_checked, 1u);
  EXPECT_TRUE(r.preserves_terminal);
  EXPECT_GT(r.products_checked, 0u);
  EXPECT_TRUE(r.preserves_products);
  EXPECT_THROW(check_embedding(2, 2), ConfigError);
  EXPECT_THROW(check_embedding(3, 4), ConfigError);
}

TEST(Embedding, FullnessAsArrowSets) {
  // Literal statement: for objects of Coll(V_2), the graphs of arrows in
  // Coll(V_3) between them are exactly those in Coll(V_2).
  const FinCategory a = build_coll(2), b = build_coll(3);
  for (std::size_t x = 0; x < a.num_objects(); ++x) {
    for (std::size_t y = 0; y < a.num_objects(); ++y) {
      std::set<HfSet> ga, gb;
      for (std::size_t f : a.hom(x, y)) ga.insert(*a.arrow(f).graph);
      const std::size_t bx = object_with_set(b, *a.object_set(x));
      const std::size_t by = object_with_set(b, *a.object_set(y));
      for (std::size_t f : b.hom(bx, by)) gb.insert(*b.arrow(f).graph);
      EXPECT_EQ(ga, gb);
    }
  }
}

TEST(Topos, Coll3) {
  const ToposReport r = topos_audit(build_coll(3));
  std::map<std::string, const FeatureVerdict*> by;
  for (const auto& f : r.features) by[f.feature] = &f;
  ASSERT_EQ(by.size(), 5u);
  EXPECT_TRUE(by.at("terminal")->holds);
  EXPECT_FALSE(by.at("binary products")->holds);
  EXPECT_FALSE(by.at("binary products")->witness.empty());
  EXPECT_TRUE(by.at("equalizers")->holds);
  EXPECT_FALSE(by.at("exponentials")->holds);
  EXPECT_TRUE(by.at("subobject classifier")->holds);
  EXPECT_EQ(r.classifier, "{{},{{}}}");
}

TEST(Topos, Coll2) {
  const ToposReport r = topos_audit(build_coll(2));
  for (const auto& f : r.features) {
    EXPECT_EQ(f.holds, f.feature != "subobject classifier") << f.feature;
  }
}
