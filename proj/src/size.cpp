#include "hflab/category.hpp"

namespace hflab {

namespace {

HfSet object_code(const FinCategory& c, std::size_t x) {
  return c.object_set(x) ? *c.object_set(x) : von_neumann(x);
}

HfSet arrow_code(const FinCategory& c, std::size_t f) {
  return c.arrow(f).graph ? *c.arrow(f).graph : von_neumann(f);
}

}  // namespace

SizeReport classify_size(const FinCategory& c, const TierConfig& t) {
  SizeReport r;
  std::vector<HfSet> obs;
  for (std::size_t x = 0; x < c.num_objects(); ++x) obs.push_back(object_code(c, x));
  std::vector<HfSet> arrows;
  for (std::size_t f = 0; f < c.num_arrows(); ++f) arrows.push_back(arrow_code(c, f));
  r.ob = HfSet::of(std::move(obs));
  r.hom = HfSet::of(std::move(arrows));
  r.ob_rank = r.ob.rank();
  r.hom_rank = r.hom.rank();
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    for (std::size_t y = 0; y < c.num_objects(); ++y) {
      std::vector<HfSet> h;
      for (std::size_t f : c.hom(x, y)) h.push_back(arrow_code(c, f));
      r.max_hom_xy_rank = std::max(r.max_hom_xy_rank, HfSet::of(std::move(h)).rank());
    }
  }
  // x in V_k iff rank(x) < k. Level t.size() stands one stage above the top.
  auto level = [&](std::size_t n) {
    return n < t.size() ? t.k(n) : t.k(t.size() - 1) + 1;
  };
  auto small = [&](std::size_t n) {
    return r.ob_rank < level(n) && r.hom_rank < level(n);
  };
  for (std::size_t n = 0; n < t.size(); ++n) {
    SizeFlags f;
    f.n = n;
    f.small = small(n);
    f.locally_small = r.ob_rank < level(n + 1) && r.max_hom_xy_rank < level(n);
    for (std::size_t m = 0; m < n; ++m) f.tiny = f.tiny || small(m);
    f.large = small(n + 1) && !f.small;
    f.very_large = !small(n + 1);
    r.tiers.push_back(f);
  }
  return r;
}

}  // namespace hflab
