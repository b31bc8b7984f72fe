#include <set>

#include "hflab/category.hpp"
#include "hflab/error.hpp"

namespace hflab {

FreydReport freyd_audit(const FinCategory& c) {
  FreydReport r;
  r.thin = is_thin(c);
  r.hom_count = c.num_arrows();
  if (r.thin) return r;
  for (std::size_t y = 0; y < c.num_objects(); ++y) {
    for (std::size_t x = 0; x < c.num_objects(); ++x) {
      const auto& h = c.hom(x, y);
      if (h.size() < 2) continue;
      FreydTarget t{y, h[0], h[1], false};
      auto power = find_power(c, y, r.hom_count);
      t.power_found = power.has_value();
      if (power) {
        r.violation = true;
        // Tuplings x -> power choosing f or g in each coordinate; they are
        // pairwise distinct, so Hom would need 2^|Hom| > |Hom| arrows.
        std::set<std::size_t> distinct;
        const std::size_t samples = r.hom_count < 6 ? std::size_t{1} << r.hom_count : 64;
        for (std::size_t s = 0; s < samples; ++s) {
          for (std::size_t m : c.hom(x, power->apex)) {
            bool ok = true;
            for (std::size_t i = 0; ok && i < power->legs.size(); ++i) {
              const std::size_t want = (s >> (i % 64)) & 1 ? t.g : t.f;
              ok = c.compose(power->legs[i], m) == want;
            }
            if (ok) {
              distinct.insert(m);
              break;
            }
          }
        }
        r.distinct_tuplings = std::max(r.distinct_tuplings, distinct.size());
      }
      r.targets.push_back(t);
      break;
    }
  }
  return r;
}

namespace {

struct Enumerator {
  std::size_t max_arrows;
  const std::function<void(const FinCategory&)>& visit;
  FreydEnumeration out;

  void leaf(const FinCategory& base,
            const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
            const std::vector<std::size_t>& choice) {
    FinCategory c = base;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      c.set_compose(pairs[i].first, pairs[i].second, choice[i]);
    }
    if (!validate(c).holds) return;
    ++out.categories;
    FreydReport r = freyd_audit(c);
    if (!r.thin) ++out.non_thin;
    if (r.violation) ++out.violations;
    if (visit) visit(c);
  }

  void tables(const FinCategory& base) {
    // Non-identity composable pairs (g, f) and their candidate composites.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<const std::vector<std::size_t>*> options;
    const std::size_t n = base.num_objects();
    for (std::size_t f = n; f < base.num_arrows(); ++f) {
      for (std::size_t g = n; g < base.num_arrows(); ++g) {
        if (base.arrow(f).cod != base.arrow(g).dom) continue;
        pairs.emplace_back(g, f);
        options.push_back(&base.hom(base.arrow(f).dom, base.arrow(g).cod));
      }
    }
    for (const auto* o : options) {
      if (o->empty()) return;
    }
    std::vector<std::size_t> idx(pairs.size(), 0);
    while (true) {
      std::vector<std::size_t> choice;
      for (std::size_t i = 0; i < idx.size(); ++i) choice.push_back((*options[i])[idx[i]]);
      leaf(base, pairs, choice);
      std::size_t pos = idx.size();
      while (pos > 0 && ++idx[pos - 1] == options[pos - 1]->size()) {
        idx[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  }

  // Distributes `left` extra arrows over hom slots slot..n*n-1.
  void distribute(std::size_t n, std::vector<std::size_t>& counts, std::size_t slot,
                  std::size_t left) {
    if (slot + 1 == n * n) {
      counts[slot] = left;
      build(n, counts);
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      counts[slot] = k;
      distribute(n, counts, slot + 1, left - k);
    }
  }

  void build(std::size_t n, const std::vector<std::size_t>& counts) {
    FinCategory c;
    for (std::size_t i = 0; i < n; ++i) c.add_object(std::to_string(i));
    for (std::size_t i = 0; i < n; ++i) {
      c.add_arrow({i, i, "id_" + std::to_string(i), std::nullopt}, true);
    }
    std::size_t label = 0;
    for (std::size_t s = 0; s < counts.size(); ++s) {
      for (std::size_t k = 0; k < counts[s]; ++k) {
        c.add_arrow({s / n, s % n, "f" + std::to_string(label++), std::nullopt});
      }
    }
    for (std::size_t f = 0; f < c.num_arrows(); ++f) {
      const Arrow& a = c.arrow(f);
      c.set_compose(c.identity(a.cod), f, f);
      if (c.identity(a.dom) != f) c.set_compose(f, c.identity(a.dom), f);
    }
    tables(c);
  }
};

}  // namespace

FreydEnumeration freyd_enumerate(std::size_t max_objects, std::size_t max_arrows,
                                 const std::function<void(const FinCategory&)>& visit) {
  Enumerator e{max_arrows, visit, {}};
  for (std::size_t n = 0; n <= max_objects && n <= max_arrows; ++n) {
    if (n == 0) {
      e.build(0, {});
      continue;
    }
    for (std::size_t extra = 0; n + extra <= max_arrows; ++extra) {
      std::vector<std::size_t> counts(n * n, 0);
      e.distribute(n, counts, 0, extra);
    }
  }
  return e.out;
}

CantorReport cantor_check(const HfSet& x) {
  if (x.size() > 3) {
    throw ConfigError("cantor_check needs |x| <= 3, got " + std::to_string(x.size()));
  }
  CantorReport r;
  r.size = x.size();
  const HfSet px = powerset(x);
  const auto subsets = px.members();
  const auto args = x.members();
  std::vector<std::size_t> idx(args.size(), 0);
  while (true) {
    std::set<HfSet> image;
    std::vector<HfSet> diagonal;
    for (std::size_t i = 0; i < args.size(); ++i) {
      const HfSet& value = subsets[idx[i]];
      image.insert(value);
      if (!value.contains(args[i])) diagonal.push_back(args[i]);
    }
    ++r.functions;
    if (image.size() == subsets.size()) ++r.surjective;
    if (!image.contains(HfSet::of(std::move(diagonal)))) ++r.diagonal_missed;
    std::size_t pos = idx.size();
    while (pos > 0 && ++idx[pos - 1] == subsets.size()) {
      idx[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }
  return r;
}

}  // namespace hflab
