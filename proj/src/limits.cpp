#include <map>

#include "hflab/category.hpp"
#include "hflab/error.hpp"

namespace hflab {

Diagram empty_diagram() { return {}; }

Diagram discrete_diagram(const std::vector<std::size_t>& objects) {
  Diagram d;
  d.shape = discrete_category(objects.size());
  d.on_objects = objects;
  d.on_arrows.assign(d.shape.num_arrows(), npos);
  return d;
}

Diagram parallel_diagram(std::size_t f, std::size_t g, const FinCategory& c) {
  if (c.arrow(f).dom != c.arrow(g).dom || c.arrow(f).cod != c.arrow(g).cod) {
    throw ConfigError("arrows are not parallel");
  }
  Diagram d;
  d.shape = parallel_pair_category();
  d.on_objects = {c.arrow(f).dom, c.arrow(f).cod};
  d.on_arrows = {npos, npos, f, g};
  return d;
}

Diagram cospan_diagram(std::size_t f, std::size_t g, const FinCategory& c) {
  if (c.arrow(f).cod != c.arrow(g).cod) throw ConfigError("arrows do not share a codomain");
  Diagram d;
  d.shape = cospan_category();
  d.on_objects = {c.arrow(f).dom, c.arrow(g).dom, c.arrow(f).cod};
  d.on_arrows = {npos, npos, npos, f, g};
  return d;
}

namespace {

// Shape identities are mapped to npos and commute automatically.
bool commutes(const FinCategory& c, const Diagram& d, const std::vector<std::size_t>& legs) {
  for (std::size_t u = 0; u < d.shape.num_arrows(); ++u) {
    if (d.on_arrows[u] == npos) continue;
    const Arrow& a = d.shape.arrow(u);
    if (c.compose(d.on_arrows[u], legs[a.dom]) != legs[a.cod]) return false;
  }
  return true;
}

class ConeSearch {
 public:
  ConeSearch(const FinCategory& c, const Diagram& d, std::uint64_t bound)
      : c_(c), d_(d), bound_(bound) {}

  // All cones with the given apex, legs in lexicographic order.
  const std::vector<std::vector<std::size_t>>& cones(std::size_t apex) {
    auto it = cache_.find(apex);
    if (it != cache_.end()) return it->second;
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> legs;
    extend(apex, legs, out);
    return cache_.emplace(apex, std::move(out)).first->second;
  }

  bool universal(const Cone& cone) {
    for (std::size_t a = 0; a < c_.num_objects(); ++a) {
      const auto& hom = c_.hom(a, cone.apex);
      for (const auto& legs : cones(a)) {
        std::size_t factorizations = 0;
        for (std::size_t m : hom) {
          tick();
          bool ok = true;
          for (std::size_t i = 0; ok && i < legs.size(); ++i) {
            ok = c_.compose(cone.legs[i], m) == legs[i];
          }
          if (ok && ++factorizations > 1) break;
        }
        if (factorizations != 1) return false;
      }
    }
    return true;
  }

 private:
  void tick() {
    if (++work_ > bound_) {
      throw BoundExceeded("limit search bound of " + std::to_string(bound_) + " exceeded");
    }
  }

  void extend(std::size_t apex, std::vector<std::size_t>& legs,
              std::vector<std::vector<std::size_t>>& out) {
    const std::size_t i = legs.size();
    if (i == d_.on_objects.size()) {
      tick();
      if (commutes(c_, d_, legs)) out.push_back(legs);
      return;
    }
    for (std::size_t f : c_.hom(apex, d_.on_objects[i])) {
      legs.push_back(f);
      extend(apex, legs, out);
      legs.pop_back();
    }
  }

  const FinCategory& c_;
  const Diagram& d_;
  std::uint64_t bound_;
  std::uint64_t work_ = 0;
  std::map<std::size_t, std::vector<std::vector<std::size_t>>> cache_;
};

}  // namespace

std::optional<Cone> find_limit(const FinCategory& c, const Diagram& d, std::uint64_t bound) {
  ConeSearch search(c, d, bound);
  for (std::size_t p = 0; p < c.num_objects(); ++p) {
    for (const auto& legs : search.cones(p)) {
      Cone cone{p, legs};
      if (search.universal(cone)) return cone;
    }
  }
  return std::nullopt;
}

bool is_limit(const FinCategory& c, const Diagram& d, const Cone& cone, std::uint64_t bound) {
  if (cone.legs.size() != d.on_objects.size()) return false;
  for (std::size_t i = 0; i < cone.legs.size(); ++i) {
    const Arrow& a = c.arrow(cone.legs[i]);
    if (a.dom != cone.apex || a.cod != d.on_objects[i]) return false;
  }
  if (!commutes(c, d, cone.legs)) return false;
  ConeSearch search(c, d, bound);
  return search.universal(cone);
}

std::optional<Cone> find_power(const FinCategory& c, std::size_t y, std::size_t copies) {
  const std::size_t limit = c.num_arrows();
  // |Hom(a, y)|^copies, capped just above the arrow count.
  auto power_count = [&](std::size_t a) {
    std::size_t base = c.hom(a, y).size();
    std::size_t r = 1;
    for (std::size_t i = 0; i < copies; ++i) {
      r *= base;
      if (r > limit) return limit + 1;
    }
    return r;
  };
  for (std::size_t p = 0; p < c.num_objects(); ++p) {
    bool counts_match = true;
    for (std::size_t a = 0; counts_match && a < c.num_objects(); ++a) {
      counts_match = c.hom(a, p).size() == power_count(a);
    }
    if (!counts_match) continue;
    // Legs range over Hom(p, y)^copies, which has |Hom(p, p)| elements.
    const auto& h = c.hom(p, y);
    std::vector<std::size_t> idx(copies, 0);
    if (copies > 0 && h.empty()) continue;
    while (true) {
      std::vector<std::size_t> legs;
      for (std::size_t i : idx) legs.push_back(h[i]);
      bool injective = true;
      for (std::size_t a = 0; injective && a < c.num_objects(); ++a) {
        std::map<std::vector<std::size_t>, std::size_t> seen;
        for (std::size_t m : c.hom(a, p)) {
          std::vector<std::size_t> tuple;
          for (std::size_t leg : legs) tuple.push_back(c.compose(leg, m));
          if (!seen.emplace(std::move(tuple), m).second) {
            injective = false;
            break;
          }
        }
      }
      if (injective) return Cone{p, legs};
      std::size_t pos = idx.size();
      while (pos > 0 && ++idx[pos - 1] == h.size()) {
        idx[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  }
  return std::nullopt;
}

// --- hierarchy embedding ---------------------------------------------------

EmbeddingReport check_embedding(std::size_t k1, std::size_t k2) {
  if (k1 >= k2) throw ConfigError("embedding needs k1 < k2");
  const FinCategory src = build_coll(k1);
  const FinCategory dst = build_coll(k2);
  EmbeddingReport r;
  r.k1 = k1;
  r.k2 = k2;
  std::map<HfSet, std::size_t> obj_index;
  for (std::size_t x = 0; x < dst.num_objects(); ++x) obj_index[*dst.object_set(x)] = x;
  std::map<std::tuple<std::size_t, std::size_t, HfSet>, std::size_t> arrow_index;
  for (std::size_t f = 0; f < dst.num_arrows(); ++f) {
    const Arrow& a = dst.arrow(f);
    arrow_index[{a.dom, a.cod, *a.graph}] = f;
  }
  Functor inc;
  for (std::size_t x = 0; x < src.num_objects(); ++x) {
    inc.on_objects.push_back(obj_index.at(*src.object_set(x)));
  }
  for (const Arrow& a : src.arrows()) {
    inc.on_arrows.push_back(
        arrow_index.at({inc.on_objects[a.dom], inc.on_objects[a.cod], *a.graph}));
  }
  r.functor = is_functor(src, dst, inc);
  r.full = true;
  r.faithful = true;
  for (std::size_t x = 0; x < src.num_objects(); ++x) {
    for (std::size_t y = 0; y < src.num_objects(); ++y) {
      std::map<std::size_t, int> hit;
      for (std::size_t f : src.hom(x, y)) ++hit[inc.on_arrows[f]];
      for (const auto& [g, n] : hit) r.faithful = r.faithful && n == 1;
      r.full = r.full && hit.size() == dst.hom(inc.on_objects[x], inc.on_objects[y]).size();
    }
  }
  r.preserves_terminal = true;
  const Diagram none = empty_diagram();
  for (std::size_t t = 0; t < src.num_objects(); ++t) {
    if (!is_limit(src, none, Cone{t, {}})) continue;
    ++r.terminals_checked;
    r.preserves_terminal =
        r.preserves_terminal && is_limit(dst, none, Cone{inc.on_objects[t], {}});
  }
  r.preserves_products = true;
  for (std::size_t a = 0; a < src.num_objects(); ++a) {
    for (std::size_t b = 0; b < src.num_objects(); ++b) {
      auto cone = find_limit(src, discrete_diagram({a, b}));
      if (!cone) continue;
      ++r.products_checked;
      Cone image{inc.on_objects[cone->apex],
                 {inc.on_arrows[cone->legs[0]], inc.on_arrows[cone->legs[1]]}};
      r.preserves_products =
          r.preserves_products &&
          is_limit(dst, discrete_diagram({inc.on_objects[a], inc.on_objects[b]}), image);
    }
  }
  return r;
}

// --- topos audit -------------------------------------------------------------

namespace {

FeatureVerdict check_exponentials(const FinCategory& c,
                                  const std::vector<std::vector<std::optional<Cone>>>& prod) {
  FeatureVerdict v{"exponentials", true, 0, {}};
  const std::size_t n = c.num_objects();
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t cc = 0; cc < n; ++cc) {
      ++v.checked;
      bool found = false;
      for (std::size_t e = 0; !found && e < n; ++e) {
        const auto& eb = prod[e][b];
        if (!eb) continue;
        for (std::size_t ev : c.hom(eb->apex, cc)) {
          bool universal = true;
          for (std::size_t a = 0; universal && a < n; ++a) {
            const auto& ab = prod[a][b];
            if (!ab) continue;
            const auto& targets = c.hom(ab->apex, cc);
            if (c.hom(a, e).size() != targets.size()) {
              universal = false;
              break;
            }
            std::map<std::size_t, std::size_t> seen;
            for (std::size_t h : c.hom(a, e)) {
              // h x id_b : a x b -> e x b
              std::size_t hb = npos;
              for (std::size_t m : c.hom(ab->apex, eb->apex)) {
                if (c.compose(eb->legs[0], m) == c.compose(h, ab->legs[0]) &&
                    c.compose(eb->legs[1], m) == ab->legs[1]) {
                  hb = m;
                  break;
                }
              }
              if (hb == npos || !seen.emplace(c.compose(ev, hb), h).second) {
                universal = false;
                break;
              }
            }
          }
          if (universal) {
            found = true;
            break;
          }
        }
      }
      if (!found && v.holds) {
        v.holds = false;
        v.witness = {c.object_label(b), c.object_label(cc)};
      }
    }
  }
  return v;
}

// Whether (m, !) is a pullback of (chi, t) where t : 1 -> omega.
bool is_pullback_of_true(const FinCategory& c, std::size_t m, std::size_t chi, std::size_t t,
                         std::size_t one) {
  const std::size_t s = c.arrow(m).dom;
  const std::size_t x = c.arrow(m).cod;
  if (c.compose(chi, m) != c.compose(t, c.hom(s, one).front())) return false;
  for (std::size_t a = 0; a < c.num_objects(); ++a) {
    const std::size_t bang = c.hom(a, one).front();
    for (std::size_t f : c.hom(a, x)) {
      if (c.compose(chi, f) != c.compose(t, bang)) continue;
      std::size_t factorizations = 0;
      for (std::size_t u : c.hom(a, s)) {
        if (c.compose(m, u) == f) ++factorizations;
      }
      if (factorizations != 1) return false;
    }
  }
  return true;
}

FeatureVerdict check_classifier(const FinCategory& c, std::optional<std::size_t> terminal,
                                std::optional<std::string>& classifier) {
  FeatureVerdict v{"subobject classifier", false, 0, {}};
  if (!terminal) {
    v.witness = {"no terminal object"};
    return v;
  }
  const std::size_t one = *terminal;
  std::vector<std::size_t> monos;
  for (std::size_t f = 0; f < c.num_arrows(); ++f) {
    if (is_mono(c, f)) monos.push_back(f);
  }
  for (std::size_t omega = 0; omega < c.num_objects(); ++omega) {
    for (std::size_t t : c.hom(one, omega)) {
      ++v.checked;
      bool ok = true;
      for (std::size_t m : monos) {
        std::size_t chis = 0;
        for (std::size_t chi : c.hom(c.arrow(m).cod, omega)) {
          if (is_pullback_of_true(c, m, chi, t, one)) ++chis;
        }
        if (chis != 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        v.holds = true;
        classifier = c.object_label(omega);
        v.witness = {c.object_label(omega), c.arrow(t).label};
        return v;
      }
    }
  }
  return v;
}

}  // namespace

ToposReport topos_audit(const FinCategory& c, std::uint64_t bound) {
  ToposReport r;
  const std::size_t n = c.num_objects();

  auto terminal = find_limit(c, empty_diagram(), bound);
  r.features.push_back({"terminal", terminal.has_value(), n, {}});

  FeatureVerdict products{"binary products", true, 0, {}};
  std::vector<std::vector<std::optional<Cone>>> prod(n, std::vector<std::optional<Cone>>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      prod[a][b] = find_limit(c, discrete_diagram({a, b}), bound);
      ++products.checked;
      if (!prod[a][b] && products.holds) {
        products.holds = false;
        products.witness = {c.object_label(a), c.object_label(b)};
      }
    }
  }
  r.features.push_back(products);

  FeatureVerdict equalizers{"equalizers", true, 0, {}};
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto& h = c.hom(x, y);
      for (std::size_t i = 0; i < h.size(); ++i) {
        for (std::size_t j = i + 1; j < h.size(); ++j) {
          ++equalizers.checked;
          if (!find_limit(c, parallel_diagram(h[i], h[j], c), bound) && equalizers.holds) {
            equalizers.holds = false;
            equalizers.witness = {c.arrow(h[i]).label, c.arrow(h[j]).label};
          }
        }
      }
    }
  }
  r.features.push_back(equalizers);

  r.features.push_back(check_exponentials(c, prod));
  r.features.push_back(check_classifier(
      c, terminal ? std::optional<std::size_t>(terminal->apex) : std::nullopt, r.classifier));
  return r;
}

}  // namespace hflab
