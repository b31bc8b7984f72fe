#include "hflab/category.hpp"

#include <algorithm>
#include <map>

#include "hflab/error.hpp"

namespace hflab {

std::size_t FinCategory::add_object(std::string label, std::optional<HfSet> set) {
  objects_.push_back(std::move(label));
  object_sets_.push_back(std::move(set));
  identities_.push_back(npos);
  dirty_ = true;
  return objects_.size() - 1;
}

std::size_t FinCategory::add_arrow(Arrow a, bool identity) {
  if (a.dom >= objects_.size() || a.cod >= objects_.size()) {
    throw ConfigError("arrow '" + a.label + "' has an unknown endpoint");
  }
  const std::size_t dom = a.dom;
  arrows_.push_back(std::move(a));
  dirty_ = true;
  if (identity) set_identity(dom, arrows_.size() - 1);
  return arrows_.size() - 1;
}

void FinCategory::set_identity(std::size_t object, std::size_t arrow) {
  if (object >= objects_.size() || arrow >= arrows_.size()) {
    throw ConfigError("identity refers to an unknown object or arrow");
  }
  identities_[object] = arrow;
}

void FinCategory::set_compose(std::size_t g, std::size_t f, std::size_t h) {
  if (g >= arrows_.size() || f >= arrows_.size() || h >= arrows_.size()) {
    throw ConfigError("composition refers to an unknown arrow");
  }
  pending_.push_back({{g, f}, h});
  if (!dirty_) table_[f * arrows_.size() + g] = h;
}

void FinCategory::ensure_table() const {
  if (!dirty_) return;
  const std::size_t n = arrows_.size();
  table_.assign(n * n, npos);
  for (const auto& [gf, h] : pending_) table_[gf.second * n + gf.first] = h;
  homs_.assign(objects_.size() * objects_.size(), {});
  for (std::size_t i = 0; i < n; ++i) {
    homs_[arrows_[i].dom * objects_.size() + arrows_[i].cod].push_back(i);
  }
  dirty_ = false;
}

std::size_t FinCategory::compose(std::size_t g, std::size_t f) const {
  ensure_table();
  return table_[f * arrows_.size() + g];
}

const std::vector<std::size_t>& FinCategory::hom(std::size_t x, std::size_t y) const {
  ensure_table();
  return homs_[x * objects_.size() + y];
}

LawVerdict validate(const FinCategory& c) {
  const std::size_t n = c.num_arrows();
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    const std::size_t id = c.identity(x);
    if (id == npos) throw ConfigError("object '" + c.object_label(x) + "' has no identity");
    if (c.arrow(id).dom != x || c.arrow(id).cod != x) {
      throw ConfigError("identity of '" + c.object_label(x) + "' is not an endomorphism");
    }
  }
  for (std::size_t f = 0; f < n; ++f) {
    for (std::size_t g = 0; g < n; ++g) {
      const bool composable = c.arrow(f).cod == c.arrow(g).dom;
      const std::size_t h = c.compose(g, f);
      if (composable && h == npos) {
        throw ConfigError("composition of '" + c.arrow(g).label + "' after '" +
                          c.arrow(f).label + "' is missing");
      }
      if (!composable && h != npos) {
        throw ConfigError("composition defined on non-composable pair '" +
                          c.arrow(g).label + "', '" + c.arrow(f).label + "'");
      }
    }
  }
  for (std::size_t f = 0; f < n; ++f) {
    for (std::size_t g = 0; g < n; ++g) {
      const std::size_t h = c.compose(g, f);
      if (h == npos) continue;
      if (c.arrow(h).dom != c.arrow(f).dom || c.arrow(h).cod != c.arrow(g).cod) {
        return {false, "typing", {f, g}};
      }
    }
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (c.compose(c.identity(c.arrow(f).cod), f) != f) return {false, "left identity", {f}};
    if (c.compose(f, c.identity(c.arrow(f).dom)) != f) return {false, "right identity", {f}};
  }
  for (std::size_t f = 0; f < n; ++f) {
    for (std::size_t g = 0; g < n; ++g) {
      const std::size_t gf = c.compose(g, f);
      if (gf == npos) continue;
      for (std::size_t h = 0; h < n; ++h) {
        const std::size_t hg = c.compose(h, g);
        if (hg == npos) continue;
        if (c.compose(h, gf) != c.compose(hg, f)) return {false, "associativity", {f, g, h}};
      }
    }
  }
  return {};
}

bool is_thin(const FinCategory& c) {
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    for (std::size_t y = 0; y < c.num_objects(); ++y) {
      if (c.hom(x, y).size() > 1) return false;
    }
  }
  return true;
}

bool is_mono(const FinCategory& c, std::size_t f) {
  const std::size_t x = c.arrow(f).dom;
  for (std::size_t a = 0; a < c.num_objects(); ++a) {
    const auto& h = c.hom(a, x);
    for (std::size_t i = 0; i < h.size(); ++i) {
      for (std::size_t j = i + 1; j < h.size(); ++j) {
        if (c.compose(f, h[i]) == c.compose(f, h[j])) return false;
      }
    }
  }
  return true;
}

namespace {

void add_identities(FinCategory& c) {
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    c.add_arrow({x, x, "id_" + c.object_label(x), std::nullopt}, true);
  }
}

// Fills in every composite in a category whose only composable pairs involve
// an identity.
void compose_with_identities(FinCategory& c) {
  for (std::size_t f = 0; f < c.num_arrows(); ++f) {
    const Arrow& a = c.arrow(f);
    c.set_compose(c.identity(a.cod), f, f);
    if (c.identity(a.dom) != f) c.set_compose(f, c.identity(a.dom), f);
  }
}

}  // namespace

FinCategory discrete_category(std::size_t m) {
  FinCategory c;
  for (std::size_t i = 0; i < m; ++i) c.add_object(std::to_string(i));
  add_identities(c);
  compose_with_identities(c);
  return c;
}

FinCategory parallel_pair_category() {
  FinCategory c;
  c.add_object("0");
  c.add_object("1");
  add_identities(c);
  c.add_arrow({0, 1, "u", std::nullopt});
  c.add_arrow({0, 1, "v", std::nullopt});
  compose_with_identities(c);
  return c;
}

FinCategory cospan_category() {
  FinCategory c;
  c.add_object("0");
  c.add_object("1");
  c.add_object("2");
  add_identities(c);
  c.add_arrow({0, 2, "u", std::nullopt});
  c.add_arrow({1, 2, "v", std::nullopt});
  compose_with_identities(c);
  return c;
}

FinCategory chain_category(std::size_t m) {
  FinCategory c;
  for (std::size_t i = 0; i < m; ++i) c.add_object(std::to_string(i));
  add_identities(c);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> le;
  for (std::size_t i = 0; i < m; ++i) {
    le[{i, i}] = c.identity(i);
    for (std::size_t j = i + 1; j < m; ++j) {
      le[{i, j}] = c.add_arrow({i, j, std::to_string(i) + "<" + std::to_string(j), std::nullopt});
    }
  }
  for (const auto& [ij, f] : le) {
    for (std::size_t k = ij.second; k < m; ++k) {
      c.set_compose(le[{ij.second, k}], f, le[{ij.first, k}]);
    }
  }
  return c;
}

FinCategory build_coll(std::size_t k) {
  if (k > 3) {
    throw ConfigError("Coll(V_" + std::to_string(k) + ") is too large to materialize (max V_3)");
  }
  const auto& u = build_stage(k).carrier.universe();
  FinCategory c;
  for (const HfSet& x : u) c.add_object(x.str(), x);
  // Each arrow as the index of f(x_i) among the codomain's members.
  std::map<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>, std::size_t> by_values;
  std::vector<std::vector<std::size_t>> values_of;
  for (std::size_t x = 0; x < u.size(); ++x) {
    const auto xs = u[x].members();
    for (std::size_t y = 0; y < u.size(); ++y) {
      const auto ys = u[y].members();
      if (ys.empty() && !xs.empty()) continue;
      std::vector<std::pair<HfSet, std::vector<std::size_t>>> fns;
      std::vector<std::size_t> idx(xs.size(), 0);
      while (true) {
        std::vector<HfSet> graph;
        for (std::size_t i = 0; i < xs.size(); ++i) {
          graph.push_back(ordered_pair(xs[i], ys[idx[i]]));
        }
        fns.emplace_back(HfSet::of(std::move(graph)), idx);
        std::size_t pos = idx.size();
        while (pos > 0 && ++idx[pos - 1] == ys.size()) {
          idx[pos - 1] = 0;
          --pos;
        }
        if (pos == 0) break;
      }
      std::sort(fns.begin(), fns.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (auto& [graph, vals] : fns) {
        bool is_id = x == y;
        for (std::size_t i = 0; is_id && i < vals.size(); ++i) is_id = vals[i] == i;
        const std::size_t id = c.add_arrow({x, y, graph.str(), graph}, is_id);
        by_values[{x, y, vals}] = id;
        values_of.push_back(vals);
      }
    }
  }
  for (std::size_t f = 0; f < c.num_arrows(); ++f) {
    const std::size_t x = c.arrow(f).dom;
    const std::size_t y = c.arrow(f).cod;
    for (std::size_t z = 0; z < u.size(); ++z) {
      for (std::size_t g : c.hom(y, z)) {
        std::vector<std::size_t> vals;
        for (std::size_t v : values_of[f]) vals.push_back(values_of[g][v]);
        c.set_compose(g, f, by_values.at({x, z, vals}));
      }
    }
  }
  return c;
}

}  // namespace hflab
