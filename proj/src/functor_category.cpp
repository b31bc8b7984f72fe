#include <map>

#include "hflab/category.hpp"
#include "hflab/error.hpp"

namespace hflab {

bool is_functor(const FinCategory& c, const FinCategory& d, const Functor& f) {
  if (f.on_objects.size() != c.num_objects() || f.on_arrows.size() != c.num_arrows()) {
    return false;
  }
  for (std::size_t a = 0; a < c.num_arrows(); ++a) {
    const Arrow& src = c.arrow(a);
    const std::size_t image = f.on_arrows[a];
    if (image >= d.num_arrows()) return false;
    if (d.arrow(image).dom != f.on_objects[src.dom] ||
        d.arrow(image).cod != f.on_objects[src.cod]) {
      return false;
    }
  }
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    if (f.on_arrows[c.identity(x)] != d.identity(f.on_objects[x])) return false;
  }
  for (std::size_t a = 0; a < c.num_arrows(); ++a) {
    for (std::size_t b = 0; b < c.num_arrows(); ++b) {
      const std::size_t ba = c.compose(b, a);
      if (ba == npos) continue;
      if (f.on_arrows[ba] != d.compose(f.on_arrows[b], f.on_arrows[a])) return false;
    }
  }
  return true;
}

namespace {

class Counter {
 public:
  explicit Counter(std::uint64_t cap) : cap_(cap) {}
  void tick() {
    if (++n_ > cap_) {
      throw BoundExceeded("functor category enumeration cap of " + std::to_string(cap_) +
                          " exceeded");
    }
  }

 private:
  std::uint64_t cap_;
  std::uint64_t n_ = 0;
};

void arrow_maps(const FinCategory& c, const FinCategory& d, Functor& f, std::size_t a,
                Counter& counter, std::vector<Functor>& out) {
  if (a == c.num_arrows()) {
    counter.tick();
    if (is_functor(c, d, f)) out.push_back(f);
    return;
  }
  const Arrow& src = c.arrow(a);
  const std::size_t x = f.on_objects[src.dom];
  const std::size_t y = f.on_objects[src.cod];
  if (c.identity(src.dom) == a) {
    f.on_arrows[a] = d.identity(x);
    arrow_maps(c, d, f, a + 1, counter, out);
    return;
  }
  for (std::size_t g : d.hom(x, y)) {
    f.on_arrows[a] = g;
    arrow_maps(c, d, f, a + 1, counter, out);
  }
}

}  // namespace

FunctorCategory functor_category(const FinCategory& c, const FinCategory& d,
                                 std::uint64_t cap) {
  Counter counter(cap);
  FunctorCategory out;
  // Functors, by object map then arrow map.
  Functor f;
  f.on_objects.assign(c.num_objects(), 0);
  f.on_arrows.assign(c.num_arrows(), 0);
  if (c.num_objects() == 0 || d.num_objects() > 0) {
    std::vector<std::size_t>& idx = f.on_objects;
    while (true) {
      arrow_maps(c, d, f, 0, counter, out.functors);
      std::size_t pos = idx.size();
      while (pos > 0 && ++idx[pos - 1] == d.num_objects()) {
        idx[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  }
  for (std::size_t i = 0; i < out.functors.size(); ++i) {
    out.category.add_object("F" + std::to_string(i));
  }
  // Natural transformations between each ordered pair of functors.
  std::map<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>, std::size_t> index;
  for (std::size_t s = 0; s < out.functors.size(); ++s) {
    for (std::size_t t = 0; t < out.functors.size(); ++t) {
      const Functor& fs = out.functors[s];
      const Functor& ft = out.functors[t];
      std::vector<const std::vector<std::size_t>*> options;
      bool empty = false;
      for (std::size_t x = 0; x < c.num_objects(); ++x) {
        options.push_back(&d.hom(fs.on_objects[x], ft.on_objects[x]));
        empty = empty || options.back()->empty();
      }
      if (empty) continue;
      std::vector<std::size_t> idx(options.size(), 0);
      while (true) {
        counter.tick();
        std::vector<std::size_t> comp;
        for (std::size_t x = 0; x < idx.size(); ++x) comp.push_back((*options[x])[idx[x]]);
        bool natural = true;
        for (std::size_t a = 0; natural && a < c.num_arrows(); ++a) {
          const Arrow& arr = c.arrow(a);
          natural = d.compose(ft.on_arrows[a], comp[arr.dom]) ==
                    d.compose(comp[arr.cod], fs.on_arrows[a]);
        }
        if (natural) {
          bool is_id = s == t;
          for (std::size_t x = 0; is_id && x < comp.size(); ++x) {
            is_id = comp[x] == d.identity(fs.on_objects[x]);
          }
          const std::size_t id = out.category.add_arrow(
              {s, t, "a" + std::to_string(out.transformations.size()), std::nullopt}, is_id);
          index[{s, t, comp}] = id;
          out.transformations.push_back({s, t, comp});
        }
        std::size_t pos = idx.size();
        while (pos > 0 && ++idx[pos - 1] == options[pos - 1]->size()) {
          idx[pos - 1] = 0;
          --pos;
        }
        if (pos == 0) break;
      }
    }
  }
  for (std::size_t a = 0; a < out.transformations.size(); ++a) {
    for (std::size_t b = 0; b < out.transformations.size(); ++b) {
      const NatTrans& alpha = out.transformations[a];
      const NatTrans& beta = out.transformations[b];
      if (alpha.target != beta.source) continue;
      std::vector<std::size_t> comp;
      for (std::size_t x = 0; x < alpha.components.size(); ++x) {
        comp.push_back(d.compose(beta.components[x], alpha.components[x]));
      }
      out.category.set_compose(b, a, index.at({alpha.source, beta.target, comp}));
    }
  }
  return out;
}

}  // namespace hflab
