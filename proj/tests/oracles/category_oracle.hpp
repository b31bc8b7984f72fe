#pragma once
// Limit checks by counting: a cone is a limit exactly when, for every object
// A, composing with the legs is a bijection from Hom(A, apex) onto the cones
// over the diagram with apex A. Here only the shapes used by the tests are
// covered: terminal objects and binary products.

#include <cstdint>
#include <set>
#include <utility>

#include "hflab/category.hpp"

namespace oracle {

inline bool terminal_by_count(const hflab::FinCategory& c, std::size_t t) {
  for (std::size_t a = 0; a < c.num_objects(); ++a) {
    if (c.hom(a, t).size() != 1) return false;
  }
  return true;
}

inline bool product_by_count(const hflab::FinCategory& c, std::size_t x, std::size_t y,
                             std::size_t p, std::size_t px, std::size_t py) {
  for (std::size_t a = 0; a < c.num_objects(); ++a) {
    std::set<std::pair<std::size_t, std::size_t>> image;
    for (std::size_t m : c.hom(a, p)) image.insert({c.compose(px, m), c.compose(py, m)});
    if (image.size() != c.hom(a, p).size()) return false;
    if (image.size() != c.hom(a, x).size() * c.hom(a, y).size()) return false;
  }
  return true;
}

inline std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Number of functions between all ordered pairs of members of V_k, from the
// member sizes alone.
inline std::uint64_t coll_arrow_count(const std::vector<std::size_t>& sizes) {
  std::uint64_t total = 0;
  for (std::size_t a : sizes) {
    for (std::size_t b : sizes) total += ipow(b, a);
  }
  return total;
}

}  // namespace oracle
