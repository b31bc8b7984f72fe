#include <algorithm>

#include "hflab/model.hpp"

namespace hflab {

namespace {

std::vector<Formula> literals(const std::vector<std::string>& vars) {
  std::vector<Formula> atoms;
  for (const auto& u : vars) {
    for (const auto& w : vars) atoms.push_back(Formula::member(Var{u}, Var{w}));
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t j = i; j < vars.size(); ++j) {
      atoms.push_back(Formula::equal(Var{vars[i]}, Var{vars[j]}));
    }
  }
  std::vector<Formula> out = atoms;
  for (const auto& a : atoms) out.push_back(Formula::negation(a));
  return out;
}

std::string fresh_var(const std::vector<std::string>& vars) {
  static const char* kNames[] = {"y", "z", "w", "u", "v", "s", "t"};
  auto used = [&](const std::string& n) {
    return std::find(vars.begin(), vars.end(), n) != vars.end();
  };
  for (const char* n : kNames) {
    if (!used(n)) return n;
  }
  for (std::size_t k = 1;; ++k) {
    std::string n = "v_" + std::to_string(k);
    if (!used(n)) return n;
  }
}

std::vector<Formula> level(std::size_t depth, const std::vector<std::string>& vars,
                           std::size_t width);

// Calls emit on every combination of 1..width items, by size then index.
bool combinations(const std::vector<Formula>& items, std::size_t width,
                  const std::function<bool(const std::vector<Formula>&)>& emit) {
  std::vector<Formula> pick;
  std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t start,
                                                          std::size_t k) -> bool {
    if (pick.size() == k) return emit(pick);
    for (std::size_t i = start; i < items.size(); ++i) {
      pick.push_back(items[i]);
      if (!rec(i + 1, k)) return false;
      pick.pop_back();
    }
    return true;
  };
  for (std::size_t k = 1; k <= width; ++k) {
    if (!rec(0, k)) return false;
  }
  return true;
}

bool stream(std::size_t depth, const std::vector<std::string>& vars,
            std::size_t width, const std::function<bool(const Formula&)>& sink) {
  if (depth == 0) {
    for (const auto& f : literals(vars)) {
      if (!sink(f)) return false;
    }
    return true;
  }
  if (!stream(depth - 1, vars, width, sink)) return false;
  const std::string y = fresh_var(vars);
  auto inner_vars = vars;
  inner_vars.push_back(y);
  const std::vector<Formula> inner = level(depth - 1, inner_vars, width);
  if (!combinations(inner, width, [&](const std::vector<Formula>& c) {
        return sink(Formula::exists(y, conj_all(c)));
      })) {
    return false;
  }
  return combinations(inner, width, [&](const std::vector<Formula>& c) {
    return sink(Formula::forall(y, disj_all(c)));
  });
}

std::vector<Formula> level(std::size_t depth, const std::vector<std::string>& vars,
                           std::size_t width) {
  std::vector<Formula> out;
  stream(depth, vars, width, [&](const Formula& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

}  // namespace

void enumerate_formulas(std::size_t depth, const std::vector<std::string>& vars,
                        std::size_t width,
                        const std::function<bool(const Formula&)>& sink) {
  stream(depth, vars, width, sink);
}

std::vector<Formula> enumerate_formulas(std::size_t depth,
                                        const std::vector<std::string>& vars,
                                        std::size_t width) {
  return level(depth, vars, width);
}

}  // namespace hflab
