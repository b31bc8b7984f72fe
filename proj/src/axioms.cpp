#include <array>
#include <map>

#include "hflab/formula.hpp"

namespace hflab {

namespace {

using F = Formula;

Term v(const std::string& name) { return Var{name}; }

// First of `base`, base_1, base_2, ... not in `avoid`.
std::string pick(const std::string& base, std::set<std::string> avoid) {
  if (!avoid.contains(base)) return base;
  for (std::size_t k = 1;; ++k) {
    auto cand = base + "_" + std::to_string(k);
    if (!avoid.contains(cand)) return cand;
  }
}

}  // namespace

namespace defs {

Formula is_empty(const std::string& x) {
  const auto w = pick("W", {x});
  return F::forall(w, F::negation(F::member(v(w), v(x))));
}

Formula subset(const std::string& a, const std::string& b) {
  const auto w = pick("W", {a, b});
  return F::forall(w, F::implies(F::member(v(w), v(a)), F::member(v(w), v(b))));
}

Formula is_successor_of(const std::string& y, const std::string& x) {
  const auto w = pick("W", {x, y});
  return F::forall(w, F::iff(F::member(v(w), v(y)),
                             F::disj(F::member(v(w), v(x)), F::equal(v(w), v(x)))));
}

Formula is_transitive(const std::string& x) {
  const auto a = pick("A", {x});
  const auto b = pick("B", {x, a});
  return F::forall_in(a, v(x), F::forall_in(b, v(a), F::member(v(b), v(x))));
}

Formula is_ordinal(const std::string& x) {
  const auto a = pick("A", {x});
  return F::conj(is_transitive(x), F::forall_in(a, v(x), is_transitive(a)));
}

Formula is_ordered_pair(const std::string& p, const std::string& a,
                        const std::string& b) {
  const std::set<std::string> used{p, a, b};
  const auto s = pick("S", used);
  const auto u = pick("U", used);
  // s = {a}
  auto sing = F::conj(F::member(v(a), v(s)),
                      F::forall_in(u, v(s), F::equal(v(u), v(a))));
  // s = {a,b}
  auto dbl = F::conj(
      F::conj(F::member(v(a), v(s)), F::member(v(b), v(s))),
      F::forall_in(u, v(s), F::disj(F::equal(v(u), v(a)), F::equal(v(u), v(b)))));
  return conj_all({F::forall_in(s, v(p), F::disj(sing, dbl)),
                   F::exists_in(s, v(p), sing), F::exists_in(s, v(p), dbl)});
}

}  // namespace defs

namespace {

F empty_member_of(const std::string& x) {
  // The empty collection is a member of x.
  return F::exists_in("E", v(x), defs::is_empty("E"));
}

F build_z5(bool literal) {
  // exists X. (0 in X & forall Y. (Y in X <-> [Y = 0 |] exists Z in X. Y = S Z))
  F succ = F::exists_in("Z", v("X"), defs::is_successor_of("Y", "Z"));
  F rhs = literal ? succ : F::disj(defs::is_empty("Y"), succ);
  return F::exists(
      "X", F::conj(empty_member_of("X"),
                   F::forall("Y", F::iff(F::member(v("Y"), v("X")), rhs))));
}

F build_z7() {
  // forall X. (0 notin X -> exists F. F is a choice function on X), with the
  // choice function spelled out: every member of F is a pair (Y, c) with
  // Y in X and c in Y, and each Y in X has exactly one such pair.
  F no_empty = F::negation(empty_member_of("X"));
  F pairs_ok = F::forall_in(
      "P", v("F"),
      F::exists_in("Y", v("X"),
                   F::exists_in("c", v("Y"), defs::is_ordered_pair("P", "Y", "c"))));
  F unique_value = F::forall_in(
      "Y", v("X"),
      F::exists_in(
          "c", v("Y"),
          F::conj(F::exists_in("P", v("F"), defs::is_ordered_pair("P", "Y", "c")),
                  F::forall_in("Q", v("F"),
                               F::forall("d", F::implies(
                                                   defs::is_ordered_pair("Q", "Y", "d"),
                                                   F::equal(v("d"), v("c"))))))));
  return F::forall("X", F::implies(no_empty,
                                   F::exists("F", F::conj(pairs_ok, unique_value))));
}

F disjoint(const std::string& a, const std::string& b) {
  return F::forall("W", F::negation(F::conj(F::member(v("W"), v(a)),
                                            F::member(v("W"), v(b)))));
}

F build(AxiomId id) {
  switch (id) {
    case AxiomId::kZ1:
      return parse_formula(
          "forall X. forall Y. (X = Y <-> forall Z. (Z in X <-> Z in Y))");
    case AxiomId::kZ2:
      return separation_instance(parse_formula("Z = Z"), "Z");
    case AxiomId::kZ3:
      return parse_formula(
          "forall x. forall y. exists z. forall a. (a in z <-> a = x | a = y)");
    case AxiomId::kZ4:
      return parse_formula(
          "forall X. exists Y. forall Z. (Z in Y <-> exists A in X. Z in A)");
    case AxiomId::kZ5:
      return build_z5(false);
    case AxiomId::kZ5Literal:
      return build_z5(true);
    case AxiomId::kZ6:
      return F::forall(
          "X", F::exists("Y", F::forall("Z", F::iff(defs::subset("Z", "X"),
                                                    F::member(v("Z"), v("Y"))))));
    case AxiomId::kZ7:
      return build_z7();
    case AxiomId::kF1Guarded:
      return F::forall(
          "X", F::implies(F::exists("W", F::member(v("W"), v("X"))),
                          F::exists("Y", F::conj(F::member(v("Y"), v("X")),
                                                 disjoint("Y", "X")))));
    case AxiomId::kF1Literal:
      return F::forall("X", F::exists("Y", F::conj(F::member(v("Y"), v("X")),
                                                   disjoint("Y", "X"))));
  }
  return parse_formula("forall X. X = X");
}

constexpr std::array<std::pair<AxiomId, std::string_view>, 10> kNames{{
    {AxiomId::kZ1, "Z1"},
    {AxiomId::kZ2, "Z2"},
    {AxiomId::kZ3, "Z3"},
    {AxiomId::kZ4, "Z4"},
    {AxiomId::kZ5, "Z5"},
    {AxiomId::kZ5Literal, "Z5_literal"},
    {AxiomId::kZ6, "Z6"},
    {AxiomId::kZ7, "Z7"},
    {AxiomId::kF1Guarded, "F1_guarded"},
    {AxiomId::kF1Literal, "F1_literal"},
}};

}  // namespace

std::string_view axiom_name(AxiomId id) {
  for (const auto& [a, name] : kNames) {
    if (a == id) return name;
  }
  return "?";
}

std::optional<AxiomId> axiom_from_name(std::string_view name) {
  for (const auto& [a, n] : kNames) {
    if (n == name) return a;
  }
  return std::nullopt;
}

const std::vector<AxiomId>& all_axioms() {
  static const std::vector<AxiomId> ids = [] {
    std::vector<AxiomId> out;
    for (const auto& [a, name] : kNames) out.push_back(a);
    return out;
  }();
  return ids;
}

const Formula& builtin(AxiomId id) {
  static const std::map<AxiomId, Formula> table = [] {
    std::map<AxiomId, Formula> m;
    for (const auto& [a, name] : kNames) m.emplace(a, freshen(build(a)));
    return m;
  }();
  return table.at(id);
}

Formula separation_instance(const Formula& phi, const std::string& var_name) {
  std::set<std::string> taken = all_vars(phi);
  taken.insert(var_name);
  const auto x = pick("X", taken);
  taken.insert(x);
  const auto y = pick("Y", taken);
  taken.insert(y);
  taken.erase(var_name);
  const auto z = pick("Z", taken);
  Formula arg = substitute(phi, var_name, Var{z});
  Formula out = F::forall(
      x, F::exists(y, F::forall(z, F::iff(F::member(v(z), v(y)),
                                          F::conj(F::member(v(z), v(x)), arg)))));
  std::set<std::string> params = free_vars(phi);
  params.erase(var_name);
  for (auto it = params.rbegin(); it != params.rend(); ++it) {
    out = F::forall(*it, out);
  }
  return freshen(out);
}

}  // namespace hflab
