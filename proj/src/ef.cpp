#include <algorithm>
#include <map>
#include <set>

#include "hflab/error.hpp"
#include "hflab/model.hpp"

namespace hflab {

std::string param_name(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "a_" + std::to_string(i);
}

namespace {

std::string bound_name(std::size_t i) {
  static const char* kNames[] = {"y", "z", "w", "u", "v", "s", "t"};
  if (i < 7) return kNames[i];
  return "y_" + std::to_string(i - 6);
}

using Tuple = std::vector<HfSet>;

// Returns the first atom (membership before equality, pairs in index order)
// on which the two tuples disagree, phrased so that it holds for `at`.
std::optional<Formula> differing_atom(const Tuple& at, const Tuple& bt,
                                      const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < at.size(); ++i) {
    for (std::size_t j = 0; j < at.size(); ++j) {
      const bool ma = at[j].contains(at[i]);
      if (ma != bt[j].contains(bt[i])) {
        Formula atom = Formula::member(Var{names[i]}, Var{names[j]});
        return ma ? atom : Formula::negation(atom);
      }
      const bool ea = at[i] == at[j];
      if (ea != (bt[i] == bt[j])) {
        Formula atom = Formula::equal(Var{names[i]}, Var{names[j]});
        return ea ? atom : Formula::negation(atom);
      }
    }
  }
  return std::nullopt;
}

bool partial_iso(const Tuple& at, const Tuple& bt) {
  for (std::size_t i = 0; i < at.size(); ++i) {
    for (std::size_t j = 0; j < at.size(); ++j) {
      if (at[j].contains(at[i]) != bt[j].contains(bt[i])) return false;
      if ((at[i] == at[j]) != (bt[i] == bt[j])) return false;
    }
  }
  return true;
}

// Atomic type of e over the tuple t.
std::string atomic_type(const HfSet& e, const Tuple& t) {
  std::string out;
  out.reserve(3 * t.size() + 1);
  out.push_back(e.contains(e) ? '1' : '0');
  for (const HfSet& x : t) {
    out.push_back(e == x ? '1' : '0');
    out.push_back(x.contains(e) ? '1' : '0');
    out.push_back(e.contains(x) ? '1' : '0');
  }
  return out;
}

class Game {
 public:
  Game(const Structure& a, const Structure& b, std::uint64_t budget)
      : a_(a), b_(b), budget_(budget) {}

  std::uint64_t positions() const { return positions_; }

  // Duplicator wins `r` more rounds from (at, bt), where at lives in a_ and bt
  // in b_ (or swapped when `flip`).
  bool wins(std::size_t r, const Tuple& at, const Tuple& bt) {
    tick(1);
    if (!partial_iso(at, bt)) return false;
    if (r == 0) return true;
    Tuple key = at;
    key.insert(key.end(), bt.begin(), bt.end());
    if (memo_.size() <= r) memo_.resize(r + 1);
    auto it = memo_[r].find(key);
    if (it != memo_[r].end()) return it->second;
    const bool result = r == 1 ? last_round(at, bt) : wins_slow(r, at, bt);
    memo_[r].emplace(std::move(key), result);
    return result;
  }

  // A formula of depth <= r with free variables `names`, true of `at` in
  // `sa` and false of `bt` in `sb`. Requires the spoiler to win in r rounds.
  // `forward` says whether (sa, sb) is (a_, b_).
  Formula distinguish(bool forward, std::size_t r, const Tuple& at,
                      const Tuple& bt, std::vector<std::string>& names,
                      std::size_t nparams) {
    if (auto atom = differing_atom(at, bt, names)) return *atom;
    if (r == 0) throw Error("internal: no distinguishing atom");
    const Structure& sa = forward ? a_ : b_;
    const Structure& sb = forward ? b_ : a_;
    const std::string v = bound_name(names.size() - nparams);
    names.push_back(v);
    // Spoiler move in sa: exists v. AND over responses.
    for (const HfSet& e : sa.universe()) {
      Tuple at2 = at;
      at2.push_back(e);
      if (!spoiler_move_wins(forward, r, at2, bt, sb)) continue;
      std::vector<Formula> parts;
      for (const HfSet& f : sb.universe()) {
        Tuple bt2 = bt;
        bt2.push_back(f);
        Formula part = distinguish(forward, r - 1, at2, bt2, names, nparams);
        if (std::find(parts.begin(), parts.end(), part) == parts.end()) {
          parts.push_back(std::move(part));
        }
      }
      names.pop_back();
      return Formula::exists(v, body_of(parts, v));
    }
    // Spoiler move in sb: not exists v. AND over responses, built reversed.
    for (const HfSet& f : sb.universe()) {
      Tuple bt2 = bt;
      bt2.push_back(f);
      if (!spoiler_move_wins(!forward, r, bt2, at, sa)) continue;
      std::vector<Formula> parts;
      for (const HfSet& e : sa.universe()) {
        Tuple at2 = at;
        at2.push_back(e);
        Formula part = distinguish(!forward, r - 1, bt2, at2, names, nparams);
        if (std::find(parts.begin(), parts.end(), part) == parts.end()) {
          parts.push_back(std::move(part));
        }
      }
      names.pop_back();
      return Formula::negation(Formula::exists(v, body_of(parts, v)));
    }
    throw Error("internal: duplicator wins a position marked as lost");
  }

 private:
  static Formula body_of(const std::vector<Formula>& parts, const std::string& v) {
    if (parts.empty()) return Formula::equal(Var{v}, Var{v});
    return conj_all(parts);
  }

  // With the spoiler having extended the `forward` side to `moved`, every
  // response in `other` loses within r - 1 rounds.
  bool spoiler_move_wins(bool forward, std::size_t r, const Tuple& moved,
                         const Tuple& rest, const Structure& other) {
    for (const HfSet& f : other.universe()) {
      Tuple rest2 = rest;
      rest2.push_back(f);
      const bool dup = forward ? wins(r - 1, moved, rest2) : wins(r - 1, rest2, moved);
      if (dup) return false;
    }
    return true;
  }

  void tick(std::uint64_t n) {
    positions_ += n;
    if (positions_ > budget_) {
      throw BudgetExceeded("game budget of " + std::to_string(budget_) +
                           " positions exceeded");
    }
  }

  bool last_round(const Tuple& at, const Tuple& bt) {
    tick(a_.size() + b_.size());
    std::set<std::string> ta;
    std::set<std::string> tb;
    for (const HfSet& e : a_.universe()) ta.insert(atomic_type(e, at));
    for (const HfSet& f : b_.universe()) tb.insert(atomic_type(f, bt));
    return ta == tb;
  }

  bool wins_slow(std::size_t r, const Tuple& at, const Tuple& bt) {
    for (const HfSet& e : a_.universe()) {
      Tuple at2 = at;
      at2.push_back(e);
      bool answered = false;
      for (const HfSet& f : b_.universe()) {
        Tuple bt2 = bt;
        bt2.push_back(f);
        if (wins(r - 1, at2, bt2)) {
          answered = true;
          break;
        }
      }
      if (!answered) return false;
    }
    for (const HfSet& f : b_.universe()) {
      Tuple bt2 = bt;
      bt2.push_back(f);
      bool answered = false;
      for (const HfSet& e : a_.universe()) {
        Tuple at2 = at;
        at2.push_back(e);
        if (wins(r - 1, at2, bt2)) {
          answered = true;
          break;
        }
      }
      if (!answered) return false;
    }
    return true;
  }

  const Structure& a_;
  const Structure& b_;
  std::uint64_t budget_;
  std::uint64_t positions_ = 0;
  std::vector<std::map<Tuple, bool>> memo_;
};

}  // namespace

bool ef_duplicator_wins(const Structure& left, const std::vector<HfSet>& lt,
                        const Structure& right, const std::vector<HfSet>& rt,
                        std::size_t rounds) {
  if (lt.size() != rt.size()) throw ConfigError("position tuples differ in length");
  Game g(left, right, EfOptions{}.budget);
  return g.wins(rounds, lt, rt);
}

EfVerdict elementary_d(const Structure& x, const Structure& y, std::size_t d,
                       std::size_t max_params, const EfOptions& options) {
  for (const HfSet& e : x.universe()) {
    if (!y.contains(e)) {
      throw ConfigError("smaller structure is not contained in the larger: " + e.str());
    }
  }
  EfVerdict out;
  // Game oriented with the larger structure first so witnesses come out true
  // in y and false in x.
  Game g(y, x, options.budget);
  const auto& u = x.universe();
  for (std::size_t len = 0; len <= max_params; ++len) {
    if (len > 0 && u.empty()) break;
    std::vector<std::size_t> idx(len, 0);
    while (true) {
      Tuple t;
      for (std::size_t i : idx) t.push_back(u[i]);
      ++out.tuples_checked;
      if (!g.wins(d, t, t)) {
        std::size_t r = 0;
        while (g.wins(r, t, t)) ++r;
        std::vector<std::string> names;
        for (std::size_t i = 0; i < len; ++i) {
          names.push_back(param_name(i));
          out.params.emplace_back(names.back(), t[i]);
        }
        out.holds = false;
        out.rounds = r;
        out.witness = g.distinguish(true, r, t, t, names, len);
        out.positions = g.positions();
        return out;
      }
      std::size_t pos = len;
      while (pos > 0 && ++idx[pos - 1] == u.size()) {
        idx[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  }
  out.rounds = d;
  out.positions = g.positions();
  return out;
}

}  // namespace hflab
