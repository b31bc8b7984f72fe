#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hflab/formula.hpp"
#include "hflab/hfset.hpp"

namespace hflab {

inline constexpr std::uint64_t kDefaultEvalBudget = 100'000'000;

// A finite universe of HF sets with membership inherited from HF membership,
// plus an optional interpretation of the constants C_n.
class Structure {
 public:
  Structure() = default;
  explicit Structure(std::vector<HfSet> universe,
                     std::map<std::size_t, HfSet> tiers = {});

  // Sorted in Ackermann order, duplicate-free.
  const std::vector<HfSet>& universe() const { return universe_; }
  const std::map<std::size_t, HfSet>& tiers() const { return tiers_; }
  std::size_t size() const { return universe_.size(); }
  bool contains(const HfSet& x) const;

  Structure with_tiers(std::map<std::size_t, HfSet> tiers) const;
  // Substructure on the universe members that belong to x.
  Structure induced_by(const HfSet& x) const;

  // The universe as a single HF set.
  HfSet as_set() const;

 private:
  std::vector<HfSet> universe_;
  std::map<std::size_t, HfSet> tiers_;
};

using Assignment = std::map<std::string, HfSet>;
// Ordered variable/value list, used for witnesses so that their order is the
// quantifier order.
using Binding = std::vector<std::pair<std::string, HfSet>>;

Assignment to_assignment(const Binding& b);

struct EvalOptions {
  std::uint64_t budget = kDefaultEvalBudget;
};

struct EvalStats {
  std::uint64_t nodes = 0;
};

// M |= f [asg]. Quantifiers range over the universe; bounded quantifiers over
// the members of the bound that lie in the universe. Throws EvalError for
// unbound variables or uninterpreted constants and BudgetExceeded when more
// than options.budget formula nodes are visited.
bool satisfies(const Structure& m, const Formula& f, const Assignment& asg = {},
               const EvalOptions& options = {}, EvalStats* stats = nullptr);

// Evaluates relativize(f, bound); free variables of f whose value is not a
// member of the bound make the result vacuously true.
bool satisfies_relativized(const Structure& m, const Formula& f,
                           const Term& bound, const Assignment& asg = {},
                           const EvalOptions& options = {});

// --- axiom audit -----------------------------------------------------------

enum class VerdictStatus { kHolds, kFails, kSampled, kNotExercised };

std::string_view status_name(VerdictStatus s);

struct Verdict {
  VerdictStatus status = VerdictStatus::kHolds;
  // Set for kFails: values of the leading universal quantifiers (empty when
  // the axiom is existential).
  Binding witness;
  // For kSampled: what the checked portion showed and how many prefix
  // assignments were checked before the budget ran out.
  bool sampled_holds = true;
  std::uint64_t samples = 0;
  std::uint64_t nodes = 0;
};

struct BatteryItem {
  std::string id;
  Formula phi;
  // The predicate's argument.
  std::string var;
};

// Parses "Z = Z"-style predicates; the argument is the sole free variable or
// "Z" when there is none. Ids are "sep01", "sep02", ...
std::vector<BatteryItem> make_battery(const std::vector<std::string>& texts);
// Twelve separation predicates exercising emptiness, transitivity, ordinals,
// literals and linear order.
const std::vector<BatteryItem>& default_battery();

struct BatteryVerdict {
  std::string id;
  std::string predicate;
  Verdict verdict;
};

struct AuditRow {
  AxiomId axiom;
  Verdict verdict;
  // Only for Z2.
  std::vector<BatteryVerdict> instances;
  // Battery id carrying the Z2 witness.
  std::string witness_instance;
};

struct AuditReport {
  std::vector<AuditRow> rows;
  bool literal_foundation = false;
  std::size_t universe_size = 0;

  const AuditRow& row(AxiomId id) const;
  // Axioms whose verdict counts toward the overall outcome: Z1..Z7 plus the
  // guarded (or, with literal_foundation, the literal) foundation axiom.
  std::vector<AxiomId> headline() const;
  bool all_headline_hold() const;
};

struct AuditOptions {
  EvalOptions eval;
  bool literal_foundation = false;
};

// Evaluates one closed formula, enumerating its leading universal prefix in
// lexicographic Ackermann order so that the first failure is the least
// witness.
Verdict check_closed(const Structure& m, const Formula& f,
                     const EvalOptions& options = {});

AuditReport axiom_audit(const Structure& m,
                        const std::vector<BatteryItem>& battery,
                        const AuditOptions& options = {});

// Strips the leading unbounded universal quantifiers.
std::pair<std::vector<std::string>, Formula> universal_prefix(const Formula& f);

// --- depth-bounded elementary submodel -------------------------------------

struct EfOptions {
  // Cap on game positions visited.
  std::uint64_t budget = 50'000'000;
};

struct EfVerdict {
  bool holds = true;
  // On failure: a formula of depth <= d with free variables among the
  // parameter names, true in the larger structure and false in the smaller.
  std::optional<Formula> witness;
  Binding params;
  std::size_t rounds = 0;
  std::uint64_t tuples_checked = 0;
  std::uint64_t positions = 0;
};

// Parameter names used in witnesses: a, b, c, ...
std::string param_name(std::size_t i);

// Decides (X, a) ==_d (Y, a) for every tuple a of length <= max_params drawn
// from X, via d-round Ehrenfeucht-Fraisse games. Requires X's universe to be
// a subset of Y's (ConfigError otherwise).
EfVerdict elementary_d(const Structure& x, const Structure& y, std::size_t d,
                       std::size_t max_params, const EfOptions& options = {});

// Whether the duplicator wins the d-round game from the given positions.
bool ef_duplicator_wins(const Structure& left, const std::vector<HfSet>& lt,
                        const Structure& right, const std::vector<HfSet>& rt,
                        std::size_t rounds);

// --- formula enumeration ---------------------------------------------------

// Formulas of quantifier depth <= depth over `vars` in a fixed normal form:
// literals (atoms u in w, u = w and their negations); then, per level,
// "exists y. C" with C a conjunction and "forall y. D" with D a disjunction of
// 1..width distinct lower-level formulas over vars + [y]. The sink returns
// false to stop early.
void enumerate_formulas(std::size_t depth, const std::vector<std::string>& vars,
                        std::size_t width,
                        const std::function<bool(const Formula&)>& sink);
std::vector<Formula> enumerate_formulas(std::size_t depth,
                                        const std::vector<std::string>& vars,
                                        std::size_t width = 2);

}  // namespace hflab
