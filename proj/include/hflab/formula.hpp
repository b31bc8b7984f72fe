#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hflab/error.hpp"
#include "hflab/hfset.hpp"

namespace hflab {

// Constant indices above this are rejected by the parser.
inline constexpr std::size_t kMaxConstIndex = 63;

struct Var {
  std::string name;
  friend bool operator==(const Var&, const Var&) = default;
};

// The constant C_n.
struct ConstC {
  std::size_t index = 0;
  friend bool operator==(const ConstC&, const ConstC&) = default;
};

using Term = std::variant<Var, ConstC, HfSet>;

inline Term var(std::string name) { return Var{std::move(name)}; }
inline Term constant(std::size_t n) { return ConstC{n}; }
inline Term literal(HfSet x) { return x; }

std::string render_term(const Term& t);

enum class FormulaKind {
  kMember,
  kEqual,
  kNot,
  kAnd,
  kOr,
  kImplies,
  kIff,
  kForAll,
  kExists,
  kForAllIn,
  kExistsIn,
};

// Immutable first-order formula over membership and equality.
class Formula {
 public:
  static Formula member(Term a, Term b);
  static Formula equal(Term a, Term b);
  static Formula negation(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula forall(std::string v, Formula body);
  static Formula exists(std::string v, Formula body);
  static Formula forall_in(std::string v, Term bound, Formula body);
  static Formula exists_in(std::string v, Term bound, Formula body);

  FormulaKind kind() const;
  bool is_atom() const;
  bool is_quantifier() const;
  bool is_bounded_quantifier() const;
  bool is_binary() const;

  // Atoms.
  const Term& lhs() const;
  const Term& rhs() const;
  // Connectives: child(0), child(1); Not has one child; quantifiers have the
  // body as child(0).
  const Formula& child(std::size_t i) const;
  // Quantifiers.
  const std::string& bound_var() const;
  // Bounded quantifiers.
  const Term& bound_term() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Conjunction/disjunction of a non-empty list, left-nested.
Formula conj_all(const std::vector<Formula>& fs);
Formula disj_all(const std::vector<Formula>& fs);

// --- text ------------------------------------------------------------------

// Throws ParseError. Shadowed or free-clashing bound variables are renamed
// (x -> x_1, ...) so that no bound name coincides with a free name or an
// enclosing binder.
Formula parse_formula(std::string_view text);
std::string render(const Formula& f);

// --- structure -------------------------------------------------------------

std::set<std::string> free_vars(const Formula& f);
// Every variable name occurring anywhere, bound or free.
std::set<std::string> all_vars(const Formula& f);
std::set<std::size_t> constants_in(const Formula& f);
std::vector<HfSet> literals_in(const Formula& f);

// Bounded quantifiers count as one level.
std::size_t quantifier_depth(const Formula& f);

// Rewrites bounded quantifiers into their guarded unbounded forms.
Formula desugar(const Formula& f);

// The parser's renaming pass, usable on hand-built ASTs.
Formula freshen(const Formula& f);

bool alpha_equivalent(const Formula& a, const Formula& b);

// Capture-avoiding replacement of free occurrences of `v` by `t`.
Formula substitute(const Formula& f, const std::string& v, const Term& t);

// Binds every quantifier to `bound`. Free variables stay free; evaluation
// restricts their range (see model::satisfies_relativized). Throws
// CaptureError when `bound` is a variable that some quantifier binds.
Formula relativize(const Formula& f, const Term& bound);

// The relativized formula with free variables explicitly guarded:
// (v1 in bound & ... ) -> relativize(f, bound).
Formula relativize_guarded(const Formula& f, const Term& bound);

// No constant C_m with m > n; and, when `literal_rank_bound` is given, no
// literal of rank above it.
bool is_safe_above(const Formula& f, std::size_t n,
                   std::optional<std::size_t> literal_rank_bound = std::nullopt);

// --- built-in axioms -------------------------------------------------------

enum class AxiomId {
  kZ1,
  kZ2,
  kZ3,
  kZ4,
  kZ5,
  kZ5Literal,
  kZ6,
  kZ7,
  kF1Guarded,
  kF1Literal,
};

std::string_view axiom_name(AxiomId id);
std::optional<AxiomId> axiom_from_name(std::string_view name);
const std::vector<AxiomId>& all_axioms();

// Closed formula for the axiom, with defined symbols expanded to membership
// and equality. Z2 returns the separation instance for the trivial predicate
// "Z = Z"; use separation_instance for the schema.
const Formula& builtin(AxiomId id);

// forall params. forall X. exists Y. forall Z. (Z in Y <-> Z in X & phi(Z)).
// `v` is the predicate's argument; any other free variables of phi are
// closed universally on the outside.
Formula separation_instance(const Formula& phi, const std::string& v);

// Building blocks used by the axioms and the hierarchy checks.
namespace defs {
Formula is_empty(const std::string& v);
Formula subset(const std::string& a, const std::string& b);
// y = x u {x}
Formula is_successor_of(const std::string& y, const std::string& x);
Formula is_transitive(const std::string& v);
// Transitive set of transitive sets.
Formula is_ordinal(const std::string& v);
// p = {{a},{a,b}}
Formula is_ordered_pair(const std::string& p, const std::string& a,
                        const std::string& b);
}  // namespace defs

}  // namespace hflab
