#include "hflab/model.hpp"

#include <algorithm>

#include "hflab/error.hpp"

namespace hflab {

Structure::Structure(std::vector<HfSet> universe,
                     std::map<std::size_t, HfSet> tiers)
    : universe_(std::move(universe)), tiers_(std::move(tiers)) {
  std::sort(universe_.begin(), universe_.end());
  universe_.erase(std::unique(universe_.begin(), universe_.end()),
                  universe_.end());
}

bool Structure::contains(const HfSet& x) const {
  return std::binary_search(universe_.begin(), universe_.end(), x);
}

Structure Structure::with_tiers(std::map<std::size_t, HfSet> tiers) const {
  Structure s = *this;
  s.tiers_ = std::move(tiers);
  return s;
}

Structure Structure::induced_by(const HfSet& x) const {
  std::vector<HfSet> sub;
  for (const HfSet& u : universe_) {
    if (x.contains(u)) sub.push_back(u);
  }
  Structure s;
  s.universe_ = std::move(sub);
  s.tiers_ = tiers_;
  return s;
}

HfSet Structure::as_set() const { return HfSet::from_sorted(universe_); }

Assignment to_assignment(const Binding& b) {
  Assignment a;
  for (const auto& [name, value] : b) a[name] = value;
  return a;
}

namespace {

struct CTerm {
  int slot = -1;
  HfSet value;
};

struct CNode {
  FormulaKind kind;
  CTerm a;
  CTerm b;
  int slot = -1;
  int c0 = -1;
  int c1 = -1;
};

// Formula compiled to a flat node array with variables resolved to slots.
class Evaluator {
 public:
  Evaluator(const Structure& m, const Formula& f, const Assignment& asg,
            std::uint64_t budget)
      : m_(m), budget_(budget) {
    std::map<std::string, int> scope;
    for (const auto& name : free_vars(f)) {
      auto it = asg.find(name);
      if (it == asg.end()) {
        throw EvalError("variable '" + name + "' is not assigned");
      }
      scope[name] = static_cast<int>(env_.size());
      env_.push_back(it->second);
    }
    root_ = compile(f, scope);
  }

  bool run() { return eval(root_); }
  std::uint64_t nodes() const { return count_; }

 private:
  CTerm compile_term(const Term& t, const std::map<std::string, int>& scope) {
    CTerm out;
    if (const auto* v = std::get_if<Var>(&t)) {
      out.slot = scope.at(v->name);
    } else if (const auto* c = std::get_if<ConstC>(&t)) {
      auto it = m_.tiers().find(c->index);
      if (it == m_.tiers().end()) {
        throw EvalError("constant C" + std::to_string(c->index) +
                        " has no interpretation in this structure");
      }
      out.value = it->second;
    } else {
      out.value = std::get<HfSet>(t);
    }
    return out;
  }

  int compile(const Formula& f, std::map<std::string, int>& scope) {
    CNode node;
    node.kind = f.kind();
    if (f.is_atom()) {
      node.a = compile_term(f.lhs(), scope);
      node.b = compile_term(f.rhs(), scope);
    } else if (f.is_quantifier()) {
      if (f.is_bounded_quantifier()) node.a = compile_term(f.bound_term(), scope);
      node.slot = static_cast<int>(env_.size());
      env_.emplace_back();
      auto saved = scope.find(f.bound_var()) != scope.end()
                       ? std::optional<int>(scope[f.bound_var()])
                       : std::nullopt;
      scope[f.bound_var()] = node.slot;
      node.c0 = compile(f.child(0), scope);
      if (saved) {
        scope[f.bound_var()] = *saved;
      } else {
        scope.erase(f.bound_var());
      }
    } else {
      node.c0 = compile(f.child(0), scope);
      if (f.is_binary()) node.c1 = compile(f.child(1), scope);
    }
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size()) - 1;
  }

  const HfSet& value(const CTerm& t) const {
    return t.slot >= 0 ? env_[static_cast<std::size_t>(t.slot)] : t.value;
  }

  bool eval(int i) {
    if (++count_ > budget_) {
      throw BudgetExceeded("evaluation budget of " + std::to_string(budget_) +
                           " nodes exceeded");
    }
    const CNode& n = nodes_[static_cast<std::size_t>(i)];
    switch (n.kind) {
      case FormulaKind::kMember:
        return value(n.b).contains(value(n.a));
      case FormulaKind::kEqual:
        return value(n.a) == value(n.b);
      case FormulaKind::kNot:
        return !eval(n.c0);
      case FormulaKind::kAnd:
        return eval(n.c0) && eval(n.c1);
      case FormulaKind::kOr:
        return eval(n.c0) || eval(n.c1);
      case FormulaKind::kImplies:
        return !eval(n.c0) || eval(n.c1);
      case FormulaKind::kIff:
        return eval(n.c0) == eval(n.c1);
      case FormulaKind::kForAll:
        for (const HfSet& u : m_.universe()) {
          env_[static_cast<std::size_t>(n.slot)] = u;
          if (!eval(n.c0)) return false;
        }
        return true;
      case FormulaKind::kExists:
        for (const HfSet& u : m_.universe()) {
          env_[static_cast<std::size_t>(n.slot)] = u;
          if (eval(n.c0)) return true;
        }
        return false;
      case FormulaKind::kForAllIn:
      case FormulaKind::kExistsIn: {
        const bool univ = n.kind == FormulaKind::kForAllIn;
        // Copy: the bound may live in the slot we are about to overwrite.
        const HfSet bound = value(n.a);
        for (const HfSet& u : bound.members()) {
          if (!m_.contains(u)) continue;
          env_[static_cast<std::size_t>(n.slot)] = u;
          if (eval(n.c0) != univ) return !univ;
        }
        return univ;
      }
    }
    return false;
  }

  const Structure& m_;
  std::vector<CNode> nodes_;
  std::vector<HfSet> env_;
  int root_ = -1;
  std::uint64_t budget_;
  std::uint64_t count_ = 0;
};

}  // namespace

bool satisfies(const Structure& m, const Formula& f, const Assignment& asg,
               const EvalOptions& options, EvalStats* stats) {
  Evaluator ev(m, f, asg, options.budget);
  bool result = false;
  try {
    result = ev.run();
  } catch (...) {
    if (stats) stats->nodes += ev.nodes();
    throw;
  }
  if (stats) stats->nodes += ev.nodes();
  return result;
}

bool satisfies_relativized(const Structure& m, const Formula& f,
                           const Term& bound, const Assignment& asg,
                           const EvalOptions& options) {
  HfSet bound_value;
  if (const auto* v = std::get_if<Var>(&bound)) {
    auto it = asg.find(v->name);
    if (it == asg.end()) throw EvalError("bound variable '" + v->name + "' is not assigned");
    bound_value = it->second;
  } else if (const auto* c = std::get_if<ConstC>(&bound)) {
    auto it = m.tiers().find(c->index);
    if (it == m.tiers().end()) {
      throw EvalError("constant C" + std::to_string(c->index) + " has no interpretation");
    }
    bound_value = it->second;
  } else {
    bound_value = std::get<HfSet>(bound);
  }
  for (const auto& name : free_vars(f)) {
    if (const auto* v = std::get_if<Var>(&bound); v && v->name == name) continue;
    auto it = asg.find(name);
    if (it == asg.end()) throw EvalError("variable '" + name + "' is not assigned");
    if (!bound_value.contains(it->second)) return true;
  }
  return satisfies(m, relativize(f, bound), asg, options);
}

}  // namespace hflab
