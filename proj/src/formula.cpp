#include <algorithm>
#include <functional>
#include <map>

#include "hflab/formula.hpp"

namespace hflab {

struct Formula::Node {
  FormulaKind kind;
  Term lhs;
  Term rhs;
  std::vector<Formula> children;
  std::string var;
  Term bound;
};

namespace {
const Term kNoTerm = Var{""};
}

Formula Formula::member(Term a, Term b) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::kMember;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::equal(Term a, Term b) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::kEqual;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::kNot;
  n->children = {std::move(f)};
  return Formula(std::move(n));
}

namespace {
template <class NodeT>
std::shared_ptr<NodeT> binary_node(FormulaKind k, Formula a, Formula b) {
  auto n = std::make_shared<NodeT>();
  n->kind = k;
  n->children = {std::move(a), std::move(b)};
  return n;
}
}  // namespace

Formula Formula::conj(Formula a, Formula b) {
  return Formula(binary_node<Node>(FormulaKind::kAnd, std::move(a), std::move(b)));
}
Formula Formula::disj(Formula a, Formula b) {
  return Formula(binary_node<Node>(FormulaKind::kOr, std::move(a), std::move(b)));
}
Formula Formula::implies(Formula a, Formula b) {
  return Formula(
      binary_node<Node>(FormulaKind::kImplies, std::move(a), std::move(b)));
}
Formula Formula::iff(Formula a, Formula b) {
  return Formula(binary_node<Node>(FormulaKind::kIff, std::move(a), std::move(b)));
}

Formula Formula::forall(std::string v, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::kForAll;
  n->var = std::move(v);
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

Formula Formula::exists(std::string v, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::kExists;
  n->var = std::move(v);
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

Formula Formula::forall_in(std::string v, Term bound, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::kForAllIn;
  n->var = std::move(v);
  n->bound = std::move(bound);
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

Formula Formula::exists_in(std::string v, Term bound, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::kExistsIn;
  n->var = std::move(v);
  n->bound = std::move(bound);
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

FormulaKind Formula::kind() const { return node_->kind; }

bool Formula::is_atom() const {
  return kind() == FormulaKind::kMember || kind() == FormulaKind::kEqual;
}

bool Formula::is_quantifier() const {
  switch (kind()) {
    case FormulaKind::kForAll:
    case FormulaKind::kExists:
    case FormulaKind::kForAllIn:
    case FormulaKind::kExistsIn:
      return true;
    default:
      return false;
  }
}

bool Formula::is_bounded_quantifier() const {
  return kind() == FormulaKind::kForAllIn || kind() == FormulaKind::kExistsIn;
}

bool Formula::is_binary() const {
  switch (kind()) {
    case FormulaKind::kAnd:
    case FormulaKind::kOr:
    case FormulaKind::kImplies:
    case FormulaKind::kIff:
      return true;
    default:
      return false;
  }
}

const Term& Formula::lhs() const { return node_->lhs; }
const Term& Formula::rhs() const { return node_->rhs; }
const Formula& Formula::child(std::size_t i) const {
  return node_->children.at(i);
}
const std::string& Formula::bound_var() const { return node_->var; }
const Term& Formula::bound_term() const {
  return is_bounded_quantifier() ? node_->bound : kNoTerm;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.is_atom()) return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  if (a.is_quantifier()) {
    if (a.bound_var() != b.bound_var()) return false;
    if (a.is_bounded_quantifier() && !(a.bound_term() == b.bound_term())) {
      return false;
    }
    return a.child(0) == b.child(0);
  }
  if (a.kind() == FormulaKind::kNot) return a.child(0) == b.child(0);
  return a.child(0) == b.child(0) && a.child(1) == b.child(1);
}

Formula conj_all(const std::vector<Formula>& fs) {
  Formula out = fs.at(0);
  for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::conj(out, fs[i]);
  return out;
}

Formula disj_all(const std::vector<Formula>& fs) {
  Formula out = fs.at(0);
  for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::disj(out, fs[i]);
  return out;
}

namespace {

Formula rebuild(const Formula& f, const std::vector<Formula>& kids) {
  switch (f.kind()) {
    case FormulaKind::kNot:
      return Formula::negation(kids[0]);
    case FormulaKind::kAnd:
      return Formula::conj(kids[0], kids[1]);
    case FormulaKind::kOr:
      return Formula::disj(kids[0], kids[1]);
    case FormulaKind::kImplies:
      return Formula::implies(kids[0], kids[1]);
    case FormulaKind::kIff:
      return Formula::iff(kids[0], kids[1]);
    default:
      return f;
  }
}

std::optional<std::string> term_var(const Term& t) {
  if (const auto* v = std::get_if<Var>(&t)) return v->name;
  return std::nullopt;
}

void collect_free(const Formula& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  auto add_term = [&](const Term& t) {
    if (auto v = term_var(t); v && !bound.contains(*v)) out.insert(*v);
  };
  if (f.is_atom()) {
    add_term(f.lhs());
    add_term(f.rhs());
    return;
  }
  if (f.is_quantifier()) {
    if (f.is_bounded_quantifier()) add_term(f.bound_term());
    const bool fresh = bound.insert(f.bound_var()).second;
    collect_free(f.child(0), bound, out);
    if (fresh) bound.erase(f.bound_var());
    return;
  }
  collect_free(f.child(0), bound, out);
  if (f.is_binary()) collect_free(f.child(1), bound, out);
}

template <class Fn>
void visit_terms(const Formula& f, Fn&& fn) {
  if (f.is_atom()) {
    fn(f.lhs());
    fn(f.rhs());
    return;
  }
  if (f.is_bounded_quantifier()) fn(f.bound_term());
  visit_terms(f.child(0), fn);
  if (f.is_binary()) visit_terms(f.child(1), fn);
}

template <class Fn>
void visit_binders(const Formula& f, Fn&& fn) {
  if (f.is_atom()) return;
  if (f.is_quantifier()) fn(f.bound_var());
  visit_binders(f.child(0), fn);
  if (f.is_binary()) visit_binders(f.child(1), fn);
}

std::string fresh_name(const std::string& base,
                       const std::set<std::string>& avoid) {
  for (std::size_t k = 1;; ++k) {
    std::string cand = base + "_" + std::to_string(k);
    if (!avoid.contains(cand)) return cand;
  }
}

Term rename_term(const Term& t, const std::map<std::string, std::string>& env) {
  if (auto v = term_var(t)) {
    if (auto it = env.find(*v); it != env.end()) return Var{it->second};
  }
  return t;
}

Formula freshen_rec(const Formula& f, std::map<std::string, std::string>& env,
                    std::set<std::string>& in_scope,
                    std::set<std::string>& used) {
  if (f.is_atom()) {
    auto a = rename_term(f.lhs(), env);
    auto b = rename_term(f.rhs(), env);
    return f.kind() == FormulaKind::kMember ? Formula::member(a, b)
                                            : Formula::equal(a, b);
  }
  if (f.is_quantifier()) {
    const std::string& v = f.bound_var();
    Term bound = f.is_bounded_quantifier() ? rename_term(f.bound_term(), env)
                                           : Term{};
    std::string name = v;
    if (in_scope.contains(v)) {
      name = fresh_name(v, used);
      used.insert(name);
    }
    auto saved = env.find(v) != env.end() ? std::optional(env[v]) : std::nullopt;
    env[v] = name;
    const bool added = in_scope.insert(name).second;
    Formula body = freshen_rec(f.child(0), env, in_scope, used);
    if (added) in_scope.erase(name);
    if (saved) {
      env[v] = *saved;
    } else {
      env.erase(v);
    }
    switch (f.kind()) {
      case FormulaKind::kForAll:
        return Formula::forall(name, body);
      case FormulaKind::kExists:
        return Formula::exists(name, body);
      case FormulaKind::kForAllIn:
        return Formula::forall_in(name, bound, body);
      default:
        return Formula::exists_in(name, bound, body);
    }
  }
  std::vector<Formula> kids;
  kids.push_back(freshen_rec(f.child(0), env, in_scope, used));
  if (f.is_binary()) kids.push_back(freshen_rec(f.child(1), env, in_scope, used));
  return rebuild(f, kids);
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return out;
}

std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> out;
  visit_terms(f, [&](const Term& t) {
    if (auto v = term_var(t)) out.insert(*v);
  });
  visit_binders(f, [&](const std::string& v) { out.insert(v); });
  return out;
}

std::set<std::size_t> constants_in(const Formula& f) {
  std::set<std::size_t> out;
  visit_terms(f, [&](const Term& t) {
    if (const auto* c = std::get_if<ConstC>(&t)) out.insert(c->index);
  });
  return out;
}

std::vector<HfSet> literals_in(const Formula& f) {
  std::vector<HfSet> out;
  visit_terms(f, [&](const Term& t) {
    if (const auto* x = std::get_if<HfSet>(&t)) out.push_back(*x);
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t quantifier_depth(const Formula& f) {
  if (f.is_atom()) return 0;
  std::size_t d = quantifier_depth(f.child(0));
  if (f.is_binary()) d = std::max(d, quantifier_depth(f.child(1)));
  return f.is_quantifier() ? d + 1 : d;
}

Formula desugar(const Formula& f) {
  if (f.is_atom()) return f;
  if (f.is_quantifier()) {
    Formula body = desugar(f.child(0));
    std::string v = f.bound_var();
    // "forall x in x" bounds x by the outer x; the guard must not capture it.
    if (f.is_bounded_quantifier() && term_var(f.bound_term()) == v) {
      const std::string w = fresh_name(v, all_vars(f));
      body = substitute(body, v, Var{w});
      v = w;
    }
    switch (f.kind()) {
      case FormulaKind::kForAll:
        return Formula::forall(v, body);
      case FormulaKind::kExists:
        return Formula::exists(v, body);
      case FormulaKind::kForAllIn:
        return Formula::forall(
            v, Formula::implies(Formula::member(Var{v}, f.bound_term()), body));
      default:
        return Formula::exists(
            v, Formula::conj(Formula::member(Var{v}, f.bound_term()), body));
    }
  }
  std::vector<Formula> kids{desugar(f.child(0))};
  if (f.is_binary()) kids.push_back(desugar(f.child(1)));
  return rebuild(f, kids);
}

Formula freshen(const Formula& f) {
  std::map<std::string, std::string> env;
  std::set<std::string> in_scope = free_vars(f);
  std::set<std::string> used = all_vars(f);
  return freshen_rec(f, env, in_scope, used);
}

namespace {

bool alpha_rec(const Formula& a, const Formula& b,
               std::map<std::string, std::string>& ab,
               std::map<std::string, std::string>& ba) {
  auto same_term = [&](const Term& s, const Term& t) {
    auto sv = term_var(s);
    auto tv = term_var(t);
    if (sv && tv) {
      auto i = ab.find(*sv);
      auto j = ba.find(*tv);
      if (i == ab.end() && j == ba.end()) return *sv == *tv;
      return i != ab.end() && j != ba.end() && i->second == *tv &&
             j->second == *sv;
    }
    return s == t;
  };
  if (a.kind() != b.kind()) return false;
  if (a.is_atom()) return same_term(a.lhs(), b.lhs()) && same_term(a.rhs(), b.rhs());
  if (a.is_quantifier()) {
    if (a.is_bounded_quantifier() && !same_term(a.bound_term(), b.bound_term())) {
      return false;
    }
    const std::string& va = a.bound_var();
    const std::string& vb = b.bound_var();
    auto sa = ab.find(va) != ab.end() ? std::optional(ab[va]) : std::nullopt;
    auto sb = ba.find(vb) != ba.end() ? std::optional(ba[vb]) : std::nullopt;
    ab[va] = vb;
    ba[vb] = va;
    const bool ok = alpha_rec(a.child(0), b.child(0), ab, ba);
    if (sa) ab[va] = *sa; else ab.erase(va);
    if (sb) ba[vb] = *sb; else ba.erase(vb);
    return ok;
  }
  if (!alpha_rec(a.child(0), b.child(0), ab, ba)) return false;
  return !a.is_binary() || alpha_rec(a.child(1), b.child(1), ab, ba);
}

Formula subst_rec(const Formula& f, const std::string& v, const Term& t,
                  const std::set<std::string>& term_vars,
                  std::set<std::string>& used) {
  auto sub_term = [&](const Term& s) -> Term {
    if (auto name = term_var(s); name && *name == v) return t;
    return s;
  };
  if (f.is_atom()) {
    return f.kind() == FormulaKind::kMember
               ? Formula::member(sub_term(f.lhs()), sub_term(f.rhs()))
               : Formula::equal(sub_term(f.lhs()), sub_term(f.rhs()));
  }
  if (f.is_quantifier()) {
    Term bound = f.is_bounded_quantifier() ? sub_term(f.bound_term()) : Term{};
    std::string name = f.bound_var();
    Formula body = f.child(0);
    if (name != v) {
      if (term_vars.contains(name)) {
        std::string renamed = fresh_name(name, used);
        used.insert(renamed);
        body = substitute(body, name, Var{renamed});
        name = renamed;
      }
      body = subst_rec(body, v, t, term_vars, used);
    }
    switch (f.kind()) {
      case FormulaKind::kForAll:
        return Formula::forall(name, body);
      case FormulaKind::kExists:
        return Formula::exists(name, body);
      case FormulaKind::kForAllIn:
        return Formula::forall_in(name, bound, body);
      default:
        return Formula::exists_in(name, bound, body);
    }
  }
  std::vector<Formula> kids{subst_rec(f.child(0), v, t, term_vars, used)};
  if (f.is_binary()) kids.push_back(subst_rec(f.child(1), v, t, term_vars, used));
  return rebuild(f, kids);
}

Formula relativize_rec(const Formula& f, const Term& bound) {
  if (f.is_atom()) return f;
  if (f.is_quantifier()) {
    const std::string& v = f.bound_var();
    Formula body = relativize_rec(f.child(0), bound);
    switch (f.kind()) {
      case FormulaKind::kForAll:
        return Formula::forall_in(v, bound, body);
      case FormulaKind::kExists:
        return Formula::exists_in(v, bound, body);
      case FormulaKind::kForAllIn:
        return Formula::forall_in(
            v, bound,
            Formula::implies(Formula::member(Var{v}, f.bound_term()), body));
      default:
        return Formula::exists_in(
            v, bound,
            Formula::conj(Formula::member(Var{v}, f.bound_term()), body));
    }
  }
  std::vector<Formula> kids{relativize_rec(f.child(0), bound)};
  if (f.is_binary()) kids.push_back(relativize_rec(f.child(1), bound));
  return rebuild(f, kids);
}

}  // namespace

bool alpha_equivalent(const Formula& a, const Formula& b) {
  std::map<std::string, std::string> ab;
  std::map<std::string, std::string> ba;
  return alpha_rec(a, b, ab, ba);
}

Formula substitute(const Formula& f, const std::string& v, const Term& t) {
  std::set<std::string> term_vars;
  if (auto name = term_var(t)) term_vars.insert(*name);
  std::set<std::string> used = all_vars(f);
  used.insert(term_vars.begin(), term_vars.end());
  return subst_rec(f, v, t, term_vars, used);
}

Formula relativize(const Formula& f, const Term& bound) {
  if (auto name = term_var(bound)) {
    bool captured = false;
    visit_binders(f, [&](const std::string& v) { captured |= v == *name; });
    if (captured) {
      throw CaptureError("relativization bound '" + *name +
                         "' is bound by a quantifier; rename it first");
    }
  }
  return relativize_rec(f, bound);
}

Formula relativize_guarded(const Formula& f, const Term& bound) {
  Formula body = relativize(f, bound);
  std::vector<Formula> guards;
  for (const auto& v : free_vars(f)) {
    if (term_var(bound) == v) continue;
    guards.push_back(Formula::member(Var{v}, bound));
  }
  if (guards.empty()) return body;
  return Formula::implies(conj_all(guards), body);
}

bool is_safe_above(const Formula& f, std::size_t n,
                   std::optional<std::size_t> literal_rank_bound) {
  for (std::size_t c : constants_in(f)) {
    if (c > n) return false;
  }
  if (literal_rank_bound) {
    for (const HfSet& x : literals_in(f)) {
      if (x.rank() > *literal_rank_bound) return false;
    }
  }
  return true;
}

}  // namespace hflab
