#include <cstdio>

#include "hflab/error.hpp"
#include "hflab/model.hpp"

namespace hflab {

std::string_view status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::kHolds:
      return "holds";
    case VerdictStatus::kFails:
      return "fails";
    case VerdictStatus::kSampled:
      return "sampled";
    case VerdictStatus::kNotExercised:
      return "not_exercised";
  }
  return "?";
}

std::pair<std::vector<std::string>, Formula> universal_prefix(const Formula& f) {
  std::vector<std::string> vars;
  const Formula* cur = &f;
  while (cur->kind() == FormulaKind::kForAll) {
    vars.push_back(cur->bound_var());
    cur = &cur->child(0);
  }
  return {vars, *cur};
}

Verdict check_closed(const Structure& m, const Formula& f,
                     const EvalOptions& options) {
  auto [prefix, body] = universal_prefix(f);
  Verdict out;
  const auto& u = m.universe();
  const std::size_t k = prefix.size();
  if (k > 0 && u.empty()) return out;

  std::vector<std::size_t> idx(k, 0);
  Assignment asg;
  while (true) {
    for (std::size_t i = 0; i < k; ++i) asg[prefix[i]] = u[idx[i]];
    EvalOptions remaining;
    remaining.budget = options.budget > out.nodes ? options.budget - out.nodes : 0;
    EvalStats stats;
    bool ok = false;
    try {
      ok = satisfies(m, body, asg, remaining, &stats);
    } catch (const BudgetExceeded&) {
      out.nodes += stats.nodes;
      out.status = VerdictStatus::kSampled;
      out.sampled_holds = true;
      return out;
    }
    out.nodes += stats.nodes;
    ++out.samples;
    if (!ok) {
      out.status = VerdictStatus::kFails;
      for (std::size_t i = 0; i < k; ++i) out.witness.emplace_back(prefix[i], u[idx[i]]);
      return out;
    }
    // Odometer: last variable varies fastest.
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < u.size()) break;
      idx[pos] = 0;
      if (pos == 0) {
        pos = k + 1;
        break;
      }
    }
    if (k == 0 || pos == k + 1) break;
  }
  return out;
}

std::vector<BatteryItem> make_battery(const std::vector<std::string>& texts) {
  std::vector<BatteryItem> out;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    Formula phi = parse_formula(texts[i]);
    auto fv = free_vars(phi);
    std::string v = fv.empty() ? "Z" : *fv.begin();
    if (fv.size() > 1) {
      // Prefer Z as the argument; the rest become parameters.
      v = fv.contains("Z") ? "Z" : *fv.begin();
    }
    char id[16];
    std::snprintf(id, sizeof id, "sep%02zu", i + 1);
    out.push_back({id, phi, v});
  }
  return out;
}

const std::vector<BatteryItem>& default_battery() {
  static const std::vector<BatteryItem> battery = make_battery({
      "Z = Z",
      "!(Z = Z)",
      "Z in Z",
      "exists A in Z. A = A",
      "forall A. !(A in Z)",
      "forall A in Z. forall B in A. B in Z",
      "exists A in Z. forall B. !(B in A)",
      "forall A in Z. forall B in Z. (A in B | B in A | A = B)",
      "exists A. Z in A",
      "exists A in Z. exists B in Z. !(A = B)",
      "{} in Z",
      "(forall A in Z. forall B in A. B in Z) & "
      "(forall A in Z. forall B in A. forall C in B. C in A)",
  });
  return battery;
}

const AuditRow& AuditReport::row(AxiomId id) const {
  for (const auto& r : rows) {
    if (r.axiom == id) return r;
  }
  throw Error("axiom " + std::string(axiom_name(id)) + " not in report");
}

std::vector<AxiomId> AuditReport::headline() const {
  return {AxiomId::kZ1, AxiomId::kZ2, AxiomId::kZ3, AxiomId::kZ4,
          AxiomId::kZ5, AxiomId::kZ6, AxiomId::kZ7,
          literal_foundation ? AxiomId::kF1Literal : AxiomId::kF1Guarded};
}

bool AuditReport::all_headline_hold() const {
  for (AxiomId id : headline()) {
    if (row(id).verdict.status != VerdictStatus::kHolds) return false;
  }
  return true;
}

namespace {

AuditRow audit_separation(const Structure& m,
                          const std::vector<BatteryItem>& battery,
                          const EvalOptions& options) {
  AuditRow row{AxiomId::kZ2, {}, {}, {}};
  if (battery.empty()) {
    row.verdict.status = VerdictStatus::kNotExercised;
    return row;
  }
  bool any_sampled = false;
  for (const auto& item : battery) {
    Verdict v = check_closed(m, separation_instance(item.phi, item.var), options);
    row.verdict.nodes += v.nodes;
    row.verdict.samples += v.samples;
    if (v.status == VerdictStatus::kFails &&
        row.verdict.status != VerdictStatus::kFails) {
      row.verdict.status = VerdictStatus::kFails;
      row.verdict.witness = v.witness;
      row.witness_instance = item.id;
    }
    any_sampled |= v.status == VerdictStatus::kSampled;
    row.instances.push_back({item.id, render(item.phi), std::move(v)});
  }
  if (row.verdict.status != VerdictStatus::kFails && any_sampled) {
    row.verdict.status = VerdictStatus::kSampled;
    row.verdict.sampled_holds = true;
  }
  return row;
}

}  // namespace

AuditReport axiom_audit(const Structure& m,
                        const std::vector<BatteryItem>& battery,
                        const AuditOptions& options) {
  AuditReport report;
  report.literal_foundation = options.literal_foundation;
  report.universe_size = m.size();
  for (AxiomId id : all_axioms()) {
    if (id == AxiomId::kZ2) {
      report.rows.push_back(audit_separation(m, battery, options.eval));
      continue;
    }
    report.rows.push_back({id, check_closed(m, builtin(id), options.eval), {}, {}});
  }
  return report;
}

}  // namespace hflab
