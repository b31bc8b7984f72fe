// hflab: command-line front end.
//
// Exit codes: 0 holds/true, 1 fails/false, 2 usage or resource error.

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "hflab/category.hpp"
#include "hflab/error.hpp"
#include "hflab/hierarchy.hpp"
#include "hflab/io.hpp"
#include "hflab/model.hpp"
#include "hflab/version.hpp"

using namespace hflab;

namespace {

struct Globals {
  std::string format = "text";
  std::uint64_t budget = kDefaultEvalBudget;
  std::uint64_t ef_budget = EfOptions{}.budget;
  std::uint64_t cap = kDefaultFunctorCap;
  std::uint64_t seed = 0;
  std::vector<std::string> argv;
};

Globals g;

Json envelope(const std::string& command, Json result) {
  Json j;
  j["tool"] = "hflab";
  j["version"] = kVersion;
  j["command"] = command;
  j["argv"] = g.argv;
  j["budgets"] = {{"eval_nodes", g.budget}, {"ef_positions", g.ef_budget}, {"enumeration_cap", g.cap}};
  j["seed"] = g.seed;
  j["result"] = std::move(result);
  return j;
}

int emit(const std::string& command, Json result, const std::string& text, int code) {
  if (g.format == "json") {
    Json e = envelope(command, std::move(result));
    e["exit_code"] = code;
    std::cout << e.dump(2) << "\n";
  } else {
    std::cout << text;
  }
  return code;
}

std::string read_text(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw ConfigError("cannot open '" + arg.substr(1) + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// One predicate per line; blank lines and lines starting with "--" skipped.
std::vector<BatteryItem> load_battery(const std::string& path) {
  if (path.empty()) return default_battery();
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open battery '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line.compare(start, 2, "--") == 0) continue;
    lines.push_back(line.substr(start));
  }
  return make_battery(lines);
}

std::string witness_text(const Binding& b) {
  std::string out;
  for (const auto& [name, value] : b) {
    if (!out.empty()) out += " ";
    out += name + "=" + value.str();
  }
  return out;
}

std::string pad(const std::string& s, std::size_t w) {
  return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' ');
}

std::string audit_table(const AuditReport& r) {
  std::ostringstream out;
  out << pad("axiom", 12) << pad("verdict", 15) << "witness\n";
  const auto headline = r.headline();
  for (const auto& row : r.rows) {
    std::string name(axiom_name(row.axiom));
    if (std::find(headline.begin(), headline.end(), row.axiom) == headline.end()) name += "*";
    std::string verdict(status_name(row.verdict.status));
    std::string w = witness_text(row.verdict.witness);
    if (row.verdict.status == VerdictStatus::kSampled) {
      w = std::to_string(row.verdict.samples) + " samples";
    }
    if (!row.witness_instance.empty()) w += " [" + row.witness_instance + "]";
    out << pad(name, 12) << pad(verdict, 15) << w << "\n";
  }
  out << "universe size " << r.universe_size << "; headline "
      << (r.all_headline_hold() ? "holds" : "fails") << " (* = informational)\n";
  return out.str();
}

std::string ef_text(const EfVerdict& v) {
  std::ostringstream out;
  out << (v.holds ? "holds" : "fails") << "\n";
  if (v.witness) {
    out << "witness: " << render(*v.witness) << "\n";
    if (!v.params.empty()) out << "params: " << witness_text(v.params) << "\n";
    out << "rounds: " << v.rounds << "\n";
  }
  out << "tuples checked: " << v.tuples_checked << ", positions: " << v.positions << "\n";
  return out.str();
}

// --- eval ----------------------------------------------------------------------

struct EvalArgs {
  std::string structure;
  std::string formula;
  std::vector<std::string> assign;
};

int cmd_eval(const EvalArgs& a) {
  const Structure m = load_structure(a.structure);
  const Formula f = parse_formula(read_text(a.formula));
  Assignment asg;
  for (const auto& item : a.assign) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("--assign expects var=term, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    const HfSet value = parse_hfset(item.substr(eq + 1));
    if (!m.contains(value)) {
      throw ConfigError("value of '" + name + "' is not in the universe: " + value.str());
    }
    asg[name] = value;
  }
  EvalStats stats;
  const bool result = satisfies(m, f, asg, EvalOptions{g.budget}, &stats);
  Json j = {{"formula", render(f)}, {"value", result}, {"nodes", stats.nodes}};
  std::ostringstream text;
  text << (result ? "true" : "false") << "\nnodes: " << stats.nodes << "\n";
  return emit("eval", j, text.str(), result ? 0 : 1);
}

// --- audit ---------------------------------------------------------------------

struct AuditArgs {
  std::string structure;
  std::string battery;
  bool literal_foundation = false;
};

int cmd_audit(const AuditArgs& a) {
  if (a.structure == "V5") {
    throw ConfigError("V5 is materialized but too large for the axiom audit (max stage " +
                      std::to_string(kMaxAuditStage) + ")");
  }
  const Structure m = load_structure(a.structure);
  AuditOptions opts;
  opts.eval.budget = g.budget;
  opts.literal_foundation = a.literal_foundation;
  const AuditReport r = axiom_audit(m, load_battery(a.battery), opts);
  return emit("audit", to_json(r), audit_table(r), r.all_headline_hold() ? 0 : 1);
}

// --- ef ------------------------------------------------------------------------

struct EfArgs {
  std::string left;
  std::string right;
  std::size_t depth = 1;
  std::size_t params = 1;
};

int cmd_ef(const EfArgs& a) {
  const EfVerdict v = elementary_d(load_structure(a.left), load_structure(a.right), a.depth,
                                   a.params, EfOptions{g.ef_budget});
  Json j = to_json(v);
  j["depth"] = a.depth;
  j["max_params"] = a.params;
  return emit("ef", j, ef_text(v), v.holds ? 0 : 1);
}

// --- tiers ---------------------------------------------------------------------

struct TiersArgs {
  std::string config;
  std::string checks = "lemma";
  std::string battery;
  std::size_t depth = 1;
  std::size_t params = 1;
};

int cmd_tiers(const TiersArgs& a) {
  const TierConfig t = TierConfig::parse(a.config);
  Json j;
  j["config"] = t.ks();
  std::ostringstream text;
  text << "tiers " << t.str() << "\n";
  bool all = true;
  std::stringstream list(a.checks);
  std::string check;
  while (std::getline(list, check, ',')) {
    if (check == "A2") {
      AuditOptions opts;
      opts.eval.budget = g.budget;
      const auto rows = check_A2(t, load_battery(a.battery), opts);
      j["A2"] = to_json(rows);
      for (const auto& r : rows) {
        text << "A2 tier " << r.n << " (V_" << r.k << "): complete "
             << (r.complete ? "yes" : "no") << "\n"
             << audit_table(r.audit);
        all = all && r.complete && r.audit.all_headline_hold();
      }
    } else if (check == "A3") {
      const auto rows = check_A3(t, a.depth, a.params, EfOptions{g.ef_budget});
      j["A3"] = to_json(rows);
      for (const auto& r : rows) {
        text << "A3 V_" << r.k_lower << " vs V_" << r.k_upper << ": " << ef_text(r.verdict);
        all = all && r.verdict.holds;
      }
    } else if (check == "A4") {
      const auto rows = check_A4(t, load_battery(a.battery), EvalOptions{g.budget});
      j["A4"] = to_json(rows);
      std::size_t members = 0;
      for (const auto& r : rows) {
        members += r.result.member_of_next ? 1 : 0;
        all = all && r.result.member_of_next && r.subset_of_carrier;
      }
      text << "A4: " << members << "/" << rows.size()
           << " built collections are members of the next tier\n";
    } else if (check == "A5") {
      Json rows = Json::array();
      for (std::size_t n = 0; n < t.size(); ++n) {
        const A5Report r = check_A5(t, n, g.cap);
        rows.push_back(to_json(r));
        text << "A5 tier " << n << " (V_" << r.k << "): " << r.functions << " functions, "
             << r.failures << " with range outside the tier"
             << (r.sampled ? " (sampled)" : "") << "\n";
        if (r.witness) text << "  least witness " << r.witness->str() << "\n";
        all = all && r.failures == 0 && !r.sampled;
      }
      j["A5"] = rows;
    } else if (check == "lemma") {
      const auto rows = universe_lemma_check(t);
      j["lemma"] = to_json(rows);
      for (const auto& r : rows) {
        text << "lemma tier " << r.n << " (V_" << r.k << "): "
             << (r.equal ? "pass" : "FAIL") << "\n";
        all = all && r.equal;
      }
    } else {
      throw ConfigError("unknown check '" + check + "' (A2, A3, A4, A5, lemma)");
    }
  }
  j["all_hold"] = all;
  return emit("tiers", j, text.str(), all ? 0 : 1);
}

// --- cat -----------------------------------------------------------------------

// A category file, or one of coll:K, discrete:M, chain:M, parallel, cospan.
FinCategory category_arg(const std::string& arg) {
  auto num = [&](std::size_t prefix) { return std::stoul(arg.substr(prefix)); };
  if (arg.rfind("coll:", 0) == 0) return build_coll(num(5));
  if (arg.rfind("discrete:", 0) == 0) return discrete_category(num(9));
  if (arg.rfind("chain:", 0) == 0) return chain_category(num(6));
  if (arg == "parallel") return parallel_pair_category();
  if (arg == "cospan") return cospan_category();
  return load_category(arg);
}

std::string law_text(const LawVerdict& v, const FinCategory& c) {
  std::ostringstream out;
  out << c.num_objects() << " objects, " << c.num_arrows() << " arrows, ";
  if (v.holds) {
    out << "laws OK\n";
  } else {
    out << v.law << " fails at";
    for (std::size_t f : v.witness) out << " " << c.arrow(f).label;
    out << "\n";
  }
  return out.str();
}

int cmd_cat_coll(std::size_t k) {
  const FinCategory c = build_coll(k);
  const LawVerdict v = validate(c);
  Json j = to_json(v, c);
  j["stage"] = k;
  return emit("cat coll", j, law_text(v, c), v.holds ? 0 : 1);
}

int cmd_cat_validate(const std::string& file) {
  const FinCategory c = category_arg(file);
  const LawVerdict v = validate(c);
  return emit("cat validate", to_json(v, c), law_text(v, c), v.holds ? 0 : 1);
}

int cmd_cat_freyd(const std::string& file, const std::vector<std::size_t>& enumerate) {
  if (!enumerate.empty()) {
    const FreydEnumeration r = freyd_enumerate(enumerate[0], enumerate[1]);
    std::ostringstream text;
    text << r.categories << " categories enumerated, " << r.non_thin << " non-thin, "
         << r.violations << " violations\n";
    Json j = to_json(r);
    j["max_objects"] = enumerate[0];
    j["max_arrows"] = enumerate[1];
    return emit("cat freyd", j, text.str(), r.violations == 0 ? 0 : 1);
  }
  if (file.empty()) throw ConfigError("cat freyd needs a category or --enumerate N M");
  const FinCategory c = category_arg(file);
  if (!validate(c).holds) throw ConfigError("category fails the category laws");
  const FreydReport r = freyd_audit(c);
  std::ostringstream text;
  if (r.thin) {
    text << "thin: lemma vacuous\n";
  } else {
    text << "non-thin, |Hom| = " << r.hom_count << "\n";
    for (const auto& t : r.targets) {
      text << "  into " << c.object_label(t.object) << " via " << c.arrow(t.f).label << ", "
           << c.arrow(t.g).label << ": power " << (t.power_found ? "present" : "absent") << "\n";
    }
    text << (r.violation ? "VIOLATION\n" : "consistent\n");
  }
  return emit("cat freyd", to_json(r, c), text.str(), r.violation ? 1 : 0);
}

int cmd_cat_cantor(std::size_t n) {
  const CantorReport r = cantor_check(von_neumann(n));
  std::ostringstream text;
  text << r.functions << " functions checked, " << r.surjective << " surjective, "
       << r.diagonal_missed << " diagonals missed\n";
  const bool ok = r.surjective == 0 && r.diagonal_missed == r.functions;
  return emit("cat cantor", to_json(r), text.str(), ok ? 0 : 1);
}

int cmd_cat_functorcat(const std::string& cf, const std::string& df) {
  const FinCategory c = category_arg(cf);
  const FinCategory d = category_arg(df);
  const FunctorCategory fc = functor_category(c, d, g.cap);
  const LawVerdict v = validate(fc.category);
  Json j = {{"functors", fc.functors.size()},
            {"transformations", fc.transformations.size()},
            {"laws", v.holds}};
  std::ostringstream text;
  text << fc.functors.size() << " functors, " << fc.transformations.size()
       << " natural transformations, laws " << (v.holds ? "OK" : "FAIL") << "\n";
  return emit("cat functorcat", j, text.str(), v.holds ? 0 : 1);
}

int cmd_cat_classify(const std::string& file, const std::string& config) {
  const FinCategory c = category_arg(file);
  const SizeReport r = classify_size(c, TierConfig::parse(config));
  std::ostringstream text;
  text << "rank(Ob) = " << r.ob_rank << ", rank(Hom) = " << r.hom_rank << "\n";
  text << pad("n", 4) << pad("small", 7) << pad("loc.small", 10) << pad("tiny", 6)
       << pad("large", 7) << "very-large\n";
  auto yn = [](bool b) { return std::string(b ? "yes" : "no"); };
  for (const auto& f : r.tiers) {
    text << pad(std::to_string(f.n), 4) << pad(yn(f.small), 7) << pad(yn(f.locally_small), 10)
         << pad(yn(f.tiny), 6) << pad(yn(f.large), 7) << yn(f.very_large) << "\n";
  }
  return emit("cat classify", to_json(r), text.str(), 0);
}

int cmd_cat_embed(std::size_t k1, std::size_t k2) {
  const EmbeddingReport r = check_embedding(k1, k2);
  std::ostringstream text;
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  text << "Coll(V_" << k1 << ") -> Coll(V_" << k2 << "): functor " << yn(r.functor) << ", full "
       << yn(r.full) << ", faithful " << yn(r.faithful) << ", terminal preserved "
       << yn(r.preserves_terminal) << " (" << r.terminals_checked << "), products preserved "
       << yn(r.preserves_products) << " (" << r.products_checked << ")\n";
  const bool ok =
      r.functor && r.full && r.faithful && r.preserves_terminal && r.preserves_products;
  return emit("cat embed", to_json(r), text.str(), ok ? 0 : 1);
}

int cmd_cat_topos(std::size_t k) {
  const ToposReport r = topos_audit(build_coll(k));
  std::ostringstream text;
  bool all = true;
  for (const auto& f : r.features) {
    text << pad(f.feature, 22) << pad(f.holds ? "holds" : "fails", 7);
    for (const auto& w : f.witness) text << " " << w;
    text << "\n";
    all = all && f.holds;
  }
  Json j = to_json(r);
  j["stage"] = k;
  return emit("cat topos", j, text.str(), all ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) g.argv.emplace_back(argv[i]);

  CLI::App app{"Finite-model lab for set theory over hereditarily finite sets"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--budget", g.budget, "Evaluation node budget")->check(CLI::PositiveNumber);
  app.add_option("--ef-budget", g.ef_budget, "Game position budget")->check(CLI::PositiveNumber);
  app.add_option("--cap", g.cap, "Enumeration cap")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed recorded in reports");

  std::function<int()> run;

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate a formula in a structure");
  eval->add_option("--structure", eval_args.structure, "V<k> or structure JSON")->required();
  eval->add_option("--formula", eval_args.formula, "Formula text or @file")->required();
  eval->add_option("--assign", eval_args.assign, "var=set (repeatable)");
  eval->callback([&] { run = [&] { return cmd_eval(eval_args); }; });

  AuditArgs audit_args;
  auto* audit = app.add_subcommand("audit", "Audit the axioms in a structure");
  audit->add_option("--structure", audit_args.structure, "V<k> or structure JSON")->required();
  audit->add_option("--battery", audit_args.battery, "Separation predicates, one per line");
  audit->add_flag("--literal-foundation", audit_args.literal_foundation,
                  "Count the unguarded foundation axiom in the headline");
  audit->callback([&] { run = [&] { return cmd_audit(audit_args); }; });

  EfArgs ef_args;
  auto* ef = app.add_subcommand("ef", "Depth-bounded elementary submodel check");
  ef->add_option("--left", ef_args.left, "Smaller structure")->required();
  ef->add_option("--right", ef_args.right, "Larger structure")->required();
  ef->add_option("--depth", ef_args.depth, "Quantifier depth");
  ef->add_option("--params", ef_args.params, "Maximum parameter tuple length");
  ef->callback([&] { run = [&] { return cmd_ef(ef_args); }; });

  TiersArgs tiers_args;
  auto* tiers = app.add_subcommand("tiers", "Checks over a tier configuration");
  tiers->add_option("--config", tiers_args.config, "Stage list, e.g. 2,3,4")->required();
  tiers->add_option("--check", tiers_args.checks, "Comma list of A2,A3,A4,A5,lemma");
  tiers->add_option("--battery", tiers_args.battery, "Predicates for A2 and A4");
  tiers->add_option("--depth", tiers_args.depth, "A3 depth");
  tiers->add_option("--params", tiers_args.params, "A3 parameters");
  tiers->callback([&] { run = [&] { return cmd_tiers(tiers_args); }; });

  auto* cat = app.add_subcommand("cat", "Finite category checks");
  cat->require_subcommand(1);

  std::size_t coll_stage = 0;
  auto* coll = cat->add_subcommand("coll", "Build and validate Coll(V_k)");
  coll->add_option("--stage", coll_stage)->required();
  coll->callback([&] { run = [&] { return cmd_cat_coll(coll_stage); }; });

  std::string validate_file;
  auto* val = cat->add_subcommand("validate", "Check the category laws");
  val->add_option("category", validate_file)->required();
  val->callback([&] { run = [&] { return cmd_cat_validate(validate_file); }; });

  std::string freyd_file;
  std::vector<std::size_t> freyd_enum;
  auto* freyd = cat->add_subcommand("freyd", "Freyd audit of one category or an enumeration");
  freyd->add_option("category", freyd_file);
  freyd->add_option("--enumerate", freyd_enum, "Max objects and max arrows")->expected(2);
  freyd->callback([&] { run = [&] { return cmd_cat_freyd(freyd_file, freyd_enum); }; });

  std::size_t cantor_size = 0;
  auto* cantor = cat->add_subcommand("cantor", "No surjection x -> P(x)");
  cantor->add_option("--size", cantor_size)->required()->check(CLI::Range(0, 3));
  cantor->callback([&] { run = [&] { return cmd_cat_cantor(cantor_size); }; });

  std::string fc_c;
  std::string fc_d;
  auto* fcat = cat->add_subcommand("functorcat", "Category of functors C -> D");
  fcat->add_option("C", fc_c)->required();
  fcat->add_option("D", fc_d)->required();
  fcat->callback([&] { run = [&] { return cmd_cat_functorcat(fc_c, fc_d); }; });

  std::string classify_file;
  std::string classify_config;
  auto* classify = cat->add_subcommand("classify", "Size taxonomy against tiers");
  classify->add_option("category", classify_file)->required();
  classify->add_option("--config", classify_config)->required();
  classify->callback([&] { run = [&] { return cmd_cat_classify(classify_file, classify_config); }; });

  std::size_t k1 = 0;
  std::size_t k2 = 0;
  auto* embed = cat->add_subcommand("embed", "Inclusion Coll(V_k1) -> Coll(V_k2)");
  embed->add_option("k1", k1)->required();
  embed->add_option("k2", k2)->required();
  embed->callback([&] { run = [&] { return cmd_cat_embed(k1, k2); }; });

  std::size_t topos_stage = 0;
  auto* topos = cat->add_subcommand("topos", "Topos features of Coll(V_k)");
  topos->add_option("--stage", topos_stage)->required();
  topos->callback([&] { run = [&] { return cmd_cat_topos(topos_stage); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return run();
  } catch (const hflab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
