#include "hflab/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "hflab/error.hpp"

namespace hflab {

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

namespace {

HfSet set_field(const Json& j, const std::string& what) {
  if (!j.is_string()) throw ConfigError(what + " must be a string like \"{}\" or \"#3\"");
  try {
    return parse_hfset(j.get<std::string>());
  } catch (const Error& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

}  // namespace

Structure structure_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("universe") || !j["universe"].is_array()) {
    throw ConfigError("structure JSON needs a \"universe\" array");
  }
  std::vector<HfSet> u;
  for (const auto& e : j["universe"]) u.push_back(set_field(e, "universe member"));
  std::map<std::size_t, HfSet> tiers;
  if (j.contains("tiers")) {
    if (!j["tiers"].is_object()) throw ConfigError("\"tiers\" must be an object");
    for (const auto& [key, value] : j["tiers"].items()) {
      std::size_t n = 0;
      try {
        std::size_t used = 0;
        n = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw ConfigError("tier key '" + key + "' is not a number");
      }
      tiers[n] = set_field(value, "tier " + key);
    }
  }
  return Structure(std::move(u), std::move(tiers));
}

Json structure_to_json(const Structure& s) {
  Json j;
  j["universe"] = Json::array();
  for (const HfSet& x : s.universe()) j["universe"].push_back(x.str());
  Json tiers = Json::object();
  for (const auto& [n, v] : s.tiers()) tiers[std::to_string(n)] = v.str();
  j["tiers"] = tiers;
  return j;
}

Structure load_structure(std::string_view arg) {
  if (arg.size() >= 2 && (arg[0] == 'V' || arg[0] == 'v') &&
      arg.find_first_not_of("0123456789", 1) == std::string_view::npos) {
    return build_stage(std::stoul(std::string(arg.substr(1)))).carrier;
  }
  return structure_from_json(read_json_file(std::string(arg)));
}

namespace {

std::string key_of(const Json& j, const std::string& what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ConfigError(what + " must be a string or integer");
}

}  // namespace

FinCategory category_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("category JSON must be an object");
  for (const char* field : {"objects", "arrows"}) {
    if (!j.contains(field) || !j[field].is_array()) {
      throw ConfigError(std::string("category JSON needs an \"") + field + "\" array");
    }
  }
  FinCategory c;
  std::map<std::string, std::size_t> objects;
  for (const auto& o : j["objects"]) {
    std::string label;
    std::optional<HfSet> set;
    if (o.is_object()) {
      label = key_of(o.value("label", Json()), "object label");
      if (o.contains("set")) set = set_field(o["set"], "object set");
    } else {
      label = key_of(o, "object");
    }
    if (!objects.emplace(label, c.num_objects()).second) {
      throw ConfigError("duplicate object '" + label + "'");
    }
    c.add_object(label, set);
  }
  auto object = [&](const Json& ref) {
    const std::string k = key_of(ref, "object reference");
    auto it = objects.find(k);
    if (it == objects.end()) throw ConfigError("unknown object '" + k + "'");
    return it->second;
  };
  std::map<std::string, std::size_t> arrows;
  for (const auto& a : j["arrows"]) {
    if (!a.is_object() || !a.contains("id") || !a.contains("dom") || !a.contains("cod")) {
      throw ConfigError("each arrow needs \"id\", \"dom\" and \"cod\"");
    }
    Arrow arrow{object(a["dom"]), object(a["cod"]), key_of(a["id"], "arrow id"), std::nullopt};
    if (a.contains("graph")) arrow.graph = set_field(a["graph"], "arrow graph");
    if (!arrows.emplace(arrow.label, c.num_arrows()).second) {
      throw ConfigError("duplicate arrow '" + arrow.label + "'");
    }
    c.add_arrow(std::move(arrow));
  }
  auto arrow = [&](const Json& ref) {
    const std::string k = key_of(ref, "arrow reference");
    auto it = arrows.find(k);
    if (it == arrows.end()) throw ConfigError("unknown arrow '" + k + "'");
    return it->second;
  };
  if (j.contains("identity")) {
    if (!j["identity"].is_object()) throw ConfigError("\"identity\" must be an object");
    for (const auto& [obj, arr] : j["identity"].items()) {
      c.set_identity(object(Json(obj)), arrow(arr));
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> given;
  if (j.contains("compose")) {
    if (!j["compose"].is_array()) throw ConfigError("\"compose\" must be an array");
    for (const auto& t : j["compose"]) {
      if (!t.is_array() || t.size() != 3) {
        throw ConfigError("compose entries are [f, g, h] meaning g . f = h");
      }
      const std::size_t f = arrow(t[0]);
      const std::size_t g = arrow(t[1]);
      if (!given.emplace(std::make_pair(g, f), arrow(t[2])).second) {
        throw ConfigError("composition of '" + c.arrow(g).label + "' after '" +
                          c.arrow(f).label + "' given twice");
      }
    }
  }
  for (std::size_t f = 0; f < c.num_arrows(); ++f) {
    const std::size_t left = c.identity(c.arrow(f).cod);
    const std::size_t right = c.identity(c.arrow(f).dom);
    if (left != npos) given.emplace(std::make_pair(left, f), f);
    if (right != npos) given.emplace(std::make_pair(f, right), f);
  }
  for (const auto& [gf, h] : given) c.set_compose(gf.first, gf.second, h);
  return c;
}

Json category_to_json(const FinCategory& c) {
  Json j;
  j["objects"] = Json::array();
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    if (c.object_set(x)) {
      j["objects"].push_back({{"label", c.object_label(x)}, {"set", c.object_set(x)->str()}});
    } else {
      j["objects"].push_back(c.object_label(x));
    }
  }
  // Labels need not be unique (every empty function prints as "{}"), so
  // repeated ones get the arrow index appended.
  std::map<std::string, std::size_t> uses;
  for (const Arrow& a : c.arrows()) ++uses[a.label];
  std::vector<std::string> id(c.num_arrows());
  for (std::size_t f = 0; f < c.num_arrows(); ++f) {
    const std::string& l = c.arrow(f).label;
    id[f] = uses[l] == 1 ? l : l + "#" + std::to_string(f);
  }
  j["arrows"] = Json::array();
  for (std::size_t f = 0; f < c.num_arrows(); ++f) {
    const Arrow& a = c.arrow(f);
    Json arrow = {{"id", id[f]}, {"dom", c.object_label(a.dom)}, {"cod", c.object_label(a.cod)}};
    if (a.graph) arrow["graph"] = a.graph->str();
    j["arrows"].push_back(arrow);
  }
  Json ids = Json::object();
  for (std::size_t x = 0; x < c.num_objects(); ++x) {
    if (c.identity(x) != npos) ids[c.object_label(x)] = id[c.identity(x)];
  }
  j["identity"] = ids;
  j["compose"] = Json::array();
  for (std::size_t f = 0; f < c.num_arrows(); ++f) {
    for (std::size_t g = 0; g < c.num_arrows(); ++g) {
      const std::size_t h = c.compose(g, f);
      if (h != npos) j["compose"].push_back({id[f], id[g], id[h]});
    }
  }
  return j;
}

FinCategory load_category(const std::string& path) {
  return category_from_json(read_json_file(path));
}

// --- reports -----------------------------------------------------------------

Json to_json(const Binding& b) {
  Json j = Json::object();
  for (const auto& [name, value] : b) j[name] = value.str();
  return j;
}

Json to_json(const Verdict& v) {
  Json j;
  j["status"] = status_name(v.status);
  if (v.status == VerdictStatus::kFails) j["witness"] = to_json(v.witness);
  if (v.status == VerdictStatus::kSampled) j["sampled_holds"] = v.sampled_holds;
  j["samples"] = v.samples;
  j["nodes"] = v.nodes;
  return j;
}

Json to_json(const AuditReport& r) {
  Json j;
  j["universe_size"] = r.universe_size;
  j["literal_foundation"] = r.literal_foundation;
  j["headline_holds"] = r.all_headline_hold();
  j["axioms"] = Json::array();
  const auto headline = r.headline();
  for (const auto& row : r.rows) {
    Json a;
    a["axiom"] = axiom_name(row.axiom);
    a["headline"] = std::find(headline.begin(), headline.end(), row.axiom) != headline.end();
    const Json verdict = to_json(row.verdict);
    for (const auto& [k, v] : verdict.items()) a[k] = v;
    if (row.axiom == AxiomId::kZ2) {
      if (!row.witness_instance.empty()) a["witness_instance"] = row.witness_instance;
      a["instances"] = Json::array();
      for (const auto& inst : row.instances) {
        Json i;
        i["id"] = inst.id;
        i["predicate"] = inst.predicate;
        const Json verdict = to_json(inst.verdict);
        for (const auto& [k, v] : verdict.items()) i[k] = v;
        a["instances"].push_back(i);
      }
    }
    j["axioms"].push_back(a);
  }
  return j;
}

Json to_json(const EfVerdict& v) {
  Json j;
  j["holds"] = v.holds;
  j["rounds"] = v.rounds;
  if (v.witness) j["witness"] = render(*v.witness);
  j["params"] = to_json(v.params);
  j["tuples_checked"] = v.tuples_checked;
  j["positions"] = v.positions;
  return j;
}

Json to_json(const std::vector<A2Tier>& rows) {
  Json j = Json::array();
  for (const auto& r : rows) {
    j.push_back({{"n", r.n},
                 {"k", r.k},
                 {"transitive", r.transitive},
                 {"complete", r.complete},
                 {"audit", to_json(r.audit)}});
  }
  return j;
}

Json to_json(const std::vector<A3Pair>& rows) {
  Json j = Json::array();
  for (const auto& r : rows) {
    j.push_back({{"n", r.n},
                 {"k_lower", r.k_lower},
                 {"k_upper", r.k_upper},
                 {"verdict", to_json(r.verdict)}});
  }
  return j;
}

Json to_json(const std::vector<A4Row>& rows) {
  Json j = Json::array();
  for (const auto& r : rows) {
    j.push_back({{"n", r.n},
                 {"id", r.id},
                 {"predicate", r.predicate},
                 {"collection", r.result.collection.str()},
                 {"size", r.result.collection.size()},
                 {"subset_of_carrier", r.subset_of_carrier},
                 {"member_of_next", r.result.member_of_next},
                 {"evaluated_in_k", r.result.evaluated_in_k}});
  }
  return j;
}

Json to_json(const A5Report& r) {
  Json j;
  j["n"] = r.n;
  j["k"] = r.k;
  j["functions"] = r.functions;
  j["failures"] = r.failures;
  j["sampled"] = r.sampled;
  j["by_range_rank"] = Json::array();
  for (const auto& [rank, row] : r.by_range_rank) {
    j["by_range_rank"].push_back(
        {{"rank", rank}, {"functions", row.functions}, {"failures", row.failures}});
  }
  j["witness"] = r.witness ? Json(r.witness->str()) : Json();
  j["witness_range"] = r.witness_range ? Json(r.witness_range->str()) : Json();
  return j;
}

Json to_json(const std::vector<LemmaRow>& rows) {
  Json j = Json::array();
  for (const auto& r : rows) {
    j.push_back({{"n", r.n},
                 {"k", r.k},
                 {"equal", r.equal},
                 {"built_size", r.built_size},
                 {"carrier_size", r.carrier_size}});
  }
  return j;
}

Json to_json(const LawVerdict& v, const FinCategory& c) {
  Json j;
  j["holds"] = v.holds;
  if (!v.holds) {
    j["law"] = v.law;
    j["witness"] = Json::array();
    for (std::size_t f : v.witness) j["witness"].push_back(c.arrow(f).label);
  }
  j["objects"] = c.num_objects();
  j["arrows"] = c.num_arrows();
  j["thin"] = is_thin(c);
  return j;
}

Json to_json(const FreydReport& r, const FinCategory& c) {
  Json j;
  j["thin"] = r.thin;
  j["hom_count"] = r.hom_count;
  j["violation"] = r.violation;
  j["targets"] = Json::array();
  for (const auto& t : r.targets) {
    j["targets"].push_back({{"object", c.object_label(t.object)},
                            {"f", c.arrow(t.f).label},
                            {"g", c.arrow(t.g).label},
                            {"power_found", t.power_found}});
  }
  if (r.violation) j["distinct_tuplings"] = r.distinct_tuplings;
  return j;
}

Json to_json(const FreydEnumeration& r) {
  return {{"categories", r.categories}, {"non_thin", r.non_thin}, {"violations", r.violations}};
}

Json to_json(const CantorReport& r) {
  return {{"size", r.size},
          {"functions", r.functions},
          {"surjective", r.surjective},
          {"diagonal_missed", r.diagonal_missed}};
}

Json to_json(const SizeReport& r) {
  Json j;
  j["ob_rank"] = r.ob_rank;
  j["hom_rank"] = r.hom_rank;
  j["max_hom_xy_rank"] = r.max_hom_xy_rank;
  j["tiers"] = Json::array();
  for (const auto& f : r.tiers) {
    j["tiers"].push_back({{"n", f.n},
                          {"small", f.small},
                          {"locally_small", f.locally_small},
                          {"tiny", f.tiny},
                          {"large", f.large},
                          {"very_large", f.very_large}});
  }
  return j;
}

Json to_json(const EmbeddingReport& r) {
  return {{"k1", r.k1},
          {"k2", r.k2},
          {"functor", r.functor},
          {"full", r.full},
          {"faithful", r.faithful},
          {"terminals_checked", r.terminals_checked},
          {"preserves_terminal", r.preserves_terminal},
          {"products_checked", r.products_checked},
          {"preserves_products", r.preserves_products}};
}

Json to_json(const ToposReport& r) {
  Json j;
  j["features"] = Json::array();
  for (const auto& f : r.features) {
    j["features"].push_back(
        {{"feature", f.feature}, {"holds", f.holds}, {"checked", f.checked}, {"witness", f.witness}});
  }
  j["classifier"] = r.classifier ? Json(*r.classifier) : Json();
  return j;
}

}  // namespace hflab
