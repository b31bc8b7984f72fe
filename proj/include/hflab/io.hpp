#pragma once

#include <json.hpp>
#include <string>
#include <string_view>

#include "hflab/category.hpp"
#include "hflab/hierarchy.hpp"
#include "hflab/model.hpp"

namespace hflab {

using Json = nlohmann::ordered_json;

// {"universe": ["{...}" | "#n", ...], "tiers": {"0": "#m", ...}}
Structure structure_from_json(const Json& j);
Json structure_to_json(const Structure& s);
// "V<k>" or a path to a structure JSON file.
Structure load_structure(std::string_view arg);

// {"objects": [label | {"label": ..., "set": "{...}"}, ...],
//  "arrows": [{"id": ..., "dom": ..., "cod": ..., "graph": "{...}"?}, ...],
//  "identity": {object: arrow, ...},
//  "compose": [[f, g, h], ...]}      // g . f = h
// Composites with an identity may be omitted; they are filled in.
FinCategory category_from_json(const Json& j);
Json category_to_json(const FinCategory& c);
FinCategory load_category(const std::string& path);

Json read_json_file(const std::string& path);

Json to_json(const Binding& b);
Json to_json(const Verdict& v);
Json to_json(const AuditReport& r);
Json to_json(const EfVerdict& v);
Json to_json(const std::vector<A2Tier>& rows);
Json to_json(const std::vector<A3Pair>& rows);
Json to_json(const std::vector<A4Row>& rows);
Json to_json(const A5Report& r);
Json to_json(const std::vector<LemmaRow>& rows);
Json to_json(const LawVerdict& v, const FinCategory& c);
Json to_json(const FreydReport& r, const FinCategory& c);
Json to_json(const FreydEnumeration& r);
Json to_json(const CantorReport& r);
Json to_json(const SizeReport& r);
Json to_json(const EmbeddingReport& r);
Json to_json(const ToposReport& r);

}  // namespace hflab
