#pragma once

#include <json.hpp>

#include "sunflower/bound_report.hpp"
#include "sunflower/bounds.hpp"
#include "sunflower/conjectures.hpp"
#include "sunflower/core.hpp"
#include "sunflower/reduce.hpp"
#include "sunflower/search.hpp"

namespace sunflower {

using Json = nlohmann::json;

/// {"members": [[ids]], "labels": {"id": "label"}}
Json to_json(const SetFamily& f);
SetFamily set_family_from_json(const Json& j);
/// {"moduli": [D_i], "members": [[coords]]}
Json to_json(const VectorFamily& f);
VectorFamily vector_family_from_json(const Json& j);

Json to_json(const SunflowerWitness& w);
Json to_json(const BoundReport& r);
Json to_json(const JMinimizationResult& r);
Json to_json(const PipelineTrace& t);
Json to_json(const ConjectureReport& r);
/// `timing` adds the wall-clock field, which breaks byte-for-byte
/// reproducibility of the report.
Json to_json(const SearchResult& r, const Instance& instance, bool timing = false);

}  // namespace sunflower
