#pragma once

#include <json.hpp>

#include "tightham/absorption.hpp"
#include "tightham/constructions.hpp"
#include "tightham/connector.hpp"
#include "tightham/cover.hpp"
#include "tightham/pipeline.hpp"
#include "tightham/scan.hpp"

namespace tightham {

using Json = nlohmann::json;

Json to_json(const GeneratorSpec& spec);
Json to_json(const TightPath& p);
Json to_json(const Reservoir& r);
Json to_json(const AbsorbingPath& pa);
Json to_json(const ReducedHypergraph& rh);
Json to_json(const LongPathResult& lp);
Json to_json(const PipelineParams& p);
// Stage timings go under "timing" so reports can be compared without them.
Json to_json(const RunReport& report, bool with_timing = true);
Json to_json(const ScanRow& row);

Reservoir reservoir_from_json(const Json& j);
AbsorbingPath absorbing_path_from_json(const Json& j);

}  // namespace tightham
