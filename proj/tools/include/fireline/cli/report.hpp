#pragma once

#include "json.hpp"

#include "fireline/burnedcost.hpp"
#include "fireline/detour.hpp"
#include "fireline/firefront.hpp"
#include "fireline/flowbox.hpp"

namespace fireline::cli {

using nlohmann::json;

// Finite values as numbers, infinities as "+inf" / "-inf".
json jnum(double v);
json to_json(Point p);
json to_json(const std::vector<Point>& pts);
json to_json(const BurnReport& r);
json to_json(const AdmissibilityReport& r, const TouchProfile& p);
json to_json(const DetourResult& r);
json to_json(const FlowBox& b);
json to_json(const CertifyReport& r);

}  // namespace fireline::cli
