#pragma once

#include <string>

#include <json.hpp>

#include "toda/flatcoords.hpp"
#include "toda/hierarchy.hpp"

namespace toda {

using json = nlohmann::json;

// Complex numbers are [re, im]; series are {"lo": int, "re": [...], "im": [...]};
// charts are {"t": {"<n>": [re, im]}, "u": [re, im], "v": [re, im]}.
json to_json(cplx c);
json to_json(const LaurentSeries& s);
json to_json(const Point& p);
json to_json(const FlatChart& c);
json to_json(const LoopField& f);
json to_json(const LoopPoint& L);

cplx complex_from_json(const json& j);
LaurentSeries series_from_json(const json& j);
Point point_from_json(const json& j);
FlatChart chart_from_json(const json& j);
LoopField loop_field_from_json(const json& j);
LoopPoint loop_point_from_json(const json& j);

// Fixed 17-significant-digit text for CSV output.
std::string fmt(double x);

// Write through a temporary file and rename, so readers never see partial output.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace toda
