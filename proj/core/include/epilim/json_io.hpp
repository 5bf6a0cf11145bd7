#pragma once

#include <string>

#include <json.hpp>

#include "epilim/grid.hpp"
#include "epilim/legendre.hpp"
#include "epilim/measure.hpp"

namespace epilim {

// Wire formats. ExtReal values serialize as numbers or the strings
// "inf" / "-inf"; 2-D grid values are row-major.

nlohmann::json to_json(ExtReal v);
ExtReal extreal_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Grid& g);
Grid grid_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GridFunction& f);
GridFunction grid_function_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ConjugateResult& r);

nlohmann::json to_json(const MeasureSpace& sp);
MeasureSpace measure_space_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SimpleFunction& x);
SimpleFunction simple_function_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace epilim
