#include "epilim/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace epilim {

using nlohmann::json;

json to_json(ExtReal v) {
  if (v.is_pos_inf()) return "inf";
  if (v.is_neg_inf()) return "-inf";
  return v.v;
}

ExtReal extreal_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return ExtReal::pos_inf();
    if (s == "-inf") return ExtReal::neg_inf();
    throw std::invalid_argument("extreal_from_json: unknown string value '" + s + "'");
  }
  return ExtReal(j.get<double>());
}

json to_json(const Grid& g) {
  json out;
  out["dim"] = g.dim;
  out["min"] = std::vector<double>(g.min.begin(), g.min.begin() + g.dim);
  out["max"] = std::vector<double>(g.max.begin(), g.max.begin() + g.dim);
  out["n"] = std::vector<std::int64_t>(g.n.begin(), g.n.begin() + g.dim);
  return out;
}

Grid grid_from_json(const json& j) {
  const int dim = j.at("dim").get<int>();
  const auto mn = j.at("min").get<std::vector<double>>();
  const auto mx = j.at("max").get<std::vector<double>>();
  const auto n = j.at("n").get<std::vector<std::int64_t>>();
  if (dim == 1) return Grid(mn.at(0), mx.at(0), n.at(0));
  if (dim == 2) return Grid({mn.at(0), mn.at(1)}, {mx.at(0), mx.at(1)}, {n.at(0), n.at(1)});
  throw std::invalid_argument("grid_from_json: dim must be 1 or 2");
}

json to_json(const GridFunction& f) {
  json out;
  out["grid"] = to_json(f.grid);
  json vals = json::array();
  for (const auto& v : f.values) vals.push_back(to_json(v));
  out["values"] = std::move(vals);
  return out;
}

GridFunction grid_function_from_json(const json& j) {
  Grid g = grid_from_json(j.at("grid"));
  std::vector<ExtReal> vals;
  for (const auto& v : j.at("values")) vals.push_back(extreal_from_json(v));
  return GridFunction(g, std::move(vals));
}

json to_json(const ConjugateResult& r) {
  json out;
  out["function"] = to_json(r.function);
  out["argmax_index"] = r.argmax;
  json flags = json::array();
  for (auto b : r.boundary) flags.push_back(bool(b));
  out["boundary_flag"] = std::move(flags);
  return out;
}

json to_json(const MeasureSpace& sp) {
  json out;
  out["atoms"] = sp.atoms;
  out["refinement"] = sp.refining() ? json{{"depth", *sp.refinement_depth}} : json(nullptr);
  out["covering"] = sp.covering;
  return out;
}

MeasureSpace measure_space_from_json(const json& j) {
  const auto& ref = j.at("refinement");
  if (!ref.is_null()) {
    MeasureSpace sp = MeasureSpace::dyadic(ref.at("depth").get<int>());
    if (j.contains("covering") && !j.at("covering").empty())
      sp.covering = j.at("covering").get<std::vector<int>>();
    return sp;
  }
  std::vector<int> covering;
  if (j.contains("covering")) covering = j.at("covering").get<std::vector<int>>();
  return MeasureSpace::finite(j.at("atoms").get<std::vector<double>>(), std::move(covering));
}

json to_json(const SimpleFunction& x) {
  json vals = json::array();
  for (const auto& p : x.values) {
    if (x.dim == 1)
      vals.push_back(std::vector<double>{p[0]});
    else
      vals.push_back(std::vector<double>{p[0], p[1]});
  }
  return json{{"values", std::move(vals)}};
}

SimpleFunction simple_function_from_json(const json& j) {
  SimpleFunction x;
  const auto& vals = j.at("values");
  if (vals.empty()) throw std::invalid_argument("simple_function_from_json: empty values");
  x.dim = int(vals.front().size());
  if (x.dim < 1 || x.dim > 2) throw std::invalid_argument("simple_function_from_json: dim must be 1 or 2");
  for (const auto& row : vals) {
    Point p{row.at(0).get<double>(), 0.0};
    if (x.dim == 2) p[1] = row.at(1).get<double>();
    x.values.push_back(p);
  }
  return x;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

}  // namespace epilim
