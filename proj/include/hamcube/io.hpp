#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"

#include "hamcube/cube.hpp"
#include "hamcube/errors.hpp"
#include "hamcube/numeric.hpp"
#include "hamcube/search.hpp"
#include "hamcube/spaces.hpp"

namespace hamcube {

inline SpaceDescriptor space_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "scalar") return SpaceDescriptor::scalar();
  if (kind == "euclidean") return SpaceDescriptor::euclidean(j.at("d").get<int>());
  if (kind == "schatten")
    return SpaceDescriptor::schatten(j.at("p").get<double>(), j.at("d").get<int>());
  if (kind == "operator") return SpaceDescriptor::operator_norm(j.at("d").get<int>());
  throw UnsupportedSpace("unknown space kind: " + kind);
}

inline std::string space_to_json(const SpaceDescriptor& space) {
  switch (space.kind) {
    case SpaceKind::Scalar: return "{\"kind\":\"scalar\"}";
    case SpaceKind::Euclidean: return "{\"kind\":\"euclidean\",\"d\":" + std::to_string(space.d) + "}";
    case SpaceKind::Schatten:
      return "{\"kind\":\"schatten\",\"d\":" + std::to_string(space.d) +
             ",\"p\":" + format_double(space.p) + "}";
    case SpaceKind::OperatorNorm:
      return "{\"kind\":\"operator\",\"d\":" + std::to_string(space.d) + "}";
  }
  throw UnsupportedSpace("unknown space kind");
}

struct FunctionFile {
  CubeFunction function;
  std::optional<SpaceDescriptor> space;
};

// {"n": int, "dim": int, "values": [[...], ...], "space": {...}?}
inline FunctionFile parse_function_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  const int dim = j.at("dim").get<int>();
  const auto values = j.at("values").get<std::vector<std::vector<double>>>();
  std::optional<SpaceDescriptor> space;
  if (j.contains("space")) space = space_from_json(j.at("space"));
  return FunctionFile{from_values(n, dim, values), space};
}

inline FunctionFile load_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open function file: " + path);
  nlohmann::json j;
  in >> j;
  return parse_function_json(j);
}

inline std::string function_to_json(const CubeFunction& f,
                                    const std::optional<SpaceDescriptor>& space = std::nullopt) {
  std::string out = "{\"n\":" + std::to_string(f.n()) + ",\"dim\":" + std::to_string(f.dim());
  if (space) out += ",\"space\":" + space_to_json(*space);
  out += ",\"values\":[";
  for (std::size_t b = 0; b < f.vertex_count(); ++b) {
    if (b) out += ',';
    out += '[';
    const auto v = f.value(b);
    for (int j = 0; j < f.dim(); ++j) {
      if (j) out += ',';
      out += format_double(v[j]);
    }
    out += ']';
  }
  out += "]}";
  return out;
}

inline std::string witness_to_json(const Witness& w) {
  std::string out = "{\"function\":" + function_to_json(w.function, w.space);
  out += ",\"p\":" + format_double(w.p);
  out += ",\"achieved\":" + format_double(w.achieved);
  out += ",\"residual\":" + format_double(w.constraint_residual);
  out += ",\"history\":[";
  for (std::size_t i = 0; i < w.history.size(); ++i) {
    if (i) out += ',';
    out += format_double(w.history[i]);
  }
  out += "]}\n";
  return out;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  out << content;
}

}  // namespace hamcube
