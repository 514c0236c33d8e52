#include "thermoshift/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace thermoshift {

namespace {

std::vector<std::string> split_spaces(const std::string& key) {
  std::vector<std::string> parts;
  std::istringstream in(key);
  for (std::string part; in >> part;) parts.push_back(part);
  return parts;
}

void write_string(std::string& out, const std::string& s) { out += Json(s).dump(); }

void write_value(std::string& out, const Json& doc, int indent, int depth) {
  const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const std::string colon = indent > 0 ? ": " : ":";
  switch (doc.type()) {
    case Json::value_t::object: {
      if (doc.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : doc.items()) {
        if (!first) out += ',';
        first = false;
        out += pad;
        write_string(out, key);
        out += colon;
        write_value(out, value, indent, depth + 1);
      }
      out += close + '}';
      return;
    }
    case Json::value_t::array: {
      if (doc.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(doc.begin(), doc.end(), [](const Json& v) { return v.is_structured(); });
      out += '[';
      bool first = true;
      for (const auto& value : doc) {
        if (!first) out += flat && indent > 0 ? ", " : ",";
        first = false;
        if (!flat) out += pad;
        write_value(out, value, indent, depth + 1);
      }
      out += (flat ? "" : close) + ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_real(doc.get<double>());
      return;
    default:
      out += doc.dump();
  }
}

const Json& require(const Json& doc, const char* field, const std::string& where) {
  if (!doc.is_object() || !doc.contains(field)) {
    throw InputError(where + ": missing field \"" + field + "\"");
  }
  return doc.at(field);
}

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "null";
  if (std::isinf(x)) return x > 0 ? "1e999" : "-1e999";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string dump_json(const Json& doc, int indent) {
  std::string out;
  write_value(out, doc, indent, 0);
  return out;
}

std::string join_ids(const DirectedGraph& g, std::span<const Vertex> path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += ' ';
    out += g.id(path[i]);
  }
  return out;
}

DirectedGraph graph_from_json(const Json& doc) {
  const Json& vertices = require(doc, "vertices", "graph");
  const Json& edges = require(doc, "edges", "graph");
  if (!vertices.is_array()) throw InputError("graph: field \"vertices\" must be an array of strings");
  if (!edges.is_array()) throw InputError("graph: field \"edges\" must be an array of pairs");
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!vertices[i].is_string()) {
      throw InputError("graph: \"vertices\"[" + std::to_string(i) + "] is not a string");
    }
    ids.push_back(vertices[i].get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Json& e = edges[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      throw InputError("graph: \"edges\"[" + std::to_string(i) + "] must be a pair of vertex identifiers");
    }
    pairs.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  try {
    return DirectedGraph(std::move(ids), pairs);
  } catch (const InputError& e) {
    throw InputError(std::string("graph: ") + e.what());
  }
}

Json graph_to_json(const DirectedGraph& g) {
  Json doc;
  doc["vertices"] = g.ids();
  Json edges = Json::array();
  for (auto [a, b] : g.edges()) edges.push_back({g.id(a), g.id(b)});
  doc["edges"] = std::move(edges);
  return doc;
}

LocallyConstantPotential potential_from_json(const DirectedGraph& g, const Json& doc) {
  const Json& window = require(doc, "window", "potential");
  const Json& values = require(doc, "values", "potential");
  if (!window.is_array() || window.size() != 2 || !window[0].is_number_integer() ||
      !window[1].is_number_integer()) {
    throw InputError("potential: field \"window\" must be a pair of integers [left, right]");
  }
  const long left = window[0].get<long>();
  const long right = window[1].get<long>();
  if (left > right) throw InputError("potential: field \"window\" must satisfy left <= right");
  if (!values.is_object()) throw InputError("potential: field \"values\" must be an object");
  const auto width = static_cast<std::size_t>(right - left + 1);

  std::map<Path, double> table;
  for (const auto& [key, value] : values.items()) {
    const auto parts = split_spaces(key);
    if (parts.size() != width) {
      throw InputError("potential: \"values\" key \"" + key + "\" does not have " + std::to_string(width) +
                       " symbols");
    }
    Path word;
    for (const auto& id : parts) {
      auto v = g.find(id);
      if (!v) throw InputError("potential: \"values\" key \"" + key + "\" names unknown vertex '" + id + "'");
      word.push_back(*v);
    }
    if (!g.is_admissible(word)) throw InputError("potential: \"values\" key \"" + key + "\" is not admissible");
    if (!value.is_number()) throw InputError("potential: \"values\" entry \"" + key + "\" is not a number");
    if (!table.emplace(std::move(word), value.get<double>()).second) {
      throw InputError("potential: \"values\" key \"" + key + "\" is repeated");
    }
  }
  for (const auto& word : g.admissible_words(width)) {
    if (!table.count(word)) {
      throw InputError("potential: \"values\" is missing the window word \"" + join_ids(g, word) + "\"");
    }
  }
  std::optional<double> theta;
  if (doc.contains("theta")) {
    if (!doc["theta"].is_number()) throw InputError("potential: field \"theta\" must be a number");
    theta = doc["theta"].get<double>();
  }
  try {
    return LocallyConstantPotential(g, left, right, std::move(table), theta);
  } catch (const InputError& e) {
    throw InputError(std::string("potential: ") + e.what());
  }
}

Json potential_to_json(const LocallyConstantPotential& phi) {
  Json doc;
  doc["window"] = {phi.left(), phi.right()};
  Json values = Json::object();
  for (const auto& [word, value] : phi.table()) values[join_ids(phi.graph(), word)] = value;
  doc["values"] = std::move(values);
  if (phi.declared_theta()) doc["theta"] = *phi.declared_theta();
  return doc;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

DirectedGraph load_graph(const std::filesystem::path& path) {
  try {
    return graph_from_json(read_json_file(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

LocallyConstantPotential load_potential(const DirectedGraph& g, const std::filesystem::path& path) {
  try {
    return potential_from_json(g, read_json_file(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::vector<std::filesystem::path> load_manifest(const std::filesystem::path& path) {
  const Json doc = read_json_file(path);
  const Json& graphs = require(doc, "graphs", path.string());
  if (!graphs.is_array() || graphs.empty()) {
    throw InputError(path.string() + ": field \"graphs\" must be a nonempty array of paths");
  }
  std::vector<std::filesystem::path> out;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (!graphs[i].is_string()) {
      throw InputError(path.string() + ": \"graphs\"[" + std::to_string(i) + "] is not a path");
    }
    std::filesystem::path p = graphs[i].get<std::string>();
    if (p.is_relative()) p = path.parent_path() / p;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace thermoshift
