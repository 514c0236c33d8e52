#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "thermoshift/potential.hpp"

namespace thermoshift {

using Json = nlohmann::ordered_json;

/// {"vertices": [ids], "edges": [[from, to], ...]}
DirectedGraph graph_from_json(const Json& doc);
Json graph_to_json(const DirectedGraph& g);

/// {"window": [l, r], "values": {"a b c": value, ...}, "theta": t (optional)}.
/// Keys list the identifiers of the window word separated by single spaces.
LocallyConstantPotential potential_from_json(const DirectedGraph& g, const Json& doc);
Json potential_to_json(const LocallyConstantPotential& phi);

/// Space-joined identifiers of a path.
std::string join_ids(const DirectedGraph& g, std::span<const Vertex> path);

Json read_json_file(const std::filesystem::path& path);
DirectedGraph load_graph(const std::filesystem::path& path);
LocallyConstantPotential load_potential(const DirectedGraph& g, const std::filesystem::path& path);

/// {"graphs": [paths]}; relative paths are resolved against the manifest's directory.
std::vector<std::filesystem::path> load_manifest(const std::filesystem::path& path);

/// Serializes with a fixed key order and reals at 17 significant digits.
std::string dump_json(const Json& doc, int indent = 2);

/// %.17g, with non-finite values spelled out.
std::string format_real(double x);

}  // namespace thermoshift
