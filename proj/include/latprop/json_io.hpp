#pragma once

#include <string>

#include <json.hpp>

#include "latprop/finite_graph.hpp"
#include "latprop/kernel.hpp"
#include "latprop/spectral.hpp"

namespace latprop {

// Graph-spec JSON:
//   {"kind": "path|cycle|star|complete|custom", "size": N,
//    "edges": [[i,j], ...], "potential": [q0, ...]}
// Parse errors name the offending field.
GraphSpec parse_graph_spec(const nlohmann::json& j);
GraphSpec parse_graph_spec_text(const std::string& text);
GraphSpec load_graph_spec_file(const std::string& path);

// Round-trip form: any FiniteGraph serializes as a custom spec.
nlohmann::json graph_to_json(const FiniteGraph& g);

nlohmann::json spectrum_to_json(const Spectrum& s);
nlohmann::json kernel_block_to_json(const KernelBlock& b);

} // namespace latprop
