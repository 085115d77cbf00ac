#include "latprop/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace latprop {

using nlohmann::json;

namespace {

GraphKind parse_kind(const std::string& name) {
    if (name == "path") return GraphKind::path;
    if (name == "cycle") return GraphKind::cycle;
    if (name == "star") return GraphKind::star;
    if (name == "complete") return GraphKind::complete;
    if (name == "custom") return GraphKind::custom;
    throw std::invalid_argument("graph spec: field 'kind' must be one of "
                                "path|cycle|star|complete|custom, got '" + name + "'");
}

std::string kind_name(GraphKind kind) {
    switch (kind) {
    case GraphKind::path: return "path";
    case GraphKind::cycle: return "cycle";
    case GraphKind::star: return "star";
    case GraphKind::complete: return "complete";
    default: return "custom";
    }
}

} // namespace

GraphSpec parse_graph_spec(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("graph spec: top level must be a JSON object");

    GraphSpec spec;
    if (!j.contains("kind") || !j["kind"].is_string())
        throw std::invalid_argument("graph spec: field 'kind' missing or not a string");
    spec.kind = parse_kind(j["kind"].get<std::string>());

    if (!j.contains("size") || !j["size"].is_number_integer() || j["size"].get<long long>() < 1)
        throw std::invalid_argument("graph spec: field 'size' missing or not a positive integer");
    spec.size = j["size"].get<int>();

    if (j.contains("edges")) {
        if (!j["edges"].is_array())
            throw std::invalid_argument("graph spec: field 'edges' must be an array of [i,j] pairs");
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
                throw std::invalid_argument("graph spec: field 'edges' entries must be [i,j] integer pairs");
            spec.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    }

    if (j.contains("potential")) {
        if (!j["potential"].is_array())
            throw std::invalid_argument("graph spec: field 'potential' must be an array of numbers");
        for (const auto& v : j["potential"]) {
            if (!v.is_number())
                throw std::invalid_argument("graph spec: field 'potential' entries must be numbers");
            spec.potential.push_back(v.get<double>());
        }
    }

    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "kind" && key != "size" && key != "edges" && key != "potential")
            throw std::invalid_argument("graph spec: unknown field '" + key + "'");
    }
    return spec;
}

GraphSpec parse_graph_spec_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("graph spec: invalid JSON: ") + e.what());
    }
    return parse_graph_spec(j);
}

GraphSpec load_graph_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("graph spec: cannot open file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_graph_spec_text(text);
}

json graph_to_json(const FiniteGraph& g) {
    json edges = json::array();
    for (auto [p, q] : g.edge_list()) edges.push_back(json::array({p, q}));
    return json{{"kind", kind_name(GraphKind::custom)},
                {"size", g.size()},
                {"edges", edges},
                {"potential", g.potentials()}};
}

json spectrum_to_json(const Spectrum& s) {
    const int k = s.size();
    json vectors = json::array();
    for (int i = 0; i < k; ++i) {
        json row = json::array();
        for (int m = 0; m < k; ++m) row.push_back(s.eigenvectors(i, m));
        vectors.push_back(std::move(row));
    }
    return json{{"eigenvalues", s.eigenvalues}, {"eigenvectors", vectors}};
}

json kernel_block_to_json(const KernelBlock& b) {
    const std::size_t k = b.block.rows();
    json re = json::array(), im = json::array();
    for (std::size_t p = 0; p < k; ++p) {
        json row_re = json::array(), row_im = json::array();
        for (std::size_t q = 0; q < k; ++q) {
            row_re.push_back(b.block(p, q).real());
            row_im.push_back(b.block(p, q).imag());
        }
        re.push_back(std::move(row_re));
        im.push_back(std::move(row_im));
    }
    return json{{"nu", b.nu}, {"t", b.t}, {"size", k}, {"re", re}, {"im", im}};
}

} // namespace latprop
