#include "latprop/finite_graph.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace latprop {

FiniteGraph::FiniteGraph(int k, std::vector<std::uint8_t> adjacency, std::vector<double> potential)
    : k_(k), adj_(std::move(adjacency)), q_(std::move(potential)) {
    if (k_ <= 0) throw std::invalid_argument("FiniteGraph: vertex count must be positive");
    const auto n = static_cast<std::size_t>(k_);
    if (adj_.size() != n * n) throw std::invalid_argument("FiniteGraph: adjacency size != k*k");
    if (q_.size() != n) throw std::invalid_argument("FiniteGraph: potential length != k");
    for (std::size_t p = 0; p < n; ++p) {
        if (adj_[p * n + p] != 0)
            throw std::invalid_argument("FiniteGraph: self-loop at vertex " + std::to_string(p));
        if (!std::isfinite(q_[p]))
            throw std::invalid_argument("FiniteGraph: non-finite potential at vertex " + std::to_string(p));
        for (std::size_t q = 0; q < n; ++q) {
            if (adj_[p * n + q] > 1)
                throw std::invalid_argument("FiniteGraph: adjacency entries must be 0 or 1");
            if (adj_[p * n + q] != adj_[q * n + p])
                throw std::invalid_argument("FiniteGraph: adjacency not symmetric");
        }
    }
}

int FiniteGraph::degree(int p) const {
    int d = 0;
    for (int q = 0; q < k_; ++q) d += adj_[static_cast<std::size_t>(p) * k_ + q];
    return d;
}

int FiniteGraph::max_degree() const {
    int m = 0;
    for (int p = 0; p < k_; ++p) m = std::max(m, degree(p));
    return m;
}

double FiniteGraph::max_abs_potential() const {
    double m = 0.0;
    for (double q : q_) m = std::max(m, std::abs(q));
    return m;
}

std::vector<std::pair<int, int>> FiniteGraph::edge_list() const {
    std::vector<std::pair<int, int>> edges;
    for (int p = 0; p < k_; ++p)
        for (int q = p + 1; q < k_; ++q)
            if (adjacent(p, q)) edges.emplace_back(p, q);
    return edges;
}

namespace {

std::vector<std::uint8_t> empty_adjacency(int k) {
    return std::vector<std::uint8_t>(static_cast<std::size_t>(k) * k, 0);
}

void add_edge(std::vector<std::uint8_t>& adj, int k, int p, int q) {
    adj[static_cast<std::size_t>(p) * k + q] = 1;
    adj[static_cast<std::size_t>(q) * k + p] = 1;
}

} // namespace

FiniteGraph build_finite_graph(const GraphSpec& spec) {
    if (spec.size < 1) throw std::invalid_argument("graph spec: 'size' must be >= 1");

    int k = spec.size;
    std::vector<std::uint8_t> adj;

    switch (spec.kind) {
    case GraphKind::path:
        adj = empty_adjacency(k);
        for (int p = 0; p + 1 < k; ++p) add_edge(adj, k, p, p + 1);
        break;
    case GraphKind::cycle:
        if (k < 3) throw std::invalid_argument("graph spec: cycle needs 'size' >= 3");
        adj = empty_adjacency(k);
        for (int p = 0; p < k; ++p) add_edge(adj, k, p, (p + 1) % k);
        break;
    case GraphKind::star:
        k = spec.size + 1;  // hub 0 plus `size` leaves
        adj = empty_adjacency(k);
        for (int leaf = 1; leaf < k; ++leaf) add_edge(adj, k, 0, leaf);
        break;
    case GraphKind::complete:
        adj = empty_adjacency(k);
        for (int p = 0; p < k; ++p)
            for (int q = p + 1; q < k; ++q) add_edge(adj, k, p, q);
        break;
    case GraphKind::custom: {
        adj = empty_adjacency(k);
        std::set<std::pair<int, int>> seen;
        for (auto [p, q] : spec.edges) {
            if (p < 0 || q < 0 || p >= k || q >= k)
                throw std::invalid_argument("graph spec: 'edges' endpoint out of range");
            if (p == q) throw std::invalid_argument("graph spec: 'edges' contains a self-loop");
            auto key = std::minmax(p, q);
            if (!seen.insert(key).second)
                throw std::invalid_argument("graph spec: 'edges' contains a duplicate edge");
            add_edge(adj, k, p, q);
        }
        break;
    }
    }

    std::vector<double> q = spec.potential;
    if (q.empty()) q.assign(static_cast<std::size_t>(k), 0.0);
    if (static_cast<int>(q.size()) != k)
        throw std::invalid_argument("graph spec: 'potential' length != vertex count");

    return FiniteGraph(k, std::move(adj), std::move(q));
}

RealMatrix hamiltonian_matrix(const FiniteGraph& g) {
    const int k = g.size();
    RealMatrix h(k, k);
    for (int p = 0; p < k; ++p) {
        h(p, p) = g.potential(p);
        for (int q = 0; q < k; ++q)
            if (g.adjacent(p, q)) h(p, q) = 1.0;
    }
    return h;
}

} // namespace latprop
