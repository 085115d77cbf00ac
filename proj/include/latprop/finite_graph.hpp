#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "latprop/matrix.hpp"

namespace latprop {

enum class GraphKind { path, cycle, star, complete, custom };

// Construction recipe for a fundamental crystal. For `star`, `size` counts
// the leaves; the built graph has size+1 vertices with the hub at index 0.
struct GraphSpec {
    GraphKind kind = GraphKind::path;
    int size = 1;
    std::vector<std::pair<int, int>> edges;  // custom only
    std::vector<double> potential;           // empty = all zero
};

// Finite crystal: symmetric 0/1 adjacency with zero diagonal plus a real
// on-site potential. Immutable after construction; safe to share.
class FiniteGraph {
public:
    FiniteGraph(int k, std::vector<std::uint8_t> adjacency, std::vector<double> potential);

    int size() const { return k_; }
    bool adjacent(int p, int q) const { return adj_[static_cast<std::size_t>(p) * k_ + q] != 0; }
    double potential(int p) const { return q_[p]; }
    const std::vector<double>& potentials() const { return q_; }

    int degree(int p) const;
    int max_degree() const;
    double max_abs_potential() const;
    std::vector<std::pair<int, int>> edge_list() const;  // p < q, lexicographic

private:
    int k_;
    std::vector<std::uint8_t> adj_;  // k*k row-major
    std::vector<double> q_;
};

FiniteGraph build_finite_graph(const GraphSpec& spec);

// A = adjacency, H = A + diag(Q).
RealMatrix hamiltonian_matrix(const FiniteGraph& g);

} // namespace latprop
