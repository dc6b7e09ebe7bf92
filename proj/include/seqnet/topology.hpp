#pragma once

#include <utility>
#include <vector>

#include <seqnet/matrix.hpp>

namespace seqnet {

// Undirected, connected sensor network. Sensor ids are 0-based. Immutable
// after construction; safe for concurrent reads.
struct Topology {
    int n_sensors = 0;
    std::vector<std::pair<int, int>> edges;            // each pair (a, b) with a < b, unique
    std::vector<std::vector<int>> neighbor_lists;      // sorted adjacency per sensor

    int degree(int k) const { return static_cast<int>(neighbor_lists[k].size()); }
};

// Dissemination delays: nu(l, k) = max(1, hop distance from l to k).
// Self and direct neighbours share delay 1 because a sample is delivered to
// the neighbourhood within the slot it is collected.
struct DelayMatrix {
    int n = 0;
    std::vector<int> nu;  // row-major n x n

    int at(int l, int k) const { return nu[static_cast<std::size_t>(l) * n + k]; }
    int max_delay() const;
};

// Circulant network: sensor k adjacent to (k +/- d) mod n for d = 1..m.
// Requires n >= 3 and 1 <= m < n/2.
Topology ring_topology(int n, int m);

// Arbitrary edge list; rejects self-loops, duplicates, out-of-range ids, and
// disconnected graphs.
Topology from_edge_list(int n, const std::vector<std::pair<int, int>>& edges);

// Breadth-first hop distances from every sensor, floored at 1.
DelayMatrix delay_matrix(const Topology& t);

Matrix adjacency_matrix(const Topology& t);
Matrix degree_matrix(const Topology& t);
Matrix laplacian(const Topology& t);  // D - A; symmetric, rows sum to 0

}  // namespace seqnet
