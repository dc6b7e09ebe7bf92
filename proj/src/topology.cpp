#include <seqnet/topology.hpp>

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

namespace seqnet {

namespace {

std::vector<int> bfs_distances(const Topology& t, int source) {
    std::vector<int> dist(t.n_sensors, -1);
    std::queue<int> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int v : t.neighbor_lists[u]) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
        }
    }
    return dist;
}

Topology build_validated(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 1) throw std::invalid_argument("topology: need at least one sensor");
    std::set<std::pair<int, int>> seen;
    Topology t;
    t.n_sensors = n;
    t.neighbor_lists.assign(n, {});
    for (auto [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw std::invalid_argument("topology: sensor id out of range: (" + std::to_string(a) +
                                        "," + std::to_string(b) + ")");
        if (a == b) throw std::invalid_argument("topology: self-loop at sensor " + std::to_string(a));
        if (a > b) std::swap(a, b);
        if (!seen.insert({a, b}).second)
            throw std::invalid_argument("topology: duplicate edge (" + std::to_string(a) + "," +
                                        std::to_string(b) + ")");
        t.neighbor_lists[a].push_back(b);
        t.neighbor_lists[b].push_back(a);
    }
    t.edges.assign(seen.begin(), seen.end());
    for (auto& nb : t.neighbor_lists) std::sort(nb.begin(), nb.end());

    if (n > 1) {
        const auto dist = bfs_distances(t, 0);
        for (int v = 0; v < n; ++v)
            if (dist[v] < 0) throw std::invalid_argument("topology: graph is disconnected");
    }
    return t;
}

}  // namespace

int DelayMatrix::max_delay() const {
    int v = 0;
    for (int x : nu) v = std::max(v, x);
    return v;
}

Topology ring_topology(int n, int m) {
    if (n < 3) throw std::invalid_argument("ring_topology: need n >= 3");
    if (m < 1) throw std::invalid_argument("ring_topology: need m >= 1");
    if (2 * m >= n)
        throw std::invalid_argument("ring_topology: m >= n/2 would create duplicate or self edges");
    std::vector<std::pair<int, int>> edges;
    for (int k = 0; k < n; ++k)
        for (int d = 1; d <= m; ++d) edges.push_back({k, (k + d) % n});
    // Each undirected edge appears once: (k, k+d) covers both directions.
    return build_validated(n, std::move(edges));
}

Topology from_edge_list(int n, const std::vector<std::pair<int, int>>& edges) {
    return build_validated(n, edges);
}

DelayMatrix delay_matrix(const Topology& t) {
    const int n = t.n_sensors;
    DelayMatrix d;
    d.n = n;
    d.nu.assign(static_cast<std::size_t>(n) * n, 1);
    for (int s = 0; s < n; ++s) {
        const auto dist = bfs_distances(t, s);
        for (int k = 0; k < n; ++k) d.nu[static_cast<std::size_t>(s) * n + k] = std::max(1, dist[k]);
    }
    return d;
}

Matrix adjacency_matrix(const Topology& t) {
    Matrix a(t.n_sensors, t.n_sensors);
    for (auto [i, j] : t.edges) {
        a.at(i, j) = 1.0;
        a.at(j, i) = 1.0;
    }
    return a;
}

Matrix degree_matrix(const Topology& t) {
    Matrix d(t.n_sensors, t.n_sensors);
    for (int k = 0; k < t.n_sensors; ++k) d.at(k, k) = static_cast<double>(t.degree(k));
    return d;
}

Matrix laplacian(const Topology& t) { return mat_sub(degree_matrix(t), adjacency_matrix(t)); }

}  // namespace seqnet
