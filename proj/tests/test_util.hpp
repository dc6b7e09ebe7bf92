#pragma once

#include <utility>
#include <vector>

#include <seqnet/rng.hpp>
#include <seqnet/topology.hpp>

namespace test_util {

// Deterministic connected graph: a random attachment tree plus a few extra
// random edges. Uses the library's counter-based stream so tests are
// reproducible without global state.
inline seqnet::Topology random_connected_graph(int n, std::uint32_t seed) {
    const seqnet::TrialStream stream{0x7e57u, 0xFFFFFFF0u, seed};
    std::vector<std::pair<int, int>> edges;
    auto pick = [&](std::uint32_t slot, int bound) {
        return static_cast<int>(stream.uniforms(slot, 0).u1 * bound);
    };
    for (int v = 1; v < n; ++v) edges.push_back({pick(static_cast<std::uint32_t>(v), v), v});
    const int extra = n / 2;
    std::uint32_t slot = static_cast<std::uint32_t>(n) + 1;
    for (int e = 0; e < extra; ++e) {
        const int a = pick(slot++, n);
        const int b = pick(slot++, n);
        if (a == b) continue;
        const auto edge = std::minmax(a, b);
        bool dup = false;
        for (auto [x, y] : edges)
            if (std::minmax(x, y) == edge) dup = true;
        if (!dup) edges.push_back({edge.first, edge.second});
    }
    return seqnet::from_edge_list(n, edges);
}

}  // namespace test_util
