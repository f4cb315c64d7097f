#pragma once

// Dinic max-flow used to compute minimum vertex cuts via the standard
// vertex-splitting reduction: each graph vertex is split into an entry
// and an exit node joined by a unit-capacity edge, original edges get
// unbounded capacity, so max flow equals the minimum number of vertices
// whose removal separates the chosen sources from the chosen targets.

#include <cstdint>
#include <queue>
#include <vector>

namespace hymul {

class FlowNetwork {
public:
    explicit FlowNetwork(std::size_t nodes) : head_(nodes, -1) {}

    static constexpr std::int64_t kInfCap = std::int64_t(1) << 60;

    void add_edge(std::size_t u, std::size_t v, std::int64_t cap) {
        edges_.push_back({static_cast<int>(v), head_[u], cap});
        head_[u] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({static_cast<int>(u), head_[v], 0});
        head_[v] = static_cast<int>(edges_.size()) - 1;
    }

    std::int64_t max_flow(std::size_t s, std::size_t t) {
        std::int64_t flow = 0;
        while (bfs(s, t)) {
            iter_ = head_;
            std::int64_t f;
            while ((f = dfs(s, t, kInfCap)) > 0) flow += f;
        }
        return flow;
    }

    // After max_flow: nodes reachable from s in the residual network.
    std::vector<std::uint8_t> residual_side(std::size_t s) const {
        std::vector<std::uint8_t> seen(head_.size(), 0);
        std::queue<std::size_t> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            std::size_t u = q.front();
            q.pop();
            for (int e = head_[u]; e != -1; e = edges_[e].next)
                if (edges_[e].cap > 0 && !seen[edges_[e].to]) {
                    seen[edges_[e].to] = 1;
                    q.push(edges_[e].to);
                }
        }
        return seen;
    }

private:
    struct Edge {
        int to, next;
        std::int64_t cap;
    };

    bool bfs(std::size_t s, std::size_t t) {
        level_.assign(head_.size(), -1);
        std::queue<std::size_t> q;
        q.push(s);
        level_[s] = 0;
        while (!q.empty()) {
            std::size_t u = q.front();
            q.pop();
            for (int e = head_[u]; e != -1; e = edges_[e].next)
                if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
                    level_[edges_[e].to] = level_[u] + 1;
                    q.push(edges_[e].to);
                }
        }
        return level_[t] >= 0;
    }

    std::int64_t dfs(std::size_t u, std::size_t t, std::int64_t limit) {
        if (u == t) return limit;
        for (int& e = iter_[u]; e != -1; e = edges_[e].next) {
            Edge& ed = edges_[e];
            if (ed.cap > 0 && level_[ed.to] == level_[u] + 1) {
                std::int64_t f = dfs(ed.to, t, std::min(limit, ed.cap));
                if (f > 0) {
                    ed.cap -= f;
                    edges_[e ^ 1].cap += f;
                    return f;
                }
            }
        }
        return 0;
    }

    std::vector<int> head_;
    std::vector<int> iter_;
    std::vector<int> level_;
    std::vector<Edge> edges_;
};

} // namespace hymul
