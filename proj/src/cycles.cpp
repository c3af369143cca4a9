#include "crn/cycles.hpp"

#include "crn/errors.hpp"

namespace crn {

namespace {

struct CycleSearch {
    int node_count;
    const std::vector<MultiEdge>& edges;
    std::vector<std::vector<int>> adjacency;  // node -> edge indices
    std::vector<bool> on_path;
    std::vector<int> path;
    std::vector<std::vector<int>> found;
    std::size_t cap;
    int root = 0;

    CycleSearch(int n, const std::vector<MultiEdge>& e, std::size_t cap_)
        : node_count(n), edges(e), adjacency(static_cast<std::size_t>(n)), on_path(static_cast<std::size_t>(n), false), cap(cap_) {
        for (std::size_t i = 0; i < edges.size(); ++i)
            adjacency[static_cast<std::size_t>(edges[i].from)].push_back(static_cast<int>(i));
    }

    void dfs(int node) {
        on_path[static_cast<std::size_t>(node)] = true;
        for (int ei : adjacency[static_cast<std::size_t>(node)]) {
            const MultiEdge& e = edges[static_cast<std::size_t>(ei)];
            if (e.to < root) continue;  // cycles are rooted at their smallest node
            if (e.to == root) {
                path.push_back(ei);
                found.push_back(path);
                if (found.size() > cap) throw CapExceeded("cycle enumeration");
                path.pop_back();
            } else if (!on_path[static_cast<std::size_t>(e.to)]) {
                path.push_back(ei);
                dfs(e.to);
                path.pop_back();
            }
        }
        on_path[static_cast<std::size_t>(node)] = false;
    }
};

}  // namespace

std::vector<std::vector<int>> simple_cycles(int node_count, const std::vector<MultiEdge>& edges,
                                            std::size_t cap) {
    CycleSearch search(node_count, edges, cap);
    std::vector<std::vector<int>> all;
    for (int root = 0; root < node_count; ++root) {
        search.root = root;
        search.dfs(root);
        for (auto& c : search.found) all.push_back(std::move(c));
        search.found.clear();
    }
    return all;
}

}  // namespace crn
