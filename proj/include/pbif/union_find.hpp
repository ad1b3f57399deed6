#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace pbif {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> rank;

    explicit UnionFind(std::size_t n) : parent(n), rank(n, 0) {
        std::iota(parent.begin(), parent.end(), 0u);
    }

    std::uint32_t find(std::uint32_t x) {
        std::uint32_t root = x;
        while (parent[root] != root) root = parent[root];
        while (parent[x] != root) {
            std::uint32_t next = parent[x];
            parent[x] = root;
            x = next;
        }
        return root;
    }

    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank[a] < rank[b]) std::swap(a, b);
        parent[b] = a;
        if (rank[a] == rank[b]) ++rank[a];
        return true;
    }
};

}  // namespace pbif
