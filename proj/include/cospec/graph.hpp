#pragma once

#include "cospec/intmat.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cospec {

inline constexpr int kMaxVertices = 64;

// Simple undirected graph on 1..64 vertices. Adjacency rows are 64-bit
// masks; values are immutable in spirit (all library operations are pure)
// and cheap to copy.
class Graph {
public:
    Graph() : Graph(1) {}
    explicit Graph(int n);

    int order() const { return n_; }

    bool adjacent(int i, int j) const { return adj_[i] >> j & 1; }
    void set_edge(int i, int j, bool present);

    uint64_t row_bits(int i) const { return adj_[i]; }
    int degree(int i) const;
    int edge_count() const;

    bool operator==(const Graph& o) const = default;

private:
    int n_;
    std::vector<uint64_t> adj_;
};

// graph6, short form (n <= 62): header byte n+63, then the upper triangle
// in column order x(0,1), x(0,2), x(1,2), x(0,3), ... packed 6 bits per
// byte (MSB first), zero padded, each byte offset by 63.
Graph parse_graph6(std::string_view text);
std::string emit_graph6(const Graph& g);

Graph complement(const Graph& g);
IntMatrix adjacency_matrix(const Graph& g);
Graph from_adjacency_matrix(const IntMatrix& m);

Graph permuted(const Graph& g, std::span<const int> perm);

// G(n, p) with one exact Bernoulli(p) coin per vertex pair, consumed in
// row-major pair order from a splitmix64 stream seeded with `seed`.
// Fully deterministic in (n, p, seed).
Graph random_graph(int n, const Rat& p, uint64_t seed);

// splitmix64; the one PRNG used anywhere in the library
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

} // namespace cospec
