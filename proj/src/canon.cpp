#include "cospec/canon.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <vector>

namespace cospec {

namespace {

struct Canonicalizer {
    const Graph& g;
    int n;
    std::string best; // smallest leaf encoding seen so far

    explicit Canonicalizer(const Graph& graph) : g(graph), n(graph.order()) {}

    // 1-WL: split cells by (color, neighbor count per color) until stable.
    // New colors are ranks of the sorted signatures, so the refined coloring
    // is itself relabeling-invariant.
    void refine(std::vector<int>& color) const {
        int classes = *std::max_element(color.begin(), color.end()) + 1;
        for (;;) {
            std::vector<std::vector<int>> sig(n);
            for (int v = 0; v < n; ++v) {
                sig[v].assign(classes + 1, 0);
                sig[v][0] = color[v];
                uint64_t row = g.row_bits(v);
                while (row) {
                    int u = std::countr_zero(row);
                    row &= row - 1;
                    ++sig[v][1 + color[u]];
                }
            }
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](int a, int b) { return sig[a] < sig[b]; });
            std::vector<int> next(n);
            int c = 0;
            for (int i = 0; i < n; ++i) {
                if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++c;
                next[order[i]] = c;
            }
            if (c + 1 == classes && next == color) return;
            if (c + 1 == n) { // discrete
                color = next;
                return;
            }
            color = std::move(next);
            classes = c + 1;
        }
    }

    // discrete coloring is a bijection onto {0..n-1}; encode the relabeled
    // upper triangle
    std::string encode(const std::vector<int>& color) const {
        std::vector<int> inv(n); // new index -> old vertex
        for (int v = 0; v < n; ++v) inv[color[v]] = v;
        std::string enc;
        enc.push_back(char(n));
        int acc = 0, nbits = 0;
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i) {
                acc = acc << 1 | int(g.adjacent(inv[i], inv[j]));
                if (++nbits == 8) {
                    enc.push_back(char(acc));
                    acc = 0;
                    nbits = 0;
                }
            }
        if (nbits > 0) enc.push_back(char(acc << (8 - nbits)));
        return enc;
    }

    // (u v) is an automorphism iff their neighborhoods agree off {u, v}
    bool twins(int u, int v) const {
        uint64_t mask = ~((uint64_t(1) << u) | (uint64_t(1) << v));
        return (g.row_bits(u) & mask) == (g.row_bits(v) & mask);
    }

    void search(std::vector<int> color) {
        refine(color);
        int classes = *std::max_element(color.begin(), color.end()) + 1;
        if (classes == n) {
            std::string enc = encode(color);
            if (best.empty() || enc < best) best = std::move(enc);
            return;
        }
        // first non-singleton cell in color order
        std::vector<int> count(classes, 0);
        for (int v = 0; v < n; ++v) ++count[color[v]];
        int cell = 0;
        while (count[cell] < 2) ++cell;
        std::vector<int> members;
        for (int v = 0; v < n; ++v)
            if (color[v] == cell) members.push_back(v);

        std::vector<int> branched;
        for (int v : members) {
            bool dup = false;
            for (int u : branched)
                if (twins(u, v)) { dup = true; break; }
            if (dup) continue;
            branched.push_back(v);
            std::vector<int> child(n);
            for (int w = 0; w < n; ++w)
                child[w] = 2 * color[w] + int(color[w] == cell && w != v);
            search(std::move(child));
        }
    }
};

} // namespace

CanonicalForm canonical_form(const Graph& g) {
    Canonicalizer c(g);
    c.search(std::vector<int>(g.order(), 0));
    return CanonicalForm{std::move(c.best)};
}

bool is_isomorphic(const Graph& g, const Graph& h) {
    if (g.order() != h.order() || g.edge_count() != h.edge_count()) return false;
    return canonical_form(g) == canonical_form(h);
}

} // namespace cospec
