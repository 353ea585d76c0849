#include "cospec/graph.hpp"

#include "cospec/errors.hpp"

#include <bit>

namespace cospec {

Graph::Graph(int n) : n_(n), adj_(size_t(n)) {
    if (n < 1 || n > kMaxVertices)
        throw PreconditionViolated("graph order must be between 1 and " +
                                   std::to_string(kMaxVertices));
}

void Graph::set_edge(int i, int j, bool present) {
    if (i == j) throw PreconditionViolated("loops are not allowed");
    if (present) {
        adj_[i] |= uint64_t(1) << j;
        adj_[j] |= uint64_t(1) << i;
    } else {
        adj_[i] &= ~(uint64_t(1) << j);
        adj_[j] &= ~(uint64_t(1) << i);
    }
}

int Graph::degree(int i) const { return std::popcount(adj_[i]); }

int Graph::edge_count() const {
    int twice = 0;
    for (int i = 0; i < n_; ++i) twice += degree(i);
    return twice / 2;
}

Graph parse_graph6(std::string_view text) {
    if (text.empty()) throw G6ParseError("empty graph6 string");
    const unsigned char header = static_cast<unsigned char>(text[0]);
    if (header == 126) throw G6ParseError("long-form graph6 (n > 62) is not supported", 0);
    if (header < 63 || header > 125) throw G6ParseError("malformed header byte", 0);
    const int n = header - 63;
    if (n < 1) throw G6ParseError("graph order 0 is out of the supported range", 0);

    Graph g(n);
    const long nbits = long(n) * (n - 1) / 2;
    const long nbytes = (nbits + 5) / 6;
    if (long(text.size()) - 1 < nbytes)
        throw G6ParseError("truncated bit payload", long(text.size()));
    if (long(text.size()) - 1 > nbytes)
        throw G6ParseError("trailing bytes after bit payload", 1 + nbytes);

    long bit = 0;
    for (int col = 1; col < n; ++col)
        for (int row = 0; row < col; ++row, ++bit) {
            const unsigned char ch = static_cast<unsigned char>(text[1 + bit / 6]);
            if (ch < 63 || ch > 126)
                throw G6ParseError("payload byte out of range", 1 + bit / 6);
            if ((ch - 63) >> (5 - bit % 6) & 1) g.set_edge(row, col, true);
        }
    // padding bits of the final sextet must be zero
    for (; bit < nbytes * 6; ++bit) {
        const unsigned char ch = static_cast<unsigned char>(text[1 + bit / 6]);
        if (ch < 63 || ch > 126)
            throw G6ParseError("payload byte out of range", 1 + bit / 6);
        if ((ch - 63) >> (5 - bit % 6) & 1)
            throw G6ParseError("nonzero padding bit", 1 + bit / 6);
    }
    return g;
}

std::string emit_graph6(const Graph& g) {
    const int n = g.order();
    if (n > 62) throw PreconditionViolated("graph6 short form supports at most 62 vertices");
    std::string out;
    out.push_back(char(n + 63));
    int acc = 0, nbits = 0;
    for (int col = 1; col < n; ++col)
        for (int row = 0; row < col; ++row) {
            acc = acc << 1 | int(g.adjacent(row, col));
            if (++nbits == 6) {
                out.push_back(char(acc + 63));
                acc = 0;
                nbits = 0;
            }
        }
    if (nbits > 0) out.push_back(char((acc << (6 - nbits)) + 63));
    return out;
}

Graph complement(const Graph& g) {
    const int n = g.order();
    Graph c(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!g.adjacent(i, j)) c.set_edge(i, j, true);
    return c;
}

IntMatrix adjacency_matrix(const Graph& g) {
    const int n = g.order();
    IntMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (g.adjacent(i, j)) a(i, j) = 1;
    return a;
}

Graph from_adjacency_matrix(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw MatrixFormatError("adjacency matrix must be square");
    const int n = m.rows();
    if (n < 1 || n > kMaxVertices)
        throw MatrixFormatError("adjacency matrix order out of supported range");
    Graph g(n);
    for (int i = 0; i < n; ++i) {
        if (m(i, i) != 0) throw MatrixFormatError("adjacency matrix has a nonzero diagonal entry");
        for (int j = i + 1; j < n; ++j) {
            if (m(i, j) != m(j, i)) throw MatrixFormatError("adjacency matrix is not symmetric");
            if (m(i, j) != 0 && m(i, j) != 1)
                throw MatrixFormatError("adjacency matrix entries must be 0 or 1");
            if (m(i, j) == 1) g.set_edge(i, j, true);
        }
    }
    return g;
}

Graph permuted(const Graph& g, std::span<const int> perm) {
    const int n = g.order();
    if (int(perm.size()) != n) throw PreconditionViolated("permutation length mismatch");
    Graph h(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (g.adjacent(i, j)) h.set_edge(perm[i], perm[j], true);
    return h;
}

Graph random_graph(int n, const Rat& p, uint64_t seed) {
    if (p < 0 || p > 1) throw PreconditionViolated("edge probability must be in [0, 1]");
    Graph g(n);
    if (p == 0) return g;
    if (p == 1) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) g.set_edge(i, j, true);
        return g;
    }
    const Int& num = p.get_num();
    const Int& den = p.get_den();
    if (!den.fits_ulong_p())
        throw PreconditionViolated("edge probability denominator exceeds 64 bits");
    const uint64_t d = den.get_ui();
    const uint64_t a = num.get_ui();
    // accept r only below the largest multiple of d, so r % d is uniform
    const uint64_t excess = (UINT64_MAX % d + 1) % d;
    const uint64_t limit = UINT64_MAX - excess; // inclusive
    SplitMix64 rng(seed);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            uint64_t r = rng.next();
            while (excess != 0 && r > limit) r = rng.next();
            if (r % d < a) g.set_edge(i, j, true);
        }
    return g;
}

} // namespace cospec
