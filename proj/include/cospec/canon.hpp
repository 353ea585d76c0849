#pragma once

#include "cospec/graph.hpp"

#include <compare>
#include <string>

namespace cospec {

// Canonical byte encoding, invariant under vertex relabeling: byte 0 is the
// order, the rest packs the upper triangle of the canonically relabeled
// adjacency matrix 8 bits per byte.
struct CanonicalForm {
    std::string bytes;
    auto operator<=>(const CanonicalForm&) const = default;
};

// Canonical labeling by color refinement plus backtracking over the first
// non-singleton cell. Vertices with identical neighborhoods branch once.
CanonicalForm canonical_form(const Graph& g);

bool is_isomorphic(const Graph& g, const Graph& h);

} // namespace cospec
