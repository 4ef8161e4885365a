#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "regraph/multigraph.hpp"
#include "regraph/rng.hpp"

namespace regraph {

struct TwoOutMatching {
  std::optional<Matching> matching;  // absent when the copy has no perfect matching
  bool uniform_choice = true;        // false above the exact-enumeration size
};

/// Finds a perfect matching of a simple graph: exact enumeration with a
/// uniform pick for n <= uniform_limit, maximum-matching search (blossom)
/// above it. Absence is data, not an error.
TwoOutMatching perfect_matching_of_graph(const Multigraph& g, RngStream& rng,
                                         Vertex uniform_limit = 16);

/// For each of `count` independent 2-out graph copies on [n], a perfect
/// matching (uniform among the copy's matchings at small n, arbitrary above),
/// or absent when none exists.
std::vector<TwoOutMatching> matchings_via_2out(Vertex n, std::uint32_t count, RngStream& rng,
                                               Vertex uniform_limit = 16);

/// Maximum-matching size of a simple graph (general graphs, blossom search).
std::size_t maximum_matching_size(const Multigraph& g);

}  // namespace regraph
