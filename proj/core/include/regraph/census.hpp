#pragma once

#include <cstdint>
#include <map>

#include "regraph/multigraph.hpp"

namespace regraph {

/// Small-structure census of a multigraph: the statistics the moment
/// predictions speak about.
struct CensusCounts {
  std::uint64_t loops = 0;            // loop multiplicity, summed
  std::uint64_t doubles_exact = 0;    // pairs with multiplicity exactly 2
  std::uint64_t doubles_at_least = 0; // pairs with multiplicity >= 2
  std::uint64_t mult3_plus = 0;       // pairs with multiplicity >= 3
  std::uint64_t triangles = 0;        // triples with all three multiplicities >= 1
  bool simple = true;
  std::map<std::uint32_t, std::uint64_t> multiplicity_histogram;
};

CensusCounts multigraph_census(const Multigraph& g);

}  // namespace regraph
