#include "regraph/pairing.hpp"

#include <numeric>
#include <stdexcept>

namespace regraph {

Pairing::Pairing(Vertex n, std::uint32_t d) : n_(n), d_(d) {
  if (static_cast<std::uint64_t>(n) * d % 2 != 0)
    throw std::invalid_argument("Pairing: d*n must be even");
  mate_.resize(static_cast<std::size_t>(n) * d);
  std::iota(mate_.begin(), mate_.end(), std::size_t{0});
}

void Pairing::set_pair(std::size_t p, std::size_t q) {
  if (p == q) throw std::invalid_argument("Pairing::set_pair: p == q");
  mate_[p] = q;
  mate_[q] = p;
}

bool Pairing::complete() const {
  for (std::size_t p = 0; p < mate_.size(); ++p)
    if (mate_[p] == p) return false;
  return true;
}

bool Pairing::has_loop_pair() const {
  for (std::size_t p = 0; p < mate_.size(); ++p)
    if (mate_[p] != p && vertex_of(p) == vertex_of(mate_[p])) return true;
  return false;
}

Multigraph Pairing::project() const {
  Multigraph g(n_);
  for (std::size_t p = 0; p < mate_.size(); ++p) {
    std::size_t q = mate_[p];
    if (q > p) g.add_edge(vertex_of(p), vertex_of(q), 1);
  }
  return g;
}

}  // namespace regraph
