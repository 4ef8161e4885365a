#pragma once

#include <cstdint>
#include <vector>

#include "regraph/multigraph.hpp"

namespace regraph {

/// Perfect matching on the d*n points of the configuration model: n bins
/// (vertices) of d labeled slots each. Point (v, s) with v in [1,n],
/// s in [1,d] has flat index (v-1)*d + (s-1).
class Pairing {
 public:
  Pairing() = default;
  Pairing(Vertex n, std::uint32_t d);

  Vertex n() const { return n_; }
  std::uint32_t d() const { return d_; }
  std::size_t points() const { return mate_.size(); }

  /// Flat partner index of flat point p; mate(p) == p means unmatched.
  std::size_t mate(std::size_t p) const { return mate_[p]; }
  void set_pair(std::size_t p, std::size_t q);

  Vertex vertex_of(std::size_t p) const { return static_cast<Vertex>(p / d_) + 1; }
  std::uint32_t slot_of(std::size_t p) const { return static_cast<std::uint32_t>(p % d_) + 1; }
  std::size_t point_index(Vertex v, std::uint32_t slot) const {
    return static_cast<std::size_t>(v - 1) * d_ + (slot - 1);
  }

  bool complete() const;       // every point matched
  bool has_loop_pair() const;  // some pair joins two points of one bin

  /// G[P]: contract bins. Every vertex ends with degree exactly d
  /// (loops counted twice).
  Multigraph project() const;

  bool operator==(const Pairing& o) const {
    return n_ == o.n_ && d_ == o.d_ && mate_ == o.mate_;
  }

 private:
  Vertex n_ = 0;
  std::uint32_t d_ = 0;
  std::vector<std::size_t> mate_;
};

}  // namespace regraph
