#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace regraph {

using Vertex = std::uint32_t;          // 1-indexed
using VertexPair = std::pair<Vertex, Vertex>;  // stored with u <= v

/// Vertex-labeled multigraph: unordered pairs with multiplicities >= 1.
/// A pair (v,v) is a loop and contributes 2 to the degree of v per unit of
/// multiplicity. Absent pair = multiplicity 0.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(Vertex n) : n_(n) {}

  Vertex n() const { return n_; }

  /// Adds `mult` to the multiplicity of {u,v}. 1-indexed, u may exceed v.
  void add_edge(Vertex u, Vertex v, std::uint32_t mult = 1);

  /// Removes `mult` units from {u,v}; erases the pair at zero.
  void remove_edge(Vertex u, Vertex v, std::uint32_t mult = 1);

  /// Caps every multiplicity at 1 ("replacing multiple edges by simple edges").
  void cap_multiplicities();

  std::uint32_t multiplicity(Vertex u, Vertex v) const;

  /// Superposition: multiplicities of `other` are added onto this graph.
  void superpose(const Multigraph& other);

  /// Number of distinct vertex pairs with multiplicity >= 1.
  std::size_t pair_count() const { return edges_.size(); }

  /// Total edge multiplicity (loops counted once here; they still add 2 to
  /// the incident degree).
  std::uint64_t total_multiplicity() const;

  /// Degrees with loops counted twice; index 0 unused.
  std::vector<std::uint64_t> degrees() const;

  bool is_simple() const;  // no loops, no multiplicity >= 2

  const std::map<VertexPair, std::uint32_t>& edges() const { return edges_; }

  /// Canonical text key "n|u,v,m;u,v,m;..." with pairs in sorted order.
  std::string canonical_key() const;

  /// Relabels vertices: vertex v becomes perm[v-1]+1. perm must be a
  /// permutation of 0..n-1.
  Multigraph relabeled(const std::vector<Vertex>& perm) const;

  bool operator==(const Multigraph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  Vertex n_ = 0;
  std::map<VertexPair, std::uint32_t> edges_;
};

enum class ContainmentMode { kSimpleSubgraph, kSubMultigraph };

/// Whether `sub` is contained in `super`. Throws std::invalid_argument on a
/// vertex-count mismatch.
bool contains(const Multigraph& sub, const Multigraph& super, ContainmentMode mode);

/// Perfect matching on [n]: n/2 unordered pairs covering every vertex once.
struct Matching {
  Vertex n = 0;
  std::vector<VertexPair> pairs;

  bool valid() const;
  Multigraph to_multigraph() const;
};

/// Simple digraph: ordered arcs (u,v), u != v, no duplicates.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(Vertex n) : n_(n) {}

  Vertex n() const { return n_; }
  void add_arc(Vertex u, Vertex v);
  bool has_arc(Vertex u, Vertex v) const;
  std::size_t arc_count() const { return arcs_; }
  const std::vector<std::vector<Vertex>>& out_lists() const { return out_; }
  std::vector<std::uint64_t> out_degrees() const;

  /// Drops orientations; parallel arcs collapse to a simple edge.
  Multigraph to_undirected() const;

 private:
  Vertex n_ = 0;
  std::size_t arcs_ = 0;
  std::vector<std::vector<Vertex>> out_;  // sized n_+1 lazily
};

}  // namespace regraph
