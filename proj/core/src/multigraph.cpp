#include "regraph/multigraph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace regraph {

void Multigraph::add_edge(Vertex u, Vertex v, std::uint32_t mult) {
  if (u == 0 || v == 0 || u > n_ || v > n_)
    throw std::invalid_argument("Multigraph::add_edge: vertex out of range");
  if (mult == 0) return;
  if (u > v) std::swap(u, v);
  edges_[{u, v}] += mult;
}

void Multigraph::remove_edge(Vertex u, Vertex v, std::uint32_t mult) {
  if (u > v) std::swap(u, v);
  auto it = edges_.find({u, v});
  if (it == edges_.end() || it->second < mult)
    throw std::invalid_argument("Multigraph::remove_edge: multiplicity underflow");
  it->second -= mult;
  if (it->second == 0) edges_.erase(it);
}

void Multigraph::cap_multiplicities() {
  for (auto& [pair, mult] : edges_) mult = 1;
}

std::uint32_t Multigraph::multiplicity(Vertex u, Vertex v) const {
  if (u > v) std::swap(u, v);
  auto it = edges_.find({u, v});
  return it == edges_.end() ? 0 : it->second;
}

void Multigraph::superpose(const Multigraph& other) {
  if (other.n_ != n_)
    throw std::invalid_argument("Multigraph::superpose: vertex count mismatch");
  for (const auto& [pair, mult] : other.edges_) edges_[pair] += mult;
}

std::uint64_t Multigraph::total_multiplicity() const {
  std::uint64_t total = 0;
  for (const auto& [pair, mult] : edges_) total += mult;
  return total;
}

std::vector<std::uint64_t> Multigraph::degrees() const {
  std::vector<std::uint64_t> deg(n_ + 1, 0);
  for (const auto& [pair, mult] : edges_) {
    if (pair.first == pair.second) {
      deg[pair.first] += 2ull * mult;
    } else {
      deg[pair.first] += mult;
      deg[pair.second] += mult;
    }
  }
  return deg;
}

bool Multigraph::is_simple() const {
  for (const auto& [pair, mult] : edges_)
    if (pair.first == pair.second || mult >= 2) return false;
  return true;
}

std::string Multigraph::canonical_key() const {
  std::ostringstream os;
  os << n_ << '|';
  bool first = true;
  for (const auto& [pair, mult] : edges_) {
    if (!first) os << ';';
    first = false;
    os << pair.first << ',' << pair.second << ',' << mult;
  }
  return os.str();
}

Multigraph Multigraph::relabeled(const std::vector<Vertex>& perm) const {
  Multigraph out(n_);
  for (const auto& [pair, mult] : edges_)
    out.add_edge(perm[pair.first - 1] + 1, perm[pair.second - 1] + 1, mult);
  return out;
}

bool contains(const Multigraph& sub, const Multigraph& super, ContainmentMode mode) {
  if (sub.n() != super.n())
    throw std::invalid_argument("contains: vertex count mismatch");
  for (const auto& [pair, mult] : sub.edges()) {
    std::uint32_t have = super.multiplicity(pair.first, pair.second);
    if (mode == ContainmentMode::kSimpleSubgraph) {
      if (have == 0) return false;
    } else {
      if (have < mult) return false;
    }
  }
  return true;
}

bool Matching::valid() const {
  if (n % 2 != 0 || pairs.size() != n / 2) return false;
  std::vector<bool> seen(n + 1, false);
  for (auto [u, v] : pairs) {
    if (u == 0 || v == 0 || u > n || v > n || u == v) return false;
    if (seen[u] || seen[v]) return false;
    seen[u] = seen[v] = true;
  }
  return true;
}

Multigraph Matching::to_multigraph() const {
  Multigraph g(n);
  for (auto [u, v] : pairs) g.add_edge(u, v, 1);
  return g;
}

void Digraph::add_arc(Vertex u, Vertex v) {
  if (u == 0 || v == 0 || u > n_ || v > n_)
    throw std::invalid_argument("Digraph::add_arc: vertex out of range");
  if (u == v) throw std::invalid_argument("Digraph::add_arc: self-arc");
  if (out_.empty()) out_.resize(n_ + 1);
  out_[u].push_back(v);
  ++arcs_;
}

bool Digraph::has_arc(Vertex u, Vertex v) const {
  if (out_.empty() || u > n_) return false;
  return std::find(out_[u].begin(), out_[u].end(), v) != out_[u].end();
}

std::vector<std::uint64_t> Digraph::out_degrees() const {
  std::vector<std::uint64_t> deg(n_ + 1, 0);
  for (Vertex u = 1; u <= n_ && !out_.empty(); ++u) deg[u] = out_[u].size();
  return deg;
}

Multigraph Digraph::to_undirected() const {
  Multigraph g(n_);
  for (Vertex u = 1; u <= n_ && !out_.empty(); ++u)
    for (Vertex v : out_[u])
      if (g.multiplicity(u, v) == 0) g.add_edge(u, v, 1);
  return g;
}

}  // namespace regraph
