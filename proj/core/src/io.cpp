#include "regraph/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace regraph {
namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur)) lines.push_back(cur);
  return lines;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

std::uint64_t parse_u64(const std::string& tok, std::size_t line) {
  try {
    std::size_t pos = 0;
    if (!tok.empty() && tok[0] == '-') throw std::invalid_argument("negative");
    std::uint64_t v = std::stoull(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw parse_error("expected nonnegative integer, got '" + tok + "'", line);
  }
}

Rational parse_rational(const std::string& tok, std::size_t line) {
  try {
    auto slash = tok.find('/');
    if (slash == std::string::npos) return Rational(BigCount(tok));
    BigCount num(tok.substr(0, slash));
    BigCount den(tok.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const parse_error&) {
    throw;
  } catch (const std::exception&) {
    throw parse_error("expected rational 'p/q', got '" + tok + "'", line);
  }
}

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r) << '/' << boost::multiprecision::denominator(r);
  return os.str();
}

}  // namespace

std::string serialize(const Multigraph& g) {
  std::ostringstream os;
  os << g.n() << ' ' << g.pair_count() << '\n';
  for (const auto& [pair, mult] : g.edges())
    os << pair.first << ' ' << pair.second << ' ' << mult << '\n';
  return os.str();
}

Multigraph parse_multigraph(const std::string& text) {
  auto lines = split_lines(text);
  if (lines.empty()) throw parse_error("empty multigraph file", 1);
  auto head = tokens(lines[0]);
  if (head.size() != 2) throw parse_error("multigraph header must be 'n m'", 1);
  Vertex n = static_cast<Vertex>(parse_u64(head[0], 1));
  std::uint64_t m = parse_u64(head[1], 1);
  Multigraph g(n);
  if (lines.size() != m + 1)
    throw parse_error("expected " + std::to_string(m) + " edge lines", lines.size());
  for (std::uint64_t i = 0; i < m; ++i) {
    std::size_t ln = i + 2;
    auto toks = tokens(lines[i + 1]);
    if (toks.size() != 3) throw parse_error("edge line must be 'u v mult'", ln);
    Vertex u = static_cast<Vertex>(parse_u64(toks[0], ln));
    Vertex v = static_cast<Vertex>(parse_u64(toks[1], ln));
    std::uint64_t mult = parse_u64(toks[2], ln);
    if (u > v) throw parse_error("edge line must satisfy u <= v", ln);
    if (mult == 0) throw parse_error("multiplicity must be >= 1", ln);
    if (u == 0 || v > n) throw parse_error("vertex out of range", ln);
    if (g.multiplicity(u, v) != 0) throw parse_error("duplicate pair", ln);
    g.add_edge(u, v, static_cast<std::uint32_t>(mult));
  }
  return g;
}

std::string serialize(const Pairing& p) {
  std::ostringstream os;
  os << p.n() << ' ' << p.d() << '\n';
  for (std::size_t q = 0; q < p.points(); ++q) {
    std::size_t r = p.mate(q);
    if (r > q)
      os << p.vertex_of(q) << ' ' << p.slot_of(q) << ' ' << p.vertex_of(r) << ' '
         << p.slot_of(r) << '\n';
  }
  return os.str();
}

Pairing parse_pairing(const std::string& text) {
  auto lines = split_lines(text);
  if (lines.empty()) throw parse_error("empty pairing file", 1);
  auto head = tokens(lines[0]);
  if (head.size() != 2) throw parse_error("pairing header must be 'n d'", 1);
  Vertex n = static_cast<Vertex>(parse_u64(head[0], 1));
  std::uint32_t d = static_cast<std::uint32_t>(parse_u64(head[1], 1));
  Pairing p(n, d);
  std::size_t expected = static_cast<std::size_t>(n) * d / 2;
  if (lines.size() != expected + 1)
    throw parse_error("expected " + std::to_string(expected) + " pair lines", lines.size());
  for (std::size_t i = 0; i < expected; ++i) {
    std::size_t ln = i + 2;
    auto toks = tokens(lines[i + 1]);
    if (toks.size() != 4) throw parse_error("pair line must be 'u su v sv'", ln);
    Vertex u = static_cast<Vertex>(parse_u64(toks[0], ln));
    std::uint32_t su = static_cast<std::uint32_t>(parse_u64(toks[1], ln));
    Vertex v = static_cast<Vertex>(parse_u64(toks[2], ln));
    std::uint32_t sv = static_cast<std::uint32_t>(parse_u64(toks[3], ln));
    if (u == 0 || u > n || v == 0 || v > n || su == 0 || su > d || sv == 0 || sv > d)
      throw parse_error("point out of range", ln);
    std::size_t a = p.point_index(u, su), b = p.point_index(v, sv);
    if (a == b) throw parse_error("point paired with itself", ln);
    if (p.mate(a) != a || p.mate(b) != b) throw parse_error("point matched twice", ln);
    p.set_pair(a, b);
  }
  if (!p.complete()) throw parse_error("pairing incomplete", lines.size());
  return p;
}

std::string serialize(const FiniteDistribution& d) {
  std::ostringstream os;
  for (std::size_t i = 0; i < d.size(); ++i)
    os << d.key(i) << ' ' << boost::multiprecision::numerator(d.prob(i)) << ' '
       << boost::multiprecision::denominator(d.prob(i)) << '\n';
  return os.str();
}

FiniteDistribution parse_finite_distribution(const std::string& text) {
  auto lines = split_lines(text);
  std::vector<std::string> keys;
  std::vector<Rational> probs;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::size_t ln = i + 1;
    auto toks = tokens(lines[i]);
    if (toks.size() != 3)
      throw parse_error("distribution line must be 'key num den'", ln);
    keys.push_back(toks[0]);
    try {
      BigCount num(toks[1]);
      BigCount den(toks[2]);
      if (den == 0) throw std::invalid_argument("zero denominator");
      probs.emplace_back(num, den);
    } catch (const std::exception&) {
      throw parse_error("bad rational probability", ln);
    }
  }
  if (keys.empty()) throw parse_error("empty distribution", 1);
  return FiniteDistribution(std::move(keys), std::move(probs));
}

std::string serialize(const JointCoupling& c) {
  std::ostringstream os;
  for (const auto& [i, j, w] : c.entries)
    os << c.keys_x[i] << ' ' << c.keys_y[j] << ' ' << rational_str(w) << '\n';
  return os.str();
}

JointCoupling parse_joint_coupling(const std::string& text) {
  auto lines = split_lines(text);
  JointCoupling jc;
  std::unordered_map<std::string, std::size_t> ix, iy;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::size_t ln = i + 1;
    auto toks = tokens(lines[i]);
    if (toks.size() != 3)
      throw parse_error("coupling line must be 'x-key y-key weight'", ln);
    auto [itx, newx] = ix.emplace(toks[0], jc.keys_x.size());
    if (newx) jc.keys_x.push_back(toks[0]);
    auto [ity, newy] = iy.emplace(toks[1], jc.keys_y.size());
    if (newy) jc.keys_y.push_back(toks[1]);
    jc.entries.emplace_back(itx->second, ity->second, parse_rational(toks[2], ln));
  }
  return jc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

}  // namespace regraph
