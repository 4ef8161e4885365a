#pragma once

#include <stdexcept>
#include <string>

#include "regraph/finite_distribution.hpp"
#include "regraph/multigraph.hpp"
#include "regraph/pairing.hpp"
#include "regraph/strassen.hpp"

namespace regraph {

/// Malformed input; carries the 1-based line number of the offence.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Multigraph: header "n m", then m lines "u v mult" in sorted pair order.
std::string serialize(const Multigraph& g);
Multigraph parse_multigraph(const std::string& text);

// Pairing: header "n d", then dn/2 lines "u su v sv", each pair listed with
// its lower flat point first, lines sorted by that point.
std::string serialize(const Pairing& p);
Pairing parse_pairing(const std::string& text);

// FiniteDistribution: one line per outcome, "key numerator denominator".
std::string serialize(const FiniteDistribution& d);
FiniteDistribution parse_finite_distribution(const std::string& text);

// JointCoupling: one line per cell, "x-key y-key weight" with weight as an
// exact rational "p/q".
std::string serialize(const JointCoupling& c);
JointCoupling parse_joint_coupling(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace regraph
