#pragma once

#include <string>
#include <vector>

#include "redcalc/probkit.hpp"

namespace fixture {

inline std::vector<std::vector<std::string>> binary_alphabets(std::size_t n) {
  return std::vector<std::vector<std::string>>(n, {"0", "1"});
}

inline std::vector<std::string> names(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("X" + std::to_string(i + 1));
  return v;
}

inline redcalc::JointDistribution binary(std::size_t n, std::vector<double> probs) {
  return redcalc::JointDistribution(names(n), binary_alphabets(n), std::move(probs));
}

// Uniform on {000, 011, 101, 110}.
inline redcalc::JointDistribution xor_triple() {
  return binary(3, {0.25, 0, 0, 0.25, 0, 0.25, 0.25, 0});
}

// X1 = X2 = X3, uniform.
inline redcalc::JointDistribution copy_triple() { return binary(3, {0.5, 0, 0, 0, 0, 0, 0, 0.5}); }

inline redcalc::JointDistribution copy_pair() { return binary(2, {0.5, 0, 0, 0.5}); }

inline redcalc::JointDistribution independent_pair() { return binary(2, {0.25, 0.25, 0.25, 0.25}); }

inline redcalc::JointDistribution independent_triple() {
  return binary(3, std::vector<double>(8, 0.125));
}

inline redcalc::JointDistribution point_mass_pair() { return binary(2, {1, 0, 0, 0}); }

}  // namespace fixture
