#pragma once

// Reference distributions and brute-force oracles shared by the test binaries.
// The oracles work from atom lists with std::map and never call into the
// library's entropy code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "cohesion/dist.hpp"

namespace fixtures {

using cohesion::Atom;
using cohesion::JointDistribution;
using cohesion::Symbol;

inline JointDistribution make(int n, int q, std::vector<std::pair<std::vector<Symbol>, double>> rows) {
  std::vector<Atom> atoms;
  for (auto& [x, p] : rows) atoms.push_back({x, p});
  return JointDistribution::from_atoms(n, q, std::move(atoms));
}

// Two-atom bijective table, three binary variables.
inline JointDistribution bijective3() { return make(3, 2, {{{0, 0, 0}, 0.5}, {{1, 1, 1}, 0.5}}); }

// Parity table, three binary variables.
inline JointDistribution parity3() {
  return make(3, 2, {{{0, 0, 0}, 0.25}, {{0, 1, 1}, 0.25}, {{1, 0, 1}, 0.25}, {{1, 1, 0}, 0.25}});
}

// Redundant-synergy table: X2 = X0 xor X1, X3 = X0.
inline JointDistribution redundant_synergy() {
  return make(4, 2, {{{0, 0, 0, 0}, 0.25}, {{0, 1, 1, 0}, 0.25}, {{1, 0, 1, 1}, 0.25}, {{1, 1, 0, 1}, 0.25}});
}

// The sixteen codewords of the [4,2] Reed-Solomon code over GF(4).
inline std::vector<std::vector<Symbol>> rs_quaternary_rows() {
  return {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}, {1, 1, 1, 1}, {1, 0, 3, 2}, {1, 3, 2, 0}, {1, 2, 0, 3},
          {2, 2, 2, 2}, {2, 3, 0, 1}, {2, 0, 1, 3}, {2, 1, 3, 0}, {3, 3, 3, 3}, {3, 2, 1, 0}, {3, 1, 0, 2}, {3, 0, 2, 1}};
}

inline JointDistribution rs_quaternary() { return JointDistribution::uniform_over(4, 4, rs_quaternary_rows()); }

// Five-atom binary table that locally maximizes D(p || p^(2)) on a grid with spacing 1/12.
inline JointDistribution five_atom_local_max() {
  return make(4, 2, {{{0, 0, 0, 0}, 1.0 / 4}, {{0, 1, 1, 1}, 1.0 / 4}, {{1, 0, 1, 1}, 1.0 / 6}, {{1, 1, 0, 1}, 1.0 / 6},
                     {{1, 1, 1, 0}, 1.0 / 6}});
}

// The bijective and parity tables extended to four variables.
inline JointDistribution repetition_4() { return make(4, 2, {{{0, 0, 0, 0}, 0.5}, {{1, 1, 1, 1}, 0.5}}); }
inline JointDistribution parity_4() {
  std::vector<std::vector<Symbol>> rows;
  for (Symbol a = 0; a < 2; ++a)
    for (Symbol b = 0; b < 2; ++b)
      for (Symbol c = 0; c < 2; ++c) rows.push_back({a, b, c, a ^ b ^ c});
  return JointDistribution::uniform_over(4, 2, rows);
}

// ---- oracles ---------------------------------------------------------------

// Entropy (in `base`) of the variables in `vars`, by brute-force grouping.
inline double oracle_entropy(const JointDistribution& p, const std::vector<int>& vars, double base) {
  std::map<std::vector<Symbol>, double> groups;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::vector<Symbol> key;
    for (int v : vars) key.push_back(p.outcome(i)[static_cast<std::size_t>(v)]);
    groups[key] += p.mass(i);
  }
  double h = 0.0;
  for (const auto& [k, m] : groups) {
    if (m > 0) h -= m * std::log(m);
  }
  return h / std::log(base);
}

inline std::vector<int> bits_to_vars(std::uint32_t mask) {
  std::vector<int> v;
  for (int i = 0; i < 32; ++i) {
    if (mask >> i & 1u) v.push_back(i);
  }
  return v;
}

// C^(k) straight from its defining sum, with oracle entropies.
inline double oracle_cohesion(const JointDistribution& p, int k, double base) {
  const int n = p.n();
  double sum = 0.0;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    if (std::popcount(s) == k) sum += oracle_entropy(p, bits_to_vars(s), base);
  }
  double c = 1.0;  // C(n-1, k-1)
  for (int i = 1; i <= k - 1; ++i) c = c * (n - k + i) / i;
  return sum - c * oracle_entropy(p, bits_to_vars((1u << n) - 1), base);
}

// Random dense distribution with a random number of zeroed cells.
inline JointDistribution random_distribution(int n, int q, std::mt19937_64& rng, bool sparse = true) {
  int cells = 1;
  for (int i = 0; i < n; ++i) cells *= q;
  std::exponential_distribution<double> ex(1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double keep = sparse ? 0.25 + 0.75 * u(rng) : 1.0;
  std::vector<double> w(static_cast<std::size_t>(cells));
  double total = 0.0;
  for (auto& x : w) {
    x = u(rng) < keep ? ex(rng) : 0.0;
    total += x;
  }
  if (total == 0.0) {
    w[0] = 1.0;
    total = 1.0;
  }
  for (auto& x : w) x /= total;
  return JointDistribution::from_dense(n, q, w, JointDistribution::Normalize::yes);
}

}  // namespace fixtures
