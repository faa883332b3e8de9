#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cohesion/subset.hpp"

namespace cohesion {

using Symbol = std::uint32_t;

inline constexpr double kMassTolerance = 1e-12;

/// Largest number of index bits for which a dense q^n view is offered.
inline constexpr int kDenseIndexBits = 24;

/// An entropy (or other information quantity) tagged with its logarithm base.
struct EntropyValue {
  double value = 0.0;
  double base = 2.0;

  /// Same quantity expressed in another base.
  EntropyValue in_base(double new_base) const;
};

/// One outcome tuple with its probability mass.
struct Atom {
  std::vector<Symbol> outcome;
  double mass = 0.0;
};

/// Probability table over n discrete variables sharing the alphabet {0..q-1}.
///
/// Storage is sparse: only atoms with positive mass are kept, sorted
/// lexicographically by outcome. Instances are immutable once built.
class JointDistribution {
 public:
  /// `no` enforces the 1e-12 sum tolerance, `yes` rescales to 1, and
  /// `assume_valid` skips the sum check for tables derived from a valid one.
  enum class Normalize { no, yes, assume_valid };

  /// Validates shape, symbol range, non-negativity and total mass (within
  /// kMassTolerance unless `normalize` is yes). Duplicate outcomes are an error.
  static JointDistribution from_atoms(int n, int q, std::vector<Atom> atoms,
                                      Normalize normalize = Normalize::no);

  /// Builds from a dense table indexed in mixed radix q, X0 most significant.
  static JointDistribution from_dense(int n, int q, std::span<const double> masses,
                                      Normalize normalize = Normalize::no);

  /// Equal mass on every listed outcome.
  static JointDistribution uniform_over(int n, int q, const std::vector<std::vector<Symbol>>& outcomes);

  /// Uniform distribution over all q^n outcomes (requires a dense-indexable shape).
  static JointDistribution uniform(int n, int q);

  int n() const { return n_; }
  int q() const { return q_; }
  std::size_t size() const { return masses_.size(); }

  std::span<const Symbol> outcome(std::size_t i) const {
    return {symbols_.data() + i * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
  }
  double mass(std::size_t i) const { return masses_[i]; }
  std::span<const double> masses() const { return masses_; }
  std::span<const Symbol> flat_symbols() const { return symbols_; }

  /// Mass of an outcome, 0 when absent.
  double mass_of(std::span<const Symbol> outcome) const;

  /// True when q^n fits in kDenseIndexBits bits of index.
  bool dense_indexable() const;
  /// Dense table (q^n entries, X0 most significant digit).
  std::vector<double> dense() const;

  /// Relabels variables: variable i of the result is variable perm[i] of this.
  JointDistribution permuted(std::span<const int> perm) const;

  std::vector<Atom> atoms() const;

  friend bool operator==(const JointDistribution&, const JointDistribution&) = default;

 private:
  JointDistribution(int n, int q) : n_(n), q_(q) {}

  int n_ = 0;
  int q_ = 0;
  std::vector<Symbol> symbols_;
  std::vector<double> masses_;
};

/// Index width ceil(n * log2 q) as used by the dense-view gate.
int dense_index_bits(int n, int q);
/// q^n, throwing size_limit if it would exceed 2^bits_limit.
std::size_t outcome_count(int n, int q, int bits_limit = kDenseIndexBits);

/// Distribution of the variables selected by `subset`, in increasing index order.
JointDistribution marginalize(const JointDistribution& p, SubsetMask subset);

/// H(p) = sum p log_base(1/p); zero atoms contribute nothing.
EntropyValue entropy(const JointDistribution& p, double base);
/// Same as entropy() with base q.
EntropyValue entropy(const JointDistribution& p);

/// H(X_A); the empty subset has entropy 0.
EntropyValue subset_entropy(const JointDistribution& p, SubsetMask subset, double base);

/// D(p || r) in the given base; +infinity when p is not absolutely continuous w.r.t. r.
double kl_divergence(const JointDistribution& p, const JointDistribution& r, double base);

/// Product of the single-variable marginals of p (dense-indexable shapes only).
JointDistribution product_of_marginals(const JointDistribution& p);

/// Point mass on a single outcome.
JointDistribution point_mass(int n, int q, std::vector<Symbol> outcome);

}  // namespace cohesion
