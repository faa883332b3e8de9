#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cohesion/dist.hpp"
#include "cohesion/gf.hpp"
#include "cohesion/measures.hpp"

namespace cohesion {

/// Largest codeword count enumerate_codewords() will materialize.
inline constexpr std::uint64_t kMaxCodewords = std::uint64_t{1} << 20;
/// Largest number of column subsets k_column_independence() will test.
inline constexpr std::uint64_t kMaxColumnSubsets = 1'000'000;

/// A linear [n, k] code over a finite field, given by a k x n generator
/// matrix with linearly independent rows.
class LinearCode {
 public:
  LinearCode(FiniteField field, FieldMatrix generator);

  const FiniteField& field() const { return field_; }
  const FieldMatrix& generator() const { return generator_; }
  int k() const { return generator_.rows; }
  int n() const { return generator_.cols; }
  int q() const { return field_.order(); }

  /// sum_i message[i] * row_i.
  std::vector<Element> encode(std::span<const Element> message) const;
  /// q^k, or 0 when it overflows 64 bits.
  std::uint64_t codeword_count() const;

 private:
  FiniteField field_;
  FieldMatrix generator_;
};

/// Evaluation points (0, 1, alpha, alpha^2, ..., alpha^(q-2)).
std::vector<Element> rs_evaluation_points(const FiniteField& field);

/// Classical Reed-Solomon code with n = q: row i is (beta_1^i, ..., beta_q^i), 0^0 = 1.
LinearCode rs_generator(const FiniteField& field, int k);
/// Reed-Solomon code over arbitrary distinct evaluation points.
LinearCode rs_generator(const FiniteField& field, int k, std::span<const Element> points);

/// All q^k codewords, messages in lexicographic order (first symbol most significant).
struct CodewordList {
  int n = 0;
  std::vector<Element> flat;

  std::size_t size() const { return n == 0 ? 0 : flat.size() / static_cast<std::size_t>(n); }
  std::span<const Element> operator[](std::size_t i) const {
    return {flat.data() + i * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
  }
};

CodewordList enumerate_codewords(const LinearCode& code, Execution exec = Execution::parallel);

struct CodeParams {
  int n = 0;
  int k = 0;
  int q = 0;
  int d = 0;
  bool is_mds = false;
};

/// Exact minimum distance by scanning every nonzero codeword's weight.
CodeParams min_distance(const LinearCode& code, Execution exec = Execution::parallel);

/// True iff every k columns of the generator are linearly independent.
bool k_column_independence(const LinearCode& code);

/// Uniform distribution with mass q^-k on each codeword; symbols are element labels.
JointDistribution code_to_distribution(const LinearCode& code);

}  // namespace cohesion
