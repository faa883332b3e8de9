#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cohesion {

/// Canonical integer label of a field element: base-p positional encoding of
/// its polynomial coefficients, constant term least significant. For GF(4)
/// this yields 0, 1, z -> 2, z+1 -> 3.
using Element = std::uint32_t;

/// Finite field GF(p^m) with precomputed log/antilog tables.
///
/// Immutable after construction and safe to share between threads.
class FiniteField {
 public:
  static constexpr int kMaxOrder = 1 << 16;

  /// Builds GF(p^m). Without an explicit modulus, the lexicographically
  /// smallest monic irreducible of degree m is used (smallest label, constant
  /// term least significant); m = 1 uses the modulus z. An explicit modulus is
  /// given as m+1 coefficients, constant term first, and must be monic and
  /// irreducible.
  static FiniteField make(int p, int m, std::optional<std::vector<int>> modulus = std::nullopt);

  int characteristic() const { return p_; }
  int degree() const { return m_; }
  int order() const { return q_; }
  /// m+1 coefficients, constant term first.
  const std::vector<int>& modulus() const { return modulus_; }
  Element primitive() const { return primitive_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  bool contains(Element a) const { return a < static_cast<Element>(q_); }

  Element add(Element a, Element b) const;
  Element neg(Element a) const;
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  Element mul(Element a, Element b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[static_cast<std::size_t>(log_[a] + log_[b])];
  }
  /// Throws invalid_argument("zero has no inverse") for a = 0.
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t e) const;
  /// alpha^i for the stored primitive element.
  Element alpha_pow(std::uint64_t i) const { return exp_[static_cast<std::size_t>(i % (q_ - 1))]; }

  std::vector<int> coeffs(Element a) const;
  Element from_coeffs(std::span<const int> coeffs) const;
  /// Polynomial form such as "z+1" or "2z^2+1".
  std::string poly_string(Element a) const;

  std::vector<std::vector<Element>> addition_table() const;
  std::vector<std::vector<Element>> multiplication_table() const;

  friend bool operator==(const FiniteField& a, const FiniteField& b) {
    return a.p_ == b.p_ && a.m_ == b.m_ && a.modulus_ == b.modulus_;
  }

 private:
  FiniteField() = default;

  int p_ = 0;
  int m_ = 0;
  int q_ = 0;
  std::vector<int> modulus_;
  Element primitive_ = 1;
  std::vector<Element> exp_;       // 2(q-1) entries
  std::vector<std::uint32_t> log_;  // q entries, log_[0] unused
  std::vector<Element> add_table_;  // q*q entries for small fields
};

bool is_prime(int v);
/// True when v = p^m for a prime p and m >= 1; fills p and m on success.
bool prime_power(int v, int* p = nullptr, int* m = nullptr);

/// Irreducibility over GF(p) by trial division against every monic
/// polynomial of degree 1..deg/2. Coefficients constant term first.
bool is_irreducible(std::span<const int> poly, int p);

/// Product polynomial reduced modulo `modulus`, coefficients over GF(p).
/// This is the table-free reference multiplication.
std::vector<int> poly_mulmod(std::span<const int> a, std::span<const int> b, std::span<const int> modulus, int p);

/// Modulus in polynomial form, e.g. "z^2+z+1".
std::string modulus_string(const FiniteField& field);

/// Addition and multiplication tables as aligned text (q <= 64).
std::string emit_tables(const FiniteField& field);

/// Dense matrix over a finite field, row-major.
struct FieldMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Element> data;

  FieldMatrix() = default;
  FieldMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0) {}
  static FieldMatrix from_rows(const std::vector<std::vector<Element>>& rows);

  Element& at(int r, int c) { return data[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
  Element at(int r, int c) const { return data[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }

  std::vector<Element> row(int r) const;
  std::vector<Element> column(int c) const;
  /// Submatrix keeping only the listed columns.
  FieldMatrix select_columns(std::span<const int> cols) const;

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;
};

/// Rank by exact Gaussian elimination over the field.
int rank(const FiniteField& field, FieldMatrix m);

}  // namespace cohesion
