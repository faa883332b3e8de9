#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cohesion/dist.hpp"
#include "cohesion/subset.hpp"

namespace cohesion {

/// Additive tolerance for bound checks, in base-q units.
inline constexpr double kBoundTolerance = 1e-9;

enum class Execution { serial, parallel };

/// H(X_S) for every subset S, memoized once per distribution.
class SubsetEntropyTable {
 public:
  SubsetEntropyTable(int n, double base, std::vector<double> values);

  static SubsetEntropyTable compute(const JointDistribution& p, double base,
                                    Execution exec = Execution::parallel);

  int n() const { return n_; }
  double base() const { return base_; }
  double operator[](SubsetMask s) const { return values_[s.bits]; }
  double joint() const { return values_.back(); }
  std::span<const double> values() const { return values_; }

 private:
  int n_;
  double base_;
  std::vector<double> values_;
};

/// C^(k) = sum_{|A|=k} H(X_A) - C(n-1,k-1) H(X), for 1 <= k <= n-1.
double cohesion_k(const SubsetEntropyTable& table, int k);
double cohesion_k(const JointDistribution& p, int k, double base);

/// Ceiling k * C(n-1, k) on C^(k), in base-q units.
double constant_bound(int n, int k);

struct CohesionProfile {
  int n = 0;
  int q = 0;
  double base = 2.0;
  std::vector<double> values;           // values[k-1] = C^(k)
  std::vector<double> constant_bounds;  // expressed in `base` units
  std::vector<double> slack;            // constant_bounds - values

  double value(int k) const { return values.at(static_cast<std::size_t>(k - 1)); }
  /// Factor converting base-`base` quantities into base-q units.
  double to_base_q() const;
};

CohesionProfile cohesion_profile(const SubsetEntropyTable& table, int q);
CohesionProfile cohesion_profile(const JointDistribution& p, double base);

/// One linear inequality lhs <= rhs, with signed slack rhs - lhs (base-q units).
struct BoundCheck {
  std::string name;
  int k = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool satisfied = true;
};

struct PolymatroidReport {
  /// k * C^(k+1) <= (n-k) * C^(k), k = 1..n-2.
  std::vector<BoundCheck> upper;
  /// k * C^(n-k-1) <= (n-k) * C^(n-k), k = 1..n-2.
  std::vector<BoundCheck> lower;
  /// C^(k) <= k * C(n-1,k), k = 1..n-1.
  std::vector<BoundCheck> constant;
  bool all_satisfied = true;
};

PolymatroidReport check_polymatroid_bounds(const CohesionProfile& profile);

/// The three four-variable inequalities C1+C3 <= 4, C2+3C1 <= 12, C2+3C3 <= 12.
struct QuadReport {
  std::vector<BoundCheck> checks;
  bool all_satisfied = true;
};

QuadReport check_quad_inequalities(const CohesionProfile& profile);
QuadReport check_quad_inequalities(const JointDistribution& p);

}  // namespace cohesion
