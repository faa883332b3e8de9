#pragma once

#include <vector>

#include "cohesion/dist.hpp"
#include "cohesion/measures.hpp"

namespace cohesion {

/// Outcome spaces up to 2^20 cells are projected.
inline constexpr int kMaxProjectionBits = 20;

struct ProjectionOptions {
  double tol = 1e-10;      // L-infinity on k-th order marginals
  int max_sweeps = 10'000;
  /// Record D(p || current) after every sweep.
  bool track_divergence = false;
};

/// Maximum-entropy distribution sharing all k-th order marginals with p.
struct ProjectionResult {
  int k = 0;
  std::vector<double> dense;     // q^n cells, X0 most significant
  double divergence_nats = 0.0;  // D(p || projection)
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  std::vector<double> divergence_trace;  // nats, one entry per sweep

  double divergence(double base) const;
  JointDistribution projection(int n, int q) const;
};

/// Iterative proportional fitting from the uniform distribution, cycling over
/// every k-subset marginal constraint until the residual drops below tol.
ProjectionResult maxent_projection(const JointDistribution& p, int k, const ProjectionOptions& opts = {});

/// Same computation on a dense table; used by scans to skip the sparse round trip.
ProjectionResult maxent_projection_dense(int n, int q, std::span<const double> p, int k,
                                         const ProjectionOptions& opts = {});

/// D(p || p^(k)) <= C^(k) / C(n-1, k-1), both sides in base-q units.
struct DivergenceBoundReport {
  int k = 0;
  double lhs = 0.0;  // divergence
  double rhs = 0.0;  // normalized cohesion
  double slack = 0.0;
  bool satisfied = true;
  ProjectionResult projection;
};

/// Violations beyond opts.tol + 1e-6 are flagged.
DivergenceBoundReport check_eq4_bound(const JointDistribution& p, int k, const ProjectionOptions& opts = {});

/// One point of the normalized-cohesion vs divergence scatter, base-q units.
struct ScatterRow {
  int k = 0;
  double normalized_cohesion = 0.0;
  double divergence = 0.0;
};

ScatterRow divergence_scan_record(const JointDistribution& p, int k, const ProjectionOptions& opts = {});

inline constexpr double kDivergenceBoundSlack = 1e-6;

}  // namespace cohesion
