#include "cohesion/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cohesion/error.hpp"

namespace cohesion {

namespace {

// Projected index of every outcome for one variable subset.
void project_indices(int n, int q, SubsetMask subset, std::vector<std::uint32_t>& out) {
  std::size_t place[32];
  std::size_t pv = 1;
  for (int v = n - 1; v >= 0; --v) {
    if (subset.contains(v)) {
      place[v] = pv;
      pv *= static_cast<std::size_t>(q);
    } else {
      place[v] = 0;
    }
  }
  int digits[32] = {};
  std::size_t proj = 0;
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    out[idx] = static_cast<std::uint32_t>(proj);
    for (int v = n - 1; v >= 0; --v) {
      if (++digits[v] < q) {
        proj += place[v];
        break;
      }
      digits[v] = 0;
      proj -= place[v] * static_cast<std::size_t>(q - 1);
    }
  }
}

double kl_nats(std::span<const double> p, std::span<const double> r) {
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) d += p[i] * std::log(p[i] / r[i]);
  }
  return std::max(0.0, d);
}

}  // namespace

double ProjectionResult::divergence(double base) const { return divergence_nats / std::log(base); }

JointDistribution ProjectionResult::projection(int n, int q) const {
  return JointDistribution::from_dense(n, q, dense, JointDistribution::Normalize::assume_valid);
}

ProjectionResult maxent_projection_dense(int n, int q, std::span<const double> p, int k, const ProjectionOptions& opts) {
  if (k < 1 || k > n - 1) {
    std::ostringstream os;
    os << "projection order " << k << " outside 1.." << (n - 1);
    throw Error(ErrorKind::invalid_argument, os.str());
  }
  const std::size_t cells = outcome_count(n, q, kMaxProjectionBits);
  if (p.size() != cells) throw Error(ErrorKind::shape_mismatch, "dense table size differs from q^n");

  const auto subsets = masks_of_size(n, k);
  std::size_t marginal_cells = 1;
  for (int i = 0; i < k; ++i) marginal_cells *= static_cast<std::size_t>(q);

  // Targets and projection maps for every constraint.
  std::vector<std::vector<std::uint32_t>> maps(subsets.size(), std::vector<std::uint32_t>(cells));
  std::vector<std::vector<double>> targets(subsets.size(), std::vector<double>(marginal_cells, 0.0));
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    project_indices(n, q, subsets[s], maps[s]);
    for (std::size_t i = 0; i < cells; ++i) targets[s][maps[s][i]] += p[i];
  }

  ProjectionResult res;
  res.k = k;
  res.dense.assign(cells, 1.0 / static_cast<double>(cells));
  std::vector<double> current(marginal_cells);

  auto residual = [&] {
    double worst = 0.0;
    for (std::size_t s = 0; s < subsets.size(); ++s) {
      std::fill(current.begin(), current.end(), 0.0);
      for (std::size_t i = 0; i < cells; ++i) current[maps[s][i]] += res.dense[i];
      for (std::size_t j = 0; j < marginal_cells; ++j) worst = std::max(worst, std::abs(current[j] - targets[s][j]));
    }
    return worst;
  };

  res.residual = residual();
  while (res.residual >= opts.tol && res.iterations < opts.max_sweeps) {
    for (std::size_t s = 0; s < subsets.size(); ++s) {
      std::fill(current.begin(), current.end(), 0.0);
      for (std::size_t i = 0; i < cells; ++i) current[maps[s][i]] += res.dense[i];
      for (std::size_t i = 0; i < cells; ++i) {
        const double c = current[maps[s][i]];
        res.dense[i] = c > 0.0 ? res.dense[i] * (targets[s][maps[s][i]] / c) : 0.0;
      }
    }
    ++res.iterations;
    if (opts.track_divergence) res.divergence_trace.push_back(kl_nats(p, res.dense));
    res.residual = residual();
  }
  res.converged = res.residual < opts.tol;
  res.divergence_nats = kl_nats(p, res.dense);
  return res;
}

ProjectionResult maxent_projection(const JointDistribution& p, int k, const ProjectionOptions& opts) {
  outcome_count(p.n(), p.q(), kMaxProjectionBits);
  const auto dense = p.dense();
  return maxent_projection_dense(p.n(), p.q(), dense, k, opts);
}

DivergenceBoundReport check_eq4_bound(const JointDistribution& p, int k, const ProjectionOptions& opts) {
  DivergenceBoundReport rep;
  rep.k = k;
  rep.projection = maxent_projection(p, k, opts);
  const double base = static_cast<double>(p.q());
  rep.lhs = rep.projection.divergence(base);
  rep.rhs = cohesion_k(p, k, base) / static_cast<double>(binomial(p.n() - 1, k - 1));
  rep.slack = rep.rhs - rep.lhs;
  rep.satisfied = rep.slack >= -(opts.tol + kDivergenceBoundSlack);
  return rep;
}

ScatterRow divergence_scan_record(const JointDistribution& p, int k, const ProjectionOptions& opts) {
  const auto rep = check_eq4_bound(p, k, opts);
  return {k, rep.rhs, rep.lhs};
}

}  // namespace cohesion
