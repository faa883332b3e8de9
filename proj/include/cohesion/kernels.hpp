#pragma once

// Data-parallel inner loops. Every OpenMP kernel has a serial reference with
// the same signature; the two must agree bit-for-bit, and the tests and the
// benchmark compare them directly.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cohesion/dist.hpp"
#include "cohesion/subset.hpp"

namespace cohesion {

/// Scratch buffers reused across marginal computations (one per worker).
struct MarginalWorkspace {
  std::vector<double> buckets;
  std::vector<double> compensation;
  std::vector<std::uint32_t> order;
};

/// Marginal tables up to this many cells are accumulated densely.
inline constexpr std::size_t kDenseMarginalCells = std::size_t{1} << 22;

/// H(X_S) in nats. Groups are summed in lexicographic order of the projected
/// outcome, and atoms within a group in storage order, whichever path is used.
double marginal_entropy_nats(const JointDistribution& p, SubsetMask subset, MarginalWorkspace& ws);

/// H(X_S) in the given base for every mask S in 0..2^n-1 (n <= 20).
std::vector<double> subset_entropy_table_serial(const JointDistribution& p, double base);
std::vector<double> subset_entropy_table_parallel(const JointDistribution& p, double base);

/// Dense-table variant used by scans: `masses` has q^n cells (X0 most
/// significant), `out` receives 2^n entropies in nats. Serial by design; scans
/// parallelize across points instead.
void subset_entropies_dense(int n, int q, std::span<const double> masses, std::span<double> out,
                            std::vector<double>& scratch);

/// Exchange axiom over an explicit independence family (indexed by mask).
/// Returns the first violating pair (I1, I2) in mask order, if any.
std::optional<std::pair<std::uint32_t, std::uint32_t>> exchange_violation_serial(
    int n, std::span<const std::uint8_t> independent);
std::optional<std::pair<std::uint32_t, std::uint32_t>> exchange_violation_parallel(
    int n, std::span<const std::uint8_t> independent);

/// Applies the COHESION_THREADS cap (if set) to the OpenMP runtime.
void apply_thread_cap_from_env();
/// Number of workers OpenMP will use for the next parallel region.
int worker_count();

}  // namespace cohesion
