#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cohesion/maxent.hpp"
#include "cohesion/measures.hpp"

namespace cohesion {

enum class ScanMode { grid, random, search };

const char* to_string(ScanMode mode);
ScanMode parse_scan_mode(std::string_view text);

/// A per-point output: Cohesion-k ("c2") or D(p || p^(k)) ("d2").
struct Measure {
  enum class Kind { cohesion, divergence };
  Kind kind = Kind::cohesion;
  int k = 1;

  std::string name() const;
  friend bool operator==(const Measure&, const Measure&) = default;
};

/// Parses a comma list such as "c1,c2,d2"; orders must lie in 1..n-1.
std::vector<Measure> parse_measures(std::string_view text, int n);
std::string format_measures(std::span<const Measure> measures);

/// Grids above this many points need ScanConfig::allow_large_grid.
inline constexpr std::uint64_t kLargeGridPoints = 1'000'000;
/// Hard ceiling on grid size.
inline constexpr std::uint64_t kMaxGridPoints = 100'000'000;
/// Lattice denominator used by local search.
inline constexpr int kSearchUnits = 1024;

struct ScanConfig {
  int n = 4;
  int q = 2;
  ScanMode mode = ScanMode::random;
  int resolution = 6;
  std::uint64_t sample_count = 100'000;
  std::uint64_t seed = 20240101;
  std::vector<Measure> measures{{Measure::Kind::cohesion, 1}, {Measure::Kind::cohesion, 2},
                                {Measure::Kind::cohesion, 3}};
  int restarts = 32;
  bool allow_large_grid = false;
  ProjectionOptions ipf{};

  /// Cells of the outcome space, q^n (at most 2^20).
  std::size_t cells() const;
  /// Throws invalid_argument on an unusable configuration.
  void validate() const;
  /// One-line "key=value" echo written into every output.
  std::string echo() const;
};

/// C(resolution + cells - 1, cells - 1), saturating at UINT64_MAX.
std::uint64_t grid_point_count(std::size_t cells, int resolution);

/// Compositions of `resolution` into `cells` parts, starting at
/// (resolution, 0, ..., 0) with the first coordinate non-increasing.
class GridEnumerator {
 public:
  GridEnumerator(std::size_t cells, int resolution);

  std::uint64_t count() const { return count_; }
  const std::vector<int>& composition() const { return parts_; }
  /// Writes the current point (parts / resolution) into `out`.
  void masses(std::span<double> out) const;
  /// Advances; false once every composition has been visited.
  bool next();

 private:
  int resolution_;
  std::uint64_t count_;
  std::vector<int> parts_;
};

/// Counter-based SplitMix64 stream; (seed, stream) fully determines the output.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);
  std::uint64_t next();
  /// Uniform on (0, 1].
  double uniform_open0();

 private:
  std::uint64_t state_;
};

/// Symmetric Dirichlet(1) draw number `index` of the stream seeded by `seed`.
void random_sample(std::uint64_t seed, std::uint64_t index, std::span<double> out);

struct ViolationCounts {
  std::uint64_t polymatroid_upper = 0;
  std::uint64_t polymatroid_lower = 0;
  std::uint64_t constant = 0;
  std::uint64_t quad = 0;
  std::uint64_t divergence = 0;

  std::uint64_t total() const { return polymatroid_upper + polymatroid_lower + constant + quad + divergence; }
  ViolationCounts& operator+=(const ViolationCounts& o);
};

/// Everything computed for one point, in base-q units.
struct PointEval {
  std::vector<double> cohesion;    // C^(1..n-1)
  std::vector<double> values;      // one per configured measure
  std::vector<double> normalized;  // C^(k)/C(n-1,k-1), one per measure (divergences only)
  ViolationCounts violations;
  bool ipf_converged = true;
};

/// Evaluates a dense point (q^n cells, X0 most significant).
PointEval evaluate_point(const ScanConfig& cfg, std::span<const double> masses);

/// Checks every bound that applies to a Cohesion profile in base-q units.
ViolationCounts cohesion_violations(int n, std::span<const double> cohesion);

struct MeasureBest {
  double value = -1.0;
  std::uint64_t index = 0;
  std::vector<double> masses;
};

struct ScanSummary {
  std::uint64_t points = 0;
  std::vector<MeasureBest> best;  // one per measure
  ViolationCounts violations;
  std::uint64_t ipf_not_converged = 0;
};

/// Receives every point in index order.
using PointSink = std::function<void(std::uint64_t index, std::span<const double> masses, const PointEval&)>;

/// Streams grid or random points (blocked, evaluated by `exec`), calling
/// `sink` in index order. Search mode is handled by local_search_max.
ScanSummary run_scan(const ScanConfig& cfg, const PointSink& sink = {}, Execution exec = Execution::parallel);

struct RestartResult {
  double value = 0.0;
  std::vector<double> masses;
  int moves = 0;
};

struct SearchResult {
  Measure objective;
  double value = -1.0;
  std::vector<double> masses;  // best over restarts
  int best_restart = -1;
  std::vector<RestartResult> restarts;
  std::string config;
};

/// Pair-transfer hill climbing on the 1/1024 lattice: from each Dirichlet
/// start, moves min(delta, mass) between the best-improving pair of cells
/// until no move helps, then halves delta from 1/8 down to 1/1024.
SearchResult local_search_max(const ScanConfig& cfg, const Measure& objective, int restarts,
                              Execution exec = Execution::parallel);

/// The objective value of a single dense point (base-q units).
double measure_value(const ScanConfig& cfg, const Measure& m, std::span<const double> masses);

/// One bound line a*x + b*y <= c drawn over the measure box.
struct OverlayLine {
  std::string kind;  // polymatroid_upper, polymatroid_lower, constant, quad, divergence
  int k = 0;
  std::string x_measure;
  std::string y_measure;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
};

/// Lines for every pair of requested Cohesion orders (Cohesion plane).
std::vector<OverlayLine> cohesion_overlay(int n, std::span<const Measure> measures);
/// The diagonal divergence <= normalized Cohesion for each divergence measure.
std::vector<OverlayLine> divergence_overlay(int n, std::span<const Measure> measures);

/// Writes the scatter CSVs and their overlays into a directory.
///   cohesion_points.csv  index, then one column per Cohesion measure
///   cohesion_overlay.csv bound lines in the Cohesion planes
///   divergence_points.csv  index, then nc<k>,d<k> per divergence measure
///   divergence_overlay.csv the y = x line per divergence measure
/// The divergence files appear only when a divergence measure is requested.
class ScatterWriter {
 public:
  ScatterWriter(const std::filesystem::path& dir, const ScanConfig& cfg);

  void add(std::uint64_t index, const PointEval& point);
  void close();
  std::vector<std::filesystem::path> files() const;

 private:
  void header(std::ofstream& out, const std::string& what, const std::string& columns);

  ScanConfig cfg_;
  std::filesystem::path dir_;
  std::vector<std::size_t> cohesion_cols_;
  std::vector<std::size_t> divergence_cols_;
  std::ofstream cohesion_out_;
  std::ofstream divergence_out_;
};

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace cohesion
