// Serial reference vs OpenMP kernel timings. Each pair is also checked for
// identical results before its timing is printed.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <string>

#include "cohesion/codes.hpp"
#include "cohesion/explore.hpp"
#include "cohesion/kernels.hpp"
#include "cohesion/matroid.hpp"

using namespace cohesion;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-34s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  %s\n", name, serial, parallel,
              serial / parallel, same ? "identical" : "MISMATCH");
}

JointDistribution random_dense(int n, int q, std::uint64_t seed) {
  std::vector<double> m(outcome_count(n, q));
  random_sample(seed, 0, m);
  return JointDistribution::from_dense(n, q, m, JointDistribution::Normalize::yes);
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap_from_env();
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("workers: %d, repetitions: %d\n", worker_count(), reps);

  {
    const auto p = random_dense(12, 3, 1);
    std::vector<double> a, b;
    const double s = seconds([&] { a = subset_entropy_table_serial(p, 2.0); }, reps);
    const double t = seconds([&] { b = subset_entropy_table_parallel(p, 2.0); }, reps);
    report("subset entropy table (n=12, q=3)", s, t, a == b);
  }
  {
    const auto bitmap = uniform_matroid(7, 14).bitmap();
    std::optional<std::pair<std::uint32_t, std::uint32_t>> a, b;
    const double s = seconds([&] { a = exchange_violation_serial(14, bitmap); }, reps);
    const double t = seconds([&] { b = exchange_violation_parallel(14, bitmap); }, reps);
    report("exchange axiom (U_{7,14})", s, t, a == b);
  }
  {
    const auto code = rs_generator(FiniteField::make(2, 4), 5);
    CodewordList a, b;
    const double s = seconds([&] { a = enumerate_codewords(code, Execution::serial); }, reps);
    const double t = seconds([&] { b = enumerate_codewords(code, Execution::parallel); }, reps);
    report("codeword enumeration (GF(16), k=5)", s, t, a.flat == b.flat);
  }
  {
    const auto code = rs_generator(FiniteField::make(2, 4), 5);
    CodeParams a, b;
    const double s = seconds([&] { a = min_distance(code, Execution::serial); }, reps);
    const double t = seconds([&] { b = min_distance(code, Execution::parallel); }, reps);
    report("minimum distance (GF(16), k=5)", s, t, a.d == b.d);
  }
  {
    ScanConfig cfg;
    cfg.measures = parse_measures("c1,c2,c3,d2", 4);
    cfg.sample_count = 20'000;
    ScanSummary a, b;
    const double s = seconds([&] { a = run_scan(cfg, {}, Execution::serial); }, 1);
    const double t = seconds([&] { b = run_scan(cfg, {}, Execution::parallel); }, 1);
    report("random scan (20000 points, d2)", s, t, a.best[3].value == b.best[3].value && a.best[3].index == b.best[3].index);
  }
  {
    ScanConfig cfg;
    cfg.measures = parse_measures("c2", 4);
    SearchResult a, b;
    const double s = seconds([&] { a = local_search_max(cfg, cfg.measures[0], 16, Execution::serial); }, 1);
    const double t = seconds([&] { b = local_search_max(cfg, cfg.measures[0], 16, Execution::parallel); }, 1);
    report("local search (16 restarts, c2)", s, t, a.masses == b.masses);
  }
  return 0;
}
