#include "cohesion/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "cohesion/error.hpp"

namespace cohesion {

namespace {

constexpr int kMaxTableVariables = 20;

void check_table_size(int n) {
  if (n > kMaxTableVariables) {
    throw Error(ErrorKind::size_limit, "subset entropy tables need n <= " + std::to_string(kMaxTableVariables));
  }
}

// q^s if it fits under `cap`, otherwise 0.
std::size_t capped_power(int q, int s, std::size_t cap) {
  std::size_t c = 1;
  for (int i = 0; i < s; ++i) {
    if (c > cap / static_cast<std::size_t>(q)) return 0;
    c *= static_cast<std::size_t>(q);
  }
  return c;
}

// Neumaier compensated addition.
void compensated_add(double& sum, double& carry, double x) {
  const double t = sum + x;
  carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
  sum = t;
}

struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) { compensated_add(sum, carry, x); }
  double value() const { return sum + carry; }
};

double bucket_entropy(std::span<const double> buckets) {
  CompensatedSum nats;
  for (double m : buckets) {
    if (m > 0.0) nats.add(-m * std::log(m));
  }
  return nats.value();
}

bool exchange_ok(std::span<const std::uint8_t> independent, std::uint32_t a, std::uint32_t b) {
  const std::uint32_t diff = b & ~a;
  for (std::uint32_t rest = diff; rest != 0; rest &= rest - 1) {
    const std::uint32_t e = rest & (~rest + 1);
    if (independent[a | e]) return true;
  }
  return false;
}

}  // namespace

double marginal_entropy_nats(const JointDistribution& p, SubsetMask subset, MarginalWorkspace& ws) {
  if (subset.empty()) return 0.0;
  const auto vars = subset.indices();
  const std::size_t n = static_cast<std::size_t>(p.n());
  const auto symbols = p.flat_symbols();
  const auto masses = p.masses();

  if (subset == SubsetMask::full(p.n())) return bucket_entropy(masses);

  const std::size_t cells = capped_power(p.q(), static_cast<int>(vars.size()), kDenseMarginalCells);
  if (cells != 0) {
    ws.buckets.assign(cells, 0.0);
    ws.compensation.assign(cells, 0.0);
    for (std::size_t i = 0; i < masses.size(); ++i) {
      const Symbol* o = symbols.data() + i * n;
      std::size_t idx = 0;
      for (int v : vars) idx = idx * static_cast<std::size_t>(p.q()) + o[v];
      compensated_add(ws.buckets[idx], ws.compensation[idx], masses[i]);
    }
    for (std::size_t c = 0; c < cells; ++c) ws.buckets[c] += ws.compensation[c];
    return bucket_entropy(ws.buckets);
  }

  ws.order.resize(masses.size());
  std::iota(ws.order.begin(), ws.order.end(), 0u);
  auto less = [&](std::uint32_t a, std::uint32_t b) {
    const Symbol* oa = symbols.data() + a * n;
    const Symbol* ob = symbols.data() + b * n;
    for (int v : vars) {
      if (oa[v] != ob[v]) return oa[v] < ob[v];
    }
    return false;
  };
  std::stable_sort(ws.order.begin(), ws.order.end(), less);
  CompensatedSum nats;
  std::size_t i = 0;
  while (i < ws.order.size()) {
    CompensatedSum group;
    std::size_t j = i;
    while (j < ws.order.size() && !less(ws.order[i], ws.order[j])) group.add(masses[ws.order[j++]]);
    const double g = group.value();
    if (g > 0.0) nats.add(-g * std::log(g));
    i = j;
  }
  return nats.value();
}

std::vector<double> subset_entropy_table_serial(const JointDistribution& p, double base) {
  check_table_size(p.n());
  const std::size_t count = std::size_t{1} << p.n();
  const double scale = 1.0 / std::log(base);
  std::vector<double> table(count, 0.0);
  MarginalWorkspace ws;
  for (std::size_t m = 1; m < count; ++m) {
    table[m] = std::max(0.0, marginal_entropy_nats(p, SubsetMask(static_cast<std::uint32_t>(m)), ws) * scale);
  }
  return table;
}

std::vector<double> subset_entropy_table_parallel(const JointDistribution& p, double base) {
  check_table_size(p.n());
  const std::int64_t count = std::int64_t{1} << p.n();
  const double scale = 1.0 / std::log(base);
  std::vector<double> table(static_cast<std::size_t>(count), 0.0);
#pragma omp parallel
  {
    MarginalWorkspace ws;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t m = 1; m < count; ++m) {
      table[static_cast<std::size_t>(m)] =
          std::max(0.0, marginal_entropy_nats(p, SubsetMask(static_cast<std::uint32_t>(m)), ws) * scale);
    }
  }
  return table;
}

void subset_entropies_dense(int n, int q, std::span<const double> masses, std::span<double> out,
                            std::vector<double>& scratch) {
  const std::size_t masks = std::size_t{1} << n;
  const std::size_t full = masks - 1;
  out[0] = 0.0;
  out[full] = bucket_entropy(masses);
  const std::size_t qs = static_cast<std::size_t>(q);
  for (std::size_t m = 1; m < full; ++m) {
    std::size_t cells = 1;
    for (int v = 0; v < n; ++v) {
      if ((m >> v) & 1u) cells *= qs;
    }
    scratch.assign(cells, 0.0);
    // Walk outcomes in index order, carrying both the full digit vector and
    // the projected index implicitly through place values.
    std::size_t place[32];
    {
      std::size_t pv = 1;
      for (int v = n - 1; v >= 0; --v) {
        if ((m >> v) & 1u) {
          place[v] = pv;
          pv *= qs;
        } else {
          place[v] = 0;
        }
      }
    }
    int digits[32] = {};
    std::size_t proj = 0;
    for (std::size_t idx = 0; idx < masses.size(); ++idx) {
      scratch[proj] += masses[idx];
      // increment mixed-radix counter (last variable least significant)
      for (int v = n - 1; v >= 0; --v) {
        if (++digits[v] < q) {
          proj += place[v];
          break;
        }
        digits[v] = 0;
        proj -= place[v] * (qs - 1);
      }
    }
    out[m] = bucket_entropy(scratch);
  }
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> exchange_violation_serial(
    int n, std::span<const std::uint8_t> independent) {
  const std::uint32_t count = std::uint32_t{1} << n;
  for (std::uint32_t a = 0; a < count; ++a) {
    if (!independent[a]) continue;
    const int sa = std::popcount(a);
    for (std::uint32_t b = 0; b < count; ++b) {
      if (!independent[b] || std::popcount(b) <= sa) continue;
      if (!exchange_ok(independent, a, b)) return std::pair{a, b};
    }
  }
  return std::nullopt;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> exchange_violation_parallel(
    int n, std::span<const std::uint8_t> independent) {
  const std::int64_t count = std::int64_t{1} << n;
  std::int64_t first_a = count;
  std::vector<std::uint32_t> witness(static_cast<std::size_t>(count), 0);
#pragma omp parallel for schedule(dynamic, 8) reduction(min : first_a)
  for (std::int64_t ai = 0; ai < count; ++ai) {
    const auto a = static_cast<std::uint32_t>(ai);
    if (!independent[a]) continue;
    const int sa = std::popcount(a);
    for (std::uint32_t b = 0; b < static_cast<std::uint32_t>(count); ++b) {
      if (!independent[b] || std::popcount(b) <= sa) continue;
      if (!exchange_ok(independent, a, b)) {
        witness[a] = b;
        first_a = std::min(first_a, ai);
        break;
      }
    }
  }
  if (first_a == count) return std::nullopt;
  return std::pair{static_cast<std::uint32_t>(first_a), witness[static_cast<std::size_t>(first_a)]};
}

void apply_thread_cap_from_env() {
  const char* env = std::getenv("COHESION_THREADS");
  if (env == nullptr) return;
  char* end = nullptr;
  const long cap = std::strtol(env, &end, 10);
  if (end == env || cap < 1) return;
  omp_set_num_threads(static_cast<int>(std::min<long>(cap, omp_get_max_threads())));
}

int worker_count() { return omp_get_max_threads(); }

}  // namespace cohesion
