#include "cohesion/maximizer.hpp"

#include <cmath>

#include "cohesion/error.hpp"
#include "cohesion/measures.hpp"

namespace cohesion {

namespace {

MaximizerResult certify(const LinearCode& code, int k, const char* construction) {
  const int n = code.n();
  MaximizerResult res{code_to_distribution(code), code.generator(), {}};
  auto& cert = res.certificate;
  cert.n = n;
  cert.k = k;
  cert.q = code.q();
  cert.construction = construction;
  cert.value = cohesion_k(res.distribution, k, static_cast<double>(cert.q));
  cert.value_bits = cohesion_k(res.distribution, k, 2.0);
  cert.bound = constant_bound(n, k);
  cert.meets_bound = std::abs(cert.value - cert.bound) <= kBoundTolerance;
  const auto report = entropy_rank_report(res.distribution);
  if (report.integer_valued) {
    cert.uniform_matroid = is_isomorphic_uniform(matroid_from_ranks(report), k);
    cert.matroid_note = cert.uniform_matroid ? "entropy matroid is U_{k,n}" : "entropy matroid differs from U_{k,n}";
  } else {
    cert.matroid_note = "subset entropies are not integer ranks";
  }
  return res;
}

}  // namespace

MaximizerResult run_maximizer(int n, int k, const MaximizerOptions& opts) {
  if (n < 2) throw Error(ErrorKind::invalid_argument, "maximizer needs n >= 2");
  if (k < 1 || k > n - 1) throw Error(ErrorKind::invalid_argument, "maximizer needs 1 <= k <= n-1");
  if (n > 20) throw Error(ErrorKind::size_limit, "maximizer certificates are limited to n <= 20");

  int p = 0, m = 0;
  if (prime_power(n, &p, &m)) {
    const auto field = FiniteField::make(p, m);
    return certify(rs_generator(field, k), k, "reed-solomon");
  }

  int tried = 0;
  for (int q = n + 1; q <= opts.max_q; ++q) {
    if (!prime_power(q, &p, &m)) continue;
    tried = q;
    const auto field = FiniteField::make(p, m);
    const auto rep = uniform_representable_over(k, n, field, opts.budget);
    if (rep.outcome == Representability::representable) {
      return certify(LinearCode(field, *rep.matrix), k, "representation-search");
    }
  }
  throw Error(ErrorKind::size_limit, "no representation of U_{" + std::to_string(k) + "," + std::to_string(n) +
                                         "} found within budget; largest q tried " + std::to_string(tried));
}

}  // namespace cohesion
