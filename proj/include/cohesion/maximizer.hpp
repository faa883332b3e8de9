#pragma once

#include <optional>
#include <string>

#include "cohesion/codes.hpp"
#include "cohesion/dist.hpp"
#include "cohesion/matroid.hpp"

namespace cohesion {

struct MaximizerOptions {
  /// Largest field order tried when n is not a prime power.
  int max_q = 256;
  SearchBudget budget{};
};

/// Self-check attached to every maximizer: the Cohesion value is recomputed
/// from the emitted distribution, never assumed.
struct MaximizerCertificate {
  int n = 0;
  int k = 0;
  int q = 0;
  std::string construction;  // "reed-solomon" or "representation-search"
  double value = 0.0;        // C^(k) in base-q units
  double value_bits = 0.0;
  double bound = 0.0;        // k * C(n-1, k)
  bool meets_bound = false;  // |value - bound| <= 1e-9
  bool uniform_matroid = false;
  std::string matroid_note;
};

struct MaximizerResult {
  JointDistribution distribution;
  FieldMatrix generator;
  MaximizerCertificate certificate;
};

/// Distribution attaining the constant bound on Cohesion-k for n variables:
/// the Reed-Solomon code over GF(n) when n is a prime power, otherwise a
/// representation of U_{k,n} found over the smallest prime power q > n that the
/// search decides within budget. Throws size_limit naming the largest q tried.
MaximizerResult run_maximizer(int n, int k, const MaximizerOptions& opts = {});

}  // namespace cohesion
