#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cohesion/codes.hpp"
#include "cohesion/dist.hpp"
#include "cohesion/gf.hpp"
#include "cohesion/measures.hpp"
#include "cohesion/subset.hpp"

namespace cohesion {

/// Tolerance for treating an entropy value as an integer rank.
inline constexpr double kRankTolerance = 1e-6;
/// Deviations up to this size are reported as near-matroidal instead of ignored.
inline constexpr double kNearRankTolerance = 1e-3;
/// Largest ground set on which the exchange axiom is checked pair by pair.
inline constexpr int kExhaustiveAxiomLimit = 12;

/// Subset entropies in base q, with the checks that decide whether they form
/// a matroid rank function.
struct RankReport {
  int n = 0;
  std::vector<double> ranks;  // indexed by mask
  bool integer_valued = false;
  double max_deviation = 0.0;
  /// Some value deviates from an integer by more than kRankTolerance but no
  /// more than kNearRankTolerance.
  bool near_matroidal = false;
  bool nonnegative = true;
  bool monotone = true;
  bool submodular = true;
  bool bounded_by_size = true;  // f(S) <= |S| for all S

  double rank(SubsetMask s) const { return ranks[s.bits]; }
};

RankReport entropy_rank_report(const JointDistribution& p);
RankReport rank_report_from_table(const SubsetEntropyTable& table_in_base_q);

enum class MatroidOrigin { entropy, vector, uniform };

const char* to_string(MatroidOrigin origin);

/// A matroid stored as an explicit independence bitmap over all 2^n subsets.
class MatroidView {
 public:
  MatroidView(int ground_size, MatroidOrigin origin, std::vector<std::uint8_t> independent);

  int ground_size() const { return n_; }
  MatroidOrigin origin() const { return origin_; }
  bool is_independent(SubsetMask s) const { return independent_[s.bits] != 0; }
  const std::vector<std::uint8_t>& bitmap() const { return independent_; }
  /// Independent sets ordered by size, then numerically.
  std::vector<SubsetMask> independents() const;
  /// Size of the largest independent set.
  int rank() const;

  /// Same independence family (origin is ignored).
  bool same_sets(const MatroidView& other) const {
    return n_ == other.n_ && independent_ == other.independent_;
  }

 private:
  int n_;
  MatroidOrigin origin_;
  std::vector<std::uint8_t> independent_;
};

struct AxiomReport {
  bool m1 = false;  // empty set independent
  bool m2 = false;  // closed under subsets
  bool m3 = false;  // exchange
  bool m3_checked = false;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> m3_witness;

  bool holds() const { return m1 && m2 && (m3 || !m3_checked); }
};

/// M1 and M2 always; M3 pair by pair when n <= kExhaustiveAxiomLimit.
AxiomReport verify_axioms(const MatroidView& m, Execution exec = Execution::parallel);

/// Independents {S : f(S) = |S|}. Throws not_a_matroid for non-integer ranks
/// and internal if the axioms fail.
MatroidView matroid_from_ranks(const RankReport& report);

/// Column subsets of `matrix` with full column rank.
MatroidView vector_matroid(const FiniteField& field, const FieldMatrix& matrix);

MatroidView uniform_matroid(int k, int n);

/// True iff the independents are exactly the subsets of size <= k.
bool is_isomorphic_uniform(const MatroidView& m, int k);

enum class Representability { representable, not_representable, undecided };

const char* to_string(Representability r);

struct SearchBudget {
  /// q^k above this is refused up front.
  std::uint64_t max_candidates = 100'000;
  /// Depth-first search nodes before giving up.
  std::uint64_t max_nodes = 20'000'000;
};

struct RepresentabilityResult {
  Representability outcome = Representability::undecided;
  std::optional<FieldMatrix> matrix;  // k x n witness when representable
  std::uint64_t nodes = 0;
  std::string note;
};

/// Searches for a k x n matrix over `field` whose every k columns are
/// independent. The first k columns are fixed to the identity and later
/// columns are taken in projective normal form (leading entry 1); neither
/// restriction loses solutions.
RepresentabilityResult uniform_representable_over(int k, int n, const FiniteField& field, SearchBudget budget = {});

/// Subset entropies (base q) of the uniform distribution on a linear code,
/// from marginal support sizes: each marginal is uniform on the projection of
/// the code, which has q^rank(G_S) points. Used when the code is too large to
/// enumerate.
SubsetEntropyTable linear_code_entropy_table(const LinearCode& code);

}  // namespace cohesion
