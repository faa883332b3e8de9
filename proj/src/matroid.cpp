#include "cohesion/matroid.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "cohesion/error.hpp"
#include "cohesion/kernels.hpp"

namespace cohesion {

namespace {

constexpr int kMaxGround = 20;

void check_ground(int n) {
  if (n < 0 || n > kMaxGround) throw Error(ErrorKind::size_limit, "matroid ground set limited to 20 elements");
}

}  // namespace

const char* to_string(MatroidOrigin origin) {
  switch (origin) {
    case MatroidOrigin::entropy: return "entropy";
    case MatroidOrigin::vector: return "vector";
    case MatroidOrigin::uniform: return "uniform";
  }
  return "unknown";
}

const char* to_string(Representability r) {
  switch (r) {
    case Representability::representable: return "representable";
    case Representability::not_representable: return "not_representable";
    case Representability::undecided: return "undecided";
  }
  return "unknown";
}

RankReport rank_report_from_table(const SubsetEntropyTable& table) {
  const int n = table.n();
  RankReport rep;
  rep.n = n;
  rep.ranks.assign(table.values().begin(), table.values().end());
  const std::uint32_t count = std::uint32_t{1} << n;
  const double tol = kBoundTolerance;
  for (std::uint32_t s = 0; s < count; ++s) {
    const double f = rep.ranks[s];
    const double dev = std::abs(f - std::round(f));
    rep.max_deviation = std::max(rep.max_deviation, dev);
    if (f < -tol) rep.nonnegative = false;
    if (f > std::popcount(s) + kRankTolerance) rep.bounded_by_size = false;
    for (int i = 0; i < n; ++i) {
      const std::uint32_t bi = std::uint32_t{1} << i;
      if (s & bi) continue;
      if (rep.ranks[s | bi] < f - tol) rep.monotone = false;
      for (int j = i + 1; j < n; ++j) {
        const std::uint32_t bj = std::uint32_t{1} << j;
        if (s & bj) continue;
        // local form of submodularity, equivalent to the global one
        if (rep.ranks[s | bi | bj] + f > rep.ranks[s | bi] + rep.ranks[s | bj] + tol) rep.submodular = false;
      }
    }
  }
  rep.integer_valued = rep.max_deviation <= kRankTolerance && rep.bounded_by_size && rep.nonnegative;
  rep.near_matroidal = rep.max_deviation > kRankTolerance && rep.max_deviation <= kNearRankTolerance;
  return rep;
}

RankReport entropy_rank_report(const JointDistribution& p) {
  check_ground(p.n());
  return rank_report_from_table(SubsetEntropyTable::compute(p, static_cast<double>(p.q())));
}

MatroidView::MatroidView(int ground_size, MatroidOrigin origin, std::vector<std::uint8_t> independent)
    : n_(ground_size), origin_(origin), independent_(std::move(independent)) {
  check_ground(n_);
  if (independent_.size() != (std::size_t{1} << n_)) throw Error(ErrorKind::shape_mismatch, "bitmap size is not 2^n");
}

std::vector<SubsetMask> MatroidView::independents() const {
  std::vector<SubsetMask> out;
  for (std::uint32_t s = 0; s < independent_.size(); ++s) {
    if (independent_[s]) out.emplace_back(s);
  }
  std::stable_sort(out.begin(), out.end(), [](SubsetMask a, SubsetMask b) { return a.size() < b.size(); });
  return out;
}

int MatroidView::rank() const {
  int r = 0;
  for (std::uint32_t s = 0; s < independent_.size(); ++s) {
    if (independent_[s]) r = std::max(r, std::popcount(s));
  }
  return r;
}

AxiomReport verify_axioms(const MatroidView& m, Execution exec) {
  AxiomReport rep;
  const auto& bits = m.bitmap();
  rep.m1 = bits[0] != 0;
  rep.m2 = true;
  for (std::uint32_t s = 0; s < bits.size() && rep.m2; ++s) {
    if (!bits[s]) continue;
    for (std::uint32_t rest = s; rest != 0; rest &= rest - 1) {
      const std::uint32_t e = rest & (~rest + 1);
      if (!bits[s & ~e]) {
        rep.m2 = false;
        break;
      }
    }
  }
  if (m.ground_size() <= kExhaustiveAxiomLimit) {
    rep.m3_checked = true;
    rep.m3_witness = exec == Execution::parallel ? exchange_violation_parallel(m.ground_size(), bits)
                                                 : exchange_violation_serial(m.ground_size(), bits);
    rep.m3 = !rep.m3_witness.has_value();
  }
  return rep;
}

MatroidView matroid_from_ranks(const RankReport& report) {
  if (!report.integer_valued) {
    std::ostringstream os;
    os << "not a matroid rank function (max deviation from an integer " << report.max_deviation << ")";
    throw Error(ErrorKind::not_a_matroid, os.str());
  }
  std::vector<std::uint8_t> ind(report.ranks.size(), 0);
  for (std::uint32_t s = 0; s < ind.size(); ++s) {
    ind[s] = std::abs(report.ranks[s] - std::popcount(s)) <= kRankTolerance ? 1 : 0;
  }
  MatroidView view(report.n, MatroidOrigin::entropy, std::move(ind));
  if (!verify_axioms(view).holds()) {
    throw Error(ErrorKind::internal, "independence family from an integer rank function violates the matroid axioms");
  }
  return view;
}

MatroidView vector_matroid(const FiniteField& field, const FieldMatrix& matrix) {
  const int n = matrix.cols;
  check_ground(n);
  std::vector<std::uint8_t> ind(std::size_t{1} << n, 0);
  ind[0] = 1;
  for (std::uint32_t s = 1; s < ind.size(); ++s) {
    const int size = std::popcount(s);
    if (size > matrix.rows) continue;
    // a subset of a dependent set cannot help; only test when all
    // one-smaller subsets are independent
    bool candidates = true;
    for (std::uint32_t rest = s; rest != 0 && candidates; rest &= rest - 1) {
      if (!ind[s & ~(rest & (~rest + 1))]) candidates = false;
    }
    if (!candidates) continue;
    const auto cols = SubsetMask(s).indices();
    ind[s] = rank(field, matrix.select_columns(cols)) == size ? 1 : 0;
  }
  return MatroidView(n, MatroidOrigin::vector, std::move(ind));
}

MatroidView uniform_matroid(int k, int n) {
  check_ground(n);
  std::vector<std::uint8_t> ind(std::size_t{1} << n, 0);
  for (std::uint32_t s = 0; s < ind.size(); ++s) ind[s] = std::popcount(s) <= k ? 1 : 0;
  return MatroidView(n, MatroidOrigin::uniform, std::move(ind));
}

bool is_isomorphic_uniform(const MatroidView& m, int k) {
  const auto& bits = m.bitmap();
  for (std::uint32_t s = 0; s < bits.size(); ++s) {
    if ((bits[s] != 0) != (std::popcount(s) <= k)) return false;
  }
  return true;
}

RepresentabilityResult uniform_representable_over(int k, int n, const FiniteField& field, SearchBudget budget) {
  if (k < 1 || n < 1 || k > n) throw Error(ErrorKind::invalid_argument, "need 1 <= k <= n");
  RepresentabilityResult res;
  const int q = field.order();

  FieldMatrix identity(k, n);
  for (int i = 0; i < k; ++i) identity.at(i, i) = 1;
  if (k == n) {
    res.outcome = Representability::representable;
    res.matrix = identity;
    return res;
  }
  if (k == 1) {
    // any two nonzero scalars are dependent, so a row of ones works
    FieldMatrix ones(1, n);
    std::fill(ones.data.begin(), ones.data.end(), Element{1});
    res.outcome = Representability::representable;
    res.matrix = std::move(ones);
    return res;
  }
  std::uint64_t qk = 1;
  for (int i = 0; i < k; ++i) {
    qk *= static_cast<std::uint64_t>(q);
    if (qk > budget.max_candidates) {
      res.note = "q^k exceeds the candidate budget";
      return res;
    }
  }

  // Candidate extra columns: leading entry 1, every entry nonzero (a zero in
  // row r would make the column dependent on the identity columns other than r).
  std::vector<std::vector<Element>> candidates;
  {
    std::vector<Element> col(static_cast<std::size_t>(k), 1);
    while (true) {
      candidates.push_back(col);
      int i = k - 1;
      while (i >= 1 && col[static_cast<std::size_t>(i)] == static_cast<Element>(q - 1)) col[static_cast<std::size_t>(i--)] = 1;
      if (i < 1) break;
      ++col[static_cast<std::size_t>(i)];
    }
  }

  std::vector<std::vector<Element>> chosen;  // all columns, identity first
  for (int i = 0; i < k; ++i) chosen.push_back(identity.column(i));

  // every (k-1)-subset of existing columns that touches an extra column,
  // together with the new column, must have rank k
  auto compatible = [&](const std::vector<Element>& cand) {
    const int have = static_cast<int>(chosen.size());
    std::vector<int> idx(static_cast<std::size_t>(k - 1));
    for (int i = 0; i < k - 1; ++i) idx[static_cast<std::size_t>(i)] = i;
    FieldMatrix m(k, k);
    while (true) {
      if (idx.back() >= k) {
        for (int c = 0; c < k - 1; ++c) {
          for (int r = 0; r < k; ++r) m.at(r, c) = chosen[static_cast<std::size_t>(idx[static_cast<std::size_t>(c)])][static_cast<std::size_t>(r)];
        }
        for (int r = 0; r < k; ++r) m.at(r, k - 1) = cand[static_cast<std::size_t>(r)];
        if (rank(field, m) != k) return false;
      }
      int i = k - 2;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == have - (k - 1) + i) --i;
      if (i < 0) return true;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k - 1; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  };

  bool exhausted = false;
  std::function<bool(std::size_t)> dfs = [&](std::size_t start) -> bool {
    if (static_cast<int>(chosen.size()) == n) return true;
    const std::size_t remaining = static_cast<std::size_t>(n) - chosen.size();
    for (std::size_t c = start; c + remaining <= candidates.size(); ++c) {
      if (++res.nodes > budget.max_nodes) {
        exhausted = true;
        return false;
      }
      if (!compatible(candidates[c])) continue;
      chosen.push_back(candidates[c]);
      if (dfs(c + 1)) return true;
      chosen.pop_back();
      if (exhausted) return false;
    }
    return false;
  };

  if (dfs(0)) {
    FieldMatrix m(k, n);
    for (int c = 0; c < n; ++c) {
      for (int r = 0; r < k; ++r) m.at(r, c) = chosen[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
    }
    res.outcome = Representability::representable;
    res.matrix = std::move(m);
  } else if (exhausted) {
    res.outcome = Representability::undecided;
    res.note = "node budget exhausted";
  } else {
    res.outcome = Representability::not_representable;
  }
  return res;
}

SubsetEntropyTable linear_code_entropy_table(const LinearCode& code) {
  const int n = code.n();
  check_ground(n);
  std::vector<double> values(std::size_t{1} << n, 0.0);
  for (std::uint32_t s = 1; s < values.size(); ++s) {
    const auto cols = SubsetMask(s).indices();
    values[s] = static_cast<double>(rank(code.field(), code.generator().select_columns(cols)));
  }
  return SubsetEntropyTable(n, static_cast<double>(code.q()), std::move(values));
}

}  // namespace cohesion
