#include "cohesion/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "cohesion/error.hpp"
#include "cohesion/kernels.hpp"

namespace cohesion {

namespace {

void check_shape(int n, int q) {
  if (n < 1 || n > 32) throw Error(ErrorKind::invalid_argument, "variable count must be in 1..32");
  if (q < 2 || q > (1 << 16)) throw Error(ErrorKind::invalid_argument, "alphabet size must be in 2..65536");
}

bool lex_less(std::span<const Symbol> a, std::span<const Symbol> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

EntropyValue EntropyValue::in_base(double new_base) const {
  return {value * std::log(base) / std::log(new_base), new_base};
}

std::vector<SubsetMask> masks_of_size(int n, int k) {
  std::vector<SubsetMask> out;
  if (k < 0 || k > n) return out;
  out.reserve(binomial(n, k));
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t m = 0; m < limit; ++m) {
    if (std::popcount(m) == k) out.emplace_back(static_cast<std::uint32_t>(m));
  }
  return out;
}

int dense_index_bits(int n, int q) {
  return static_cast<int>(std::ceil(n * std::log2(static_cast<double>(q)) - 1e-9));
}

std::size_t outcome_count(int n, int q, int bits_limit) {
  if (dense_index_bits(n, q) > bits_limit) {
    std::ostringstream os;
    os << "outcome space " << q << "^" << n << " exceeds 2^" << bits_limit;
    throw Error(ErrorKind::size_limit, os.str());
  }
  std::size_t c = 1;
  for (int i = 0; i < n; ++i) c *= static_cast<std::size_t>(q);
  return c;
}

JointDistribution JointDistribution::from_atoms(int n, int q, std::vector<Atom> atoms, Normalize normalize) {
  check_shape(n, q);
  double total = 0.0;
  for (const auto& a : atoms) {
    if (a.outcome.size() != static_cast<std::size_t>(n)) {
      throw Error(ErrorKind::invalid_argument, "outcome tuple length differs from variable count");
    }
    for (Symbol s : a.outcome) {
      if (s >= static_cast<Symbol>(q)) throw Error(ErrorKind::invalid_argument, "symbol outside alphabet");
    }
    if (!(a.mass >= 0.0) || !std::isfinite(a.mass)) {
      throw Error(ErrorKind::invalid_argument, "probability mass must be a finite non-negative number");
    }
    total += a.mass;
  }
  if (normalize == Normalize::yes) {
    if (!(total > 0.0)) throw Error(ErrorKind::invalid_argument, "cannot normalize zero total mass");
    for (auto& a : atoms) a.mass /= total;
  } else if (normalize == Normalize::no && std::abs(total - 1.0) > kMassTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "masses sum to " << total << ", not 1";
    throw Error(ErrorKind::invalid_argument, os.str());
  }

  std::erase_if(atoms, [](const Atom& a) { return a.mass == 0.0; });
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return lex_less(a.outcome, b.outcome); });
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    if (atoms[i - 1].outcome == atoms[i].outcome) throw Error(ErrorKind::invalid_argument, "duplicate outcome");
  }

  JointDistribution d(n, q);
  d.symbols_.reserve(atoms.size() * static_cast<std::size_t>(n));
  d.masses_.reserve(atoms.size());
  for (auto& a : atoms) {
    d.symbols_.insert(d.symbols_.end(), a.outcome.begin(), a.outcome.end());
    d.masses_.push_back(a.mass);
  }
  return d;
}

JointDistribution JointDistribution::from_dense(int n, int q, std::span<const double> masses, Normalize normalize) {
  check_shape(n, q);
  const std::size_t count = outcome_count(n, q);
  if (masses.size() != count) throw Error(ErrorKind::shape_mismatch, "dense table size differs from q^n");
  std::vector<Atom> atoms;
  for (std::size_t idx = 0; idx < count; ++idx) {
    if (masses[idx] == 0.0) continue;
    Atom a{std::vector<Symbol>(static_cast<std::size_t>(n)), masses[idx]};
    std::size_t rest = idx;
    for (int v = n - 1; v >= 0; --v) {
      a.outcome[static_cast<std::size_t>(v)] = static_cast<Symbol>(rest % static_cast<std::size_t>(q));
      rest /= static_cast<std::size_t>(q);
    }
    atoms.push_back(std::move(a));
  }
  return from_atoms(n, q, std::move(atoms), normalize);
}

JointDistribution JointDistribution::uniform_over(int n, int q, const std::vector<std::vector<Symbol>>& outcomes) {
  if (outcomes.empty()) throw Error(ErrorKind::invalid_argument, "empty support");
  const double m = 1.0 / static_cast<double>(outcomes.size());
  std::vector<Atom> atoms;
  atoms.reserve(outcomes.size());
  for (const auto& o : outcomes) atoms.push_back({o, m});
  return from_atoms(n, q, std::move(atoms), Normalize::yes);
}

JointDistribution JointDistribution::uniform(int n, int q) {
  const std::size_t count = outcome_count(n, q);
  std::vector<double> dense(count, 1.0 / static_cast<double>(count));
  return from_dense(n, q, dense, Normalize::yes);
}

double JointDistribution::mass_of(std::span<const Symbol> outcome) const {
  if (outcome.size() != static_cast<std::size_t>(n_)) return 0.0;
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (lex_less(this->outcome(mid), outcome)) lo = mid + 1;
    else hi = mid;
  }
  if (lo < size() && std::ranges::equal(this->outcome(lo), outcome)) return masses_[lo];
  return 0.0;
}

bool JointDistribution::dense_indexable() const { return dense_index_bits(n_, q_) <= kDenseIndexBits; }

std::vector<double> JointDistribution::dense() const {
  std::vector<double> out(outcome_count(n_, q_), 0.0);
  for (std::size_t i = 0; i < size(); ++i) {
    std::size_t idx = 0;
    for (Symbol s : outcome(i)) idx = idx * static_cast<std::size_t>(q_) + s;
    out[idx] = masses_[i];
  }
  return out;
}

JointDistribution JointDistribution::permuted(std::span<const int> perm) const {
  if (perm.size() != static_cast<std::size_t>(n_)) throw Error(ErrorKind::shape_mismatch, "permutation length");
  std::vector<Atom> atoms;
  atoms.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    Atom a{std::vector<Symbol>(static_cast<std::size_t>(n_)), masses_[i]};
    auto src = outcome(i);
    for (int v = 0; v < n_; ++v) a.outcome[static_cast<std::size_t>(v)] = src[static_cast<std::size_t>(perm[v])];
    atoms.push_back(std::move(a));
  }
  return from_atoms(n_, q_, std::move(atoms), Normalize::assume_valid);
}

std::vector<Atom> JointDistribution::atoms() const {
  std::vector<Atom> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    auto o = outcome(i);
    out.push_back({std::vector<Symbol>(o.begin(), o.end()), masses_[i]});
  }
  return out;
}

JointDistribution marginalize(const JointDistribution& p, SubsetMask subset) {
  if (subset.empty()) throw Error(ErrorKind::invalid_argument, "empty subset");
  if (!subset.fits(p.n())) throw Error(ErrorKind::invalid_argument, "subset mask exceeds variable count");
  const auto vars = subset.indices();
  std::vector<Atom> projected;
  projected.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto o = p.outcome(i);
    Atom a{std::vector<Symbol>(vars.size()), p.mass(i)};
    for (std::size_t j = 0; j < vars.size(); ++j) a.outcome[j] = o[static_cast<std::size_t>(vars[j])];
    projected.push_back(std::move(a));
  }
  std::stable_sort(projected.begin(), projected.end(),
                   [](const Atom& a, const Atom& b) { return lex_less(a.outcome, b.outcome); });
  std::vector<Atom> merged;
  for (auto& a : projected) {
    if (!merged.empty() && merged.back().outcome == a.outcome) merged.back().mass += a.mass;
    else merged.push_back(std::move(a));
  }
  return JointDistribution::from_atoms(static_cast<int>(vars.size()), p.q(), std::move(merged),
                                       JointDistribution::Normalize::assume_valid);
}

EntropyValue entropy(const JointDistribution& p, double base) {
  double nats = 0.0;
  for (double m : p.masses()) {
    if (m > 0.0) nats -= m * std::log(m);
  }
  return {std::max(0.0, nats / std::log(base)), base};
}

EntropyValue entropy(const JointDistribution& p) { return entropy(p, static_cast<double>(p.q())); }

EntropyValue subset_entropy(const JointDistribution& p, SubsetMask subset, double base) {
  if (!subset.fits(p.n())) throw Error(ErrorKind::invalid_argument, "subset mask exceeds variable count");
  if (subset.empty()) return {0.0, base};
  MarginalWorkspace ws;
  return {marginal_entropy_nats(p, subset, ws) / std::log(base), base};
}

double kl_divergence(const JointDistribution& p, const JointDistribution& r, double base) {
  if (p.n() != r.n() || p.q() != r.q()) throw Error(ErrorKind::shape_mismatch, "distributions differ in shape");
  double nats = 0.0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto o = p.outcome(i);
    while (j < r.size() && lex_less(r.outcome(j), o)) ++j;
    if (j == r.size() || !std::ranges::equal(r.outcome(j), o)) return std::numeric_limits<double>::infinity();
    nats += p.mass(i) * std::log(p.mass(i) / r.mass(j));
  }
  return std::max(0.0, nats / std::log(base));
}

JointDistribution product_of_marginals(const JointDistribution& p) {
  const int n = p.n();
  const int q = p.q();
  std::vector<std::vector<double>> marg(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(q), 0.0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto o = p.outcome(i);
    for (int v = 0; v < n; ++v) marg[static_cast<std::size_t>(v)][o[static_cast<std::size_t>(v)]] += p.mass(i);
  }
  const std::size_t count = outcome_count(n, q);
  std::vector<double> dense(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    double m = 1.0;
    std::size_t rest = idx;
    for (int v = n - 1; v >= 0; --v) {
      m *= marg[static_cast<std::size_t>(v)][rest % static_cast<std::size_t>(q)];
      rest /= static_cast<std::size_t>(q);
    }
    dense[idx] = m;
  }
  return JointDistribution::from_dense(n, q, dense, JointDistribution::Normalize::assume_valid);
}

JointDistribution point_mass(int n, int q, std::vector<Symbol> outcome) {
  std::vector<Atom> atoms{{std::move(outcome), 1.0}};
  return JointDistribution::from_atoms(n, q, std::move(atoms));
}

}  // namespace cohesion
