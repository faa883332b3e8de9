#include "cohesion/measures.hpp"

#include <cmath>
#include <sstream>

#include "cohesion/error.hpp"
#include "cohesion/kernels.hpp"

namespace cohesion {

namespace {

void check_order(int n, int k) {
  if (k < 1 || k > n - 1) {
    std::ostringstream os;
    os << "interaction order " << k << " outside 1.." << (n - 1);
    throw Error(ErrorKind::invalid_argument, os.str());
  }
}

BoundCheck make_check(std::string name, int k, double lhs, double rhs) {
  const double slack = rhs - lhs;
  return {std::move(name), k, lhs, rhs, slack, slack >= -kBoundTolerance};
}

}  // namespace

SubsetEntropyTable::SubsetEntropyTable(int n, double base, std::vector<double> values)
    : n_(n), base_(base), values_(std::move(values)) {
  if (values_.size() != (std::size_t{1} << n)) throw Error(ErrorKind::shape_mismatch, "table size is not 2^n");
}

SubsetEntropyTable SubsetEntropyTable::compute(const JointDistribution& p, double base, Execution exec) {
  auto values = exec == Execution::parallel ? subset_entropy_table_parallel(p, base)
                                            : subset_entropy_table_serial(p, base);
  return SubsetEntropyTable(p.n(), base, std::move(values));
}

double cohesion_k(const SubsetEntropyTable& table, int k) {
  const int n = table.n();
  check_order(n, k);
  double sum = 0.0;
  for (SubsetMask m : masks_of_size(n, k)) sum += table[m];
  return sum - static_cast<double>(binomial(n - 1, k - 1)) * table.joint();
}

double cohesion_k(const JointDistribution& p, int k, double base) {
  check_order(p.n(), k);
  MarginalWorkspace ws;
  const double scale = 1.0 / std::log(base);
  double sum = 0.0;
  for (SubsetMask m : masks_of_size(p.n(), k)) sum += std::max(0.0, marginal_entropy_nats(p, m, ws) * scale);
  const double joint = std::max(0.0, marginal_entropy_nats(p, SubsetMask::full(p.n()), ws) * scale);
  return sum - static_cast<double>(binomial(p.n() - 1, k - 1)) * joint;
}

double constant_bound(int n, int k) {
  check_order(n, k);
  return static_cast<double>(static_cast<std::uint64_t>(k) * binomial(n - 1, k));
}

double CohesionProfile::to_base_q() const { return std::log(base) / std::log(static_cast<double>(q)); }

CohesionProfile cohesion_profile(const SubsetEntropyTable& table, int q) {
  const int n = table.n();
  if (n < 2) throw Error(ErrorKind::invalid_argument, "a cohesion profile needs at least two variables");
  CohesionProfile prof;
  prof.n = n;
  prof.q = q;
  prof.base = table.base();
  const double from_q = std::log(static_cast<double>(q)) / std::log(table.base());
  for (int k = 1; k <= n - 1; ++k) {
    const double v = cohesion_k(table, k);
    const double b = constant_bound(n, k) * from_q;
    prof.values.push_back(v);
    prof.constant_bounds.push_back(b);
    prof.slack.push_back(b - v);
  }
  return prof;
}

CohesionProfile cohesion_profile(const JointDistribution& p, double base) {
  return cohesion_profile(SubsetEntropyTable::compute(p, base), p.q());
}

PolymatroidReport check_polymatroid_bounds(const CohesionProfile& profile) {
  PolymatroidReport rep;
  const int n = profile.n;
  const double s = profile.to_base_q();
  auto c = [&](int k) { return profile.value(k) * s; };
  for (int k = 1; k <= n - 2; ++k) {
    rep.upper.push_back(make_check("polymatroid_upper", k, k * c(k + 1), (n - k) * c(k)));
    rep.lower.push_back(make_check("polymatroid_lower", k, k * c(n - k - 1), (n - k) * c(n - k)));
  }
  for (int k = 1; k <= n - 1; ++k) rep.constant.push_back(make_check("constant", k, c(k), constant_bound(n, k)));
  for (const auto* group : {&rep.upper, &rep.lower, &rep.constant}) {
    for (const auto& chk : *group) rep.all_satisfied = rep.all_satisfied && chk.satisfied;
  }
  return rep;
}

QuadReport check_quad_inequalities(const CohesionProfile& profile) {
  if (profile.n != 4) throw Error(ErrorKind::invalid_argument, "the four-variable inequalities need n = 4");
  const double s = profile.to_base_q();
  const double c1 = profile.value(1) * s;
  const double c2 = profile.value(2) * s;
  const double c3 = profile.value(3) * s;
  QuadReport rep;
  rep.checks.push_back(make_check("c1+c3<=4", 0, c1 + c3, 4.0));
  rep.checks.push_back(make_check("c2+3c1<=12", 0, c2 + 3.0 * c1, 12.0));
  rep.checks.push_back(make_check("c2+3c3<=12", 0, c2 + 3.0 * c3, 12.0));
  for (const auto& chk : rep.checks) rep.all_satisfied = rep.all_satisfied && chk.satisfied;
  return rep;
}

QuadReport check_quad_inequalities(const JointDistribution& p) {
  if (p.n() != 4) throw Error(ErrorKind::invalid_argument, "the four-variable inequalities need n = 4");
  return check_quad_inequalities(cohesion_profile(p, static_cast<double>(p.q())));
}

}  // namespace cohesion
