#include "saea/theory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "saea/error.hpp"

namespace saea {
namespace {

// Relative slack when checking that a rate chi/n lies in [epsilon, 1/2];
// chi = epsilon*n divided by n need not round back to epsilon exactly.
constexpr double kRateSlack = 1e-12;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// 1 - c^(1/j) without cancellation for large j.
double one_minus_root(double c, double j) { return -std::expm1(std::log(c) / j); }

void check_rate_domain(double rate, const TheoryParams& p) {
  if (!(rate >= p.epsilon() * (1.0 - kRateSlack) && rate <= 0.5 * (1.0 + kRateSlack))) {
    throw DomainError("rate " + fmt(rate) + " outside [epsilon, 1/2] = [" + fmt(p.epsilon()) +
                      ", 0.5]");
  }
}

}  // namespace

double survival_prob(double j, double chi, double n) {
  if (j == 0.0) return 1.0;
  return std::exp(j * std::log1p(-chi / n));
}

double error_threshold(double j, double alpha0) {
  if (j == 0.0) return 1.0;
  return -std::expm1(-std::log(alpha0) / j);
}

TheoryParams TheoryParams::derive(std::size_t n, double alpha0, double A, double b, double p_inc,
                                  double delta, double epsilon, std::size_t k) {
  if (n < 1) throw ParameterError("n must be at least 1");
  if (!(alpha0 > 0.0 && A > 0.0 && b > 0.0 && p_inc > 0.0 && p_inc < 1.0 && delta > 0.0)) {
    throw ParameterError("theory parameters must be positive and p_inc < 1");
  }
  if (k > n) throw ParameterError("k must not exceed n");
  TheoryParams p;
  p.n_ = n;
  p.k_ = k == 0 ? n : k;
  p.alpha0_ = alpha0;
  p.A_ = A;
  p.b_ = b;
  p.p_inc_ = p_inc;
  p.delta_ = delta;
  p.epsilon_ = epsilon > 0.0 ? epsilon : 0.5 / static_cast<double>(n);
  p.r0_ = (1.0 + delta) / (alpha0 * (1.0 - p_inc));
  p.zeta_ = 1.0 - alpha0 * std::pow(p.r0_, 1.0 + std::sqrt(p.r0_));
  p.q_ = (1.0 - p.zeta_) / alpha0;
  p.eta1_base_ = (1.0 + delta) / (alpha0 * p_inc);
  return p;
}

void TheoryParams::check_level(std::size_t j) const {
  if (j > k_) {
    throw ParameterError("fitness level " + std::to_string(j) + " outside [0, " +
                         std::to_string(k_) + "]");
  }
}

double TheoryParams::eta(std::size_t j) const {
  check_level(j);
  if (j == 0) return eta(1) / A_;
  return one_minus_root(eta1_base_, static_cast<double>(j)) / (2.0 * A_);
}

double TheoryParams::theta1(std::size_t j) const { return b_ * eta(j); }

double TheoryParams::theta2(std::size_t j) const {
  check_level(j);
  if (j == 0) return theta2(1) / b_;
  return one_minus_root(q_, static_cast<double>(j));
}

double TheoryParams::sublevel_floor(std::size_t l) const {
  return epsilon_ * std::pow(A_, static_cast<double>(l) - 1.0);
}

std::size_t TheoryParams::depth(std::size_t j) const {
  if (j >= k_) {
    throw ParameterError("depth is defined for fitness levels below k");
  }
  const double t1 = theta1(j);
  if (!(t1 > epsilon_ * A_)) return 1;
  auto l = static_cast<std::size_t>(std::max(1.0, std::ceil(std::log(t1 / epsilon_) / std::log(A_))));
  while (sublevel_floor(l + 1) < t1) ++l;
  while (l > 1 && sublevel_floor(l) >= t1) --l;
  return l;
}

std::size_t TheoryParams::edge_sublevel(std::size_t j) const {
  return depth(j) + (epsilon_ < theta1(j) ? 1 : 0);
}

std::size_t TheoryParams::level_count() const {
  std::size_t m = 1;
  for (std::size_t j = 0; j < k_; ++j) m += edge_sublevel(j);
  return m;
}

ParamValidation validate_params(std::size_t n, std::size_t lambda, std::size_t mu, double A,
                                double b, double p_inc, double delta, double epsilon,
                                std::size_t k) {
  ParamValidation v;
  if (mu < 1 || mu > lambda) {
    v.violations.push_back("1 <= mu <= lambda fails (mu = " + std::to_string(mu) +
                           ", lambda = " + std::to_string(lambda) + ")");
    return v;
  }
  if (!(p_inc > 0.0 && p_inc < 1.0) || !(b > 0.0) || !(A > 0.0) || !(delta > 0.0)) {
    v.violations.push_back("A, b, delta must be positive and 0 < p_inc < 1");
    return v;
  }
  const double alpha0 = static_cast<double>(lambda) / static_cast<double>(mu);
  const TheoryParams p = TheoryParams::derive(n, alpha0, A, b, p_inc, delta, epsilon, k);

  if (!(alpha0 >= 4.0)) v.violations.push_back("alpha0 >= 4 fails (alpha0 = " + fmt(alpha0) + ")");
  if (!(A > 1.0)) v.violations.push_back("A > 1 fails (A = " + fmt(A) + ")");
  if (!((1.0 + delta) / alpha0 < p_inc)) {
    v.violations.push_back("(1+delta)/alpha0 < p_inc fails ((1+delta)/alpha0 = " +
                           fmt((1.0 + delta) / alpha0) + ", p_inc = " + fmt(p_inc) + ")");
  }
  if (!(p_inc < 0.4)) v.violations.push_back("p_inc < 2/5 fails (p_inc = " + fmt(p_inc) + ")");
  const double b_max = 1.0 / (1.0 + std::sqrt(p.r0()));
  if (!(b < b_max)) {
    v.violations.push_back("b < 1/(1+sqrt(r0)) fails (b = " + fmt(b) + ", bound = " + fmt(b_max) +
                           ")");
  }
  if (!(delta < 0.1)) v.violations.push_back("delta < 1/10 fails (delta = " + fmt(delta) + ")");
  if (!(p.epsilon() * static_cast<double>(n) < 1.0)) {
    v.violations.push_back("epsilon*n < 1 fails");
  }

  v.delta_lo = 0.0;
  v.delta_hi = std::min({0.1, alpha0 * p_inc - 1.0,
                         alpha0 * (1.0 - p_inc) * (1.0 / b - 1.0) * (1.0 / b - 1.0) - 1.0});
  if (v.violations.empty()) v.params = p;
  return v;
}

LevelIndex classify_rate(double rate, std::size_t j, const TheoryParams& p) {
  check_rate_domain(rate, p);
  if (j > p.k()) throw ParameterError("fitness exceeds k");
  if (j == p.k()) return {p.k(), 1};

  if (rate <= std::min(0.5, p.theta2(j))) {
    const std::size_t edge = p.edge_sublevel(j);
    if (rate >= p.theta1(j)) return {j, edge};
    std::size_t l = 1;
    while (l + 1 < edge && rate >= p.sublevel_floor(l + 1)) ++l;
    return {j, l};
  }

  // Rate too high for fitness j: edge level of the largest j' < j whose
  // capped theta2 still admits the rate. theta2 decreases in j.
  std::size_t lo = 0;
  std::size_t hi = j;  // invariant: admissible(lo), !admissible(hi)
  if (!(rate <= std::min(0.5, p.theta2(0)))) {
    throw DomainError("rate " + fmt(rate) + " exceeds min(1/2, theta2(0)); parameters invalid");
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (rate <= std::min(0.5, p.theta2(mid))) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, p.edge_sublevel(lo)};
}

LevelIndex classify(const Chromosome& c, Fitness j, const TheoryParams& params) {
  if (j < 0) throw ParameterError("fitness must be non-negative");
  return classify_rate(c.rate(), static_cast<std::size_t>(j), params);
}

bool in_bad_region_rate(double rate, std::size_t j, const TheoryParams& p) {
  check_rate_domain(rate, p);
  return rate > p.theta2(j);
}

bool in_bad_region(const Chromosome& c, Fitness j, const TheoryParams& params) {
  if (j < 0) throw ParameterError("fitness must be non-negative");
  return in_bad_region_rate(c.rate(), static_cast<std::size_t>(j), params);
}

LevelBound level_based_bound(std::size_t m, std::span<const double> z, double delta, double gamma0,
                             double lambda) {
  if (z.empty()) throw ParameterError("level_based_bound: z must not be empty");
  if (m < 2 || z.size() != m - 1) {
    throw ParameterError("level_based_bound: need exactly m-1 upgrade probabilities");
  }
  if (!(delta > 0.0 && delta <= 1.0)) throw ParameterError("delta must lie in (0, 1]");
  if (!(gamma0 > 0.0 && gamma0 < 1.0)) throw ParameterError("gamma0 must lie in (0, 1)");
  if (!(lambda >= 1.0)) throw ParameterError("lambda must be at least 1");

  const long double d = delta;
  const long double lam = lambda;
  long double sum = 0.0L;
  long double z_min = 1.0L;
  for (double zj : z) {
    if (!(zj > 0.0 && zj <= 1.0)) throw ParameterError("every z_j must lie in (0, 1]");
    const long double zz = zj;
    z_min = std::min(z_min, zz);
    sum += lam * std::log(6.0L * d * lam / (4.0L + zz * d * lam)) + 1.0L / zz;
  }
  LevelBound out;
  out.expected_runtime = static_cast<double>(8.0L / (d * d) * sum);
  out.min_lambda = static_cast<double>(4.0L / (static_cast<long double>(gamma0) * d * d) *
                                       std::log(128.0L * static_cast<long double>(m) / (z_min * d * d)));
  out.z_min = static_cast<double>(z_min);
  return out;
}

bool inv_bound_check(double c, double j) {
  if (!(c > 0.0 && j > 0.0)) throw ParameterError("inv_bound_check needs c > 0 and j > 0");
  const double x = std::log(c) / j;
  return -std::expm1(x) <= -x;
}

}  // namespace saea
