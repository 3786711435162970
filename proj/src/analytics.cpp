#include "smallworld/analytics.hpp"

#include <algorithm>
#include <limits>

#include "smallworld/generators.hpp"

namespace smallworld {
namespace {

std::vector<double> ratios_of(const std::vector<BigRational>& values) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const BigRational ratio = values[i + 1] / values[i];
    out.push_back(ratio.convert_to<double>());
  }
  return out;
}

}  // namespace

std::vector<BigInt> RecurrenceSeries::integers() const {
  std::vector<BigInt> out;
  out.reserve(values.size());
  for (const auto& v : values) {
    if (boost::multiprecision::denominator(v) != 1) {
      throw std::logic_error("recurrence value is not an integer");
    }
    out.push_back(boost::multiprecision::numerator(v));
  }
  return out;
}

Eigen::Matrix<std::int64_t, 4, 1> recurrence_coefficients(int p, int q) {
  const std::int64_t pp = p;
  const std::int64_t qq = q;
  Eigen::Matrix<std::int64_t, 4, 1> a;
  a << qq + 1, (2 * pp * pp + 2 * pp - 1) * qq + 1, 4 * pp * pp * qq - qq - 1,
      (2 * pp * pp - 2 * pp + 1) * qq;
  return a;
}

RecurrenceSeries recurrence_c(int i_max) {
  if (i_max < 0) throw std::invalid_argument("i_max must be >= 0");
  std::vector<BigInt> c{1};
  for (int i = 0; i < i_max; ++i) {
    BigInt next = c[i];
    for (int j = 1; j <= i; ++j) next += c[i - j] * (4 * j);
    c.push_back(next);
  }
  for (int i = 3; i < i_max; ++i) {
    const BigInt order4 = 2 * c[i] + 4 * c[i - 1] + 2 * c[i - 2] + c[i - 3];
    if (order4 != c[i + 1]) {
      throw std::logic_error("order-4 recurrence disagrees at i=" + std::to_string(i));
    }
  }
  RecurrenceSeries s;
  for (const auto& v : c) s.values.emplace_back(v);
  s.ratios = ratios_of(s.values);
  return s;
}

RecurrenceSeries recurrence_c_general(int p, int q, int i_max) {
  if (p < 1 || q < 1) throw std::invalid_argument("p, q must be >= 1");
  if (i_max < 0) throw std::invalid_argument("i_max must be >= 0");
  RecurrenceSeries s;
  s.p = p;
  s.q = q;
  auto& c = s.values;
  c.emplace_back(BigRational(1, q));
  for (int i = 0; i < i_max; ++i) {
    BigRational next = BigRational(q) * c[i];
    for (int j = 1; j <= i; ++j) {
      // (4p^2 (j - 1/2) + 2p) q = (2p^2 (2j - 1) + 2p) q
      const std::int64_t weight =
          (2LL * p * p * (2LL * j - 1) + 2LL * p) * static_cast<std::int64_t>(q);
      next += BigRational(weight) * c[i - j];
    }
    c.push_back(next);
  }
  const auto a = recurrence_coefficients(p, q);
  for (int i = 3; i < i_max; ++i) {
    const BigRational order4 = BigRational(a(0)) * c[i] + BigRational(a(1)) * c[i - 1] +
                               BigRational(a(2)) * c[i - 2] + BigRational(a(3)) * c[i - 3];
    if (order4 != c[i + 1]) {
      throw std::logic_error("general order-4 recurrence disagrees at i=" + std::to_string(i));
    }
  }
  s.ratios = ratios_of(c);
  return s;
}

double evaluate_polynomial(const Eigen::VectorXd& coeffs, double x) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) acc = acc * x + coeffs(i);
  return acc;
}

AlphaEstimate dominant_eigenvalue(const Eigen::MatrixXd& m, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (m.rows() != m.cols() || m.rows() == 0) throw std::invalid_argument("matrix must be square");
  constexpr int kMaxIterations = 100000;

  AlphaEstimate est;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(m.rows()).normalized();
  double lambda = 0.0;
  bool converged = false;
  for (int it = 1; it <= kMaxIterations; ++it) {
    const Eigen::VectorXd w = m * v;
    const double next = w.norm();
    if (next == 0.0) throw std::runtime_error("power iteration collapsed to zero");
    v = w / next;
    est.iterations = it;
    if (std::abs(next - lambda) <= 1e-14 * next) {
      lambda = next;
      converged = true;
      break;
    }
    lambda = next;
  }
  if (!converged) throw std::runtime_error("power iteration did not converge");
  est.power_iteration = lambda;

  // Every eigenvalue lies inside the max-row-sum disc, so the characteristic
  // polynomial is positive at `hi`; walk down to the first sign change.
  const Eigen::VectorXd poly = characteristic_polynomial(m);
  const double hi = std::max(1.0, m.cwiseAbs().rowwise().sum().maxCoeff()) + 1.0;
  const double step = hi / 4096.0;
  double upper = hi;
  double lower = hi - step;
  while (evaluate_polynomial(poly, lower) > 0.0) {
    upper = lower;
    lower -= step;
    if (lower < -hi) throw std::runtime_error("no real root found for bisection");
  }
  for (int it = 0; it < 200 && upper - lower > 0.0; ++it) {
    const double mid = 0.5 * (lower + upper);
    if (mid == lower || mid == upper) break;
    (evaluate_polynomial(poly, mid) > 0.0 ? upper : lower) = mid;
  }
  est.bisection = 0.5 * (lower + upper);
  est.alpha = est.power_iteration;
  est.residual = std::abs(evaluate_polynomial(poly, est.alpha));
  if (std::abs(est.power_iteration - est.bisection) > tol) {
    throw std::runtime_error("power iteration and bisection disagree");
  }
  return est;
}

double estimate_rho(const RecurrenceSeries& s, double alpha) {
  const auto i_max = static_cast<double>(s.values.size() - 1);
  const double c = s.values.back().convert_to<double>();
  return std::exp(std::log(c) - i_max * std::log(alpha));
}

BoundCheck verify_longrange_lower_bound(NodeId n, double r) {
  if (n < 9) throw std::invalid_argument("verify_longrange_lower_bound needs n >= 9");
  if (!(r >= 0.0 && r <= 2.0)) throw std::invalid_argument("r must be in [0, 2]");
  const NodeId side = lattice_side(n);
  BoundCheck check;
  check.n = n;
  check.r = r;
  // Enumerate every v' != u for u = (1,1); the torus makes every u identical.
  for (NodeId v = 1; v < n; ++v) {
    const NodeId dx = std::min(v % side, side - v % side);
    const NodeId dy = std::min(v / side, side - v / side);
    const Dist d = dx + dy;
    check.normalizer += std::pow(static_cast<double>(d), -r);
    check.max_distance = std::max(check.max_distance, d);
  }
  check.min_prob = std::pow(static_cast<double>(check.max_distance), -r) / check.normalizer;
  check.bound = 1.0 / (4.0 * n * std::log(static_cast<double>(n)));
  check.holds = check.min_prob >= check.bound;
  return check;
}

}  // namespace smallworld
