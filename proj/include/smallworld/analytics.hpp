#ifndef SMALLWORLD_ANALYTICS_HPP
#define SMALLWORLD_ANALYTICS_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "smallworld/graph.hpp"

namespace smallworld {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Collision-free ball growth counts C_0..C_imax of the Kleinberg model.
struct RecurrenceSeries {
  int p = 1;
  int q = 1;
  std::vector<BigRational> values;
  std::vector<double> ratios;  // ratios[i] = C_{i+1} / C_i

  /// Only valid when every value is integral (always true for q == 1).
  std::vector<BigInt> integers() const;
};

/// C_0 = 1 and C_{i+1} = C_i + sum_{j>=1} 4j C_{i-j}, evaluated by the direct
/// sum. Throws std::logic_error if the order-4 form
/// C_{i+1} = 2C_i + 4C_{i-1} + 2C_{i-2} + C_{i-3} disagrees for some i > 2.
RecurrenceSeries recurrence_c(int i_max);

/// C_0 = 1/q and C_{i+1} = q C_i + sum_{j>=1} (4p^2 (j - 1/2) + 2p) q C_{i-j},
/// cross-checked against the matching order-4 form for i > 2.
RecurrenceSeries recurrence_c_general(int p, int q, int i_max);

/// Order-4 coefficients (a1..a4) of C_{i+1} = a1 C_i + a2 C_{i-1} + a3 C_{i-2} + a4 C_{i-3}.
Eigen::Matrix<std::int64_t, 4, 1> recurrence_coefficients(int p, int q);

/// The 4x4 companion matrix whose first row holds the order-4 coefficients.
template <typename Scalar = double>
Eigen::Matrix<Scalar, 4, 4> companion_matrix(int p, int q) {
  if (p < 1 || q < 1) throw std::invalid_argument("companion_matrix requires p, q >= 1");
  Eigen::Matrix<Scalar, 4, 4> m = Eigen::Matrix<Scalar, 4, 4>::Zero();
  m.row(0) = recurrence_coefficients(p, q).template cast<Scalar>().transpose();
  m.template block<3, 3>(1, 0).setIdentity();
  return m;
}

/// Coefficients c_0..c_k of det(xI - M) = x^k + c_1 x^{k-1} + ... + c_k
/// (Faddeev-LeVerrier). c_0 is always 1.
template <typename Derived>
Eigen::VectorXd characteristic_polynomial(const Eigen::MatrixBase<Derived>& m) {
  const Eigen::Index k = m.rows();
  if (k != m.cols()) throw std::invalid_argument("matrix must be square");
  const Eigen::MatrixXd a = m.template cast<double>();
  Eigen::VectorXd coeffs(k + 1);
  coeffs(0) = 1.0;
  Eigen::MatrixXd aux = Eigen::MatrixXd::Identity(k, k);
  for (Eigen::Index i = 1; i <= k; ++i) {
    const Eigen::MatrixXd am = a * aux;
    coeffs(i) = -am.trace() / static_cast<double>(i);
    aux = am + coeffs(i) * Eigen::MatrixXd::Identity(k, k);
  }
  return coeffs;
}

/// Horner evaluation with coefficients ordered from the leading term.
double evaluate_polynomial(const Eigen::VectorXd& coeffs, double x);

struct AlphaEstimate {
  double alpha = 0.0;            // agreed value (power iteration)
  double power_iteration = 0.0;
  double bisection = 0.0;
  double residual = 0.0;         // |char_poly(alpha)|
  int iterations = 0;
};

/// Dominant eigenvalue of a non-negative irreducible matrix by power iteration,
/// and independently as the largest real root of its characteristic
/// polynomial by bisection. Throws std::runtime_error if power iteration
/// stalls or the two values differ by more than tol.
AlphaEstimate dominant_eigenvalue(const Eigen::MatrixXd& m, double tol = 1e-9);

template <typename Scalar>
AlphaEstimate dominant_eigenvalue(const Eigen::Matrix<Scalar, 4, 4>& m, double tol = 1e-9) {
  return dominant_eigenvalue(Eigen::MatrixXd(m.template cast<double>()), tol);
}

/// log_alpha(n): the scale at which Kleinberg distances concentrate.
inline double predict_ell(double n, double alpha) {
  if (n < 2.0 || alpha <= 1.0) throw std::invalid_argument("predict_ell needs n >= 2, alpha > 1");
  return std::log(n) / std::log(alpha);
}

/// C_imax / alpha^imax, an estimate of the constant in C_i ~ rho alpha^i.
double estimate_rho(const RecurrenceSeries& s, double alpha);

struct BoundCheck {
  NodeId n = 0;
  double r = 0.0;
  double normalizer = 0.0;  // sum over v' != u of d(u,v')^-r
  Dist max_distance = 0;
  double min_prob = 0.0;
  double bound = 0.0;       // 1 / (4 n ln n)
  bool holds = false;
};

/// Smallest single-target long-range probability on the torus against
/// 1/(4 n ln n), with the normalizer summed over every v' != u.
BoundCheck verify_longrange_lower_bound(NodeId n, double r);

}  // namespace smallworld

#endif  // SMALLWORLD_ANALYTICS_HPP
