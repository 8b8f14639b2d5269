#include "tripsim/concurrent.hpp"

#include <cmath>
#include <stdexcept>

#include "tripsim/criteria.hpp"

namespace tripsim {

UndepletedPoint abcd(double tau) {
  if (tau < 0.0) throw std::invalid_argument("abcd: tau must be >= 0");
  const double c2 = std::cosh(2.0 * tau), s2 = std::sinh(2.0 * tau);
  const double c1 = std::cosh(tau), s1 = std::sinh(tau);
  return {tau, c2 + 2.0 * c1, s2 - 2.0 * s1, c2 - c1, s1 + s2};
}

MomentTable undepleted_moments(double tau) {
  const auto [t, a, b, c, d] = abcd(tau);
  (void)t;
  const double vx = ((a + b) * (a + b) + 2.0 * (c + d) * (c + d)) / 9.0;
  const double vy = ((a - b) * (a - b) + 2.0 * (c - d) * (c - d)) / 9.0;
  const double cx = (c + d) * (c + d + 2.0 * a + 2.0 * b) / 9.0;
  const double cy = (c - d) * (c - d + 2.0 * a - 2.0 * b) / 9.0;
  Eigen::Matrix3d vxx = Eigen::Matrix3d::Constant(cx);
  Eigen::Matrix3d vyy = Eigen::Matrix3d::Constant(cy);
  vxx.diagonal().setConstant(vx);
  vyy.diagonal().setConstant(vy);
  return MomentTable(vxx, vyy, Eigen::Matrix3d::Zero());
}

double v3_closed(double tau) {
  const auto [t, a, b, c, d] = abcd(tau);
  (void)t;
  return (5.0 * (a * a + b * b) + 8.0 * b * (d - 2.0 * c) +
          2.0 * a * (4.0 * c - 8.0 * d - b) + 14.0 * (c * c + d * d) -
          20.0 * c * d) /
         9.0;
}

EprCurvePoint epr_curves(double tau) {
  const MomentTable t = undepleted_moments(tau);
  const EprProduct one = epr_one_mode(t, 1, 2, 0, Sign::plus);
  const EprProduct two = epr_two_mode(t, 0, 1, 2, Sign::plus);
  return {one.product, two.product};
}

}  // namespace tripsim
