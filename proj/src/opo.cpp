#include "tripsim/opo.hpp"

#include <cmath>
#include <stdexcept>

namespace tripsim {

namespace {

void validate(const OpoParams& p) {
  if (!(p.gamma_a > 0.0) || !(p.gamma_b > 0.0) || !(p.kappa > 0.0))
    throw std::invalid_argument("opo: gamma_a, gamma_b, kappa must be positive");
  if (!(p.epsilon >= 0.0))
    throw std::invalid_argument("opo: epsilon must be nonnegative");
}

}  // namespace

double critical_pump(const OpoParams& p) {
  validate(p);
  return p.gamma_a * p.gamma_b / p.kappa;
}

bool opo_near_threshold(const OpoParams& p) {
  return std::abs(p.epsilon / critical_pump(p) - 1.0) < 0.02;
}

SpectrumPoint opo_spectrum(const OpoParams& p, double omega, PumpBranch branch) {
  validate(p);
  const double ec = p.gamma_a * p.gamma_b / p.kappa;
  if (branch == PumpBranch::below && p.epsilon >= ec)
    throw std::invalid_argument("opo_spectrum: below-threshold branch requires epsilon < epsilon_c");
  if (branch == PumpBranch::above && p.epsilon <= ec)
    throw std::invalid_argument("opo_spectrum: above-threshold branch requires epsilon > epsilon_c");

  const double ga = p.gamma_a, gb = p.gamma_b;
  const double ke = p.kappa * p.epsilon;
  const double w2 = omega * omega;
  SpectrumPoint pt;
  pt.omega = omega;
  pt.near_threshold = opo_near_threshold(p);
  if (branch == PumpBranch::below) {
    const double num = 4.0 * ga * gb * ke;
    pt.s_x = 1.0 + num / ((ga * gb - ke) * (ga * gb - ke) + gb * gb * w2);
    pt.s_y = 1.0 - num / ((ga * gb + ke) * (ga * gb + ke) + gb * gb * w2);
  } else {
    const double num = 4.0 * ga * ga * (gb * gb + w2);
    const double dx = 2.0 * ga * gb - 2.0 * ke + w2;
    pt.s_x = 1.0 + num / (dx * dx + gb * gb * w2);
    const double dy = w2 - 2.0 * ke;
    const double damp = 2.0 * ga + gb;
    pt.s_y = 1.0 - num / (dy * dy + damp * damp * w2);
  }
  return pt;
}

}  // namespace tripsim
