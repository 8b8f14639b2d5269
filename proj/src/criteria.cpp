#include "tripsim/criteria.hpp"

#include <cmath>
#include <stdexcept>

namespace tripsim {

namespace {

void require_three_modes(const MomentTable& t, const char* who) {
  if (t.n_modes() != 3)
    throw std::invalid_argument(std::string(who) + ": table must have exactly 3 modes");
}

Eigen::VectorXd unit(int n, int i) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  v(i) = 1.0;
  return v;
}

Eigen::VectorXd combo(int n, int j, int k, Sign sign) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  v(j) = 1.0;
  v(k) = sign_value(sign);
  return v;
}

constexpr double kDegenerateTol = 1e-300;

}  // namespace

VlfTriplet vlf_triplet(const MomentTable& t) {
  require_three_modes(t, "vlf_triplet");
  const Eigen::VectorXd ysum = Eigen::VectorXd::Ones(3);
  const double vy = t.combination_variance(Axis::Y, ysum);
  const auto diff = [&](int i, int j) {
    return t.combination_variance(Axis::X, combo(3, i, j, Sign::minus));
  };
  return {diff(0, 1) + vy, diff(0, 2) + vy, diff(1, 2) + vy};
}

double duan_pair(const MomentTable& t, int i, int j) {
  const int n = t.n_modes();
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw std::out_of_range("duan_pair: mode index out of range");
  if (i == j) throw std::invalid_argument("duan_pair: modes must differ");
  return t.combination_variance(Axis::X, combo(n, i, j, Sign::minus)) +
         t.combination_variance(Axis::Y, combo(n, i, j, Sign::plus));
}

InferenceGain optimal_gain(const MomentTable& t, Axis axis, int target, int j,
                           int k, Sign sign) {
  require_three_modes(t, "optimal_gain");
  if (target == j || target == k || j == k)
    throw std::invalid_argument("optimal_gain: mode indices must be distinct");
  const Eigen::VectorXd ei = unit(3, target);
  const Eigen::VectorXd cjk = combo(3, j, k, sign);
  const double denom = t.combination_variance(axis, cjk);
  if (std::abs(denom) < kDegenerateTol)
    throw std::domain_error("optimal_gain: degenerate inference, zero combination variance");
  const double cov = t.combination_covariance(axis, ei, cjk);
  const double a_min = cov / denom;
  const double vinf = t.combination_variance(axis, ei) - cov * cov / denom;
  return {a_min, vinf};
}

EprProduct epr_two_mode(const MomentTable& t, int target, int j, int k, Sign sign) {
  const auto gx = optimal_gain(t, Axis::X, target, j, k, sign);
  const auto gy = optimal_gain(t, Axis::Y, target, j, k, sign);
  return {gx.variance_at_min, gy.variance_at_min,
          gx.variance_at_min * gy.variance_at_min};
}

EprProduct epr_one_mode(const MomentTable& t, int j, int k, int inferring, Sign sign) {
  require_three_modes(t, "epr_one_mode");
  if (inferring == j || inferring == k || j == k)
    throw std::invalid_argument("epr_one_mode: mode indices must be distinct");
  const auto infer = [&](Axis axis) {
    const double denom =
        t.combination_variance(axis, unit(3, inferring));
    if (std::abs(denom) < kDegenerateTol)
      throw std::domain_error("epr_one_mode: degenerate inference, zero mode variance");
    const double covj = axis == Axis::X ? t.xx(inferring, j) : t.yy(inferring, j);
    const double covk = axis == Axis::X ? t.xx(inferring, k) : t.yy(inferring, k);
    const double cov = covj + sign_value(sign) * covk;
    return t.combination_variance(axis, combo(3, j, k, sign)) - cov * cov / denom;
  };
  const double vx = infer(Axis::X);
  const double vy = infer(Axis::Y);
  return {vx, vy, vx * vy};
}

CriterionReport full_report(const MomentTable& t) {
  require_three_modes(t, "full_report");
  CriterionReport r;

  const auto vlf = vlf_triplet(t);
  r.v12 = vlf.v12;
  r.v13 = vlf.v13;
  r.v23 = vlf.v23;
  r.vlf_violated = {vlf.v12 < kVlfBound, vlf.v13 < kVlfBound, vlf.v23 < kVlfBound};
  int n_violated = 0;
  for (bool v : r.vlf_violated) n_violated += v ? 1 : 0;
  r.vlf_confirmed = n_violated >= 2;

  const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  for (int p = 0; p < 3; ++p) {
    const auto [i, j] = pairs[p];
    const double value = duan_pair(t, i, j);
    r.duan[p] = {i, j, value, value < kDuanBound};
  }

  const auto best_sign = [](auto&& eval) {
    const EprProduct plus = eval(Sign::plus);
    const EprProduct minus = eval(Sign::minus);
    return plus.product <= minus.product ? std::pair{plus, Sign::plus}
                                         : std::pair{minus, Sign::minus};
  };

  r.epr_two_confirmed = true;
  r.epr_one_confirmed = true;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const auto [two, sign2] =
        best_sign([&](Sign s) { return epr_two_mode(t, i, j, k, s); });
    r.epr_two_mode[i] = {i, j, k, sign2, two.vinf_x, two.vinf_y, two.product,
                         two.product < kEprTwoModeBound};
    r.epr_two_confirmed = r.epr_two_confirmed && two.product < kEprTwoModeBound;

    const auto [one, sign1] =
        best_sign([&](Sign s) { return epr_one_mode(t, j, k, i, s); });
    r.epr_one_mode[i] = {j, k, i, sign1, one.vinf_x, one.vinf_y, one.product,
                         one.product < kEprOneModeBound};
    r.epr_one_confirmed = r.epr_one_confirmed && one.product < kEprOneModeBound;
  }
  r.tripartite_confirmed = r.vlf_confirmed || r.epr_two_confirmed || r.epr_one_confirmed;

  const auto close = [](double a, double b) {
    return std::abs(a - b) <= 1e-10 * std::max({1.0, std::abs(a), std::abs(b)});
  };
  r.permutation_symmetric =
      close(r.v12, r.v13) && close(r.v13, r.v23) &&
      close(r.epr_two_mode[0].product, r.epr_two_mode[1].product) &&
      close(r.epr_two_mode[1].product, r.epr_two_mode[2].product) &&
      close(r.epr_one_mode[0].product, r.epr_one_mode[1].product) &&
      close(r.epr_one_mode[1].product, r.epr_one_mode[2].product);

  r.vxy_nonzero = t.has_nonzero_xy();
  return r;
}

}  // namespace tripsim
