#include "tripsim/moment_table.hpp"

#include <cmath>
#include <stdexcept>

namespace tripsim {

namespace {

void require_symmetric(const Eigen::MatrixXd& m, const char* name) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::invalid_argument(std::string(name) + " block is not symmetric");
}

}  // namespace

MomentTable::MomentTable(Eigen::MatrixXd vxx, Eigen::MatrixXd vyy, Eigen::MatrixXd vxy)
    : vxx_(std::move(vxx)), vyy_(std::move(vyy)), vxy_(std::move(vxy)) {
  const auto n = vxx_.rows();
  if (n < 1) throw std::invalid_argument("moment table needs at least one mode");
  if (vxx_.cols() != n || vyy_.rows() != n || vyy_.cols() != n ||
      vxy_.rows() != n || vxy_.cols() != n)
    throw std::invalid_argument("moment table blocks must be square and equally sized");
  require_symmetric(vxx_, "vxx");
  require_symmetric(vyy_, "vyy");
  // Exact symmetry after the tolerance check, so downstream quadratic forms
  // do not depend on evaluation order.
  vxx_ = ((vxx_ + vxx_.transpose()) / 2.0).eval();
  vyy_ = ((vyy_ + vyy_.transpose()) / 2.0).eval();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (vxx_(i, i) < 0.0 || vyy_(i, i) < 0.0)
      throw std::invalid_argument("moment table diagonal variance is negative");
  }
  labels_.reserve(n);
  for (Eigen::Index i = 0; i < n; ++i)
    labels_.push_back({static_cast<int>(i), std::string()});
}

MomentTable MomentTable::with_labels(std::vector<ModeLabel> labels) const {
  if (static_cast<int>(labels.size()) != n_modes())
    throw std::invalid_argument("with_labels: one label per mode required");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (labels[i].index == labels[j].index)
        throw std::invalid_argument("with_labels: mode indices must be unique");
    }
  }
  MomentTable out = *this;
  out.labels_ = std::move(labels);
  return out;
}

const ModeLabel& MomentTable::label(int i) const {
  check_index(i);
  return labels_[static_cast<std::size_t>(i)];
}

MomentTable MomentTable::vacuum(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("vacuum: mode count must be >= 1");
  return MomentTable(Eigen::MatrixXd::Identity(n_modes, n_modes),
                     Eigen::MatrixXd::Identity(n_modes, n_modes),
                     Eigen::MatrixXd::Zero(n_modes, n_modes));
}

MomentTable MomentTable::squeezed(const SqueezerSpec& spec) {
  if (spec.r < 0.0) throw std::invalid_argument("squeezed: r must be >= 0");
  const double reduced = std::exp(-spec.r);
  const double enlarged = std::exp(spec.r);
  const double sx = spec.axis == Axis::X ? reduced : enlarged;
  const double sy = spec.axis == Axis::X ? enlarged : reduced;
  return from_variance_pairs({{sx, sy}});
}

MomentTable MomentTable::from_variance_pairs(
    const std::vector<std::pair<double, double>>& sxsy) {
  const int n = static_cast<int>(sxsy.size());
  if (n < 1) throw std::invalid_argument("from_variance_pairs: empty input");
  Eigen::MatrixXd vxx = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd vyy = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    vxx(i, i) = sxsy[i].first;
    vyy(i, i) = sxsy[i].second;
  }
  return MomentTable(std::move(vxx), std::move(vyy), Eigen::MatrixXd::Zero(n, n));
}

MomentTable MomentTable::from_specs(const std::vector<SqueezerSpec>& specs) {
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(specs.size());
  for (const auto& s : specs) {
    if (s.r < 0.0) throw std::invalid_argument("from_specs: r must be >= 0");
    const double reduced = std::exp(-s.r);
    const double enlarged = std::exp(s.r);
    pairs.emplace_back(s.axis == Axis::X ? reduced : enlarged,
                       s.axis == Axis::X ? enlarged : reduced);
  }
  return from_variance_pairs(pairs);
}

double MomentTable::combination_variance(Axis axis, const Eigen::VectorXd& c) const {
  return combination_covariance(axis, c, c);
}

double MomentTable::combination_covariance(Axis axis, const Eigen::VectorXd& c1,
                                           const Eigen::VectorXd& c2) const {
  if (c1.size() != n_modes() || c2.size() != n_modes())
    throw std::invalid_argument("combination vector size does not match mode count");
  const Eigen::MatrixXd& block = axis == Axis::X ? vxx_ : vyy_;
  return c1.dot(block * c2);
}

bool MomentTable::has_nonzero_xy(double tol) const {
  return vxy_.cwiseAbs().maxCoeff() > tol;
}

void MomentTable::check_index(int i) const {
  if (i < 0 || i >= n_modes()) throw std::out_of_range("mode index out of range");
}

MomentTable linear_transform(const MomentTable& t, const Eigen::MatrixXd& m) {
  const int n = t.n_modes();
  if (m.rows() != n || m.cols() != n)
    throw std::invalid_argument("linear_transform: matrix dimension mismatch");
  Eigen::MatrixXd vxx = m * t.xx_block() * m.transpose();
  Eigen::MatrixXd vyy = m * t.yy_block() * m.transpose();
  Eigen::MatrixXd vxy = m * t.xy_block() * m.transpose();
  vxx = ((vxx + vxx.transpose()) / 2.0).eval();
  vyy = ((vyy + vyy.transpose()) / 2.0).eval();
  return MomentTable(std::move(vxx), std::move(vyy), std::move(vxy));
}

}  // namespace tripsim
