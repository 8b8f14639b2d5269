#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace tripsim {

enum class Axis { X, Y };

// Mode identity inside a table: a 0-based index plus an optional display
// name. Indices must be unique within one table.
struct ModeLabel {
  int index = 0;
  std::string name;
};

// Quadrature convention used everywhere in this library:
//   X = a + a^dag,  Y = -i(a - a^dag),  vacuum variance V(X) = V(Y) = 1.
// A squeezer with parameter r puts exp(-r) on the squeezed axis and exp(+r)
// on the conjugate axis, so the product stays at the uncertainty minimum.
struct SqueezerSpec {
  double r = 0.0;
  Axis axis = Axis::X;
};

// Symmetric second-moment store for N labelled modes: the X-X, Y-Y and X-Y
// covariance blocks, with all means taken to be zero. Immutable after
// construction; all operations on tables are pure functions.
class MomentTable {
 public:
  // Full-block constructor. vxx/vyy must be symmetric with nonnegative
  // diagonals; the cross block vxy is kept for generality (it is zero for
  // every state this library constructs).
  MomentTable(Eigen::MatrixXd vxx, Eigen::MatrixXd vyy, Eigen::MatrixXd vxy);

  static MomentTable vacuum(int n_modes);
  static MomentTable squeezed(const SqueezerSpec& spec);  // single mode
  // Uncorrelated modes with the given (V(X), V(Y)) pairs on the diagonal.
  static MomentTable from_variance_pairs(const std::vector<std::pair<double, double>>& sxsy);
  static MomentTable from_specs(const std::vector<SqueezerSpec>& specs);

  int n_modes() const { return static_cast<int>(vxx_.rows()); }

  double xx(int i, int j) const { check_index(i); check_index(j); return vxx_(i, j); }
  double yy(int i, int j) const { check_index(i); check_index(j); return vyy_(i, j); }
  double xy(int i, int j) const { check_index(i); check_index(j); return vxy_(i, j); }

  const Eigen::MatrixXd& xx_block() const { return vxx_; }
  const Eigen::MatrixXd& yy_block() const { return vyy_; }
  const Eigen::MatrixXd& xy_block() const { return vxy_; }

  // Copy of the table carrying the given labels (one per mode, indices
  // unique); labels default to the bare 0-based indices.
  MomentTable with_labels(std::vector<ModeLabel> labels) const;
  const ModeLabel& label(int i) const;

  // Variance of the linear combination sum_i c_i * A_i of one quadrature type.
  double combination_variance(Axis axis, const Eigen::VectorXd& c) const;
  // Covariance of two such combinations.
  double combination_covariance(Axis axis, const Eigen::VectorXd& c1,
                                const Eigen::VectorXd& c2) const;

  bool has_nonzero_xy(double tol = 1e-12) const;

 private:
  void check_index(int i) const;

  Eigen::MatrixXd vxx_, vyy_, vxy_;
  std::vector<ModeLabel> labels_;
};

// Second-moment propagation through a real mode-mixing matrix applied
// identically to both quadratures (passive network): V -> m V m^T per block.
MomentTable linear_transform(const MomentTable& t, const Eigen::MatrixXd& m);

}  // namespace tripsim
