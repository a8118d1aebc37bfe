#include <graphpde/admissible_space.hpp>

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace graphpde {

AdmissibleSpace::AdmissibleSpace(const calculus::OperatorContext& ctx, int m)
    : ctx_(ctx), m_(m), n_(ctx.graph().vertex_count()) {
  if (m < 1) throw Error(ErrorCode::InvalidParameters, "order m must be a positive integer");
  const auto interior = ctx.domain().interior();
  const std::size_t cols = interior.size();

  if (m == 1 || cols == 0) {
    dim_ = cols;
    basis_.assign(dim_ * n_, 0.0);
    for (std::size_t k = 0; k < dim_; ++k) basis_[k * n_ + interior[k]] = 1.0;
    return;
  }

  // Columns: constraint residuals of each interior indicator. Values on the
  // boundary are already zero, so only the higher-order conditions remain.
  std::vector<std::vector<double>> columns;
  columns.reserve(cols);
  std::vector<double> e(n_, 0.0);
  for (Index x : interior) {
    e[x] = 1.0;
    columns.push_back(calculus::boundary_constraint_residuals(ctx, e, m));
    e[x] = 0.0;
  }
  const std::size_t rows = columns.front().size();
  Eigen::MatrixXd c(static_cast<Eigen::Index>(std::max<std::size_t>(rows, 1)),
                    static_cast<Eigen::Index>(cols));
  c.setZero();
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < rows; ++i) {
      c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = columns[j][i];
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) >= 1e-12) ++rank;
  }
  const Eigen::MatrixXd& v = svd.matrixV();
  dim_ = cols - static_cast<std::size_t>(rank);
  basis_.assign(dim_ * n_, 0.0);
  for (std::size_t k = 0; k < dim_; ++k) {
    const Eigen::Index col = rank + static_cast<Eigen::Index>(k);
    // Fix the sign so the largest entry is positive (stable across runs).
    Eigen::Index arg = 0;
    v.col(col).cwiseAbs().maxCoeff(&arg);
    const double sign = v(arg, col) < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < cols; ++j) {
      double entry = sign * v(static_cast<Eigen::Index>(j), col);
      if (std::abs(entry) < 1e-14) entry = 0.0;
      basis_[k * n_ + interior[j]] = entry;
    }
  }
}

std::vector<double> AdmissibleSpace::to_field(std::span<const double> coords) const {
  std::vector<double> out(n_, 0.0);
  for (std::size_t k = 0; k < dim_; ++k) {
    const double c = coords[k];
    if (c == 0.0) continue;
    const double* e = basis_.data() + k * n_;
    for (std::size_t i = 0; i < n_; ++i) out[i] += c * e[i];
  }
  return out;
}

std::vector<double> AdmissibleSpace::coordinates(std::span<const double> field) const {
  std::vector<double> out(dim_, 0.0);
  for (std::size_t k = 0; k < dim_; ++k) {
    const double* e = basis_.data() + k * n_;
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += e[i] * field[i];
    out[k] = s;
  }
  return out;
}

double AdmissibleSpace::constraint_violation(std::span<const double> field) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!ctx_.domain().contains(i)) worst = std::max(worst, std::abs(field[i]));
  }
  for (double r : calculus::boundary_constraint_residuals(ctx_, field, m_)) {
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace graphpde
