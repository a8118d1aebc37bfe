#pragma once

#include <span>
#include <vector>

#include <graphpde/calculus.hpp>

namespace graphpde {

/// The finite-dimensional space W^{m,p}_0(Omega): fields supported on Omega
/// with |nabla^k u| = 0 on the boundary for k < m. Stored as an orthonormal
/// basis of dense fields. For m = 1 the basis is the coordinate basis of the
/// interior; for m >= 2 it is the null space of the linear boundary
/// conditions (singular values below 1e-12 count as zero).
class AdmissibleSpace {
 public:
  AdmissibleSpace(const calculus::OperatorContext& ctx, int m);

  int order() const noexcept { return m_; }
  std::size_t dimension() const noexcept { return dim_; }
  std::size_t field_size() const noexcept { return n_; }

  /// Dense field sum_k c_k e_k.
  std::vector<double> to_field(std::span<const double> coords) const;
  /// Orthogonal projection coordinates <e_k, u>.
  std::vector<double> coordinates(std::span<const double> field) const;
  /// Pulls a dual vector (indexed like a field) back to coordinates.
  std::vector<double> pull_back(std::span<const double> dual) const { return coordinates(dual); }

  std::span<const double> basis_vector(std::size_t k) const {
    return {basis_.data() + k * n_, n_};
  }

  /// Largest boundary-condition residual of a field.
  double constraint_violation(std::span<const double> field) const;

 private:
  calculus::OperatorContext ctx_;
  int m_;
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> basis_;  // dim_ blocks of n_ entries
};

}  // namespace graphpde
