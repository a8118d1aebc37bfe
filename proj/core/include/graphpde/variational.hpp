#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <graphpde/admissible_space.hpp>
#include <graphpde/calculus.hpp>
#include <graphpde/nonlinearity.hpp>

namespace graphpde {

// ---------------------------------------------------------------------------
// Sobolev embedding constant

struct SobolevOptions {
  int restarts = 32;
  std::uint64_t seed = 0x5eed;
  int oracle_samples = 2000;
};

struct SobolevResult {
  double constant = 0.0;
  /// True for finite q, where the value comes from ascent and is only
  /// certified from below.
  bool lower_bound = false;
  /// q = infinity: the vertex where the maximal point value is attained.
  VertexId argmax = 0;
  /// A function with ||nabla^m u||_p = 1 attaining the constant.
  VertexFunction maximizer;
  /// Best ratio found by pure random sampling (finite q only).
  double sampled_lower_bound = 0.0;
};

/// Best constant C with ||u||_q <= C ||nabla^m u||_p on W^{m,p}_0(Omega).
/// q = infinity is solved per vertex as the dual of a minimum-norm problem;
/// finite q is maximized by ascent from the q = infinity maximizer plus
/// seeded restarts. Throws DegenerateDomain when the space is trivial.
SobolevResult sobolev_constant_detailed(const Domain& d, int m, double p, double q,
                                        const SobolevOptions& options = {});
double sobolev_constant(const Domain& d, int m, double p, double q);

// ---------------------------------------------------------------------------
// Threshold

/// rho^{p-1} / (C normA + C^{q+1} normB rho^q).
double lambda_rho(double rho, double p, double q, double C, double normA, double normB);

struct Threshold {
  double Lambda = 0.0;
  double rho_star = 0.0;  // +infinity in the limit case q = p - 1
};

/// sup over rho > 0 of lambda_rho. Throws InvalidParameters.
Threshold threshold_Lambda(double p, double q, double C, double normA, double normB);

// ---------------------------------------------------------------------------
// Energy

/// E(u) = Phi(u)^p / p - lambda int_Omega F(x, u) dm on W^{m,p}_0(Omega),
/// Phi(u) = ||nabla^m u||_p.
class EnergyFunctional {
 public:
  EnergyFunctional(Domain d, int m, double p, double lambda, Nonlinearity f);

  const calculus::OperatorContext& context() const noexcept { return ctx_; }
  const Domain& domain() const noexcept { return ctx_.domain(); }
  const AdmissibleSpace& space() const noexcept { return *space_; }
  const Nonlinearity& nonlinearity() const noexcept { return f_; }
  int order() const noexcept { return m_; }
  double exponent() const noexcept { return p_; }
  double lambda() const noexcept { return lambda_; }

  // Dense-field forms (fields are indexed by graph Index, zero off Omega).
  double phi(std::span<const double> field) const;
  double value(std::span<const double> field) const;
  /// Entry x (x in Omega) is mp_bilinear(u, e_x) - lambda m(x) f(x, u(x)):
  /// pairing with an admissible phi gives E'(u)[phi].
  std::vector<double> gradient(std::span<const double> field) const;

  // Coordinate forms on the admissible space.
  double value_coords(const std::vector<double>& c) const { return value(space_->to_field(c)); }
  std::vector<double> gradient_coords(const std::vector<double>& c) const;

 private:
  calculus::OperatorContext ctx_;
  std::shared_ptr<const AdmissibleSpace> space_;
  int m_;
  double p_;
  double lambda_;
  Nonlinearity f_;
};

/// Throws ConstraintViolation when u is not in W^{m,p}_0(Omega).
double energy_value(const EnergyFunctional& ef, const VertexFunction& u);
/// The gradient on Omega in the dual-pairing sense (see EnergyFunctional).
VertexFunction energy_gradient(const EnergyFunctional& ef, const VertexFunction& u);

struct BallOptions {
  int random_starts = 8;
  std::uint64_t seed = 0;
  double grad_tol = 1e-10;
  int max_iterations = 0;  // per start; 0 means 500 * dim
};

struct BallMinimum {
  VertexFunction u;
  std::vector<double> field;
  bool interior = false;
  double energy = 0.0;
  double phi = 0.0;
  double projected_gradient = 0.0;
  int iterations = 0;
  bool max_iterations_hit = false;
  std::vector<double> energy_trace;
};

/// Approximate minimizer of E over {Phi <= rho}: projected descent with
/// Armijo backtracking (Newton steps while strictly inside the ball), run
/// from u = 0 and seeded random starts; ties go to lower energy, then
/// smaller Phi, then lexicographically smaller values.
BallMinimum minimize_on_ball(const EnergyFunctional& ef, double rho, const BallOptions& options = {});

}  // namespace graphpde
