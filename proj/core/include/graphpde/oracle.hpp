#pragma once

#include <cstdint>

#include <graphpde/calculus.hpp>

namespace graphpde {

/// Literal re-implementation of L_{m,p} u(x): dense weight matrix, nested
/// sums over all vertex pairs for every Laplacian, gradient form and slope.
/// Shares no operator code with the calculus module.
double oracle_mp_laplacian(const calculus::OperatorContext& ctx, const VertexFunction& u, int m,
                           double p, VertexId x);
double oracle_mp_laplacian_field(const calculus::OperatorContext& ctx, std::span<const double> u,
                                 int m, double p, Index x);

/// max over random admissible directions of ||u||_q / ||nabla^m u||_p: a
/// lower bound for the Sobolev constant.
double oracle_sobolev_constant(const Domain& d, int m, double p, double q, int samples,
                               std::uint64_t seed = 1);

}  // namespace graphpde
