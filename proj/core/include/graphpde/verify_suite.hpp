#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <graphpde/verify.hpp>

namespace graphpde {

enum class Suite { Oscillation, H, Sign, Oracle };

std::string_view to_string(Suite suite);
std::optional<Suite> parse_suite(std::string_view name);

/// Seed of instance i in a batch started from `seed`.
std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t i);

/// One randomized instance of a suite on a fixed domain:
///   Oscillation  random monotone g, shared h, two sources; solve both, compare
///   H            solve -Delta_p u = f, u = 0 on the boundary; 8 random H plus
///                the truncations H_n, n in {2, 8, 32} with n > 1/M
///   Sign         the same solution with M drawn in (0, ||u||_inf]
///   Oracle       random u, m in {1, 2, 3}, p in {1.5, 2, 3}; calculus vs
///                literal summation at every interior vertex
/// A solve that does not converge yields a single failed "solve" result.
std::vector<CheckResult> run_suite_instance(Suite suite, const Domain& d, double p,
                                            std::uint64_t seed);

}  // namespace graphpde
