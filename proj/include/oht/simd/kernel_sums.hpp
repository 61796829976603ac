// SPDX-License-Identifier: Apache-2.0
#pragma once

// Gaussian kernel sums, the inner loops of every MMD statistic.
//
// Each entry point exists as a scalar reference and, where the build and the
// host CPU allow it, an AVX2+FMA variant. The public functions in oht::simd route
// to the active variant, which is chosen once at startup from CPU features and
// may be overridden for testing. Both variants use compensated (Kahan)
// accumulation; their results agree to ~1e-15 relative but are not bit-equal.

#include <span>
#include <string_view>

namespace oht::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// True when the variant was compiled in and the running CPU supports it.
bool isa_supported(Isa isa);

Isa active_isa();

/// Switch the dispatch target. Throws ConfigError if unsupported.
void set_active_isa(Isa isa);

/// Sum over i < j of exp(-gamma (x_i - x_j)^2).
double gaussian_pair_sum(std::span<const double> x, double gamma);

/// Sum over all (i, j) of exp(-gamma (x_i - y_j)^2), outer loop over x.
double gaussian_cross_sum(std::span<const double> x, std::span<const double> y, double gamma);

namespace scalar {
double gaussian_pair_sum(std::span<const double> x, double gamma);
double gaussian_cross_sum(std::span<const double> x, std::span<const double> y, double gamma);
}  // namespace scalar

namespace avx2 {
double gaussian_pair_sum(std::span<const double> x, double gamma);
double gaussian_cross_sum(std::span<const double> x, std::span<const double> y, double gamma);
/// Vector exp on four lanes, exposed for accuracy tests. Writes out[k] = exp(in[k]).
void exp4(const double* in, double* out);
}  // namespace avx2

}  // namespace oht::simd
