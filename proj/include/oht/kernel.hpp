// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

namespace oht {

enum class KernelFamily { gaussian };

/// Positive-definite kernel on the real line. Only the Gaussian family ships;
/// any new family must also provide its supremum in kernel_bound().
struct KernelSpec {
  KernelFamily family = KernelFamily::gaussian;
  double sigma0 = 1.0;  ///< bandwidth, in sample units

  static KernelSpec gaussian(double sigma0) { return {KernelFamily::gaussian, sigma0}; }

  /// Throws ConfigError unless sigma0 is finite and positive.
  void validate() const;

  /// Coefficient g in k(x, y) = exp(-g (x - y)^2).
  double gamma() const { return 1.0 / (2.0 * sigma0 * sigma0); }

  bool operator==(const KernelSpec&) const = default;
};

std::string_view family_name(KernelFamily family);

/// k(x, y). Symmetric bit-for-bit in (x, y).
double kernel_eval(const KernelSpec& spec, double x, double y);

/// K0 := sup_{x,y} |k(x, y)|; equals 1 for the Gaussian family at any bandwidth.
double kernel_bound(const KernelSpec& spec);

}  // namespace oht
