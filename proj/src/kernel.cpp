// SPDX-License-Identifier: Apache-2.0
#include "oht/kernel.hpp"

#include <cmath>
#include <string>

#include "oht/errors.hpp"

namespace oht {

void KernelSpec::validate() const {
  if (!(std::isfinite(sigma0) && sigma0 > 0.0)) {
    throw ConfigError("kernel bandwidth sigma0 must be finite and positive, got " +
                      std::to_string(sigma0));
  }
}

std::string_view family_name(KernelFamily family) {
  switch (family) {
    case KernelFamily::gaussian:
      return "gaussian";
  }
  return "unknown";
}

double kernel_eval(const KernelSpec& spec, double x, double y) {
  spec.validate();
  switch (spec.family) {
    case KernelFamily::gaussian: {
      // (x - y) and (y - x) differ only in sign, so the square is identical.
      const double d = x - y;
      return std::exp(-spec.gamma() * (d * d));
    }
  }
  throw ConfigError("unsupported kernel family");
}

double kernel_bound(const KernelSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case KernelFamily::gaussian:
      return 1.0;
  }
  throw ConfigError("unsupported kernel family");
}

}  // namespace oht
