#pragma once

// Batch kernels for the element-wise inner loops of simulations, tables and
// curves. Every kernel has a scalar reference implementation; wider variants
// are compiled separately and chosen at runtime from the CPU's capabilities.
// Variants agree with the scalar reference to a few ulps (see
// tests/test_kernels.cpp for the pinned bounds).

#include <cstddef>
#include <span>
#include <string_view>

namespace lindley::kernels {

enum class SimdLevel { kScalar, kAvx2 };

std::string_view to_string(SimdLevel level);

/// Widest level both compiled in and supported by the running CPU.
SimdLevel detected_level();

/// Level used by active(); detected_level() unless LINDLEY_SIMD=scalar is set
/// in the environment or force_level() was called.
SimdLevel active_level();
void force_level(SimdLevel level);

/// True when the variant for `level` exists in this build and can run here.
bool available(SimdLevel level);

struct KernelTable {
  SimdLevel level;

  /// out[i] = scale * (xbar[i] - theta0)
  void (*t_statistic)(std::span<const double> xbar, double theta0, double scale,
                      std::span<double> out);

  /// out[i] = ln B01 of the unit-information normal test at sample size n:
  /// 0.5 * ln(1 + n) - n t[i]^2 / (2 (1 + n)).
  void (*log_bf_lindley)(std::span<const double> t, double n, std::span<double> out);

  /// out[i] = Phi(x[i])
  void (*normal_cdf)(std::span<const double> x, std::span<double> out);

  /// out[i] = 2 (1 - Phi(|t[i]|))
  void (*two_sided_p)(std::span<const double> t, std::span<double> out);

  /// out[i] = Phi(scale * (xbar - theta1[i])); severity along a theta1 grid.
  void (*severity)(std::span<const double> theta1, double xbar, double scale,
                   std::span<double> out);

  /// Hyvarinen penalty of N(mean, variance) at x[i]:
  /// -2 / variance + (x[i] - mean)^2 / variance^2.
  void (*hyvarinen_normal)(std::span<const double> x, double mean, double variance,
                           std::span<double> out);
};

/// Table for a specific level. Throws std::invalid_argument if that level is
/// not available.
const KernelTable& table(SimdLevel level);

const KernelTable& active();

}  // namespace lindley::kernels
