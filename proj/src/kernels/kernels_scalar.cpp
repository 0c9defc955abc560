#include <cmath>
#include <span>

#include "kernels/tables.hpp"
#include "lindley/numerics.hpp"

namespace lindley::kernels::detail {

namespace {

void t_statistic(std::span<const double> xbar, double theta0, double scale,
                 std::span<double> out) {
  for (std::size_t i = 0; i < xbar.size(); ++i) out[i] = scale * (xbar[i] - theta0);
}

void log_bf_lindley(std::span<const double> t, double n, std::span<double> out) {
  const double head = 0.5 * std::log1p(n);
  const double coef = n / (2.0 * (1.0 + n));
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = head - coef * (t[i] * t[i]);
}

void normal_cdf(std::span<const double> x, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = numerics::std_normal_cdf(x[i]);
}

void two_sided_p(std::span<const double> t, std::span<double> out) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    out[i] = std::erfc(std::abs(t[i]) / numerics::kSqrt2);
  }
}

void severity(std::span<const double> theta1, double xbar, double scale, std::span<double> out) {
  for (std::size_t i = 0; i < theta1.size(); ++i) {
    out[i] = numerics::std_normal_cdf(scale * (xbar - theta1[i]));
  }
}

void hyvarinen_normal(std::span<const double> x, double mean, double variance,
                      std::span<double> out) {
  const double inv = 1.0 / variance;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = (x[i] - mean) * inv;
    out[i] = d * d - 2.0 * inv;
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static constexpr KernelTable kTable{SimdLevel::kScalar, t_statistic,  log_bf_lindley,
                                      normal_cdf,         two_sided_p,  severity,
                                      hyvarinen_normal};
  return kTable;
}

}  // namespace lindley::kernels::detail
