#pragma once

// Numeric substrate: normal distribution functions, log-gamma/log-beta,
// bracketed root finding, adaptive quadrature and counter-based random
// streams. Everything here is a pure function of its arguments except
// RngStream, which is a small value type owning its counter.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace lindley::numerics {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kLogSqrt2Pi = 0.91893853320467274178;

/// Standard normal cumulative distribution function, evaluated through the
/// complementary error function so both tails keep full relative precision.
double std_normal_cdf(double x);

/// Upper tail 1 - Phi(x) without cancellation.
double std_normal_sf(double x);

double std_normal_pdf(double x);
double std_normal_log_pdf(double x);

/// Inverse of std_normal_cdf. Throws std::domain_error unless 0 < p < 1.
double std_normal_quantile(double p);

/// Density of N(mean, variance) at x, and its logarithm.
double normal_pdf(double x, double mean, double variance);
double normal_log_pdf(double x, double mean, double variance);

/// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

/// ln B(a, b) for a, b > 0. Symmetric in its arguments bit-for-bit.
double log_beta(double a, double b);

struct Bracket {
  double lo;
  double hi;

  double width() const { return hi - lo; }
};

/// Raised when geometric bracket expansion never sees the target crossed.
class NoCrossing : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when adaptive quadrature exhausts its refinement depth.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxBracketDoublings = 1100;

/// Expands [lo, lo + w), doubling w, until f - target changes sign across the
/// bracket. f must be monotone on [lo, inf).
template <std::invocable<double> F>
Bracket expand_bracket(F&& f, double lo, double target) {
  const double f_lo = f(lo) - target;
  if (f_lo == 0.0) return {lo, lo};
  double step = std::max(1.0, std::abs(lo));
  double prev = lo;
  for (int i = 0; i < kMaxBracketDoublings; ++i) {
    const double hi = lo + step;
    if (!std::isfinite(hi)) break;
    const double f_hi = f(hi) - target;
    if (std::isnan(f_hi)) break;
    if ((f_hi >= 0.0) != (f_lo >= 0.0) || f_hi == 0.0) return {prev, hi};
    prev = hi;
    step *= 2.0;
  }
  throw NoCrossing("no crossing of target " + std::to_string(target) +
                   " found after bracket expansion from " + std::to_string(lo));
}

/// Bisection on a bracket known to straddle the target.
template <std::invocable<double> F>
double bisect(F&& f, Bracket b, double target, double tol) {
  if (b.lo == b.hi) return b.lo;
  const bool rising_at_lo = (f(b.lo) - target) < 0.0;
  double lo = b.lo;
  double hi = b.hi;
  for (int i = 0; i < 2000; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    const double g = f(mid) - target;
    if (std::abs(g) <= tol) return mid;
    if ((g < 0.0) == rising_at_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid))) {
      return lo + 0.5 * (hi - lo);
    }
  }
  return lo + 0.5 * (hi - lo);
}

/// Solves f(x) = target for x >= lo where f is continuous and strictly
/// monotone on [lo, inf): geometric bracket expansion, then bisection until
/// |f(x) - target| <= tol or the bracket collapses to machine width.
template <std::invocable<double> F>
double find_crossing(F&& f, double lo, double target, double tol) {
  const Bracket b = expand_bracket(f, lo, target);
  return bisect(f, b, target, tol);
}

/// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b] to absolute
/// tolerance tol. Throws QuadratureError if an interval still fails the
/// tolerance at maximum depth.
double quadrature_impl(double (*thunk)(const void*, double), const void* ctx, double a, double b,
                       double tol);

template <std::invocable<double> F>
double quadrature(F&& f, double a, double b, double tol) {
  using Fn = std::remove_reference_t<F>;
  auto thunk = [](const void* ctx, double x) -> double {
    return (*static_cast<const Fn*>(ctx))(x);
  };
  return quadrature_impl(thunk, static_cast<const void*>(&f), a, b, tol);
}

/// Counter-based random stream. The pair (seed, stream_id) selects a key and
/// an odd Weyl increment; draw k is a 64-bit finalizer applied to
/// key + k * increment. Identical pairs give identical sequences; distinct
/// stream ids give unrelated sequences.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  /// Uniform on (0, 1].
  double uniform();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t key_;
  std::uint64_t increment_;
  std::uint64_t counter_ = 0;
};

/// Standard normal variate via Box-Muller; consumes two uniforms per call.
double normal_draw(RngStream& stream);

}  // namespace lindley::numerics
