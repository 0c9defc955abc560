// AVX2 + FMA variants, 4 doubles per lane group. Tails shorter than one lane
// group fall through to the scalar table so results at the edges are the
// reference values.
//
// Compiled with -mavx2 -mfma.

#include <immintrin.h>

#include <cmath>
#include <cstdint>
#include <span>

#include "kernels/tables.hpp"

namespace lindley::kernels::detail {

namespace {

#include "kernels/erfcx_table.inc"

constexpr std::size_t kLane = 4;

// Exact double -> int64 for |v| < 2^51 and integral v.
inline __m256i to_int64(__m256d v) {
  const __m256d magic = _mm256_set1_pd(0x1.8p52);
  return _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(v, magic)),
                          _mm256_castpd_si256(magic));
}

// 2^k for integral k in [-1022, 1023].
inline __m256d pow2(__m256d k) {
  const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(to_int64(k), _mm256_set1_epi64x(1023)), 52);
  return _mm256_castsi256_pd(bits);
}

// exp(r) for r in [-745, 0]. Range reduction by ln 2 with a split constant,
// degree-13 Taylor polynomial on |f| <= ln(2)/2, and the 2^n scale applied in
// two halves so subnormal results round once instead of flushing.
inline __m256d exp_nonpositive(__m256d r) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
  const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);

  r = _mm256_max_pd(r, _mm256_set1_pd(-745.0));
  const __m256d n = _mm256_round_pd(_mm256_mul_pd(r, log2e),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d f = _mm256_fnmadd_pd(n, ln2_hi, r);
  f = _mm256_fnmadd_pd(n, ln2_lo, f);

  static constexpr double kInvFactorial[14] = {
      1.0,
      1.0,
      1.0 / 2,
      1.0 / 6,
      1.0 / 24,
      1.0 / 120,
      1.0 / 720,
      1.0 / 5040,
      1.0 / 40320,
      1.0 / 362880,
      1.0 / 3628800,
      1.0 / 39916800,
      1.0 / 479001600,
      1.0 / 6227020800.0,
  };
  __m256d p = _mm256_set1_pd(kInvFactorial[13]);
  for (int k = 12; k >= 0; --k) p = _mm256_fmadd_pd(p, f, _mm256_set1_pd(kInvFactorial[k]));

  const __m256d n1 = _mm256_round_pd(_mm256_mul_pd(n, _mm256_set1_pd(0.5)),
                                     _MM_FROUND_TO_NEG_INF | _MM_FROUND_NO_EXC);
  const __m256d n2 = _mm256_sub_pd(n, n1);
  return _mm256_mul_pd(_mm256_mul_pd(p, pow2(n1)), pow2(n2));
}

// erfc(a) for a >= 0 (NaN propagates). erfcx from the piecewise table times
// exp(-a^2), with the rounding residue of a^2 folded back in.
inline __m256d erfc_nonneg(__m256d a) {
  const __m256d limit = _mm256_set1_pd(kErfcxWidth * kErfcxIntervals);
  const __m256d nan_mask = _mm256_cmp_pd(a, a, _CMP_UNORD_Q);
  const __m256d beyond = _mm256_cmp_pd(a, limit, _CMP_GE_OQ);
  const __m256d clamped = _mm256_min_pd(a, limit);  // NaN -> limit

  const __m256d inv_width = _mm256_set1_pd(1.0 / kErfcxWidth);
  __m256d cell = _mm256_floor_pd(_mm256_mul_pd(clamped, inv_width));
  cell = _mm256_min_pd(cell, _mm256_set1_pd(kErfcxIntervals - 1));
  const __m256d mid =
      _mm256_fmadd_pd(cell, _mm256_set1_pd(kErfcxWidth), _mm256_set1_pd(0.5 * kErfcxWidth));
  const __m256d s = _mm256_sub_pd(clamped, mid);
  const __m256i row = _mm256_mul_epu32(to_int64(cell), _mm256_set1_epi64x(kErfcxDegree + 1));

  const double* base = &kErfcxCoeffs[0][0];
  __m256d poly = _mm256_i64gather_pd(base + kErfcxDegree, row, 8);
  for (int k = kErfcxDegree - 1; k >= 0; --k) {
    poly = _mm256_fmadd_pd(poly, s, _mm256_i64gather_pd(base + k, row, 8));
  }

  const __m256d hi = _mm256_mul_pd(clamped, clamped);
  const __m256d lo = _mm256_fmsub_pd(clamped, clamped, hi);
  const __m256d decay = _mm256_mul_pd(exp_nonpositive(_mm256_sub_pd(_mm256_setzero_pd(), hi)),
                                      _mm256_sub_pd(_mm256_set1_pd(1.0), lo));
  __m256d result = _mm256_mul_pd(poly, decay);
  result = _mm256_andnot_pd(beyond, result);
  return _mm256_blendv_pd(result, a, nan_mask);
}

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

// Phi(x) = erfc(-x / sqrt 2) / 2, using erfc(-y) = 2 - erfc(y).
inline __m256d normal_cdf_pd(__m256d x) {
  const __m256d y = _mm256_div_pd(x, _mm256_set1_pd(1.41421356237309504880));
  const __m256d half_tail = _mm256_mul_pd(_mm256_set1_pd(0.5), erfc_nonneg(abs_pd(y)));
  const __m256d upper = _mm256_sub_pd(_mm256_set1_pd(1.0), half_tail);
  const __m256d positive = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_GT_OQ);
  return _mm256_blendv_pd(half_tail, upper, positive);
}

void t_statistic(std::span<const double> xbar, double theta0, double scale,
                 std::span<double> out) {
  const std::size_t n = xbar.size();
  const __m256d c = _mm256_set1_pd(theta0);
  const __m256d k = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) {
    const __m256d v = _mm256_loadu_pd(xbar.data() + i);
    _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(k, _mm256_sub_pd(v, c)));
  }
  scalar_table().t_statistic(xbar.subspan(i), theta0, scale, out.subspan(i));
}

void log_bf_lindley(std::span<const double> t, double n_obs, std::span<double> out) {
  const std::size_t n = t.size();
  const __m256d head = _mm256_set1_pd(0.5 * std::log1p(n_obs));
  const __m256d coef = _mm256_set1_pd(n_obs / (2.0 * (1.0 + n_obs)));
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) {
    const __m256d v = _mm256_loadu_pd(t.data() + i);
    _mm256_storeu_pd(out.data() + i, _mm256_fnmadd_pd(coef, _mm256_mul_pd(v, v), head));
  }
  scalar_table().log_bf_lindley(t.subspan(i), n_obs, out.subspan(i));
}

void normal_cdf(std::span<const double> x, std::span<double> out) {
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) {
    _mm256_storeu_pd(out.data() + i, normal_cdf_pd(_mm256_loadu_pd(x.data() + i)));
  }
  scalar_table().normal_cdf(x.subspan(i), out.subspan(i));
}

void two_sided_p(std::span<const double> t, std::span<double> out) {
  const std::size_t n = t.size();
  const __m256d sqrt2 = _mm256_set1_pd(1.41421356237309504880);
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) {
    const __m256d a = _mm256_div_pd(abs_pd(_mm256_loadu_pd(t.data() + i)), sqrt2);
    _mm256_storeu_pd(out.data() + i, erfc_nonneg(a));
  }
  scalar_table().two_sided_p(t.subspan(i), out.subspan(i));
}

void severity(std::span<const double> theta1, double xbar, double scale, std::span<double> out) {
  const std::size_t n = theta1.size();
  const __m256d centre = _mm256_set1_pd(xbar);
  const __m256d k = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) {
    const __m256d z = _mm256_mul_pd(k, _mm256_sub_pd(centre, _mm256_loadu_pd(theta1.data() + i)));
    _mm256_storeu_pd(out.data() + i, normal_cdf_pd(z));
  }
  scalar_table().severity(theta1.subspan(i), xbar, scale, out.subspan(i));
}

void hyvarinen_normal(std::span<const double> x, double mean, double variance,
                      std::span<double> out) {
  const std::size_t n = x.size();
  const double inv = 1.0 / variance;
  const __m256d m = _mm256_set1_pd(mean);
  const __m256d vinv = _mm256_set1_pd(inv);
  const __m256d offset = _mm256_set1_pd(2.0 * inv);
  std::size_t i = 0;
  for (; i + kLane <= n; i += kLane) {
    const __m256d d = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(x.data() + i), m), vinv);
    _mm256_storeu_pd(out.data() + i, _mm256_fmsub_pd(d, d, offset));
  }
  scalar_table().hyvarinen_normal(x.subspan(i), mean, variance, out.subspan(i));
}

}  // namespace

const KernelTable& avx2_table() {
  static constexpr KernelTable kTable{SimdLevel::kAvx2, t_statistic, log_bf_lindley,
                                      normal_cdf,       two_sided_p, severity,
                                      hyvarinen_normal};
  return kTable;
}

}  // namespace lindley::kernels::detail
