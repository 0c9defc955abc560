#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include "kernels/tables.hpp"

namespace lindley::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(LINDLEY_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

SimdLevel initial_level() {
  if (const char* env = std::getenv("LINDLEY_SIMD"); env != nullptr && std::string_view(env) == "scalar") {
    return SimdLevel::kScalar;
  }
  return detected_level();
}

std::atomic<SimdLevel>& current() {
  static std::atomic<SimdLevel> level{initial_level()};
  return level;
}

}  // namespace

std::string_view to_string(SimdLevel level) {
  switch (level) {
    case SimdLevel::kScalar:
      return "scalar";
    case SimdLevel::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool available(SimdLevel level) {
  switch (level) {
    case SimdLevel::kScalar:
      return true;
    case SimdLevel::kAvx2:
      return cpu_has_avx2();
  }
  return false;
}

SimdLevel detected_level() {
  static const SimdLevel level = available(SimdLevel::kAvx2) ? SimdLevel::kAvx2 : SimdLevel::kScalar;
  return level;
}

SimdLevel active_level() { return current().load(std::memory_order_relaxed); }

void force_level(SimdLevel level) {
  if (!available(level)) {
    throw std::invalid_argument("SIMD level " + std::string(to_string(level)) +
                                " is not available on this CPU/build");
  }
  current().store(level, std::memory_order_relaxed);
}

const KernelTable& table(SimdLevel level) {
  if (!available(level)) {
    throw std::invalid_argument("SIMD level " + std::string(to_string(level)) +
                                " is not available on this CPU/build");
  }
#if defined(LINDLEY_HAVE_AVX2)
  if (level == SimdLevel::kAvx2) return detail::avx2_table();
#endif
  return detail::scalar_table();
}

const KernelTable& active() { return table(active_level()); }

}  // namespace lindley::kernels
