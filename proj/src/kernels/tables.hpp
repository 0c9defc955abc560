#pragma once

#include "lindley/kernels.hpp"

namespace lindley::kernels::detail {

const KernelTable& scalar_table();
#if defined(LINDLEY_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace lindley::kernels::detail
