#pragma once

#include "micropush/kernels/kernels.hpp"

namespace micropush::kernels::detail {

const KernelTable& scalar_table();
#if defined(MICROPUSH_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace micropush::kernels::detail
