#pragma once

#include "qpredict/kernels.hpp"

namespace qpredict::kernels::detail {

extern const KernelTable kScalarTable;

#if defined(QPREDICT_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

}  // namespace qpredict::kernels::detail
