#include <algorithm>

#include "qpredict/kernels.hpp"

namespace qpredict::kernels {

void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t rows, std::size_t inner,
          std::size_t cols) {
  const KernelTable& k = active();
  if (cols == 1) {
    for (std::size_t i = 0; i < rows; ++i) c[i] = k.dotu(a + i * inner, b, inner);
    return;
  }
  // Row-axpy form keeps every inner loop contiguous in B and C.
  for (std::size_t i = 0; i < rows; ++i) {
    cplx* c_row = c + i * cols;
    std::fill(c_row, c_row + cols, cplx{});
    const cplx* a_row = a + i * inner;
    for (std::size_t j = 0; j < inner; ++j) {
      if (a_row[j] == cplx{}) continue;
      k.axpy(a_row[j], b + j * cols, c_row, cols);
    }
  }
}

}  // namespace qpredict::kernels
