#pragma once

// Data-parallel complex kernels shared by every module.
//
// Each kernel has a scalar reference implementation and, on x86-64, an
// AVX2/FMA variant. The variant is chosen once at startup from the CPU
// features (override with QPREDICT_ISA=scalar|avx2). Complex values are
// std::complex<double>, which is layout-compatible with double[2].

#include <complex>
#include <cstddef>
#include <string_view>

namespace qpredict::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  std::string_view name;

  /// sum |x_i|^2
  double (*norm_sq)(const cplx* x, std::size_t n);
  /// sum |a_i - b_i|^2
  double (*diff_norm_sq)(const cplx* a, const cplx* b, std::size_t n);
  /// sum conj(a_i) * b_i
  cplx (*dotc)(const cplx* a, const cplx* b, std::size_t n);
  /// sum a_i * b_i
  cplx (*dotu)(const cplx* a, const cplx* b, std::size_t n);
  /// x_i *= y_i
  void (*mul)(cplx* x, const cplx* y, std::size_t n);
  /// x_i *= alpha
  void (*scale)(cplx* x, cplx alpha, std::size_t n);
  /// y_i += alpha * x_i
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  /// (a_i, b_i) <- (s (a_i + b_i), s (a_i - b_i))
  void (*hadamard_butterfly)(cplx* a, cplx* b, std::size_t n, double s);
  /// radix-2 DIT step: t = w_i b_i; (a_i, b_i) <- (a_i + t, a_i - t)
  void (*fft_butterfly)(cplx* a, cplx* b, const cplx* w, std::size_t n);
};

const KernelTable& scalar_table();

/// nullptr when the variant was not compiled in or the CPU lacks AVX2+FMA.
const KernelTable* avx2_table();

/// The table every library routine dispatches through.
const KernelTable& active();

/// Force a variant by name ("scalar" or "avx2"); returns false if unavailable.
bool select(std::string_view name);

/// Row-major C(rows x cols) = A(rows x inner) * B(inner x cols).
void gemm(const cplx* a, const cplx* b, cplx* c, std::size_t rows, std::size_t inner,
          std::size_t cols);

}  // namespace qpredict::kernels
