// AVX2/FMA variants. Every function carries a target attribute instead of
// the whole file being built with -mavx2, so nothing from a shared header is
// accidentally compiled for AVX2 and linked into the scalar path.

#include "internal.hpp"

#if defined(QPREDICT_HAVE_AVX2)

#include <immintrin.h>

#define QP_AVX2 __attribute__((target("avx2,fma")))

namespace qpredict::kernels::detail {
namespace {

// Two complex doubles per register: [re0, im0, re1, im1].

QP_AVX2 inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

// Lane sums folded to [even lanes, odd lanes].
QP_AVX2 inline __m128d fold(__m256d v) {
  return _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
}

QP_AVX2 inline double lane_sum(__m256d v) {
  const __m128d s = fold(v);
  return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

QP_AVX2 double norm_sq(const cplx* x, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(x);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(p + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(p + 2 * i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(p + 2 * i);
    acc0 = _mm256_fmadd_pd(v, v, acc0);
  }
  double acc = lane_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return acc;
}

QP_AVX2 double diff_norm_sq(const cplx* a, const cplx* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double out = lane_sum(acc);
  for (; i < n; ++i) {
    const double re = a[i].real() - b[i].real();
    const double im = a[i].imag() - b[i].imag();
    out += re * re + im * im;
  }
  return out;
}

QP_AVX2 cplx dotc(const cplx* a, const cplx* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d direct = _mm256_setzero_pd();   // [ar br, ai bi]
  __m256d crossed = _mm256_setzero_pd();  // [ai br, ar bi]
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    direct = _mm256_fmadd_pd(va, vb, direct);
    crossed = _mm256_fmadd_pd(_mm256_permute_pd(va, 0x5), vb, crossed);
  }
  const __m128d d = fold(direct);
  const __m128d c = fold(crossed);
  double re = _mm_cvtsd_f64(d) + _mm_cvtsd_f64(_mm_unpackhi_pd(d, d));
  double im = _mm_cvtsd_f64(_mm_unpackhi_pd(c, c)) - _mm_cvtsd_f64(c);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

QP_AVX2 cplx dotu(const cplx* a, const cplx* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d direct = _mm256_setzero_pd();
  __m256d crossed = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    direct = _mm256_fmadd_pd(va, vb, direct);
    crossed = _mm256_fmadd_pd(_mm256_permute_pd(va, 0x5), vb, crossed);
  }
  const __m128d d = fold(direct);
  double re = _mm_cvtsd_f64(d) - _mm_cvtsd_f64(_mm_unpackhi_pd(d, d));
  double im = lane_sum(crossed);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

QP_AVX2 void mul(cplx* x, const cplx* y, std::size_t n) {
  double* px = reinterpret_cast<double*>(x);
  const double* py = reinterpret_cast<const double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    _mm256_storeu_pd(px + 2 * i, cmul(_mm256_loadu_pd(px + 2 * i), _mm256_loadu_pd(py + 2 * i)));
  }
  for (; i < n; ++i) {
    const double re = x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
    const double im = x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
    x[i] = {re, im};
  }
}

QP_AVX2 void scale(cplx* x, cplx alpha, std::size_t n) {
  double* px = reinterpret_cast<double*>(x);
  const __m256d a = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    _mm256_storeu_pd(px + 2 * i, cmul(_mm256_loadu_pd(px + 2 * i), a));
  }
  for (; i < n; ++i) {
    const double re = x[i].real() * alpha.real() - x[i].imag() * alpha.imag();
    const double im = x[i].real() * alpha.imag() + x[i].imag() * alpha.real();
    x[i] = {re, im};
  }
}

QP_AVX2 void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  const __m256d a_re = _mm256_set1_pd(alpha.real());
  const __m256d a_im = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x0 = _mm256_loadu_pd(px + 2 * i);
    const __m256d x1 = _mm256_loadu_pd(px + 2 * i + 4);
    const __m256d t0 = _mm256_fmaddsub_pd(x0, a_re, _mm256_mul_pd(_mm256_permute_pd(x0, 0x5), a_im));
    const __m256d t1 = _mm256_fmaddsub_pd(x1, a_re, _mm256_mul_pd(_mm256_permute_pd(x1, 0x5), a_im));
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(_mm256_loadu_pd(py + 2 * i), t0));
    _mm256_storeu_pd(py + 2 * i + 4, _mm256_add_pd(_mm256_loadu_pd(py + 2 * i + 4), t1));
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d x0 = _mm256_loadu_pd(px + 2 * i);
    const __m256d t0 = _mm256_fmaddsub_pd(x0, a_re, _mm256_mul_pd(_mm256_permute_pd(x0, 0x5), a_im));
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(_mm256_loadu_pd(py + 2 * i), t0));
  }
  for (; i < n; ++i) {
    const double re = alpha.real() * x[i].real() - alpha.imag() * x[i].imag();
    const double im = alpha.real() * x[i].imag() + alpha.imag() * x[i].real();
    y[i] = {y[i].real() + re, y[i].imag() + im};
  }
}

QP_AVX2 void hadamard_butterfly(cplx* a, cplx* b, std::size_t n, double s) {
  double* pa = reinterpret_cast<double*>(a);
  double* pb = reinterpret_cast<double*>(b);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d u = _mm256_loadu_pd(pa + 2 * i);
    const __m256d v = _mm256_loadu_pd(pb + 2 * i);
    _mm256_storeu_pd(pa + 2 * i, _mm256_mul_pd(vs, _mm256_add_pd(u, v)));
    _mm256_storeu_pd(pb + 2 * i, _mm256_mul_pd(vs, _mm256_sub_pd(u, v)));
  }
  for (; i < n; ++i) {
    const cplx u = a[i];
    const cplx v = b[i];
    a[i] = {s * (u.real() + v.real()), s * (u.imag() + v.imag())};
    b[i] = {s * (u.real() - v.real()), s * (u.imag() - v.imag())};
  }
}

QP_AVX2 void fft_butterfly(cplx* a, cplx* b, const cplx* w, std::size_t n) {
  double* pa = reinterpret_cast<double*>(a);
  double* pb = reinterpret_cast<double*>(b);
  const double* pw = reinterpret_cast<const double*>(w);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d t = cmul(_mm256_loadu_pd(pb + 2 * i), _mm256_loadu_pd(pw + 2 * i));
    const __m256d u = _mm256_loadu_pd(pa + 2 * i);
    _mm256_storeu_pd(pa + 2 * i, _mm256_add_pd(u, t));
    _mm256_storeu_pd(pb + 2 * i, _mm256_sub_pd(u, t));
  }
  for (; i < n; ++i) {
    const double tr = w[i].real() * b[i].real() - w[i].imag() * b[i].imag();
    const double ti = w[i].real() * b[i].imag() + w[i].imag() * b[i].real();
    const cplx u = a[i];
    a[i] = {u.real() + tr, u.imag() + ti};
    b[i] = {u.real() - tr, u.imag() - ti};
  }
}

}  // namespace

const KernelTable kAvx2Table{
    "avx2", norm_sq, diff_norm_sq, dotc, dotu, mul, scale, axpy, hadamard_butterfly, fft_butterfly,
};

}  // namespace qpredict::kernels::detail

#endif  // QPREDICT_HAVE_AVX2
