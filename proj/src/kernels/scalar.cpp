#include "internal.hpp"

namespace qpredict::kernels::detail {
namespace {

double norm_sq(const cplx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return acc;
}

double diff_norm_sq(const cplx* a, const cplx* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = a[i].real() - b[i].real();
    const double im = a[i].imag() - b[i].imag();
    acc += re * re + im * im;
  }
  return acc;
}

cplx dotc(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

cplx dotu(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

void mul(cplx* x, const cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = x[i].real() * y[i].real() - x[i].imag() * y[i].imag();
    const double im = x[i].real() * y[i].imag() + x[i].imag() * y[i].real();
    x[i] = {re, im};
  }
}

void scale(cplx* x, cplx alpha, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = x[i].real() * alpha.real() - x[i].imag() * alpha.imag();
    const double im = x[i].real() * alpha.imag() + x[i].imag() * alpha.real();
    x[i] = {re, im};
  }
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = alpha.real() * x[i].real() - alpha.imag() * x[i].imag();
    const double im = alpha.real() * x[i].imag() + alpha.imag() * x[i].real();
    y[i] = {y[i].real() + re, y[i].imag() + im};
  }
}

void hadamard_butterfly(cplx* a, cplx* b, std::size_t n, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    const cplx u = a[i];
    const cplx v = b[i];
    a[i] = {s * (u.real() + v.real()), s * (u.imag() + v.imag())};
    b[i] = {s * (u.real() - v.real()), s * (u.imag() - v.imag())};
  }
}

void fft_butterfly(cplx* a, cplx* b, const cplx* w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double tr = w[i].real() * b[i].real() - w[i].imag() * b[i].imag();
    const double ti = w[i].real() * b[i].imag() + w[i].imag() * b[i].real();
    const cplx u = a[i];
    a[i] = {u.real() + tr, u.imag() + ti};
    b[i] = {u.real() - tr, u.imag() - ti};
  }
}

}  // namespace

const KernelTable kScalarTable{
    "scalar", norm_sq, diff_norm_sq, dotc, dotu, mul, scale, axpy, hadamard_butterfly, fft_butterfly,
};

}  // namespace qpredict::kernels::detail
