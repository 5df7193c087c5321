#include "qpredict/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "qpredict/error.hpp"
#include "wide_int.hpp"
#include "qpredict/kernels.hpp"

namespace qpredict {

// ---------------------------------------------------------------------------
// FrequencyBits

FrequencyBits FrequencyBits::make(std::uint64_t value, unsigned width) {
  require(width <= 62, ErrorCode::argument, "frequency width above 62 bits");
  require(value < (std::uint64_t{1} << width), ErrorCode::argument,
          "value " + std::to_string(value) + " does not fit in " + std::to_string(width) + " bits");
  return {value, width};
}

FrequencyBits FrequencyBits::truncate(double omega, unsigned width) {
  require(omega >= 0.0 && omega < 1.0, ErrorCode::argument, "frequency outside [0, 1)");
  require(width <= 52, ErrorCode::argument, "truncation width above 52 bits");
  const std::uint64_t cells = std::uint64_t{1} << width;
  auto v = static_cast<std::uint64_t>(std::floor(std::ldexp(omega, static_cast<int>(width))));
  return {std::min(v, cells - 1), width};
}

double FrequencyBits::as_real() const {
  return std::ldexp(static_cast<double>(value), -static_cast<int>(width));
}

std::string_view to_string(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::dyadic_sparse: return "dyadic-sparse";
    case SpectrumKind::strip: return "strip";
    case SpectrumKind::shor: return "shor";
    case SpectrumKind::grover: return "grover";
  }
  return "unknown";
}

SpectrumKind parse_spectrum_kind(std::string_view text) {
  if (text == "dyadic-sparse") return SpectrumKind::dyadic_sparse;
  if (text == "strip") return SpectrumKind::strip;
  if (text == "shor") return SpectrumKind::shor;
  if (text == "grover") return SpectrumKind::grover;
  fail(ErrorCode::config, "unknown spectrum kind '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// SpectralUnitary

SpectralUnitary::SpectralUnitary(unsigned n, CMatrix eigenvectors, std::vector<double> frequencies,
                                 std::vector<double> band_centers)
    : n_(n),
      vectors_(std::move(eigenvectors)),
      frequencies_(std::move(frequencies)),
      band_centers_(std::move(band_centers)) {
  const std::size_t dim = std::size_t{1} << n;
  require(n >= 1 && n <= 16, ErrorCode::capacity, "spectral unitaries support 1..16 qubits");
  require(static_cast<std::size_t>(vectors_.rows()) == dim &&
              static_cast<std::size_t>(vectors_.cols()) == dim,
          ErrorCode::argument, "eigenvector matrix must be 2^n x 2^n");
  require(frequencies_.size() == dim, ErrorCode::argument, "need one frequency per eigenvector");
  for (double& w : frequencies_) {
    if (w >= 1.0 - 1e-12 && w < 1.0 + 1e-12) w = 0.0;
    if (w < 0.0 && w > -1e-12) w = 0.0;
    require(w >= 0.0 && w < 1.0, ErrorCode::argument, "frequency outside [0, 1)");
  }
  adjoint_ = vectors_.adjoint();
  const CMatrix gram = adjoint_ * vectors_;
  const double err = (gram - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  require(err <= 1e-10, ErrorCode::argument,
          "eigenvectors are not orthonormal (Gram error " + std::to_string(err) + ")");
}

StateVector SpectralUnitary::eigenvector(std::size_t k) const {
  require(k < dim(), ErrorCode::argument, "eigenvector index out of range");
  std::vector<cplx> amps(dim());
  for (std::size_t m = 0; m < dim(); ++m) amps[m] = vectors_(m, k);
  return StateVector(RegisterLayout::main_only(n_), std::move(amps));
}

std::vector<double> SpectralUnitary::distinct_frequencies(double tol) const {
  std::vector<double> sorted(frequencies_);
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out;
  for (double w : sorted) {
    if (out.empty() || w - out.back() > tol) out.push_back(w);
  }
  // 0 and 1 - tiny are the same point on the circle.
  if (out.size() > 1 && out.front() + 1.0 - out.back() <= tol) out.pop_back();
  return out;
}

bool SpectralUnitary::frequencies_exact_in(unsigned bits) const {
  return std::all_of(frequencies_.begin(), frequencies_.end(), [bits](double w) {
    const double scaled = std::ldexp(w, static_cast<int>(bits));
    return scaled == std::floor(scaled);
  });
}

CMatrix SpectralUnitary::dense_matrix() const {
  CMatrix scaled = vectors_;
  for (std::size_t k = 0; k < dim(); ++k) scaled.col(k) *= unit_phase(frequencies_[k], 1);
  return scaled * adjoint_;
}

// ---------------------------------------------------------------------------
// Builders

CMatrix random_unitary(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index c = 0; c < g.cols(); ++c) {
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(r, c) = cplx(re, im);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const cplx d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

namespace {

// Each point index appears at least once; the remainder is drawn uniformly.
std::vector<std::size_t> assign_levels(std::size_t levels, std::size_t dim, Rng& rng) {
  require(levels >= 1 && levels <= dim, ErrorCode::argument,
          "need between 1 and 2^n spectral levels, got " + std::to_string(levels));
  std::vector<std::size_t> assign(dim);
  std::uniform_int_distribution<std::size_t> pick(0, levels - 1);
  for (std::size_t k = 0; k < dim; ++k) assign[k] = k < levels ? k : pick(rng);
  std::shuffle(assign.begin(), assign.end(), rng);
  return assign;
}

SpectralUnitary build_dyadic(const SpectrumSpec& spec, Rng& rng) {
  const unsigned bits = spec.frequency_bits == 0 ? spec.n : spec.frequency_bits;
  require(bits <= spec.n, ErrorCode::argument, "frequency_bits must not exceed n");
  require(spec.distinct >= 1, ErrorCode::argument, "need at least one frequency");
  const std::uint64_t grid = std::uint64_t{1} << bits;
  const auto step = static_cast<std::uint64_t>(
      std::max(1.0, std::ceil(spec.min_gap * static_cast<double>(grid) - 1e-9)));
  require(spec.distinct == 1 || spec.distinct * step <= grid, ErrorCode::argument,
          "cannot place " + std::to_string(spec.distinct) + " frequencies with gap " +
              std::to_string(spec.min_gap) + " on a " + std::to_string(bits) + "-bit grid");

  std::vector<std::uint64_t> extra(spec.distinct, 0);
  const std::uint64_t slack = spec.distinct == 1 ? 0 : grid - spec.distinct * step;
  std::uniform_int_distribution<std::size_t> which(0, spec.distinct - 1);
  for (std::uint64_t i = 0; i < slack; ++i) ++extra[which(rng)];
  std::uniform_int_distribution<std::uint64_t> start(0, grid - 1);
  std::uint64_t pos = start(rng);

  std::vector<double> levels;
  for (unsigned j = 0; j < spec.distinct; ++j) {
    levels.push_back(std::ldexp(static_cast<double>(pos % grid), -static_cast<int>(bits)));
    pos += step + extra[j];
  }

  const std::size_t dim = std::size_t{1} << spec.n;
  const auto assign = assign_levels(levels.size(), dim, rng);
  std::vector<double> freqs(dim);
  for (std::size_t k = 0; k < dim; ++k) freqs[k] = levels[assign[k]];
  return SpectralUnitary(spec.n, random_unitary(dim, rng), std::move(freqs));
}

SpectralUnitary build_strip(const SpectrumSpec& spec, Rng& rng) {
  require(spec.strips >= 1 && spec.points_per_strip >= 1, ErrorCode::argument,
          "strip spectrum needs at least one strip and one point per strip");
  require(spec.strip_width >= 0.0 && spec.strip_width < spec.strip_gap, ErrorCode::argument,
          "strip width must be smaller than the gap");
  require(spec.strips * (spec.strip_gap + spec.strip_width) <= 1.0 + 1e-12, ErrorCode::argument,
          "strips and gaps do not fit on the unit circle");
  std::uniform_real_distribution<double> offset_dist(0.0, 1.0);
  const double offset = offset_dist(rng);
  auto wrap = [](double x) {
    x -= std::floor(x);
    return x >= 1.0 ? 0.0 : x;
  };

  std::vector<double> centers;
  std::vector<double> levels;
  for (unsigned j = 0; j < spec.strips; ++j) {
    const double c = wrap(offset + j * (spec.strip_gap + spec.strip_width));
    centers.push_back(c);
    for (unsigned i = 0; i < spec.points_per_strip; ++i) {
      const double rel = spec.points_per_strip == 1
                             ? 0.0
                             : static_cast<double>(i) / (spec.points_per_strip - 1) - 0.5;
      levels.push_back(wrap(c + rel * spec.strip_width));
    }
  }

  const std::size_t dim = std::size_t{1} << spec.n;
  const auto assign = assign_levels(levels.size(), dim, rng);
  std::vector<double> freqs(dim);
  for (std::size_t k = 0; k < dim; ++k) freqs[k] = levels[assign[k]];
  return SpectralUnitary(spec.n, random_unitary(dim, rng), std::move(freqs), std::move(centers));
}

SpectralUnitary build_shor(const SpectrumSpec& spec) {
  const std::uint64_t q = spec.modulus;
  const std::uint64_t a = spec.base;
  require(q >= 2, ErrorCode::argument, "modulus must be at least 2");
  require(std::gcd(a, q) == 1, ErrorCode::argument,
          "gcd(" + std::to_string(a) + ", " + std::to_string(q) + ") != 1");
  const std::size_t dim = std::size_t{1} << spec.n;
  require(dim >= q, ErrorCode::argument, "2^n must be at least the modulus");

  // Units modulo q are permuted by x -> a x; every other basis state is fixed.
  auto next = [&](std::uint64_t x) -> std::uint64_t {
    if (x >= q || std::gcd(x, q) != 1) return x;
    return static_cast<std::uint64_t>((static_cast<uint128>(a) * x) % q);
  };

  CMatrix vectors = CMatrix::Zero(dim, dim);
  std::vector<double> freqs(dim, 0.0);
  std::vector<bool> seen(dim, false);
  std::size_t col = 0;
  for (std::uint64_t start = 0; start < dim; ++start) {
    if (seen[start]) continue;
    std::vector<std::uint64_t> cycle;
    for (std::uint64_t x = start; !seen[x]; x = next(x)) {
      seen[x] = true;
      cycle.push_back(x);
    }
    const std::size_t r = cycle.size();
    const double norm = 1.0 / std::sqrt(static_cast<double>(r));
    for (std::size_t k = 0; k < r; ++k) {
      for (std::size_t j = 0; j < r; ++j) {
        // exp(-2 pi i k j / r), reduced exactly before scaling.
        const double frac = static_cast<double>((k * j) % r) / static_cast<double>(r);
        vectors(cycle[j], col) = norm * std::polar(1.0, -2.0 * std::numbers::pi * frac);
      }
      freqs[col] = static_cast<double>(k) / static_cast<double>(r);
      ++col;
    }
  }
  return SpectralUnitary(spec.n, std::move(vectors), std::move(freqs));
}

SpectralUnitary build_grover(const SpectrumSpec& spec) {
  const std::size_t dim = std::size_t{1} << spec.n;
  require(spec.marked < dim, ErrorCode::argument, "marked item out of range");
  const double s = 1.0 / std::sqrt(static_cast<double>(dim));
  // I_b = I - 2|b><b|; U = I_s I_a.
  Eigen::MatrixXcd inv_s = Eigen::MatrixXcd::Identity(dim, dim);
  inv_s.array() -= cplx(2.0 * s * s, 0.0);
  Eigen::MatrixXcd inv_a = Eigen::MatrixXcd::Identity(dim, dim);
  inv_a(spec.marked, spec.marked) = -1.0;
  const Eigen::MatrixXcd g = inv_s * inv_a;

  // For a normal matrix the complex Schur form is diagonal, so the Schur
  // vectors are an orthonormal eigenbasis even inside degenerate eigenspaces.
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(g);
  require(schur.info() == Eigen::Success, ErrorCode::internal_consistency,
          "Schur decomposition of the Grover operator failed");
  const Eigen::MatrixXcd& t = schur.matrixT();
  const double off = t.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().cwiseAbs().maxCoeff();
  require(off < 1e-9, ErrorCode::internal_consistency, "Grover Schur form is not diagonal");

  std::vector<double> freqs(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    double w = std::arg(t(k, k)) / (2.0 * std::numbers::pi);
    if (w < 0.0) w += 1.0;
    freqs[k] = w;
  }
  return SpectralUnitary(spec.n, schur.matrixU(), std::move(freqs));
}

}  // namespace

SpectralUnitary build(const SpectrumSpec& spec, std::uint64_t seed) {
  require(spec.n >= 1 && spec.n <= 14, ErrorCode::capacity, "spectrum builders support 1..14 qubits");
  Rng rng(seed);
  switch (spec.kind) {
    case SpectrumKind::dyadic_sparse: return build_dyadic(spec, rng);
    case SpectrumKind::strip: return build_strip(spec, rng);
    case SpectrumKind::shor: return build_shor(spec);
    case SpectrumKind::grover: return build_grover(spec);
  }
  fail(ErrorCode::argument, "unknown spectrum kind");
}

// ---------------------------------------------------------------------------
// Evolution

cplx unit_phase(double omega, std::int64_t s) {
  double x = omega * static_cast<double>(s);
  x -= std::floor(x);
  return std::polar(1.0, 2.0 * std::numbers::pi * x);
}

cplx dyadic_phase(std::uint64_t residue, unsigned bits) {
  const double frac = std::ldexp(static_cast<double>(residue), -static_cast<int>(bits));
  return std::polar(1.0, 2.0 * std::numbers::pi * frac);
}

std::uint64_t dyadic_residue(std::int64_t a, std::int64_t b, unsigned bits) {
  const int128 modulus = static_cast<int128>(1) << bits;
  int128 r = (static_cast<int128>(a) * b) % modulus;
  if (r < 0) r += modulus;
  return static_cast<std::uint64_t>(r);
}

StateVector to_eigenframe(const SpectralUnitary& u, const StateVector& s) {
  require(s.layout().main_qubits == u.qubits(), ErrorCode::argument,
          "state main register does not match the unitary");
  StateVector out = StateVector::zeros(s.layout());
  kernels::gemm(u.adjoint().data(), s.amplitudes().data(), out.amplitudes().data(), u.dim(),
                u.dim(), s.layout().ancilla_dim());
  return out;
}

StateVector from_eigenframe(const SpectralUnitary& u, const StateVector& s) {
  require(s.layout().main_qubits == u.qubits(), ErrorCode::argument,
          "state main register does not match the unitary");
  StateVector out = StateVector::zeros(s.layout());
  kernels::gemm(u.eigenvectors().data(), s.amplitudes().data(), out.amplitudes().data(), u.dim(),
                u.dim(), s.layout().ancilla_dim());
  return out;
}

StateVector apply_power(const SpectralUnitary& u, std::int64_t s, const StateVector& state) {
  if (s == 0) {
    require(state.layout().main_qubits == u.qubits(), ErrorCode::argument,
            "state main register does not match the unitary");
    return state;
  }
  StateVector eig = to_eigenframe(u, state);
  const auto& k = kernels::active();
  for (std::size_t m = 0; m < u.dim(); ++m) {
    auto block = eig.ancilla_block(m);
    k.scale(block.data(), unit_phase(u.frequency(m), s), block.size());
  }
  return from_eigenframe(u, eig);
}

StateVector exact_evolution_oracle(const SpectralUnitary& u, std::int64_t t, const StateVector& xi) {
  return apply_power(u, t, xi);
}

double wraparound_distance(double a, double b) {
  const double d = std::fabs(a - b);
  const double r = d - std::floor(d);
  return std::min(r, 1.0 - r);
}

double min_wraparound_gap(std::span<const double> frequencies) {
  double best = 1.0;
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    for (std::size_t j = i + 1; j < frequencies.size(); ++j) {
      best = std::min(best, wraparound_distance(frequencies[i], frequencies[j]));
    }
  }
  return best;
}

double min_wraparound_gap(const SpectralUnitary& u) {
  const auto distinct = u.distinct_frequencies();
  if (distinct.size() < 2) return 1.0;
  return min_wraparound_gap(std::span<const double>(distinct));
}

}  // namespace qpredict
