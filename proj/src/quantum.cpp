#include "majbound/quantum.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace majbound {

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

void check_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw InvalidDimension(std::string(what) + " must be square and non-empty, got " +
                           std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

/// Solver for a matrix already known Hermitian; ascending output reversed to
/// descending.
SpectralDecomposition decompose_unchecked(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  if (es.info() != Eigen::Success) throw EigensolverFailure("eigensolver did not converge");
  SpectralDecomposition out;
  out.eigenvalues = es.eigenvalues().reverse();
  out.eigenvectors = es.eigenvectors().rowwise().reverse();
  return out;
}

}  // namespace

HermitianOperator::HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
  check_square(m_, "operator");
  if (max_abs(m_ - m_.adjoint()) > kHermTol)
    throw NotHermitian("max deviation from adjoint " +
                       std::to_string(max_abs(m_ - m_.adjoint())));
}

SpectralDecomposition spectral_decompose(const HermitianOperator& a) {
  return decompose_unchecked(a.matrix());
}

Measurement Measurement::projective(ComplexMatrix basis) {
  check_square(basis, "basis");
  const Eigen::Index d = basis.rows();
  const double dev = (basis.adjoint() * basis - ComplexMatrix::Identity(d, d))
                         .cwiseAbs()
                         .maxCoeff();
  if (dev > kNumTol)
    throw InvalidMeasurement("basis columns are not orthonormal (deviation " +
                             std::to_string(dev) + ")");
  Measurement m;
  m.basis_ = std::move(basis);
  m.dim_ = d;
  m.outcomes_ = static_cast<int>(d);
  return m;
}

Measurement Measurement::povm(std::vector<ComplexMatrix> effects) {
  if (effects.empty()) throw EmptyInput("POVM needs at least one effect");
  check_square(effects[0], "effect");
  const Eigen::Index d = effects[0].rows();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (size_t i = 0; i < effects.size(); ++i) {
    const ComplexMatrix& e = effects[i];
    if (e.rows() != d || e.cols() != d)
      throw DimensionMismatch("effect " + std::to_string(i) + " is " +
                              std::to_string(e.rows()) + "x" + std::to_string(e.cols()) +
                              ", expected " + std::to_string(d));
    if (max_abs(e - e.adjoint()) > kHermTol)
      throw InvalidMeasurement("effect " + std::to_string(i) + " is not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(e, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw EigensolverFailure("eigensolver did not converge");
    if (es.eigenvalues().minCoeff() < -kNumTol)
      throw InvalidMeasurement("effect " + std::to_string(i) + " is not positive semidefinite");
    sum += e;
  }
  const double dev = (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev > kNumTol)
    throw InvalidMeasurement("effects do not sum to the identity (deviation " +
                             std::to_string(dev) + ")");
  Measurement m;
  m.effects_ = std::move(effects);
  m.dim_ = d;
  m.outcomes_ = static_cast<int>(m.effects_.size());
  return m;
}

ComplexMatrix Measurement::effect(int outcome) const {
  if (outcome < 0 || outcome >= outcomes_)
    throw IndexOutOfRange("outcome " + std::to_string(outcome) + " out of range [0, " +
                          std::to_string(outcomes_) + ")");
  if (is_projective()) {
    const ComplexVector b = basis_.col(outcome);
    return b * b.adjoint();
  }
  return effects_[static_cast<size_t>(outcome)];
}

const ComplexMatrix& Measurement::basis() const {
  if (!is_projective()) throw Error("POVM measurement has no basis");
  return basis_;
}

QuantumState QuantumState::pure(const ComplexVector& psi) {
  if (psi.size() == 0) throw InvalidDimension("empty state vector");
  const double n = psi.norm();
  if (n < 1e-12) throw Error("state vector has (near) zero norm");
  const ComplexVector u = psi / n;
  return QuantumState(u * u.adjoint());
}

QuantumState QuantumState::density(ComplexMatrix rho) {
  check_square(rho, "density matrix");
  if (max_abs(rho - rho.adjoint()) > kHermTol)
    throw NotHermitian("density matrix deviates from its adjoint");
  if (std::abs(rho.trace().real() - 1.0) > kNumTol || std::abs(rho.trace().imag()) > kNumTol)
    throw Error("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw EigensolverFailure("eigensolver did not converge");
  if (es.eigenvalues().minCoeff() < -kNumTol)
    throw Error("density matrix is not positive semidefinite");
  return QuantumState(std::move(rho));
}

QuantumState QuantumState::from_spectrum(const DistVector<double>& spectrum,
                                         const ComplexMatrix& basis) {
  if (std::abs(spectrum.mass() - 1.0) > kNumTol)
    throw InvalidSpectrum("spectrum mass " + std::to_string(spectrum.mass()) + " is not 1");
  check_square(basis, "basis");
  if (basis.rows() != spectrum.size())
    throw DimensionMismatch("basis dimension " + std::to_string(basis.rows()) +
                            " vs spectrum length " + std::to_string(spectrum.size()));
  ComplexMatrix rho = ComplexMatrix::Zero(basis.rows(), basis.rows());
  for (Eigen::Index i = 0; i < spectrum.size(); ++i)
    rho += Complex(spectrum[i], 0.0) * basis.col(i) * basis.col(i).adjoint();
  return density(std::move(rho));
}

QuantumState maximally_mixed(int dim) {
  if (dim < 1) throw InvalidDimension("dimension must be >= 1, got " + std::to_string(dim));
  return QuantumState::density(ComplexMatrix::Identity(dim, dim) / double(dim));
}

RealVector outcome_probabilities(const Measurement& m, const QuantumState& state) {
  if (m.dim() != state.dim())
    throw DimensionMismatch("measurement dimension " + std::to_string(m.dim()) +
                            " vs state dimension " + std::to_string(state.dim()));
  RealVector p(m.outcome_count());
  if (m.is_projective()) {
    // <b_i| rho |b_i> without forming projectors
    for (int i = 0; i < m.outcome_count(); ++i) {
      const ComplexVector b = m.basis().col(i);
      p[i] = (b.adjoint() * state.rho() * b).value().real();
    }
  } else {
    for (int i = 0; i < m.outcome_count(); ++i)
      p[i] = (m.effect(i) * state.rho()).trace().real();
  }
  return p;
}

DistVector<double> outcome_distribution(const Measurement& m, const QuantumState& state) {
  return sort_descending(outcome_probabilities(m, state));
}

DistVector<double> direct_sum_distribution(std::span<const Measurement> ms,
                                           const QuantumState& state) {
  if (ms.empty()) throw EmptyInput("direct sum over zero measurements");
  Eigen::Index total = 0;
  for (const Measurement& m : ms) total += m.outcome_count();
  RealVector all(total);
  Eigen::Index at = 0;
  for (const Measurement& m : ms) {
    all.segment(at, m.outcome_count()) = outcome_probabilities(m, state);
    at += m.outcome_count();
  }
  return sort_descending(std::move(all));
}

double Rng::uniform() {
  // 53-bit mantissa scaling; identical on every conforming platform.
  return double(gen_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = double((gen_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im);
}

ComplexMatrix random_unitary(int dim, Rng& rng) {
  if (dim < 1) throw InvalidDimension("dimension must be >= 1, got " + std::to_string(dim));
  ComplexMatrix g(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    for (Eigen::Index r = 0; r < dim; ++r) g(r, c) = rng.complex_normal();
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the gauge so the distribution is Haar: absorb the phases of R's
  // diagonal into Q's columns.
  for (Eigen::Index c = 0; c < dim; ++c) {
    const Complex d = r(c, c);
    const double a = std::abs(d);
    q.col(c) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

QuantumState random_pure_state(int dim, Rng& rng) {
  if (dim < 1) throw InvalidDimension("dimension must be >= 1, got " + std::to_string(dim));
  ComplexVector psi(dim);
  for (Eigen::Index i = 0; i < dim; ++i) psi[i] = rng.complex_normal();
  return QuantumState::pure(psi);
}

QuantumState random_pure_state(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_pure_state(dim, rng);
}

QuantumState random_state_with_spectrum(const DistVector<double>& spectrum, Rng& rng) {
  const ComplexMatrix u = random_unitary(static_cast<int>(spectrum.size()), rng);
  return QuantumState::from_spectrum(spectrum, u);
}

QuantumState random_state_with_spectrum(const DistVector<double>& spectrum,
                                        std::uint64_t seed) {
  Rng rng(seed);
  return random_state_with_spectrum(spectrum, rng);
}

}  // namespace majbound
