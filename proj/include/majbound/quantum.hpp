#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "majbound/dist_vector.hpp"
#include "majbound/errors.hpp"

namespace majbound {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = VectorX<double>;

/// Max-abs deviation allowed between A and its adjoint.
inline constexpr double kHermTol = 1e-10;

/// Square complex matrix certified Hermitian at construction.
class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix m);
  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

/// Eigenvalues sorted descending; eigenvectors() column i belongs to
/// eigenvalues()[i].
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

SpectralDecomposition spectral_decompose(const HermitianOperator& a);

/// Projective measurement (orthonormal basis, columns are the basis vectors)
/// or general POVM (explicit effect operators summing to the identity).
class Measurement {
 public:
  static Measurement projective(ComplexMatrix basis);
  static Measurement povm(std::vector<ComplexMatrix> effects);

  bool is_projective() const { return effects_.empty(); }
  Eigen::Index dim() const { return dim_; }
  int outcome_count() const { return outcomes_; }
  /// Effect operator for one outcome: |b_i><b_i| in the projective case.
  ComplexMatrix effect(int outcome) const;
  /// Projective only.
  const ComplexMatrix& basis() const;

 private:
  Measurement() = default;
  ComplexMatrix basis_;
  std::vector<ComplexMatrix> effects_;
  Eigen::Index dim_ = 0;
  int outcomes_ = 0;
};

/// Density operator; validated Hermitian, PSD and unit trace.
class QuantumState {
 public:
  static QuantumState pure(const ComplexVector& psi);
  static QuantumState density(ComplexMatrix rho);
  /// rho = U diag(spectrum) U^dagger for a unitary whose columns carry the
  /// descending spectrum.
  static QuantumState from_spectrum(const DistVector<double>& spectrum,
                                    const ComplexMatrix& basis);
  const ComplexMatrix& rho() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }

 private:
  explicit QuantumState(ComplexMatrix rho) : rho_(std::move(rho)) {}
  ComplexMatrix rho_;
};

QuantumState maximally_mixed(int dim);

/// Born-rule probabilities in outcome order (not sorted).
RealVector outcome_probabilities(const Measurement& m, const QuantumState& state);
/// Same, sorted descending.
DistVector<double> outcome_distribution(const Measurement& m, const QuantumState& state);
/// Concatenation of all outcome probabilities across measurements, sorted
/// descending; mass equals the number of measurements.
DistVector<double> direct_sum_distribution(std::span<const Measurement> ms,
                                           const QuantumState& state);

/// Deterministic random stream: mt19937_64 plus an explicit Box-Muller
/// transform, so sequences reproduce byte-for-byte across standard
/// libraries (std::normal_distribution does not guarantee that).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) { gen_.seed(seed); }
  std::uint64_t seed() const { return s_; }
  double uniform();  // [0, 1)
  double normal();
  Complex complex_normal();

 private:
  std::uint64_t s_;
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Haar-distributed unitary via QR of a Ginibre matrix with the R-diagonal
/// phase fix.
ComplexMatrix random_unitary(int dim, Rng& rng);

QuantumState random_pure_state(int dim, Rng& rng);
QuantumState random_pure_state(int dim, std::uint64_t seed);
/// Random state with the given eigenvalues: spectrum conjugated by a Haar
/// unitary.
QuantumState random_state_with_spectrum(const DistVector<double>& spectrum, Rng& rng);
QuantumState random_state_with_spectrum(const DistVector<double>& spectrum,
                                        std::uint64_t seed);

}  // namespace majbound
