// Dense complex linear algebra kernel for small dimensions (<= ~64):
// tensor products, Hermitian eigendecomposition, spectral norm, and the
// deterministic sampling helpers used by the randomized checks.
#pragma once

#include <complex>
#include <random>

#include <Eigen/Dense>

namespace indist {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;

Matrix identity2();
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

/// Computational basis ket |k> of the given dimension.
Vector basis_ket(Eigen::Index dim, Eigen::Index k);

Matrix dagger(const Matrix& m);

bool is_hermitian(const Matrix& m, double tol = kHermitianTol);

/// Kronecker product; dimensions multiply.
Matrix tensor(const Matrix& a, const Matrix& b);
Vector tensor(const Vector& a, const Vector& b);

struct EigenSystem {
  RealVector values;  // descending
  Matrix vectors;     // orthonormal columns, vectors.col(k) belongs to values[k]
};

/// Hermitian eigendecomposition with eigenvalues sorted descending.
/// Column phases are fixed so the largest-magnitude component of every
/// eigenvector is real positive (first such component on ties), which keeps
/// repeated runs bit-identical. Throws std::invalid_argument when the input
/// is not Hermitian within `hermitian_tol`.
EigenSystem hermitian_eig(const Matrix& m, double hermitian_tol = kHermitianTol);

/// Largest singular value.
double spectral_norm(const Matrix& m);

/// Rotate a vector by a global phase so its largest-magnitude component is
/// real positive. No-op for the zero vector.
void fix_phase(Eigen::Ref<Vector> v);

/// Haar-distributed unitary from a seeded generator.
Matrix random_unitary(Eigen::Index dim, std::mt19937_64& rng);

/// Random rank-r orthogonal projector: P = V V^dagger with Haar columns V.
Matrix random_projector(Eigen::Index dim, Eigen::Index rank, std::mt19937_64& rng);

/// exp(i * strength * H) for a random Gaussian Hermitian H; small strengths
/// give unitaries close to the identity.
Matrix random_near_identity_unitary(Eigen::Index dim, double strength,
                                    std::mt19937_64& rng);

/// Random normalized state vector.
Vector random_ket(Eigen::Index dim, std::mt19937_64& rng);

}  // namespace indist
