#include "indist/linalg.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace indist {

Matrix identity2() { return Matrix::Identity(2, 2); }

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Vector basis_ket(Eigen::Index dim, Eigen::Index k) {
  if (k < 0 || k >= dim) throw std::invalid_argument("basis_ket: index out of range");
  Vector v = Vector::Zero(dim);
  v[k] = 1.0;
  return v;
}

Matrix dagger(const Matrix& m) { return m.adjoint(); }

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector tensor(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

void fix_phase(Eigen::Ref<Vector> v) {
  Eigen::Index best = -1;
  double best_mag = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > best_mag) {  // strict: first index wins ties
      best_mag = mag;
      best = i;
    }
  }
  if (best < 0 || best_mag == 0.0) return;
  v *= std::conj(v[best]) / best_mag;
}

EigenSystem hermitian_eig(const Matrix& m, double hermitian_tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eig: matrix not square");
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > hermitian_tol) {
    std::ostringstream msg;
    msg << "hermitian_eig: input deviates from Hermitian by " << dev
        << " (tolerance " << hermitian_tol << ")";
    throw std::invalid_argument(msg.str());
  }
  const Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");

  const Eigen::Index n = m.rows();
  EigenSystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {  // solver returns ascending order
    out.values[k] = solver.eigenvalues()[n - 1 - k];
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    fix_phase(out.vectors.col(k));
  }
  return out;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
}

Vector random_ket(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v[i] = Complex(re, im);
  }
  const double norm = v.norm();
  if (norm == 0.0) return basis_ket(dim, 0);
  return v / norm;
}

Matrix random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      a(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {  // make R's diagonal phases canonical
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0) q.col(j) *= d / mag;
  }
  return q;
}

Matrix random_projector(Eigen::Index dim, Eigen::Index rank, std::mt19937_64& rng) {
  if (rank < 0 || rank > dim)
    throw std::invalid_argument("random_projector: rank out of range");
  if (rank == 0) return Matrix::Zero(dim, dim);
  const Matrix u = random_unitary(dim, rng);
  const Matrix v = u.leftCols(rank);
  return v * v.adjoint();
}

Matrix random_near_identity_unitary(Eigen::Index dim, double strength,
                                    std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  const Matrix h = 0.5 * (g + g.adjoint());
  const EigenSystem eig = hermitian_eig(h, 1e-9);
  Matrix u = Matrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k)
    u += std::polar(1.0, strength * eig.values[k]) * eig.vectors.col(k) *
         eig.vectors.col(k).adjoint();
  return u;
}

}  // namespace indist
