#include "indist/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace indist {
namespace {

/// Coefficient matrix C with state4[2q + q'] = C(q, q').
Eigen::Matrix2cd coefficient_matrix(const Vector& state4) {
  Eigen::Matrix2cd c;
  c << state4[0], state4[1], state4[2], state4[3];
  return c;
}

/// Symmetrized coefficient matrix C + eta C^T. Its rows are the partial
/// inner products <k|Phi> of the symmetric product.
Eigen::Matrix2cd effective_coefficients(const Vector& state4, Complex eta) {
  const Eigen::Matrix2cd c = coefficient_matrix(state4);
  return c + eta * c.transpose();
}

/// rho^(1) = (1/2N) sum_k conj(<k|Phi>) conj(<k|Phi>)^dagger, with
/// 2N = sum_k ||<k|Phi>||^2. The conjugation places the family's closed-form
/// scalar c = e^{i phi} sin(theta) in the (0,1) entry.
Matrix reduced_from_effective(const Eigen::Matrix2cd& c_eff) {
  Eigen::Matrix2cd gram = Eigen::Matrix2cd::Zero();
  double two_n = 0.0;
  for (int k = 0; k < 2; ++k) {
    const Eigen::Vector2cd v = c_eff.row(k).transpose();
    gram += v * v.adjoint();
    two_n += v.squaredNorm();
  }
  if (two_n < 1e-12)
    throw std::invalid_argument(
        "reduced_density: state has no content under the symmetric product");
  return gram.conjugate() / two_n;
}

/// Within a (near-)degenerate eigenvalue block, the reduced density fixes no
/// basis. Re-anchor the block to the state's symmetrized bilinear form: for
/// eta = +1 the block form W = B^T conj(C_eff) B is complex symmetric with
/// commuting real and imaginary parts, and their common real-orthogonal
/// eigenbasis diagonalizes the state in the block. Off the bosonic case
/// (W not symmetric) this is a no-op.
void anchor_degenerate_block(Matrix& vectors, const Eigen::Matrix2cd& c_eff_conj) {
  Eigen::Matrix2cd b;
  b << vectors(0, 0), vectors(0, 1), vectors(1, 0), vectors(1, 1);
  const Eigen::Matrix2cd w = b.transpose() * c_eff_conj * b;
  if ((w - w.transpose()).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + w.cwiseAbs().maxCoeff()))
    return;
  const Eigen::Matrix2d re = w.real();
  const Eigen::Matrix2d im = w.imag();
  auto spread = [](const Eigen::Matrix2d& m) {
    return std::hypot(m(0, 0) - m(1, 1), 2.0 * m(0, 1));
  };
  const Eigen::Matrix2d& pick = spread(re) >= spread(im) ? re : im;
  if (spread(pick) < 1e-12 * (1.0 + pick.cwiseAbs().maxCoeff())) return;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(0.5 * (pick + pick.transpose()));
  Eigen::Matrix2d rot;
  rot.col(0) = solver.eigenvectors().col(1);  // descending
  rot.col(1) = solver.eigenvectors().col(0);
  vectors = vectors * rot.cast<Complex>();
  fix_phase(vectors.col(0));
  fix_phase(vectors.col(1));
}

SchmidtDecomposition decompose_impl(const Matrix& rho,
                                    const Eigen::Matrix2cd& c_eff,
                                    const SchmidtOptions& opt) {
  EigenSystem eig = hermitian_eig(rho, 1e-10);
  const bool eta_is_real_sign =
      std::abs(opt.eta.imag()) < kUnitEtaTol &&
      (std::abs(opt.eta.real() - 1.0) < kUnitEtaTol ||
       std::abs(opt.eta.real() + 1.0) < kUnitEtaTol);
  if (eta_is_real_sign &&
      std::abs(eig.values[0] - eig.values[1]) <= opt.degeneracy_tolerance)
    anchor_degenerate_block(eig.vectors, c_eff.conjugate());

  SchmidtDecomposition d;
  d.rank_tolerance = opt.rank_tolerance;
  d.lambdas.resize(2);
  for (int k = 0; k < 2; ++k)
    d.lambdas[k] = std::clamp(eig.values[k], 0.0, 1.0);
  for (int k = 0; k < 2; ++k) {
    const Vector a_side = eig.vectors.col(k);
    const Vector b_side = opt.pairing == SchmidtPairing::kSame
                              ? a_side
                              : Vector(eig.vectors.col(1 - k));
    d.bases.emplace_back(a_side, b_side);
  }
  return d;
}

void validate_normalized(const Vector& state4) {
  if (state4.size() != 4)
    throw std::invalid_argument("schmidt: expected a dim-4 two-qubit ket");
  if (std::abs(state4.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("schmidt: input ket must be normalized");
}

}  // namespace

Vector sym_partial_inner(const Vector& xi, const Vector& psi, const Vector& phi,
                         Complex eta) {
  if (xi.size() != 2 || psi.size() != 2 || phi.size() != 2)
    throw std::invalid_argument("sym_partial_inner: kets must have dim 2");
  require_unit_eta(eta);
  return xi.dot(psi) * phi + eta * (xi.dot(phi) * psi);
}

ReducedDensity reduced_density(const Vector& state4, Complex eta) {
  if (state4.size() != 4)
    throw std::invalid_argument("reduced_density: expected a dim-4 ket");
  require_unit_eta(eta);
  ReducedDensity out;
  out.rho = reduced_from_effective(effective_coefficients(state4, eta));
  return out;
}

ReducedDensity reduced_density_from_family(const SuperpositionParams& p,
                                           Complex eta) {
  require_unit_eta(eta);
  if (eta != Complex{1.0, 0.0}) {
    return reduced_density(family_state(p), eta);
  }
  make_superposition(p);  // range check on theta
  const double half = p.theta / 2.0;
  FamilyScalars s;
  s.a = 4.0 * std::cos(half) * std::cos(half) + std::sin(half) * std::sin(half);
  s.b = std::sin(half) * std::sin(half);
  s.c = std::polar(std::sin(p.theta), p.phi);
  s.n = 1.0 + std::cos(half) * std::cos(half);
  ReducedDensity out;
  out.rho.resize(2, 2);
  out.rho << s.a, s.c, std::conj(s.c), s.b;
  out.rho /= 2.0 * s.n;
  out.params = s;
  return out;
}

SchmidtDecomposition schmidt_decompose(const Vector& state4,
                                       const SchmidtOptions& opt) {
  validate_normalized(state4);
  require_unit_eta(opt.eta);
  const Eigen::Matrix2cd c_eff = effective_coefficients(state4, opt.eta);
  const Matrix rho = reduced_from_effective(c_eff);
  return decompose_impl(rho, c_eff, opt);
}

SchmidtDecomposition schmidt_decompose(const SuperpositionParams& p,
                                       const SchmidtOptions& opt) {
  require_unit_eta(opt.eta);
  const ReducedDensity rd = reduced_density_from_family(p, opt.eta);
  const Eigen::Matrix2cd c_eff = effective_coefficients(family_state(p), opt.eta);
  return decompose_impl(rd.rho, c_eff, opt);
}

double von_neumann_entropy(const SchmidtDecomposition& d) {
  double bits = 0.0;
  for (Eigen::Index k = 0; k < d.lambdas.size(); ++k) {
    const double lambda = d.lambdas[k];
    if (lambda > 0.0) bits -= lambda * std::log2(lambda);
  }
  return bits;
}

int schmidt_rank(const SchmidtDecomposition& d) {
  int rank = 0;
  for (Eigen::Index k = 0; k < d.lambdas.size(); ++k)
    if (d.lambdas[k] > d.rank_tolerance) ++rank;
  return rank;
}

SubspaceProjector indist_projector(const std::vector<int>& basis_indices,
                                   Eigen::Index dim) {
  SubspaceProjector p;
  p.matrix = Matrix::Zero(dim, dim);
  std::vector<bool> seen(static_cast<size_t>(dim), false);
  for (int idx : basis_indices) {
    if (idx < 0 || idx >= dim)
      throw std::invalid_argument("indist_projector: basis index out of range");
    if (seen[static_cast<size_t>(idx)])
      throw std::invalid_argument("indist_projector: duplicate basis index");
    seen[static_cast<size_t>(idx)] = true;
    p.matrix(idx, idx) = 1.0;
    p.basis_labels.push_back(idx);
  }
  return p;
}

SubspaceProjector schmidt_projector(const SchmidtDecomposition& d) {
  if (schmidt_rank(d) < 1)
    throw std::invalid_argument("schmidt_projector: decomposition has rank 0");
  SubspaceProjector p;
  const Eigen::Index dim = d.bases[0].first.size() * d.bases[0].second.size();
  p.matrix = Matrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < d.lambdas.size(); ++k) {
    if (d.lambdas[k] <= d.rank_tolerance) continue;
    const Vector product = tensor(d.bases[k].first, d.bases[k].second);
    p.matrix += product * product.adjoint();
  }
  return p;
}

int projector_rank(const SubspaceProjector& p, double tol) {
  const Matrix& m = p.matrix;
  if (m.rows() != m.cols())
    throw std::invalid_argument("projector_rank: matrix not square");
  if (!is_hermitian(m, tol))
    throw std::invalid_argument("projector_rank: matrix not Hermitian");
  if ((m * m - m).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("projector_rank: matrix not idempotent");
  const double trace = m.trace().real();
  const double rounded = std::round(trace);
  if (std::abs(trace - rounded) > 0.5)
    throw std::invalid_argument("projector_rank: trace is not near an integer");
  return static_cast<int>(rounded);
}

RankLemmaReport rank_lemma_check(const SubspaceProjector& p,
                                 const SubspaceProjector& q) {
  RankLemmaReport report;
  report.rank_p = projector_rank(p);
  report.rank_q = projector_rank(q);
  if (p.matrix.rows() != q.matrix.rows())
    throw std::invalid_argument("rank_lemma_check: dimension mismatch");
  report.norm = spectral_norm(p.matrix - q.matrix);
  report.lemma_applicable = report.norm < 1.0;
  report.consistent = !report.lemma_applicable || report.rank_p == report.rank_q;
  return report;
}

}  // namespace indist
