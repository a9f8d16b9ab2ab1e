// Symmetric partial trace, reduced density matrices, the Schmidt
// decomposition for indistinguishable qubits, entanglement entropy, and the
// projector rank lemma.
//
// Two pipelines coexist and are not forced to agree: the symmetric inner
// product drives the reduced density / Schmidt machinery here, while the
// basis-level symmetrization transform lives in symstate.hpp.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "indist/linalg.hpp"
#include "indist/symstate.hpp"

namespace indist {

/// Scalars of the worked-family reduced density (1/2N) [[a, c], [c*, b]].
struct FamilyScalars {
  double a = 0.0;
  double b = 0.0;
  Complex c{0.0, 0.0};
  double n = 0.0;
};

struct ReducedDensity {
  Matrix rho;  // 2x2, Hermitian, unit trace
  std::optional<FamilyScalars> params;
};

/// Symmetric partial inner product <xi|psi>|phi> + eta <xi|phi>|psi>,
/// unnormalized.
Vector sym_partial_inner(const Vector& xi, const Vector& psi, const Vector& phi,
                         Complex eta);

/// Single-qubit reduced density of the family |0, s(theta, phi)>. For
/// eta = +1 the matrix is composed from the closed-form scalars
/// a = 4cos^2(theta/2) + sin^2(theta/2), b = sin^2(theta/2),
/// c = e^{i phi} sin(theta), N = 1 + cos^2(theta/2), and `params` is set.
/// Other eta values go through the generic symmetric trace and carry no
/// params.
ReducedDensity reduced_density_from_family(const SuperpositionParams& p,
                                           Complex eta = Complex{1.0, 0.0});

/// Single-qubit reduced density of an arbitrary two-qubit ket under the
/// symmetric partial trace. Rejects states whose symmetrized content vanishes
/// (nothing to normalize against).
ReducedDensity reduced_density(const Vector& state4,
                               Complex eta = Complex{1.0, 0.0});

/// How the per-eigenvalue basis kets pair up across the two sides.
enum class SchmidtPairing { kSame, kOrthogonal };

struct SchmidtDecomposition {
  RealVector lambdas;                            // descending, sums to 1
  std::vector<std::pair<Vector, Vector>> bases;  // (A side, B side), dim 2
  double rank_tolerance = 1e-10;
};

struct SchmidtOptions {
  Complex eta{1.0, 0.0};
  SchmidtPairing pairing = SchmidtPairing::kSame;
  double rank_tolerance = 1e-10;
  // Eigenvalue gap below which the eigenbasis is re-anchored to the state's
  // symmetrized coefficient matrix (degenerate subspaces carry no basis
  // information of their own).
  double degeneracy_tolerance = 1e-8;
};

SchmidtDecomposition schmidt_decompose(const Vector& state4,
                                       const SchmidtOptions& opt = {});
SchmidtDecomposition schmidt_decompose(const SuperpositionParams& p,
                                       const SchmidtOptions& opt = {});

/// Entropy -sum lambda log2 lambda in bits, with 0 log 0 := 0.
double von_neumann_entropy(const SchmidtDecomposition& d);

/// Number of eigenvalues above the decomposition's rank tolerance.
int schmidt_rank(const SchmidtDecomposition& d);

struct SubspaceProjector {
  Matrix matrix;
  std::vector<int> basis_labels;  // computational indices when applicable
};

/// Diagonal 0/1 projector onto the listed computational basis states.
/// Duplicate or out-of-range indices are rejected.
SubspaceProjector indist_projector(const std::vector<int>& basis_indices,
                                   Eigen::Index dim = 4);

/// Sum of rank-1 projectors onto the two-qubit Schmidt product kets, one per
/// eigenvalue above the rank tolerance. Requires rank >= 1.
SubspaceProjector schmidt_projector(const SchmidtDecomposition& d);

/// Validates that the matrix is an orthogonal projector and returns its rank
/// (trace rounded to the nearest integer, required within 0.5).
int projector_rank(const SubspaceProjector& p, double tol = 1e-10);

struct RankLemmaReport {
  double norm = 0.0;  // spectral norm of P - Q
  int rank_p = 0;
  int rank_q = 0;
  bool lemma_applicable = false;  // norm < 1
  bool consistent = false;        // !applicable or ranks equal
};

/// Checks the projector rank lemma: ||P - Q|| < 1 forces equal ranks.
RankLemmaReport rank_lemma_check(const SubspaceProjector& p,
                                 const SubspaceProjector& q);

}  // namespace indist
