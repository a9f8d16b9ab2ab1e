// Reference-labeled qubit pairs and the symmetrization that imposes
// information indistinguishability: each computational basis |q,q'> is
// replaced by the two-term combination |q,q'> + eta |qbar,qbar'>, so only the
// relative orientation of the two coding bits survives.
#pragma once

#include <string>

#include "indist/linalg.hpp"

namespace indist {

inline constexpr double kUnitEtaTol = 1e-12;

/// Throws std::invalid_argument unless |eta| = 1 within kUnitEtaTol.
void require_unit_eta(Complex eta);

/// Angles for |s> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct SuperpositionParams {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // radians
};

/// Dim-2 ket for the given angles; theta outside [0, pi] is rejected.
Vector make_superposition(const SuperpositionParams& p);

/// Linear extension of q -> q xor 1: exchanges the |0> and |1> amplitudes.
Vector bar(const Vector& k);

/// Two distinct qubits carrying opaque physical reference labels.
struct LabeledTwoQubitState {
  std::string ref_a = "r";
  std::string ref_b = "r'";
  Vector amplitudes;        // dim 4, computational basis |q,q'>
  Complex eta{1.0, 0.0};    // |eta| = 1
  bool normalized = true;   // false flags intentionally unnormalized input
  void validate() const;
};

/// |q,q'> + eta |qbar,qbar'>, unnormalized; the reference labels are dropped.
Vector symmetrize_basis(int q, int q2, Complex eta);

/// Linear extension of symmetrize_basis over the computational expansion.
/// Output is unnormalized.
Vector symmetrize_state(const LabeledTwoQubitState& s);

/// Reference-stripped product <r|r,phi><r'|r',psi> + eta <r|r,phibar><r'|r',psibar>
/// with the reference projections realized as amplitude extraction against a
/// fiducial basis vector (|0> in the two-argument overload).
Complex reference_stripped_product(const Vector& phi_ket, const Vector& psi_ket,
                                   Complex eta, const Vector& fiducial);
Complex reference_stripped_product(const Vector& phi_ket, const Vector& psi_ket,
                                   Complex eta);

/// The worked family |0, s(theta, phi)> as a dim-4 product ket.
Vector family_state(const SuperpositionParams& p);

}  // namespace indist
