#include "indist/symstate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace indist {

void require_unit_eta(Complex eta) {
  if (std::abs(std::abs(eta) - 1.0) > kUnitEtaTol)
    throw std::invalid_argument("eta must have unit modulus");
}

Vector make_superposition(const SuperpositionParams& p) {
  if (!(p.theta >= 0.0 && p.theta <= std::numbers::pi))
    throw std::invalid_argument("make_superposition: theta must lie in [0, pi]");
  Vector v(2);
  v[0] = std::cos(p.theta / 2.0);
  v[1] = std::polar(std::sin(p.theta / 2.0), p.phi);
  return v;
}

Vector bar(const Vector& k) {
  if (k.size() != 2) throw std::invalid_argument("bar: expected a dim-2 ket");
  Vector out(2);
  out[0] = k[1];
  out[1] = k[0];
  return out;
}

void LabeledTwoQubitState::validate() const {
  if (amplitudes.size() != 4)
    throw std::invalid_argument("LabeledTwoQubitState: amplitudes must have dim 4");
  require_unit_eta(eta);
  if (normalized && std::abs(amplitudes.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("LabeledTwoQubitState: amplitudes not normalized");
}

Vector symmetrize_basis(int q, int q2, Complex eta) {
  if ((q != 0 && q != 1) || (q2 != 0 && q2 != 1))
    throw std::invalid_argument("symmetrize_basis: q and q' must be bits");
  require_unit_eta(eta);
  Vector out = Vector::Zero(4);
  out[2 * q + q2] += 1.0;
  out[2 * (q ^ 1) + (q2 ^ 1)] += eta;
  return out;
}

Vector symmetrize_state(const LabeledTwoQubitState& s) {
  s.validate();
  Vector out = Vector::Zero(4);
  for (int q = 0; q < 2; ++q)
    for (int q2 = 0; q2 < 2; ++q2) {
      const Complex amp = s.amplitudes[2 * q + q2];
      if (amp == Complex{0, 0}) continue;
      out += amp * symmetrize_basis(q, q2, s.eta);
    }
  return out;
}

Complex reference_stripped_product(const Vector& phi_ket, const Vector& psi_ket,
                                   Complex eta, const Vector& fiducial) {
  if (phi_ket.size() != 2 || psi_ket.size() != 2 || fiducial.size() != 2)
    throw std::invalid_argument("reference_stripped_product: kets must have dim 2");
  require_unit_eta(eta);
  const Complex direct = fiducial.dot(phi_ket) * fiducial.dot(psi_ket);
  const Complex barred = fiducial.dot(bar(phi_ket)) * fiducial.dot(bar(psi_ket));
  return direct + eta * barred;
}

Complex reference_stripped_product(const Vector& phi_ket, const Vector& psi_ket,
                                   Complex eta) {
  return reference_stripped_product(phi_ket, psi_ket, eta, basis_ket(2, 0));
}

Vector family_state(const SuperpositionParams& p) {
  return tensor(basis_ket(2, 0), make_superposition(p));
}

}  // namespace indist
