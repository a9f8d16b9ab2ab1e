// Correlators from coefficient expansions over trace-orthogonal local
// operators, the CHSH functional, and the constrained maximizations that
// bound it (including the quantum 2*sqrt(2) point).
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "indist/linalg.hpp"
#include "indist/schmidt.hpp"

namespace indist {

enum class Party { kA, kB };

/// Local +-1-valued operator expanded over a shared family of pairwise
/// trace-orthogonal operators: A = sum_i c_i O_i, with sum |c_i|^2 = 1.
struct CorrelatorExpansion {
  Eigen::VectorXcd coeffs;
  std::vector<Matrix> basis_ops;
  Party side = Party::kA;
  std::string reference;  // physical reference label (r_A, r_B)
  void validate() const;
};

/// <A B> = sum_{ij} c_i c_j Tr(Pi O_i x O_j). The imaginary residue must stay
/// below 1e-10; the real part is returned.
double correlator(const SubspaceProjector& pi, const CorrelatorExpansion& a,
                  const CorrelatorExpansion& b);

struct ChshSetting {
  CorrelatorExpansion a1, a2, b1, b2;
  SubspaceProjector target;
};

/// <A1B1> + <A1B2> + <A2B1> - <A2B2>.
double chsh_value(const ChshSetting& s);

/// First constrained case: S2 = 1 + sin x + sin y - sin x sin y +- cos x cos y.
double case_one_value(double x, double y, int sign);

/// Second constrained case: S2 = sin x + sin y + cos x -+ cos y
/// (sign = +1 keeps the canonical minus on the last term).
double case_two_value(double x, double y, int sign = +1);

struct CaseMaxResult {
  double max = 0.0;
  double x = 0.0;
  double y = 0.0;
  int sign = +1;
};

/// Dense-grid maximum (no refinement); grid_points per axis over [-pi, pi],
/// both signs scanned.
CaseMaxResult case_one_grid_max(int grid_points);
CaseMaxResult case_two_grid_max(int grid_points);

/// Grid scan (at least 1024 points per axis) followed by Nelder-Mead
/// refinement of the best candidates.
CaseMaxResult maximize_case_one(int grid_points = 1024);
CaseMaxResult maximize_case_two(int grid_points = 1024);

/// +-1 observable n.sigma for a Bloch direction.
Matrix bloch_observable(double polar, double azimuth);

/// Measurement angles for (A1, A2, B1, B2), each {polar, azimuth}.
using ChshAngles = std::array<std::array<double, 2>, 4>;

/// CHSH value of a two-qubit state at fixed measurement directions.
double chsh_at_angles(const Vector& state4, const ChshAngles& angles);

struct QuantumChshResult {
  double max = 0.0;
  ChshAngles angles{};
};

/// Maximum of the CHSH functional over the four measurement directions,
/// multi-start Nelder-Mead with a fixed seed. Accurate to ~1e-6 on the
/// states exercised here.
QuantumChshResult chsh_quantum_max(const Vector& state4, int starts = 32,
                                   std::uint64_t seed = 0x1d157);

}  // namespace indist
