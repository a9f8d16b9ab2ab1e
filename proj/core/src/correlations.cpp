#include "indist/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "indist/optimize.hpp"

namespace indist {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> axis_grid(int grid_points) {
  std::vector<double> xs(grid_points);
  for (int i = 0; i < grid_points; ++i)
    xs[i] = -kPi + 2.0 * kPi * double(i) / double(grid_points - 1);
  return xs;
}

CaseMaxResult grid_scan(double (*f)(double, double, int), int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("grid scan needs >= 2 points");
  const auto xs = axis_grid(grid_points);
  CaseMaxResult best{-1e300, 0.0, 0.0, +1};
  for (int sign : {+1, -1})
    for (double x : xs)
      for (double y : xs) {
        const double v = f(x, y, sign);
        if (v > best.max) best = {v, x, y, sign};
      }
  return best;
}

CaseMaxResult refine(double (*f)(double, double, int), CaseMaxResult seed) {
  const auto result = nelder_mead(
      [&](const std::vector<double>& p) { return -f(p[0], p[1], seed.sign); },
      {seed.x, seed.y}, 0.05, 1e-11, 1e-13);
  if (-result.value > seed.max)
    return {-result.value, result.x[0], result.x[1], seed.sign};
  return seed;
}

CaseMaxResult maximize_case(double (*f)(double, double, int), int grid_points) {
  grid_points = std::max(grid_points, 1024);
  CaseMaxResult best{-1e300, 0.0, 0.0, +1};
  for (int sign : {+1, -1}) {
    const auto xs = axis_grid(grid_points);
    CaseMaxResult grid_best{-1e300, 0.0, 0.0, sign};
    for (double x : xs)
      for (double y : xs) {
        const double v = f(x, y, sign);
        if (v > grid_best.max) grid_best = {v, x, y, sign};
      }
    const CaseMaxResult refined = refine(f, grid_best);
    if (refined.max > best.max) best = refined;
  }
  return best;
}

}  // namespace

void CorrelatorExpansion::validate() const {
  if (coeffs.size() != static_cast<Eigen::Index>(basis_ops.size()))
    throw std::invalid_argument("CorrelatorExpansion: one coefficient per operator");
  if (coeffs.size() == 0)
    throw std::invalid_argument("CorrelatorExpansion: empty expansion");
  if (std::abs(coeffs.squaredNorm() - 1.0) > 1e-10)
    throw std::invalid_argument("CorrelatorExpansion: coefficients must satisfy sum |c|^2 = 1");
  for (size_t i = 0; i < basis_ops.size(); ++i)
    for (size_t j = i + 1; j < basis_ops.size(); ++j) {
      const Complex overlap = (basis_ops[i].adjoint() * basis_ops[j]).trace();
      if (std::abs(overlap) > 1e-10)
        throw std::invalid_argument("CorrelatorExpansion: operators not trace-orthogonal");
    }
}

double correlator(const SubspaceProjector& pi, const CorrelatorExpansion& a,
                  const CorrelatorExpansion& b) {
  a.validate();
  b.validate();
  const Eigen::Index local_dim_a = a.basis_ops[0].rows();
  const Eigen::Index local_dim_b = b.basis_ops[0].rows();
  if (pi.matrix.rows() != local_dim_a * local_dim_b)
    throw std::invalid_argument("correlator: projector dimension mismatch");

  Complex total{0.0, 0.0};
  for (Eigen::Index i = 0; i < a.coeffs.size(); ++i)
    for (Eigen::Index j = 0; j < b.coeffs.size(); ++j) {
      const Complex trace =
          (pi.matrix * tensor(a.basis_ops[i], b.basis_ops[j])).trace();
      total += a.coeffs[i] * b.coeffs[j] * trace;
    }
  if (std::abs(total.imag()) > 1e-10)
    throw std::runtime_error("correlator: imaginary residue above tolerance");
  return total.real();
}

double chsh_value(const ChshSetting& s) {
  return correlator(s.target, s.a1, s.b1) + correlator(s.target, s.a1, s.b2) +
         correlator(s.target, s.a2, s.b1) - correlator(s.target, s.a2, s.b2);
}

double case_one_value(double x, double y, int sign) {
  return 1.0 + std::sin(x) + std::sin(y) - std::sin(x) * std::sin(y) +
         sign * std::cos(x) * std::cos(y);
}

double case_two_value(double x, double y, int sign) {
  return std::sin(x) + std::sin(y) + std::cos(x) - sign * std::cos(y);
}

CaseMaxResult case_one_grid_max(int grid_points) {
  return grid_scan(&case_one_value, grid_points);
}

CaseMaxResult case_two_grid_max(int grid_points) {
  return grid_scan(&case_two_value, grid_points);
}

CaseMaxResult maximize_case_one(int grid_points) {
  return maximize_case(&case_one_value, grid_points);
}

CaseMaxResult maximize_case_two(int grid_points) {
  return maximize_case(&case_two_value, grid_points);
}

Matrix bloch_observable(double polar, double azimuth) {
  return std::cos(polar) * pauli_z() +
         std::sin(polar) * std::cos(azimuth) * pauli_x() +
         std::sin(polar) * std::sin(azimuth) * pauli_y();
}

double chsh_at_angles(const Vector& state4, const ChshAngles& angles) {
  if (state4.size() != 4)
    throw std::invalid_argument("chsh_at_angles: expected a dim-4 ket");
  std::array<Matrix, 4> obs;
  for (int i = 0; i < 4; ++i) obs[i] = bloch_observable(angles[i][0], angles[i][1]);
  auto expect = [&](const Matrix& a, const Matrix& b) {
    return (state4.adjoint() * tensor(a, b) * state4)(0, 0).real();
  };
  return expect(obs[0], obs[2]) + expect(obs[0], obs[3]) +
         expect(obs[1], obs[2]) - expect(obs[1], obs[3]);
}

QuantumChshResult chsh_quantum_max(const Vector& state4, int starts,
                                   std::uint64_t seed) {
  if (state4.size() != 4)
    throw std::invalid_argument("chsh_quantum_max: expected a dim-4 ket");
  if (std::abs(state4.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("chsh_quantum_max: state must be normalized");

  auto objective = [&](const std::vector<double>& p) {
    ChshAngles angles{{{p[0], p[1]}, {p[2], p[3]}, {p[4], p[5]}, {p[6], p[7]}}};
    return -chsh_at_angles(state4, angles);
  };

  std::vector<std::vector<double>> seeds;
  // canonical CHSH geometry (optimal for the Bell state), plus its z-aligned cousin
  seeds.push_back({0.0, 0.0, kPi / 2, 0.0, kPi / 4, 0.0, -kPi / 4, 0.0});
  seeds.push_back({0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-kPi, kPi);
  while (static_cast<int>(seeds.size()) < starts) {
    std::vector<double> p(8);
    for (double& v : p) v = uni(rng);
    seeds.push_back(std::move(p));
  }

  QuantumChshResult best;
  best.max = -1e300;
  for (const auto& s : seeds) {
    const auto r = nelder_mead(objective, s, 0.3, 1e-9, 1e-12, 40000);
    if (-r.value > best.max) {
      best.max = -r.value;
      for (int i = 0; i < 4; ++i) best.angles[i] = {r.x[2 * i], r.x[2 * i + 1]};
    }
  }
  return best;
}

}  // namespace indist
