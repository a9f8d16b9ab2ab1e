// n-party behaviors p(b|x) with two settings and binary outcomes per party:
// no-signaling checks, the recursive Svetlichny-type sign pattern, the S_n and
// Sigma_n functionals, exact local-deterministic maxima, Born-rule behaviors,
// and the super-quantum box with three perfect correlations.
#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "indist/linalg.hpp"

namespace indist {

std::uint32_t bit_parity(std::uint32_t v);

/// Renders party 1 as the leftmost character.
std::string bits_to_string(std::uint32_t v, int n);
std::uint32_t string_to_bits(const std::string& s);

class Behavior {
 public:
  explicit Behavior(int parties);
  static Behavior uniform(int parties);

  int parties() const { return n_; }
  int contexts() const { return 1 << n_; }
  int outcomes() const { return 1 << n_; }

  double p(std::uint32_t x, std::uint32_t b) const;
  double& p(std::uint32_t x, std::uint32_t b);

  /// Rows sum to 1 within tol; entries >= -1e-12.
  void validate(double tol = 1e-10) const;

  /// E(x) = sum_b (-1)^{parity(b)} p(b|x).
  double correlator(std::uint32_t x) const;

  /// {"n": ..., "table": {"x-string": {"b-string": p}}}
  std::string to_json_string(int indent = -1) const;
  static Behavior from_json_string(const std::string& text);

 private:
  int n_;
  std::vector<double> table_;  // index (x << n) | b
};

/// +-1 coefficient per setting string in the n-party correlation functional.
struct SignPattern {
  int n = 2;
  std::vector<int> signs;  // indexed by the context integer
};

/// Recursive pattern: the base is the CHSH signs (+,+,+,-) on (00,01,10,11);
/// each new party contributes setting 1 against the previous expression and
/// setting 0 against the expression with all setting labels inverted.
SignPattern svetlichny_signs(int n);

/// True iff every party's setting cannot influence the joint marginal of the
/// remaining parties (the standard no-signaling constraints).
bool is_no_signaling(const Behavior& b, double tol = 1e-10);

/// sum_x sign(x) E(x).
double s_n(const Behavior& b, const SignPattern& p);

/// Sum of p(b|x) over even-parity outcomes on +1 contexts and odd-parity
/// outcomes on -1 contexts; equals s_n/2 + 2^{n-1} identically.
double sigma_n(const Behavior& b, const SignPattern& p);

/// Exact maximum of s_n over all 4^n local deterministic strategies; n <= 6.
double local_deterministic_max(int n, const SignPattern& p);

/// Born-rule behavior for a 2^n-dimensional state with one +-1 observable per
/// party per setting. Observables must be Hermitian involutions.
Behavior quantum_behavior(const Vector& state,
                          const std::vector<std::array<Matrix, 2>>& observables);

struct BlochAngles {
  double polar = 0.0;
  double azimuth = 0.0;
};
Behavior quantum_behavior(const Vector& state,
                          const std::vector<std::array<BlochAngles, 2>>& angles);

/// Two-party no-signaling box with perfect correlation on contexts 00, 01, 10
/// and no correlation on 11; S_2 = 3.
Behavior pr_like_box();

struct TransitivityViolation {
  std::array<std::uint32_t, 3> premise_contexts;
  std::uint32_t implied_context;
  double implied = 0.0;
  double actual = 0.0;
};
struct TransitivityReport {
  std::vector<TransitivityViolation> violations;
};

/// Outcome algebra of +-1 variables: whenever three contexts show perfect
/// correlators, the fourth is implied to be their product. With all four
/// perfect the four triples state one cycle condition, reported at most once.
TransitivityReport transitivity_check(const Behavior& b, double tol = 1e-9);

/// Valid random behavior (each row an independent normalized sample).
Behavior random_behavior(int parties, std::mt19937_64& rng);

/// (|0...0> + |1...1>) / sqrt(2).
Vector ghz_state(int n);

struct GhzMaxResult {
  double max = 0.0;
  std::vector<std::array<double, 2>> azimuths;  // per party, per setting
};

/// Maximum of s_n over equatorial (x-y plane) measurement angles on the GHZ
/// state, evaluated through the Born-rule behavior. Multi-start Nelder-Mead
/// with a fixed seed; n <= 4.
GhzMaxResult ghz_xy_quantum_max(int n, const SignPattern& p, int starts = 24,
                                std::uint64_t seed = 0x6428);

}  // namespace indist
