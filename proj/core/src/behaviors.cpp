#include "indist/behaviors.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "indist/optimize.hpp"

namespace indist {
namespace {

int party_bit(std::uint32_t value, int party, int n) {
  return (value >> (n - 1 - party)) & 1u;
}

void check_party_count(int n) {
  if (n < 1 || n > 10) throw std::invalid_argument("behavior: party count out of range");
}

void apply_single_qubit(Vector& state, const Matrix& op, int qubit, int n) {
  // qubit 0 owns the most significant bit of the basis index
  const int shift = n - 1 - qubit;
  const Eigen::Index mask = Eigen::Index(1) << shift;
  for (Eigen::Index idx = 0; idx < state.size(); ++idx) {
    if (idx & mask) continue;
    const Complex a0 = state[idx];
    const Complex a1 = state[idx | mask];
    state[idx] = op(0, 0) * a0 + op(0, 1) * a1;
    state[idx | mask] = op(1, 0) * a0 + op(1, 1) * a1;
  }
}

}  // namespace

std::uint32_t bit_parity(std::uint32_t v) { return std::popcount(v) & 1u; }

std::string bits_to_string(std::uint32_t v, int n) {
  std::string s(n, '0');
  for (int i = 0; i < n; ++i)
    if (party_bit(v, i, n)) s[i] = '1';
  return s;
}

std::uint32_t string_to_bits(const std::string& s) {
  std::uint32_t v = 0;
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("expected a 0/1 string");
    v = (v << 1) | (c == '1' ? 1u : 0u);
  }
  return v;
}

Behavior::Behavior(int parties) : n_(parties) {
  check_party_count(parties);
  table_.assign(std::size_t(1) << (2 * parties), 0.0);
}

Behavior Behavior::uniform(int parties) {
  Behavior b(parties);
  const double value = 1.0 / double(b.outcomes());
  for (double& v : b.table_) v = value;
  return b;
}

double Behavior::p(std::uint32_t x, std::uint32_t b) const {
  return table_[(std::size_t(x) << n_) | b];
}

double& Behavior::p(std::uint32_t x, std::uint32_t b) {
  return table_[(std::size_t(x) << n_) | b];
}

void Behavior::validate(double tol) const {
  for (int x = 0; x < contexts(); ++x) {
    double row = 0.0;
    for (int b = 0; b < outcomes(); ++b) {
      const double value = p(x, b);
      if (value < -1e-12)
        throw std::invalid_argument("behavior: negative probability");
      row += value;
    }
    if (std::abs(row - 1.0) > tol)
      throw std::invalid_argument("behavior: context row does not sum to 1");
  }
}

double Behavior::correlator(std::uint32_t x) const {
  double e = 0.0;
  for (int b = 0; b < outcomes(); ++b)
    e += (bit_parity(b) ? -1.0 : 1.0) * p(x, b);
  return e;
}

std::string Behavior::to_json_string(int indent) const {
  nlohmann::ordered_json table;
  for (int x = 0; x < contexts(); ++x) {
    nlohmann::ordered_json row;
    for (int b = 0; b < outcomes(); ++b) row[bits_to_string(b, n_)] = p(x, b);
    table[bits_to_string(x, n_)] = row;
  }
  nlohmann::ordered_json doc;
  doc["n"] = n_;
  doc["table"] = table;
  return doc.dump(indent);
}

Behavior Behavior::from_json_string(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  Behavior out(doc.at("n").get<int>());
  for (const auto& [xs, row] : doc.at("table").items()) {
    if (static_cast<int>(xs.size()) != out.n_)
      throw std::invalid_argument("behavior json: bad context width");
    const std::uint32_t x = string_to_bits(xs);
    for (const auto& [bs, value] : row.items()) {
      if (static_cast<int>(bs.size()) != out.n_)
        throw std::invalid_argument("behavior json: bad outcome width");
      out.p(x, string_to_bits(bs)) = value.get<double>();
    }
  }
  return out;
}

SignPattern svetlichny_signs(int n) {
  if (n < 2) throw std::invalid_argument("svetlichny_signs: need n >= 2");
  SignPattern p;
  p.n = 2;
  p.signs = {+1, +1, +1, -1};
  for (int m = 3; m <= n; ++m) {
    SignPattern next;
    next.n = m;
    next.signs.assign(std::size_t(1) << m, 0);
    const std::uint32_t head_mask = (1u << (m - 1)) - 1;
    for (std::uint32_t x = 0; x < next.signs.size(); ++x) {
      const std::uint32_t head = x >> 1;        // parties 1..m-1
      const std::uint32_t last = x & 1u;        // the appended party
      next.signs[x] = last ? p.signs[head] : p.signs[~head & head_mask];
    }
    p = std::move(next);
  }
  return p;
}

bool is_no_signaling(const Behavior& b, double tol) {
  const int n = b.parties();
  for (int party = 0; party < n; ++party) {
    const std::uint32_t setting_mask = 1u << (n - 1 - party);
    const std::uint32_t outcome_mask = setting_mask;
    for (int x = 0; x < b.contexts(); ++x) {
      if (x & setting_mask) continue;  // compare x_i = 0 against x_i = 1
      const std::uint32_t x_other = x | setting_mask;
      for (int rest = 0; rest < b.outcomes(); ++rest) {
        if (rest & outcome_mask) continue;  // enumerate the others' outcomes
        double m0 = 0.0, m1 = 0.0;
        for (int bit = 0; bit < 2; ++bit) {
          const std::uint32_t outcome = rest | (bit ? outcome_mask : 0u);
          m0 += b.p(x, outcome);
          m1 += b.p(x_other, outcome);
        }
        if (std::abs(m0 - m1) > tol) return false;
      }
    }
  }
  return true;
}

double s_n(const Behavior& b, const SignPattern& p) {
  if (b.parties() != p.n) throw std::invalid_argument("s_n: party count mismatch");
  double total = 0.0;
  for (int x = 0; x < b.contexts(); ++x) total += p.signs[x] * b.correlator(x);
  return total;
}

double sigma_n(const Behavior& b, const SignPattern& p) {
  if (b.parties() != p.n) throw std::invalid_argument("sigma_n: party count mismatch");
  double total = 0.0;
  for (int x = 0; x < b.contexts(); ++x) {
    const std::uint32_t want = p.signs[x] > 0 ? 0u : 1u;
    for (int out = 0; out < b.outcomes(); ++out)
      if (bit_parity(out) == want) total += b.p(x, out);
  }
  return total;
}

double local_deterministic_max(int n, const SignPattern& p) {
  if (n != p.n) throw std::invalid_argument("local_deterministic_max: n mismatch");
  if (n < 2 || n > 6)
    throw std::invalid_argument("local_deterministic_max: n must lie in [2, 6]");
  const std::uint32_t strategies = 1u << (2 * n);
  double best = -1e300;
  for (std::uint32_t strat = 0; strat < strategies; ++strat) {
    // party i answers a_i(x_i) = +-1, bit (2i + x_i) of strat
    double total = 0.0;
    for (std::uint32_t x = 0; x < (1u << n); ++x) {
      int product = 1;
      for (int i = 0; i < n; ++i) {
        const int xi = party_bit(x, i, n);
        const int bit = (strat >> (2 * i + xi)) & 1u;
        product *= bit ? -1 : 1;
      }
      total += p.signs[x] * product;
    }
    if (total > best) best = total;
  }
  return best;
}

Behavior quantum_behavior(const Vector& state,
                          const std::vector<std::array<Matrix, 2>>& observables) {
  const int n = static_cast<int>(observables.size());
  check_party_count(n);
  if (state.size() != (Eigen::Index(1) << n))
    throw std::invalid_argument("quantum_behavior: state dimension mismatch");
  if (std::abs(state.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("quantum_behavior: state must be normalized");
  for (const auto& pair : observables)
    for (const auto& o : pair) {
      if (o.rows() != 2 || o.cols() != 2 || !is_hermitian(o, 1e-10))
        throw std::invalid_argument("quantum_behavior: observables must be 2x2 Hermitian");
      if ((o * o - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("quantum_behavior: observables must square to I");
    }

  Behavior out(n);
  for (int x = 0; x < out.contexts(); ++x) {
    for (int b = 0; b < out.outcomes(); ++b) {
      Vector projected = state;
      for (int i = 0; i < n; ++i) {
        const Matrix& o = observables[i][party_bit(x, i, n)];
        const double sign = party_bit(b, i, n) ? -1.0 : 1.0;
        const Matrix projector = 0.5 * (Matrix::Identity(2, 2) + sign * o);
        apply_single_qubit(projected, projector, i, n);
      }
      const double prob = state.dot(projected).real();
      out.p(x, b) = std::max(prob, 0.0);
    }
  }
  return out;
}

Behavior quantum_behavior(const Vector& state,
                          const std::vector<std::array<BlochAngles, 2>>& angles) {
  std::vector<std::array<Matrix, 2>> obs;
  obs.reserve(angles.size());
  for (const auto& pair : angles) {
    std::array<Matrix, 2> converted;
    for (int s = 0; s < 2; ++s) {
      const auto& a = pair[s];
      converted[s] = std::cos(a.polar) * pauli_z() +
                     std::sin(a.polar) * std::cos(a.azimuth) * pauli_x() +
                     std::sin(a.polar) * std::sin(a.azimuth) * pauli_y();
    }
    obs.push_back(std::move(converted));
  }
  return quantum_behavior(state, obs);
}

Behavior pr_like_box() {
  Behavior b(2);
  for (std::uint32_t x : {0u, 1u, 2u}) {
    b.p(x, 0b00) = 0.5;
    b.p(x, 0b11) = 0.5;
  }
  for (std::uint32_t out = 0; out < 4; ++out) b.p(0b11, out) = 0.25;
  return b;
}

TransitivityReport transitivity_check(const Behavior& b, double tol) {
  if (b.parties() != 2)
    throw std::invalid_argument("transitivity_check: defined for two parties");
  TransitivityReport report;
  std::array<double, 4> e{};
  std::array<bool, 4> perfect{};
  for (std::uint32_t x = 0; x < 4; ++x) {
    e[x] = b.correlator(x);
    perfect[x] = std::abs(e[x]) >= 1.0 - tol;
  }
  const bool all_perfect = perfect[0] && perfect[1] && perfect[2] && perfect[3];
  if (all_perfect) {
    // one cycle condition: the product of all four must be +1
    const double implied = e[0] * e[1] * e[2];
    if (std::abs(e[3] - implied) > tol)
      report.violations.push_back({{0, 1, 2}, 3, implied, e[3]});
    return report;
  }
  for (std::uint32_t c = 0; c < 4; ++c) {
    double implied = 1.0;
    bool premises_perfect = true;
    std::array<std::uint32_t, 3> premises{};
    int slot = 0;
    for (std::uint32_t x = 0; x < 4; ++x) {
      if (x == c) continue;
      premises[slot++] = x;
      premises_perfect = premises_perfect && perfect[x];
      implied *= e[x];
    }
    if (!premises_perfect) continue;
    if (std::abs(e[c] - implied) > tol)
      report.violations.push_back({premises, c, implied, e[c]});
  }
  return report;
}

Behavior random_behavior(int parties, std::mt19937_64& rng) {
  Behavior b(parties);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int x = 0; x < b.contexts(); ++x) {
    double row = 0.0;
    for (int out = 0; out < b.outcomes(); ++out) {
      const double v = uni(rng);
      b.p(x, out) = v;
      row += v;
    }
    for (int out = 0; out < b.outcomes(); ++out) b.p(x, out) /= row;
  }
  return b;
}

Vector ghz_state(int n) {
  check_party_count(n);
  Vector state = Vector::Zero(Eigen::Index(1) << n);
  const double inv = 1.0 / std::sqrt(2.0);
  state[0] = inv;
  state[state.size() - 1] = inv;
  return state;
}

GhzMaxResult ghz_xy_quantum_max(int n, const SignPattern& p, int starts,
                                std::uint64_t seed) {
  if (n < 2 || n > 4)
    throw std::invalid_argument("ghz_xy_quantum_max: n must lie in [2, 4]");
  if (p.n != n) throw std::invalid_argument("ghz_xy_quantum_max: pattern mismatch");
  const Vector ghz = ghz_state(n);
  constexpr double kHalfPi = 1.5707963267948966;

  auto objective = [&](const std::vector<double>& azimuths) {
    std::vector<std::array<BlochAngles, 2>> angles(n);
    for (int i = 0; i < n; ++i)
      angles[i] = {BlochAngles{kHalfPi, azimuths[2 * i]},
                   BlochAngles{kHalfPi, azimuths[2 * i + 1]}};
    return -s_n(quantum_behavior(ghz, angles), p);
  };

  std::vector<std::vector<double>> seeds;
  {
    std::vector<double> uniform(2 * n);
    for (int i = 0; i < n; ++i) {
      uniform[2 * i] = 5.0 * kHalfPi / 6.0;  // 5 pi / 12
      uniform[2 * i + 1] = 11.0 * kHalfPi / 6.0;
    }
    seeds.push_back(uniform);
    std::vector<double> staggered(2 * n, 0.0);
    for (int i = 0; i < n; ++i) staggered[2 * i + 1] = kHalfPi;
    seeds.push_back(staggered);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-2 * kHalfPi, 2 * kHalfPi);
  while (static_cast<int>(seeds.size()) < starts) {
    std::vector<double> s(2 * n);
    for (double& v : s) v = uni(rng);
    seeds.push_back(std::move(s));
  }

  GhzMaxResult best;
  best.max = -1e300;
  for (const auto& s : seeds) {
    const auto r = nelder_mead(objective, s, 0.4, 1e-9, 1e-12, 30000);
    if (-r.value > best.max) {
      best.max = -r.value;
      best.azimuths.assign(n, {0.0, 0.0});
      for (int i = 0; i < n; ++i) best.azimuths[i] = {r.x[2 * i], r.x[2 * i + 1]};
    }
  }
  return best;
}

}  // namespace indist
