#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <indist/behaviors.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace indist;

namespace {

constexpr double kPi = std::numbers::pi;
const double kRoot2 = std::sqrt(2.0);

Behavior bell_tsirelson_behavior() {
  Vector bell = Vector::Zero(4);
  bell[0b00] = 1.0 / kRoot2;
  bell[0b11] = 1.0 / kRoot2;
  // optimal CHSH angles in the x-z plane
  const std::vector<std::array<BlochAngles, 2>> angles = {
      {BlochAngles{0.0, 0.0}, BlochAngles{kPi / 2, 0.0}},
      {BlochAngles{kPi / 4, 0.0}, BlochAngles{-kPi / 4, 0.0}}};
  return quantum_behavior(bell, angles);
}

Behavior deterministic_box(int n, std::uint32_t outcome_bits) {
  // every context announces the same outcome string
  Behavior b(n);
  for (int x = 0; x < b.contexts(); ++x) b.p(x, outcome_bits) = 1.0;
  return b;
}

}  // namespace

TEST_CASE("bit helpers") {
  CHECK(bit_parity(0b1011) == 1);
  CHECK(bit_parity(0) == 0);
  CHECK(bits_to_string(0b01, 2) == "01");
  CHECK(string_to_bits("01") == 1);
  CHECK(string_to_bits(bits_to_string(37, 6)) == 37);
}

TEST_CASE("behavior table basics") {
  Behavior u = Behavior::uniform(2);
  u.validate();
  CHECK(u.correlator(0) == doctest::Approx(0.0));

  Behavior bad(2);
  bad.p(0, 0) = 0.7;  // row sums to 0.7
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  // JSON round trip
  std::mt19937_64 rng(31);
  for (int n : {2, 3}) {
    const Behavior b = random_behavior(n, rng);
    const Behavior back = Behavior::from_json_string(b.to_json_string());
    REQUIRE(back.parties() == n);
    for (int x = 0; x < b.contexts(); ++x)
      for (int out = 0; out < b.outcomes(); ++out)
        REQUIRE(back.p(x, out) == b.p(x, out));  // bit-exact through JSON
  }
}

TEST_CASE("no-signaling") {
  CHECK(is_no_signaling(Behavior::uniform(2), 1e-10));
  CHECK(is_no_signaling(Behavior::uniform(3), 1e-10));

  // party 1's outcome tracks party 2's setting: signaling
  Behavior s(2);
  s.p(0b00, 0b00) = 1.0;
  s.p(0b01, 0b10) = 1.0;  // flipping x2 flips party 1's outcome
  s.p(0b10, 0b00) = 1.0;
  s.p(0b11, 0b00) = 1.0;
  s.validate();
  CHECK_FALSE(is_no_signaling(s, 1e-10));

  CHECK(is_no_signaling(pr_like_box(), 1e-10));
}

TEST_CASE("svetlichny sign pattern") {
  const auto p2 = svetlichny_signs(2);
  CHECK(p2.signs == std::vector<int>{+1, +1, +1, -1});

  const auto p3 = svetlichny_signs(3);
  // recursion output: minus exactly on the all-equal contexts
  int plus = 0, minus = 0;
  for (int s : p3.signs) (s > 0 ? plus : minus)++;
  CHECK(plus == 6);
  CHECK(minus == 2);
  CHECK(p3.signs[0b000] == -1);
  CHECK(p3.signs[0b111] == -1);

  CHECK(local_deterministic_max(3, p3) == doctest::Approx(4.0));

  CHECK_THROWS_AS(svetlichny_signs(1), std::invalid_argument);
}

TEST_CASE("s_n and sigma_n") {
  const auto p2 = svetlichny_signs(2);

  SUBCASE("deterministic all-zeros strategy scores 2") {
    const Behavior b = deterministic_box(2, 0b00);
    CHECK(b.correlator(0b00) == doctest::Approx(1.0));
    CHECK(s_n(b, p2) == doctest::Approx(2.0));
    CHECK(sigma_n(b, p2) == doctest::Approx(3.0));
  }

  SUBCASE("Tsirelson behavior scores 2 sqrt 2") {
    const Behavior b = bell_tsirelson_behavior();
    CHECK(s_n(b, p2) == doctest::Approx(2.0 * kRoot2).epsilon(1e-10));
    CHECK(sigma_n(b, p2) == doctest::Approx(2.0 + kRoot2).epsilon(1e-10));
    for (std::uint32_t x : {0u, 1u, 2u})
      CHECK(b.correlator(x) == doctest::Approx(1.0 / kRoot2));
    CHECK(b.correlator(3) == doctest::Approx(-1.0 / kRoot2));
  }

  SUBCASE("super-quantum box scores 3") {
    CHECK(s_n(pr_like_box(), p2) == doctest::Approx(3.0));
  }

  SUBCASE("uniform behavior sits at sigma = 2") {
    CHECK(sigma_n(Behavior::uniform(2), p2) == doctest::Approx(2.0));
  }

  SUBCASE("sigma identity on random behaviors") {
    std::mt19937_64 rng(37);
    for (int n : {2, 3, 4}) {
      const auto p = svetlichny_signs(n);
      for (int trial = 0; trial < 1000; ++trial) {
        const Behavior b = random_behavior(n, rng);
        const double lhs = sigma_n(b, p);
        const double rhs = s_n(b, p) / 2.0 + std::ldexp(1.0, n - 1);
        REQUIRE(std::abs(lhs - rhs) < 1e-10);
      }
    }
  }
}

TEST_CASE("local deterministic maxima") {
  for (int n : {2, 3, 4, 5}) {
    const auto p = svetlichny_signs(n);
    CHECK(local_deterministic_max(n, p) == std::ldexp(1.0, n - 1));
  }
  CHECK_THROWS_AS(local_deterministic_max(7, svetlichny_signs(7)), std::invalid_argument);
}

TEST_CASE("quantum behaviors") {
  SUBCASE("deterministic Z measurements on |00>") {
    Vector zz = Vector::Zero(4);
    zz[0b00] = 1.0;
    const std::vector<std::array<Matrix, 2>> obs = {{pauli_z(), pauli_z()},
                                                    {pauli_z(), pauli_z()}};
    const Behavior b = quantum_behavior(zz, obs);
    for (int x = 0; x < 4; ++x) CHECK(b.p(x, 0b00) == doctest::Approx(1.0));
    b.validate();
  }

  SUBCASE("Bell state at the optimal angles reproduces the E pattern") {
    const Behavior b = bell_tsirelson_behavior();
    b.validate(1e-12);
    CHECK(is_no_signaling(b, 1e-10));
  }

  SUBCASE("GHZ3 with tuned x-y angles reaches 4 sqrt 2") {
    Vector ghz = Vector::Zero(8);
    ghz[0b000] = 1.0 / kRoot2;
    ghz[0b111] = 1.0 / kRoot2;
    const double u = 5.0 * kPi / 12.0;
    const double v = 11.0 * kPi / 12.0;
    const std::vector<std::array<BlochAngles, 2>> angles = {
        {BlochAngles{kPi / 2, u}, BlochAngles{kPi / 2, v}},
        {BlochAngles{kPi / 2, u}, BlochAngles{kPi / 2, v}},
        {BlochAngles{kPi / 2, u}, BlochAngles{kPi / 2, v}}};
    const Behavior b = quantum_behavior(ghz, angles);
    CHECK(s_n(b, svetlichny_signs(3)) == doctest::Approx(4.0 * kRoot2).epsilon(1e-10));
  }

  SUBCASE("every sampled quantum behavior is no-signaling") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> uni(-kPi, kPi);
    for (int trial = 0; trial < 60; ++trial) {
      const int n = 2 + (trial % 2);
      const Vector state = random_ket(Eigen::Index(1) << n, rng);
      std::vector<std::array<BlochAngles, 2>> angles(n);
      for (auto& pair : angles)
        pair = {BlochAngles{uni(rng), uni(rng)}, BlochAngles{uni(rng), uni(rng)}};
      const Behavior b = quantum_behavior(state, angles);
      b.validate(1e-10);
      REQUIRE(is_no_signaling(b, 1e-10));
    }
  }

  SUBCASE("dimension mismatch is rejected") {
    Vector wrong = Vector::Zero(4);
    wrong[0] = 1.0;
    const std::vector<std::array<Matrix, 2>> obs = {{pauli_z(), pauli_z()},
                                                    {pauli_z(), pauli_z()},
                                                    {pauli_z(), pauli_z()}};
    CHECK_THROWS_AS(quantum_behavior(wrong, obs), std::invalid_argument);
  }
}

TEST_CASE("super-quantum box") {
  const Behavior b = pr_like_box();
  b.validate(0.0);
  CHECK(b.correlator(0b00) == 1.0);
  CHECK(b.correlator(0b01) == 1.0);
  CHECK(b.correlator(0b10) == 1.0);
  CHECK(b.correlator(0b11) == 0.0);
  CHECK(s_n(b, svetlichny_signs(2)) == 3.0);
  CHECK(s_n(b, svetlichny_signs(2)) > 2.0 * kRoot2);
}

TEST_CASE("transitivity of perfect correlations") {
  SUBCASE("the super-quantum box breaks the product rule once") {
    const auto report = transitivity_check(pr_like_box());
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].implied_context == 3);
    CHECK(report.violations[0].implied == doctest::Approx(1.0));
    CHECK(report.violations[0].actual == doctest::Approx(0.0));
  }

  SUBCASE("the standard PR box breaks the cycle condition once") {
    Behavior pr(2);
    for (std::uint32_t x : {0u, 1u, 2u}) {
      pr.p(x, 0b00) = 0.5;
      pr.p(x, 0b11) = 0.5;
    }
    pr.p(3, 0b01) = 0.5;
    pr.p(3, 0b10) = 0.5;  // E(11) = -1
    const auto report = transitivity_check(pr);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].implied == doctest::Approx(1.0));
    CHECK(report.violations[0].actual == doctest::Approx(-1.0));
  }

  SUBCASE("Tsirelson behavior never triggers the rule") {
    CHECK(transitivity_check(bell_tsirelson_behavior()).violations.empty());
  }

  SUBCASE("all 16 deterministic local boxes are consistent") {
    for (int a0 = 0; a0 < 2; ++a0)
      for (int a1 = 0; a1 < 2; ++a1)
        for (int b0 = 0; b0 < 2; ++b0)
          for (int b1 = 0; b1 < 2; ++b1) {
            Behavior b(2);
            const std::array<int, 2> alice{a0, a1};
            const std::array<int, 2> bob{b0, b1};
            for (std::uint32_t x = 0; x < 4; ++x) {
              const std::uint32_t outcome =
                  (std::uint32_t(alice[(x >> 1) & 1]) << 1) | std::uint32_t(bob[x & 1]);
              b.p(x, outcome) = 1.0;
            }
            REQUIRE(transitivity_check(b).violations.empty());
          }
  }
}
