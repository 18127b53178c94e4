#include <doctest.h>

#include <array>
#include <random>

#include "dctsteg/error.hpp"
#include "dctsteg/synthetic.hpp"
#include "dctsteg/transform.hpp"
#include "oracle.hpp"

using namespace dctsteg;

namespace {

StreamSegment segment_of(VectorXd samples) { return StreamSegment{std::move(samples), "t", "test"}; }

// Direct summation in 40-digit arithmetic for x = 1..8.
constexpr std::array<double, 8> kRampCoefficients{
    12.727922061357855439, -6.4423230227051371357, 0.0, -0.67345480090394087409,
    0.0,                   -0.2009029037359966841, 0.0, -0.050702322759646006667};

// First 30 of 512 coefficients of smooth_signal(512); numpy direct summation.
constexpr double kSmoothKeep30Prd = 0.138321835893851;

}  // namespace

TEST_CASE("ramp fixture matches the direct-summation oracle") {
  VectorXd ramp(8);
  ramp << 1, 2, 3, 4, 5, 6, 7, 8;
  const VectorXd fast = dct(ramp);
  const VectorXd naive = oracle::naive_dct(ramp);
  for (int k = 0; k < 8; ++k) {
    CHECK(fast(k) == doctest::Approx(kRampCoefficients[k]).epsilon(1e-13));
    CHECK(std::abs(fast(k) - kRampCoefficients[k]) < 1e-12);
    CHECK(std::abs(naive(k) - kRampCoefficients[k]) < 1e-12);
  }

  VectorXd fixture(8);
  for (int k = 0; k < 8; ++k) fixture(k) = kRampCoefficients[k];
  const VectorXd back = idct(fixture);
  const VectorXd naive_back = oracle::naive_idct(fixture);
  CHECK((back - naive_back).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((idct(fast) - ramp).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("constant segment has only a DC coefficient") {
  for (std::size_t n : {64u, 100u, 512u, 1000u}) {
    const double c = 3.25;
    const auto coeffs = dct_forward(segment_of(VectorXd::Constant(n, c)));
    CHECK(coeffs(0) == doctest::Approx(c * std::sqrt(double(n))).epsilon(1e-14));
    CHECK(coeffs.tail(n - 1).cwiseAbs().maxCoeff() < 1e-11);

    VectorXd dc = VectorXd::Zero(n);
    dc(0) = c * std::sqrt(double(n));
    const auto back = dct_inverse(dc);
    CHECK((back.samples.array() - c).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("zero segment maps to zero coefficients") {
  const auto coeffs = dct_forward(segment_of(VectorXd::Zero(128)));
  CHECK(coeffs.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fast path matches the O(N^2) oracle for N <= 1024") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 2u, 3u, 8u, 64u, 65u, 100u, 127u, 256u, 500u, 999u, 1000u, 1024u}) {
    const VectorXd x = oracle::random_vector(rng, n, 100.0);
    const VectorXd y = dct(x);
    CHECK((y - oracle::naive_dct(x)).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((idct(y) - oracle::naive_idct(y)).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("perfect reconstruction and Parseval over random segments") {
  std::mt19937_64 rng(12);
  const std::array<std::size_t, 4> lengths{64, 512, 2048, 4096};
  double worst_abs = 0.0, worst_energy = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = lengths[trial % 4];
    const double scale = trial % 3 == 0 ? 1e6 : (trial % 3 == 1 ? 1.0 : 1e3);
    const StreamSegment s = segment_of(oracle::random_vector(rng, n, scale));
    const VectorXd y = dct_forward(s);
    const VectorXd back = dct_inverse(y).samples;
    worst_abs = std::max(worst_abs, (back - s.samples).cwiseAbs().maxCoeff());
    const double ex = s.samples.squaredNorm();
    worst_energy = std::max(worst_energy, std::abs(y.squaredNorm() - ex) / ex);
  }
  CHECK(worst_abs <= 1e-9);
  CHECK(worst_energy <= 1e-12);
}

TEST_CASE("linearity") {
  std::mt19937_64 rng(13);
  for (std::size_t n : {64u, 300u, 2048u}) {
    const VectorXd x = oracle::random_vector(rng, n, 50.0);
    const VectorXd z = oracle::random_vector(rng, n, 50.0);
    const double a = -1.75, b = 0.3;
    const VectorXd lhs = dct(a * x + b * z);
    const VectorXd rhs = a * dct(x) + b * dct(z);
    CHECK((lhs - rhs).norm() / rhs.norm() <= 1e-10);
  }
}

TEST_CASE("transform rejects invalid segments") {
  VectorXd bad = VectorXd::Ones(64);
  bad(10) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(dct_forward(segment_of(bad)), Error);
  try {
    dct_forward(segment_of(bad));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFiniteInput);
  }
  bad(10) = std::numeric_limits<double>::infinity();
  try {
    dct_forward(segment_of(bad));
    FAIL("expected NonFiniteInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFiniteInput);
  }
  for (std::size_t n : {63u, 65537u, 0u}) {
    try {
      dct_forward(segment_of(VectorXd::Ones(n)));
      FAIL("expected LengthOutOfRange");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::LengthOutOfRange);
    }
  }
  CHECK_NOTHROW(dct_forward(segment_of(VectorXd::Ones(65536))));

  VectorXd coeffs = VectorXd::Ones(64);
  coeffs(3) = -std::numeric_limits<double>::infinity();
  try {
    dct_inverse(coeffs);
    FAIL("expected NonFiniteInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFiniteInput);
  }
}

TEST_CASE("largest segment reconstructs") {
  std::mt19937_64 rng(14);
  const StreamSegment s = segment_of(oracle::random_vector(rng, 65536, 1e6));
  const VectorXd back = dct_inverse(dct_forward(s)).samples;
  CHECK((back - s.samples).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("compaction profile") {
  SUBCASE("full reconstruction") {
    std::mt19937_64 rng(15);
    const StreamSegment s = segment_of(oracle::random_vector(rng, 300, 10.0));
    const std::array<std::size_t, 1> keep{300};
    CHECK(compaction_profile(s, keep).front().prd_percent <= 1e-9);
  }
  SUBCASE("pure DC keeps everything in one coefficient") {
    const std::array<std::size_t, 1> keep{1};
    CHECK(compaction_profile(segment_of(VectorXd::Constant(256, -4.0)), keep).front().prd_percent <=
          1e-9);
  }
  SUBCASE("smooth signal, frozen truncation fixture") {
    const StreamSegment s = segment_of(smooth_signal(512));
    const std::array<std::size_t, 6> keep{1, 5, 30, 100, 300, 512};
    const auto profile = compaction_profile(s, keep);
    REQUIRE(profile.size() == keep.size());
    for (std::size_t i = 1; i < profile.size(); ++i) {
      CHECK(profile[i].prd_percent <= profile[i - 1].prd_percent + 1e-12);
    }
    // first 30 of 512 coefficients (94% zeroed); value frozen from the
    // direct-summation oracle below on first run
    VectorXd y = oracle::naive_dct(s.samples);
    y.tail(512 - 30).setZero();
    const double oracle_prd = oracle::naive_prd(s.samples, oracle::naive_idct(y));
    CHECK(profile[2].prd_percent == doctest::Approx(oracle_prd).epsilon(1e-9));
    CHECK(profile[2].prd_percent == doctest::Approx(kSmoothKeep30Prd).epsilon(1e-6));
    CHECK(profile.back().prd_percent <= 1e-9);
  }
  SUBCASE("keep counts are range checked") {
    const StreamSegment s = segment_of(VectorXd::Ones(64));
    for (std::size_t bad : {0u, 65u}) {
      const std::array<std::size_t, 1> keep{bad};
      try {
        compaction_profile(s, keep);
        FAIL("expected KeepCountOutOfRange");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::KeepCountOutOfRange);
      }
    }
  }
}
