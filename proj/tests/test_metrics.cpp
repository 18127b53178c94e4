#include <doctest.h>

#include <cmath>
#include <random>

#include "dctsteg/error.hpp"
#include "dctsteg/metrics.hpp"
#include "dctsteg/synthetic.hpp"
#include "oracle.hpp"

using namespace dctsteg;

namespace {

const StegoKey kKey{to_bytes("metrics-test-key-0123456789abcdef")};
const Nonce kNonce{0x5e, 0xed};

StreamSegment seg(std::initializer_list<double> values) {
  VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return StreamSegment{v, "s", "s"};
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Usage;
}

// smooth_signal(512), payload "ID=STN-042", fixed nonce; frozen after first run
constexpr double kSweepB1 = 0.000218365772160616;
constexpr double kSweepB5 = 0.00142486006667603;
constexpr double kSweepB10 = 0.0355703457804916;

}  // namespace

TEST_CASE("prd examples") {
  CHECK(prd(seg({3, 4}), seg({3, 4})) == 0.0);
  CHECK(prd(seg({3, 4}), seg({0, 0})) == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(prd(seg({1, 2, 2}), seg({1, 2, 1})) == doctest::Approx(100.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("prd properties") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const VectorXd x = oracle::random_vector(rng, 256, 10.0);
    const VectorXd y = x + oracle::random_vector(rng, 256, 0.1);
    const double base = prd(x, y);
    CHECK(base == doctest::Approx(oracle::naive_prd(x, y)).epsilon(1e-12));
    for (double alpha : {-3.0, 1e-3, 7.5e4}) {
      const VectorXd ax = alpha * x, ay = alpha * y;
      CHECK(std::abs(prd(ax, ay) - base) <= 1e-10);
    }
    CHECK(prd(x, x) == 0.0);
  }
  const VectorXd a = seg({1, 2, 3, 4}).samples;
  const VectorXd b = seg({2, 2, 2, 2}).samples;
  CHECK(prd(a, b) != doctest::Approx(prd(b, a)));
}

TEST_CASE("prd errors") {
  CHECK(code_of([] { prd(seg({1, 2}), seg({1, 2, 3})); }) == ErrorCode::LengthMismatch);
  CHECK(code_of([] { prd(seg({0, 0}), seg({1, 2})); }) == ErrorCode::ZeroReference);
}

TEST_CASE("distortion sweep") {
  const StreamSegment s{smooth_signal(512), "smooth", "synthetic"};
  const Bytes payload = to_bytes("ID=STN-042");

  const auto rows = distortion_sweep(s, kKey, {}, payload, kNonce);
  REQUIRE(rows.size() == 10);
  for (unsigned i = 0; i < 10; ++i) {
    CHECK(rows[i].bits_per_coeff == i + 1);
    CHECK(rows[i].prd_stego < 1.0);
    CHECK(rows[i].prd_recovered < 1.0);
    CHECK(rows[i].prd_stego > 0.0);
  }
  CHECK(rows[9].prd_stego >= rows[0].prd_stego);

  // regression fixture: first run, frozen
  CHECK(rows[0].prd_stego == doctest::Approx(kSweepB1).epsilon(1e-6));
  CHECK(rows[4].prd_stego == doctest::Approx(kSweepB5).epsilon(1e-6));
  CHECK(rows[9].prd_stego == doctest::Approx(kSweepB10).epsilon(1e-6));

  const auto empty = distortion_sweep(s, kKey, {}, {}, kNonce);
  REQUIRE(empty.size() == 10);
  CHECK(empty[9].prd_stego >= empty[0].prd_stego);

  EmbedConfig tight;
  tight.protect_fraction = 0.5;
  CHECK(code_of([&] { distortion_sweep(s, kKey, tight, Bytes(200, 1), kNonce); }) ==
        ErrorCode::CapacityExceeded);
}

TEST_CASE("timing benchmark") {
  CHECK(code_of([] { timing_benchmark({512}, 0); }) == ErrorCode::InvalidParameters);
  CHECK(code_of([] { timing_benchmark({512}, 2); }) == ErrorCode::InvalidParameters);
  CHECK(code_of([] { timing_benchmark({32}, 3); }) == ErrorCode::InvalidParameters);

  const BenchReport report = timing_benchmark({256, 1024}, 3);
  REQUIRE(report.records.size() == 2);
  for (const auto& r : report.records) {
    CHECK(r.embed_seconds > 0.0);
    CHECK(r.extract_seconds > 0.0);
  }
  CHECK(report.scaling_base == 256);
  CHECK(report.scaling_ratio > 0.0);
  CHECK(!report.machine.empty());
}
