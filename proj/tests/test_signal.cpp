#include <doctest.h>

#include "sft/signal.hpp"

using namespace sft;

TEST_CASE("extended_sample resolves boundaries") {
  Eigen::ArrayXd data(3);
  data << 1, 2, 3;
  const Signal clamped(data, BoundaryPolicy::Clamp);
  const Signal zeroed(data, BoundaryPolicy::Zero);

  CHECK(extended_sample(clamped, -5) == 1.0);
  CHECK(extended_sample(zeroed, 3) == 0.0);
  CHECK(extended_sample(clamped, 1) == 2.0);
  CHECK(extended_sample(clamped, 7) == 3.0);
  CHECK(extended_sample(zeroed, -1) == 0.0);

  for (int n = 0; n < 3; ++n) {
    CHECK(extended_sample(clamped, n) == data[n]);
    CHECK(extended_sample(zeroed, n) == data[n]);
  }
}

TEST_CASE("signal validation") {
  CHECK_THROWS_AS(Signal(Eigen::ArrayXd(0)), std::invalid_argument);
  Eigen::ArrayXd bad(2);
  bad << 1.0, std::nan("");
  CHECK_THROWS_AS(Signal{bad}, std::invalid_argument);
}

TEST_CASE("test signal generators") {
  const Signal constant = make_test_signal(TestSignalKind::Constant, 4, 0);
  CHECK(constant.samples.size() == 4);
  CHECK((constant.samples == 1.0).all());

  const Signal impulse = make_test_signal(TestSignalKind::Impulse, 5, 0);
  for (int n = 0; n < 5; ++n) CHECK(impulse.samples[n] == (n == 2 ? 1.0 : 0.0));

  const Signal a = make_test_signal(TestSignalKind::SeededNoise, 3, 42);
  const Signal b = make_test_signal(TestSignalKind::SeededNoise, 3, 42);
  for (int n = 0; n < 3; ++n) CHECK(a.samples[n] == b.samples[n]);
  CHECK((a.samples.abs() <= 1.0).all());

  const Signal c = make_test_signal(TestSignalKind::SeededNoise, 3, 43);
  CHECK(a.samples[0] != c.samples[0]);

  const Signal chirp1 = make_test_signal(TestSignalKind::Chirp, 64, 1);
  const Signal chirp2 = make_test_signal(TestSignalKind::Chirp, 64, 2);
  for (int n = 0; n < 64; ++n) CHECK(chirp1.samples[n] == chirp2.samples[n]);

  CHECK_THROWS_AS(make_test_signal(TestSignalKind::Constant, 0, 0), std::invalid_argument);
}

TEST_CASE("clamp extension of a constant signal is constant everywhere") {
  const Signal sig = make_test_signal(TestSignalKind::Constant, 7, 0, BoundaryPolicy::Clamp);
  for (std::int64_t n = -20; n <= 26; ++n) CHECK(extended_sample(sig, n) == 1.0);
}
