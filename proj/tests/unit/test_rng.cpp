#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "molcoop/rng.hpp"

using namespace molcoop;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams depend only on (seed, trial)") {
  TrialStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u32();
    CHECK(x == b.next_u32());
    differs_c |= x != c.next_u32();
    differs_d |= x != d.next_u32();
  }
  CHECK(differs_c);
  CHECK(differs_d);
  // High word of the trial index reaches the counter.
  TrialStream lo(1, 5), hi(1, 5 + (std::uint64_t{1} << 32));
  CHECK(lo.next_u32() != hi.next_u32());
}

TEST_CASE("uniform is open on both ends and has the right moments") {
  TrialStream s(9, 0);
  double sum = 0, sum2 = 0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  CHECK(std::abs(sum / n - 0.5) < 4 * std::sqrt(1.0 / 12 / n));
  CHECK(std::abs(sum2 / n - 1.0 / 3) < 2e-3);
}

TEST_CASE("bernoulli edge probabilities") {
  TrialStream s(1, 1);
  for (int i = 0; i < 10000; ++i) {
    REQUIRE(s.bernoulli(1.0) == 1);
    REQUIRE(s.bernoulli(0.0) == 0);
  }
}

TEST_CASE("Gaussian self-test: KS distance below 0.001 on 1e6 samples") {
  const std::size_t n = 1'000'000;
  std::vector<double> x;
  x.reserve(n);
  TrialStream s(20170101, 0);
  for (std::size_t i = 0; i < n; ++i) x.push_back(s.gaussian());
  std::sort(x.begin(), x.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double cdf = 0.5 * std::erfc(-x[i] / std::numbers::sqrt2);
    ks = std::max({ks, std::abs(cdf - static_cast<double>(i) / n),
                   std::abs(static_cast<double>(i + 1) / n - cdf)});
  }
  MESSAGE("KS distance = " << ks);
  CHECK(ks < 0.001);
}
