#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "core/errors.hpp"
#include "core/theory.hpp"

using namespace mjr;

namespace {

// Exact-coefficient reference tail, trustworthy for small m.
double tail_oracle(int m, int t, double p) {
  std::vector<double> choose(static_cast<std::size_t>(m) + 1, 0.0);
  choose[0] = 1.0;
  for (int row = 1; row <= m; ++row) {
    for (int j = row; j >= 1; --j) choose[j] += choose[j - 1];
  }
  double sum = 0.0;
  for (int j = std::max(t, 0); j <= m; ++j) {
    sum += choose[j] * std::pow(p, j) * std::pow(1.0 - p, m - j);
  }
  return sum;
}

}  // namespace

TEST_SUITE("binomial_tail") {
  TEST_CASE("matches the exact reference for small m") {
    for (int m : {1, 2, 5, 9, 16, 20}) {
      for (double p : {0.1, 0.25, 0.5, 0.7, 0.9}) {
        for (int t = 0; t <= m + 1; ++t) {
          CHECK(binomial_tail_ge(m, t, p) ==
                doctest::Approx(tail_oracle(m, t, p)).epsilon(1e-11));
        }
      }
    }
  }

  TEST_CASE("matches the reference past the linear-path cutoff") {
    for (int m : {65, 80, 120}) {
      for (double p : {0.2, 0.5, 0.8}) {
        for (int t : {1, m / 4, m / 2, (3 * m) / 4, m}) {
          CHECK(binomial_tail_ge(m, t, p) ==
                doctest::Approx(tail_oracle(m, t, p)).epsilon(1e-9));
        }
      }
    }
  }

  TEST_CASE("internal paths agree with each other") {
    for (std::uint32_t m : {30u, 64u}) {
      for (double p : {0.2, 0.5, 0.7}) {
        for (std::uint32_t t : {1u, m / 3, m / 2, m - 1}) {
          CHECK(detail::binomial_tail_linear(m, t, p) ==
                doctest::Approx(detail::binomial_tail_log(m, t, p)).epsilon(1e-10));
        }
      }
    }
  }

  TEST_CASE("endpoints") {
    CHECK(binomial_tail_ge(10, 0, 0.3) == 1.0);
    CHECK(binomial_tail_ge(10, 11, 0.3) == 0.0);
    CHECK(binomial_tail_ge(10, 3, 0.0) == 0.0);
    CHECK(binomial_tail_ge(10, 3, 1.0) == 1.0);
    CHECK(binomial_tail_ge(2, 1, 0.5) == doctest::Approx(0.75).epsilon(1e-15));
  }

  TEST_CASE("monotone in p and in t") {
    double prev = 0.0;
    for (double p = 0.0; p <= 1.0; p += 0.05) {
      const double v = binomial_tail_ge(40, 17, p);
      CHECK(v >= prev - 1e-15);
      prev = v;
    }
    prev = 1.0;
    for (std::uint32_t t = 0; t <= 41; ++t) {
      const double v = binomial_tail_ge(40, t, 0.37);
      CHECK(v <= prev + 1e-15);
      prev = v;
    }
  }

  TEST_CASE("stays inside the unit interval under extreme parameters") {
    for (double v : {binomial_tail_ge(50, 25, 1e-9),
                     binomial_tail_ge(1'000'000, 999'999, 0.999999),
                     binomial_tail_ge(1'000'000, 1, 1e-12),
                     binomial_tail_ge(5'000'000, 2'600'000, 0.5)}) {
      CHECK(std::isfinite(v));
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    CHECK(binomial_tail_ge(1'000'000, 500'000, 0.5) == doctest::Approx(0.5).epsilon(2e-3));
    // Hard underflow regime for the naive formula: q^m would be 0.
    const double v = binomial_tail_ge(5000, 4999, 0.9999);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    CHECK(v == doctest::Approx(tail_oracle(5000, 4999, 0.9999)).epsilon(1e-6));
  }

  TEST_CASE("rejects bad input") {
    CHECK_THROWS_AS(binomial_tail_ge(10, 3, -0.1), InvalidArgument);
    CHECK_THROWS_AS(binomial_tail_ge(10, 3, 1.1), InvalidArgument);
    CHECK_THROWS_AS(binomial_tail_ge(10'000'001, 3, 0.5), InvalidArgument);
  }
}

TEST_SUITE("propagation") {
  TEST_CASE("degree-3 table at density one half is exactly dyadic") {
    const auto v = propagation_recurrence(3, 0.5, 3);
    REQUIRE(v.size() == 4);
    CHECK(v[0] == 0.5);
    CHECK(v[1] == 0.75);
    CHECK(v[2] == 0.9375);
    CHECK(v[3] == 0.99609375);
  }

  TEST_CASE("degree-5 first level at one half") {
    const auto v = propagation_recurrence(5, 0.5, 1);
    CHECK(v[1] == doctest::Approx(11.0 / 16.0).epsilon(1e-15));
  }

  TEST_CASE("drifts to the attracting endpoint") {
    for (std::uint32_t d : {3u, 5u, 9u}) {
      auto up = propagation_recurrence(d, 0.6, 40);
      for (std::size_t i = 1; i < up.size(); ++i) CHECK(up[i] >= up[i - 1] - 1e-15);
      CHECK(up.back() == doctest::Approx(1.0).epsilon(1e-9));
    }
    for (std::uint32_t d : {5u, 9u}) {
      auto down = propagation_recurrence(d, 0.2, 40);
      for (std::size_t i = 1; i < down.size(); ++i) CHECK(down[i] <= down[i - 1] + 1e-15);
      CHECK(down.back() == doctest::Approx(0.0).epsilon(1e-9));
    }
    // One blue child out of two already wins a tiebreak, so degree 3
    // amplifies any positive density.
    auto d3 = propagation_recurrence(3, 0.2, 60);
    for (std::size_t i = 1; i < d3.size(); ++i) CHECK(d3[i] >= d3[i - 1] - 1e-15);
    CHECK(d3.back() == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("level-one bound dominates the true level-one value") {
    for (std::uint32_t d : {3u, 5u, 11u, 21u, 51u}) {
      for (double eps : {0.05, 0.1, 0.2, 0.3, 0.5}) {
        const double truth = propagation_recurrence(d, 0.5 - eps, 1)[1];
        CHECK(truth <= propagation_level1_bound(d, eps) + 1e-15);
      }
    }
    CHECK(propagation_level1_bound(51, 0.2) == doctest::Approx(std::exp(-4.0)).epsilon(1e-12));
  }

  TEST_CASE("small densities contract at a power rate") {
    for (std::uint32_t d : {5u, 9u, 13u, 51u}) {
      for (double p : {1.0 / 16.0, 0.01, 0.001}) {
        const double next = propagation_recurrence(d, p, 1)[1];
        CHECK(next <= std::pow(p, (d - 1) / 4.0) + 1e-18);
      }
    }
  }

  TEST_CASE("rejects invalid shapes") {
    CHECK_THROWS_AS(propagation_recurrence(4, 0.5, 2), InvalidArgument);
    CHECK_THROWS_AS(propagation_recurrence(1, 0.5, 2), InvalidArgument);
    CHECK_THROWS_AS(propagation_recurrence(3, 1.5, 2), InvalidArgument);
    CHECK_THROWS_AS(propagation_level1_bound(4, 0.1), InvalidArgument);
    CHECK_THROWS_AS(propagation_level1_bound(3, 0.0), InvalidArgument);
    CHECK_THROWS_AS(propagation_level1_bound(3, 0.6), InvalidArgument);
  }
}

TEST_SUITE("bounds") {
  TEST_CASE("expectation bound values and saturation") {
    CHECK(non_tree_expectation_bound(3, 1) == 36);
    CHECK(non_tree_expectation_bound(3, 2) == 324);
    CHECK(non_tree_expectation_bound(2, 5) == 4096);
    CHECK(non_tree_expectation_bound(1, 9) == 4);
    CHECK(non_tree_expectation_bound(10, 0) == 4);
    CHECK(non_tree_expectation_bound(4'294'967'295u, 8) == ~std::uint64_t{0});
    CHECK(non_tree_expectation_bound(2, 30) == (std::uint64_t{1} << 62));
    CHECK(non_tree_expectation_bound(2, 31) == ~std::uint64_t{0});
    CHECK_THROWS_AS(non_tree_expectation_bound(0, 3), InvalidArgument);
  }

  TEST_CASE("count bound values") {
    CHECK(non_tree_count_bound(1024, 1.0) == doctest::Approx(1000.0).epsilon(1e-12));
    CHECK(non_tree_count_bound(65536, 1.0) == doctest::Approx(4096.0).epsilon(1e-12));
    CHECK(non_tree_count_bound(65536, 0.5) == doctest::Approx(256.0).epsilon(1e-12));
    CHECK(non_tree_count_bound(2, 3.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(non_tree_count_bound(1.5, 1.0), InvalidArgument);
    CHECK_THROWS_AS(non_tree_count_bound(1024, 0.0), InvalidArgument);
  }

  TEST_CASE("round bound values") {
    CHECK(predicted_round_bound(16, 65536.0, 1.0) == 1);
    CHECK(predicted_round_bound(4, std::pow(2.0, 256.0), 1.0) == 4);
    CHECK(predicted_round_bound(3, 1e5, 1.0) == 3);
    CHECK(predicted_round_bound(4, 1e5, 1.0) == 3);
    CHECK(predicted_round_bound(51, 1e5, 1.0) == 1);
    CHECK(predicted_round_bound(51, 1e5, 3.0) == 3);
    CHECK(predicted_round_bound(2, 16.0, 1.0) == 2);
    CHECK(predicted_round_bound(51, 4.0, 1.0) == 1);
  }

  TEST_CASE("round bound validation") {
    CHECK_THROWS_AS(predicted_round_bound(1, 1e5, 1.0), InvalidArgument);
    CHECK_THROWS_AS(predicted_round_bound(3, 3.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(predicted_round_bound(3, 1e5, 0.0), InvalidArgument);
  }
}
