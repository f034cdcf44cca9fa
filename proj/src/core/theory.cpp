#include "core/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/errors.hpp"

namespace mjr {

namespace detail {

double binomial_tail_linear(std::uint32_t m, std::uint32_t t, double p) {
  const double q = 1.0 - p;
  double term = std::pow(q, static_cast<double>(m - t));
  for (std::uint32_t i = 1; i <= t; ++i) {
    term *= p * static_cast<double>(m - t + i) / static_cast<double>(i);
  }
  double sum = term;
  for (std::uint32_t j = t; j < m; ++j) {
    term *= (static_cast<double>(m - j) / static_cast<double>(j + 1)) * (p / q);
    sum += term;
  }
  return sum;
}

double binomial_tail_log(std::uint32_t m, std::uint32_t t, double p) {
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double log_choose_all = std::lgamma(static_cast<double>(m) + 1.0);
  std::vector<double> log_terms;
  log_terms.reserve(m - t + 1);
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::uint32_t j = t; j <= m; ++j) {
    const double lt = log_choose_all - std::lgamma(static_cast<double>(j) + 1.0) -
                      std::lgamma(static_cast<double>(m - j) + 1.0) +
                      static_cast<double>(j) * log_p + static_cast<double>(m - j) * log_q;
    log_terms.push_back(lt);
    max_log = std::max(max_log, lt);
  }
  if (!std::isfinite(max_log)) return 0.0;
  double sum = 0.0;
  for (double lt : log_terms) sum += std::exp(lt - max_log);
  return std::exp(max_log) * sum;
}

}  // namespace detail

double binomial_tail_ge(std::uint32_t m, std::uint32_t t, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("probability must be in [0, 1]");
  if (m > 10'000'000) throw InvalidArgument("binomial size too large");
  if (t == 0) return 1.0;
  if (t > m) return 0.0;
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  if (p > 0.5) return std::clamp(1.0 - binomial_tail_ge(m, m - t + 1, 1.0 - p), 0.0, 1.0);
  const double tail =
      m <= 64 ? detail::binomial_tail_linear(m, t, p) : detail::binomial_tail_log(m, t, p);
  return std::clamp(tail, 0.0, 1.0);
}

std::vector<double> propagation_recurrence(std::uint32_t d, double p_blue, std::uint32_t k) {
  if (d < 3 || d % 2 == 0) throw InvalidArgument("degree must be odd and >= 3");
  if (!(p_blue >= 0.0 && p_blue <= 1.0)) throw InvalidArgument("p_blue must be in [0, 1]");
  std::vector<double> values;
  values.reserve(k + 1);
  values.push_back(p_blue);
  const std::uint32_t children = d - 1;
  const std::uint32_t threshold = children / 2;
  for (std::uint32_t i = 1; i <= k; ++i) {
    values.push_back(binomial_tail_ge(children, threshold, values.back()));
  }
  return values;
}

double propagation_level1_bound(std::uint32_t d, double eps) {
  if (d < 3 || d % 2 == 0) throw InvalidArgument("degree must be odd and >= 3");
  if (!(eps > 0.0 && eps <= 0.5)) throw InvalidArgument("eps must be in (0, 1/2]");
  return std::exp(-2.0 * static_cast<double>(d - 1) * eps * eps);
}

std::uint64_t non_tree_expectation_bound(std::uint32_t d, std::uint32_t k) {
  if (d == 0) throw InvalidArgument("degree must be >= 1");
  constexpr std::uint64_t kMax = ~std::uint64_t{0};
  std::uint64_t r = 4;
  for (std::uint32_t i = 0; i < 2 * k; ++i) {
    if (r > kMax / d) return kMax;
    r *= d;
  }
  return r;
}

double non_tree_count_bound(double n, double c_prime) {
  if (!(n >= 2.0)) throw InvalidArgument("order must be >= 2");
  if (!(c_prime > 0.0)) throw InvalidArgument("c' must be positive");
  return std::pow(std::log2(n), 2.0 * c_prime + 1.0);
}

std::uint32_t predicted_round_bound(std::uint32_t d, double n, double c_prime) {
  if (d < 2) throw InvalidArgument("degree must be >= 2");
  if (!(n >= 4.0)) throw InvalidArgument("order must be >= 4");
  if (!(c_prime > 0.0)) throw InvalidArgument("c' must be positive");
  const double x = c_prime * std::log(std::log2(n)) / std::log(static_cast<double>(d));
  if (!(x < 1e9)) throw InvalidArgument("round bound overflows");
  // The epsilon keeps exact-integer arguments from being rounded up.
  const double r = std::ceil(x - 1e-9);
  return r <= 1.0 ? 1u : static_cast<std::uint32_t>(r);
}

}  // namespace mjr
