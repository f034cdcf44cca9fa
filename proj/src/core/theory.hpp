#pragma once

#include <cstdint>
#include <vector>

namespace mjr {

// P[Bin(m, p) >= t]. Numerically stable over the full parameter range:
// complements when p > 1/2, switches to log-space terms for large m.
double binomial_tail_ge(std::uint32_t m, std::uint32_t t, double p);

namespace detail {
double binomial_tail_linear(std::uint32_t m, std::uint32_t t, double p);  // m <= 64
double binomial_tail_log(std::uint32_t m, std::uint32_t t, double p);
}  // namespace detail

// Blue-occupation probabilities along the idealized (d-1)-ary tree process:
// values[0] = p_blue and values[i] = P[Bin(d-1, values[i-1]) >= (d-1)/2].
// d must be odd and >= 3 so the child threshold is exact.
std::vector<double> propagation_recurrence(std::uint32_t d, double p_blue, std::uint32_t k);

// Hoeffding-type bound exp(-2(d-1)eps^2) on the level-1 value at
// p_blue = 1/2 - eps; valid for odd d >= 3 and 0 < eps <= 1/2.
double propagation_level1_bound(std::uint32_t d, double eps);

// 4 * d^(2k), saturating at the uint64 maximum: an upper bound on the
// expected number of vertices whose k-ball is not a tree in a random
// d-regular graph.
std::uint64_t non_tree_expectation_bound(std::uint32_t d, std::uint32_t k);

// (log2 n)^(2c'+1): the high-probability ceiling on the non-tree count.
double non_tree_count_bound(double n, double c_prime);

// ceil(c' * log_d(log2 n)): the radius/round budget the dense-regular
// analysis predicts. n is a real-valued order so astronomically large
// graphs are expressible; requires d >= 2, n >= 4, c' > 0.
std::uint32_t predicted_round_bound(std::uint32_t d, double n, double c_prime);

}  // namespace mjr
