#pragma once
// theory.hpp - closed-form side: digit-length law, leading-digit prediction,
// ternary Benford probabilities, limit averages of leading-digit counts and
// i.i.d. noise benchmarks.

#include <ternary/alpha.hpp>
#include <ternary/error.hpp>
#include <ternary/stats.hpp>
#include <ternary/ternary_number.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gmpxx.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <ios>
#include <string>
#include <vector>

namespace ternary {

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

inline std::string format_fixed(const HighPrecision& x, int places) {
    std::string s = x.str(places, std::ios_base::fixed);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, 1);
    }
    return s;
}

// floor(alpha * 2^bits) with |value / 2^bits - alpha| <= 2^(1 - bits).
class AlphaFixedPoint {
public:
    static AlphaFixedPoint from_expansion(const AlphaExpansion& e, unsigned bits) {
        if (!e.certified) {
            throw domain_error("AlphaFixedPoint: expansion is not certified");
        }
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 3, e.size());
        mpz_class two_pow = 1;
        two_pow <<= bits;
        if (scale < two_pow) {
            throw domain_error("AlphaFixedPoint: expansion too short for the requested bits");
        }
        AlphaFixedPoint a;
        a.bits_ = bits;
        const mpz_class numerator = e.prefix_value(e.size()) << bits;
        mpz_fdiv_q(a.value_.get_mpz_t(), numerator.get_mpz_t(), scale.get_mpz_t());
        return a;
    }

    static AlphaFixedPoint compute(unsigned bits) {
        const auto digits = static_cast<std::size_t>(std::ceil(bits * std::log(2.0) / std::log(3.0))) + 2;
        const AlphaExpansion e = expand(digits);
        if (!e.certified) {
            throw domain_error("AlphaFixedPoint: could not certify alpha digits");
        }
        return from_expansion(e, bits);
    }

    [[nodiscard]] const mpz_class& value() const noexcept { return value_; }
    [[nodiscard]] unsigned bits() const noexcept { return bits_; }

    // Error bound in units of 2^-bits.
    static constexpr unsigned kErrorUnits = 2;

private:
    mpz_class value_;
    unsigned bits_ = 0;
};

// Certified floor(n * alpha). The enclosing interval
// [n (v - e), n (v + e)] / 2^bits is tightened by doubling the precision
// until it contains no integer; alpha is irrational so this terminates for n >= 1.
class RotationOracle {
public:
    explicit RotationOracle(unsigned initial_bits = 128) : alpha_(AlphaFixedPoint::compute(initial_bits)) {
        refresh_fast();
    }

    std::uint64_t floor_multiple(std::uint64_t n) {
        if (n == 0) {
            return 0;
        }
        if (has_fast_ && n < (std::uint64_t{1} << 30)) {
            const unsigned __int128 lo = static_cast<unsigned __int128>(n) * (fast_ - kFastErrorUnits);
            const unsigned __int128 hi = static_cast<unsigned __int128>(n) * (fast_ + kFastErrorUnits);
            if ((lo >> kFastBits) == (hi >> kFastBits)) {
                return static_cast<std::uint64_t>(lo >> kFastBits);
            }
        }
        for (;;) {
            mpz_class lo = (alpha_.value() - AlphaFixedPoint::kErrorUnits) * static_cast<unsigned long>(n);
            mpz_class hi = (alpha_.value() + AlphaFixedPoint::kErrorUnits) * static_cast<unsigned long>(n);
            lo >>= alpha_.bits();
            hi >>= alpha_.bits();
            if (lo == hi) {
                return lo.get_ui();
            }
            escalate();
        }
    }

    // Number of ternary digits of 2^n.
    std::uint64_t length(std::uint64_t n) {
        if (n == 0) {
            throw domain_error("length_formula: n must be at least 1");
        }
        return floor_multiple(n) + 1;
    }

    // frac(n alpha) < alpha  <=>  floor((n - 1) alpha) < floor(n alpha).
    int leading_digit(std::uint64_t n) {
        if (n == 0) {
            throw domain_error("predicted_leading_digit: n must be at least 1");
        }
        return floor_multiple(n - 1) < floor_multiple(n) ? 1 : 2;
    }

    [[nodiscard]] unsigned bits() const noexcept { return alpha_.bits(); }
    [[nodiscard]] unsigned escalations() const noexcept { return escalations_; }

private:
    static constexpr unsigned kFastBits = 96;
    static constexpr unsigned kFastErrorUnits = 3; // 2 from alpha_, 1 from truncation

    void escalate() {
        alpha_ = AlphaFixedPoint::compute(alpha_.bits() * 2);
        ++escalations_;
        refresh_fast();
    }

    void refresh_fast() {
        has_fast_ = alpha_.bits() >= kFastBits;
        if (!has_fast_) {
            return;
        }
        const mpz_class v = alpha_.value() >> (alpha_.bits() - kFastBits);
        const mpz_class high = v >> 64;
        const mpz_class low = v - (high << 64);
        fast_ = (static_cast<unsigned __int128>(high.get_ui()) << 64) |
                static_cast<unsigned __int128>(low.get_ui());
    }

    AlphaFixedPoint alpha_;
    unsigned __int128 fast_ = 0;
    bool has_fast_ = false;
    unsigned escalations_ = 0;
};

namespace detail {
inline RotationOracle& thread_oracle() {
    thread_local RotationOracle oracle;
    return oracle;
}
} // namespace detail

inline std::uint64_t length_formula(std::uint64_t n) { return detail::thread_oracle().length(n); }
inline int predicted_leading_digit(std::uint64_t n) { return detail::thread_oracle().leading_digit(n); }

// --- Benford and leading-digit limits ---------------------------------------

namespace detail {
inline const HighPrecision& ln3() {
    static const HighPrecision value = log(HighPrecision(3));
    return value;
}
} // namespace detail

inline HighPrecision benford_probability(std::uint64_t m) {
    if (m == 0) {
        throw domain_error("benford_probability: m must be at least 1");
    }
    return (log(HighPrecision(m + 1)) - log(HighPrecision(m))) / detail::ln3();
}

inline constexpr std::uint32_t kDefaultHMax = 8;
inline constexpr std::uint32_t kLimitBudget = 12;

// L_{d,H} for d = 0, 1, 2: sum over (H+1)-digit m of gamma_d(m, H) * benford(m).
inline std::array<HighPrecision, 3> limit_average_counts(std::uint32_t h, std::uint32_t budget = kLimitBudget) {
    if (h > budget) {
        throw domain_error("limit_average_count: H=" + std::to_string(h) + " exceeds the enumeration budget");
    }
    const std::uint64_t first = pow3(h);
    const std::uint64_t last = 3 * first;
    std::array<HighPrecision, 3> sums{};
    HighPrecision log_m = log(HighPrecision(first));
    std::vector<std::uint8_t> trits;
    for (std::uint64_t m = first; m < last; ++m) {
        const HighPrecision log_next = log(HighPrecision(m + 1));
        const HighPrecision weight = (log_next - log_m) / detail::ln3();
        from_integer(m).unpack(trits);
        const DigitTally gamma = leading_counts(trits, h);
        for (std::size_t d = 0; d < 3; ++d) {
            if (gamma.counts[d] != 0) {
                sums[d] += weight * gamma.counts[d];
            }
        }
        log_m = log_next;
    }
    return sums;
}

inline HighPrecision limit_average_count(std::uint32_t d, std::uint32_t h, std::uint32_t budget = kLimitBudget) {
    if (d > 2) {
        throw domain_error("limit_average_count: digit out of range");
    }
    return limit_average_counts(h, budget)[d];
}

// L_{d,H+1} - L_{d,H} - 1/3.
inline HighPrecision recurrence_gap(std::uint32_t d, std::uint32_t h, std::uint32_t budget = kLimitBudget) {
    if (d > 2) {
        throw domain_error("recurrence_gap: digit out of range");
    }
    return limit_average_count(d, h + 1, budget) - limit_average_count(d, h, budget) - HighPrecision(1) / 3;
}

// --- i.i.d. benchmarks --------------------------------------------------------

inline const double kAlpha = std::log(2.0) / std::log(3.0);

// k = 1 is single digits; k >= 2 are length-k blocks. `total` is the exact
// number of digits (k = 1) or blocks tallied.
inline double sigma_aggregate(std::uint32_t k, std::uint64_t total) {
    if (k == 0) {
        throw domain_error("sigma_aggregate: k must be at least 1");
    }
    if (total == 0) {
        throw domain_error("sigma_aggregate: empty total");
    }
    const double p = 1.0 / static_cast<double>(pow3(k));
    return std::sqrt(p * (1.0 - p) / static_cast<double>(total));
}

// sqrt(4 / (9 alpha N (N + 1))), taking ceil(n alpha) ~ n alpha.
inline double sigma_aggregate_approx(std::uint64_t n_max) {
    if (n_max == 0) {
        throw domain_error("sigma_aggregate_approx: N must be at least 1");
    }
    const double n = static_cast<double>(n_max);
    return std::sqrt(4.0 / (9.0 * kAlpha * n * (n + 1.0)));
}

inline double sigma_for_length(std::uint64_t length) { return sigma_aggregate(1, length); }

inline double sigma_single(std::uint64_t n) { return sigma_for_length(length_formula(n)); }

// Sums of l(n), floor(l(n)/2), floor(l(n)/3) over 1 <= n <= N.
struct LengthTotals {
    std::uint64_t n_max = 0;
    std::uint64_t digits = 0;
    std::uint64_t blocks2 = 0;
    std::uint64_t blocks3 = 0;
};

inline LengthTotals length_totals(std::uint64_t n_max) {
    LengthTotals t;
    t.n_max = n_max;
    RotationOracle& oracle = detail::thread_oracle();
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const std::uint64_t l = oracle.length(n);
        t.digits += l;
        t.blocks2 += l / 2;
        t.blocks3 += l / 3;
    }
    return t;
}

// --- assembled table ----------------------------------------------------------

struct TheoryTable {
    std::uint32_t h_max = 0;
    std::vector<std::array<HighPrecision, 3>> limits; // limits[H][d] = L_{d,H}, H = 0..h_max
    std::vector<HighPrecision> benford;               // benford[m - 1], m = 1..m_max

    [[nodiscard]] HighPrecision gap(std::uint32_t d, std::uint32_t h) const {
        return limits.at(h + 1).at(d) - limits.at(h).at(d) - HighPrecision(1) / 3;
    }
};

inline TheoryTable build_theory_table(std::uint32_t h_max, std::uint64_t m_max) {
    TheoryTable t;
    t.h_max = h_max;
    for (std::uint32_t h = 0; h <= h_max; ++h) {
        t.limits.push_back(limit_average_counts(h));
    }
    for (std::uint64_t m = 1; m <= m_max; ++m) {
        t.benford.push_back(benford_probability(m));
    }
    return t;
}

} // namespace ternary
