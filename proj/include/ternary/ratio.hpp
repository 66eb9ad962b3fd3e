#pragma once
// ratio.hpp - exact integer ratios and their deterministic decimal rendering.

#include <ternary/error.hpp>

#include <cstdint>
#include <string>

namespace ternary {

struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    [[nodiscard]] double to_double() const noexcept {
        return static_cast<double>(num) / static_cast<double>(den);
    }

    // Cross-multiplied, so 2/4 == 1/2.
    friend bool operator==(const Ratio& a, const Ratio& b) noexcept {
        return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
    }
};

inline Ratio make_ratio(std::uint64_t num, std::uint64_t den) {
    if (den == 0) {
        throw domain_error("ratio with zero denominator");
    }
    return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

// r - 1/3^k, exactly.
inline Ratio minus_inverse_power_of_three(const Ratio& r, std::uint32_t k) {
    std::int64_t p = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        p *= 3;
    }
    return {r.num * p - r.den, r.den * p};
}

// Fixed-point decimal of scale * num / den with `places` fractional digits,
// rounded half to even. Negative zero renders without a sign.
inline std::string format_ratio(const Ratio& r, unsigned places, std::int64_t scale = 1) {
    if (r.den <= 0) {
        throw domain_error("format_ratio: denominator must be positive");
    }
    __int128 pow10 = 1;
    for (unsigned i = 0; i < places; ++i) {
        pow10 *= 10;
    }
    const bool negative = r.num < 0;
    const __int128 magnitude = static_cast<__int128>(negative ? -r.num : r.num) * scale * pow10;
    __int128 q = magnitude / r.den;
    const __int128 rem = magnitude % r.den;
    if (2 * rem > r.den || (2 * rem == r.den && (q & 1) != 0)) {
        ++q;
    }
    const __int128 whole = q / pow10;
    __int128 frac = q % pow10;

    std::string out;
    if (negative && q != 0) {
        out.push_back('-');
    }
    std::string whole_digits;
    __int128 w = whole;
    do {
        whole_digits.insert(whole_digits.begin(), static_cast<char>('0' + static_cast<int>(w % 10)));
        w /= 10;
    } while (w != 0);
    out += whole_digits;
    if (places > 0) {
        std::string frac_digits(places, '0');
        for (unsigned i = places; i-- > 0;) {
            frac_digits[i] = static_cast<char>('0' + static_cast<int>(frac % 10));
            frac /= 10;
        }
        out.push_back('.');
        out += frac_digits;
    }
    return out;
}

inline std::string format_percent(const Ratio& r, unsigned places = 6) { return format_ratio(r, places, 100); }

} // namespace ternary
