#pragma once
// alpha.hpp - certified ternary expansion of log_3(2).
//
// ln 2 = 2 atanh(1/3) and ln 3 = ln 2 + 2 atanh(1/5) are summed by binary
// splitting into integers scaled by 2^P with known one-sided error. The
// quotient then brackets floor(3^M * log_3 2) between two integers; a digit
// prefix shared by both ends of the bracket is exact.

#include <ternary/error.hpp>
#include <ternary/stats.hpp>

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stop_token>
#include <string>
#include <vector>

namespace ternary {

struct AlphaExpansion {
    std::vector<std::uint8_t> digits; // d_1, d_2, ... (most significant first)
    std::size_t guard = 0;
    bool certified = false;

    [[nodiscard]] std::size_t size() const noexcept { return digits.size(); }

    // Value of the first `count` digits as an integer, i.e. floor(3^count * alpha).
    [[nodiscard]] mpz_class prefix_value(std::size_t count) const {
        if (count > digits.size()) {
            throw domain_error("prefix longer than the expansion");
        }
        mpz_class a = 0;
        for (std::size_t j = 0; j < count; ++j) {
            a = a * 3 + digits[j];
        }
        return a;
    }
};

namespace detail {

struct AtanhSplit {
    mpz_class b; // product of odd denominators (2j + 1)
    mpz_class q; // q^(2 * terms), except the j = 0 factor is 1
    mpz_class t;
};

inline void check_stop(const std::stop_token& stop) {
    if (stop.stop_requested()) {
        throw cancelled();
    }
}

// Sum over j in [lo, hi) of 1 / ((2j + 1) q^(2j)), as t / (b * q_range).
inline AtanhSplit atanh_split(std::uint64_t lo, std::uint64_t hi, unsigned long q_squared,
                              const std::stop_token& stop) {
    if (hi - lo == 1) {
        AtanhSplit leaf;
        leaf.b = 2 * lo + 1;
        leaf.q = lo == 0 ? 1ul : q_squared;
        leaf.t = 1;
        return leaf;
    }
    if (hi - lo > 256) {
        check_stop(stop);
    }
    const std::uint64_t mid = lo + (hi - lo) / 2;
    AtanhSplit left = atanh_split(lo, mid, q_squared, stop);
    AtanhSplit right = atanh_split(mid, hi, q_squared, stop);
    AtanhSplit out;
    out.t = right.b * right.q * left.t + left.b * right.t;
    out.b = left.b * right.b;
    out.q = left.q * right.q;
    return out;
}

// floor(2^bits * atanh(1/q)); the true scaled value lies in [r, r + 2).
inline mpz_class scaled_atanh_inverse(unsigned long q, std::uint64_t bits, const std::stop_token& stop) {
    // Tail after `terms` terms is below 2 q^-(2 terms + 1); make it < 2^-bits.
    const double per_term = 2.0 * std::log2(static_cast<double>(q));
    const auto terms = static_cast<std::uint64_t>(std::ceil((static_cast<double>(bits) + 2.0) / per_term)) + 2;
    const AtanhSplit s = atanh_split(0, terms, q * q, stop);
    mpz_class numerator = s.t;
    numerator <<= bits;
    mpz_class denominator = s.b * s.q * q;
    mpz_class result;
    mpz_fdiv_q(result.get_mpz_t(), numerator.get_mpz_t(), denominator.get_mpz_t());
    return result;
}

struct ScaledLogs {
    mpz_class ln2; // 2^bits ln 2 in [ln2, ln2 + 4)
    mpz_class ln3; // 2^bits ln 3 in [ln3, ln3 + 8)
    std::uint64_t bits = 0;
};

inline ScaledLogs scaled_logs(std::uint64_t bits, const std::stop_token& stop) {
    const mpz_class a3 = scaled_atanh_inverse(3, bits, stop);
    const mpz_class a5 = scaled_atanh_inverse(5, bits, stop);
    return {2 * a3, 2 * a3 + 2 * a5, bits};
}

inline std::vector<std::uint8_t> padded_trits(const mpz_class& value, std::size_t width) {
    std::vector<std::uint8_t> out(width, 0);
    const std::string s = value.get_str(3);
    if (s.size() > width) {
        throw domain_error("value wider than requested trit count");
    }
    const std::size_t offset = width - s.size();
    for (std::size_t i = 0; i < s.size(); ++i) {
        out[offset + i] = static_cast<std::uint8_t>(s[i] - '0');
    }
    return out;
}

struct BracketedDigits {
    std::vector<std::uint8_t> digits; // first `count` digits (from the lower end)
    bool exact = false;               // both bracket ends agree on them
};

inline BracketedDigits bracketed_digits(std::size_t count, std::size_t guard, const std::stop_token& stop) {
    const std::size_t total = count + guard;
    const auto bits = static_cast<std::uint64_t>(std::ceil(static_cast<double>(total) * std::log2(3.0))) + 64;
    const ScaledLogs logs = scaled_logs(bits, stop);
    check_stop(stop);

    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 3, total);
    mpz_class lo;
    mpz_class hi;
    const mpz_class lo_num = logs.ln2 * scale;
    const mpz_class lo_den = logs.ln3 + 8;
    mpz_fdiv_q(lo.get_mpz_t(), lo_num.get_mpz_t(), lo_den.get_mpz_t());
    const mpz_class hi_num = (logs.ln2 + 4) * scale;
    mpz_fdiv_q(hi.get_mpz_t(), hi_num.get_mpz_t(), logs.ln3.get_mpz_t());
    check_stop(stop);

    const auto lo_trits = padded_trits(lo, total);
    const auto hi_trits = padded_trits(hi, total);
    BracketedDigits out;
    out.digits.assign(lo_trits.begin(), lo_trits.begin() + static_cast<std::ptrdiff_t>(count));
    out.exact = std::equal(out.digits.begin(), out.digits.end(), hi_trits.begin());
    return out;
}

} // namespace detail

inline constexpr std::size_t kDefaultGuard = 64;
inline constexpr std::size_t kDefaultVerifyBudget = 12;

// Certified when both the (guard) and (2 * guard) runs bracket the first
// `count` digits exactly and agree with each other.
inline AlphaExpansion expand(std::size_t count, std::size_t guard = kDefaultGuard, std::stop_token stop = {}) {
    if (count < 1) {
        throw domain_error("expand: need at least one digit");
    }
    if (guard < 8) {
        throw domain_error("expand: guard must be at least 8 digits");
    }
    const auto first = detail::bracketed_digits(count, guard, stop);
    const auto second = detail::bracketed_digits(count, 2 * guard, stop);
    AlphaExpansion e;
    e.digits = first.digits;
    e.guard = guard;
    e.certified = first.exact && second.exact && first.digits == second.digits;
    return e;
}

// Exact check 3^A <= 2^(3^D) < 3^(A+1), A = integer value of the first D digits.
inline bool verify_prefix(const AlphaExpansion& e, std::size_t count, std::size_t budget = kDefaultVerifyBudget) {
    if (count < 1 || count > budget) {
        throw domain_error("verify_prefix: digit count outside the oracle budget");
    }
    const mpz_class a = e.prefix_value(count);
    mpz_class exponent;
    mpz_ui_pow_ui(exponent.get_mpz_t(), 3, count);
    mpz_class power_of_two = 1;
    power_of_two <<= exponent.get_ui();
    mpz_class lower;
    mpz_ui_pow_ui(lower.get_mpz_t(), 3, a.get_ui());
    const mpz_class upper = lower * 3;
    return lower <= power_of_two && power_of_two < upper;
}

inline bool verify_prefix(std::size_t count, std::size_t budget = kDefaultVerifyBudget) {
    return verify_prefix(expand(count), count, budget);
}

struct AlphaDigitStatistics {
    DigitTally digits;
    std::vector<BlockTally> blocks;
};

// Blocks are the first floor(D/k) non-overlapping blocks from d_1 onwards.
inline AlphaDigitStatistics digit_statistics(const AlphaExpansion& e, std::span<const std::uint32_t> block_lengths) {
    if (!e.certified) {
        throw domain_error("digit_statistics: expansion is not certified");
    }
    const std::vector<std::uint8_t> lsb_first(e.digits.rbegin(), e.digits.rend());
    AlphaDigitStatistics out;
    out.digits = digit_counts(lsb_first);
    for (std::uint32_t k : block_lengths) {
        out.blocks.push_back(block_counts(lsb_first, k));
    }
    return out;
}

// Flat file: header line, then one ASCII trit per digit, no separators.
inline void write_expansion(std::ostream& os, const AlphaExpansion& e) {
    os << "ALPHA3 v1 D=" << e.size() << " certified=" << (e.certified ? "true" : "false") << '\n';
    std::string body(e.size(), '0');
    for (std::size_t i = 0; i < e.size(); ++i) {
        body[i] = static_cast<char>('0' + e.digits[i]);
    }
    os << body << '\n';
}

inline AlphaExpansion read_expansion(std::istream& is) {
    std::string header;
    std::getline(is, header);
    const std::string prefix = "ALPHA3 v1 D=";
    const auto cert_pos = header.find(" certified=");
    if (header.rfind(prefix, 0) != 0 || cert_pos == std::string::npos) {
        throw domain_error("not an ALPHA3 v1 expansion file");
    }
    const std::size_t count = std::stoull(header.substr(prefix.size(), cert_pos - prefix.size()));
    const std::string flag = header.substr(cert_pos + 11);
    if (flag != "true" && flag != "false") {
        throw domain_error("bad certified flag in expansion header");
    }
    std::string body;
    std::getline(is, body);
    if (body.size() != count) {
        throw domain_error("expansion body length does not match header");
    }
    AlphaExpansion e;
    e.certified = flag == "true";
    e.digits.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (body[i] < '0' || body[i] > '2') {
            throw domain_error("expansion body contains a non-trit character");
        }
        e.digits[i] = static_cast<std::uint8_t>(body[i] - '0');
    }
    return e;
}

} // namespace ternary
