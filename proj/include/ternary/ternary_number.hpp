#pragma once
// ternary_number.hpp - exact base-3 integers with in-place doubling.
//
// Trits are packed 18 per 32-bit limb (limb base 3^18), least significant
// limb first. 2 * (3^18 - 1) + 1 still fits in 32 bits, so doubling is a
// single carry pass with carry in {0, 1}.

#include <ternary/error.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ternary {

class Trit {
public:
    constexpr Trit() noexcept = default;

    explicit constexpr Trit(int value) : value_(checked(value)) {}

    [[nodiscard]] constexpr std::uint8_t value() const noexcept { return value_; }
    [[nodiscard]] constexpr char to_char() const noexcept { return static_cast<char>('0' + value_); }

    friend constexpr bool operator==(Trit, Trit) noexcept = default;

private:
    static constexpr std::uint8_t checked(int value) {
        if (value < 0 || value > 2) {
            throw domain_error("trit value out of range: " + std::to_string(value));
        }
        return static_cast<std::uint8_t>(value);
    }

    std::uint8_t value_ = 0;
};

namespace detail {

inline constexpr std::size_t kTritsPerLimb = 18;
inline constexpr std::uint32_t kLimbBase = 387'420'489; // 3^18
inline constexpr std::size_t kHalfLimbTrits = 9;
inline constexpr std::uint32_t kHalfLimbBase = 19'683; // 3^9

inline constexpr std::array<std::uint32_t, kTritsPerLimb + 1> kPow3 = [] {
    std::array<std::uint32_t, kTritsPerLimb + 1> p{};
    p[0] = 1;
    for (std::size_t i = 1; i < p.size(); ++i) {
        p[i] = p[i - 1] * 3;
    }
    return p;
}();

// Number of base-3 digits of a nonzero limb value.
inline std::size_t limb_width(std::uint32_t v) noexcept {
    return static_cast<std::size_t>(std::upper_bound(kPow3.begin() + 1, kPow3.end() - 1, v) - kPow3.begin());
}

// 3^9 entries of 9 trits each, least significant first.
inline const std::vector<std::uint8_t>& half_limb_table() {
    static const std::vector<std::uint8_t> table = [] {
        std::vector<std::uint8_t> t(std::size_t{kHalfLimbBase} * kHalfLimbTrits);
        for (std::uint32_t v = 0; v < kHalfLimbBase; ++v) {
            std::uint32_t x = v;
            for (std::size_t j = 0; j < kHalfLimbTrits; ++j) {
                t[v * kHalfLimbTrits + j] = static_cast<std::uint8_t>(x % 3);
                x /= 3;
            }
        }
        return t;
    }();
    return table;
}

} // namespace detail

class TernaryNumber {
public:
    TernaryNumber() noexcept = default;

    // 2^n, converted directly from binary.
    static TernaryNumber from_exponent(std::uint64_t n) {
        mpz_class value;
        mpz_ui_pow_ui(value.get_mpz_t(), 2, n);
        return from_integer(value);
    }

    static TernaryNumber from_integer(std::uint64_t value) {
        TernaryNumber x;
        while (value != 0) {
            x.limbs_.push_back(static_cast<std::uint32_t>(value % detail::kLimbBase));
            value /= detail::kLimbBase;
        }
        x.refresh_length();
        return x;
    }

    static TernaryNumber from_integer(const mpz_class& value) {
        if (sgn(value) < 0) {
            throw domain_error("from_integer: negative value");
        }
        if (sgn(value) == 0) {
            return {};
        }
        return from_digit_string(value.get_str(3));
    }

    // Most significant digit first; leading zeros are dropped.
    static TernaryNumber from_digit_string(std::string_view digits) {
        for (char c : digits) {
            if (c < '0' || c > '2') {
                throw domain_error("not a ternary digit string");
            }
        }
        const auto first = digits.find_first_not_of('0');
        if (first == std::string_view::npos) {
            return {};
        }
        digits.remove_prefix(first);

        TernaryNumber x;
        x.limbs_.reserve(digits.size() / detail::kTritsPerLimb + 1);
        std::size_t end = digits.size();
        while (end > 0) {
            const std::size_t begin = end > detail::kTritsPerLimb ? end - detail::kTritsPerLimb : 0;
            std::uint32_t limb = 0;
            for (std::size_t i = begin; i < end; ++i) {
                limb = limb * 3 + static_cast<std::uint32_t>(digits[i] - '0');
            }
            x.limbs_.push_back(limb);
            end = begin;
        }
        x.length_ = digits.size();
        return x;
    }

    // Least significant trit first; high zeros are dropped.
    static TernaryNumber from_trits(std::span<const std::uint8_t> trits) {
        TernaryNumber x;
        x.limbs_.assign((trits.size() + detail::kTritsPerLimb - 1) / detail::kTritsPerLimb, 0);
        for (std::size_t i = 0; i < trits.size(); ++i) {
            if (trits[i] > 2) {
                throw domain_error("trit value out of range");
            }
            x.limbs_[i / detail::kTritsPerLimb] += trits[i] * detail::kPow3[i % detail::kTritsPerLimb];
        }
        x.trim();
        return x;
    }

    TernaryNumber& double_in_place() noexcept {
        std::uint32_t carry = 0;
        for (auto& limb : limbs_) {
            const std::uint32_t v = (limb << 1) + carry;
            carry = v >= detail::kLimbBase ? 1u : 0u;
            limb = v - carry * detail::kLimbBase;
        }
        if (carry != 0) {
            limbs_.push_back(carry);
        }
        refresh_length();
        return *this;
    }

    [[nodiscard]] std::size_t size() const noexcept { return length_; }
    [[nodiscard]] bool is_zero() const noexcept { return length_ == 0; }
    [[nodiscard]] std::span<const std::uint32_t> limbs() const noexcept { return limbs_; }

    // Position 0 is the least significant trit.
    [[nodiscard]] Trit trit(std::size_t position) const {
        if (position >= length_) {
            throw domain_error("trit position out of range");
        }
        const std::uint32_t limb = limbs_[position / detail::kTritsPerLimb];
        return Trit(static_cast<int>(limb / detail::kPow3[position % detail::kTritsPerLimb] % 3));
    }

    [[nodiscard]] Trit leading_trit() const {
        if (is_zero()) {
            throw domain_error("zero has no leading trit");
        }
        return trit(length_ - 1);
    }

    // Writes size() trits, least significant first. `out` is reused across calls.
    void unpack(std::vector<std::uint8_t>& out) const {
        out.resize(limbs_.size() * detail::kTritsPerLimb);
        const std::uint8_t* table = detail::half_limb_table().data();
        std::uint8_t* dst = out.data();
        for (std::uint32_t limb : limbs_) {
            const std::uint32_t low = limb % detail::kHalfLimbBase;
            const std::uint32_t high = limb / detail::kHalfLimbBase;
            std::memcpy(dst, table + low * detail::kHalfLimbTrits, detail::kHalfLimbTrits);
            std::memcpy(dst + detail::kHalfLimbTrits, table + high * detail::kHalfLimbTrits, detail::kHalfLimbTrits);
            dst += detail::kTritsPerLimb;
        }
        out.resize(length_);
    }

    [[nodiscard]] std::vector<std::uint8_t> trits() const {
        std::vector<std::uint8_t> out;
        unpack(out);
        return out;
    }

    // Most significant digit first; zero renders as "0".
    [[nodiscard]] std::string digit_string() const {
        if (is_zero()) {
            return "0";
        }
        const auto t = trits();
        std::string s(t.size(), '0');
        for (std::size_t i = 0; i < t.size(); ++i) {
            s[t.size() - 1 - i] = static_cast<char>('0' + t[i]);
        }
        return s;
    }

    [[nodiscard]] mpz_class to_mpz() const {
        mpz_class value = 0;
        for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it) {
            value *= detail::kLimbBase;
            value += *it;
        }
        return value;
    }

    friend bool operator==(const TernaryNumber&, const TernaryNumber&) = default;

private:
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) {
            limbs_.pop_back();
        }
        refresh_length();
    }

    void refresh_length() noexcept {
        length_ = limbs_.empty()
            ? 0
            : (limbs_.size() - 1) * detail::kTritsPerLimb + detail::limb_width(limbs_.back());
    }

    std::vector<std::uint32_t> limbs_;
    std::size_t length_ = 0;
};

inline TernaryNumber from_exponent(std::uint64_t n) { return TernaryNumber::from_exponent(n); }
inline TernaryNumber from_integer(std::uint64_t value) { return TernaryNumber::from_integer(value); }
inline TernaryNumber from_integer(const mpz_class& value) { return TernaryNumber::from_integer(value); }

inline TernaryNumber double_in_place(TernaryNumber x) {
    x.double_in_place();
    return x;
}

inline std::string digit_string(const TernaryNumber& x) { return x.digit_string(); }

} // namespace ternary
