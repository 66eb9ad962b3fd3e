#pragma once
// stats.hpp - exact per-number digit, block and leading-digit tallies.
//
// The span-based functions take trits least significant first, which is the
// order TernaryNumber::unpack produces. Blocks are anchored at the most
// significant end: with length l, the l mod k lowest trits are the discarded
// remainder.

#include <ternary/error.hpp>
#include <ternary/ternary_number.hpp>

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ternary {

struct DigitTally {
    std::array<std::uint64_t, 3> counts{};

    [[nodiscard]] std::uint64_t operator[](std::size_t d) const { return counts.at(d); }
    [[nodiscard]] std::uint64_t total() const noexcept { return counts[0] + counts[1] + counts[2]; }

    DigitTally& operator+=(const DigitTally& other) noexcept {
        for (std::size_t d = 0; d < 3; ++d) {
            counts[d] += other.counts[d];
        }
        return *this;
    }

    friend bool operator==(const DigitTally&, const DigitTally&) = default;
};

inline constexpr std::uint32_t kMaxBlockLength = 12;

inline std::uint64_t pow3(std::uint32_t e) {
    std::uint64_t p = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        p *= 3;
    }
    return p;
}

// Dense table over all 3^k strings, indexed by the block's value read as a
// base-3 numeral (most significant character first).
class BlockTally {
public:
    BlockTally() = default;

    explicit BlockTally(std::uint32_t k) : k_(k) {
        if (k == 0 || k > kMaxBlockLength) {
            throw domain_error("block length must be in [1, " + std::to_string(kMaxBlockLength) + "]");
        }
        counts_.assign(pow3(k), 0);
    }

    static BlockTally from_counts(std::uint32_t k, std::span<const std::uint64_t> counts) {
        BlockTally tally(k);
        if (counts.size() != tally.counts_.size()) {
            throw domain_error("block counts do not cover all 3^k strings");
        }
        for (std::size_t code = 0; code < counts.size(); ++code) {
            tally.add(code, counts[code]);
        }
        return tally;
    }

    [[nodiscard]] std::uint32_t k() const noexcept { return k_; }
    [[nodiscard]] std::uint64_t blocks_total() const noexcept { return blocks_total_; }
    [[nodiscard]] std::span<const std::uint64_t> counts() const noexcept { return counts_; }

    [[nodiscard]] std::uint64_t count(std::string_view block) const { return counts_[code_of(block)]; }
    [[nodiscard]] std::uint64_t count_code(std::size_t code) const { return counts_.at(code); }

    void add(std::size_t code, std::uint64_t times = 1) {
        counts_[code] += times;
        blocks_total_ += times;
    }

    [[nodiscard]] std::size_t code_of(std::string_view block) const {
        if (block.size() != k_) {
            throw domain_error("block '" + std::string(block) + "' does not have length " + std::to_string(k_));
        }
        std::size_t code = 0;
        for (char c : block) {
            if (c < '0' || c > '2') {
                throw domain_error("not a ternary block: " + std::string(block));
            }
            code = code * 3 + static_cast<std::size_t>(c - '0');
        }
        return code;
    }

    [[nodiscard]] std::string block_string(std::size_t code) const {
        std::string s(k_, '0');
        for (std::size_t i = k_; i-- > 0;) {
            s[i] = static_cast<char>('0' + code % 3);
            code /= 3;
        }
        return s;
    }

    // Nonzero entries only.
    [[nodiscard]] std::map<std::string, std::uint64_t> to_map() const {
        std::map<std::string, std::uint64_t> m;
        for (std::size_t code = 0; code < counts_.size(); ++code) {
            if (counts_[code] != 0) {
                m.emplace(block_string(code), counts_[code]);
            }
        }
        return m;
    }

    BlockTally& operator+=(const BlockTally& other) {
        if (other.k_ != k_) {
            throw domain_error("cannot add block tallies with different k");
        }
        for (std::size_t i = 0; i < counts_.size(); ++i) {
            counts_[i] += other.counts_[i];
        }
        blocks_total_ += other.blocks_total_;
        return *this;
    }

    friend bool operator==(const BlockTally&, const BlockTally&) = default;

private:
    std::uint32_t k_ = 0;
    std::vector<std::uint64_t> counts_;
    std::uint64_t blocks_total_ = 0;
};

// --- span kernels (least significant trit first) ---------------------------

inline DigitTally digit_counts(std::span<const std::uint8_t> trits) noexcept {
    // sum = c1 + 2*c2 and zeros = c0 vectorize better than a histogram.
    std::uint64_t sum = 0;
    std::uint64_t zeros = 0;
    for (std::uint8_t t : trits) {
        sum += t;
        zeros += (t == 0);
    }
    const std::uint64_t nonzero = trits.size() - zeros;
    DigitTally tally;
    tally.counts[2] = sum - nonzero;
    tally.counts[1] = nonzero - tally.counts[2];
    tally.counts[0] = zeros;
    return tally;
}

inline void add_block_counts(std::span<const std::uint8_t> trits, BlockTally& tally) {
    const std::size_t k = tally.k();
    const std::size_t n = trits.size();
    const std::uint8_t* t = trits.data();
    std::size_t i = n % k;
    switch (k) {
    case 1:
        for (; i < n; ++i) {
            tally.add(t[i]);
        }
        break;
    case 2:
        for (; i + 2 <= n; i += 2) {
            tally.add(t[i] + 3u * t[i + 1]);
        }
        break;
    case 3:
        for (; i + 3 <= n; i += 3) {
            tally.add(t[i] + 3u * t[i + 1] + 9u * t[i + 2]);
        }
        break;
    default:
        for (; i + k <= n; i += k) {
            std::size_t code = 0;
            for (std::size_t j = k; j-- > 0;) {
                code = code * 3 + t[i + j];
            }
            tally.add(code);
        }
        break;
    }
}

inline BlockTally block_counts(std::span<const std::uint8_t> trits, std::uint32_t k) {
    BlockTally tally(k);
    add_block_counts(trits, tally);
    return tally;
}

// Counts over the min(h + 1, l) most significant trits.
inline DigitTally leading_counts(std::span<const std::uint8_t> trits, std::uint32_t h) noexcept {
    const std::size_t take = std::min<std::size_t>(std::size_t{h} + 1, trits.size());
    DigitTally tally;
    for (std::size_t i = trits.size() - take; i < trits.size(); ++i) {
        ++tally.counts[trits[i]];
    }
    return tally;
}

inline std::uint64_t leading_value(std::span<const std::uint8_t> trits, std::size_t j) {
    if (j < 1 || j > trits.size()) {
        throw domain_error("leading_value: digit count out of range");
    }
    if (j > 40) {
        throw domain_error("leading_value: more than 40 digits does not fit in 64 bits");
    }
    std::uint64_t m = 0;
    for (std::size_t i = trits.size(); i-- > trits.size() - j;) {
        m = m * 3 + trits[i];
    }
    return m;
}

inline std::uint64_t zero_run_after_leading(std::span<const std::uint8_t> trits) noexcept {
    if (trits.empty()) {
        return 0;
    }
    std::uint64_t run = 0;
    for (std::size_t i = trits.size() - 1; i-- > 0 && trits[i] == 0;) {
        ++run;
    }
    return run;
}

inline bool contains_digit(std::span<const std::uint8_t> trits, Trit d) noexcept {
    return std::find(trits.begin(), trits.end(), d.value()) != trits.end();
}

// --- TernaryNumber overloads -------------------------------------------------

inline DigitTally digit_counts(const TernaryNumber& x) { return digit_counts(x.trits()); }
inline BlockTally block_counts(const TernaryNumber& x, std::uint32_t k) { return block_counts(x.trits(), k); }
inline DigitTally leading_counts(const TernaryNumber& x, std::uint32_t h) { return leading_counts(x.trits(), h); }
inline std::uint64_t leading_value(const TernaryNumber& x, std::size_t j) { return leading_value(x.trits(), j); }

inline std::uint64_t zero_run_after_leading(const TernaryNumber& x) {
    if (x.is_zero()) {
        throw domain_error("zero_run_after_leading: zero has no leading digit");
    }
    return zero_run_after_leading(x.trits());
}

inline bool contains_digit(const TernaryNumber& x, Trit d) { return contains_digit(x.trits(), d); }

// --- per-exponent records ---------------------------------------------------

struct TallyConfig {
    std::vector<std::uint32_t> block_lengths{2, 3};
    std::vector<std::uint32_t> leading_h{0, 1, 2, 3};

    friend bool operator==(const TallyConfig&, const TallyConfig&) = default;
};

struct PerExponentRecord {
    std::uint64_t n = 0;
    std::uint64_t length = 0;
    DigitTally digits;
    std::vector<BlockTally> blocks;   // parallel to TallyConfig::block_lengths
    std::vector<DigitTally> leading;  // parallel to TallyConfig::leading_h
    std::uint64_t zero_run = 0;
    std::uint8_t leading_digit = 0;
};

// Tallies everything a sweep needs from one unpacked copy of the digits.
class Tallier {
public:
    explicit Tallier(TallyConfig config) : config_(std::move(config)) {
        for (std::uint32_t k : config_.block_lengths) {
            (void)BlockTally(k); // validates k
        }
    }

    [[nodiscard]] const TallyConfig& config() const noexcept { return config_; }

    PerExponentRecord tally(std::uint64_t n, const TernaryNumber& x) {
        x.unpack(buffer_);
        return tally(n, std::span<const std::uint8_t>(buffer_));
    }

    PerExponentRecord tally(std::uint64_t n, std::span<const std::uint8_t> trits) const {
        PerExponentRecord r;
        r.n = n;
        r.length = trits.size();
        r.digits = digit_counts(trits);
        r.blocks.reserve(config_.block_lengths.size());
        for (std::uint32_t k : config_.block_lengths) {
            r.blocks.push_back(block_counts(trits, k));
        }
        r.leading.reserve(config_.leading_h.size());
        for (std::uint32_t h : config_.leading_h) {
            r.leading.push_back(leading_counts(trits, h));
        }
        r.zero_run = zero_run_after_leading(trits);
        r.leading_digit = trits.empty() ? 0 : trits.back();
        return r;
    }

private:
    TallyConfig config_;
    std::vector<std::uint8_t> buffer_;
};

} // namespace ternary
