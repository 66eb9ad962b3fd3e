#pragma once
// aggregate.hpp - mergeable running totals over a contiguous exponent range.

#include <ternary/error.hpp>
#include <ternary/ratio.hpp>
#include <ternary/stats.hpp>
#include <ternary/theory.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ternary {

class AggregateState {
public:
    AggregateState() = default;

    explicit AggregateState(TallyConfig config) : config_(std::move(config)) {
        for (std::uint32_t k : config_.block_lengths) {
            blocks_.emplace_back(k);
        }
        leading_.resize(config_.leading_h.size());
    }

    // Rebuilds a state from stored fields (checkpoints). Throws if the
    // fields violate the state invariants.
    static AggregateState restore(TallyConfig config, std::uint64_t n_lo, std::uint64_t n_hi,
                                  std::uint64_t total_digits, DigitTally digits,
                                  std::vector<BlockTally> blocks, std::vector<DigitTally> leading) {
        AggregateState s(std::move(config));
        if (blocks.size() != s.blocks_.size() || leading.size() != s.leading_.size()) {
            throw domain_error("restore: tallies do not match the configuration");
        }
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (blocks[i].k() != s.config_.block_lengths[i]) {
                throw domain_error("restore: block length mismatch");
            }
        }
        if (digits.total() != total_digits) {
            throw domain_error("restore: digit counts do not sum to the digit total");
        }
        const bool empty = total_digits == 0 && n_lo == 0 && n_hi == 0;
        if (!empty && (n_lo == 0 || n_hi < n_lo)) {
            throw domain_error("restore: bad exponent range");
        }
        s.empty_ = empty;
        s.n_lo_ = n_lo;
        s.n_hi_ = n_hi;
        s.total_digits_ = total_digits;
        s.digits_ = digits;
        s.blocks_ = std::move(blocks);
        s.leading_ = std::move(leading);
        return s;
    }

    [[nodiscard]] const TallyConfig& config() const noexcept { return config_; }
    [[nodiscard]] bool empty() const noexcept { return empty_; }
    [[nodiscard]] std::uint64_t n_lo() const noexcept { return n_lo_; }
    [[nodiscard]] std::uint64_t n_hi() const noexcept { return n_hi_; }
    [[nodiscard]] std::uint64_t exponent_count() const noexcept { return empty_ ? 0 : n_hi_ - n_lo_ + 1; }
    [[nodiscard]] std::uint64_t total_digits() const noexcept { return total_digits_; }
    [[nodiscard]] const DigitTally& digits() const noexcept { return digits_; }
    [[nodiscard]] const std::vector<BlockTally>& block_tallies() const noexcept { return blocks_; }
    [[nodiscard]] const std::vector<DigitTally>& leading_tallies() const noexcept { return leading_; }

    [[nodiscard]] const BlockTally& blocks(std::uint32_t k) const {
        const auto it = std::find(config_.block_lengths.begin(), config_.block_lengths.end(), k);
        if (it == config_.block_lengths.end()) {
            throw domain_error("block length " + std::to_string(k) + " is not tallied");
        }
        return blocks_[static_cast<std::size_t>(it - config_.block_lengths.begin())];
    }

    // Sum over n of gamma_d(2^n, h).
    [[nodiscard]] const DigitTally& leading(std::uint32_t h) const {
        const auto it = std::find(config_.leading_h.begin(), config_.leading_h.end(), h);
        if (it == config_.leading_h.end()) {
            throw domain_error("H=" + std::to_string(h) + " is not tallied");
        }
        return leading_[static_cast<std::size_t>(it - config_.leading_h.begin())];
    }

    AggregateState& update(const PerExponentRecord& record) {
        if (!empty_ && record.n != n_hi_ + 1) {
            throw domain_error("update: exponent " + std::to_string(record.n) + " does not follow " +
                               std::to_string(n_hi_));
        }
        if (record.blocks.size() != blocks_.size() || record.leading.size() != leading_.size()) {
            throw domain_error("update: record was tallied with a different configuration");
        }
        if (empty_) {
            n_lo_ = record.n;
            empty_ = false;
        }
        n_hi_ = record.n;
        total_digits_ += record.length;
        digits_ += record.digits;
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            blocks_[i] += record.blocks[i];
        }
        for (std::size_t i = 0; i < leading_.size(); ++i) {
            leading_[i] += record.leading[i];
        }
        return *this;
    }

    friend AggregateState merge(const AggregateState& a, const AggregateState& b) {
        if (!(a.config_ == b.config_)) {
            throw domain_error("merge: states use different configurations");
        }
        if (a.empty_) {
            return b;
        }
        if (b.empty_) {
            return a;
        }
        if (b.n_lo_ != a.n_hi_ + 1) {
            throw domain_error("merge: ranges [" + std::to_string(a.n_lo_) + "," + std::to_string(a.n_hi_) + "] and [" +
                               std::to_string(b.n_lo_) + "," + std::to_string(b.n_hi_) + "] are not adjacent");
        }
        AggregateState out = a;
        out.n_hi_ = b.n_hi_;
        out.total_digits_ += b.total_digits_;
        out.digits_ += b.digits_;
        for (std::size_t i = 0; i < out.blocks_.size(); ++i) {
            out.blocks_[i] += b.blocks_[i];
        }
        for (std::size_t i = 0; i < out.leading_.size(); ++i) {
            out.leading_[i] += b.leading_[i];
        }
        return out;
    }

    friend bool operator==(const AggregateState&, const AggregateState&) = default;

private:
    TallyConfig config_;
    bool empty_ = true;
    std::uint64_t n_lo_ = 0;
    std::uint64_t n_hi_ = 0;
    std::uint64_t total_digits_ = 0;
    DigitTally digits_;
    std::vector<BlockTally> blocks_;
    std::vector<DigitTally> leading_;
};

// F_d(N) = C_d / L.
inline Ratio digit_frequency(const AggregateState& s, std::uint32_t d) {
    if (d > 2) {
        throw domain_error("digit out of range");
    }
    if (s.total_digits() == 0) {
        throw domain_error("digit_frequency: empty state");
    }
    return make_ratio(s.digits().counts[d], s.total_digits());
}

// F_s(N) = C_s / sum of floor(l(n)/k); k is the length of `block`.
inline Ratio block_frequency(const AggregateState& s, std::string_view block) {
    const BlockTally& tally = s.blocks(static_cast<std::uint32_t>(block.size()));
    if (tally.blocks_total() == 0) {
        throw domain_error("block_frequency: no blocks tallied");
    }
    return make_ratio(tally.count(block), tally.blocks_total());
}

// F_{d,H}(N) = (1/N) sum of gamma_d(2^n, H).
inline Ratio leading_avg_count(const AggregateState& s, std::uint32_t d, std::uint32_t h) {
    if (d > 2) {
        throw domain_error("digit out of range");
    }
    const DigitTally& tally = s.leading(h);
    if (s.exponent_count() == 0) {
        throw domain_error("leading_avg_count: empty state");
    }
    return make_ratio(tally.counts[d], s.exponent_count());
}

// --- per-exponent deviation series -------------------------------------------

struct DeviationRow {
    std::uint64_t n = 0;
    std::uint64_t length = 0;
    std::array<Ratio, 3> deviation{}; // f_d(n) - 1/3
    double sigma = 0.0;               // sqrt(p (1 - p) / l(n)), p = 1/3
};

inline DeviationRow deviation_row(const PerExponentRecord& r) {
    if (r.length == 0) {
        throw domain_error("deviation_row: empty number");
    }
    DeviationRow row;
    row.n = r.n;
    row.length = r.length;
    for (std::size_t d = 0; d < 3; ++d) {
        row.deviation[d] = minus_inverse_power_of_three(make_ratio(r.digits.counts[d], r.length), 1);
    }
    row.sigma = sigma_for_length(r.length);
    return row;
}

// Rows must arrive with consecutive exponents.
class DeviationSeries {
public:
    DeviationRow push(const PerExponentRecord& r) {
        if (started_ && r.n != last_ + 1) {
            throw domain_error("deviation series: exponent " + std::to_string(r.n) + " out of order");
        }
        started_ = true;
        last_ = r.n;
        return deviation_row(r);
    }

private:
    bool started_ = false;
    std::uint64_t last_ = 0;
};

} // namespace ternary
