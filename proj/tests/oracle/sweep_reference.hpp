#pragma once
// Recomputes every exact cell of a CSV sweep (default tallies, one digits row
// per exponent) from naive conversions and reports disagreements.

#include "naive.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace oracle {

inline std::string signed_decimal(std::int64_t num, std::uint64_t den, unsigned places) {
    const std::uint64_t mag = num < 0 ? static_cast<std::uint64_t>(-num) : static_cast<std::uint64_t>(num);
    const std::string s = decimal(mag, den, places);
    return num < 0 && s.find_first_not_of("0.") != std::string::npos ? "-" + s : s;
}

class SweepReference {
public:
    explicit SweepReference(std::string dir) : dir_(std::move(dir)) {}

    std::vector<std::string> check(std::uint64_t max_n) {
        const auto per_n = read_csv(dir_ + "/per_n.csv");
        const auto digits = read_csv(dir_ + "/digits.csv");
        expect(per_n.size() == max_n + 1, "per_n row count");
        expect(digits.size() == 3 * max_n + 1, "digits row count");

        std::array<std::uint64_t, 3> total_counts{};
        std::uint64_t total = 0;
        std::map<std::string, std::uint64_t> k2, k3;
        std::array<std::array<std::uint64_t, 3>, 4> lead{};
        for (std::uint64_t n = 1; n <= max_n && failures_.size() < 20; ++n) {
            const std::string s = power_of_two(n);
            const auto c = digit_counts(s);
            const auto len = static_cast<std::int64_t>(s.size());
            const Row& row = per_n.size() > n ? per_n[n] : Row{};
            cell(row, 0, std::to_string(n), "per_n n", n);
            cell(row, 1, std::to_string(s.size()), "per_n length", n);
            for (int d = 0; d < 3; ++d) {
                cell(row, 2 + d, std::to_string(c[d]), "per_n count", n);
                cell(row, 5 + d, signed_decimal(3 * static_cast<std::int64_t>(c[d]) - len, 3 * s.size(), 12),
                     "per_n deviation", n);
            }
            cell(row, 9, std::to_string(zero_run(s)), "per_n zero_run", n);
            cell(row, 10, std::string(1, s[0]), "per_n leading_digit", n);

            total += s.size();
            for (int d = 0; d < 3; ++d) {
                total_counts[d] += c[d];
            }
            for (int d = 0; d < 3; ++d) {
                const std::size_t r = 1 + 3 * (n - 1) + d;
                const Row& drow = digits.size() > r ? digits[r] : Row{};
                cell(drow, 0, std::to_string(n), "digits N", n);
                cell(drow, 2, std::to_string(total_counts[d]), "digits count", n);
                cell(drow, 3, decimal(total_counts[d], total, 6, 100), "digits frequency_pct", n);
                cell(drow, 4,
                     signed_decimal(3 * static_cast<std::int64_t>(total_counts[d]) - static_cast<std::int64_t>(total),
                                    3 * total, 12),
                     "digits deviation", n);
            }
            for (const auto& [b, v] : blocks(s, 2)) {
                k2[b] += v;
            }
            for (const auto& [b, v] : blocks(s, 3)) {
                k3[b] += v;
            }
            for (std::size_t h = 0; h < 4; ++h) {
                const auto l = leading_counts(s, h);
                for (int d = 0; d < 3; ++d) {
                    lead[h][d] += l[d];
                }
            }
        }
        check_blocks("blocks_k2", 2, k2, max_n);
        check_blocks("blocks_k3", 3, k3, max_n);
        for (std::size_t h = 0; h < 4; ++h) {
            const auto rows = read_csv(dir_ + "/leading_H" + std::to_string(h) + ".csv");
            expect(rows.size() == 4, "leading row count");
            for (int d = 0; d < 3 && rows.size() == 4; ++d) {
                cell(rows[1 + d], 3, std::to_string(lead[h][d]), "leading total", max_n);
                cell(rows[1 + d], 4, decimal(lead[h][d], max_n, 9), "leading average", max_n);
            }
        }
        return failures_;
    }

private:
    void expect(bool ok, const std::string& what) {
        if (!ok) {
            failures_.push_back(what);
        }
    }

    void cell(const Row& row, std::size_t col, const std::string& want, const std::string& what, std::uint64_t n) {
        const std::string got = row.size() > col ? row[col] : "<missing>";
        if (got != want) {
            failures_.push_back(what + " at n=" + std::to_string(n) + ": got " + got + ", want " + want);
        }
    }

    void check_blocks(const std::string& stem, std::size_t k, const std::map<std::string, std::uint64_t>& counts,
                      std::uint64_t max_n) {
        const auto rows = read_csv(dir_ + "/" + stem + ".csv");
        std::uint64_t total = 0;
        for (const auto& [b, v] : counts) {
            total += v;
        }
        std::size_t expected_rows = 1;
        for (std::size_t i = 0; i < k; ++i) {
            expected_rows *= 3;
        }
        expect(rows.size() == expected_rows + 1, stem + " row count");
        for (std::size_t r = 1; r < rows.size(); ++r) {
            const std::string& block = rows[r].size() > 2 ? rows[r][2] : std::string();
            const auto it = counts.find(block);
            const std::uint64_t c = it == counts.end() ? 0 : it->second;
            cell(rows[r], 3, std::to_string(c), stem + " count " + block, max_n);
            if (total == 0) {
                cell(rows[r], 4, "nan", stem + " frequency_pct " + block, max_n);
                continue;
            }
            cell(rows[r], 4, decimal(c, total, 6, 100), stem + " frequency_pct " + block, max_n);
            std::int64_t pow = 1;
            for (std::size_t i = 0; i < k; ++i) {
                pow *= 3;
            }
            cell(rows[r], 5,
                 signed_decimal(pow * static_cast<std::int64_t>(c) - static_cast<std::int64_t>(total),
                                static_cast<std::uint64_t>(pow) * total, 12),
                 stem + " deviation " + block, max_n);
        }
    }

    std::string dir_;
    std::vector<std::string> failures_;
};

} // namespace oracle
