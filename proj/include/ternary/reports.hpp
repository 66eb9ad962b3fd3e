#pragma once
// reports.hpp - single-exponent, theory, alpha and audit reports.

#include <ternary/aggregate.hpp>
#include <ternary/alpha.hpp>
#include <ternary/error.hpp>
#include <ternary/ratio.hpp>
#include <ternary/stats.hpp>
#include <ternary/table.hpp>
#include <ternary/ternary_number.hpp>
#include <ternary/theory.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace ternary {

// --- single -------------------------------------------------------------------

struct SingleReport {
    std::uint64_t n = 0;
    std::uint64_t length = 0;
    DigitTally digits;
    int leading_digit = 0;
    std::uint64_t zero_run = 0;
    double sigma = 0.0;
};

inline SingleReport single(std::uint64_t n, OutputFormat format, std::ostream& os) {
    const TernaryNumber x = from_exponent(n);
    const auto trits = x.trits();
    SingleReport r;
    r.n = n;
    r.length = trits.size();
    r.digits = digit_counts(trits);
    r.leading_digit = trits.back();
    r.zero_run = zero_run_after_leading(trits);
    r.sigma = sigma_for_length(r.length);

    TableWriter table(os, format, {"n", "length", "digit", "count", "frequency_pct", "deviation", "sigma"});
    const std::string sigma = format_sci(r.sigma);
    for (std::uint32_t d = 0; d < 3; ++d) {
        const Ratio f = make_ratio(r.digits.counts[d], r.length);
        table.row({num(n), num(r.length), txt(std::to_string(d)), num(r.digits.counts[d]), num(format_percent(f)),
                   num(format_ratio(minus_inverse_power_of_three(f, 1), 12)), num(sigma)});
    }
    table.row({num(n), num(r.length), txt("total"), num(r.length), num(format_percent(make_ratio(1, 1))),
               num("0.000000000000"), num(sigma)});
    return r;
}

// --- theory -------------------------------------------------------------------

struct TheoryOptions {
    std::uint32_t h_max = kDefaultHMax;
    std::uint64_t m_max = 26;
    std::vector<std::uint64_t> sigma_n{1'000'000};
    std::vector<std::uint64_t> single_n{2000, 1'000'000};
};

// Calls `open(name)` for each table to obtain its stream.
inline TheoryTable theory_report(const TheoryOptions& opt, OutputFormat format,
                                 const std::function<std::ostream&(const std::string&)>& open) {
    if (opt.h_max + 1 > kLimitBudget) {
        throw config_error("--max-h must be below " + std::to_string(kLimitBudget));
    }
    if (opt.m_max < 1) {
        throw config_error("--max-m must be at least 1");
    }
    const TheoryTable t = build_theory_table(opt.h_max + 1, opt.m_max);

    {
        TableWriter table(open("benford"), format, {"m", "digits", "probability"});
        for (std::uint64_t m = 1; m <= opt.m_max; ++m) {
            table.row({num(m), txt(from_integer(m).digit_string()), num(format_fixed(t.benford[m - 1], 6))});
        }
    }
    {
        TableWriter table(open("limits"), format, {"H", "d", "limit", "per_digit", "deviation"});
        for (std::uint32_t h = 0; h <= opt.h_max; ++h) {
            HighPrecision sum = 0;
            for (std::uint32_t d = 0; d < 3; ++d) {
                const HighPrecision& l = t.limits[h][d];
                const HighPrecision per_digit = l / (h + 1);
                sum += l;
                table.row({num(h), txt(std::to_string(d)), num(format_fixed(l, 6)), num(format_fixed(per_digit, 6)),
                           num(format_fixed(per_digit - HighPrecision(1) / 3, 6))});
            }
            table.row({num(h), txt("sum"), num(format_fixed(sum, 6)), num(format_fixed(sum / (h + 1), 6)),
                       num(format_fixed(sum / (h + 1) - 1, 6))});
        }
    }
    {
        TableWriter table(open("gaps"), format, {"H", "d", "gap"});
        for (std::uint32_t h = 0; h < opt.h_max; ++h) {
            for (std::uint32_t d = 0; d < 3; ++d) {
                table.row({num(h), num(d), num(t.gap(d, h).str(6, std::ios_base::scientific))});
            }
        }
    }
    {
        TableWriter table(open("sigma"), format, {"benchmark", "N", "total", "sigma"});
        for (std::uint64_t n : opt.sigma_n) {
            const LengthTotals totals = length_totals(n);
            table.row({txt("digit"), num(n), num(totals.digits), num(format_sci(sigma_aggregate(1, totals.digits), 3))});
            table.row({txt("block_k2"), num(n), num(totals.blocks2),
                       num(format_sci(sigma_aggregate(2, totals.blocks2), 3))});
            table.row({txt("block_k3"), num(n), num(totals.blocks3),
                       num(format_sci(sigma_aggregate(3, totals.blocks3), 3))});
            table.row({txt("digit_approx"), num(n), num(""), num(format_sci(sigma_aggregate_approx(n), 3))});
        }
        for (std::uint64_t n : opt.single_n) {
            table.row({txt("single"), num(n), num(length_formula(n)), num(format_sci(sigma_single(n), 5))});
        }
    }
    return t;
}

// --- alpha --------------------------------------------------------------------

struct AlphaOptions {
    std::size_t digits = 0;
    std::size_t guard = kDefaultGuard;
    std::vector<std::uint32_t> block_lengths{2, 3};
    std::size_t verify_max = 10;
    std::filesystem::path out_file;
};

struct AlphaReport {
    AlphaExpansion expansion;
    std::size_t verified = 0; // prefixes 1..verified passed the exact oracle
    bool verification_ok = false;
    AlphaDigitStatistics statistics;
};

inline AlphaReport alpha_report(const AlphaOptions& opt, OutputFormat format, std::ostream& os, std::ostream& log) {
    if (opt.digits < 1) {
        throw config_error("--digits must be at least 1");
    }
    if (opt.guard < 8) {
        throw config_error("--guard must be at least 8");
    }
    if (opt.verify_max > kDefaultVerifyBudget) {
        throw config_error("--verify-max must be at most " + std::to_string(kDefaultVerifyBudget));
    }
    for (std::uint32_t k : opt.block_lengths) {
        if (k < 1 || k > 6) {
            throw config_error("block lengths must be in [1, 6]");
        }
    }
    AlphaReport r;
    r.expansion = expand(opt.digits, opt.guard);
    log << "alpha: D=" << opt.digits << " guard=" << opt.guard
        << " certified=" << (r.expansion.certified ? "true" : "false") << '\n';
    if (!opt.out_file.empty()) {
        std::ofstream out(opt.out_file, std::ios::trunc);
        if (!out) {
            throw config_error("cannot write " + opt.out_file.string());
        }
        write_expansion(out, r.expansion);
    }
    if (!r.expansion.certified) {
        throw domain_error("alpha expansion could not be certified; increase --guard");
    }
    const std::size_t checks = std::min(opt.verify_max, opt.digits);
    r.verification_ok = true;
    for (std::size_t j = 1; j <= checks; ++j) {
        if (!verify_prefix(r.expansion, j)) {
            r.verification_ok = false;
            break;
        }
        r.verified = j;
    }
    log << "alpha: exact prefix oracle passed for D=1.." << r.verified << '\n';

    std::vector<std::uint32_t> ks{1};
    ks.insert(ks.end(), opt.block_lengths.begin(), opt.block_lengths.end());
    r.statistics = digit_statistics(r.expansion, ks);
    TableWriter table(os, format, {"D", "k", "block", "count", "frequency_pct", "deviation"});
    for (const BlockTally& tally : r.statistics.blocks) {
        for (std::size_t code = 0; code < tally.counts().size(); ++code) {
            const Ratio f = make_ratio(tally.count_code(code), tally.blocks_total());
            table.row({num(opt.digits), num(tally.k()), txt(tally.block_string(code)), num(tally.count_code(code)),
                       num(format_percent(f)), num(format_ratio(minus_inverse_power_of_three(f, tally.k()), 12))});
        }
    }
    if (!r.verification_ok) {
        throw domain_error("alpha expansion failed the exact prefix oracle at D=" + std::to_string(r.verified + 1));
    }
    return r;
}

// --- audit --------------------------------------------------------------------

struct AuditReport {
    std::uint64_t max_n = 0;
    std::vector<std::uint64_t> missing_two;   // n whose 2^n has no digit 2
    std::uint64_t relation_checked = 0;       // n with leading digit 2
    std::vector<std::uint64_t> relation_violations;
    std::uint64_t prediction_agreements = 0;
    std::vector<std::uint64_t> prediction_mismatches;
    std::uint64_t max_zero_run = 0;
    std::uint64_t max_zero_run_at = 0;
};

// Scans n = 1..max_n. When `series` is set, writes per-n zero runs with the
// running maximum next to ln(n).
inline AuditReport audit(std::uint64_t max_n, OutputFormat format, std::ostream* series) {
    if (max_n < 9) {
        throw config_error("--max-n must be at least 9 for the audit");
    }
    std::optional<TableWriter> table;
    if (series != nullptr) {
        table.emplace(*series, format,
                      std::vector<std::string>{"n", "leading_digit", "zero_run", "running_max", "ln_n"});
    }
    AuditReport r;
    r.max_n = max_n;
    RotationOracle oracle;
    TernaryNumber number = from_integer(1);
    std::vector<std::uint8_t> trits;
    int prev_leading = 1; // 2^0
    std::uint64_t prev_run = 0;
    for (std::uint64_t n = 1; n <= max_n; ++n) {
        number.double_in_place();
        number.unpack(trits);
        const int leading = trits.back();
        const std::uint64_t run = zero_run_after_leading(trits);
        if (!contains_digit(trits, Trit(2))) {
            r.missing_two.push_back(n);
        }
        if (leading == 2) {
            ++r.relation_checked;
            if (prev_leading != 1 || prev_run < run) {
                r.relation_violations.push_back(n);
            }
        }
        if (oracle.leading_digit(n) == leading) {
            ++r.prediction_agreements;
        } else {
            r.prediction_mismatches.push_back(n);
        }
        if (run > r.max_zero_run) {
            r.max_zero_run = run;
            r.max_zero_run_at = n;
        }
        if (table) {
            char ln[32];
            std::snprintf(ln, sizeof ln, "%.6f", std::log(static_cast<double>(n)));
            table->row({num(n), num(static_cast<std::uint64_t>(leading)), num(run), num(r.max_zero_run), num(ln)});
        }
        prev_leading = leading;
        prev_run = run;
    }
    return r;
}

inline void print_audit_summary(const AuditReport& r, std::ostream& os) {
    auto list = [](const std::vector<std::uint64_t>& v) {
        std::string s = "{";
        for (std::size_t i = 0; i < v.size(); ++i) {
            s += (i ? "," : "") + std::to_string(v[i]);
        }
        return s + "}";
    };
    os << "audit N=" << r.max_n << '\n';
    os << "no_digit_2: " << list(r.missing_two) << '\n';
    os << "leading2_zero_run_relation: checked=" << r.relation_checked
       << " violations=" << list(r.relation_violations) << '\n';
    os << "leading_digit_prediction: agree=" << r.prediction_agreements << "/" << r.max_n
       << " mismatches=" << list(r.prediction_mismatches) << '\n';
    os << "max_zero_run: " << r.max_zero_run << " at n=" << r.max_zero_run_at
       << " ln(n)=" << std::log(static_cast<double>(r.max_zero_run_at ? r.max_zero_run_at : 1)) << '\n';
}

} // namespace ternary
