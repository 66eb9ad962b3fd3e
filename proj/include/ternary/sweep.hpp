#pragma once
// sweep.hpp - the exponent sweep: sharded tallying, running report series,
// checkpoints and resume.
//
// Output files in the configured directory (extension .csv or .jsonl):
//   per_n      n, length, c0, c1, c2, dev0..dev2, sigma, zero_run, leading_digit
//   digits     running aggregate per N: N, d, count, frequency_pct, deviation,
//              sigma_exact, sigma_approx
//   blocks_k<k>, leading_H<h>   final aggregate tables

#include <ternary/aggregate.hpp>
#include <ternary/checkpoint.hpp>
#include <ternary/error.hpp>
#include <ternary/stats.hpp>
#include <ternary/table.hpp>
#include <ternary/ternary_number.hpp>
#include <ternary/theory.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace ternary {

namespace fs = std::filesystem;

// The subset of a record the streamed series need; shards spill these to disk.
struct SeriesRecord {
    std::uint64_t n = 0;
    std::uint64_t length = 0;
    std::uint64_t counts[3] = {0, 0, 0};
    std::uint64_t zero_run = 0;
    std::uint64_t leading_digit = 0;

    static SeriesRecord from(const PerExponentRecord& r) {
        return {r.n, r.length, {r.digits.counts[0], r.digits.counts[1], r.digits.counts[2]}, r.zero_run,
                r.leading_digit};
    }
};

inline const std::vector<std::string>& per_n_columns() {
    static const std::vector<std::string> c{"n",    "length", "c0",    "c1",       "c2",           "dev0",
                                            "dev1", "dev2",   "sigma", "zero_run", "leading_digit"};
    return c;
}

inline const std::vector<std::string>& digits_columns() {
    static const std::vector<std::string> c{"N",         "d",           "count",       "frequency_pct",
                                            "deviation", "sigma_exact", "sigma_approx"};
    return c;
}

inline fs::path table_path(const SweepConfig& c, const std::string& stem) {
    return c.out_dir / (stem + table_extension(c.format));
}

namespace detail {

inline constexpr unsigned kDeviationPlaces = 12;

// Appends per_n and running digits rows in exponent order.
class SeriesSink {
public:
    SeriesSink(const SweepConfig& config, const AggregateState& start, bool fresh,
               std::uint64_t per_n_bytes, std::uint64_t digits_bytes)
        : config_(config),
          counts_(start.digits()),
          total_digits_(start.total_digits()),
          last_n_(start.n_hi()),
          per_n_path_(table_path(config, "per_n")),
          digits_path_(table_path(config, "digits")) {
        const fs::path& per_n = per_n_path_;
        const fs::path& digits = digits_path_;
        if (!fresh) {
            fs::resize_file(per_n, per_n_bytes);
            fs::resize_file(digits, digits_bytes);
        }
        const auto mode = fresh ? std::ios::trunc : std::ios::app;
        per_n_.open(per_n, std::ios::out | mode);
        digits_.open(digits, std::ios::out | mode);
        if (!per_n_ || !digits_) {
            throw config_error("cannot open report files in " + config.out_dir.string());
        }
        per_n_writer_.emplace(per_n_, config.format, per_n_columns(), fresh);
        digits_writer_.emplace(digits_, config.format, digits_columns(), fresh);
    }

    void consume(const SeriesRecord& r) {
        if (r.n != last_n_ + 1) {
            throw domain_error("series: exponent " + std::to_string(r.n) + " out of order");
        }
        last_n_ = r.n;
        const std::int64_t len = static_cast<std::int64_t>(r.length);
        std::vector<Cell> row{num(r.n), num(r.length), num(r.counts[0]), num(r.counts[1]), num(r.counts[2])};
        for (std::size_t d = 0; d < 3; ++d) {
            const Ratio dev{3 * static_cast<std::int64_t>(r.counts[d]) - len, 3 * len};
            row.push_back(num(format_ratio(dev, kDeviationPlaces)));
        }
        row.push_back(num(format_sci(sigma_for_length(r.length))));
        row.push_back(num(r.zero_run));
        row.push_back(num(r.leading_digit));
        per_n_writer_->row(row);

        total_digits_ += r.length;
        for (std::size_t d = 0; d < 3; ++d) {
            counts_.counts[d] += r.counts[d];
        }
        if (r.n % config_.digits_every == 0 || r.n == config_.max_n) {
            const std::string sigma_exact = format_sci(sigma_aggregate(1, total_digits_));
            const std::string sigma_approx = format_sci(sigma_aggregate_approx(r.n));
            for (std::size_t d = 0; d < 3; ++d) {
                const Ratio f = make_ratio(counts_.counts[d], total_digits_);
                digits_writer_->row({num(r.n), num(d), num(counts_.counts[d]), num(format_percent(f)),
                                     num(format_ratio(minus_inverse_power_of_three(f, 1), kDeviationPlaces)),
                                     num(sigma_exact), num(sigma_approx)});
            }
        }
    }

    // Flushes and returns the byte sizes of (per_n, digits).
    std::pair<std::uint64_t, std::uint64_t> flush() {
        per_n_.flush();
        digits_.flush();
        if (!per_n_ || !digits_) {
            throw config_error("failed writing report files");
        }
        return {fs::file_size(per_n_path_), fs::file_size(digits_path_)};
    }

private:
    const SweepConfig& config_;
    DigitTally counts_;
    std::uint64_t total_digits_;
    std::uint64_t last_n_;
    fs::path per_n_path_;
    fs::path digits_path_;
    std::ofstream per_n_;
    std::ofstream digits_;
    std::optional<TableWriter> per_n_writer_;
    std::optional<TableWriter> digits_writer_;
};

struct ShardResult {
    AggregateState state;
    fs::path spill;
    std::exception_ptr error;
};

inline void run_shard(const SweepConfig& config, std::uint64_t lo, std::uint64_t hi, ShardResult& out) {
    try {
        std::ofstream spill(out.spill, std::ios::binary | std::ios::trunc);
        if (!spill) {
            throw config_error("cannot create shard spill file " + out.spill.string());
        }
        Tallier tallier(config.tallies);
        TernaryNumber number = from_exponent(lo);
        for (std::uint64_t n = lo; n <= hi; ++n) {
            const PerExponentRecord record = tallier.tally(n, number);
            out.state.update(record);
            const SeriesRecord s = SeriesRecord::from(record);
            spill.write(reinterpret_cast<const char*>(&s), sizeof s);
            number.double_in_place();
        }
        spill.flush();
        if (!spill) {
            throw config_error("failed writing shard spill file " + out.spill.string());
        }
    } catch (...) {
        out.error = std::current_exception();
    }
}

inline void replay_spill(const fs::path& path, SeriesSink& sink) {
    std::ifstream in(path, std::ios::binary);
    SeriesRecord s;
    while (in.read(reinterpret_cast<char*>(&s), sizeof s)) {
        sink.consume(s);
    }
}

} // namespace detail

// Final tables: blocks_k<k> and leading_H<h>.
inline void write_final_tables(const SweepConfig& config, const AggregateState& state) {
    const std::string n_text = std::to_string(state.n_hi());
    for (const BlockTally& tally : state.block_tallies()) {
        std::ofstream os(table_path(config, "blocks_k" + std::to_string(tally.k())), std::ios::trunc);
        TableWriter table(os, config.format,
                          {"N", "k", "block", "count", "frequency_pct", "deviation", "sigma_exact", "anchor"});
        const std::string sigma =
            tally.blocks_total() ? format_sci(sigma_aggregate(tally.k(), tally.blocks_total())) : "nan";
        for (std::size_t code = 0; code < tally.counts().size(); ++code) {
            const std::uint64_t count = tally.count_code(code);
            std::string pct = "nan";
            std::string dev = "nan";
            if (tally.blocks_total() != 0) {
                const Ratio f = make_ratio(count, tally.blocks_total());
                pct = format_percent(f);
                dev = format_ratio(minus_inverse_power_of_three(f, tally.k()), detail::kDeviationPlaces);
            }
            // Blocks are parsed from the most significant digit; the anchor column records that.
            table.row({num(n_text), num(tally.k()), txt(tally.block_string(code)), num(count), num(pct), num(dev),
                       num(sigma), txt("msb")});
        }
    }
    for (std::size_t i = 0; i < state.config().leading_h.size(); ++i) {
        const std::uint32_t h = state.config().leading_h[i];
        const auto limits = limit_average_counts(h);
        std::ofstream os(table_path(config, "leading_H" + std::to_string(h)), std::ios::trunc);
        TableWriter table(os, config.format, {"N", "H", "d", "total", "average", "limit", "difference"});
        for (std::uint32_t d = 0; d < 3; ++d) {
            const Ratio avg = leading_avg_count(state, d, h);
            const HighPrecision avg_hp = HighPrecision(avg.num) / avg.den;
            table.row({num(n_text), num(h), num(d), num(state.leading_tallies()[i].counts[d]),
                       num(format_ratio(avg, 9)), num(format_fixed(limits[d], 9)),
                       num(format_fixed(avg_hp - limits[d], 9))});
        }
    }
}

struct SweepResult {
    AggregateState state;
    bool completed = false;
};

namespace detail {

inline SweepResult run_from(const SweepConfig& config, AggregateState state, bool fresh, std::uint64_t per_n_bytes,
                            std::uint64_t digits_bytes, std::ostream& log) {
    using clock = std::chrono::steady_clock;
    const auto started = clock::now();
    SeriesSink sink(config, state, fresh, per_n_bytes, digits_bytes);
    const bool checkpointing = !config.checkpoint_file.empty();
    const std::uint64_t segment = config.checkpoint_every ? config.checkpoint_every : config.max_n;

    auto checkpoint = [&](std::uint64_t n_completed) -> bool {
        if (!checkpointing) {
            return false;
        }
        const auto [per_n, digits] = sink.flush();
        write_checkpoint(config.checkpoint_file, {config, n_completed, per_n, digits, state});
        log << "checkpoint n=" << n_completed << " -> " << config.checkpoint_file.string() << '\n';
        return config.halt_after != 0 && n_completed >= config.halt_after && n_completed < config.max_n;
    };
    auto due = [&](std::uint64_t n) { return n == config.max_n || (config.checkpoint_every && n % segment == 0); };

    std::uint64_t pos = state.empty() ? 1 : state.n_hi() + 1;
    log << "sweep n=" << pos << ".." << config.max_n << " shards=" << config.shards << '\n';

    if (config.shards == 1) {
        Tallier tallier(config.tallies);
        TernaryNumber number = pos <= config.max_n ? from_exponent(pos) : TernaryNumber{};
        for (std::uint64_t n = pos; n <= config.max_n; ++n) {
            const PerExponentRecord record = tallier.tally(n, number);
            state.update(record);
            sink.consume(SeriesRecord::from(record));
            number.double_in_place();
            if (due(n) && checkpoint(n)) {
                return {state, false};
            }
        }
    } else {
        while (pos <= config.max_n) {
            const std::uint64_t seg_hi = std::min(config.max_n, ((pos - 1) / segment + 1) * segment);
            const std::uint64_t span = seg_hi - pos + 1;
            const std::uint64_t parts = std::min<std::uint64_t>(config.shards, span);
            std::vector<ShardResult> results(parts);
            std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
            std::uint64_t lo = pos;
            for (std::uint64_t i = 0; i < parts; ++i) {
                const std::uint64_t len = span / parts + (i < span % parts ? 1 : 0);
                ranges.emplace_back(lo, lo + len - 1);
                lo += len;
                results[i].state = AggregateState(config.tallies);
                results[i].spill = config.out_dir / (".per_n.shard" + std::to_string(i) + ".tmp");
            }
            {
                std::vector<std::jthread> workers;
                for (std::uint64_t i = 0; i < parts; ++i) {
                    workers.emplace_back([&, i] { run_shard(config, ranges[i].first, ranges[i].second, results[i]); });
                }
            }
            for (auto& r : results) {
                if (r.error) {
                    std::rethrow_exception(r.error);
                }
            }
            for (auto& r : results) {
                state = merge(state, r.state);
                replay_spill(r.spill, sink);
                fs::remove(r.spill);
            }
            pos = seg_hi + 1;
            if (due(seg_hi) && checkpoint(seg_hi)) {
                return {state, false};
            }
        }
    }

    sink.flush();
    write_final_tables(config, state);
    const double seconds = std::chrono::duration<double>(clock::now() - started).count();
    log << "sweep done N=" << state.n_hi() << " digits=" << state.total_digits() << " elapsed=" << seconds << "s\n";
    log << "note: blocks are parsed from the most significant digit; a short remainder at the low end is dropped\n";
    return {state, true};
}

} // namespace detail

inline SweepResult sweep(const SweepConfig& config, std::ostream& log) {
    config.validate();
    fs::create_directories(config.out_dir);
    return detail::run_from(config, AggregateState(config.tallies), true, 0, 0, log);
}

// Continues from a checkpoint. If `expected` is given its hash must match
// the stored configuration.
inline SweepResult resume(const fs::path& checkpoint_path, const std::optional<SweepConfig>& expected,
                          std::ostream& log, std::uint64_t halt_after = 0) {
    Checkpoint cp = read_checkpoint(checkpoint_path);
    if (expected && config_hash(*expected) != config_hash(cp.config)) {
        throw config_error("resume: configuration does not match checkpoint (" + canonical_config(*expected) +
                           " vs " + canonical_config(cp.config) + ")");
    }
    cp.config.checkpoint_file = checkpoint_path;
    cp.config.halt_after = halt_after;
    if (expected) {
        cp.config.shards = expected->shards;
    }
    cp.config.validate();
    for (const char* stem : {"per_n", "digits"}) {
        if (!fs::exists(table_path(cp.config, stem))) {
            throw config_error("resume: missing report file " + table_path(cp.config, stem).string());
        }
    }
    log << "resume from n_completed=" << cp.n_completed << '\n';
    return detail::run_from(cp.config, std::move(cp.state), false, cp.per_n_bytes, cp.digits_bytes, log);
}

} // namespace ternary
