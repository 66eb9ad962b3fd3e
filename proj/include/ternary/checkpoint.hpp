#pragma once
// checkpoint.hpp - sweep configuration and the JSON checkpoint file.

#include <ternary/aggregate.hpp>
#include <ternary/error.hpp>
#include <ternary/table.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace ternary {

inline constexpr int kCheckpointFormatVersion = 1;

struct SweepConfig {
    std::uint64_t max_n = 0;
    TallyConfig tallies;
    std::uint32_t shards = 1;
    std::uint64_t checkpoint_every = 0; // 0: only at the end (if a file is set)
    std::filesystem::path checkpoint_file;
    std::filesystem::path out_dir = ".";
    OutputFormat format = OutputFormat::csv;
    std::uint64_t digits_every = 1; // rows of the running digits table
    std::uint64_t halt_after = 0;   // stop after the first checkpoint at or past this n

    void validate() const {
        if (max_n < 1) {
            throw config_error("--max-n must be at least 1");
        }
        if (shards < 1) {
            throw config_error("--shards must be at least 1");
        }
        if (digits_every < 1) {
            throw config_error("--digits-every must be at least 1");
        }
        if (checkpoint_every > 0 && checkpoint_file.empty()) {
            throw config_error("--checkpoint-every needs --checkpoint-file");
        }
        if (tallies.block_lengths.empty()) {
            throw config_error("--blocks must name at least one block length");
        }
        for (std::uint32_t k : tallies.block_lengths) {
            if (k < 1 || k > 6) {
                throw config_error("block lengths must be in [1, 6]");
            }
        }
        for (std::uint32_t h : tallies.leading_h) {
            if (h > kLimitBudget) {
                throw config_error("leading H values must be at most " + std::to_string(kLimitBudget));
            }
        }
        auto has_duplicates = [](std::vector<std::uint32_t> v) {
            std::sort(v.begin(), v.end());
            return std::adjacent_find(v.begin(), v.end()) != v.end();
        };
        if (has_duplicates(tallies.block_lengths) || has_duplicates(tallies.leading_h)) {
            throw config_error("--blocks and --leading-h must not repeat values");
        }
    }
};

namespace detail {
inline std::string join(const std::vector<std::uint32_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + std::to_string(v[i]);
    }
    return s;
}
} // namespace detail

// Fields that determine report contents. Shard count, checkpoint cadence
// and output location do not change results and are left out.
inline std::string canonical_config(const SweepConfig& c) {
    return "max_n=" + std::to_string(c.max_n) + ";blocks=" + detail::join(c.tallies.block_lengths) +
           ";leading_h=" + detail::join(c.tallies.leading_h) + ";format=" + format_name(c.format) +
           ";digits_every=" + std::to_string(c.digits_every);
}

// FNV-1a 64, hex.
inline std::string config_hash(const SweepConfig& c) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : canonical_config(c)) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

struct Checkpoint {
    SweepConfig config;
    std::uint64_t n_completed = 0;
    std::uint64_t per_n_bytes = 0;
    std::uint64_t digits_bytes = 0;
    AggregateState state;
};

namespace detail {

inline nlohmann::json counts_json(std::span<const std::uint64_t> counts) {
    nlohmann::json a = nlohmann::json::array();
    for (std::uint64_t c : counts) {
        a.push_back(std::to_string(c));
    }
    return a;
}

inline std::uint64_t u64(const nlohmann::json& j) {
    const std::string s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        throw config_error("checkpoint: '" + s + "' is not a decimal integer");
    }
    return std::stoull(s);
}

inline std::vector<std::uint64_t> u64_array(const nlohmann::json& j) {
    std::vector<std::uint64_t> v;
    for (const auto& e : j) {
        v.push_back(u64(e));
    }
    return v;
}

} // namespace detail

inline nlohmann::json state_to_json(const AggregateState& s) {
    nlohmann::json j;
    j["n_lo"] = std::to_string(s.n_lo());
    j["n_hi"] = std::to_string(s.n_hi());
    j["exponent_count"] = std::to_string(s.exponent_count());
    j["total_digits"] = std::to_string(s.total_digits());
    j["digits"] = detail::counts_json(s.digits().counts);
    j["blocks"] = nlohmann::json::array();
    for (const BlockTally& b : s.block_tallies()) {
        j["blocks"].push_back({{"k", b.k()}, {"blocks_total", std::to_string(b.blocks_total())},
                               {"counts", detail::counts_json(b.counts())}});
    }
    j["leading"] = nlohmann::json::array();
    for (std::size_t i = 0; i < s.leading_tallies().size(); ++i) {
        j["leading"].push_back({{"h", s.config().leading_h[i]},
                                {"counts", detail::counts_json(s.leading_tallies()[i].counts)}});
    }
    return j;
}

inline AggregateState state_from_json(const nlohmann::json& j, const TallyConfig& config) {
    auto digit_tally = [](const nlohmann::json& a) {
        const auto v = detail::u64_array(a);
        if (v.size() != 3) {
            throw config_error("checkpoint: digit tally must have three counts");
        }
        return DigitTally{{v[0], v[1], v[2]}};
    };
    std::vector<BlockTally> blocks;
    for (const auto& b : j.at("blocks")) {
        const auto counts = detail::u64_array(b.at("counts"));
        BlockTally t = BlockTally::from_counts(b.at("k").get<std::uint32_t>(), counts);
        if (t.blocks_total() != detail::u64(b.at("blocks_total"))) {
            throw config_error("checkpoint: block total does not match its counts");
        }
        blocks.push_back(std::move(t));
    }
    std::vector<DigitTally> leading;
    for (const auto& l : j.at("leading")) {
        leading.push_back(digit_tally(l.at("counts")));
    }
    AggregateState s = AggregateState::restore(config, detail::u64(j.at("n_lo")), detail::u64(j.at("n_hi")),
                                               detail::u64(j.at("total_digits")), digit_tally(j.at("digits")),
                                               std::move(blocks), std::move(leading));
    if (s.exponent_count() != detail::u64(j.at("exponent_count"))) {
        throw config_error("checkpoint: exponent_count does not match the range");
    }
    return s;
}

inline nlohmann::json config_to_json(const SweepConfig& c) {
    return {{"max_n", std::to_string(c.max_n)},
            {"blocks", c.tallies.block_lengths},
            {"leading_h", c.tallies.leading_h},
            {"shards", c.shards},
            {"checkpoint_every", std::to_string(c.checkpoint_every)},
            {"checkpoint_file", c.checkpoint_file.string()},
            {"out", c.out_dir.string()},
            {"format", format_name(c.format)},
            {"digits_every", std::to_string(c.digits_every)}};
}

inline SweepConfig config_from_json(const nlohmann::json& j) {
    SweepConfig c;
    c.max_n = detail::u64(j.at("max_n"));
    c.tallies.block_lengths = j.at("blocks").get<std::vector<std::uint32_t>>();
    c.tallies.leading_h = j.at("leading_h").get<std::vector<std::uint32_t>>();
    c.shards = j.at("shards").get<std::uint32_t>();
    c.checkpoint_every = detail::u64(j.at("checkpoint_every"));
    c.checkpoint_file = j.at("checkpoint_file").get<std::string>();
    c.out_dir = j.at("out").get<std::string>();
    c.format = parse_format(j.at("format").get<std::string>());
    c.digits_every = detail::u64(j.at("digits_every"));
    return c;
}

inline nlohmann::json checkpoint_to_json(const Checkpoint& cp) {
    return {{"format_version", kCheckpointFormatVersion},
            {"n_completed", std::to_string(cp.n_completed)},
            {"config_hash", config_hash(cp.config)},
            {"config", config_to_json(cp.config)},
            {"outputs", {{"per_n_bytes", std::to_string(cp.per_n_bytes)},
                         {"digits_bytes", std::to_string(cp.digits_bytes)}}},
            {"state", state_to_json(cp.state)}};
}

inline Checkpoint checkpoint_from_json(const nlohmann::json& j) {
    try {
        if (j.at("format_version").get<int>() != kCheckpointFormatVersion) {
            throw config_error("checkpoint: unsupported format_version");
        }
        Checkpoint cp;
        cp.config = config_from_json(j.at("config"));
        if (config_hash(cp.config) != j.at("config_hash").get<std::string>()) {
            throw config_error("checkpoint: config_hash does not match the stored configuration");
        }
        cp.n_completed = detail::u64(j.at("n_completed"));
        cp.per_n_bytes = detail::u64(j.at("outputs").at("per_n_bytes"));
        cp.digits_bytes = detail::u64(j.at("outputs").at("digits_bytes"));
        cp.state = state_from_json(j.at("state"), cp.config.tallies);
        if (cp.state.n_hi() != cp.n_completed || (!cp.state.empty() && cp.state.n_lo() != 1)) {
            throw config_error("checkpoint: state range does not match n_completed");
        }
        return cp;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("checkpoint: malformed file: ") + e.what());
    } catch (const domain_error& e) {
        throw config_error(std::string("checkpoint: inconsistent state: ") + e.what());
    }
}

// Write-temp-then-rename.
inline void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::trunc);
        if (!os) {
            throw config_error("cannot write checkpoint " + tmp.string());
        }
        os << checkpoint_to_json(cp).dump(1) << '\n';
        os.flush();
        if (!os) {
            throw config_error("failed writing checkpoint " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

inline Checkpoint read_checkpoint(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) {
        throw config_error("cannot open checkpoint " + path.string());
    }
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("checkpoint: not valid JSON: ") + e.what());
    }
    return checkpoint_from_json(j);
}

} // namespace ternary
