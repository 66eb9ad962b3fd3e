// ternpow - ternary digits of powers of two and of log_3(2).
//
// Exit codes: 0 success, 1 domain error, 2 configuration error.

#include <ternary/ternary.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitConfig = 2;

std::unique_ptr<std::ofstream> open_file(const std::filesystem::path& path) {
    auto os = std::make_unique<std::ofstream>(path, std::ios::trunc);
    if (!*os) {
        throw ternary::config_error("cannot write " + path.string());
    }
    return os;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact ternary digit statistics of powers of two and of log_3(2)"};
    app.require_subcommand(1);

    std::string format_text = "csv";
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format_text, "Output format")->check(CLI::IsMember({"csv", "json"}));
    };

    // sweep
    ternary::SweepConfig sweep_cfg;
    std::string out_dir = "sweep_out";
    std::string checkpoint_file;
    auto* sweep = app.add_subcommand("sweep", "Tally 2^n for n = 1..N into aggregate reports");
    sweep->add_option("--max-n", sweep_cfg.max_n, "Largest exponent N")->required();
    sweep->add_option("--blocks", sweep_cfg.tallies.block_lengths, "Block lengths k")->delimiter(',');
    sweep->add_option("--leading-h", sweep_cfg.tallies.leading_h, "Leading-digit window sizes H")->delimiter(',');
    sweep->add_option("--shards", sweep_cfg.shards, "Independent contiguous shards");
    sweep->add_option("--checkpoint-every", sweep_cfg.checkpoint_every, "Checkpoint interval in exponents");
    sweep->add_option("--checkpoint-file", checkpoint_file, "Checkpoint path");
    sweep->add_option("--out", out_dir, "Output directory");
    sweep->add_option("--digits-every", sweep_cfg.digits_every, "Emit running digit rows every E exponents");
    sweep->add_option("--halt-after", sweep_cfg.halt_after, "Stop after the first checkpoint at or past n");
    add_format(sweep);

    // single
    std::uint64_t single_n = 0;
    std::string single_out;
    auto* single = app.add_subcommand("single", "Digit counts of one power 2^n");
    single->add_option("--n", single_n, "Exponent")->required();
    single->add_option("--out", single_out, "Output file (default stdout)");
    add_format(single);

    // theory
    ternary::TheoryOptions theory_opt;
    std::string theory_out;
    auto* theory = app.add_subcommand("theory", "Benford, leading-digit limits and noise benchmarks");
    theory->add_option("--max-h", theory_opt.h_max, "Largest H for the limit table");
    theory->add_option("--max-m", theory_opt.m_max, "Largest m for the Benford table");
    theory->add_option("--sigma-n", theory_opt.sigma_n, "N values for aggregate benchmarks")->delimiter(',');
    theory->add_option("--single-n", theory_opt.single_n, "n values for single-power benchmarks")->delimiter(',');
    theory->add_option("--out", theory_out, "Output directory (default stdout)");
    add_format(theory);

    // alpha
    ternary::AlphaOptions alpha_opt;
    std::string alpha_out;
    auto* alpha = app.add_subcommand("alpha", "Certified ternary digits of log_3(2) and their statistics");
    alpha->add_option("--digits", alpha_opt.digits, "Number of digits D")->required();
    alpha->add_option("--guard", alpha_opt.guard, "Guard digits");
    alpha->add_option("--blocks", alpha_opt.block_lengths, "Block lengths k")->delimiter(',');
    alpha->add_option("--verify-max", alpha_opt.verify_max, "Check prefixes 1..V with the exact oracle");
    alpha->add_option("--out", alpha_out, "Write the digits to this file");
    add_format(alpha);

    // audit
    std::uint64_t audit_n = 0;
    std::string audit_out;
    auto* audit = app.add_subcommand("audit", "Digit-2 exceptions, zero runs and leading-digit checks");
    audit->add_option("--max-n", audit_n, "Largest exponent")->required();
    audit->add_option("--out", audit_out, "Directory for the zero-run series");
    add_format(audit);

    // resume
    std::string resume_path;
    std::optional<std::uint64_t> resume_max_n;
    std::vector<std::uint32_t> resume_blocks;
    std::vector<std::uint32_t> resume_h;
    std::optional<std::uint32_t> resume_shards;
    std::uint64_t resume_halt = 0;
    auto* resume = app.add_subcommand("resume", "Continue a sweep from its checkpoint");
    resume->add_option("--checkpoint", resume_path, "Checkpoint path")->required();
    resume->add_option("--max-n", resume_max_n, "Must match the checkpointed run");
    resume->add_option("--blocks", resume_blocks, "Must match the checkpointed run")->delimiter(',');
    resume->add_option("--leading-h", resume_h, "Must match the checkpointed run")->delimiter(',');
    resume->add_option("--shards", resume_shards, "Shard count for the remainder");
    resume->add_option("--halt-after", resume_halt, "Stop after the first checkpoint at or past n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        const ternary::OutputFormat format = ternary::parse_format(format_text);
        if (*sweep) {
            sweep_cfg.out_dir = out_dir;
            sweep_cfg.checkpoint_file = checkpoint_file;
            sweep_cfg.format = format;
            const auto result = ternary::sweep(sweep_cfg, std::cerr);
            return result.completed || sweep_cfg.halt_after ? 0 : kExitDomain;
        }
        if (*single) {
            std::unique_ptr<std::ofstream> file;
            if (!single_out.empty()) {
                file = open_file(single_out);
            }
            ternary::single(single_n, format, file ? *file : std::cout);
            return 0;
        }
        if (*theory) {
            std::map<std::string, std::unique_ptr<std::ofstream>> files;
            if (!theory_out.empty()) {
                std::filesystem::create_directories(theory_out);
            }
            auto open = [&](const std::string& name) -> std::ostream& {
                if (theory_out.empty()) {
                    std::cout << "# " << name << '\n';
                    return std::cout;
                }
                auto& slot = files[name];
                slot = open_file(std::filesystem::path(theory_out) / (name + ternary::table_extension(format)));
                return *slot;
            };
            ternary::theory_report(theory_opt, format, open);
            return 0;
        }
        if (*alpha) {
            alpha_opt.out_file = alpha_out;
            ternary::alpha_report(alpha_opt, format, std::cout, std::cerr);
            return 0;
        }
        if (*audit) {
            std::unique_ptr<std::ofstream> file;
            if (!audit_out.empty()) {
                std::filesystem::create_directories(audit_out);
                file = open_file(std::filesystem::path(audit_out) / ("zero_runs" + ternary::table_extension(format)));
            }
            const auto report = ternary::audit(audit_n, format, file.get());
            ternary::print_audit_summary(report, std::cout);
            const bool ok = report.relation_violations.empty() && report.prediction_mismatches.empty();
            return ok ? 0 : kExitDomain;
        }
        if (*resume) {
            std::optional<ternary::SweepConfig> expected;
            if (resume_max_n || !resume_blocks.empty() || !resume_h.empty() || resume_shards) {
                expected = ternary::read_checkpoint(resume_path).config;
                if (resume_max_n) {
                    expected->max_n = *resume_max_n;
                }
                if (!resume_blocks.empty()) {
                    expected->tallies.block_lengths = resume_blocks;
                }
                if (!resume_h.empty()) {
                    expected->tallies.leading_h = resume_h;
                }
                if (resume_shards) {
                    expected->shards = *resume_shards;
                }
            }
            const auto result = ternary::resume(resume_path, expected, std::cerr, resume_halt);
            return result.completed || resume_halt ? 0 : kExitDomain;
        }
    } catch (const ternary::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ternary::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return 0;
}
