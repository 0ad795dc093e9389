// progcode: batch runner for the progressive-expansion analog codec.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "progcode/bounds.hpp"
#include "progcode/channel_sim.hpp"
#include "progcode/codec.hpp"
#include "progcode/report.hpp"
#include "progcode/verification.hpp"

namespace fs = std::filesystem;
using namespace progcode;

namespace {

constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

unsigned workers_from_env(unsigned fallback) {
    const char* env = std::getenv("PROGCODE_WORKERS");
    if (env == nullptr || *env == '\0') {
        return fallback;
    }
    try {
        const long v = std::stol(env);
        if (v < 1) throw std::invalid_argument("non-positive");
        return static_cast<unsigned>(v);
    } catch (const std::exception&) {
        throw UsageError(std::string("PROGCODE_WORKERS must be a positive integer, got '") + env + "'");
    }
}

std::string show(const ExactReal& v, int digits = 12) {
    std::ostringstream os;
    os << std::setprecision(digits) << v.to_double();
    return os.str();
}

struct SweepArgs {
    unsigned n = 0;
    unsigned k = kDefaultDepth;
    std::string snr;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string out = ".";
    std::string manifest;
};

int run_sweep_command(const SweepArgs& a, CLI::App& cmd) {
    SimConfig config;
    if (!a.manifest.empty()) {
        config = load_manifest_config(a.manifest);
    } else {
        for (const char* required : {"--n", "--snr-db", "--trials", "--seed"}) {
            if (cmd.count(required) == 0) {
                throw UsageError(std::string("sweep: ") + required + " is required unless --manifest is given");
            }
        }
        config.channel_uses = a.n;
        config.depth = a.k;
        try {
            config.snr_grid_db = parse_snr_grid(a.snr);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        config.trials_per_point = a.trials;
        config.master_seed = a.seed;
    }
    if (cmd.count("--workers") > 0) {
        config.workers = a.workers;
    }
    config.workers = workers_from_env(config.workers);
    try {
        validate(config);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    fs::create_directories(a.out);
    RunManifest manifest;
    manifest.config = config;
    manifest.code_version = std::string(code_version());
    manifest.started = utc_now();
    manifest.csv_path = fs::path(a.out) / "sweep.csv";
    manifest.summary_path = fs::path(a.out) / "summary.json";

    const auto points = run_sweep(config);
    manifest.finished = utc_now();

    emit_csv(points, manifest.csv_path);
    nlohmann::json summary;
    summary["config"] = to_json(config);
    summary["points"] = nlohmann::json::array();
    std::uint64_t violations = 0;
    for (const auto& p : points) {
        summary["points"].push_back(to_json(p));
        violations += p.prop3_violations + p.prop2_violations;
    }
    write_json(summary, manifest.summary_path);
    write_json(to_json(manifest), fs::path(a.out) / "manifest.json");

    std::cout << "wrote " << manifest.csv_path.string() << ", " << manifest.summary_path.string() << ", "
              << (fs::path(a.out) / "manifest.json").string() << '\n';
    if (violations > 0) {
        std::cerr << "error: " << violations << " shielding-guarantee violations\n";
        return kExitInvariant;
    }
    return 0;
}

int run_verify_command(const LemmaSuiteOptions& options) {
    bool ok = true;
    for (const auto& r : verify_lemmas(options)) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "  (" << r.detail << ")\n";
        ok = ok && r.passed;
    }
    return ok ? 0 : kExitInvariant;
}

int run_constants_command(unsigned k, bool as_json) {
    const CodebookConstants c = codebook_constants(k);
    if (as_json) {
        nlohmann::json j = {{"k", k},
                            {"second_moment", c.second_moment.to_double()},
                            {"alpha", c.alpha.to_double()},
                            {"gamma", c.gamma.to_double()},
                            {"gamma_exact", c.gamma.to_string()},
                            {"range_bound", c.range_bound_lo.to_double()},
                            {"symbol_min", c.symbol_min.to_double()},
                            {"symbol_max", c.symbol_max.to_double()},
                            {"gap_left", c.gap.left.to_double()},
                            {"gap_right", c.gap.right.to_double()}};
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    std::cout << "K               = " << k << '\n'
              << "E[X~^2]         = " << show(c.second_moment) << "   (36 alpha + mean^2, exact series to K)\n"
              << "alpha           = " << show(c.alpha) << "   (sum k(k+2)/(12 ((k+3)!)^2), k <= K)\n"
              << "gamma           = " << show(c.gamma) << "   (1/sqrt(E[X~^2]), rounded down at 2^-96)\n"
              << "range bound     = " << show(c.range_bound_lo) << "   (16.5 - 6e)\n"
              << "symbol range    = [" << show(c.symbol_min) << ", " << show(c.symbol_max)
              << "]   (codebook extremes at depth K)\n"
              << "central gap     = (" << show(c.gap.left) << ", " << show(c.gap.right)
              << ")   (largest symbol with U_1 = 0, smallest with U_1 = 1)\n";
    return 0;
}

int run_trial_command(unsigned n, unsigned k, double snr_db, std::uint64_t seed, std::uint64_t index, bool dump) {
    const EncoderParams params = EncoderParams::make(n, k);
    RngStream stream = trial_stream(seed, 0, index);
    const TrialRecord rec = run_trial(sigma_from_snr_db(snr_db), params, stream);
    if (dump) {
        std::cout << to_json(rec).dump(2) << '\n';
    } else {
        std::cout << "sq_err = " << rec.sq_err.to_double() << ", event_a = " << rec.event_a << '\n';
    }
    if (rec.prop3_bound_ok == false || rec.prop2_digits_ok == false) {
        std::cerr << "error: shielding guarantee violated\n";
        return kExitInvariant;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Progressive-expansion analog joint source-channel codec: sweeps, checks and constants"};
    app.require_subcommand(1);

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over an SNR grid; writes CSV, summary and manifest");
    sweep->add_option("--n", sweep_args.n, "channel uses N")->check(CLI::PositiveNumber);
    sweep->add_option("--k", sweep_args.k, "truncation depth K")->check(CLI::Range(8U, 64U));
    sweep->add_option("--snr-db", sweep_args.snr, "SNR grid in dB: start:stop:step, list, or value");
    sweep->add_option("--trials", sweep_args.trials, "trials per grid point")->check(CLI::PositiveNumber);
    sweep->add_option("--seed", sweep_args.seed, "master seed");
    sweep->add_option("--workers", sweep_args.workers, "worker threads")->check(CLI::PositiveNumber);
    sweep->add_option("--out", sweep_args.out, "output directory");
    sweep->add_option("--manifest", sweep_args.manifest, "re-run the config recorded in a manifest")
        ->check(CLI::ExistingFile);

    LemmaSuiteOptions lemma_opts;
    auto* verify = app.add_subcommand("verify-lemmas", "exact property checks of the expansion and codebook");
    verify->add_option("--depth", lemma_opts.depth, "largest ell for the telescoping check")
        ->check(CLI::Range(1U, 500U));
    verify->add_option("--fuzz", lemma_opts.fuzz_cases, "fuzzed cases per property");
    verify->add_option("--samples", lemma_opts.digit_samples, "samples for the digit-law check")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", lemma_opts.seed, "seed");

    unsigned const_k = kDefaultDepth;
    bool const_json = false;
    auto* constants = app.add_subcommand("constants", "print codebook constants");
    constants->add_option("--k", const_k, "truncation depth K")->check(CLI::Range(8U, 64U));
    constants->add_flag("--json", const_json, "emit JSON");

    unsigned trial_n = 1;
    unsigned trial_k = kDefaultDepth;
    double trial_snr = 30;
    std::uint64_t trial_seed = 0;
    std::uint64_t trial_index = 0;
    bool trial_dump = false;
    auto* trial = app.add_subcommand("trial", "run one trial (grid index 0)");
    trial->add_option("--n", trial_n, "channel uses N")->check(CLI::PositiveNumber);
    trial->add_option("--k", trial_k, "truncation depth K")->check(CLI::Range(8U, 64U));
    trial->add_option("--snr-db", trial_snr, "SNR in dB");
    trial->add_option("--seed", trial_seed, "master seed");
    trial->add_option("--index", trial_index, "trial index");
    trial->add_flag("--dump", trial_dump, "print the full trial record as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*sweep) return run_sweep_command(sweep_args, *sweep);
        if (*verify) return run_verify_command(lemma_opts);
        if (*constants) return run_constants_command(const_k, const_json);
        if (*trial) return run_trial_command(trial_n, trial_k, trial_snr, trial_seed, trial_index, trial_dump);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvariant;
    }
    return kExitUsage;
}
