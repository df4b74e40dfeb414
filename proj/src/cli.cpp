#include "advmean/cli.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "advmean/adversary.hpp"
#include "advmean/corpus.hpp"
#include "advmean/errors.hpp"
#include "advmean/harness.hpp"
#include "advmean/io.hpp"

namespace advmean::cli {
namespace {

enum class Format { Json, Csv };

struct CommandConfig {
    std::string input;
    std::string pair;
    std::string output;
    std::string name;
    std::uint64_t n = 0;
    std::vector<std::uint64_t> n_list;
    double delta = 0.05;
    std::size_t trials = 20000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    Format format = Format::Json;
    Format scan_format = Format::Csv;
    bool override_regime = false;
};

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw ParseError("cannot write " + path);
        }
    }

    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

private:
    std::ofstream file_;
    std::ostream& fallback_;
};

std::string stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

void require_regime(const CommandConfig& cfg) {
    if (!regime(static_cast<double>(cfg.n), cfg.delta).ok() && !cfg.override_regime) {
        throw RegimeError("outside delta <= 0.1, ln(1/delta)/n <= 0.01; pass --override-regime");
    }
}

int report_exit(const VerificationReport& r) {
    if (r.degenerate) return kRefused;
    return r.pass ? kPass : kFailed;
}

int do_construct(const CommandConfig& cfg, std::ostream& out) {
    require_regime(cfg);
    const AtomicDistribution p = load_distribution(cfg.input);
    const AdversaryResult res = construct_q(p, static_cast<double>(cfg.n), cfg.delta);
    Json j = to_json(res.q);
    j["adversary"] = to_json(res);
    Output o(cfg.output, out);
    o.stream() << dump(j);
    return kPass;
}

int do_verify(const CommandConfig& cfg, std::ostream& out) {
    const AtomicDistribution p = load_distribution(cfg.input);
    const VerifyOptions opts{cfg.override_regime};
    const double n = static_cast<double>(cfg.n);
    const VerificationReport r = cfg.pair.empty()
                                     ? verify_theorem(p, n, cfg.delta, opts)
                                     : verify_theorem_pair(p, load_distribution(cfg.pair), n, cfg.delta, opts);
    Output o(cfg.output, out);
    o.stream() << dump(to_json(r));
    return report_exit(r);
}

int do_neighborhood(const CommandConfig& cfg, std::ostream& out) {
    const AtomicDistribution p = load_distribution(cfg.input);
    const VerificationReport r = verify_neighborhood(p, static_cast<double>(cfg.n), cfg.delta,
                                                     VerifyOptions{cfg.override_regime});
    Output o(cfg.output, out);
    o.stream() << dump(to_json(r));
    return report_exit(r);
}

TrialConfig trial_config(const CommandConfig& cfg) {
    return TrialConfig{cfg.n, cfg.delta, cfg.trials, cfg.seed, cfg.threads};
}

int do_bench(const CommandConfig& cfg, std::ostream& out) {
    const AtomicDistribution p = load_distribution(cfg.input);
    const MomBenchReport r = bench_mom(p, trial_config(cfg));
    Output o(cfg.output, out);
    if (cfg.format == Format::Csv) {
        write_bench_csv(o.stream(), stem(cfg.input), r, true);
    } else {
        o.stream() << dump(to_json(r));
    }
    return r.pass ? kPass : kFailed;
}

int do_distinguish(const CommandConfig& cfg, std::ostream& out) {
    const AtomicDistribution p = load_distribution(cfg.input);
    std::optional<AtomicDistribution> q;
    if (cfg.pair.empty()) {
        require_regime(cfg);
        q = construct_q(p, static_cast<double>(cfg.n), cfg.delta).q;
    } else {
        q = load_distribution(cfg.pair);
    }
    const LrTestReport r = lr_test_error(p, *q, trial_config(cfg));
    Output o(cfg.output, out);
    o.stream() << dump(to_json(r));
    return r.pass ? kPass : kFailed;
}

int do_scan(const CommandConfig& cfg, std::ostream& out) {
    const AtomicDistribution p = load_distribution(cfg.input);
    std::vector<double> ns(cfg.n_list.begin(), cfg.n_list.end());
    const std::vector<ScanRow> rows = asymptotic_scan(p, cfg.delta, ns);
    Output o(cfg.output, out);
    if (cfg.scan_format == Format::Csv) {
        write_scan_csv(o.stream(), stem(cfg.input), cfg.delta, rows);
    } else {
        Json arr = Json::array();
        for (const ScanRow& r : rows) {
            arr.push_back(Json{{"n", r.n},
                               {"epsilon", r.epsilon},
                               {"normalized", r.normalized},
                               {"in_regime", r.in_regime}});
        }
        o.stream() << dump(Json{{"delta", cfg.delta}, {"rows", std::move(arr)}});
    }
    return kPass;
}

int do_gen(const CommandConfig& cfg, std::ostream& out) {
    const AtomicDistribution d = corpus_distribution(cfg.name);
    Output o(cfg.output, out);
    o.stream() << dump(to_json(d));
    return kPass;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Indistinguishable-partner constructions and mean-estimation checks"};
    app.require_subcommand(1);
    CommandConfig cfg;

    const std::map<std::string, Format> formats{{"json", Format::Json}, {"csv", Format::Csv}};
    const auto add_common = [&](CLI::App* sub, bool needs_n) {
        sub->add_option("--in", cfg.input, "Distribution JSON")->required()->check(CLI::ExistingFile);
        auto* n_opt = sub->add_option("--n", cfg.n, "Sample count")->check(CLI::PositiveNumber);
        if (needs_n) n_opt->required();
        sub->add_option("--delta", cfg.delta, "Failure probability")
            ->check(CLI::Range(0.0, 1.0))
            ->capture_default_str();
        sub->add_option("--out", cfg.output, "Output file (default stdout)");
    };
    const auto add_trials = [&](CLI::App* sub) {
        sub->add_option("--trials", cfg.trials, "Monte-Carlo trials")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "Base seed")->envname("ADVMEAN_SEED")->capture_default_str();
        sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
    };

    auto* construct = app.add_subcommand("construct", "Build the partner q and write it as JSON");
    add_common(construct, true);
    construct->add_flag("--override-regime", cfg.override_regime);

    auto* verify = app.add_subcommand("verify", "Check separation, Hellinger, ratio and variance claims");
    add_common(verify, true);
    verify->add_option("--pair", cfg.pair, "Use this q instead of constructing one")
        ->check(CLI::ExistingFile);
    verify->add_flag("--override-regime", cfg.override_regime);

    auto* neighborhood = app.add_subcommand("neighborhood", "Check neighborhood membership of q");
    add_common(neighborhood, true);
    neighborhood->add_flag("--override-regime", cfg.override_regime);

    auto* bench = app.add_subcommand("bench-mom", "Monte-Carlo median-of-means deviation check");
    add_common(bench, true);
    add_trials(bench);
    bench->add_option("--format", cfg.format)->transform(CLI::CheckedTransformer(formats));

    auto* distinguish = app.add_subcommand("distinguish", "Monte-Carlo likelihood-ratio test error");
    add_common(distinguish, true);
    add_trials(distinguish);
    distinguish->add_option("--pair", cfg.pair, "Alternative q (default: constructed)")
        ->check(CLI::ExistingFile);
    distinguish->add_flag("--override-regime", cfg.override_regime);

    auto* scan = app.add_subcommand("scan", "Tabulate the error function over sample counts");
    add_common(scan, false);
    scan->add_option("--n-list", cfg.n_list, "Sample counts")->required()->delimiter(',');
    scan->add_option("--format", cfg.scan_format)->transform(CLI::CheckedTransformer(formats));

    auto* gen = app.add_subcommand("gen", "Write a reference corpus distribution");
    std::string names;
    for (std::string_view nm : corpus_names()) names += (names.empty() ? "" : ", ") + std::string(nm);
    gen->add_option("--name", cfg.name, "One of: " + names)->required();
    gen->add_option("--out", cfg.output, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream help;
        const int code = app.exit(e, help, help);
        (code == 0 ? out : err) << help.str();
        return code == 0 ? kPass : kUsage;
    }
    try {
        if (app.got_subcommand(construct)) return do_construct(cfg, out);
        if (app.got_subcommand(verify)) return do_verify(cfg, out);
        if (app.got_subcommand(neighborhood)) return do_neighborhood(cfg, out);
        if (app.got_subcommand(bench)) return do_bench(cfg, out);
        if (app.got_subcommand(distinguish)) return do_distinguish(cfg, out);
        if (app.got_subcommand(scan)) return do_scan(cfg, out);
        if (app.got_subcommand(gen)) return do_gen(cfg, out);
    } catch (const DegenerateError& e) {
        err << "degenerate input: " << e.what() << '\n';
        return kRefused;
    } catch (const RegimeError& e) {
        err << "refused: " << e.what() << '\n';
        return kRefused;
    } catch (const ParseError& e) {
        err << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace advmean::cli
