#include "advmean/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "advmean/divergence.hpp"
#include "advmean/errors.hpp"
#include "advmean/estimators.hpp"

namespace advmean {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_n_delta(double n, double delta) {
    if (!(n > 0.0)) throw DomainError("sample count must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
}

// Runs fn(t) for every trial index, spreading indices round-robin over the
// workers. Each result lands in its own slot, so the output is independent
// of scheduling.
template <typename R, typename F>
std::vector<R> run_trials(std::size_t trials, unsigned workers, const F& fn) {
    std::vector<R> out(trials);
    const std::size_t pool_size = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(trials, 1));
    if (pool_size == 1) {
        for (std::size_t t = 0; t < trials; ++t) out[t] = fn(t);
        return out;
    }
    {
        std::vector<std::jthread> pool;
        pool.reserve(pool_size);
        for (std::size_t w = 0; w < pool_size; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t t = w; t < trials; t += pool_size) out[t] = fn(t);
            });
        }
    }
    return out;
}

double theorem_shift_bound(double eps) { return eps / 32.0 - 1e-9; }

Condition hellinger_condition(const AtomicDistribution& p, const AtomicDistribution& q, double n,
                              double delta) {
    const double h = hellinger_sq(p, q);
    const double lhs = h >= 1.0 ? -kInf : std::log1p(-h);
    return make_condition("hellinger_indistinguishable", lhs, Direction::GreaterEqual,
                          std::log(4.0 * delta) / (2.0 * n) - 1e-12);
}

Condition ratio_condition(const AtomicDistribution& p, const AtomicDistribution& q) {
    return make_condition("density_ratio", density_ratio(q, p).sup, Direction::LessEqual,
                          2.0 + 1e-12);
}

void finalize(VerificationReport& r) {
    const bool all = std::all_of(r.conditions.begin(), r.conditions.end(),
                                 [](const Condition& c) { return c.pass; });
    r.pass = r.asserted ? all : true;
    if (!r.asserted) {
        auto warnings = nlohmann::ordered_json::array();
        for (const Condition& c : r.conditions) {
            if (!c.pass) warnings.push_back(c.name + " fails outside the asserted regime");
        }
        r.meta["warnings"] = std::move(warnings);
    }
}

VerificationReport start_report(std::string claim, double n, double delta,
                                const VerifyOptions& options) {
    check_n_delta(n, delta);
    VerificationReport r;
    r.claim = std::move(claim);
    r.regime = regime(n, delta);
    if (!r.regime.ok() && !options.override_regime) {
        throw RegimeError("delta <= 0.1 and ln(1/delta)/n <= 0.01 required (use the regime override)");
    }
    r.asserted = r.regime.ok();
    r.meta["n"] = n;
    r.meta["delta"] = delta;
    return r;
}

void add_construction_meta(VerificationReport& r, const AdversaryResult& res) {
    auto& m = r.meta;
    m["case"] = std::string(to_string(res.kind));
    if (res.kind == ConstructionCase::LargeMeanShift) {
        m["lambda"] = res.lambda;
    } else {
        m["a"] = res.a;
        m["sign"] = std::string(to_string(res.sign));
        m["b"] = res.b;
        m["solver_saturated"] = res.solver_saturated;
    }
    m["mu_p"] = res.diagnostics.mu_p;
    m["mu_q"] = res.diagnostics.mu_q;
    m["epsilon_p"] = res.diagnostics.epsilon_p;
}

void mark_degenerate(VerificationReport& r, const std::exception& e) {
    r.degenerate = true;
    r.pass = false;
    r.meta["degenerate"] = e.what();
}

void add_theorem_conditions(VerificationReport& r, const AtomicDistribution& p,
                            const AtomicDistribution& q, double n, double delta) {
    const double eps = epsilon(p, n, delta);
    const double shift = std::fabs(mean(q) - mean(p));
    const double var_p = variance(p);
    r.conditions.push_back(
        make_condition("mean_shift_lower", shift, Direction::GreaterEqual, theorem_shift_bound(eps)));
    r.conditions.push_back(hellinger_condition(p, q, n, delta));
    r.conditions.push_back(ratio_condition(p, q));
    r.conditions.push_back(make_condition("variance", variance(q), Direction::LessEqual,
                                          2.0 * var_p + 1e-9 * (1.0 + var_p)));
    // Any estimator within eps/64 on both p and q would separate them.
    r.conditions.push_back(make_condition("estimation_separation", shift, Direction::GreaterEqual,
                                          2.0 * (eps / 64.0) - 1e-9));
}

}  // namespace

AtomSampler::AtomSampler(const AtomicDistribution& d) {
    const auto atoms = d.atoms();
    positions_.reserve(atoms.size());
    cumulative_.reserve(atoms.size());
    double acc = 0.0;
    for (const Atom& a : atoms) {
        positions_.push_back(a.x);
        acc += a.w;
        cumulative_.push_back(acc);
    }
    cumulative_.back() = 1.0;
}

std::size_t AtomSampler::index_for(double u) const noexcept {
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const auto idx = static_cast<std::size_t>(it - cumulative_.begin());
    return std::min(idx, cumulative_.size() - 1);
}

SampleBatch sample(const AtomicDistribution& d, std::size_t count, CounterStream& stream) {
    const AtomSampler sampler(d);
    SampleBatch batch;
    batch.values.reserve(count);
    for (std::size_t i = 0; i < count; ++i) batch.values.push_back(sampler.draw(stream));
    return batch;
}

TrimResult brute_force_trim(const AtomicDistribution& d, double t) {
    const auto atoms = d.atoms();
    if (atoms.size() > 64) throw DomainError("brute_force_trim is limited to 64 atoms");
    if (!(t >= 0.0 && t < 1.0)) throw DomainError("trim fraction must lie in [0, 1)");

    const double mu = mean(d);
    const std::size_t count = atoms.size();
    std::vector<double> dist(count);
    for (std::size_t i = 0; i < count; ++i) dist[i] = std::fabs(atoms[i].x - mu);
    const double widest = *std::max_element(dist.begin(), dist.end());
    if (t == 0.0) return TrimResult{d, widest, std::vector<double>(count, 1.0), 0.0};

    std::vector<std::size_t> by_distance(count);
    std::iota(by_distance.begin(), by_distance.end(), std::size_t{0});
    std::sort(by_distance.begin(), by_distance.end(), [&](std::size_t a, std::size_t b) {
        return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
    });

    const double target = 1.0 - t;
    std::vector<bool> covered(count, false);
    std::vector<double> kept(count, 0.0);
    double radius = widest;

    for (std::size_t k : by_distance) {
        if (covered[k]) continue;
        std::vector<std::size_t> shell{k};
        for (std::size_t j = 0; j < count; ++j) {
            if (j != k && equidistant(atoms[k].x, atoms[j].x, mu)) shell.push_back(j);
        }
        double shell_mass = 0.0;
        double shell_radius = 0.0;
        for (std::size_t j : shell) {
            covered[j] = true;
            shell_mass += atoms[j].w;
            shell_radius = std::max(shell_radius, dist[j]);
        }
        double inside = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            if (dist[i] < dist[k] && std::find(shell.begin(), shell.end(), i) == shell.end()) {
                inside += atoms[i].w;
            }
        }
        const bool last = std::all_of(covered.begin(), covered.end(), [](bool c) { return c; });
        if (inside + shell_mass >= target || last) {
            for (std::size_t i = 0; i < count; ++i) {
                if (dist[i] < dist[k] && std::find(shell.begin(), shell.end(), i) == shell.end()) {
                    kept[i] = 1.0;
                }
            }
            const double frac = std::clamp((target - inside) / shell_mass, 0.0, 1.0);
            for (std::size_t j : shell) kept[j] = frac;
            radius = shell_radius;
            break;
        }
    }

    std::vector<Atom> core;
    for (std::size_t i = 0; i < count; ++i) {
        if (atoms[i].w * kept[i] > 0.0) core.push_back({atoms[i].x, atoms[i].w * kept[i]});
    }
    return TrimResult{AtomicDistribution::normalized(std::move(core)), radius, std::move(kept), t};
}

Condition make_condition(std::string name, double measured, Direction direction, double bound) {
    const bool pass = direction == Direction::GreaterEqual ? measured >= bound : measured <= bound;
    return Condition{std::move(name), measured, bound, direction, pass};
}

VerificationReport verify_theorem(const AtomicDistribution& p, double n, double delta,
                                  VerifyOptions options) {
    VerificationReport r = start_report("indistinguishable_partner", n, delta, options);
    try {
        const AdversaryResult res = construct_q(p, n, delta);
        add_construction_meta(r, res);
        add_theorem_conditions(r, p, res.q, n, delta);
    } catch (const DegenerateError& e) {
        mark_degenerate(r, e);
        return r;
    }
    finalize(r);
    return r;
}

VerificationReport verify_theorem_pair(const AtomicDistribution& p, const AtomicDistribution& q,
                                       double n, double delta, VerifyOptions options) {
    VerificationReport r = start_report("indistinguishable_partner", n, delta, options);
    r.meta["pair"] = true;
    r.meta["mu_p"] = mean(p);
    r.meta["mu_q"] = mean(q);
    r.meta["epsilon_p"] = epsilon(p, n, delta);
    add_theorem_conditions(r, p, q, n, delta);
    finalize(r);
    return r;
}

VerificationReport verify_neighborhood(const AtomicDistribution& p, double n, double delta,
                                       VerifyOptions options) {
    VerificationReport r = start_report("neighborhood", n, delta, options);
    try {
        const AdversaryResult res = construct_q(p, n, delta);
        add_construction_meta(r, res);
        const AtomicDistribution& q = res.q;
        const double third = n / 3.0;
        const double eps_p = epsilon(p, n, delta);
        const double eps_q_third = epsilon(q, third, delta);
        const double shift = std::fabs(mean(q) - mean(p));

        r.conditions.push_back(make_condition("epsilon_q_third", eps_q_third, Direction::LessEqual,
                                              100.0 * eps_p + 1e-9));
        r.conditions.push_back(hellinger_condition(p, q, n, delta));
        r.conditions.push_back(
            make_condition("mean_shift_upper", shift, Direction::LessEqual, eps_p + 1e-9));
        r.conditions.push_back(ratio_condition(p, q));

        r.meta["composite_p"] = std::min(epsilon(p, third, delta), eps_p);
        r.meta["composite_q"] = std::min(eps_q_third, epsilon(q, n, delta));
    } catch (const DegenerateError& e) {
        mark_degenerate(r, e);
        return r;
    }
    finalize(r);
    return r;
}

MomBenchReport bench_mom(const AtomicDistribution& p, const TrialConfig& cfg) {
    check_n_delta(static_cast<double>(cfg.n), cfg.delta);
    if (cfg.trials == 0) throw DomainError("need at least one trial");
    const std::size_t groups = group_count(cfg.delta);
    if (cfg.n < groups) throw InsufficientSamplesError(cfg.n, groups);

    const double n = static_cast<double>(cfg.n);
    const ErrorTerms terms = error_terms(p, n, cfg.delta);
    const double mu_p = mean(p);
    const double bound =
        terms.mean_gap + 3.0 * terms.core_stddev * std::sqrt(4.5 * -std::log(cfg.delta) / n);
    const AtomSampler sampler(p);

    const auto failed = run_trials<unsigned char>(cfg.trials, cfg.workers, [&](std::size_t t) {
        CounterStream stream(cfg.seed, t);
        std::vector<double> xs(cfg.n);
        for (double& x : xs) x = sampler.draw(stream);
        const double estimate = median_of_means_k(xs, groups);
        return static_cast<unsigned char>(std::fabs(estimate - mu_p) > bound);
    });

    MomBenchReport r;
    r.n = cfg.n;
    r.delta = cfg.delta;
    r.trials = cfg.trials;
    r.seed = cfg.seed;
    r.failures = static_cast<std::size_t>(std::count(failed.begin(), failed.end(), 1));
    r.failure_rate = static_cast<double>(r.failures) / static_cast<double>(cfg.trials);
    r.bound = bound;
    r.ci_halfwidth = 3.0 * std::sqrt(cfg.delta * (1.0 - cfg.delta) / static_cast<double>(cfg.trials));
    r.pass = r.failure_rate <= cfg.delta + r.ci_halfwidth;
    return r;
}

LrTestReport lr_test_error(const AtomicDistribution& p, const AtomicDistribution& q,
                           const TrialConfig& cfg) {
    check_n_delta(static_cast<double>(cfg.n), cfg.delta);
    if (cfg.trials == 0 || cfg.trials % 2 != 0) {
        throw DomainError("likelihood-ratio simulation needs a positive even trial count");
    }

    // Log-likelihood ratio ln(q/p) at each atom of each source.
    const auto pa = p.atoms();
    const auto qa = q.atoms();
    std::vector<double> llr_p(pa.size(), -kInf);
    std::vector<double> llr_q(qa.size(), kInf);
    for (std::size_t i = 0, j = 0; i < pa.size() && j < qa.size();) {
        if (pa[i].x < qa[j].x) {
            ++i;
        } else if (qa[j].x < pa[i].x) {
            ++j;
        } else {
            const double v = std::log(qa[j].w / pa[i].w);
            llr_p[i] = v;
            llr_q[j] = v;
            ++i;
            ++j;
        }
    }
    const AtomSampler from_p(p);
    const AtomSampler from_q(q);

    const auto wrong = run_trials<unsigned char>(cfg.trials, cfg.workers, [&](std::size_t t) {
        CounterStream stream(cfg.seed, t);
        const bool source_is_q = (t % 2) == 1;
        const AtomSampler& sampler = source_is_q ? from_q : from_p;
        const std::vector<double>& llr = source_is_q ? llr_q : llr_p;
        double lambda = 0.0;
        for (std::size_t i = 0; i < cfg.n; ++i) lambda += llr[sampler.draw_index(stream)];
        const bool decide_q = lambda > 0.0 || (lambda == 0.0 && stream.coin());
        return static_cast<unsigned char>(decide_q != source_is_q);
    });

    std::size_t errors_p = 0;
    std::size_t errors_q = 0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        if (wrong[t] == 0) continue;
        (t % 2 == 0 ? errors_p : errors_q) += 1;
    }
    const double half = static_cast<double>(cfg.trials / 2);

    LrTestReport r;
    r.n = cfg.n;
    r.delta = cfg.delta;
    r.trials = cfg.trials;
    r.seed = cfg.seed;
    r.type_one = static_cast<double>(errors_p) / half;
    r.type_two = static_cast<double>(errors_q) / half;
    r.empirical_error = 0.5 * (r.type_one + r.type_two);
    r.ci_halfwidth = 3.0 * std::sqrt(0.25 / static_cast<double>(cfg.trials));
    r.pass = r.empirical_error >= cfg.delta - r.ci_halfwidth;
    return r;
}

std::vector<ScanRow> asymptotic_scan(const AtomicDistribution& p, double delta,
                                     std::span<const double> n_list) {
    std::vector<ScanRow> rows;
    rows.reserve(n_list.size());
    const double log_inv = -std::log(delta);
    for (double n : n_list) {
        check_n_delta(n, delta);
        const double eps = epsilon(p, n, delta);
        rows.push_back({n, eps, eps * std::sqrt(n / log_inv), regime(n, delta).ok()});
    }
    return rows;
}

}  // namespace advmean
