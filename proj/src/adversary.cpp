#include "advmean/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "advmean/bisect.hpp"
#include "advmean/divergence.hpp"
#include "advmean/errors.hpp"
#include "summation.hpp"

namespace advmean {
namespace {

constexpr double kMixWeight = 0.75;
constexpr double kShiftFraction = 1.0 / 8.0;
constexpr double kSolverRelTol = 1e-10;
constexpr int kSolverMaxIter = 200;
constexpr double kTieTolerance = 1e-12;

double clamp_unit(double v) noexcept { return std::clamp(v, -1.0, 1.0); }

struct SkewInputs {
    double mu = 0.0;
    double core_stddev = 0.0;
    double log_ratio = 0.0;  // ln(1/delta) / n
};

SkewSolution solve_skew_impl(const AtomicDistribution& p, const SkewInputs& in) {
    SkewSolution sol;
    const double root = std::sqrt(in.log_ratio);
    sol.target = kShiftFraction * in.core_stddev * root;
    sol.upper = root / in.core_stddev;

    // mean_shift(a) <= a * E[(x - mu)^2], so this is never past the root.
    const double lower = std::min(sol.target / second_moment(p, in.mu), sol.upper);
    const auto f = [&](double a) { return mean_shift(p, in.mu, a); };
    const BisectResult r =
        bisect_increasing(f, lower, sol.upper, sol.target, kSolverRelTol, kSolverMaxIter);
    sol.a = r.root;
    sol.residual = r.value - sol.target;
    sol.iterations = r.iterations;
    sol.saturated = r.saturated;
    return sol;
}

}  // namespace

std::string_view to_string(ConstructionCase c) noexcept {
    return c == ConstructionCase::LargeMeanShift ? "large_mean_shift" : "small_mean_shift";
}

std::string_view to_string(SkewSign s) noexcept { return s == SkewSign::Plus ? "plus" : "minus"; }

Regime regime(double n, double delta) {
    return Regime{delta <= 0.1, -std::log(delta) / n <= 0.01};
}

DensityRatio density_ratio(const AtomicDistribution& q, const AtomicDistribution& p) {
    const auto pa = p.atoms();
    const auto qa = q.atoms();
    DensityRatio out;
    out.ratios.assign(pa.size(), 0.0);
    std::size_t j = 0;
    for (std::size_t i = 0; i < pa.size(); ++i) {
        while (j < qa.size() && qa[j].x < pa[i].x) {
            if (!out.offending_position) out.offending_position = qa[j].x;
            ++j;
        }
        if (j < qa.size() && qa[j].x == pa[i].x) {
            out.ratios[i] = qa[j].w / pa[i].w;
            ++j;
        }
        out.sup = std::max(out.sup, out.ratios[i]);
    }
    if (j < qa.size() && !out.offending_position) out.offending_position = qa[j].x;
    if (out.offending_position) out.sup = std::numeric_limits<double>::infinity();
    return out;
}

double mean_shift(const AtomicDistribution& p, double center, double a) {
    if (!(a > 0.0)) throw DomainError("skew parameter must be positive");
    detail::CompensatedSum s;
    for (const Atom& atom : p.atoms()) {
        const double dx = atom.x - center;
        s.add(atom.w * dx * clamp_unit(a * dx));
    }
    return s.value();
}

double mean_shift(const AtomicDistribution& p_centered, double a) {
    detail::CompensatedSum abs_first;
    for (const Atom& atom : p_centered.atoms()) abs_first.add(atom.w * std::fabs(atom.x));
    if (std::fabs(mean(p_centered)) > 1e-10 * std::max(1.0, abs_first.value())) {
        throw PreconditionError("mean_shift expects a distribution centered at 0");
    }
    return mean_shift(p_centered, 0.0, a);
}

WeightedMeasure skewed_measure(const AtomicDistribution& p, double center, double a,
                               SkewSign sign) {
    const double signed_a = sign == SkewSign::Plus ? a : -a;
    return reweight(p, [=](double x) { return 1.0 + clamp_unit(signed_a * (x - center)); });
}

SkewSolution solve_skew(const AtomicDistribution& p, double n, double delta) {
    const ErrorTerms terms = error_terms(p, n, delta);
    if (terms.mean_gap > terms.spread) {
        throw PreconditionError("solve_skew needs |mu_p - mu_core| <= sigma_core sqrt(4.5 ln(1/delta)/n)");
    }
    if (terms.core_stddev == 0.0) {
        throw DegenerateError("trimmed core is a point mass; skew parameter undefined");
    }
    return solve_skew_impl(p, {mean(p), terms.core_stddev, -std::log(delta) / n});
}

AdversaryResult construct_q(const AtomicDistribution& p, double n, double delta) {
    if (p.is_point_mass()) {
        throw DegenerateError("single-atom distribution has no distinct indistinguishable partner");
    }
    const ErrorTerms terms = error_terms(p, n, delta);
    const double mu_p = mean(p);
    const double log_ratio = -std::log(delta) / n;

    AdversaryDiagnostics diag;
    diag.mu_p = mu_p;
    diag.epsilon_p = terms.value();
    diag.core_mean = terms.core_mean;
    diag.core_stddev = terms.core_stddev;
    diag.trim_radius = terms.core.radius;
    diag.mean_gap = terms.mean_gap;
    diag.threshold = terms.spread;

    // Placeholder q is replaced in both branches.
    AdversaryResult result{.q = p, .diagnostics = {}};
    result.in_regime = regime(n, delta).ok();

    if (terms.mean_gap > terms.spread) {
        result.kind = ConstructionCase::LargeMeanShift;
        result.lambda = kMixWeight;
        result.q = mixture(p, terms.core.trimmed, kMixWeight);
    } else {
        if (terms.core_stddev == 0.0) {
            throw DegenerateError("trimmed core is a point mass; skew parameter undefined");
        }
        result.kind = ConstructionCase::SmallMeanShift;
        const SkewSolution sol = solve_skew_impl(p, {mu_p, terms.core_stddev, log_ratio});
        result.a = sol.a;
        result.solver_saturated = sol.saturated;
        diag.target_shift = sol.target;

        WeightedMeasure plus = skewed_measure(p, mu_p, sol.a, SkewSign::Plus);
        WeightedMeasure minus = skewed_measure(p, mu_p, sol.a, SkewSign::Minus);
        diag.mass_plus = plus.total_mass();
        diag.mass_minus = minus.total_mass();
        // Without clamping the two masses are equal in exact arithmetic; a
        // difference at rounding level counts as a tie.
        const bool use_plus = plus.total_mass() >= minus.total_mass() - kTieTolerance;
        result.sign = use_plus ? SkewSign::Plus : SkewSign::Minus;
        Normalized nq = normalize(use_plus ? plus : minus);
        result.q = std::move(nq.distribution);
        // Exact ties can land a rounding step above 1.
        result.b = std::min(1.0, nq.factor);
    }

    diag.mu_q = mean(result.q);
    diag.variance_p = variance(p);
    diag.variance_q = variance(result.q);
    diag.sup_ratio = density_ratio(result.q, p).sup;
    diag.hellinger_sq = hellinger_sq(p, result.q);

    const double shift = std::fabs(diag.mu_q - diag.mu_p);
    const bool shift_ok = shift >= diag.epsilon_p / 32.0 - 1e-9;
    const bool upper_ok = shift <= diag.epsilon_p + 1e-9;
    const bool ratio_ok = diag.sup_ratio <= 2.0 + 1e-12;
    const bool hellinger_ok =
        std::log1p(-std::min(diag.hellinger_sq, 1.0)) >= std::log(4.0 * delta) / (2.0 * n) - 1e-12;
    diag.postconditions_hold = shift_ok && upper_ok && ratio_ok && hellinger_ok;

    result.diagnostics = diag;
    return result;
}

}  // namespace advmean
