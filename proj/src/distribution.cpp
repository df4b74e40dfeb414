#include "advmean/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "advmean/errors.hpp"
#include "summation.hpp"

namespace advmean {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void sort_and_merge(std::vector<Atom>& atoms) {
    std::stable_sort(atoms.begin(), atoms.end(),
                     [](const Atom& a, const Atom& b) { return a.x < b.x; });
    std::vector<Atom> merged;
    merged.reserve(atoms.size());
    for (const Atom& a : atoms) {
        if (!merged.empty() && merged.back().x == a.x) {
            merged.back().w += a.w;
        } else {
            merged.push_back(a);
        }
    }
    atoms = std::move(merged);
}

void check_finite(const std::vector<Atom>& atoms) {
    for (const Atom& a : atoms) {
        if (!std::isfinite(a.x) || !std::isfinite(a.w)) {
            throw DomainError("atom position and mass must be finite");
        }
    }
}

double mass_sum(std::span<const Atom> atoms) {
    detail::CompensatedSum s;
    for (const Atom& a : atoms) s.add(a.w);
    return s.value();
}

}  // namespace

AtomicDistribution::AtomicDistribution(std::vector<Atom> atoms) {
    if (atoms.empty()) throw DomainError("distribution needs at least one atom");
    check_finite(atoms);
    for (const Atom& a : atoms) {
        if (!(a.w > 0.0)) throw DomainError("atom masses must be strictly positive");
    }
    sort_and_merge(atoms);
    const double total = mass_sum(atoms);
    if (std::fabs(total - 1.0) > kMassTolerance) {
        throw DomainError("atom masses sum to " + std::to_string(total) + ", expected 1");
    }
    atoms_ = std::move(atoms);
}

AtomicDistribution AtomicDistribution::normalized(std::vector<Atom> atoms) {
    if (atoms.empty()) throw DomainError("distribution needs at least one atom");
    check_finite(atoms);
    for (const Atom& a : atoms) {
        if (!(a.w > 0.0)) throw DomainError("atom masses must be strictly positive");
    }
    sort_and_merge(atoms);
    const double total = mass_sum(atoms);
    if (!(total > 0.0)) throw DegenerateError("cannot normalize a zero-mass measure");
    for (Atom& a : atoms) a.w /= total;
    return AtomicDistribution(Trusted{}, std::move(atoms));
}

AtomicDistribution AtomicDistribution::point_mass(double x) {
    return AtomicDistribution({Atom{x, 1.0}});
}

WeightedMeasure::WeightedMeasure(std::vector<Atom> atoms) {
    check_finite(atoms);
    for (const Atom& a : atoms) {
        if (a.w < 0.0) throw DomainError("measure masses must be non-negative");
    }
    std::erase_if(atoms, [](const Atom& a) { return a.w == 0.0; });
    sort_and_merge(atoms);
    total_mass_ = mass_sum(atoms);
    atoms_ = std::move(atoms);
}

double mean(const AtomicDistribution& d) {
    detail::CompensatedSum s;
    for (const Atom& a : d.atoms()) s.add(a.w * a.x);
    return s.value();
}

double second_moment(const AtomicDistribution& d, double center) {
    detail::CompensatedSum s;
    for (const Atom& a : d.atoms()) {
        const double dx = a.x - center;
        s.add(a.w * dx * dx);
    }
    return s.value();
}

double variance(const AtomicDistribution& d) { return second_moment(d, mean(d)); }

double stddev(const AtomicDistribution& d) { return std::sqrt(variance(d)); }

bool equidistant(double xi, double xj, double mu) noexcept {
    const double si = xi - mu;
    const double sj = xj - mu;
    if (!((si < 0.0 && sj > 0.0) || (si > 0.0 && sj < 0.0))) return false;
    const double tol = 8.0 * kEps * (std::fabs(xi) + std::fabs(xj) + 2.0 * std::fabs(mu));
    return std::fabs(std::fabs(si) - std::fabs(sj)) <= tol;
}

TrimResult trim(const AtomicDistribution& d, double t) {
    if (!(t >= 0.0 && t < 1.0)) throw DomainError("trim fraction must lie in [0, 1)");

    const auto atoms = d.atoms();
    const std::size_t count = atoms.size();
    const double mu = mean(d);
    std::vector<double> dist(count);
    for (std::size_t i = 0; i < count; ++i) dist[i] = std::fabs(atoms[i].x - mu);

    if (t == 0.0) {
        return TrimResult{d, *std::max_element(dist.begin(), dist.end()),
                          std::vector<double>(count, 1.0), 0.0};
    }

    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });

    const double target = 1.0 - t;
    std::vector<double> kept(count, 0.0);
    double radius = dist[order.back()];
    detail::CompensatedSum inner;
    bool settled = false;

    for (std::size_t pos = 0; pos < count && !settled;) {
        // A radial shell holds one atom, or two mirrored ones. The mirror need
        // not be adjacent in sorted order when a third distance lands inside
        // the rounding window, so look ahead while distances are that close.
        const std::size_t first = order[pos];
        std::size_t shell_end = pos + 1;
        for (std::size_t look = pos + 1; look < count; ++look) {
            const std::size_t cand = order[look];
            if (dist[cand] - dist[first] >
                8.0 * kEps * (std::fabs(atoms[first].x) + std::fabs(atoms[cand].x) + 2.0 * std::fabs(mu))) {
                break;
            }
            if (equidistant(atoms[first].x, atoms[cand].x, mu)) {
                std::rotate(order.begin() + static_cast<std::ptrdiff_t>(pos) + 1,
                            order.begin() + static_cast<std::ptrdiff_t>(look),
                            order.begin() + static_cast<std::ptrdiff_t>(look) + 1);
                shell_end = pos + 2;
                break;
            }
        }

        double shell_mass = 0.0;
        double shell_radius = 0.0;
        for (std::size_t k = pos; k < shell_end; ++k) {
            shell_mass += atoms[order[k]].w;
            shell_radius = std::max(shell_radius, dist[order[k]]);
        }

        const double before = inner.value();
        if (before + shell_mass >= target || shell_end == count) {
            const double frac = std::clamp((target - before) / shell_mass, 0.0, 1.0);
            for (std::size_t k = pos; k < shell_end; ++k) kept[order[k]] = frac;
            radius = shell_radius;
            settled = true;
        } else {
            for (std::size_t k = pos; k < shell_end; ++k) kept[order[k]] = 1.0;
            inner.add(shell_mass);
        }
        pos = shell_end;
    }

    std::vector<Atom> core;
    core.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double w = atoms[i].w * kept[i];
        if (w > 0.0) core.push_back({atoms[i].x, w});
    }
    return TrimResult{AtomicDistribution::normalized(std::move(core)), radius, std::move(kept), t};
}

double standard_trim_fraction(double n, double delta) {
    if (!(n > 0.0)) throw DomainError("sample count must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
    const double t = 0.45 * -std::log(delta) / n;
    if (!(t < 1.0)) throw DomainError("0.45 ln(1/delta) / n must be below 1");
    return t;
}

TrimResult standard_trim(const AtomicDistribution& d, double n, double delta) {
    return trim(d, standard_trim_fraction(n, delta));
}

ErrorTerms error_terms(const AtomicDistribution& d, double n, double delta) {
    TrimResult core = standard_trim(d, n, delta);
    ErrorTerms terms{.core = std::move(core)};
    terms.core_mean = mean(terms.core.trimmed);
    terms.core_stddev = stddev(terms.core.trimmed);
    terms.mean_gap = std::fabs(mean(d) - terms.core_mean);
    terms.spread = terms.core_stddev * std::sqrt(4.5 * -std::log(delta) / n);
    return terms;
}

double epsilon(const AtomicDistribution& d, double n, double delta) {
    return error_terms(d, n, delta).value();
}

AtomicDistribution mixture(const AtomicDistribution& d1, const AtomicDistribution& d2,
                           double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("mixture weight must lie in [0, 1]");
    if (lambda == 1.0) return d1;
    if (lambda == 0.0) return d2;

    const auto a = d1.atoms();
    const auto b = d2.atoms();
    std::vector<Atom> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].x < b[j].x)) {
            out.push_back({a[i].x, lambda * a[i].w});
            ++i;
        } else if (i == a.size() || b[j].x < a[i].x) {
            out.push_back({b[j].x, (1.0 - lambda) * b[j].w});
            ++j;
        } else {
            // Equal masses mix to themselves; keep that exact.
            const double w = a[i].w == b[j].w ? a[i].w : lambda * a[i].w + (1.0 - lambda) * b[j].w;
            out.push_back({a[i].x, w});
            ++i;
            ++j;
        }
    }
    return AtomicDistribution(std::move(out));
}

WeightedMeasure reweight(const AtomicDistribution& d, const WeightFunction& f) {
    std::vector<Atom> out;
    out.reserve(d.size());
    for (const Atom& a : d.atoms()) {
        const double fx = f(a.x);
        if (!(fx >= 0.0)) throw DomainError("weight function must be non-negative");
        out.push_back({a.x, a.w * fx});
    }
    return WeightedMeasure(std::move(out));
}

Normalized normalize(const WeightedMeasure& m) {
    if (!(m.total_mass() > 0.0)) throw DegenerateError("cannot normalize a zero-mass measure");
    std::vector<Atom> atoms(m.atoms().begin(), m.atoms().end());
    return Normalized{AtomicDistribution::normalized(std::move(atoms)), 1.0 / m.total_mass()};
}

AtomicDistribution shift(const AtomicDistribution& d, double c) {
    std::vector<Atom> out(d.atoms().begin(), d.atoms().end());
    for (Atom& a : out) a.x += c;
    return AtomicDistribution(std::move(out));
}

AtomicDistribution scale(const AtomicDistribution& d, double s) {
    if (s == 0.0 || !std::isfinite(s)) throw DomainError("scale factor must be finite and non-zero");
    std::vector<Atom> out(d.atoms().begin(), d.atoms().end());
    for (Atom& a : out) a.x *= s;
    return AtomicDistribution(std::move(out));
}

}  // namespace advmean
