#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace advmean {

struct Atom {
    double x = 0.0;
    double w = 0.0;

    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Probability distribution on the real line with finitely many atoms.
///
/// Positions are strictly increasing and masses strictly positive, summing
/// to one within 1e-12. Atoms at bitwise-equal positions are merged on
/// construction; no tolerance-based merging is ever applied.
class AtomicDistribution {
public:
    static constexpr double kMassTolerance = 1e-12;

    /// Validates the mass sum against kMassTolerance. Throws DomainError on
    /// empty input, non-finite values, non-positive masses or a bad sum.
    explicit AtomicDistribution(std::vector<Atom> atoms);

    /// Divides every mass by the total first. Only requires a positive total.
    static AtomicDistribution normalized(std::vector<Atom> atoms);

    static AtomicDistribution point_mass(double x);

    std::span<const Atom> atoms() const noexcept { return atoms_; }
    std::size_t size() const noexcept { return atoms_.size(); }
    bool is_point_mass() const noexcept { return atoms_.size() == 1; }

    friend bool operator==(const AtomicDistribution&, const AtomicDistribution&) = default;

private:
    struct Trusted {};
    AtomicDistribution(Trusted, std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}

    std::vector<Atom> atoms_;
};

/// Non-negative finite measure with arbitrary total mass. Zero-mass atoms are
/// dropped, so an annihilated measure is empty and flagged degenerate.
class WeightedMeasure {
public:
    explicit WeightedMeasure(std::vector<Atom> atoms);

    std::span<const Atom> atoms() const noexcept { return atoms_; }
    std::size_t size() const noexcept { return atoms_.size(); }
    double total_mass() const noexcept { return total_mass_; }
    bool degenerate() const noexcept { return atoms_.empty(); }

private:
    std::vector<Atom> atoms_;
    double total_mass_ = 0.0;
};

struct TrimResult {
    AtomicDistribution trimmed;
    double radius = 0.0;
    // Indexed like the source distribution's atoms.
    std::vector<double> kept_fractions;
    double trimmed_mass = 0.0;
};

struct Normalized {
    AtomicDistribution distribution;
    // Downscaling factor 1 / total_mass.
    double factor = 1.0;
};

double mean(const AtomicDistribution& d);
double variance(const AtomicDistribution& d);
double stddev(const AtomicDistribution& d);

// Second moment about an arbitrary center.
double second_moment(const AtomicDistribution& d, double center);

/// Conditions d on [mu - r, mu + r] with r the smallest radius whose closed
/// ball holds at least 1 - t of the mass. Atoms sitting exactly on the
/// boundary share a common kept fraction so the kept mass is exactly 1 - t.
///
/// Two atoms on opposite sides of the mean are treated as equidistant when
/// their computed distances agree up to the rounding error of forming them
/// (see equidistant()); this keeps symmetric inputs symmetric even when the
/// mean itself carries rounding noise.
TrimResult trim(const AtomicDistribution& d, double t);

double standard_trim_fraction(double n, double delta);

// n is real so that the n/3 variant used by the neighborhood checks is exact.
TrimResult standard_trim(const AtomicDistribution& d, double n, double delta);

/// Both terms of the instance-wise error function plus the trimmed core
/// they were computed from.
struct ErrorTerms {
    double mean_gap = 0.0;   // |mu_p - mu_core|
    double spread = 0.0;     // sigma_core * sqrt(4.5 ln(1/delta) / n)
    double core_mean = 0.0;
    double core_stddev = 0.0;
    TrimResult core;

    double value() const noexcept { return mean_gap + spread; }
};

ErrorTerms error_terms(const AtomicDistribution& d, double n, double delta);
double epsilon(const AtomicDistribution& d, double n, double delta);

AtomicDistribution mixture(const AtomicDistribution& d1, const AtomicDistribution& d2,
                           double lambda);

using WeightFunction = std::function<double(double)>;

WeightedMeasure reweight(const AtomicDistribution& d, const WeightFunction& f);
Normalized normalize(const WeightedMeasure& m);

AtomicDistribution shift(const AtomicDistribution& d, double c);
AtomicDistribution scale(const AtomicDistribution& d, double s);

// True when atoms at xi and xj (on opposite sides of mu) are at the same
// distance from mu up to the rounding error of |x - mu|.
bool equidistant(double xi, double xj, double mu) noexcept;

}  // namespace advmean
