#include "advmean/io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "advmean/errors.hpp"

namespace advmean {
namespace {

constexpr double kLoadTolerance = 1e-9;

// Line and column (both 1-based) of a byte offset.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t offset) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

Json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

std::string_view direction_name(Direction d) { return d == Direction::GreaterEqual ? "ge" : "le"; }

}  // namespace

AtomicDistribution parse_distribution(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        // The reported byte is one past the offending character.
        const auto [line, col] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(fmt::format("malformed JSON at line {}, column {}: {}", line, col, e.what()));
    }
    if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array()) {
        throw ParseError("distribution JSON must be an object with an \"atoms\" array");
    }
    std::vector<Atom> atoms;
    for (const auto& a : j["atoms"]) {
        if (!a.is_object() || !a.contains("x") || !a.contains("w") || !a["x"].is_number() ||
            !a["w"].is_number()) {
            throw ParseError("each atom needs numeric \"x\" and \"w\"");
        }
        const double x = a["x"].get<double>();
        const double w = a["w"].get<double>();
        if (!std::isfinite(x) || !std::isfinite(w) || !(w > 0.0)) {
            throw ParseError("atom positions must be finite and masses positive");
        }
        atoms.push_back({x, w});
    }
    if (atoms.empty()) throw ParseError("distribution has no atoms");
    double total = 0.0;
    for (const Atom& a : atoms) total += a.w;
    if (std::fabs(total - 1.0) > kLoadTolerance) {
        throw ParseError(fmt::format("atom masses sum to {}, expected 1 within 1e-9", total));
    }
    return AtomicDistribution::normalized(std::move(atoms));
}

AtomicDistribution load_distribution(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_distribution(buf.str());
}

Json to_json(const AtomicDistribution& d) {
    Json atoms = Json::array();
    for (const Atom& a : d.atoms()) atoms.push_back(Json{{"x", a.x}, {"w", a.w}});
    return Json{{"atoms", std::move(atoms)}};
}

Json to_json(const AdversaryResult& r) {
    Json j;
    j["case"] = std::string(to_string(r.kind));
    if (r.kind == ConstructionCase::LargeMeanShift) {
        j["lambda"] = r.lambda;
    } else {
        j["a"] = r.a;
        j["sign"] = std::string(to_string(r.sign));
        j["b"] = r.b;
        j["solver_saturated"] = r.solver_saturated;
    }
    j["in_regime"] = r.in_regime;
    const AdversaryDiagnostics& d = r.diagnostics;
    j["diagnostics"] = Json{
        {"epsilon_p", number(d.epsilon_p)},
        {"mu_p", number(d.mu_p)},
        {"mu_q", number(d.mu_q)},
        {"sup_ratio", number(d.sup_ratio)},
        {"hellinger_sq", number(d.hellinger_sq)},
        {"core_mean", number(d.core_mean)},
        {"core_stddev", number(d.core_stddev)},
        {"trim_radius", number(d.trim_radius)},
        {"mean_gap", number(d.mean_gap)},
        {"threshold", number(d.threshold)},
        {"variance_p", number(d.variance_p)},
        {"variance_q", number(d.variance_q)},
        {"postconditions_hold", d.postconditions_hold},
    };
    if (r.kind == ConstructionCase::SmallMeanShift) {
        j["diagnostics"]["target_shift"] = number(d.target_shift);
        j["diagnostics"]["mass_plus"] = number(d.mass_plus);
        j["diagnostics"]["mass_minus"] = number(d.mass_minus);
    }
    return j;
}

Json to_json(const VerificationReport& r) {
    Json conditions = Json::array();
    for (const Condition& c : r.conditions) {
        conditions.push_back(Json{{"name", c.name},
                                  {"measured", number(c.measured)},
                                  {"bound", number(c.bound)},
                                  {"direction", direction_name(c.direction)},
                                  {"pass", c.pass}});
    }
    Json meta = r.meta;
    meta["asserted"] = r.asserted;
    meta["degenerate"] = r.degenerate;
    return Json{{"claim", r.claim},
                {"conditions", std::move(conditions)},
                {"pass", r.pass},
                {"regime", Json{{"delta_ok", r.regime.delta_ok}, {"ratio_ok", r.regime.ratio_ok}}},
                {"meta", std::move(meta)}};
}

Json to_json(const MomBenchReport& r) {
    return Json{{"claim", "median_of_means_deviation"},
                {"n", r.n},
                {"delta", r.delta},
                {"trials", r.trials},
                {"seed", r.seed},
                {"failures", r.failures},
                {"failure_rate", r.failure_rate},
                {"bound", r.bound},
                {"ci_halfwidth", r.ci_halfwidth},
                {"pass", r.pass}};
}

Json to_json(const LrTestReport& r) {
    return Json{{"claim", "likelihood_ratio_error"},
                {"n", r.n},
                {"delta", r.delta},
                {"trials", r.trials},
                {"seed", r.seed},
                {"type_one", r.type_one},
                {"type_two", r.type_two},
                {"empirical_error", r.empirical_error},
                {"ci_halfwidth", r.ci_halfwidth},
                {"pass", r.pass}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string format_double(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    return fmt::format("{}", v);
}

void write_bench_csv(std::ostream& out, std::string_view name, const MomBenchReport& r,
                     bool header) {
    if (header) out << "distribution,n,delta,trials,seed,failures,failure_rate,bound,ci_halfwidth,pass\n";
    out << name << ',' << r.n << ',' << format_double(r.delta) << ',' << r.trials << ',' << r.seed
        << ',' << r.failures << ',' << format_double(r.failure_rate) << ','
        << format_double(r.bound) << ',' << format_double(r.ci_halfwidth) << ','
        << (r.pass ? "true" : "false") << '\n';
}

void write_scan_csv(std::ostream& out, std::string_view name, double delta,
                    std::span<const ScanRow> rows) {
    out << "distribution,n,delta,epsilon,normalized,in_regime\n";
    for (const ScanRow& row : rows) {
        out << name << ',' << format_double(row.n) << ',' << format_double(delta) << ','
            << format_double(row.epsilon) << ',' << format_double(row.normalized) << ','
            << (row.in_regime ? "true" : "false") << '\n';
    }
}

}  // namespace advmean
