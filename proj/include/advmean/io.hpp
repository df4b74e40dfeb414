#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "advmean/adversary.hpp"
#include "advmean/distribution.hpp"
#include "advmean/harness.hpp"

namespace advmean {

using Json = nlohmann::ordered_json;

// {"atoms": [{"x": .., "w": ..}, ...]}. Atoms may be unsorted; exact
// duplicates are merged; the mass sum must be within 1e-9 of 1 and is then
// renormalized. Other top-level keys are ignored. Throws ParseError with
// line/column for malformed JSON.
AtomicDistribution parse_distribution(std::string_view text);
AtomicDistribution load_distribution(const std::filesystem::path& path);

Json to_json(const AtomicDistribution& d);
Json to_json(const AdversaryResult& r);
Json to_json(const VerificationReport& r);
Json to_json(const MomBenchReport& r);
Json to_json(const LrTestReport& r);

// Pretty-printed with two-space indent and a trailing newline. Doubles use
// the shortest round-trip form; non-finite values become null.
std::string dump(const Json& j);

// Shortest round-trip decimal form of a double (at most 17 digits).
std::string format_double(double v);

void write_bench_csv(std::ostream& out, std::string_view name, const MomBenchReport& r,
                     bool header);
void write_scan_csv(std::ostream& out, std::string_view name, double delta,
                    std::span<const ScanRow> rows);

}  // namespace advmean
