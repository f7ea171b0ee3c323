#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "lrr/bench.hpp"
#include "lrr/estimator.hpp"
#include "lrr/featsel.hpp"

namespace lrr {

inline constexpr std::string_view kLibraryVersion = "1.0.0";
/// Bumped whenever a JSON or CSV layout changes.
inline constexpr int kFormatVersion = 1;

using Json = nlohmann::ordered_json;

/// Shortest round-trip text for a double with 17 significant digits.
std::string format_double(double v);

Json to_json(const EntropyEstimate& e);
Json to_json(const MutualInformation& mi);
Json to_json(const ConditionalEstimate& ce);
Json to_json(const SelectionConfig& c);
Json to_json(const SelectionTrace& t);
Json to_json(const RobustnessConfig& c);
Json to_json(const SweepConfig& c);

/// Fills the fields present in `j`; unknown keys raise InvalidArgument.
void from_json(const Json& j, RobustnessConfig& c);
void from_json(const Json& j, SweepConfig& c);

/// 16 hex digits of FNV-1a over the compact JSON dump.
std::string config_hash(const Json& config);

void write_trace_csv(std::ostream& os, const SelectionTrace& t, std::string_view hash, std::uint64_t seed);
void write_robustness_csv(std::ostream& os, std::span<const RobustnessRow> rows, std::string_view hash,
                          std::uint64_t seed);
void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows, std::string_view hash, std::uint64_t seed);

/// Sidecar document: versions, config hash, seed and the full config.
Json sidecar(std::string_view kind, const Json& config, std::uint64_t seed);

}  // namespace lrr
