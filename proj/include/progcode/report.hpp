#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "progcode/channel_sim.hpp"

namespace progcode {

/// Version string baked in at build time.
std::string_view code_version();

/// "start:stop:step" (stop inclusive), a comma list, or a single value, in dB.
/// Throws std::invalid_argument on malformed input.
std::vector<double> parse_snr_grid(std::string_view text);

/// Shortest decimal that round-trips to the same binary64.
std::string format_shortest(double value);

inline constexpr std::string_view kCsvHeader =
    "snr_db,trials,mse_mean,mse_ci95,sdr_db,event_a_rate,opta_sdr_db,achievable_mse_bound,baseline_sdr_db,ell";

/// CSV text, header plus one row per point in ascending snr_db, LF endings.
/// Throws std::invalid_argument for an empty list.
std::string format_csv(std::span<const SweepPoint> points);
/// Writes format_csv(points) to `path`; I/O failures throw
/// std::runtime_error naming the path.
void emit_csv(std::span<const SweepPoint> points, const std::filesystem::path& path);

struct RunManifest {
    SimConfig config;
    std::string code_version;
    std::string started;
    std::string finished;
    std::filesystem::path csv_path;
    std::filesystem::path summary_path;
};

nlohmann::json to_json(const SimConfig& config);
/// Throws std::invalid_argument on missing or ill-typed fields.
SimConfig sim_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunManifest& manifest);
/// Reads the config echo of a manifest file.
SimConfig load_manifest_config(const std::filesystem::path& path);

nlohmann::json to_json(const SweepPoint& point);
nlohmann::json to_json(const TrialRecord& record);

/// Writes `value` as pretty JSON to `path`.
void write_json(const nlohmann::json& value, const std::filesystem::path& path);

/// UTC timestamp, ISO 8601.
std::string utc_now();

}  // namespace progcode
