#include "progcode/report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#ifndef PROGCODE_VERSION
#define PROGCODE_VERSION "0.0.0-dev"
#endif

namespace progcode {

namespace {

double parse_double(std::string_view text) {
    // from_chars rejects a leading '+'
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json exact_json(const ExactReal& v) {
    return {{"exact", v.to_string()}, {"approx", v.to_double()}};
}

nlohmann::json exact_array(const std::vector<ExactReal>& values) {
    auto arr = nlohmann::json::array();
    for (const auto& v : values) {
        arr.push_back(exact_json(v));
    }
    return arr;
}

}  // namespace

std::string_view code_version() { return PROGCODE_VERSION; }

std::vector<double> parse_snr_grid(std::string_view text) {
    const std::string spec = trim(text);
    if (spec.empty()) {
        throw std::invalid_argument("SNR grid: empty");
    }
    std::vector<double> grid;
    if (spec.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::stringstream ss(spec);
        std::string part;
        while (std::getline(ss, part, ':')) {
            parts.push_back(parse_double(trim(part)));
        }
        if (parts.size() != 3) {
            throw std::invalid_argument("SNR grid: expected start:stop:step, got '" + spec + "'");
        }
        const double start = parts[0];
        const double stop = parts[1];
        const double step = parts[2];
        if (stop < start || step <= 0) {
            throw std::invalid_argument("SNR grid: need start <= stop and step > 0");
        }
        const double slack = 1e-9 * step;
        for (std::size_t i = 0;; ++i) {
            const double v = start + static_cast<double>(i) * step;
            if (v > stop + slack) break;
            grid.push_back(v);
            if (grid.size() > 100000) {
                throw std::invalid_argument("SNR grid: more than 100000 points");
            }
        }
        return grid;
    }
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        grid.push_back(parse_double(trim(part)));
    }
    return grid;
}

std::string format_shortest(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_shortest: conversion failed");
    }
    return {buf, ptr};
}

std::string format_csv(std::span<const SweepPoint> points) {
    if (points.empty()) {
        throw std::invalid_argument("format_csv: no sweep points");
    }
    std::vector<const SweepPoint*> sorted;
    for (const auto& p : points) {
        sorted.push_back(&p);
    }
    std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->snr_db < b->snr_db; });

    std::string out(kCsvHeader);
    out += '\n';
    for (const SweepPoint* p : sorted) {
        out += format_shortest(p->snr_db);
        out += ',' + std::to_string(p->trials);
        out += ',' + format_shortest(p->mse_mean);
        out += ',' + format_shortest(p->mse_ci95);
        out += ',' + format_shortest(p->sdr_db);
        out += ',' + format_shortest(p->event_a_rate);
        out += ',' + format_shortest(p->opta_sdr_db);
        out += ',';
        if (p->achievable_mse_bound) out += format_shortest(*p->achievable_mse_bound);
        out += ',' + format_shortest(p->baseline_sdr_db);
        out += ',';
        if (p->ell) out += std::to_string(*p->ell);
        out += '\n';
    }
    return out;
}

void emit_csv(std::span<const SweepPoint> points, const std::filesystem::path& path) {
    const std::string text = format_csv(points);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    os << text;
    os.flush();
    if (!os) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

nlohmann::json to_json(const SimConfig& config) {
    return {{"n", config.channel_uses},
            {"k", config.depth},
            {"snr_grid_db", config.snr_grid_db},
            {"trials", config.trials_per_point},
            {"seed", config.master_seed},
            {"workers", config.workers}};
}

SimConfig sim_config_from_json(const nlohmann::json& j) {
    try {
        SimConfig c;
        c.channel_uses = j.at("n").get<unsigned>();
        c.depth = j.at("k").get<unsigned>();
        c.snr_grid_db = j.at("snr_grid_db").get<std::vector<double>>();
        c.trials_per_point = j.at("trials").get<std::uint64_t>();
        c.master_seed = j.at("seed").get<std::uint64_t>();
        c.workers = j.value("workers", 1U);
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("manifest config: ") + e.what());
    }
}

nlohmann::json to_json(const RunManifest& manifest) {
    return {{"config", to_json(manifest.config)},
            {"code_version", manifest.code_version},
            {"started", manifest.started},
            {"finished", manifest.finished},
            {"outputs", {{"csv", manifest.csv_path.string()}, {"summary", manifest.summary_path.string()}}}};
}

SimConfig load_manifest_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) {
        throw std::runtime_error("cannot open manifest " + path.string());
    }
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("manifest " + path.string() + ": " + e.what());
    }
    if (!j.contains("config")) {
        throw std::invalid_argument("manifest " + path.string() + ": missing config");
    }
    return sim_config_from_json(j.at("config"));
}

nlohmann::json to_json(const SweepPoint& p) {
    return {{"snr_db", p.snr_db},
            {"sigma", p.sigma},
            {"trials", p.trials},
            {"mse_mean", p.mse_mean},
            {"mse_ci95", p.mse_ci95},
            {"mse_median", p.mse_median},
            {"mse_mean_given_a", optional_json(p.mse_mean_given_a)},
            {"sdr_db", p.sdr_db},
            {"event_a_rate", p.event_a_rate},
            {"event_a_lower_bound", optional_json(p.event_a_lower_bound)},
            {"prop3_violations", p.prop3_violations},
            {"prop2_violations", p.prop2_violations},
            {"ell", optional_json(p.ell)},
            {"opta_sdr", p.opta_sdr},
            {"opta_sdr_db", p.opta_sdr_db},
            {"achievable_mse_bound", optional_json(p.achievable_mse_bound)},
            {"baseline_mse", p.baseline_mse},
            {"baseline_sdr_db", p.baseline_sdr_db}};
}

nlohmann::json to_json(const TrialRecord& r) {
    auto corrupted = nlohmann::json::array();
    for (const auto& k : r.first_corrupted) {
        corrupted.push_back(optional_json(k));
    }
    return {{"sigma", r.sigma},
            {"u", exact_json(r.u)},
            {"x", exact_array(r.x)},
            {"z", exact_array(r.z)},
            {"y", exact_array(r.y)},
            {"u_hat", exact_json(r.u_hat)},
            {"sq_err", exact_json(r.sq_err)},
            {"ell", optional_json(r.ell)},
            {"event_a", r.event_a},
            {"prop3_bound_ok", optional_json(r.prop3_bound_ok)},
            {"prop2_digits_ok", optional_json(r.prop2_digits_ok)},
            {"first_corrupted_level", corrupted}};
}

void write_json(const nlohmann::json& value, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    os << value.dump(2) << '\n';
    if (!os) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace progcode
