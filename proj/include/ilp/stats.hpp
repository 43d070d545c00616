#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ilp/evaluator.hpp"

namespace ilp {

/// Per-run counters and stage timings.
struct SearchStats {
    size_t programs_generated = 0;
    bool solved = false;
    size_t solution_literals = 0;
    size_t variants_generated = 0;
    Duration time_preprocess{};
    Duration time_variantgen{};
    Duration time_generate{};
    Duration time_test{};
    Duration time_constrain{};
    Duration time_total{};
    size_t timeouts_during_test = 0;
};

inline double seconds(Duration d) {
    return std::chrono::duration_cast<std::chrono::duration<double>>(d).count();
}

/// One benchmark CSV row: run metadata plus the stats fields.
struct StatsRow {
    std::string task;
    std::string mode;
    uint64_t seed = 0;
    SearchStats stats;
    std::optional<bool> non_optimal;
    std::optional<double> accuracy;
};

inline constexpr const char* kStatsCsvHeader =
    "task,mode,seed,solved,time_total,time_preprocess,time_variantgen,time_generate,"
    "time_test,time_constrain,programs_generated,variants_generated,solution_literals,"
    "non_optimal,accuracy";

inline std::string to_csv_row(const StatsRow& r) {
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", v);
        return std::string(buf);
    };
    std::string out;
    out += r.task + "," + r.mode + "," + std::to_string(r.seed) + ",";
    out += std::string(r.stats.solved ? "1" : "0") + ",";
    out += fmt(seconds(r.stats.time_total)) + "," + fmt(seconds(r.stats.time_preprocess)) + ",";
    out += fmt(seconds(r.stats.time_variantgen)) + "," + fmt(seconds(r.stats.time_generate)) +
           ",";
    out += fmt(seconds(r.stats.time_test)) + "," + fmt(seconds(r.stats.time_constrain)) + ",";
    out += std::to_string(r.stats.programs_generated) + "," +
           std::to_string(r.stats.variants_generated) + "," +
           std::to_string(r.stats.solution_literals) + ",";
    out += r.non_optimal ? (*r.non_optimal ? "1" : "0") : "";
    out += ",";
    out += r.accuracy ? fmt(*r.accuracy) : "";
    return out;
}

/// Header plus one row per run; returns the byte count written.
inline size_t write_stats_csv(const std::vector<StatsRow>& rows, std::ostream& sink) {
    size_t bytes = 0;
    auto put = [&](const std::string& line) {
        sink << line << '\n';
        bytes += line.size() + 1;
    };
    put(kStatsCsvHeader);
    for (const auto& r : rows) put(to_csv_row(r));
    if (!sink) throw std::runtime_error("write_stats_csv: sink write failure");
    return bytes;
}

}  // namespace ilp
