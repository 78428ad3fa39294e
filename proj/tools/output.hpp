#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gue_lab/experiments.hpp"

namespace gue_lab::cli {

/// Provenance shared by every output file of one run.
struct RunMeta {
    std::string command;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> config;  ///< echo, in flag order
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    [[nodiscard]] double elapsed() const;
    [[nodiscard]] nlohmann::ordered_json config_json() const;
};

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

/// Writes tables as CSV (comment header with provenance, then the column row)
/// or, in json mode, one `<command>.json` holding every table.
class OutputSink {
public:
    OutputSink(std::filesystem::path dir, std::string format, bool gnuplot, RunMeta meta);

    void add(Table t) { tables_.push_back(std::move(t)); }
    void add_script(std::string name, std::string body) { scripts_.emplace_back(std::move(name), std::move(body)); }

    /// Flushes tables and a `<command>_summary.json` for the given results.
    void finish(const std::vector<CriterionResult>& results);

    [[nodiscard]] const RunMeta& meta() const { return meta_; }

private:
    void write_csv(const Table& t, double wall) const;

    std::filesystem::path dir_;
    std::string format_;
    bool gnuplot_;
    RunMeta meta_;
    std::vector<Table> tables_;
    std::vector<std::pair<std::string, std::string>> scripts_;
};

/// Summary document; deliberately free of wall-clock data so that reruns with
/// the same seed are byte-identical.
nlohmann::ordered_json summary_json(const RunMeta& meta, const std::vector<CriterionResult>& results,
                                    const std::string& timing_file);

nlohmann::ordered_json timing_json(const RunMeta& meta, const std::vector<CriterionResult>& results, double wall);

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc);

}  // namespace gue_lab::cli
