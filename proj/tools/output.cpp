#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace gue_lab::cli {

namespace {

std::string cell_text(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", *d);
        return buf;
    }
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    const auto& text = std::get<std::string>(c);
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char ch : text) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    return quoted + "\"";
}

nlohmann::ordered_json cell_json(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return *d;
    if (const auto* i = std::get_if<long long>(&c)) return *i;
    return std::get<std::string>(c);
}

nlohmann::ordered_json provenance(const RunMeta& meta) {
    nlohmann::ordered_json j;
    j["artifact"] = "gue_lab";
    j["version"] = GUE_LAB_VERSION;
    j["command"] = meta.command;
    j["seed"] = meta.seed;
    j["config"] = meta.config_json();
    return j;
}

std::ofstream open_or_throw(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

}  // namespace

double RunMeta::elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

nlohmann::ordered_json RunMeta::config_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config) j[k] = v;
    return j;
}

OutputSink::OutputSink(std::filesystem::path dir, std::string format, bool gnuplot, RunMeta meta)
    : dir_(std::move(dir)), format_(std::move(format)), gnuplot_(gnuplot), meta_(std::move(meta)) {
    std::filesystem::create_directories(dir_);
}

void OutputSink::write_csv(const Table& t, double wall) const {
    auto out = open_or_throw(dir_ / (t.name + ".csv"));
    out << "# artifact: gue_lab " << GUE_LAB_VERSION << "\n";
    out << "# command: " << meta_.command << "\n";
    out << "# seed: " << meta_.seed << "\n";
    out << "# config:";
    for (const auto& [k, v] : meta_.config) out << ' ' << k << '=' << v;
    out << "\n";
    out << "# wall_seconds: " << wall << "\n";
    for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
        out << "\n";
    }
}

void OutputSink::finish(const std::vector<CriterionResult>& results) {
    const double wall = meta_.elapsed();
    const std::string timing_name = meta_.command + "_timing.json";
    if (format_ == "json") {
        auto doc = provenance(meta_);
        doc["wall_seconds"] = wall;
        nlohmann::ordered_json tables = nlohmann::ordered_json::object();
        for (const auto& t : tables_) {
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            for (const auto& r : t.rows) {
                nlohmann::ordered_json row = nlohmann::ordered_json::array();
                for (const auto& c : r) row.push_back(cell_json(c));
                rows.push_back(std::move(row));
            }
            tables[t.name] = {{"header", t.header}, {"rows", std::move(rows)}};
        }
        doc["tables"] = std::move(tables);
        write_json(dir_ / (meta_.command + ".json"), doc);
    } else {
        for (const auto& t : tables_) write_csv(t, wall);
        if (gnuplot_) {
            for (const auto& [name, body] : scripts_) {
                auto out = open_or_throw(dir_ / (name + ".gp"));
                out << "# artifact: gue_lab " << GUE_LAB_VERSION << "\n# seed: " << meta_.seed
                    << "\n# wall_seconds: " << wall << "\n"
                    << body;
            }
        }
    }
    write_json(dir_ / (meta_.command + "_summary.json"), summary_json(meta_, results, timing_name));
    write_json(dir_ / timing_name, timing_json(meta_, results, wall));
}

nlohmann::ordered_json summary_json(const RunMeta& meta, const std::vector<CriterionResult>& results,
                                    const std::string& timing_file) {
    auto doc = provenance(meta);
    bool pass = true;
    nlohmann::ordered_json crits = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        pass = pass && r.pass;
        nlohmann::ordered_json checks = nlohmann::ordered_json::array();
        for (const auto& c : r.checks) {
            checks.push_back({{"name", c.name},
                              {"relation", c.relation},
                              {"predicted", c.predicted},
                              {"estimated", c.estimated},
                              {"se", c.se},
                              {"tolerance", c.tolerance},
                              {"pass", c.pass}});
        }
        crits.push_back({{"id", r.id},
                         {"title", r.title},
                         {"pass", r.pass},
                         {"replicates", r.replicates},
                         {"checks", std::move(checks)},
                         {"notes", r.notes}});
    }
    doc["pass"] = pass;
    doc["criteria"] = std::move(crits);
    doc["timing_file"] = timing_file;
    return doc;
}

nlohmann::ordered_json timing_json(const RunMeta& meta, const std::vector<CriterionResult>& results, double wall) {
    auto doc = provenance(meta);
    doc["wall_seconds"] = wall;
    nlohmann::ordered_json per = nlohmann::ordered_json::array();
    for (const auto& r : results) per.push_back({{"id", r.id}, {"wall_seconds", r.wall_seconds}});
    doc["criteria"] = std::move(per);
    return doc;
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc) {
    auto out = open_or_throw(path);
    out << doc.dump(2) << "\n";
}

}  // namespace gue_lab::cli
