#include "pareto/records_io.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace pareto {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(std::string("records: bad ") + what + " '" + text + "'");
    }
}

std::int64_t parse_int(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(std::string("records: bad ") + what + " '" + text + "'");
    }
}

void write_vector(std::ostream& out, const Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) out << ',' << v[i];
}

} // namespace

void write_records_csv(std::ostream& out, const std::string& run_id, const std::vector<ParetoRecord>& records) {
    if (run_id.find_first_of(",\n") != std::string::npos) throw ConfigError("records: run id may not contain commas");
    const Eigen::Index m = records.empty() ? 0 : records.front().f.size();
    const Eigen::Index n = records.empty() ? 0 : records.front().x.size();
    out << "schema,run_id,record_id,parent_id,stage,residual";
    for (Eigen::Index i = 1; i <= m; ++i) out << ",f_" << i;
    for (Eigen::Index i = 1; i <= n; ++i) out << ",x_" << i;
    out << '\n' << std::setprecision(17);
    for (const auto& r : records) {
        if (r.f.size() != m || r.x.size() != n) throw DimensionError("records: inconsistent record sizes");
        out << kRecordsSchema << ',' << run_id << ',' << r.id << ',';
        if (r.parent_id) out << *r.parent_id;
        out << ',' << to_string(r.stage) << ',' << r.residual();
        write_vector(out, r.f);
        write_vector(out, r.x);
        out << '\n';
    }
}

RecordsFile read_records_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.empty()) throw ConfigError("records: empty file");
    const auto header = split_csv(line);
    if (header.size() < 6 || header[0] != "schema" || header[1] != "run_id") {
        throw ConfigError("records: unrecognized header");
    }
    RecordsFile file;
    for (std::size_t i = 6; i < header.size(); ++i) {
        if (header[i].rfind("f_", 0) == 0) {
            ++file.m;
        } else if (header[i].rfind("x_", 0) == 0) {
            ++file.n;
        } else {
            throw ConfigError("records: unknown column '" + header[i] + "'");
        }
    }
    const auto m = static_cast<Eigen::Index>(file.m);
    const auto n = static_cast<Eigen::Index>(file.n);
    if (m == 0) throw ConfigError("records: no objective columns");

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != header.size()) throw ConfigError("records: row has the wrong number of fields");
        if (fields[0] != kRecordsSchema) throw ConfigError("records: unsupported schema '" + fields[0] + "'");
        if (file.records.empty()) {
            file.run_id = fields[1];
        } else if (fields[1] != file.run_id) {
            throw ConfigError("records: rows from different runs");
        }
        ParetoRecord r;
        r.id = parse_int(fields[2], "record id");
        if (!fields[3].empty()) r.parent_id = parse_int(fields[3], "parent id");
        try {
            r.stage = stage_from_string(fields[4]);
        } catch (const Error&) {
            throw ConfigError("records: unknown stage '" + fields[4] + "'");
        }
        const double residual = parse_double(fields[5], "residual");
        if (residual >= 0.0) r.alpha = AlphaResult{Eigen::VectorXd(), residual, ParamVector()};
        r.f.resize(m);
        r.x.resize(n);
        for (Eigen::Index i = 0; i < m; ++i) r.f[i] = parse_double(fields[6 + i], "objective");
        for (Eigen::Index i = 0; i < n; ++i) r.x[i] = parse_double(fields[6 + m + i], "parameter");
        file.records.push_back(std::move(r));
    }
    if (file.records.empty()) throw ConfigError("records: no rows");
    return file;
}

void write_front_csv(std::ostream& out, const StitchedFront& front) {
    const Eigen::Index m =
        front.samples.empty() || front.samples.front().empty() ? 0 : front.samples.front().front().f.size();
    out << "schema,segment,t,retained";
    for (Eigen::Index i = 1; i <= m; ++i) out << ",f_" << i;
    out << '\n' << std::setprecision(17);
    for (std::size_t s = 0; s < front.samples.size(); ++s) {
        for (const auto& sample : front.samples[s]) {
            out << kFrontSchema << ',' << s << ',' << sample.t << ',' << (sample.retained ? 1 : 0);
            write_vector(out, sample.f);
            out << '\n';
        }
    }
}

void write_probe_csv(std::ostream& out, const std::vector<std::string>& labels, const std::vector<double>& t_grid,
                     const std::vector<std::vector<ObjectiveValues>>& curves) {
    if (labels.size() != curves.size()) throw DimensionError("probe: one label per curve");
    const Eigen::Index m = curves.empty() || curves.front().empty() ? 0 : curves.front().front().size();
    out << "schema,direction,t";
    for (Eigen::Index i = 1; i <= m; ++i) out << ",f_" << i;
    out << '\n' << std::setprecision(17);
    for (std::size_t c = 0; c < curves.size(); ++c) {
        if (curves[c].size() != t_grid.size()) throw DimensionError("probe: curve length differs from the grid");
        for (std::size_t j = 0; j < t_grid.size(); ++j) {
            out << kProbeSchema << ',' << labels[c] << ',' << t_grid[j];
            write_vector(out, curves[c][j]);
            out << '\n';
        }
    }
}

nlohmann::json to_json(const CostCounters& c) {
    return {{"n_f", c.n_f}, {"n_grad", c.n_grad}, {"n_hvp", c.n_hvp}};
}

nlohmann::json to_json(const FrontParametrization& p) {
    nlohmann::json nodes = nlohmann::json::array();
    for (std::size_t i = 0; i < p.ids.size(); ++i) {
        nlohmann::json node{{"id", p.ids[i]},
                            {"x", std::vector<double>(p.xs[i].data(), p.xs[i].data() + p.xs[i].size())},
                            {"f", std::vector<double>(p.fs[i].data(), p.fs[i].data() + p.fs[i].size())}};
        if (p.kind == ParametrizationKind::chain) node["t"] = p.knots[i];
        nodes.push_back(std::move(node));
    }
    return {{"kind", p.kind == ParametrizationKind::chain ? "chain" : "patch"}, {"nodes", std::move(nodes)}};
}

nlohmann::json to_json(const StitchedFront& front) {
    nlohmann::json segments = nlohmann::json::array();
    for (std::size_t s = 0; s < front.segments.size(); ++s) {
        auto j = to_json(front.segments[s]);
        j["retained_measure"] = front.retained_measure(s);
        segments.push_back(std::move(j));
    }
    nlohmann::json stitches = nlohmann::json::array();
    for (const auto& p : front.stitch_points) stitches.push_back({{"segment", p.segment}, {"t", p.t}});
    nlohmann::json crops = nlohmann::json::array();
    for (const auto& c : front.crop_log) {
        crops.push_back({{"segment", c.segment}, {"t_begin", c.t_begin}, {"t_end", c.t_end},
                         {"dominated_by", c.dominated_by}});
    }
    return {{"segments", std::move(segments)}, {"stitch_points", std::move(stitches)}, {"crops", std::move(crops)}};
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw ConfigError("cannot write " + tmp.string());
        out << doc.dump(2) << '\n';
        if (!out) throw ConfigError("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

} // namespace pareto
