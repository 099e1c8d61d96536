#ifndef PARETO_RECORDS_IO_HPP
#define PARETO_RECORDS_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "pareto/core.hpp"
#include "pareto/metrics.hpp"
#include "pareto/parametrization.hpp"

namespace pareto {

inline constexpr const char* kRecordsSchema = "pareto-records/v1";
inline constexpr const char* kFrontSchema = "pareto-front/v1";
inline constexpr const char* kProbeSchema = "pareto-probe/v1";

/// Columns: schema, run_id, record_id, parent_id, stage, residual, f_1..f_m,
/// x_1..x_n. An absent parent is written as an empty field and a missing
/// residual as -1.
void write_records_csv(std::ostream& out, const std::string& run_id, const std::vector<ParetoRecord>& records);

struct RecordsFile {
    std::string run_id;
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<ParetoRecord> records;
};

/// Inverse of write_records_csv. Gradients are not stored; alpha is restored
/// only as far as the residual goes. Throws ConfigError on malformed input,
/// including an empty file.
RecordsFile read_records_csv(std::istream& in);

/// Columns: schema, segment, t, retained, f_1..f_m.
void write_front_csv(std::ostream& out, const StitchedFront& front);

/// Columns: schema, direction, t, f_1..f_m.
void write_probe_csv(std::ostream& out, const std::vector<std::string>& labels, const std::vector<double>& t_grid,
                     const std::vector<std::vector<ObjectiveValues>>& curves);

nlohmann::json to_json(const CostCounters& counters);
nlohmann::json to_json(const FrontParametrization& p);
nlohmann::json to_json(const StitchedFront& front);

/// Writes `doc` to `path` through a temporary file and a rename, so readers
/// never see a half-written file.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);
nlohmann::json read_json_file(const std::filesystem::path& path);

} // namespace pareto

#endif
