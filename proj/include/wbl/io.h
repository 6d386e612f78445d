#ifndef WBL_IO_H
#define WBL_IO_H

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "wbl/classical.h"
#include "wbl/correlations.h"
#include "wbl/optimizer.h"
#include "wbl/scenario.h"
#include "wbl/selftest.h"
#include "wbl/witness.h"

namespace wbl {

inline constexpr int kSchemaVersion = 1;

// Malformed or structurally wrong input documents.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string &what) : std::runtime_error(what) {}
};

namespace io {

using Json = nlohmann::json;

// Matrices are nested arrays of rows of [re, im] pairs.
Json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const Json &j, const std::string &where = "matrix");

Json strategy_to_json(const QuantumStrategy &s);
// Checks the document shape only; physical validity is left to
// validate_strategy.
QuantumStrategy strategy_from_json(const Json &j);

// 5-deep nested array [x][y][a][b][e].
Json table_to_json(const CorrelationTable &t);
CorrelationTable table_from_json(const Json &j);
// Header x,y,a,b,e,p and one row per cell.
std::string table_to_csv(const CorrelationTable &t);

Json lhv_to_json(const LhvModel &m);
LhvModel lhv_from_json(const Json &j);
Json vertex_to_json(const DeterministicStrategy &v);

Json config_to_json(const SeesawConfig &c);
SeesawConfig config_from_json(const Json &j);

Json witness_to_json(const WitnessBreakdown &w);
Json independence_to_json(const IndependenceReport &r);
Json selftest_to_json(const SelfTestReport &r);
Json trace_to_json(const SeesawTrace &t);
std::string trace_to_csv(const SeesawTrace &t);
std::string sweep_to_csv(const std::vector<SweepPoint> &points);

Json read_json_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &contents);
void write_json_file(const std::filesystem::path &path, const Json &j);

}  // namespace io
}  // namespace wbl

#endif  // WBL_IO_H
