#include "wbl/io.h"

#include <filesystem>
#include <fstream>

#include "gtest/gtest.h"

using namespace wbl;
using io::Json;

namespace {

std::filesystem::path temp_file(const std::string &name) {
  return std::filesystem::temp_directory_path() / ("wbl_io_test_" + name);
}

}  // namespace

TEST(MatrixJson, RoundTripIsExact) {
  const ComplexMatrix m{{cplx(0.5, -0.25), cplx(1.0, 0.0)}, {cplx(-0.125, 3.0), cplx(0.0, 0.75)}};
  EXPECT_EQ(io::matrix_from_json(io::matrix_to_json(m)), m);
}

TEST(MatrixJson, RejectsRaggedAndBareNumbers) {
  EXPECT_THROW(io::matrix_from_json(Json::parse("[[[1,0],[0,0]],[[1,0]]]")), SchemaError);
  EXPECT_THROW(io::matrix_from_json(Json::parse("[[1, 0], [0, 1]]")), SchemaError);
  EXPECT_THROW(io::matrix_from_json(Json::parse("[]")), SchemaError);
}

TEST(StrategyJson, DyadicStrategyRoundTripsBitExact) {
  QuantumStrategy s;
  s.dims = SubsystemDims{2, 2, 2, 2};
  s.source1 = ComplexMatrix::diagonal(std::vector<double>{0.5, 0.0, 0.0, 0.5});
  s.source1(0, 3) = s.source1(3, 0) = 0.25;
  s.source2 = 0.25 * ComplexMatrix::identity(4);
  s.alice_observables = {pauli::Z(), pauli::X()};
  s.bob_observables = {pauli::Y(), -1.0 * pauli::Z()};
  s.eve_povm = computational_povm();
  const QuantumStrategy back = io::strategy_from_json(io::strategy_to_json(s));
  EXPECT_EQ(back.dims, s.dims);
  EXPECT_EQ(back.source1, s.source1);
  EXPECT_EQ(back.source2, s.source2);
  EXPECT_EQ(back.alice_observables, s.alice_observables);
  EXPECT_EQ(back.bob_observables, s.bob_observables);
  EXPECT_EQ(back.eve_povm, s.eve_povm);
  EXPECT_EQ(back.projective_observables, s.projective_observables);
}

TEST(StrategyJson, ReferenceRoundTripsThroughText) {
  const QuantumStrategy s = reference_strategy();
  const QuantumStrategy back = io::strategy_from_json(Json::parse(io::strategy_to_json(s).dump()));
  EXPECT_EQ(back.source1, s.source1);
  EXPECT_EQ(back.bob_observables, s.bob_observables);
  EXPECT_EQ(back.eve_povm, s.eve_povm);
}

TEST(StrategyJson, MalformedDocumentsRaiseSchemaError) {
  Json j = io::strategy_to_json(reference_strategy());
  Json missing = j;
  missing.erase("source1");
  EXPECT_THROW(io::strategy_from_json(missing), SchemaError);
  Json bad_dims = j;
  bad_dims["dims"] = {2, 2, 2};
  EXPECT_THROW(io::strategy_from_json(bad_dims), SchemaError);
  Json bad_povm = j;
  bad_povm["eve_povm"].erase(0);
  EXPECT_THROW(io::strategy_from_json(bad_povm), SchemaError);
  EXPECT_THROW(io::strategy_from_json(Json::array()), SchemaError);
}

TEST(TableJson, RoundTrip) {
  const CorrelationTable t = born_table(reference_strategy());
  EXPECT_EQ(io::table_from_json(io::table_to_json(t)), t);
  EXPECT_THROW(io::table_from_json(Json::parse("[[1]]")), SchemaError);
}

TEST(TableCsv, HeaderAndRowCount) {
  const std::string csv = io::table_to_csv(CorrelationTable::uniform());
  EXPECT_EQ(csv.rfind("x,y,a,b,e,p\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 65);
}

TEST(LhvJson, RoundTrip) {
  const LhvModel m = bit_example_model().model;
  const LhvModel back = io::lhv_from_json(io::lhv_to_json(m));
  ASSERT_EQ(back.components.size(), m.components.size());
  for (std::size_t k = 0; k < m.components.size(); ++k) {
    EXPECT_EQ(back.components[k].weight, m.components[k].weight);
    EXPECT_EQ(back.components[k].strategy, m.components[k].strategy);
  }
}

TEST(ConfigJson, RoundTrip) {
  SeesawConfig c;
  c.dims = SubsystemDims{2, 3, 2, 2};
  c.max_iterations = 77;
  c.convergence_tol = 1e-11;
  c.restarts = 5;
  c.seed = 123456789012345ULL;
  c.frozen_eve_povm = computational_povm();
  const SeesawConfig back = io::config_from_json(io::config_to_json(c));
  EXPECT_EQ(back.dims, c.dims);
  EXPECT_EQ(back.max_iterations, 77);
  EXPECT_EQ(back.convergence_tol, 1e-11);
  EXPECT_EQ(back.restarts, 5);
  EXPECT_EQ(back.seed, c.seed);
  ASSERT_TRUE(back.frozen_eve_povm.has_value());
  EXPECT_EQ(*back.frozen_eve_povm, *c.frozen_eve_povm);
  EXPECT_FALSE(back.initial_strategy.has_value());
}

TEST(ConfigJson, DefaultsAndTypeErrors) {
  const SeesawConfig d = io::config_from_json(Json::object());
  EXPECT_EQ(d.restarts, SeesawConfig{}.restarts);
  EXPECT_THROW(io::config_from_json(Json::parse(R"({"restarts": "many"})")), SchemaError);
  EXPECT_THROW(io::config_from_json(Json::parse(R"({"dims": [2, 2, 1, 2]})")), SchemaError);
}

TEST(Files, MalformedJsonFileRaisesSchemaError) {
  const auto path = temp_file("malformed.json");
  io::write_text_file(path, "{ \"dims\": [2, 2,");
  EXPECT_THROW(io::read_json_file(path), SchemaError);
  EXPECT_THROW(io::read_json_file(temp_file("does_not_exist.json")), SchemaError);
  std::filesystem::remove(path);
}

TEST(Files, JsonFileRoundTrip) {
  const auto path = temp_file("strategy.json");
  io::write_json_file(path, io::strategy_to_json(reference_strategy()));
  const QuantumStrategy s = io::strategy_from_json(io::read_json_file(path));
  EXPECT_EQ(s.source2, reference_strategy().source2);
  std::filesystem::remove(path);
}

TEST(Reports, SelftestJsonHasFields) {
  FidelityOptions o;
  o.starts = 2;
  const Json j = io::selftest_to_json(selftest_report(reference_strategy(), 1e-9, o));
  EXPECT_TRUE(j.at("certified").get<bool>());
  EXPECT_EQ(j.at("bell_fidelities").size(), 4u);
}
