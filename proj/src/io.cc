#include "wbl/io.h"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace wbl::io {

namespace {

const Json &require(const Json &j, const char *key, const std::string &where) {
  if (!j.is_object() || !j.contains(key)) {
    throw SchemaError(where + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

double number(const Json &j, const std::string &where) {
  if (!j.is_number()) throw SchemaError(where + ": expected a number");
  return j.get<double>();
}

template <std::size_t N>
std::array<ComplexMatrix, N> matrix_list(const Json &j, const std::string &where) {
  if (!j.is_array() || j.size() != N) {
    throw SchemaError(where + ": expected an array of " + std::to_string(N) + " matrices");
  }
  std::array<ComplexMatrix, N> out;
  for (std::size_t k = 0; k < N; ++k) out[k] = matrix_from_json(j[k], where + "[" + std::to_string(k) + "]");
  return out;
}

std::string csv_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

Json matrix_to_json(const ComplexMatrix &m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json &j, const std::string &where) {
  if (!j.is_array() || j.empty()) throw SchemaError(where + ": expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw SchemaError(where + ": rows must be non-empty arrays");
  const std::size_t cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw SchemaError(where + ": ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const Json &z = j[r][c];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        throw SchemaError(where + ": entries must be [re, im] pairs");
      }
      m(r, c) = cplx(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

Json strategy_to_json(const QuantumStrategy &s) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["dims"] = s.dims.values();
  j["source1"] = matrix_to_json(s.source1);
  j["source2"] = matrix_to_json(s.source2);
  j["alice_observables"] = {matrix_to_json(s.alice_observables[0]), matrix_to_json(s.alice_observables[1])};
  j["bob_observables"] = {matrix_to_json(s.bob_observables[0]), matrix_to_json(s.bob_observables[1])};
  Json povm = Json::array();
  for (const auto &m : s.eve_povm) povm.push_back(matrix_to_json(m));
  j["eve_povm"] = std::move(povm);
  j["projective_observables"] = s.projective_observables;
  return j;
}

QuantumStrategy strategy_from_json(const Json &j) {
  const std::string where = "strategy";
  if (!j.is_object()) throw SchemaError("strategy: expected a JSON object");
  const Json &dims = require(j, "dims", where);
  if (!dims.is_array() || dims.size() != 4) throw SchemaError("strategy.dims: expected 4 integers");
  std::vector<std::size_t> d;
  for (const auto &v : dims) {
    if (!v.is_number_integer() || v.get<long long>() < 2) {
      throw SchemaError("strategy.dims: entries must be integers >= 2");
    }
    d.push_back(v.get<std::size_t>());
  }
  QuantumStrategy s;
  s.dims = SubsystemDims(d);
  s.source1 = matrix_from_json(require(j, "source1", where), "strategy.source1");
  s.source2 = matrix_from_json(require(j, "source2", where), "strategy.source2");
  s.alice_observables = matrix_list<2>(require(j, "alice_observables", where), "strategy.alice_observables");
  s.bob_observables = matrix_list<2>(require(j, "bob_observables", where), "strategy.bob_observables");
  s.eve_povm = matrix_list<kEveOutcomes>(require(j, "eve_povm", where), "strategy.eve_povm");
  if (j.contains("projective_observables")) {
    if (!j["projective_observables"].is_boolean()) {
      throw SchemaError("strategy.projective_observables: expected a boolean");
    }
    s.projective_observables = j["projective_observables"].get<bool>();
  }
  return s;
}

Json table_to_json(const CorrelationTable &t) {
  Json out = Json::array();
  for (std::size_t x = 0; x < 2; ++x) {
    Json jx = Json::array();
    for (std::size_t y = 0; y < 2; ++y) {
      Json jy = Json::array();
      for (std::size_t a = 0; a < 2; ++a) {
        Json ja = Json::array();
        for (std::size_t b = 0; b < 2; ++b) {
          Json jb = Json::array();
          for (std::size_t e = 0; e < kEveOutcomes; ++e) jb.push_back(t(x, y, a, b, e));
          ja.push_back(std::move(jb));
        }
        jy.push_back(std::move(ja));
      }
      jx.push_back(std::move(jy));
    }
    out.push_back(std::move(jx));
  }
  return out;
}

CorrelationTable table_from_json(const Json &j) {
  auto level = [](const Json &v, std::size_t n, const char *name) {
    if (!v.is_array() || v.size() != n) {
      throw SchemaError(std::string("table: level ") + name + " must have " + std::to_string(n) + " entries");
    }
  };
  CorrelationTable t;
  level(j, 2, "x");
  for (std::size_t x = 0; x < 2; ++x) {
    level(j[x], 2, "y");
    for (std::size_t y = 0; y < 2; ++y) {
      level(j[x][y], 2, "a");
      for (std::size_t a = 0; a < 2; ++a) {
        level(j[x][y][a], 2, "b");
        for (std::size_t b = 0; b < 2; ++b) {
          level(j[x][y][a][b], kEveOutcomes, "e");
          for (std::size_t e = 0; e < kEveOutcomes; ++e) t(x, y, a, b, e) = number(j[x][y][a][b][e], "table");
        }
      }
    }
  }
  return t;
}

std::string table_to_csv(const CorrelationTable &t) {
  std::ostringstream os;
  os << "x,y,a,b,e,p\n";
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
          for (std::size_t e = 0; e < kEveOutcomes; ++e)
            os << x << ',' << y << ',' << a << ',' << b << ',' << e << ',' << csv_number(t(x, y, a, b, e)) << '\n';
  return os.str();
}

Json vertex_to_json(const DeterministicStrategy &v) {
  Json j;
  j["e"] = v.eve_outcome;
  Json a = Json::array(), b = Json::array();
  for (std::size_t x = 0; x < 2; ++x) {
    a.push_back(v.alice_response[x]);
    b.push_back(v.bob_response[x]);
  }
  j["alice_response"] = std::move(a);
  j["bob_response"] = std::move(b);
  return j;
}

Json lhv_to_json(const LhvModel &m) {
  Json out = Json::array();
  for (const auto &c : m.components) {
    Json j = vertex_to_json(c.strategy);
    j["weight"] = c.weight;
    out.push_back(std::move(j));
  }
  return out;
}

LhvModel lhv_from_json(const Json &j) {
  if (!j.is_array()) throw SchemaError("lhv: expected an array of components");
  LhvModel m;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string where = "lhv[" + std::to_string(k) + "]";
    WeightedStrategy c;
    c.weight = number(require(j[k], "weight", where), where + ".weight");
    const Json &e = require(j[k], "e", where);
    if (!e.is_number_integer() || e.get<long long>() < 0 || e.get<long long>() >= static_cast<long long>(kEveOutcomes)) {
      throw SchemaError(where + ".e: expected an integer in 0..3");
    }
    c.strategy.eve_outcome = e.get<std::uint8_t>();
    for (const char *key : {"alice_response", "bob_response"}) {
      const Json &r = require(j[k], key, where);
      if (!r.is_array() || r.size() != 2) throw SchemaError(where + "." + key + ": expected [2][4] bits");
      auto &target = std::string(key) == "alice_response" ? c.strategy.alice_response : c.strategy.bob_response;
      for (std::size_t x = 0; x < 2; ++x) {
        if (!r[x].is_array() || r[x].size() != kEveOutcomes) {
          throw SchemaError(where + "." + key + ": expected [2][4] bits");
        }
        for (std::size_t ep = 0; ep < kEveOutcomes; ++ep) {
          const Json &bit = r[x][ep];
          if (!bit.is_number_integer() || (bit.get<int>() != 0 && bit.get<int>() != 1)) {
            throw SchemaError(where + "." + key + ": responses must be 0 or 1");
          }
          target[x][ep] = bit.get<std::uint8_t>();
        }
      }
    }
    m.components.push_back(c);
  }
  return m;
}

Json config_to_json(const SeesawConfig &c) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["dims"] = c.dims.values();
  j["max_iterations"] = c.max_iterations;
  j["convergence_tol"] = c.convergence_tol;
  j["restarts"] = c.restarts;
  j["seed"] = c.seed;
  if (c.frozen_eve_povm) {
    Json povm = Json::array();
    for (const auto &m : *c.frozen_eve_povm) povm.push_back(matrix_to_json(m));
    j["frozen_eve_povm"] = std::move(povm);
  }
  if (c.initial_strategy) j["initial_strategy"] = strategy_to_json(*c.initial_strategy);
  return j;
}

SeesawConfig config_from_json(const Json &j) {
  if (!j.is_object()) throw SchemaError("config: expected a JSON object");
  SeesawConfig c;
  if (j.contains("dims")) {
    const Json &d = j["dims"];
    if (!d.is_array() || d.size() != 4) throw SchemaError("config.dims: expected 4 integers");
    std::vector<std::size_t> dims;
    for (const auto &v : d) {
      if (!v.is_number_integer() || v.get<long long>() < 2) throw SchemaError("config.dims: entries must be integers >= 2");
      dims.push_back(v.get<std::size_t>());
    }
    c.dims = SubsystemDims(dims);
  }
  auto integer = [&](const char *key, auto &target) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer()) throw SchemaError(std::string("config.") + key + ": expected an integer");
    target = j[key].get<std::remove_reference_t<decltype(target)>>();
  };
  integer("max_iterations", c.max_iterations);
  integer("restarts", c.restarts);
  integer("seed", c.seed);
  if (j.contains("convergence_tol")) c.convergence_tol = number(j["convergence_tol"], "config.convergence_tol");
  if (j.contains("frozen_eve_povm")) c.frozen_eve_povm = matrix_list<kEveOutcomes>(j["frozen_eve_povm"], "config.frozen_eve_povm");
  if (j.contains("initial_strategy")) c.initial_strategy = strategy_from_json(j["initial_strategy"]);
  return c;
}

Json witness_to_json(const WitnessBreakdown &w) {
  Json j;
  j["total"] = w.total;
  j["conditional_terms"] = w.conditional_terms;
  j["conditional_sum"] = w.conditional_sum();
  j["eve_sign_convention"] = {{"first_term", w.signs.first_term}, {"second_term", w.signs.second_term}};
  return j;
}

Json independence_to_json(const IndependenceReport &r) {
  return Json{{"max_deviation", r.max_deviation},
              {"worst_cell", r.worst_cell},
              {"conditional_deviation", r.conditional_deviation},
              {"marginal_signaling", r.marginal_signaling},
              {"tolerance", r.tolerance},
              {"passed", r.passed}};
}

Json selftest_to_json(const SelfTestReport &r) {
  Json aligners = Json::array();
  for (const auto &u : r.aligners) {
    aligners.push_back({{"angles_a", u.angles_a}, {"angles_b", u.angles_b},
                        {"u_a", matrix_to_json(u.u_a())}, {"u_b", matrix_to_json(u.u_b())}});
  }
  return Json{{"schema_version", kSchemaVersion},
              {"tolerance", r.tolerance},
              {"seed", r.seed},
              {"witness_total", r.witness_total},
              {"oi_passed", r.oi_passed},
              {"oi_deviation", r.oi_deviation},
              {"product_test_distance", r.product_test_distance},
              {"product_test_passed", r.product_test_passed},
              {"conditional_probs", r.conditional_probs},
              {"outcome_present", r.outcome_present},
              {"conditional_chsh_values", r.conditional_chsh_values},
              {"bell_fidelities", r.bell_fidelities},
              {"aligners", aligners},
              {"entangled_eve_elements", r.entangled_eve_elements},
              {"decomposition_residual", r.decomposition_residual},
              {"eve_full_support", r.eve_full_support},
              {"witness_saturated", r.witness_saturated},
              {"conditional_saturated", r.conditional_saturated},
              {"states_certified", r.states_certified},
              {"certified", r.certified},
              {"scope", "qubit devices: A, B, Abar, Bbar of dimension 2"}};
}

Json trace_to_json(const SeesawTrace &t) {
  Json restarts = Json::array();
  for (const auto &r : t.restarts) {
    restarts.push_back({{"sub_seed", r.sub_seed}, {"value", r.value}, {"iterations", r.iterations},
                        {"converged", r.converged}});
  }
  return Json{{"schema_version", kSchemaVersion},
              {"best_value", t.best_value},
              {"converged", t.converged},
              {"iterations", static_cast<int>(t.values.size()) - 1},
              {"monotone", monotonicity_check(t)},
              {"certificate_passed", t.certificate_passed},
              {"restarts", restarts},
              {"final_strategy", strategy_to_json(t.final_strategy)}};
}

std::string trace_to_csv(const SeesawTrace &t) {
  std::ostringstream os;
  os << "iteration,witness\n";
  for (std::size_t k = 0; k < t.values.size(); ++k) os << k << ',' << csv_number(t.values[k]) << '\n';
  return os.str();
}

std::string sweep_to_csv(const std::vector<SweepPoint> &points) {
  std::ostringstream os;
  os << "v,witness,oi_deviation\n";
  for (const auto &p : points) {
    os << csv_number(p.visibility) << ',' << csv_number(p.witness) << ',' << csv_number(p.oi_deviation) << '\n';
  }
  return os.str();
}

Json read_json_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error &e) {
    throw SchemaError(path.string() + ": malformed JSON: " + e.what());
  }
}

void write_text_file(const std::filesystem::path &path, const std::string &contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
}

void write_json_file(const std::filesystem::path &path, const Json &j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace wbl::io
