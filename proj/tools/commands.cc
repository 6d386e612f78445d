#include "commands.h"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <vector>

#include "wbl/classical.h"
#include "wbl/correlations.h"
#include "wbl/errors.h"
#include "wbl/io.h"
#include "wbl/optimizer.h"
#include "wbl/scenario.h"
#include "wbl/selftest.h"
#include "wbl/witness.h"

namespace wbl::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

// Collects what a run read and wrote; emitted as <command>.manifest.json.
class RunManifest {
 public:
  explicit RunManifest(std::string command)
      : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {}

  void input(const fs::path &p) { inputs_.push_back(p.string()); }
  void output(const fs::path &p) { outputs_.push_back(p.string()); }
  void seed(std::uint64_t s) { seed_ = s; }

  void write(const fs::path &dir, int exit_code) {
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    Json j{{"schema_version", kSchemaVersion},
           {"command", command_},
           {"inputs", inputs_},
           {"outputs", outputs_},
           {"tool_version", kToolVersion},
           {"wall_clock_seconds", seconds},
           {"exit_code", exit_code}};
    j["seed"] = seed_ ? Json(*seed_) : Json(nullptr);
    io::write_json_file(dir / (command_ + ".manifest.json"), j);
  }

 private:
  std::string command_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::optional<std::uint64_t> seed_;
};

template <typename Body>
int guarded(const char *command, const fs::path &out_dir, std::ostream &err, Body &&body) {
  RunManifest manifest(command);
  int code = kOk;
  try {
    code = body(manifest);
  } catch (const SchemaError &e) {
    err << "error: schema: " << e.what() << '\n';
    code = kInputError;
  } catch (const ConfigError &e) {
    err << "error: configuration: " << e.what() << '\n';
    code = kInputError;
  } catch (const ValidationError &e) {
    err << "error: validation: " << e.what() << '\n';
    code = kInputError;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    code = kNumericalFailure;
  }
  try {
    manifest.write(out_dir, code);
  } catch (const std::exception &e) {
    err << "warning: could not write manifest: " << e.what() << '\n';
  }
  return code;
}

QuantumStrategy load_strategy(const fs::path &path) {
  return io::strategy_from_json(io::read_json_file(path));
}

}  // namespace

fs::path resolve_out_dir(const std::optional<fs::path> &flag) {
  if (flag) return *flag;
  if (const char *env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  return "wbl_out";
}

int cmd_reference(const ReferenceOptions &opts, std::ostream &out, std::ostream &err) {
  return guarded("reference", opts.out_dir, err, [&](RunManifest &m) {
    QuantumStrategy s = reference_strategy();
    if (opts.strategy) {
      m.input(*opts.strategy);
      s = load_strategy(*opts.strategy);
    }
    validate_strategy(s);
    const CorrelationTable table = born_table(s);
    const TableCheck check = check_table(table);
    const WitnessBreakdown w = eval_witness(table);
    const IndependenceReport oi = check_operational_independence(table, opts.tol);

    Json j{{"schema_version", kSchemaVersion},
           {"witness", io::witness_to_json(w)},
           {"operational_independence", io::independence_to_json(oi)},
           {"table_valid", check.ok},
           {"table_failures", check.failures},
           {"table", io::table_to_json(table)}};
    const fs::path json_path = opts.out_dir / "reference.json";
    const fs::path csv_path = opts.out_dir / "reference_table.csv";
    io::write_json_file(json_path, j);
    io::write_text_file(csv_path, io::table_to_csv(table));
    m.output(json_path);
    m.output(csv_path);

    out << std::setprecision(12) << "witness I = " << w.total << "  (2*sqrt(2) = " << kQuantumBound << ")\n"
        << "conditional terms [i][j] = " << w.conditional_terms[0][0] << ' ' << w.conditional_terms[0][1]
        << ' ' << w.conditional_terms[1][0] << ' ' << w.conditional_terms[1][1] << '\n'
        << "operational independence: " << (oi.passed ? "passed" : "failed")
        << " (max deviation " << oi.max_deviation << ")\n"
        << "table invariants: " << (check.ok ? "ok" : "FAILED") << '\n';
    for (const auto &f : check.failures) err << "  " << f << '\n';

    const bool decomposition_ok = std::abs(w.total - w.conditional_sum()) <= 1e-12;
    return (check.ok && decomposition_ok) ? kOk : kNumericalFailure;
  });
}

int cmd_classical_bound(const ClassicalOptions &opts, std::ostream &out, std::ostream &err) {
  return guarded("classical-bound", opts.out_dir, err, [&](RunManifest &m) {
    const VertexFilter filter = opts.filter_oi ? VertexFilter::kOperationallyIndependent : VertexFilter::kNone;
    const std::vector<DeterministicStrategy> vertices = enumerate_vertices();
    const ClassicalBoundResult reduced = classical_bound(filter);

    std::ostringstream csv;
    csv << "index,e,a0,a1,b0,b1,witness\n";
    {
      std::size_t k = 0;
      for (const auto &v : vertices) {
        const CorrelationTable t = table_from_vertex(v);
        if (filter == VertexFilter::kOperationallyIndependent && !check_operational_independence(t).passed) continue;
        csv << k++ << ',' << int(v.eve_outcome) << ',' << int(v.alice(0)) << ',' << int(v.alice(1)) << ','
            << int(v.bob(0)) << ',' << int(v.bob(1)) << ',' << eval_witness(t).total << '\n';
      }
    }
    Json j{{"schema_version", kSchemaVersion},
           {"filter", opts.filter_oi ? "operationally-independent" : "none"},
           {"reduced", {{"vertices", reduced.evaluated}, {"max", reduced.value}, {"argmax", io::vertex_to_json(reduced.argmax)}}}};
    out << std::setprecision(15) << "reduced vertices: " << reduced.evaluated << ", max witness = " << reduced.value << '\n';

    bool ok = opts.filter_oi ? reduced.value <= kClassicalBound + 1e-12
                             : std::abs(reduced.value - kClassicalBound) <= 1e-12;
    if (opts.exhaustive) {
      const ClassicalBoundResult full = classical_bound_exhaustive(filter);
      j["exhaustive"] = {{"strategies", full.evaluated}, {"max", full.value}, {"argmax", io::vertex_to_json(full.argmax)}};
      out << "exhaustive strategies: " << full.evaluated << ", max witness = " << full.value << '\n';
      ok = ok && (opts.filter_oi ? full.value <= kClassicalBound + 1e-12
                                 : std::abs(full.value - kClassicalBound) <= 1e-12);
      ok = ok && std::abs(full.value - reduced.value) <= 1e-12;
    }
    j["passed"] = ok;
    const fs::path json_path = opts.out_dir / "classical_bound.json";
    const fs::path csv_path = opts.out_dir / "classical_vertices.csv";
    io::write_json_file(json_path, j);
    io::write_text_file(csv_path, csv.str());
    m.output(json_path);
    m.output(csv_path);
    if (!ok) err << "classical bound deviates from 2\n";
    return ok ? kOk : kNumericalFailure;
  });
}

int cmd_sweep(const SweepOptions &opts, std::ostream &out, std::ostream &err) {
  return guarded("sweep", opts.out_dir, err, [&](RunManifest &m) {
    if (!(opts.vmin >= 0.0 && opts.vmax <= 1.0 && opts.vmin <= opts.vmax) || opts.steps < 1 ||
        (opts.steps == 1 && opts.vmin != opts.vmax)) {
      throw ConfigError("sweep: need 0 <= vmin <= vmax <= 1 and steps >= 1 (steps = 1 requires vmin = vmax)");
    }
    std::vector<double> grid;
    for (int k = 0; k < opts.steps; ++k) {
      grid.push_back(opts.steps == 1 ? opts.vmin
                                     : opts.vmin + (opts.vmax - opts.vmin) * k / (opts.steps - 1));
    }
    const std::vector<SweepPoint> points = visibility_sweep(grid);
    const double critical = critical_visibility();
    bool monotone = true;
    for (std::size_t k = 1; k < points.size(); ++k) {
      if (points[k].witness < points[k - 1].witness - 1e-12) monotone = false;
    }
    const fs::path csv_path = opts.out_dir / "sweep.csv";
    const fs::path json_path = opts.out_dir / "sweep.json";
    io::write_text_file(csv_path, io::sweep_to_csv(points));
    io::write_json_file(json_path, Json{{"schema_version", kSchemaVersion},
                                        {"points", points.size()},
                                        {"monotone", monotone},
                                        {"critical_visibility", critical},
                                        {"critical_visibility_exact", std::pow(2.0, -0.25)}});
    m.output(csv_path);
    m.output(json_path);
    out << std::setprecision(12);
    for (const auto &p : points) out << p.visibility << ',' << p.witness << ',' << p.oi_deviation << '\n';
    out << "critical visibility v* = " << critical << '\n';
    return monotone ? kOk : kNumericalFailure;
  });
}

int cmd_seesaw(const SeesawOptions &opts, std::ostream &out, std::ostream &err) {
  return guarded("seesaw", opts.out_dir, err, [&](RunManifest &m) {
    SeesawConfig config;
    if (opts.config) {
      m.input(*opts.config);
      config = io::config_from_json(io::read_json_file(*opts.config));
    }
    if (opts.seed) config.seed = *opts.seed;
    if (opts.restarts) config.restarts = *opts.restarts;
    if (opts.freeze_product_eve) config.frozen_eve_povm = computational_povm();
    m.seed(config.seed);
    const SeesawTrace trace = seesaw_maximize(config);

    const fs::path json_path = opts.out_dir / "seesaw.json";
    const fs::path csv_path = opts.out_dir / "seesaw_trace.csv";
    Json j = io::trace_to_json(trace);
    j["config"] = io::config_to_json(config);
    io::write_json_file(json_path, j);
    io::write_text_file(csv_path, io::trace_to_csv(trace));
    m.output(json_path);
    m.output(csv_path);

    out << std::setprecision(12) << "best witness = " << trace.best_value << " over " << config.restarts
        << " restarts (converged: " << (trace.converged ? "yes" : "no") << ")\n";
    if (trace.best_value > kQuantumBound + 1e-9 || !monotonicity_check(trace)) {
      err << "see-saw exceeded the quantum bound or decreased\n";
      return kNumericalFailure;
    }
    if (opts.require_converged && !trace.converged) {
      err << "see-saw did not converge within max_iterations\n";
      return kNumericalFailure;
    }
    return kOk;
  });
}

int cmd_selftest(const SelftestOptions &opts, std::ostream &out, std::ostream &err) {
  return guarded("selftest", opts.out_dir, err, [&](RunManifest &m) {
    QuantumStrategy s = reference_strategy();
    if (opts.strategy) {
      m.input(*opts.strategy);
      s = load_strategy(*opts.strategy);
    } else if (opts.werner_visibility) {
      s = werner_strategy(*opts.werner_visibility, *opts.werner_visibility);
    }
    m.seed(opts.seed);
    FidelityOptions fo;
    fo.seed = opts.seed;
    const SelfTestReport r = selftest_report(s, opts.tol, fo);
    const fs::path json_path = opts.out_dir / "selftest.json";
    io::write_json_file(json_path, io::selftest_to_json(r));
    m.output(json_path);

    out << std::setprecision(12) << "witness = " << r.witness_total << '\n'
        << "operational independence: " << (r.oi_passed ? "passed" : "failed")
        << ", product-state distance = " << r.product_test_distance << '\n';
    for (std::size_t e = 0; e < kEveOutcomes; ++e) {
      out << "  e=" << e << "  p=" << r.conditional_probs[e] << "  CHSH=" << r.conditional_chsh_values[e]
          << "  fidelity=" << r.bell_fidelities[e] << '\n';
    }
    out << "certified: " << (r.certified ? "true" : "false") << '\n';
    if (opts.require_certified && !r.certified) return kNumericalFailure;
    return kOk;
  });
}

int cmd_strategy(const StrategyExportOptions &opts, std::ostream &out, std::ostream &err) {
  try {
    QuantumStrategy s;
    if (opts.preset == "reference") {
      s = reference_strategy();
    } else if (opts.preset == "bit-example") {
      s = bit_example_strategy();
    } else if (opts.preset == "werner") {
      s = werner_strategy(opts.visibility, opts.visibility);
    } else {
      throw ConfigError("unknown preset '" + opts.preset + "'");
    }
    const Json j = io::strategy_to_json(s);
    if (opts.output) {
      io::write_json_file(*opts.output, j);
    } else {
      out << j.dump(2) << '\n';
    }
    return kOk;
  } catch (const ConfigError &e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace wbl::cli
