#include "wbl/selftest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "wbl/correlations.h"
#include "wbl/errors.h"
#include "wbl/witness.h"

namespace wbl {

ProductTestResult product_state_test(const ComplexMatrix &rho_ab, const SubsystemDims &dims,
                                     double tol) {
  if (dims.count() != 2) throw ConfigError("product_state_test: expected two subsystems");
  if (!rho_ab.is_square() || rho_ab.rows() != dims.total()) {
    throw ValidationError("product_state_test: state does not match dims");
  }
  if (!is_hermitian(rho_ab) || std::abs(rho_ab.trace() - 1.0) > kTol.normalization ||
      min_eigenvalue(rho_ab) < -kTol.psd_slack) {
    throw ValidationError("product_state_test: input is not a density matrix");
  }
  const ComplexMatrix rho_a = partial_trace(rho_ab, dims, {0});
  const ComplexMatrix rho_b = partial_trace(rho_ab, dims, {1});
  ProductTestResult r;
  r.distance = trace_norm(hermitian_part(rho_ab - kron(rho_a, rho_b)));
  r.passed = r.distance <= tol;
  return r;
}

std::array<ConditionalState, kEveOutcomes> conditional_states(const QuantumStrategy &s) {
  const ComplexMatrix rho = joint_state(s);
  const SubsystemDims dims = joint_dims(s);
  const ComplexMatrix id_ab = ComplexMatrix::identity(s.dim_a() * s.dim_b());
  std::array<ConditionalState, kEveOutcomes> out;
  for (std::size_t e = 0; e < kEveOutcomes; ++e) {
    const ComplexMatrix m = partial_trace(kron(id_ab, s.eve_povm[e]) * rho, dims, {0, 1});
    out[e].probability = m.trace().real();
    if (out[e].probability > kOutcomeFloor) {
      out[e].rho = hermitian_part(m) * (1.0 / out[e].probability);
    }
  }
  return out;
}

ComplexMatrix qubit_unitary(double alpha, double beta, double gamma) {
  auto rz = [](double t) {
    return ComplexMatrix{{std::polar(1.0, -t / 2), 0.0}, {0.0, std::polar(1.0, t / 2)}};
  };
  const double c = std::cos(beta / 2), s = std::sin(beta / 2);
  const ComplexMatrix ry{{c, -s}, {s, c}};
  return rz(alpha) * ry * rz(gamma);
}

double aligned_overlap(const ComplexMatrix &rho, std::size_t i, std::size_t j,
                       const LocalUnitaryPair &u) {
  const ComplexMatrix local = kron(u.u_a(), u.u_b());
  // (U rho U^dagger) overlap with phi  ==  rho overlap with U^dagger phi
  const CVector psi = local.adjoint() * bell_vector(i, j);
  return expectation(rho, psi).real();
}

BellFidelity bell_fidelity(const ComplexMatrix &rho, std::size_t i, std::size_t j,
                           const FidelityOptions &opts) {
  if (rho.rows() != 4 || !rho.is_square()) {
    throw ConfigError("bell_fidelity: expected a two-qubit density matrix");
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);

  auto objective = [&](const std::array<double, 6> &p) {
    LocalUnitaryPair u{{p[0], p[1], p[2]}, {p[3], p[4], p[5]}};
    return aligned_overlap(rho, i, j, u);
  };

  BellFidelity best;
  best.fidelity = -1.0;
  for (int start = 0; start < std::max(1, opts.starts); ++start) {
    std::array<double, 6> p{};
    if (start > 0) {
      for (double &v : p) v = angle(rng);
    }
    double value = objective(p);
    double step = opts.initial_step;
    while (step > opts.final_step) {
      bool improved = false;
      for (std::size_t k = 0; k < p.size(); ++k) {
        for (double dir : {1.0, -1.0}) {
          std::array<double, 6> trial = p;
          trial[k] += dir * step;
          const double v = objective(trial);
          if (v > value) {
            value = v;
            p = trial;
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    if (value > best.fidelity) {
      best.fidelity = value;
      best.aligner = LocalUnitaryPair{{p[0], p[1], p[2]}, {p[3], p[4], p[5]}};
    }
  }
  return best;
}

bool is_npt(const ComplexMatrix &op_2x2, double tol) {
  const ComplexMatrix pt = partial_transpose(op_2x2, SubsystemDims{2, 2}, 1);
  return min_eigenvalue(hermitian_part(pt)) < -tol;
}

std::array<bool, kEveOutcomes> entangled_povm_elements(const QuantumStrategy &s) {
  if (s.dim_abar() != 2 || s.dim_bbar() != 2) {
    throw ConfigError("entangled_povm_elements: PPT test is exact only for qubit Abar, Bbar");
  }
  std::array<bool, kEveOutcomes> out{};
  for (std::size_t e = 0; e < kEveOutcomes; ++e) out[e] = is_npt(s.eve_povm[e]);
  return out;
}

SelfTestReport selftest_report(const QuantumStrategy &s, double tol, const FidelityOptions &opts) {
  if (s.dim_a() != 2 || s.dim_b() != 2) {
    throw ConfigError("selftest_report: certification is implemented for qubit Alice and Bob");
  }
  validate_strategy(s);
  SelfTestReport r;
  r.tolerance = tol;
  r.seed = opts.seed;

  const CorrelationTable table = born_table(s);
  r.witness_total = eval_witness(table).total;
  const IndependenceReport oi = check_operational_independence(table, tol);
  r.oi_passed = oi.passed;
  r.oi_deviation = oi.max_deviation;

  const ComplexMatrix rho_abe = joint_state(s);
  const ComplexMatrix rho_ab = hermitian_part(partial_trace(rho_abe, joint_dims(s), {0, 1}));
  const ProductTestResult product = product_state_test(rho_ab, SubsystemDims{2, 2}, tol);
  r.product_test_distance = product.distance;
  r.product_test_passed = product.passed;

  if (s.dim_abar() == 2 && s.dim_bbar() == 2) r.entangled_eve_elements = entangled_povm_elements(s);

  const auto cond = conditional_states(s);
  double weighted = 0.0;
  r.eve_full_support = true;
  r.conditional_saturated = true;
  r.states_certified = true;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const std::size_t e = eve_outcome(i, j);
      r.conditional_probs[e] = cond[e].probability;
      r.outcome_present[e] = cond[e].rho.has_value();
      if (!cond[e].rho) {
        r.eve_full_support = false;
        r.conditional_saturated = false;
        r.states_certified = false;
        continue;
      }
      const ComplexMatrix &rho = *cond[e].rho;
      r.conditional_chsh_values[e] = trace_of_product(conditional_chsh_operator(i, j, s), rho).real();
      weighted += cond[e].probability * r.conditional_chsh_values[e];
      FidelityOptions per = opts;
      per.seed = opts.seed + e;
      const BellFidelity f = bell_fidelity(rho, i, j, per);
      r.bell_fidelities[e] = f.fidelity;
      r.aligners[e] = f.aligner;
      if (std::abs(r.conditional_chsh_values[e] - kQuantumBound) > tol) r.conditional_saturated = false;
      if (f.fidelity < 1.0 - tol) r.states_certified = false;
    }
  }
  r.decomposition_residual = std::abs(weighted - r.witness_total);
  r.witness_saturated = r.witness_total >= kQuantumBound - tol;
  r.certified = r.witness_saturated && r.oi_passed && r.product_test_passed && r.eve_full_support &&
                r.conditional_saturated && r.states_certified;
  return r;
}

std::vector<SweepPoint> visibility_sweep(const std::vector<double> &grid) {
  std::vector<SweepPoint> out;
  out.reserve(grid.size());
  for (double v : grid) {
    const CorrelationTable t = born_table(werner_strategy(v, v));
    out.push_back({v, eval_witness(t).total, check_operational_independence(t).max_deviation});
  }
  return out;
}

double critical_visibility(double precision) {
  auto witness_at = [](double v) { return eval_witness(born_table(werner_strategy(v, v))).total; };
  double lo = 0.0, hi = 1.0;
  while (hi - lo > precision) {
    const double mid = 0.5 * (lo + hi);
    if (witness_at(mid) < kClassicalBound) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace wbl
