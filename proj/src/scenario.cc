#include "wbl/scenario.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "wbl/errors.h"

namespace wbl {

namespace {

void check_density(const ComplexMatrix &rho, std::size_t dim, const std::string &name,
                   const Tolerances &tol, StrategyCheck &out) {
  auto fail = [&](const std::string &msg) {
    out.ok = false;
    out.failures.push_back(name + ": " + msg);
  };
  if (!rho.is_square() || rho.rows() != dim) {
    fail("expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
    return;
  }
  if (!is_hermitian(rho, tol.hermiticity)) {
    fail("not Hermitian");
    return;
  }
  const cplx tr = rho.trace();
  if (std::abs(tr - 1.0) > tol.normalization) {
    std::ostringstream os;
    os << "trace " << tr.real() << " != 1";
    fail(os.str());
  }
  const double lo = min_eigenvalue(rho);
  if (lo < -tol.psd_slack) {
    std::ostringstream os;
    os << "not positive semidefinite (min eigenvalue " << lo << ")";
    fail(os.str());
  }
}

void check_observable(const ComplexMatrix &o, std::size_t dim, bool projective,
                      const std::string &name, const Tolerances &tol, StrategyCheck &out) {
  auto fail = [&](const std::string &msg) {
    out.ok = false;
    out.failures.push_back(name + ": " + msg);
  };
  if (!o.is_square() || o.rows() != dim) {
    fail("expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
    return;
  }
  if (!is_hermitian(o, tol.hermiticity)) {
    fail("not Hermitian");
    return;
  }
  const auto ev = eigenvalues(o);
  if (ev.front() > 1.0 + tol.psd_slack || ev.back() < -1.0 - tol.psd_slack) {
    fail("spectrum outside [-1, 1]");
  }
  if (projective && max_abs_diff(o * o, ComplexMatrix::identity(dim)) > tol.projective) {
    fail("does not square to the identity");
  }
}

}  // namespace

StrategyCheck check_strategy(const QuantumStrategy &s, const Tolerances &tol) {
  StrategyCheck out;
  if (s.dims.count() != 4) {
    out.ok = false;
    out.failures.push_back("dims: expected four local dimensions (A, Abar, B, Bbar)");
    return out;
  }
  for (std::size_t k = 0; k < 4; ++k) {
    if (s.dims[k] > 4) {
      out.ok = false;
      out.failures.push_back("dims: local dimensions above 4 are not supported");
      return out;
    }
  }
  check_density(s.source1, s.dim_a() * s.dim_abar(), "source1", tol, out);
  check_density(s.source2, s.dim_b() * s.dim_bbar(), "source2", tol, out);
  for (std::size_t x = 0; x < 2; ++x) {
    check_observable(s.alice_observables[x], s.dim_a(), s.projective_observables,
                     "alice_observables[" + std::to_string(x) + "]", tol, out);
    check_observable(s.bob_observables[x], s.dim_b(), s.projective_observables,
                     "bob_observables[" + std::to_string(x) + "]", tol, out);
  }
  const std::size_t de = s.dim_eve();
  for (std::size_t e = 0; e < kEveOutcomes; ++e) {
    if (!s.eve_povm[e].is_square() || s.eve_povm[e].rows() != de) {
      out.ok = false;
      out.failures.push_back("eve_povm[" + std::to_string(e) + "]: expected a " +
                             std::to_string(de) + "x" + std::to_string(de) + " matrix");
      return out;
    }
  }
  const PovmDiagnostics povm = validate_povm(s.eve_povm, tol);
  if (!povm.valid) {
    out.ok = false;
    out.failures.push_back("eve_povm: " + povm.message);
  }
  return out;
}

void validate_strategy(const QuantumStrategy &s, const Tolerances &tol) {
  const StrategyCheck c = check_strategy(s, tol);
  if (!c.ok) {
    std::string msg = "invalid strategy:";
    for (const auto &f : c.failures) msg += "\n  " + f;
    throw ValidationError(msg);
  }
}

SubsystemDims joint_dims(const QuantumStrategy &s) {
  return SubsystemDims{s.dim_a(), s.dim_b(), s.dim_abar(), s.dim_bbar()};
}

ComplexMatrix outcome_projector(const ComplexMatrix &observable, std::size_t outcome) {
  const ComplexMatrix id = ComplexMatrix::identity(observable.rows());
  return outcome == 0 ? 0.5 * (id + observable) : 0.5 * (id - observable);
}

CorrelationTable CorrelationTable::uniform() {
  CorrelationTable t;
  t.p_.fill(1.0 / 16.0);
  return t;
}

double CorrelationTable::eve_marginal(std::size_t x, std::size_t y, std::size_t e) const {
  double s = 0.0;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) s += (*this)(x, y, a, b, e);
  return s;
}

double CorrelationTable::setting_total(std::size_t x, std::size_t y) const {
  double s = 0.0;
  for (std::size_t e = 0; e < kEveOutcomes; ++e) s += eve_marginal(x, y, e);
  return s;
}

CorrelationTable CorrelationTable::mix(const CorrelationTable &a, const CorrelationTable &b,
                                       double alpha) {
  CorrelationTable out;
  for (std::size_t i = 0; i < kCells; ++i) out.p_[i] = alpha * a.p_[i] + (1.0 - alpha) * b.p_[i];
  return out;
}

TableCheck check_table(const CorrelationTable &t, double entry_slack, double tol) {
  TableCheck c;
  const auto &cells = t.cells();
  c.min_entry = *std::min_element(cells.begin(), cells.end());
  c.max_entry = *std::max_element(cells.begin(), cells.end());
  if (c.min_entry < -entry_slack || c.max_entry > 1.0 + entry_slack) {
    c.ok = false;
    c.failures.push_back("entry outside [0, 1]");
  }
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      c.normalization_defect = std::max(c.normalization_defect, std::abs(t.setting_total(x, y) - 1.0));
  if (c.normalization_defect > tol) {
    c.ok = false;
    c.failures.push_back("a setting (x, y) is not normalized");
  }
  for (std::size_t e = 0; e < kEveOutcomes; ++e) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y) {
        const double pe = t.eve_marginal(x, y, e);
        lo = std::min(lo, pe);
        hi = std::max(hi, pe);
      }
    c.eve_signaling = std::max(c.eve_signaling, hi - lo);
  }
  if (c.eve_signaling > tol) {
    c.ok = false;
    c.failures.push_back("Eve's marginal depends on (x, y)");
  }
  return c;
}

ComplexMatrix joint_state(const QuantumStrategy &s) {
  validate_strategy(s);
  const ComplexMatrix product = kron(s.source1, s.source2);
  // (A, Abar, B, Bbar) -> (A, B, Abar, Bbar)
  return permute_subsystems(product, s.dims, {0, 2, 1, 3});
}

CorrelationTable born_table(const ComplexMatrix &rho_abe, const SubsystemDims &dims_abe,
                            const std::array<ComplexMatrix, 2> &alice_observables,
                            const std::array<ComplexMatrix, 2> &bob_observables,
                            const std::array<ComplexMatrix, kEveOutcomes> &eve_povm) {
  if (dims_abe.count() != 4 || dims_abe.total() != rho_abe.rows() || !rho_abe.is_square()) {
    throw ConfigError("born_table: joint state does not match (A, B, Abar, Bbar) dims");
  }
  // Contract Eve first: sigma_e = Tr_E[(1 (x) N_e) rho] on A (x) B, then
  // p = Tr[(N_a (x) N_b) sigma_e].
  std::array<ComplexMatrix, kEveOutcomes> conditional;
  const ComplexMatrix id_ab = ComplexMatrix::identity(dims_abe[0] * dims_abe[1]);
  for (std::size_t e = 0; e < kEveOutcomes; ++e) {
    conditional[e] = partial_trace(kron(id_ab, eve_povm[e]) * rho_abe, dims_abe, {0, 1});
  }
  CorrelationTable t;
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t a = 0; a < 2; ++a) {
      const ComplexMatrix na = outcome_projector(alice_observables[x], a);
      for (std::size_t y = 0; y < 2; ++y) {
        for (std::size_t b = 0; b < 2; ++b) {
          const ComplexMatrix nab = kron(na, outcome_projector(bob_observables[y], b));
          for (std::size_t e = 0; e < kEveOutcomes; ++e) {
            t(x, y, a, b, e) = trace_of_product(nab, conditional[e]).real();
          }
        }
      }
    }
  }
  return t;
}

CorrelationTable born_table(const QuantumStrategy &s) {
  return born_table(joint_state(s), joint_dims(s), s.alice_observables, s.bob_observables,
                    s.eve_povm);
}

CVector bell_vector(std::size_t i, std::size_t j) {
  CVector v(4, 0.0);
  const double r = 1.0 / std::numbers::sqrt2;
  v[2 * i + j] += r;
  v[2 * (1 - i) + (1 - j)] += (i == 0 ? r : -r);
  return v;
}

CVector phi_plus() { return bell_vector(0, 0); }

std::array<ComplexMatrix, kEveOutcomes> bell_povm() {
  std::array<ComplexMatrix, kEveOutcomes> out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) out[eve_outcome(i, j)] = ComplexMatrix::projector(bell_vector(i, j));
  return out;
}

std::array<ComplexMatrix, kEveOutcomes> computational_povm() {
  std::array<ComplexMatrix, kEveOutcomes> out;
  for (std::size_t e = 0; e < kEveOutcomes; ++e) {
    CVector v(4, 0.0);
    v[e] = 1.0;
    out[e] = ComplexMatrix::projector(v);
  }
  return out;
}

QuantumStrategy reference_strategy() {
  const double r = 1.0 / std::numbers::sqrt2;
  const ComplexMatrix z = pauli::Z(), x = pauli::X();
  QuantumStrategy s;
  s.dims = SubsystemDims{2, 2, 2, 2};
  s.source1 = ComplexMatrix::projector(phi_plus());
  s.source2 = s.source1;
  s.alice_observables = {z, x};
  s.bob_observables = {r * (z + x), r * (x - z)};
  s.eve_povm = bell_povm();
  return s;
}

ComplexMatrix werner_state(double visibility) {
  return visibility * ComplexMatrix::projector(phi_plus()) +
         (1.0 - visibility) * 0.25 * ComplexMatrix::identity(4);
}

QuantumStrategy werner_strategy(double v1, double v2) {
  if (!(v1 >= 0.0 && v1 <= 1.0) || !(v2 >= 0.0 && v2 <= 1.0)) {
    std::ostringstream os;
    os << "werner_strategy: visibilities must lie in [0, 1], got " << v1 << ", " << v2;
    throw ConfigError(os.str());
  }
  QuantumStrategy s = reference_strategy();
  s.source1 = werner_state(v1);
  s.source2 = werner_state(v2);
  return s;
}

}  // namespace wbl
