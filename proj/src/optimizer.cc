#include "wbl/optimizer.h"

#include <cmath>
#include <future>
#include <sstream>

#include "wbl/errors.h"
#include "wbl/random.h"
#include "wbl/witness.h"

namespace wbl {

namespace {

// Orthonormal basis of Eve's space with an outcome label per vector.
struct EveBasis {
  std::vector<CVector> vectors;
  std::vector<std::size_t> labels;

  std::array<ComplexMatrix, kEveOutcomes> povm(std::size_t dim) const {
    std::array<ComplexMatrix, kEveOutcomes> out;
    for (auto &m : out) m = ComplexMatrix(dim, dim);
    for (std::size_t k = 0; k < vectors.size(); ++k) out[labels[k]] += ComplexMatrix::projector(vectors[k]);
    return out;
  }
};

EveBasis basis_from_povm(const std::array<ComplexMatrix, kEveOutcomes> &povm, std::size_t dim) {
  EveBasis b;
  for (std::size_t e = 0; e < kEveOutcomes; ++e) {
    const EigenDecomposition eig = hermitian_eig(hermitian_part(povm[e]));
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
      const double l = eig.values[k];
      if (std::abs(l) > 1e-9 && std::abs(l - 1.0) > 1e-9) {
        throw ConfigError("seesaw: a seeded Eve POVM must be projective unless Eve is frozen");
      }
      if (l > 0.5) {
        b.vectors.push_back(eig.vector(k));
        b.labels.push_back(e);
      }
    }
  }
  if (b.vectors.size() != dim) {
    throw ConfigError("seesaw: seeded Eve POVM does not span Eve's space");
  }
  return b;
}

ComplexMatrix sign_of(const ComplexMatrix &f) {
  // Zero eigenvalues go to +1.
  return hermitian_part(spectral_map(hermitian_part(f), [](double l) { return l >= -1e-12 ? 1.0 : -1.0; }));
}

ComplexMatrix leading_projector(const ComplexMatrix &g) {
  const EigenDecomposition eig = hermitian_eig(hermitian_part(g));
  return ComplexMatrix::projector(eig.vector(0));
}

class SeesawState {
 public:
  SeesawState(const QuantumStrategy &s, const SeesawConfig &config)
      : s_(s), dims_abe_(joint_dims(s)), frozen_(config.frozen_eve_povm.has_value()) {
    if (frozen_) {
      s_.eve_povm = *config.frozen_eve_povm;
    } else {
      basis_ = basis_from_povm(s_.eve_povm, s_.dim_eve());
      s_.eve_povm = basis_.povm(s_.dim_eve());
    }
    refresh_state();
  }

  double value() const {
    return trace_of_product(witness_operator(s_.alice_observables, s_.bob_observables, s_.eve_povm), rho_)
        .real();
  }

  const QuantumStrategy &strategy() const { return s_; }

  void sweep() {
    alice_step();
    bob_step();
    if (!frozen_) eve_step();
    source_steps();
  }

 private:
  void refresh_state() {
    rho_ = permute_subsystems(kron(s_.source1, s_.source2), s_.dims, {0, 2, 1, 3});
  }

  void alice_step() {
    const std::size_t db = s_.dim_b();
    const ComplexMatrix id_a = ComplexMatrix::identity(s_.dim_a());
    for (std::size_t x = 0; x < 2; ++x) {
      ComplexMatrix rest(db * s_.dim_eve(), db * s_.dim_eve());
      for (std::size_t y = 0; y < 2; ++y)
        for (std::size_t e = 0; e < kEveOutcomes; ++e)
          rest += witness_coefficient(x, y, e) * kron(s_.bob_observables[y], s_.eve_povm[e]);
      const ComplexMatrix f = partial_trace(kron(id_a, rest) * rho_, dims_abe_, {0});
      s_.alice_observables[x] = sign_of(f);
    }
  }

  void bob_step() {
    const ComplexMatrix id_b = ComplexMatrix::identity(s_.dim_b());
    for (std::size_t y = 0; y < 2; ++y) {
      ComplexMatrix op(rho_.rows(), rho_.cols());
      for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t e = 0; e < kEveOutcomes; ++e)
          op += witness_coefficient(x, y, e) *
                kron({&s_.alice_observables[x], &id_b, &s_.eve_povm[e]});
      const ComplexMatrix f = partial_trace(op * rho_, dims_abe_, {1});
      s_.bob_observables[y] = sign_of(f);
    }
  }

  void eve_step() {
    const std::size_t de = s_.dim_eve();
    const ComplexMatrix id_e = ComplexMatrix::identity(de);
    std::array<ComplexMatrix, kEveOutcomes> k;
    for (auto &m : k) m = ComplexMatrix(de, de);
    for (std::size_t x = 0; x < 2; ++x) {
      for (std::size_t y = 0; y < 2; ++y) {
        const ComplexMatrix reduced = partial_trace(
            kron({&s_.alice_observables[x], &s_.bob_observables[y], &id_e}) * rho_, dims_abe_, {2, 3});
        for (std::size_t e = 0; e < kEveOutcomes; ++e) k[e] += witness_coefficient(x, y, e) * reduced;
      }
    }
    for (auto &m : k) m = hermitian_part(m);

    auto score = [&](std::size_t idx, const CVector &v) { return expectation(k[basis_.labels[idx]], v).real(); };

    // Pairwise rotations: within span{u_p, u_q} the best split is the top
    // eigenvector of (K_p - K_q) restricted to that plane.
    for (int pass = 0; pass < 50; ++pass) {
      double gained = 0.0;
      for (std::size_t p = 0; p + 1 < de; ++p) {
        for (std::size_t q = p + 1; q < de; ++q) {
          if (basis_.labels[p] == basis_.labels[q]) continue;
          const CVector &up = basis_.vectors[p];
          const CVector &uq = basis_.vectors[q];
          const ComplexMatrix diff = k[basis_.labels[p]] - k[basis_.labels[q]];
          const CVector dp = diff * up, dq = diff * uq;
          const ComplexMatrix block{{inner(up, dp), inner(up, dq)}, {inner(uq, dp), inner(uq, dq)}};
          const EigenDecomposition eig = hermitian_eig(hermitian_part(block));
          const cplx c1 = eig.vectors(0, 0), c2 = eig.vectors(1, 0);
          CVector vp(de), vq(de);
          for (std::size_t r = 0; r < de; ++r) {
            vp[r] = c1 * up[r] + c2 * uq[r];
            vq[r] = -std::conj(c2) * up[r] + std::conj(c1) * uq[r];
          }
          const double before = score(p, up) + score(q, uq);
          const double after = score(p, vp) + score(q, vq);
          if (after > before) {
            basis_.vectors[p] = std::move(vp);
            basis_.vectors[q] = std::move(vq);
            gained += after - before;
          }
        }
      }
      if (gained < 1e-15) break;
    }
    s_.eve_povm = basis_.povm(de);
  }

  void source_steps() {
    const ComplexMatrix w = witness_operator(s_.alice_observables, s_.bob_observables, s_.eve_povm);
    // W on (A, B, Abar, Bbar) -> (A, Abar, B, Bbar)
    const ComplexMatrix w_src = permute_subsystems(w, dims_abe_, {0, 2, 1, 3});
    const ComplexMatrix id1 = ComplexMatrix::identity(s_.dim_a() * s_.dim_abar());
    const ComplexMatrix id2 = ComplexMatrix::identity(s_.dim_b() * s_.dim_bbar());

    const ComplexMatrix g1 = partial_trace(w_src * kron(id1, s_.source2), s_.dims, {0, 1});
    const ComplexMatrix cand1 = leading_projector(g1);
    if (trace_of_product(g1, cand1).real() > trace_of_product(g1, s_.source1).real()) s_.source1 = cand1;

    const ComplexMatrix g2 = partial_trace(w_src * kron(s_.source1, id2), s_.dims, {2, 3});
    const ComplexMatrix cand2 = leading_projector(g2);
    if (trace_of_product(g2, cand2).real() > trace_of_product(g2, s_.source2).real()) s_.source2 = cand2;

    refresh_state();
  }

  QuantumStrategy s_;
  SubsystemDims dims_abe_;
  bool frozen_;
  EveBasis basis_;
  ComplexMatrix rho_;
};

std::uint64_t derive_sub_seed(std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

QuantumStrategy random_start(const SeesawConfig &config, std::uint64_t sub_seed) {
  Rng rng(sub_seed);
  QuantumStrategy s = random_strategy(config.dims, rng);
  if (config.frozen_eve_povm) s.eve_povm = *config.frozen_eve_povm;
  return s;
}

}  // namespace

void validate_config(const SeesawConfig &c) {
  if (c.max_iterations < 1) throw ConfigError("seesaw: max_iterations must be >= 1");
  if (!(c.convergence_tol > 0.0)) throw ConfigError("seesaw: convergence_tol must be > 0");
  if (c.restarts < 1) throw ConfigError("seesaw: restarts must be >= 1");
  if (c.dims.count() != 4) throw ConfigError("seesaw: dims must list (A, Abar, B, Bbar)");
  for (std::size_t k = 0; k < 4; ++k) {
    if (c.dims[k] > 4) throw ConfigError("seesaw: local dimensions above 4 are not supported");
  }
  if (c.frozen_eve_povm) {
    const std::size_t de = c.dims[1] * c.dims[3];
    for (const auto &m : *c.frozen_eve_povm) {
      if (m.rows() != de || !m.is_square()) throw ConfigError("seesaw: frozen Eve POVM has the wrong size");
    }
    if (!validate_povm(*c.frozen_eve_povm).valid) throw ConfigError("seesaw: frozen Eve POVM is invalid");
  }
}

SeesawTrace seesaw_run(const QuantumStrategy &start, const SeesawConfig &config,
                       const SeesawObserver &observer) {
  validate_config(config);
  validate_strategy(start);
  SeesawState state(start, config);
  SeesawTrace trace;
  double current = state.value();
  trace.values.push_back(current);
  for (int it = 1; it <= config.max_iterations; ++it) {
    state.sweep();
    const double next = state.value();
    trace.values.push_back(next);
    if (observer) observer(it, state.strategy(), next);
    const bool done = std::abs(next - current) < config.convergence_tol;
    current = next;
    if (done) {
      trace.converged = true;
      break;
    }
  }
  trace.final_strategy = state.strategy();
  trace.best_value = current;
  trace.certificate_passed = quantum_bound_certificate(trace.final_strategy).passed;
  return trace;
}

SeesawTrace seesaw_maximize(const SeesawConfig &config) {
  validate_config(config);
  std::vector<std::future<SeesawTrace>> jobs;
  std::vector<std::uint64_t> seeds;
  for (int r = 0; r < config.restarts; ++r) {
    const std::uint64_t sub = derive_sub_seed(config.seed, r);
    seeds.push_back(sub);
    jobs.push_back(std::async(std::launch::async, [&config, sub, r] {
      QuantumStrategy start = (r == 0 && config.initial_strategy) ? *config.initial_strategy
                                                                   : random_start(config, sub);
      return seesaw_run(start, config);
    }));
  }
  SeesawTrace best;
  bool have_best = false;
  std::vector<RestartSummary> summaries;
  for (std::size_t r = 0; r < jobs.size(); ++r) {
    SeesawTrace t = jobs[r].get();
    summaries.push_back({seeds[r], t.best_value, static_cast<int>(t.values.size()) - 1, t.converged});
    if (!have_best || t.best_value > best.best_value) {
      best = std::move(t);
      have_best = true;
    }
  }
  best.restarts = std::move(summaries);
  return best;
}

bool monotonicity_check(const SeesawTrace &trace, double tol) {
  for (std::size_t k = 1; k < trace.values.size(); ++k) {
    if (trace.values[k] < trace.values[k - 1] - tol) return false;
  }
  return true;
}

}  // namespace wbl
