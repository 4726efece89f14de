#pragma once

#include <vector>

#include "complobs/states.hpp"
#include "complobs/types.hpp"

namespace complobs {

struct Povm {
  std::vector<LabeledOperator> elements;

  // Checks each element PSD within tol and the sum equal to identity.
  static Povm validated(std::vector<LabeledOperator> elements, double tol = kDefaultTol);
  std::size_t outcomes() const { return elements.size(); }
  const DimList& dims() const { return elements.front().dims; }
};

// Rank-1 projective measurement onto an orthonormal basis.
Povm projective_povm(const std::vector<Vector>& basis, const DimList& dims);
// Computational-basis measurement.
Povm computational_povm(std::size_t d, const std::string& label = "B");

struct GuessReport {
  double achieved = 0.0;  // Σ_z w_z Tr[Λ_z ρ_z] of the returned measurement
  double upper = 1.0;     // dual certificate: sound bound on the optimum
  double gap = 1.0;       // upper − achieved
  int iterations = 0;
  bool converged = false;
  Povm measurement;
};

struct SecureOutcome {
  double weight_factor = 0.0;  // √(p_z/d)
  double fidelity = 0.0;       // F(conditional env state, env marginal)
};

struct SecureReport {
  double value = 0.0;  // Σ_z √(p_z/d) F(φ_z^env, ψ^env)
  std::vector<SecureOutcome> per_outcome;
};

// Σ_z w_z Tr[Λ_z ρ_z] for a fixed measurement.
double p_guess_with(const Povm& povm, const Ensemble& ens);

// Pretty-good measurement ρ̄^{-1/2} w_z ρ_z ρ̄^{-1/2}; the identity deficit on
// ker(ρ̄) is split equally among outcomes (the ensemble puts no weight there).
Povm pgm(const Ensemble& ens, double tol = kDefaultTol);

// Exact two-hypothesis optimum: projectors onto the positive/negative
// eigenspaces of w₀ρ₀ − w₁ρ₁, achieving ½(1 + ‖w₀ρ₀ − w₁ρ₁‖₁).
GuessReport helstrom_binary(const Ensemble& ens);

struct OptimizeOptions {
  double tol = 1e-8;
  int max_iter = 5000;
};

// Fixed-point minimum-error solver: PGM initialization, then
// Λ_z ← R^{-1/2} G_z Λ_z G_z R^{-1/2} with R = Σ_z G_z Λ_z G_z, G_z = w_z ρ_z.
// The upper bound comes from Y = Herm(Σ_z G_z Λ_z) shifted until Y ⪰ G_z for
// every z; Tr Y then bounds the optimum from above (weak duality). Reports the
// best iterate and the tightest bound seen. Never throws on non-convergence;
// the report carries converged = false instead.
GuessReport optimize_min_error(const Ensemble& ens, const OptimizeOptions& options = {});

// p_secure(obs^A | env) = Σ_z √(p_z/d) F(φ_z^env, ψ^env): 1 exactly when the
// outcome is uniform and the env conditionals all equal the marginal.
SecureReport p_secure(const PureState& psi, Observable obs,
                      const std::vector<std::string>& env);

// Brute-force lower bound on the guessing probability for small ensembles
// (composite dimension ≤ 4, outcomes ≤ 4): hierarchical grid over projective
// measurements — on the ensemble's space with optimal outcome assignment when
// outcomes ≤ dim, else rank-1 bases of the Naimark extension truncated back.
// `resolution` is the terminal angular grid step. Test oracle; independent of
// the fixed-point solver.
double qubit_grid_oracle(const Ensemble& ens, double resolution);

}  // namespace complobs
