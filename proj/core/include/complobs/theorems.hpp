#pragma once

#include <optional>

#include "complobs/measurements.hpp"
#include "complobs/recovery.hpp"
#include "complobs/states.hpp"

namespace complobs {

struct SolverSummary {
  double gap_z = 0.0;
  double gap_x = 0.0;
  double achieved_z = 0.0;
  double achieved_x = 0.0;
  int iterations_z = 0;
  int iterations_x = 0;
  bool converged_z = true;
  bool converged_x = true;
};

struct TheoremCertificate {
  int theorem = 1;  // 1, 2, or 3 (experimental hybrid)
  double eps_z = 0.0;
  double eps_x = 0.0;
  double bound = 0.0;  // capped at 1: normalized distance cannot exceed 1
  double bound_uncapped = 0.0;
  double achieved_distance = 0.0;
  bool holds = false;  // achieved_distance ≤ bound + tol
  double tol = 1e-6;
  bool experimental = false;
  SolverSummary solver;
  std::optional<SecureReport> secure_z;
  std::optional<SecureReport> secure_x;
};

// Theorem-1 certificate for explicitly given measurements: ε's are the
// achieved guessing errors of Λ_z on the Z-ensemble of ψ over B and of Γ_x on
// the X-ensemble of ψ_Z over CB; the distance is measured for the recovery
// isometry composed from exactly these measurements, so the √(2ε_x)+√(2ε_z)
// bound is guaranteed and holds=false indicates an implementation bug.
// States must carry labels A,B,R in that order.
TheoremCertificate theorem1_certificate(const PureState& psi, const Povm& lambda_z,
                                        const Povm& gamma_x, double tol = 1e-6);

struct OptimizedMeasurements {
  GuessReport z;  // guessing Z^A from B of ψ
  GuessReport x;  // guessing X^A from CB of ψ_Z
};
OptimizedMeasurements optimize_recovery_measurements(const PureState& psi,
                                                     const OptimizeOptions& options = {});

TheoremCertificate theorem1_certificate_optimized(const PureState& psi, double tol = 1e-6,
                                                  const OptimizeOptions& options = {});

// Theorem-2 certificate: ε_x = 1 − p_secure(X^A|CR)_{ψ_Z} and
// ε_z = 1 − p_secure(Z^A|R)_ψ, bound (8ε_x)^{1/4} + (8ε_z)^{1/4} capped at 1;
// the distance is realized through Theorem 1's construction with optimized
// measurements.
TheoremCertificate theorem2_certificate(const PureState& psi, double tol = 1e-6,
                                        const OptimizeOptions& options = {});

// Experimental hybrid flavor: premises p_guess(Z^A|B) > 1−ε_z and
// p_secure(Z^A|R) ≥ 1−½ε_x²; reported with the Theorem-1 bound form. The
// constant is not pinned by an independent derivation, hence the flag.
TheoremCertificate hybrid_certificate_experimental(const PureState& psi, double tol = 1e-6,
                                                   const OptimizeOptions& options = {});

struct DualityDirection {
  double premise_secure = 0.0;   // the p_secure premise value
  double implied_lower = 0.0;    // 1 − √(2(1 − premise))
  double achieved_guess = 0.0;   // solver's achieved guessing probability
  double solver_gap = 0.0;       // slack: achieved + gap ≥ optimum ≥ implied
  double margin = 0.0;           // achieved + gap − implied_lower
};

// Empirical check of the duality implication in both directions:
//   p_secure(X^A|CR)_{ψ_Z} > 1−ε  ⟹  p_guess(Z^A|B)  > 1−√(2ε)
//   p_secure(Z^A|R)_ψ      > 1−ε  ⟹  p_guess(X^A|BC)_{ψ_Z} > 1−√(2ε)
// Margins include the solver gap as explicit slack.
struct DualityReport {
  DualityDirection z_from_x;
  DualityDirection x_from_z;
  bool holds = false;  // both margins ≥ −tol
  double tol = 1e-6;
};
DualityReport duality_check(const PureState& psi, double tol = 1e-6,
                            const OptimizeOptions& options = {});

// ½‖ψ^{AR} − (1/d)𝟙^A ⊗ ψ^R‖₁ between the first and last factors. Diagnostic
// for the decoupling picture; not used inside the certificates.
double decoupling_distance(const PureState& psi);

// One-way hashing benchmark E→ = H(B) − H(AB) in bits; may be negative.
double hashing_rate(const LabeledOperator& rho_ab);

}  // namespace complobs
