#include "complobs/theorems.hpp"

#include <algorithm>
#include <cmath>

namespace complobs {

namespace {

void check_abr_state(const PureState& psi) {
  if (psi.dims().count() != 3 || psi.dims()[0].label != "A" ||
      psi.dims()[1].label != "B" || psi.dims()[2].label != "R")
    throw LabelError("certificates need a tripartite state labeled A,B,R");
}

double clamped_eps(double p) { return std::clamp(1.0 - p, 0.0, 1.0); }

}  // namespace

TheoremCertificate theorem1_certificate(const PureState& psi, const Povm& lambda_z,
                                        const Povm& gamma_x, double tol) {
  check_abr_state(psi);
  const Ensemble ens_z = ensemble_for_observable(psi, Observable::Z, {"B"});
  const PureState psi_z = z_extension(psi);
  const Ensemble ens_x = ensemble_for_observable(psi_z, Observable::X, {"C", "B"});

  TheoremCertificate cert;
  cert.theorem = 1;
  cert.tol = tol;
  cert.solver.achieved_z = p_guess_with(lambda_z, ens_z);
  cert.solver.achieved_x = p_guess_with(gamma_x, ens_x);
  cert.eps_z = clamped_eps(cert.solver.achieved_z);
  cert.eps_x = clamped_eps(cert.solver.achieved_x);

  const Isometry u = compose_recovery(lambda_z, gamma_x);
  cert.achieved_distance = recovery_error(psi, u);

  cert.bound_uncapped = std::sqrt(2.0 * cert.eps_x) + std::sqrt(2.0 * cert.eps_z);
  cert.bound = std::min(cert.bound_uncapped, 1.0);
  cert.holds = cert.achieved_distance <= cert.bound + tol;
  return cert;
}

OptimizedMeasurements optimize_recovery_measurements(const PureState& psi,
                                                     const OptimizeOptions& options) {
  check_abr_state(psi);
  OptimizedMeasurements out;
  out.z = optimize_min_error(ensemble_for_observable(psi, Observable::Z, {"B"}), options);
  const PureState psi_z = z_extension(psi);
  out.x = optimize_min_error(ensemble_for_observable(psi_z, Observable::X, {"C", "B"}),
                             options);
  return out;
}

namespace {

SolverSummary summarize(const OptimizedMeasurements& m) {
  SolverSummary s;
  s.gap_z = m.z.gap;
  s.gap_x = m.x.gap;
  s.achieved_z = m.z.achieved;
  s.achieved_x = m.x.achieved;
  s.iterations_z = m.z.iterations;
  s.iterations_x = m.x.iterations;
  s.converged_z = m.z.converged;
  s.converged_x = m.x.converged;
  return s;
}

}  // namespace

TheoremCertificate theorem1_certificate_optimized(const PureState& psi, double tol,
                                                  const OptimizeOptions& options) {
  const OptimizedMeasurements m = optimize_recovery_measurements(psi, options);
  TheoremCertificate cert = theorem1_certificate(psi, m.z.measurement, m.x.measurement, tol);
  cert.solver = summarize(m);
  return cert;
}

TheoremCertificate theorem2_certificate(const PureState& psi, double tol,
                                        const OptimizeOptions& options) {
  check_abr_state(psi);
  const PureState psi_z = z_extension(psi);

  TheoremCertificate cert;
  cert.theorem = 2;
  cert.tol = tol;
  cert.secure_x = p_secure(psi_z, Observable::X, {"C", "R"});
  cert.secure_z = p_secure(psi, Observable::Z, {"R"});
  cert.eps_x = clamped_eps(cert.secure_x->value);
  cert.eps_z = clamped_eps(cert.secure_z->value);

  const OptimizedMeasurements m = optimize_recovery_measurements(psi, options);
  cert.solver = summarize(m);
  const Isometry u = compose_recovery(m.z.measurement, m.x.measurement);
  cert.achieved_distance = recovery_error(psi, u);

  cert.bound_uncapped =
      std::pow(8.0 * cert.eps_x, 0.25) + std::pow(8.0 * cert.eps_z, 0.25);
  cert.bound = std::min(cert.bound_uncapped, 1.0);
  cert.holds = cert.achieved_distance <= cert.bound + tol;
  return cert;
}

TheoremCertificate hybrid_certificate_experimental(const PureState& psi, double tol,
                                                   const OptimizeOptions& options) {
  check_abr_state(psi);
  const OptimizedMeasurements m = optimize_recovery_measurements(psi, options);

  TheoremCertificate cert;
  cert.theorem = 3;
  cert.experimental = true;
  cert.tol = tol;
  cert.solver = summarize(m);
  cert.eps_z = clamped_eps(m.z.achieved);
  cert.secure_z = p_secure(psi, Observable::Z, {"R"});
  // premise form p_secure(Z^A|R) ≥ 1 − ½ε_x²
  cert.eps_x = std::sqrt(2.0 * clamped_eps(cert.secure_z->value));

  const Isometry u = compose_recovery(m.z.measurement, m.x.measurement);
  cert.achieved_distance = recovery_error(psi, u);

  cert.bound_uncapped = std::sqrt(2.0 * cert.eps_x) + std::sqrt(2.0 * cert.eps_z);
  cert.bound = std::min(cert.bound_uncapped, 1.0);
  cert.holds = cert.achieved_distance <= cert.bound + tol;
  return cert;
}

DualityReport duality_check(const PureState& psi, double tol,
                            const OptimizeOptions& options) {
  check_abr_state(psi);
  const PureState psi_z = z_extension(psi);
  const OptimizedMeasurements m = optimize_recovery_measurements(psi, options);

  DualityReport report;
  report.tol = tol;

  report.z_from_x.premise_secure = p_secure(psi_z, Observable::X, {"C", "R"}).value;
  report.z_from_x.implied_lower =
      1.0 - std::sqrt(2.0 * clamped_eps(report.z_from_x.premise_secure));
  report.z_from_x.achieved_guess = m.z.achieved;
  report.z_from_x.solver_gap = m.z.gap;
  report.z_from_x.margin =
      m.z.achieved + m.z.gap - report.z_from_x.implied_lower;

  report.x_from_z.premise_secure = p_secure(psi, Observable::Z, {"R"}).value;
  report.x_from_z.implied_lower =
      1.0 - std::sqrt(2.0 * clamped_eps(report.x_from_z.premise_secure));
  report.x_from_z.achieved_guess = m.x.achieved;
  report.x_from_z.solver_gap = m.x.gap;
  report.x_from_z.margin =
      m.x.achieved + m.x.gap - report.x_from_z.implied_lower;

  report.holds = report.z_from_x.margin >= -tol && report.x_from_z.margin >= -tol;
  return report;
}

double decoupling_distance(const PureState& psi) {
  if (psi.dims().count() < 2)
    throw ShapeError("decoupling_distance needs at least two factors");
  const std::string first = psi.dims()[0].label;
  const std::string last = psi.dims()[psi.dims().count() - 1].label;
  const LabeledOperator joint = psi.marginal({first, last});
  const LabeledOperator env = psi.marginal({last});
  const double d = static_cast<double>(psi.dims()[0].dim);
  const LabeledOperator product =
      kron(LabeledOperator(identity(psi.dims()[0].dim) / d, DimList{psi.dims()[0]}), env);
  return trace_distance(joint, product);
}

double hashing_rate(const LabeledOperator& rho_ab) {
  if (rho_ab.dims.count() != 2)
    throw ShapeError("hashing_rate needs a bipartite operator");
  check_density_operator(rho_ab.matrix, 1e-7);
  const LabeledOperator b = partial_trace(rho_ab, {rho_ab.dims[1].label});
  return von_neumann_entropy(b.matrix, 1e-12) - von_neumann_entropy(rho_ab.matrix, 1e-12);
}

}  // namespace complobs
