#include "complobs/measurements.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace complobs {

Povm Povm::validated(std::vector<LabeledOperator> elements, double tol) {
  if (elements.empty()) throw DomainError("POVM must have at least one element");
  const DimList& dims = elements.front().dims;
  Matrix sum = Matrix::Zero(elements.front().matrix.rows(), elements.front().matrix.cols());
  for (const auto& e : elements) {
    if (!(e.dims == dims)) throw ShapeError("POVM elements live on different composites");
    if (!is_psd(e.matrix, tol)) throw NumericError("POVM element is not PSD within tol");
    sum += e.matrix;
  }
  if (max_abs(sum - identity(dims.total())) > 100 * tol)
    throw NumericError("POVM elements do not sum to identity");
  return Povm{std::move(elements)};
}

Povm projective_povm(const std::vector<Vector>& basis, const DimList& dims) {
  std::vector<LabeledOperator> elements;
  elements.reserve(basis.size());
  for (const auto& v : basis) {
    if (static_cast<std::size_t>(v.size()) != dims.total())
      throw ShapeError("projective_povm: basis vector size mismatch");
    elements.emplace_back(Matrix(v * v.adjoint()), dims);
  }
  return Povm::validated(std::move(elements));
}

Povm computational_povm(std::size_t d, const std::string& label) {
  std::vector<Vector> basis;
  basis.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    Vector e = Vector::Zero(static_cast<Eigen::Index>(d));
    e(static_cast<Eigen::Index>(k)) = 1.0;
    basis.push_back(std::move(e));
  }
  return projective_povm(basis, DimList{{label, d}});
}

double p_guess_with(const Povm& povm, const Ensemble& ens) {
  if (povm.outcomes() != ens.size())
    throw ShapeError("POVM outcome count does not match ensemble size");
  if (!(povm.dims() == ens.dims()))
    throw ShapeError("POVM and ensemble live on different composites");
  double p = 0.0;
  for (std::size_t z = 0; z < ens.size(); ++z) {
    p += ens.weights(static_cast<Eigen::Index>(z)) *
         (povm.elements[z].matrix * ens.members[z].matrix).trace().real();
  }
  return p;
}

namespace {

std::vector<Matrix> weighted_members(const Ensemble& ens) {
  std::vector<Matrix> g;
  g.reserve(ens.size());
  for (std::size_t z = 0; z < ens.size(); ++z)
    g.push_back(ens.weights(static_cast<Eigen::Index>(z)) * ens.members[z].matrix);
  return g;
}

std::vector<Matrix> pgm_elements(const Ensemble& ens, double tol) {
  const auto g = weighted_members(ens);
  Matrix avg = Matrix::Zero(g.front().rows(), g.front().cols());
  for (const auto& m : g) avg += m;
  const Matrix s = pseudo_inverse_sqrt_psd(avg, std::max(tol, 1e-12));
  std::vector<Matrix> elements;
  elements.reserve(g.size());
  Matrix sum = Matrix::Zero(avg.rows(), avg.cols());
  for (const auto& m : g) {
    elements.push_back(s * m * s);
    elements.back() = 0.5 * (elements.back() + elements.back().adjoint().eval());
    sum += elements.back();
  }
  const Matrix deficit = (identity(static_cast<std::size_t>(avg.rows())) - sum) /
                         static_cast<double>(g.size());
  for (auto& e : elements) e += deficit;
  return elements;
}

// Iterative solvers leave ~1e-9 dirt on their elements (slightly negative
// eigenvalues, sums off identity). The coherent-measurement isometries need
// machine-precision POVMs, so returned measurements are cleaned up: clip the
// negative part per element, then renormalize by the inverse square root of
// the sum.
std::vector<Matrix> psd_cleanup(std::vector<Matrix> elements) {
  Matrix sum = Matrix::Zero(elements.front().rows(), elements.front().cols());
  for (auto& e : elements) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (e + e.adjoint().eval()));
    RealVector vals = solver.eigenvalues().cwiseMax(0.0);
    e = solver.eigenvectors() * vals.asDiagonal() * solver.eigenvectors().adjoint();
    sum += e;
  }
  const Matrix t = pseudo_inverse_sqrt_psd(sum, 1e-14);
  for (auto& e : elements) {
    e = t * e * t;
    e = 0.5 * (e + e.adjoint().eval());
  }
  return elements;
}

Povm wrap_povm(std::vector<Matrix> elements, const DimList& dims) {
  std::vector<LabeledOperator> labeled;
  labeled.reserve(elements.size());
  for (auto& e : psd_cleanup(std::move(elements))) labeled.emplace_back(std::move(e), dims);
  return Povm::validated(std::move(labeled), 1e-7);
}

}  // namespace

Povm pgm(const Ensemble& ens, double tol) {
  return wrap_povm(pgm_elements(ens, tol), ens.dims());
}

GuessReport helstrom_binary(const Ensemble& ens) {
  if (ens.size() != 2) throw DomainError("helstrom_binary needs exactly two members");
  const auto g = weighted_members(ens);
  const Matrix delta = 0.5 * ((g[0] - g[1]) + (g[0] - g[1]).adjoint().eval());

  Eigen::SelfAdjointEigenSolver<Matrix> solver(delta);
  const auto d = delta.rows();
  Matrix positive = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (solver.eigenvalues()(i) > 0)
      positive += solver.eigenvectors().col(i) * solver.eigenvectors().col(i).adjoint();
  }

  std::vector<Matrix> elements{positive, identity(static_cast<std::size_t>(d)) - positive};
  GuessReport report;
  report.measurement = wrap_povm(std::move(elements), ens.dims());
  report.achieved = p_guess_with(report.measurement, ens);
  report.upper = 0.5 * (1.0 + solver.eigenvalues().cwiseAbs().sum());
  report.gap = report.upper - report.achieved;
  report.iterations = 1;
  report.converged = true;
  return report;
}

GuessReport optimize_min_error(const Ensemble& ens, const OptimizeOptions& options) {
  const auto g = weighted_members(ens);
  const std::size_t n = ens.size();
  const Eigen::Index dim = g.front().rows();

  std::vector<Matrix> elements = pgm_elements(ens, 1e-12);

  const auto achieved_of = [&](const std::vector<Matrix>& e) {
    double p = 0.0;
    for (std::size_t z = 0; z < n; ++z) p += (g[z] * e[z]).trace().real();
    return p;
  };
  const auto upper_of = [&](const std::vector<Matrix>& e) {
    Matrix y = Matrix::Zero(dim, dim);
    for (std::size_t z = 0; z < n; ++z) y += g[z] * e[z];
    y = 0.5 * (y + y.adjoint().eval());
    double shift = 0.0;
    for (std::size_t z = 0; z < n; ++z) {
      Eigen::SelfAdjointEigenSolver<Matrix> solver(g[z] - y, Eigen::EigenvaluesOnly);
      shift = std::max(shift, solver.eigenvalues().maxCoeff());
    }
    const double raw = y.trace().real() + shift * static_cast<double>(dim);
    return std::min(raw, 1.0);
  };

  GuessReport best;
  best.achieved = achieved_of(elements);
  best.upper = upper_of(elements);
  best.measurement = wrap_povm(std::vector<Matrix>(elements), ens.dims());
  int iterations = 1;
  double min_upper = best.upper;

  while (min_upper - best.achieved >= options.tol && iterations < options.max_iter) {
    Matrix r = Matrix::Zero(dim, dim);
    for (std::size_t z = 0; z < n; ++z) r += g[z] * elements[z] * g[z];
    const Matrix s = pseudo_inverse_sqrt_psd(0.5 * (r + r.adjoint().eval()), 1e-14);
    Matrix sum = Matrix::Zero(dim, dim);
    for (std::size_t z = 0; z < n; ++z) {
      elements[z] = s * g[z] * elements[z] * g[z] * s;
      elements[z] = 0.5 * (elements[z] + elements[z].adjoint().eval());
      sum += elements[z];
    }
    const Matrix deficit =
        (identity(static_cast<std::size_t>(dim)) - sum) / static_cast<double>(n);
    for (auto& e : elements) e += deficit;

    ++iterations;
    const double achieved = achieved_of(elements);
    min_upper = std::min(min_upper, upper_of(elements));
    if (achieved > best.achieved) {
      best.achieved = achieved;
      best.measurement = wrap_povm(std::vector<Matrix>(elements), ens.dims());
    }
  }

  best.upper = min_upper;
  best.gap = best.upper - best.achieved;
  best.iterations = iterations;
  best.converged = best.gap < options.tol;
  return best;
}

SecureReport p_secure(const PureState& psi, Observable obs,
                      const std::vector<std::string>& env) {
  const Ensemble ens = ensemble_for_observable(psi, obs, env);
  const LabeledOperator marg = psi.marginal(env);
  const double d = static_cast<double>(psi.dims()[0].dim);

  SecureReport report;
  report.per_outcome.reserve(ens.size());
  for (std::size_t z = 0; z < ens.size(); ++z) {
    SecureOutcome outcome;
    outcome.weight_factor = std::sqrt(ens.weights(static_cast<Eigen::Index>(z)) / d);
    outcome.fidelity = fidelity(ens.members[z], marg, 1e-7);
    report.value += outcome.weight_factor * outcome.fidelity;
    report.per_outcome.push_back(outcome);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Grid oracle
// ---------------------------------------------------------------------------

namespace {

// Orthonormal basis from a product of Givens rotations, one (θ,φ) pair per
// coordinate plane. Column phases are irrelevant for rank-1 projectors, so
// this covers every basis that matters.
Matrix basis_from_angles(std::size_t dim, const std::vector<double>& angles) {
  Matrix u = identity(dim);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      const double theta = angles[idx];
      const double phi = angles[idx + 1];
      idx += 2;
      const double c = std::cos(theta);
      const double sn = std::sin(theta);
      const Complex e(std::cos(phi), std::sin(phi));
      Matrix g = identity(dim);
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = c;
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = -std::conj(e) * sn;
      g(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = e * sn;
      g(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = c;
      u = g * u;
    }
  }
  return u;
}

struct GridProblem {
  std::vector<Matrix> g;    // w_z ρ_z, dimension D
  std::size_t system_dim;   // D
  std::size_t basis_dim;    // D or the Naimark dimension n
  bool assign_greedily;     // outcomes ≤ D: free outcome assignment per column

  double evaluate(const std::vector<double>& angles) const {
    const Matrix u = basis_from_angles(basis_dim, angles);
    const auto d = static_cast<Eigen::Index>(system_dim);
    double p = 0.0;
    if (assign_greedily) {
      for (Eigen::Index col = 0; col < u.cols(); ++col) {
        double bestk = 0.0;
        for (const auto& gz : g) {
          const double v = (u.col(col).adjoint() * gz * u.col(col)).value().real();
          bestk = std::max(bestk, v);
        }
        p += bestk;
      }
    } else {
      for (std::size_t k = 0; k < g.size(); ++k) {
        const Vector trunc = u.col(static_cast<Eigen::Index>(k)).head(d);
        p += (trunc.adjoint() * g[k] * trunc).value().real();
      }
    }
    return p;
  }
};

// Zoom refinement from one starting point: per level, line-grid every
// parameter over the current span (two passes), recenter, halve the span,
// until the span drops under `resolution`.
double refine_from(const GridProblem& problem, std::vector<double> center,
                   double resolution) {
  const std::size_t params = center.size();
  const int points = 9;
  double span = std::numbers::pi / 2;
  double value = problem.evaluate(center);
  while (span > resolution) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t q = 0; q < params; ++q) {
        double best_angle = center[q];
        for (int t = 0; t < points; ++t) {
          std::vector<double> trial = center;
          trial[q] = center[q] + span * (2.0 * t / (points - 1) - 1.0);
          const double v = problem.evaluate(trial);
          if (v > value) {
            value = v;
            best_angle = trial[q];
          }
        }
        center[q] = best_angle;
      }
    }
    span *= 0.5;
  }
  return value;
}

}  // namespace

double qubit_grid_oracle(const Ensemble& ens, double resolution) {
  if (ens.dims().total() > 4)
    throw DomainError("qubit_grid_oracle: composite dimension above 4");
  if (ens.size() > 4) throw DomainError("qubit_grid_oracle: more than 4 outcomes");
  if (resolution <= 0) throw DomainError("qubit_grid_oracle: resolution must be positive");

  GridProblem problem;
  problem.g = weighted_members(ens);
  problem.system_dim = ens.dims().total();
  problem.assign_greedily = ens.size() <= problem.system_dim;
  problem.basis_dim = problem.assign_greedily ? problem.system_dim : ens.size();
  const std::size_t params = problem.basis_dim * (problem.basis_dim - 1);
  const double pi = std::numbers::pi;

  // Coordinate sweeps can stall on symmetric ensembles, so zoom from a fixed
  // spread of deterministic starting points and keep the best.
  double best = 0.0;
  for (int s = 0; s < 7; ++s) {
    std::vector<double> start(params);
    for (std::size_t q = 0; q < params; ++q) {
      start[q] = s == 0 ? pi / 4
                        : std::fmod(0.37 * s + 0.61 * static_cast<double>(q + 1) *
                                                    static_cast<double>(s),
                                    pi);
    }
    best = std::max(best, refine_from(problem, std::move(start), resolution));
  }
  return best;
}

}  // namespace complobs
