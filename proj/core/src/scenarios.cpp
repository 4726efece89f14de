#include "complobs/scenarios.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace complobs {

PureState counterexample_state() {
  Vector y0(2), y1(2);
  const double s = 1.0 / std::sqrt(2.0);
  y0 << Complex(s, 0), Complex(0, s);
  y1 << Complex(s, 0), Complex(0, -s);
  Vector amps = (kron(kron(y0, y0), y0) + kron(kron(y1, y1), y1)) * s;
  return PureState(std::move(amps), DimList{{"A", 2}, {"B", 2}, {"R", 2}});
}

PureState phase_damping_state(double lambda) {
  if (lambda < 0.0 || lambda > 1.0)
    throw DomainError("phase_damping_state: lambda must lie in [0,1]");
  Vector r0 = Vector::Zero(2), r1(2);
  r0(0) = 1.0;
  r1 << lambda, std::sqrt(std::max(0.0, 1.0 - lambda * lambda));
  Vector e0 = Vector::Zero(2), e1 = Vector::Zero(2);
  e0(0) = 1.0;
  e1(1) = 1.0;
  Vector amps = (kron(kron(e0, e0), r0) + kron(kron(e1, e1), r1)) / std::sqrt(2.0);
  return PureState(std::move(amps), DimList{{"A", 2}, {"B", 2}, {"R", 2}});
}

LabeledOperator bell_diagonal_state(const std::array<double, 4>& q) {
  double sum = 0.0;
  for (double v : q) {
    if (v < 0.0) throw NumericError("bell_diagonal_state: negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw NumericError("bell_diagonal_state: probabilities must sum to 1");
  Matrix rho = Matrix::Zero(4, 4);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t k = 0; k < 2; ++k) {
      const Vector beta = bell_jk(2, j, k).amplitudes();
      rho += q[2 * j + k] * (beta * beta.adjoint());
    }
  }
  return LabeledOperator(std::move(rho), DimList{{"A", 2}, {"B", 2}});
}

PureState purify(const LabeledOperator& rho, const std::string& env_label) {
  check_density_operator(rho.matrix, 1e-9);
  if (rho.dims.contains(env_label))
    throw LabelError("purify: environment label already present");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitized(rho.matrix));
  const std::size_t dim = static_cast<std::size_t>(rho.matrix.rows());

  Vector amps = Vector::Zero(static_cast<Eigen::Index>(dim * dim));
  // eigenvalues come out ascending; walk them descending so the env basis is
  // ordered by decreasing weight
  for (std::size_t i = 0; i < dim; ++i) {
    const Eigen::Index src = static_cast<Eigen::Index>(dim - 1 - i);
    const double lam = std::max(solver.eigenvalues()(src), 0.0);
    if (lam <= 0.0) continue;
    const Vector col = solver.eigenvectors().col(src);
    for (std::size_t s = 0; s < dim; ++s)
      amps(static_cast<Eigen::Index>(s * dim + i)) = std::sqrt(lam) * col(static_cast<Eigen::Index>(s));
  }
  const DimList dims = rho.dims.concatenated(DimList{{env_label, dim}});
  return PureState::normalized(std::move(amps), dims);
}

PureState channel_to_state(const std::vector<Matrix>& kraus, std::size_t d, double tol) {
  if (kraus.empty()) throw DomainError("channel_to_state: empty Kraus list");
  Matrix completeness = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (const auto& k : kraus) {
    if (static_cast<std::size_t>(k.rows()) != d || static_cast<std::size_t>(k.cols()) != d)
      throw ShapeError("channel_to_state: Kraus operators must be d×d");
    completeness += k.adjoint() * k;
  }
  if (max_abs(completeness - identity(d)) > 100 * tol)
    throw NumericError("channel_to_state: Kraus set is not trace preserving");

  const std::size_t env = kraus.size();
  // (I_A ⊗ V)|Φ_d⟩ with V = Σ_i K_i ⊗ |i⟩^R
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(d * d * env));
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      for (std::size_t i = 0; i < env; ++i) {
        amps(static_cast<Eigen::Index>((a * d + b) * env + i)) =
            scale * kraus[i](static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a));
      }
    }
  }
  return PureState(std::move(amps), DimList{{"A", d}, {"B", d}, {"R", env}});
}

namespace {

double entropy_bits(const std::array<double, 4>& q) {
  double h = 0.0;
  for (double v : q)
    if (v > 1e-15) h -= v * std::log2(v);
  return h;
}

double param_or(const std::map<std::string, double>& params, const std::string& key,
                double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void reject_unknown(const std::map<std::string, double>& params,
                    const std::vector<std::string>& known) {
  for (const auto& [key, value] : params) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw DomainError("unknown scenario parameter '" + key + "'");
  }
}

}  // namespace

std::vector<std::string> scenario_names() {
  return {"counterexample", "phase_damping", "bell_diagonal", "dephasing_channel",
          "amplitude_damping_channel"};
}

Scenario make_scenario(const std::string& name,
                       const std::map<std::string, double>& params) {
  Scenario sc;
  sc.name = name;
  if (name == "counterexample") {
    reject_unknown(params, {});
    sc.state = counterexample_state();
    sc.expected["p_secure_z"] = 1.0;
    sc.notes["p_secure_z"] = "R carries no information about Z^A; exact";
    sc.expected["p_secure_x"] = 1.0;
    sc.notes["p_secure_x"] = "R carries no information about X^A; exact";
    sc.expected["max_entangled_fraction"] = 0.5;
    sc.notes["max_entangled_fraction"] = "AB marginal is separable";
  } else if (name == "phase_damping") {
    const double lambda = param_or(params, "lambda", 0.5);
    reject_unknown(params, {"lambda"});
    sc.parameters["lambda"] = lambda;
    sc.state = phase_damping_state(lambda);
    sc.expected["p_guess_x"] = 0.5 * (1.0 + lambda);
    sc.notes["p_guess_x"] = "Helstrom on the two X-conditional states of the extension";
    sc.expected["p_secure_z"] = std::sqrt(0.5 * (1.0 + lambda * lambda));
    sc.notes["p_secure_z"] = "security functional evaluated on the 2-dim environment";
    sc.expected["eps_z"] = 0.0;
    sc.notes["eps_z"] = "conditional B states are orthogonal";
    sc.expected["bound"] = std::sqrt(1.0 - lambda);
    sc.notes["bound"] = "recovery bound with eps_z = 0, eps_x = (1-lambda)/2";
  } else if (name == "bell_diagonal") {
    const std::array<double, 4> q{
        param_or(params, "q00", 1.0), param_or(params, "q01", 0.0),
        param_or(params, "q10", 0.0), param_or(params, "q11", 0.0)};
    reject_unknown(params, {"q00", "q01", "q10", "q11"});
    sc.parameters = {{"q00", q[0]}, {"q01", q[1]}, {"q10", q[2]}, {"q11", q[3]}};
    sc.state = purify(bell_diagonal_state(q));
    sc.expected["hashing_rate"] = 1.0 - entropy_bits(q);
    sc.notes["hashing_rate"] = "H(B)=1 for Bell-diagonal states; H(AB)=H(q)";
  } else if (name == "dephasing_channel") {
    const double p = param_or(params, "p", 1.0);
    reject_unknown(params, {"p"});
    if (p < 0.0 || p > 1.0) throw DomainError("dephasing probability must lie in [0,1]");
    sc.parameters["p"] = p;
    Matrix k0 = std::sqrt(1.0 - p) * identity(2);
    Matrix k1 = Matrix::Zero(2, 2), k2 = Matrix::Zero(2, 2);
    k1(0, 0) = std::sqrt(p);
    k2(1, 1) = std::sqrt(p);
    sc.state = channel_to_state({k0, k1, k2}, 2);
    if (p == 1.0) {
      sc.expected["p_guess_z"] = 1.0;
      sc.notes["p_guess_z"] = "full dephasing keeps Z correlations intact";
      sc.expected["p_guess_x_b_only"] = 0.5;
      sc.notes["p_guess_x_b_only"] = "full dephasing erases X information in B alone";
    }
  } else if (name == "amplitude_damping_channel") {
    const double gamma = param_or(params, "gamma", 0.5);
    reject_unknown(params, {"gamma"});
    if (gamma < 0.0 || gamma > 1.0) throw DomainError("gamma must lie in [0,1]");
    sc.parameters["gamma"] = gamma;
    Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - gamma);
    k1(0, 1) = std::sqrt(gamma);
    sc.state = channel_to_state({k0, k1}, 2);
  } else {
    throw DomainError("unknown scenario '" + name + "'");
  }
  return sc;
}

}  // namespace complobs
