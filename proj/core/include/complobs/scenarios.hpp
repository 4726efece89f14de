#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "complobs/states.hpp"
#include "complobs/types.hpp"

namespace complobs {

// Named, parameterized test point: a state plus the closed-form quantities
// known for it, each with a note describing where the value comes from.
struct Scenario {
  std::string name;
  std::map<std::string, double> parameters;
  PureState state;
  std::map<std::string, double> expected;
  std::map<std::string, std::string> notes;
};

// (1/√2)(|0_y,0_y,0_y⟩ + |1_y,1_y,1_y⟩): the environment is uncorrelated with
// both X and Z on A, yet the AB marginal is separable. In the computational
// basis this is ½(|000⟩ − |011⟩ − |101⟩ − |110⟩).
PureState counterexample_state();

// (1/√2)(|00⟩^{AB}|r₀⟩ + |11⟩^{AB}|r₁⟩) with |r₀⟩=|0⟩ and
// |r₁⟩=λ|0⟩+√(1−λ²)|1⟩, so ⟨r₀|r₁⟩=λ. Perfect Z-guessing from B for any λ.
PureState phase_damping_state(double lambda);

// Σ q_{jk}|β_jk⟩⟨β_jk| on AB, q ordered (00,01,10,11).
LabeledOperator bell_diagonal_state(const std::array<double, 4>& q);

// Spectral purification with the environment basis ordered by descending
// eigenvalue (ties by index); env dimension equals the operator dimension.
PureState purify(const LabeledOperator& rho, const std::string& env_label = "R");

// Send half of Φ_d through the channel's Stinespring dilation: A is the
// reference, B the output, R the dilation environment (one dimension per
// Kraus operator); tracing B leaves the complementary channel's output on R.
PureState channel_to_state(const std::vector<Matrix>& kraus, std::size_t d,
                           double tol = kDefaultTol);

std::vector<std::string> scenario_names();
Scenario make_scenario(const std::string& name,
                       const std::map<std::string, double>& params);

}  // namespace complobs
