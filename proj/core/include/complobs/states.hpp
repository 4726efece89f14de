#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "complobs/linalg.hpp"
#include "complobs/random.hpp"
#include "complobs/types.hpp"

namespace complobs {

class PureState {
 public:
  PureState() = default;
  // Checks unit norm within tol and length == product of dims.
  PureState(Vector amplitudes, DimList dims, double tol = 1e-6);
  // Rescales to unit norm; DomainError on (numerically) zero vectors.
  static PureState normalized(Vector amplitudes, DimList dims);

  const Vector& amplitudes() const { return amps_; }
  const DimList& dims() const { return dims_; }
  std::size_t dim() const { return dims_.total(); }
  std::size_t dim_of(std::string_view label) const { return dims_.dim_of(label); }

  LabeledOperator density() const;
  LabeledOperator marginal(const std::vector<std::string>& keep) const;
  PureState relabeled(std::string_view from, std::string_view to) const;
  // ⟨this|other⟩.
  Complex overlap(const PureState& other) const;

 private:
  Vector amps_;
  DimList dims_;
};

PureState tensor(const PureState& a, const PureState& b);

// Decomposition |ψ⟩ = Σ_z √p_z |z⟩ ⊗ |φ_z⟩ along the first factor; φ_z for
// p_z = 0 is the first computational basis state of the remaining factors
// (inert downstream, every use multiplies it by p_z).
struct CanonicalABR {
  RealVector p;
  std::vector<PureState> phi;
};

struct Ensemble {
  RealVector weights;
  std::vector<LabeledOperator> members;

  // Checks weights (nonnegative, sum 1) and members (density ops, same dims).
  static Ensemble validated(RealVector weights, std::vector<LabeledOperator> members,
                            double tol = kDefaultTol);
  std::size_t size() const { return members.size(); }
  const DimList& dims() const { return members.front().dims; }
  LabeledOperator average() const;
};

enum class Observable { Z, X };

// Generalized Pauli operators: Z = Σ_k ω^k|k⟩⟨k|, X = Σ_k |k+1⟩⟨k| with
// ω = e^{+2πi/d}. They satisfy ZX = ωXZ and Z^d = X^d = I.
LabeledOperator weyl_z(std::size_t d, const std::string& label = "A");
LabeledOperator weyl_x(std::size_t d, const std::string& label = "A");
// Z^k for any integer k (negative powers included).
Matrix weyl_z_power(std::size_t d, long k);
Complex omega(std::size_t d);  // e^{+2πi/d}

// F = (1/√d) Σ_{jk} ω^{jk} |j⟩⟨k|; F X F† = Z.
Matrix fourier_matrix(std::size_t d);
// |x̃⟩ = (1/√d) Σ_z ω^{xz} |z⟩, the X-basis states.
PureState fourier_state(std::size_t d, std::size_t x, const std::string& label = "A");
Vector fourier_vector(std::size_t d, std::size_t x);

// |Φ_d⟩ = (1/√d) Σ_z |z,z⟩.
PureState phi_d(std::size_t d, const std::string& label_a = "A",
                const std::string& label_b = "B");
// Bell basis |β_jk⟩ = (X^j Z^k on the second factor) |Φ_d⟩.
PureState bell_jk(std::size_t d, std::size_t j, std::size_t k,
                  const std::string& label_a = "A", const std::string& label_b = "B");

CanonicalABR canonical_decomposition(const PureState& psi);

// Eq.-(2)-style extension: copy the first factor's computational value into a
// fresh register inserted right after it. For ψ on [A,B,R] this produces
// Σ_z √p_z |z⟩^A |z⟩^C |φ_z⟩^{BR} on [A,C,B,R].
PureState z_extension(const PureState& psi, const std::string& copy_label = "C");

// Measure the first factor in the observable's eigenbasis; weights are the
// outcome probabilities and members the conditional states on `side`.
Ensemble ensemble_for_observable(const PureState& psi, Observable obs,
                                 const std::vector<std::string>& side);
// Same with an explicit orthonormal basis on the first factor.
Ensemble ensemble_for_basis(const PureState& psi, const std::vector<Vector>& basis,
                            const std::vector<std::string>& side);

PureState haar_random_state(const DimList& dims, RandomStream& rng);
PureState haar_random_state(const DimList& dims, std::uint64_t seed,
                            std::uint64_t stream_index = 0);

}  // namespace complobs
