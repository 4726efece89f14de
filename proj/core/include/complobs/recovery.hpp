#pragma once

#include <string>
#include <vector>

#include "complobs/measurements.hpp"
#include "complobs/states.hpp"
#include "complobs/types.hpp"

namespace complobs {

// Norm-preserving map between labeled spaces: U†U = identity on the input.
struct Isometry {
  Matrix matrix;  // out_dims.total() × in_dims.total()
  DimList in_dims;
  DimList out_dims;

  static Isometry validated(Matrix m, DimList in, DimList out, double tol = kIsometryTol);
};

// Coherent implementation of a POVM: |φ⟩ ↦ Σ_k |b_k⟩^store ⊗ √Λ_k |φ⟩.
// The store register comes first in the output dims; isometry because
// Σ √Λ_k† √Λ_k = Σ Λ_k = I. `store_basis` must be orthonormal, one state
// per outcome.
Isometry coherent_measurement(const Povm& povm, const std::string& store_label,
                              const std::vector<Vector>& store_basis,
                              double tol = kDefaultTol);

// Step 1: measure Λ_z coherently, recording the outcome in a fresh
// computational register C. Maps B → C⊗B.
Isometry build_u1(const Povm& lambda_z);

// Step 2: measure Γ_x coherently, recording outcome x as the Fourier state
// |−x̃⟩ in a fresh register D. Maps C⊗B → D⊗C⊗B.
Isometry build_u2(const Povm& gamma_x);

// Step 3: controlled phase Σ_x |x̃⟩⟨x̃|^D ⊗ (Z^{−x})^C, a unitary on D⊗C.
// The −x exponent is what cancels the (Z^{−x})^C factor left by step 2 when D
// stores |−x̃⟩; pinned by the ideal-chain tests.
Isometry build_u3(std::size_t d);

// U^{B→DCB} = U₃ U₂ U₁ from the two measurements.
Isometry compose_recovery(const Povm& lambda_z, const Povm& gamma_x);

// Apply an isometry whose input factors appear contiguously and in order
// inside the state; they get replaced by the output factors in place.
PureState apply_isometry(const PureState& psi, const Isometry& u);

// Recovery applied to ψ^{ABR}; output labels are A,D,C,B,R in that order.
PureState apply_recovery(const Isometry& u, const PureState& psi);

// Φ_d^{AD} ⊗ ψ^{CBR} with ψ^{CBR} the input relabeled A→C.
PureState ideal_recovery_target(const PureState& psi);

// Normalized trace distance between U|ψ⟩ and the ideal target.
double recovery_error(const PureState& psi, const Isometry& u);

}  // namespace complobs
