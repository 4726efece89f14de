#pragma once

#include <vector>

#include "complobs/types.hpp"

namespace complobs {

// Square operator together with the labeled tensor factorization of its space.
struct LabeledOperator {
  Matrix matrix;
  DimList dims;

  LabeledOperator() = default;
  // Checks squareness, finiteness, and rows == product of dims.
  LabeledOperator(Matrix m, DimList d);

  std::size_t dim() const { return dims.total(); }
  LabeledOperator relabeled(std::string_view from, std::string_view to) const {
    return LabeledOperator{matrix, dims.relabeled(from, to)};
  }
};

Matrix dagger(const Matrix& m);
Matrix identity(std::size_t d);
bool entries_finite(const Matrix& m);
double max_abs(const Matrix& m);

// (m + m†)/2 after checking the asymmetry stays below tol.
Matrix hermitized(const Matrix& m, double tol = kHermitianTol);

// Eigenvalues of a declared-Hermitian matrix, ascending.
RealVector hermitian_eigenvalues(const Matrix& m);

// Tensor product; the left factor is the slower-varying index.
// Throws ShapeError when the product dimension exceeds the configured cap.
Matrix kron(const Matrix& a, const Matrix& b);
LabeledOperator kron(const LabeledOperator& a, const LabeledOperator& b);
Vector kron(const Vector& a, const Vector& b);

// Trace out every factor not in `keep`; kept factors stay in original order.
LabeledOperator partial_trace(const LabeledOperator& op, const std::vector<std::string>& keep);

// Square root of a PSD matrix. Eigenvalues in [-tol, 0) are clipped to 0;
// anything below -tol is a NumericError.
Matrix matrix_sqrt_psd(const Matrix& m, double tol = kDefaultTol);

// Inverse square root on the support (eigenvalues below cutoff are dropped).
Matrix pseudo_inverse_sqrt_psd(const Matrix& m, double tol = kDefaultTol);

// ‖m‖₁ = Tr√(m†m), the sum of singular values.
double trace_norm(const Matrix& m);

bool is_psd(const Matrix& m, double tol = kDefaultTol);
void check_density_operator(const Matrix& m, double tol = kDefaultTol);

// F(ρ,σ) = ‖√ρ√σ‖₁. Both arguments must be density operators (PSD, unit
// trace within tol); the labeled overload also requires identical dims.
double fidelity(const Matrix& rho, const Matrix& sigma, double tol = kDefaultTol);
double fidelity(const LabeledOperator& rho, const LabeledOperator& sigma,
                double tol = kDefaultTol);

// Normalized trace distance ½‖ρ−σ‖₁ ∈ [0,1]. This convention is what makes
// the √(2ε) conversion from fidelity hold for pure states, and it is used
// everywhere in this library.
double trace_distance(const Matrix& rho, const Matrix& sigma);
double trace_distance(const LabeledOperator& rho, const LabeledOperator& sigma);

// √(1 − |⟨a|b⟩|²) for unit vectors: the normalized trace distance of the
// corresponding pure states. Overlap ≥ 1−ε implies distance ≤ √(2ε).
double pure_distance(const Vector& a, const Vector& b, double tol = 1e-6);

// Von Neumann entropy in bits. Eigenvalues within tol of 0 contribute 0.
double von_neumann_entropy(const Matrix& rho, double tol = kDefaultTol);
double von_neumann_entropy(const LabeledOperator& rho, double tol = kDefaultTol);

}  // namespace complobs
