#include "complobs/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace complobs {

LabeledOperator::LabeledOperator(Matrix m, DimList d)
    : matrix(std::move(m)), dims(std::move(d)) {
  if (matrix.rows() != matrix.cols())
    throw ShapeError("labeled operator must be square");
  if (static_cast<std::size_t>(matrix.rows()) != dims.total())
    throw ShapeError("operator size " + std::to_string(matrix.rows()) +
                     " does not match dims product " + std::to_string(dims.total()));
  if (!entries_finite(matrix)) throw NumericError("operator has non-finite entries");
}

Matrix dagger(const Matrix& m) { return m.adjoint(); }

Matrix identity(std::size_t d) {
  return Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

bool entries_finite(const Matrix& m) {
  return m.allFinite();
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Matrix hermitized(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) throw ShapeError("hermitized: matrix must be square");
  const double asym = max_abs(m - m.adjoint());
  if (asym > tol)
    throw NumericError("matrix declared Hermitian has asymmetry " + std::to_string(asym));
  return 0.5 * (m + m.adjoint());
}

RealVector hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitized(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
  const std::size_t cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
  if (rows > max_dimension() || cols > max_dimension())
    throw ShapeError("kron result exceeds dimension cap " + std::to_string(max_dimension()));
  Matrix out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

LabeledOperator kron(const LabeledOperator& a, const LabeledOperator& b) {
  return LabeledOperator(kron(a.matrix, b.matrix), a.dims.concatenated(b.dims));
}

Vector kron(const Vector& a, const Vector& b) {
  const std::size_t n = static_cast<std::size_t>(a.size()) * static_cast<std::size_t>(b.size());
  if (n > max_dimension())
    throw ShapeError("kron result exceeds dimension cap " + std::to_string(max_dimension()));
  Vector out(n);
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

LabeledOperator partial_trace(const LabeledOperator& op, const std::vector<std::string>& keep) {
  const DimList kept = op.dims.selected(keep);
  const std::size_t n = op.dims.count();
  const auto strides = op.dims.strides();

  // Per-factor bookkeeping: kept factors map onto output strides, traced
  // factors must agree between row and column.
  std::vector<bool> is_kept(n, false);
  for (std::size_t i = 0; i < n; ++i) is_kept[i] = kept.contains(op.dims[i].label);

  std::vector<std::size_t> out_stride(n, 0);
  {
    const auto ks = kept.strides();
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (is_kept[i]) out_stride[i] = ks[k++];
  }

  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(kept.total()),
                            static_cast<Eigen::Index>(kept.total()));

  const std::size_t dim = op.dims.total();
  std::vector<std::size_t> ri(n), ci(n);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t i = 0; i < n; ++i) ri[i] = (r / strides[i]) % op.dims[i].dim;
    for (std::size_t c = 0; c < dim; ++c) {
      bool diagonal = true;
      for (std::size_t i = 0; i < n && diagonal; ++i) {
        ci[i] = (c / strides[i]) % op.dims[i].dim;
        if (!is_kept[i] && ci[i] != ri[i]) diagonal = false;
      }
      if (!diagonal) continue;
      std::size_t ro = 0, co = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (is_kept[i]) {
          ro += ri[i] * out_stride[i];
          co += ci[i] * out_stride[i];
        }
      }
      out(static_cast<Eigen::Index>(ro), static_cast<Eigen::Index>(co)) +=
          op.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return LabeledOperator(std::move(out), kept);
}

Matrix matrix_sqrt_psd(const Matrix& m, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitized(m));
  RealVector vals = solver.eigenvalues();
  // Eigenvalues within tol of zero are treated as exact zeros. Without this,
  // rounding residue λ ~ 1e−16 turns into √λ ~ 1e−8 and contaminates the
  // root far beyond the accuracy of everything downstream.
  const double cutoff = tol * std::max(1.0, vals.size() > 0 ? vals.maxCoeff() : 1.0);
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals(i) < -tol)
      throw NumericError("matrix_sqrt_psd: eigenvalue " + std::to_string(vals(i)) +
                         " below -tol");
    vals(i) = vals(i) > cutoff ? std::sqrt(vals(i)) : 0.0;
  }
  return solver.eigenvectors() * vals.asDiagonal() * solver.eigenvectors().adjoint();
}

Matrix pseudo_inverse_sqrt_psd(const Matrix& m, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitized(m));
  RealVector vals = solver.eigenvalues();
  const double cutoff = std::max(tol, tol * vals.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals(i) < -tol)
      throw NumericError("pseudo_inverse_sqrt_psd: matrix not PSD");
    vals(i) = vals(i) > cutoff ? 1.0 / std::sqrt(vals(i)) : 0.0;
  }
  return solver.eigenvectors() * vals.asDiagonal() * solver.eigenvectors().adjoint();
}

double trace_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

bool is_psd(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (max_abs(m - m.adjoint()) > std::max(tol, kHermitianTol)) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

void check_density_operator(const Matrix& m, double tol) {
  if (!is_psd(m, tol)) throw NumericError("density operator is not PSD within tol");
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > 10.0 * tol)
    throw NumericError("density operator trace " + std::to_string(tr) + " is not 1");
}

double fidelity(const Matrix& rho, const Matrix& sigma, double tol) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw ShapeError("fidelity: dimension mismatch");
  check_density_operator(rho, tol);
  check_density_operator(sigma, tol);
  return trace_norm(matrix_sqrt_psd(rho, tol) * matrix_sqrt_psd(sigma, tol));
}

double fidelity(const LabeledOperator& rho, const LabeledOperator& sigma, double tol) {
  if (!(rho.dims == sigma.dims)) throw ShapeError("fidelity: dims mismatch");
  return fidelity(rho.matrix, sigma.matrix, tol);
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw ShapeError("trace_distance: dimension mismatch");
  return 0.5 * trace_norm(rho - sigma);
}

double trace_distance(const LabeledOperator& rho, const LabeledOperator& sigma) {
  if (!(rho.dims == sigma.dims)) throw ShapeError("trace_distance: dims mismatch");
  return trace_distance(rho.matrix, sigma.matrix);
}

double pure_distance(const Vector& a, const Vector& b, double tol) {
  if (a.size() != b.size()) throw ShapeError("pure_distance: dimension mismatch");
  if (std::abs(a.norm() - 1.0) > tol || std::abs(b.norm() - 1.0) > tol)
    throw NumericError("pure_distance: inputs must be unit vectors");
  // ‖b − ⟨a|b⟩a‖ equals √(1 − |⟨a|b⟩|²) but avoids the cancellation that
  // formula suffers when the states nearly coincide.
  const Complex overlap = a.dot(b);  // Eigen's dot conjugates a
  return std::min(1.0, (b - overlap * a).norm());
}

double von_neumann_entropy(const Matrix& rho, double tol) {
  check_density_operator(rho, std::max(tol, kDefaultTol));
  const RealVector vals = hermitian_eigenvalues(rho);
  double h = 0.0;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals(i) > tol) h -= vals(i) * std::log2(vals(i));
  }
  return std::max(h, 0.0);
}

double von_neumann_entropy(const LabeledOperator& rho, double tol) {
  return von_neumann_entropy(rho.matrix, tol);
}

}  // namespace complobs
