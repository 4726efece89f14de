#pragma once

// Shared helpers for the test suites: deterministic input generators and the
// independent oracles used to freeze expected values. Everything here stays
// off the library's solver paths so oracle checks remain meaningful.

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "complobs/linalg.hpp"
#include "complobs/random.hpp"
#include "complobs/states.hpp"

namespace test_support {

using complobs::Complex;
using complobs::DimList;
using complobs::Matrix;
using complobs::Vector;

inline Vector basis_vector(std::size_t dim, std::size_t k) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(k)) = 1.0;
  return v;
}

inline Vector plus_state() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v;
}

// σ_y eigenstates |0_y⟩, |1_y⟩ with eigenvalues +1, −1.
inline Vector y_ket(int k) {
  Vector v(2);
  const double s = 1.0 / std::sqrt(2.0);
  v << Complex(s, 0.0), (k == 0 ? Complex(0.0, s) : Complex(0.0, -s));
  return v;
}

inline complobs::Ensemble two_state_ensemble(const Vector& a, const Vector& b,
                                             double wa = 0.5,
                                             const DimList& dims = DimList{{"B", 2}}) {
  complobs::RealVector w(2);
  w << wa, 1.0 - wa;
  std::vector<complobs::LabeledOperator> members;
  members.emplace_back(Matrix(a * a.adjoint()), dims);
  members.emplace_back(Matrix(b * b.adjoint()), dims);
  return complobs::Ensemble::validated(std::move(w), std::move(members));
}

// Symmetric trine: three equal-weight qubit pure states 120° apart on the
// Bloch equator. Known minimum-error optimum: 2/3.
inline complobs::Ensemble trine_ensemble() {
  complobs::RealVector w(3);
  w << 1.0 / 3, 1.0 / 3, 1.0 / 3;
  std::vector<complobs::LabeledOperator> members;
  for (int k = 0; k < 3; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / 3.0;
    Vector v(2);
    v << std::cos(theta / 2), std::sin(theta / 2);
    members.emplace_back(Matrix(v * v.adjoint()), DimList{{"B", 2}});
  }
  return complobs::Ensemble::validated(std::move(w), std::move(members));
}

inline complobs::Ensemble random_ensemble(std::size_t dim, std::size_t n,
                                          complobs::RandomStream& rng,
                                          const DimList& dims) {
  complobs::RealVector w(static_cast<Eigen::Index>(n));
  double sum = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    w(i) = rng.uniform() + 0.05;
    sum += w(i);
  }
  w /= sum;
  std::vector<complobs::LabeledOperator> members;
  for (std::size_t i = 0; i < n; ++i)
    members.emplace_back(complobs::random_density(dim, 1 + i % dim, rng), dims);
  return complobs::Ensemble::validated(std::move(w), std::move(members));
}

// Scalar Shannon entropy in bits; oracle for the entropy-based checks.
inline double entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p)
    if (v > 1e-15) h -= v * std::log2(v);
  return h;
}

// |ξ⟩ = (1/√d) Σ_x |x̃⟩^A |−x̃⟩^D (Z^{−x})^C |ψ⟩^{CBR}: the ideal output of the
// second recovery step, built by loops, independent of the build/apply paths.
inline complobs::PureState xi_oracle(const complobs::PureState& psi) {
  const std::size_t d = psi.dims()[0].dim;
  const std::size_t db = psi.dims()[1].dim;
  const std::size_t dr = psi.dims()[2].dim;
  const complobs::PureState psi_cbr = psi.relabeled("A", "C");

  Vector out = Vector::Zero(static_cast<Eigen::Index>(d * d * d * db * dr));
  for (std::size_t x = 0; x < d; ++x) {
    const Vector xa = complobs::fourier_vector(d, x);
    const Vector xd = complobs::fourier_vector(d, (d - x) % d);
    const Vector zc =
        complobs::kron(complobs::weyl_z_power(d, -static_cast<long>(x)),
                       complobs::identity(db * dr)) *
        psi_cbr.amplitudes();
    out += complobs::kron(complobs::kron(xa, xd), zc);
  }
  out /= std::sqrt(static_cast<double>(d));
  DimList dims{{"A", d}, {"D", d}, {"C", d}, {"B", db}, {"R", dr}};
  return complobs::PureState(out, dims);
}

// Fully entangled fraction oracle: max_W ⟨Φ|(W⊗I)†ρ(W⊗I)|Φ⟩ over single-qubit
// unitaries W (every maximally entangled two-qubit state is (W⊗I)|Φ₂⟩ up to a
// local factor absorbed into W). Hierarchical zoom over the three SU(2)
// angles; separable states stay ≤ 1/2.
inline double max_entangled_fraction(const Matrix& rho_ab, double resolution = 1e-5) {
  const auto value = [&](double theta, double alpha, double beta) {
    Matrix w(2, 2);
    w(0, 0) = std::cos(theta) * Complex(std::cos(alpha), std::sin(alpha));
    w(0, 1) = std::sin(theta) * Complex(std::cos(beta), std::sin(beta));
    w(1, 0) = -std::sin(theta) * Complex(std::cos(beta), -std::sin(beta));
    w(1, 1) = std::cos(theta) * Complex(std::cos(alpha), -std::sin(alpha));
    Vector phi = Vector::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    const Vector rotated = complobs::kron(w, complobs::identity(2)) * phi;
    return (rotated.adjoint() * rho_ab * rotated).value().real();
  };

  std::array<double, 3> center{std::numbers::pi / 4, 0.0, 0.0};
  double best = value(center[0], center[1], center[2]);
  double span = std::numbers::pi;
  while (span > resolution) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t q = 0; q < 3; ++q) {
        double best_angle = center[q];
        for (int t = 0; t < 17; ++t) {
          auto trial = center;
          trial[q] = center[q] + span * (2.0 * t / 16.0 - 1.0);
          const double v = value(trial[0], trial[1], trial[2]);
          if (v > best) {
            best = v;
            best_angle = trial[q];
          }
        }
        center[q] = best_angle;
      }
    }
    span *= 0.5;
  }
  return best;
}

}  // namespace test_support
