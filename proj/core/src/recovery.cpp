#include "complobs/recovery.hpp"

#include <cmath>

namespace complobs {

Isometry Isometry::validated(Matrix m, DimList in, DimList out, double tol) {
  if (static_cast<std::size_t>(m.cols()) != in.total() ||
      static_cast<std::size_t>(m.rows()) != out.total())
    throw ShapeError("isometry matrix does not match its declared dims");
  if (out.total() < in.total())
    throw ShapeError("isometry output space smaller than input space");
  const double defect = max_abs(m.adjoint() * m - identity(in.total()));
  if (defect > tol)
    throw NumericError("isometry defect " + std::to_string(defect) + " above tol");
  return Isometry{std::move(m), std::move(in), std::move(out)};
}

Isometry coherent_measurement(const Povm& povm, const std::string& store_label,
                              const std::vector<Vector>& store_basis, double tol) {
  if (store_basis.size() != povm.outcomes())
    throw ShapeError("coherent_measurement: one store state per outcome required");
  const std::size_t store_dim = static_cast<std::size_t>(store_basis.front().size());
  for (std::size_t a = 0; a < store_basis.size(); ++a) {
    if (static_cast<std::size_t>(store_basis[a].size()) != store_dim)
      throw ShapeError("coherent_measurement: store states of unequal dimension");
    for (std::size_t b = 0; b <= a; ++b) {
      const Complex ip = store_basis[b].dot(store_basis[a]);
      const double expected = a == b ? 1.0 : 0.0;
      if (std::abs(ip - expected) > tol)
        throw NumericError("coherent_measurement: store basis is not orthonormal");
    }
  }

  const std::size_t in_dim = povm.dims().total();
  const DimList out_dims = DimList{{store_label, store_dim}}.concatenated(povm.dims());

  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(store_dim * in_dim),
                          static_cast<Eigen::Index>(in_dim));
  for (std::size_t m = 0; m < povm.outcomes(); ++m) {
    // Tight tolerance: the isometry identity U†U = ΣΛ_m needs every honest
    // eigenvalue kept; only genuine rounding dirt may be clipped.
    const Matrix root = matrix_sqrt_psd(povm.elements[m].matrix, 1e-12);
    for (std::size_t k = 0; k < store_dim; ++k) {
      const Complex amp = store_basis[m](static_cast<Eigen::Index>(k));
      if (std::abs(amp) == 0.0) continue;
      u.block(static_cast<Eigen::Index>(k * in_dim), 0, static_cast<Eigen::Index>(in_dim),
              static_cast<Eigen::Index>(in_dim)) += amp * root;
    }
  }
  return Isometry::validated(std::move(u), povm.dims(), out_dims);
}

Isometry build_u1(const Povm& lambda_z) {
  const std::size_t d = lambda_z.outcomes();
  std::vector<Vector> basis;
  basis.reserve(d);
  for (std::size_t z = 0; z < d; ++z) {
    Vector e = Vector::Zero(static_cast<Eigen::Index>(d));
    e(static_cast<Eigen::Index>(z)) = 1.0;
    basis.push_back(std::move(e));
  }
  return coherent_measurement(lambda_z, "C", basis);
}

Isometry build_u2(const Povm& gamma_x) {
  const std::size_t d = gamma_x.outcomes();
  if (d < 2) throw DomainError("build_u2 needs at least two outcomes");
  std::vector<Vector> basis;
  basis.reserve(d);
  for (std::size_t x = 0; x < d; ++x) basis.push_back(fourier_vector(d, (d - x) % d));
  return coherent_measurement(gamma_x, "D", basis);
}

Isometry build_u3(std::size_t d) {
  if (d < 2) throw DomainError("build_u3 needs dimension at least 2");
  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(d * d), static_cast<Eigen::Index>(d * d));
  for (std::size_t x = 0; x < d; ++x) {
    const Vector fx = fourier_vector(d, x);
    u += kron(Matrix(fx * fx.adjoint()), weyl_z_power(d, -static_cast<long>(x)));
  }
  const DimList dims{{"D", d}, {"C", d}};
  return Isometry::validated(std::move(u), dims, dims);
}

Isometry compose_recovery(const Povm& lambda_z, const Povm& gamma_x) {
  const std::size_t d = lambda_z.outcomes();
  if (gamma_x.outcomes() != d)
    throw ShapeError("compose_recovery: measurements disagree on the outcome count");
  if (lambda_z.dims().count() != 1)
    throw ShapeError("compose_recovery: Λ_z must act on the single factor B");
  if (gamma_x.dims().count() != 2 || gamma_x.dims()[0].label != "C" ||
      gamma_x.dims()[0].dim != d)
    throw ShapeError("compose_recovery: Γ_x must act on [C,B] with dim(C) = outcomes");
  if (!(gamma_x.dims()[1] == lambda_z.dims()[0]))
    throw ShapeError("compose_recovery: Γ_x's B factor must match Λ_z's");

  const Isometry u1 = build_u1(lambda_z);
  const Isometry u2 = build_u2(gamma_x);
  const Isometry u3 = build_u3(d);
  const std::size_t db = lambda_z.dims().total();

  Matrix full = kron(u3.matrix, identity(db)) * u2.matrix * u1.matrix;
  return Isometry::validated(std::move(full), u1.in_dims, u3.out_dims.concatenated(u1.in_dims));
}

PureState apply_isometry(const PureState& psi, const Isometry& u) {
  const DimList& dims = psi.dims();
  if (u.in_dims.count() == 0) throw ShapeError("apply_isometry: empty input dims");
  const std::size_t start = dims.position(u.in_dims[0].label);
  if (start + u.in_dims.count() > dims.count())
    throw ShapeError("apply_isometry: input factors not contiguous in the state");
  for (std::size_t i = 0; i < u.in_dims.count(); ++i) {
    if (!(dims[start + i] == u.in_dims[i]))
      throw ShapeError("apply_isometry: input factors not contiguous in the state");
  }

  std::size_t left = 1, right = 1;
  std::vector<Subsystem> out_factors;
  for (std::size_t i = 0; i < start; ++i) {
    left *= dims[i].dim;
    out_factors.push_back(dims[i]);
  }
  for (const auto& f : u.out_dims) out_factors.push_back(f);
  for (std::size_t i = start + u.in_dims.count(); i < dims.count(); ++i) {
    right *= dims[i].dim;
    out_factors.push_back(dims[i]);
  }
  const std::size_t mid_in = u.in_dims.total();
  const std::size_t mid_out = u.out_dims.total();

  const DimList out_dims{std::vector<Subsystem>(out_factors)};
  Vector out = Vector::Zero(static_cast<Eigen::Index>(out_dims.total()));
  Vector gather(static_cast<Eigen::Index>(mid_in));
  for (std::size_t l = 0; l < left; ++l) {
    for (std::size_t r = 0; r < right; ++r) {
      for (std::size_t m = 0; m < mid_in; ++m)
        gather(static_cast<Eigen::Index>(m)) =
            psi.amplitudes()(static_cast<Eigen::Index>((l * mid_in + m) * right + r));
      const Vector scattered = u.matrix * gather;
      for (std::size_t m = 0; m < mid_out; ++m)
        out(static_cast<Eigen::Index>((l * mid_out + m) * right + r)) =
            scattered(static_cast<Eigen::Index>(m));
    }
  }
  return PureState(std::move(out), out_dims);
}

PureState apply_recovery(const Isometry& u, const PureState& psi) {
  return apply_isometry(psi, u);
}

PureState ideal_recovery_target(const PureState& psi) {
  const std::size_t d = psi.dims()[0].dim;
  if (psi.dims()[0].label != "A")
    throw LabelError("ideal_recovery_target: first factor must be labeled A");
  return tensor(phi_d(d, "A", "D"), psi.relabeled("A", "C"));
}

double recovery_error(const PureState& psi, const Isometry& u) {
  const PureState recovered = apply_recovery(u, psi);
  const PureState target = ideal_recovery_target(psi);
  if (!(recovered.dims() == target.dims()))
    throw ShapeError("recovery_error: recovered state and target disagree on dims");
  return pure_distance(recovered.amplitudes(), target.amplitudes());
}

}  // namespace complobs
