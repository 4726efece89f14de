#include "complobs/serialization.hpp"

namespace complobs {

using nlohmann::json;

json to_json(const DimList& dims) {
  json out = json::array();
  for (const auto& f : dims) out.push_back(json::array({f.label, f.dim}));
  return out;
}

DimList dimlist_from_json(const json& j) {
  std::vector<Subsystem> factors;
  for (const auto& entry : j)
    factors.push_back({entry.at(0).get<std::string>(), entry.at(1).get<std::size_t>()});
  return DimList(std::move(factors));
}

namespace {

void write_complex(json& j, const Complex* data, std::size_t n) {
  json re = json::array(), im = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    re.push_back(data[i].real());
    im.push_back(data[i].imag());
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
}

std::vector<Complex> read_complex(const json& j, std::size_t expected) {
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (re.size() != expected || im.size() != expected)
    throw ShapeError("serialized amplitudes have the wrong length");
  std::vector<Complex> out(expected);
  for (std::size_t i = 0; i < expected; ++i)
    out[i] = Complex(re[i].get<double>(), im[i].get<double>());
  return out;
}

json matrix_to_json(const Matrix& m) {
  // row-major flattening
  json j;
  std::vector<Complex> flat;
  flat.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
  write_complex(j, flat.data(), flat.size());
  return j;
}

Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
  const auto flat = read_complex(j, rows * cols);
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = flat[r * cols + c];
  return m;
}

}  // namespace

json to_json(const PureState& psi) {
  json j;
  j["dims"] = to_json(psi.dims());
  write_complex(j, psi.amplitudes().data(),
                static_cast<std::size_t>(psi.amplitudes().size()));
  return j;
}

PureState state_from_json(const json& j) {
  DimList dims = dimlist_from_json(j.at("dims"));
  const auto flat = read_complex(j, dims.total());
  Vector v(static_cast<Eigen::Index>(flat.size()));
  for (std::size_t i = 0; i < flat.size(); ++i) v(static_cast<Eigen::Index>(i)) = flat[i];
  return PureState(std::move(v), std::move(dims));
}

json to_json(const LabeledOperator& op) {
  json j = matrix_to_json(op.matrix);
  j["dims"] = to_json(op.dims);
  return j;
}

LabeledOperator operator_from_json(const json& j) {
  DimList dims = dimlist_from_json(j.at("dims"));
  Matrix m = matrix_from_json(j, dims.total(), dims.total());
  return LabeledOperator(std::move(m), std::move(dims));
}

json to_json(const Isometry& u) {
  json j = matrix_to_json(u.matrix);
  j["in_dims"] = to_json(u.in_dims);
  j["out_dims"] = to_json(u.out_dims);
  return j;
}

Isometry isometry_from_json(const json& j) {
  DimList in = dimlist_from_json(j.at("in_dims"));
  DimList out = dimlist_from_json(j.at("out_dims"));
  Matrix m = matrix_from_json(j, out.total(), in.total());
  return Isometry::validated(std::move(m), std::move(in), std::move(out), 1e-8);
}

json to_json(const Povm& povm) {
  json elements = json::array();
  for (const auto& e : povm.elements) elements.push_back(to_json(e));
  return json{{"elements", std::move(elements)}};
}

Povm povm_from_json(const json& j) {
  std::vector<LabeledOperator> elements;
  for (const auto& e : j.at("elements")) elements.push_back(operator_from_json(e));
  return Povm::validated(std::move(elements), 1e-7);
}

json to_json(const GuessReport& report, bool include_measurement) {
  json j{{"achieved", report.achieved},
         {"upper", report.upper},
         {"gap", report.gap},
         {"iterations", report.iterations},
         {"converged", report.converged}};
  if (include_measurement) j["measurement"] = to_json(report.measurement);
  return j;
}

json to_json(const SecureReport& report) {
  json per = json::array();
  for (const auto& o : report.per_outcome)
    per.push_back(json{{"weight_factor", o.weight_factor}, {"fidelity", o.fidelity}});
  return json{{"value", report.value}, {"per_outcome", std::move(per)}};
}

json to_json(const TheoremCertificate& cert) {
  json j{{"theorem", cert.theorem},
         {"eps_z", cert.eps_z},
         {"eps_x", cert.eps_x},
         {"bound", cert.bound},
         {"bound_uncapped", cert.bound_uncapped},
         {"distance", cert.achieved_distance},
         {"holds", cert.holds},
         {"solver",
          json{{"gap_z", cert.solver.gap_z},
               {"gap_x", cert.solver.gap_x},
               {"achieved_z", cert.solver.achieved_z},
               {"achieved_x", cert.solver.achieved_x},
               {"iterations_z", cert.solver.iterations_z},
               {"iterations_x", cert.solver.iterations_x},
               {"converged_z", cert.solver.converged_z},
               {"converged_x", cert.solver.converged_x}}}};
  if (cert.experimental) j["experimental"] = true;
  if (cert.secure_z) j["secure_z"] = to_json(*cert.secure_z);
  if (cert.secure_x) j["secure_x"] = to_json(*cert.secure_x);
  return j;
}

json to_json(const DualityReport& report) {
  const auto direction = [](const DualityDirection& d) {
    return json{{"premise_secure", d.premise_secure},
                {"implied_lower", d.implied_lower},
                {"achieved_guess", d.achieved_guess},
                {"solver_gap", d.solver_gap},
                {"margin", d.margin}};
  };
  return json{{"z_from_x", direction(report.z_from_x)},
              {"x_from_z", direction(report.x_from_z)},
              {"holds", report.holds},
              {"tol", report.tol}};
}

}  // namespace complobs
