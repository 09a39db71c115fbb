#include "expcomm/json_io.hpp"

namespace expcomm {

void to_json(Json& j, const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  Json re = Json::array();
  Json im = Json::array();
  for (std::size_t r = 0; r < n; ++r) {
    Json rr = Json::array();
    Json ir = Json::array();
    for (std::size_t c = 0; c < n; ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  j = Json{{"dim", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

void from_json(const Json& j, ComplexMatrix& m) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im")) {
    throw PreconditionError("matrix JSON: expected object with keys dim, re, im");
  }
  const auto n = j.at("dim").get<std::size_t>();
  if (n == 0) throw PreconditionError("matrix JSON: dim must be positive");
  const Json& re = j.at("re");
  const Json& im = j.at("im");
  if (!re.is_array() || !im.is_array() || re.size() != n || im.size() != n) {
    throw PreconditionError("matrix JSON: re and im must have dim rows");
  }
  std::vector<Complex> data;
  data.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!re[r].is_array() || !im[r].is_array() || re[r].size() != n || im[r].size() != n) {
      throw PreconditionError("matrix JSON: every row must have dim entries");
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (!re[r][c].is_number() || !im[r][c].is_number()) {
        throw PreconditionError("matrix JSON: entries must be finite numbers");
      }
      data.emplace_back(re[r][c].get<double>(), im[r][c].get<double>());
    }
  }
  m = ComplexMatrix(n, std::move(data));
}

void to_json(Json& j, const ToleranceConfig& t) {
  j = Json{{"tol_normal", t.tol_normal},
           {"tol_hermitian", t.tol_hermitian},
           {"tol_unitary", t.tol_unitary},
           {"tol_recon", t.tol_recon},
           {"tol_flag", t.tol_flag},
           {"tol_conclude", t.tol_conclude},
           {"spectral_margin", t.spectral_margin},
           {"angular_margin", t.angular_margin},
           {"tol_nullspace", t.tol_nullspace}};
}

void from_json(const Json& j, ToleranceConfig& t) {
  auto read = [&](const char* key, double& field) {
    if (j.contains(key)) field = j.at(key).get<double>();
  };
  read("tol_normal", t.tol_normal);
  read("tol_hermitian", t.tol_hermitian);
  read("tol_unitary", t.tol_unitary);
  read("tol_recon", t.tol_recon);
  read("tol_flag", t.tol_flag);
  read("tol_conclude", t.tol_conclude);
  read("spectral_margin", t.spectral_margin);
  read("angular_margin", t.angular_margin);
  read("tol_nullspace", t.tol_nullspace);
  t.validate();
}

void to_json(Json& j, const Interval& w) { j = Json{{"lo", w.lo}, {"hi", w.hi}}; }
void from_json(const Json& j, Interval& w) {
  w.lo = j.at("lo").get<double>();
  w.hi = j.at("hi").get<double>();
}
void to_json(Json& j, const Arc& a) { j = Json{{"center", a.center}, {"width", a.width}}; }
void from_json(const Json& j, Arc& a) {
  a.center = j.at("center").get<double>();
  a.width = j.at("width").get<double>();
}

void to_json(Json& j, const GenSpec& spec) {
  j = Json{{"dim", spec.dim}, {"seed", spec.seed}};
  j["spectral_window"] = spec.spectral_window ? Json(*spec.spectral_window) : Json(nullptr);
  j["arc"] = spec.arc ? Json(*spec.arc) : Json(nullptr);
}

void from_json(const Json& j, GenSpec& spec) {
  spec.dim = j.at("dim").get<std::size_t>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.spectral_window.reset();
  spec.arc.reset();
  if (j.contains("spectral_window") && !j.at("spectral_window").is_null()) {
    spec.spectral_window = j.at("spectral_window").get<Interval>();
  }
  if (j.contains("arc") && !j.at("arc").is_null()) spec.arc = j.at("arc").get<Arc>();
}

void to_json(Json& j, const ImplicationResult& r) {
  j = Json{{"theorem", r.theorem},
           {"hypothesis_residuals", r.hypothesis_residuals},
           {"hypothesis_conditions", r.hypothesis_conditions},
           {"hypothesis_satisfied", r.hypothesis_satisfied},
           {"conclusion_residual", r.conclusion_residual},
           {"conclusion_satisfied", r.conclusion_satisfied},
           {"verdict", to_string(r.verdict)},
           {"diagnostics", r.diagnostics}};
}

void to_json(Json& j, const CounterexampleRecord& r) {
  Json matrices = Json::object();
  for (const auto& [name, m] : r.matrices) matrices[name] = m;
  j = Json{{"description", r.description},
           {"seed", r.seed ? Json(*r.seed) : Json(nullptr)},
           {"matrices", std::move(matrices)},
           {"violated_hypothesis", r.violated_hypothesis},
           {"hypothesis_residuals", r.hypothesis_residuals},
           {"conclusion_residual", r.conclusion_residual},
           {"diagnostics", r.diagnostics}};
}

}  // namespace expcomm
