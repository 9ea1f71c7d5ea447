#include "specdist/triple_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "specdist/error.hpp"

namespace specdist {

namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorCode::Parse, msg); }

const json& require(const json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) parse_error(what + ": missing \"" + key + "\"");
  return j.at(key);
}

double read_real(const json& v, const std::string& what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "Infinity") return std::numeric_limits<double>::infinity();
  }
  parse_error(what + ": expected a number");
}

cplx read_complex(const json& v, const std::string& what) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_object()) {
    const double re = v.contains("re") ? read_real(v.at("re"), what) : 0.0;
    const double im = v.contains("im") ? read_real(v.at("im"), what) : 0.0;
    return {re, im};
  }
  parse_error(what + ": expected a number or {\"re\", \"im\"}");
}

CMatrix read_matrix(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) parse_error(what + ": expected a non-empty array of rows");
  const int rows = static_cast<int>(j.size()), cols = static_cast<int>(j.front().size());
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols) parse_error(what + ": ragged rows");
    for (int k = 0; k < cols; ++k) m(i, k) = read_complex(j[i][k], what);
  }
  return m;
}

RVector read_real_vector(const json& j, const std::string& what) {
  if (!j.is_array()) parse_error(what + ": expected an array");
  RVector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(i) = read_real(j[i], what);
  return v;
}

CVector read_complex_vector(const json& j, const std::string& what) {
  if (!j.is_array()) parse_error(what + ": expected an array");
  CVector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v(i) = read_complex(j[i], what);
  return v;
}

std::vector<CMatrix> read_matrix_list(const json& j, const std::string& what) {
  if (!j.is_array()) parse_error(what + ": expected a list of matrices");
  std::vector<CMatrix> out;
  for (const auto& m : j) out.push_back(read_matrix(m, what));
  return out;
}

json write_real(double x) {
  if (std::isinf(x)) return "inf";
  return x;
}

json write_matrix(const CMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) {
      const cplx z = m(i, k);
      if (z.imag() == 0.0) row.push_back(z.real());
      else row.push_back({{"re", z.real()}, {"im", z.imag()}});
    }
    rows.push_back(row);
  }
  return rows;
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
}

MetricSpace metric_from(const json& j) {
  const json& gj = require(j, "g", "metric");
  if (!gj.is_array()) parse_error("metric: \"g\" must be an array of rows");
  const int n = static_cast<int>(gj.size());
  RMatrix g(n, n);
  for (int i = 0; i < n; ++i) {
    if (!gj[i].is_array() || static_cast<int>(gj[i].size()) != n) parse_error("metric: \"g\" must be square");
    for (int k = 0; k < n; ++k) g(i, k) = read_real(gj[i][k], "metric");
  }
  if (j.contains("size") && j.at("size").get<int>() != n) {
    throw Error(ErrorCode::DimensionMismatch, "metric: \"size\" does not match \"g\"");
  }
  return make_metric(g);
}

Triple builtin_triple(const json& j) {
  const std::string name = j.at("builtin").get<std::string>();
  if (name == "two_point") return two_point_triple(j.value("lambda", 0.5));
  if (name == "simplex3") return simplex_triple();
  if (name == "bloch_conjugation") return bloch_conjugation_triple();
  if (name == "bloch_flip") return bloch_flip_triple();
  if (name == "bloch_moyal") return bloch_moyal_triple();
  if (name == "finite_metric") return finite_metric_triple(metric_from(require(j, "metric", "builtin finite_metric")));
  parse_error("triple: unknown builtin \"" + name + "\"");
}

Triple explicit_triple(const json& j) {
  const std::string label = j.value("label", std::string("triple"));
  const CMatrix dirac = read_matrix(require(j, "dirac", "triple"), "triple dirac");
  const int dim = static_cast<int>(dirac.rows());
  if (j.contains("dim") && j.at("dim").get<int>() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "triple: \"dim\" does not match \"dirac\"");
  }
  std::optional<SMatrix> grading;
  if (j.contains("grading") && !j.at("grading").is_null()) {
    grading = to_sparse(read_matrix(j.at("grading"), "triple grading"));
  }
  const json& alg = require(j, "algebra", "triple");
  const std::string kind = require(alg, "kind", "algebra").get<std::string>();
  const int mult = alg.value("multiplicity", 1);
  if (mult < 1 || dim % mult != 0) throw Error(ErrorCode::DimensionMismatch, "algebra: multiplicity must divide dim");
  const int k = dim / mult;
  std::vector<SMatrix> basis;
  std::vector<CMatrix> defining;
  if (kind == "diagonal" || kind == "full_matrix") {
    const std::vector<CMatrix> abstract = kind == "diagonal" ? diagonal_basis(k) : matrix_basis(k);
    basis = amplify(abstract, mult);
    if (mult > 1) defining = abstract;
  } else if (kind == "explicit") {
    basis = to_sparse(read_matrix_list(require(alg, "basis", "explicit algebra"), "algebra basis"));
  } else {
    parse_error("algebra: unknown kind \"" + kind + "\"");
  }
  if (alg.contains("defining")) defining = read_matrix_list(alg.at("defining"), "algebra defining");
  return make_triple(label, to_sparse(dirac), std::move(grading), std::move(basis), std::move(defining),
                     alg.value("real_linear", false));
}

// Type errors from the JSON library become Parse errors.
template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    parse_error(std::string("malformed document: ") + e.what());
  }
}

}  // namespace

std::string read_json_argument(const std::string& path_or_json) {
  const auto first = path_or_json.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && path_or_json[first] == '{') return path_or_json;
  std::ifstream in(path_or_json);
  if (!in) throw Error(ErrorCode::Parse, "cannot open \"" + path_or_json + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Triple parse_triple(const std::string& text) {
  return guarded([&] {
    const json j = parse_document(text);
    if (!j.is_object()) parse_error("triple: expected an object");
    Triple t = j.contains("builtin") ? builtin_triple(j) : j.contains("g") ? finite_metric_triple(metric_from(j))
                                                                           : explicit_triple(j);
    if (j.contains("label") && (j.contains("builtin") || j.contains("g"))) t.label = j.at("label").get<std::string>();
    if (j.value("evenize", false)) t = evenize(t);
    return t;
  });
}

Triple load_triple(const std::string& path_or_json) { return parse_triple(read_json_argument(path_or_json)); }

std::string triple_to_json(const Triple& t) {
  json j;
  j["label"] = t.label;
  j["dim"] = t.dim;
  j["dirac"] = write_matrix(CMatrix(t.dirac));
  if (t.grading) j["grading"] = write_matrix(CMatrix(*t.grading));
  json basis = json::array();
  for (const auto& b : t.basis) basis.push_back(write_matrix(CMatrix(b)));
  j["algebra"] = {{"kind", "explicit"}, {"basis", basis}};
  if (!t.defining.empty()) {
    json defining = json::array();
    for (const auto& b : t.defining) defining.push_back(write_matrix(b));
    j["algebra"]["defining"] = defining;
  }
  if (t.real_linear) j["algebra"]["real_linear"] = true;
  return j.dump(2);
}

State parse_state(const std::string& text) {
  return guarded([&] {
    const json j = parse_document(text);
    const std::string kind = require(j, "kind", "state").get<std::string>();
    State s;
    if (kind == "density") {
      const CMatrix rho = read_matrix(require(j, "rho", "density state"), "state rho");
      validate_density(rho);
      s = State::density(rho);
    } else if (kind == "bloch") {
      s = state_from_bloch(read_real_vector(require(j, "x", "bloch state"), "state x"));
    } else if (kind == "simplex") {
      s = state_from_simplex(read_real_vector(require(j, "p", "simplex state"), "state p"));
    } else if (kind == "coeffs") {
      s = State::from_values(read_real_vector(require(j, "values", "coeffs state"), "state values"));
    } else if (kind == "pure") {
      s = state_pure(read_complex_vector(require(j, "v", "pure state"), "state v"));
    } else {
      parse_error("state: unknown kind \"" + kind + "\"");
    }
    if (j.contains("label")) s.label = j.at("label").get<std::string>();
    return s;
  });
}

State load_state(const std::string& path_or_json) { return parse_state(read_json_argument(path_or_json)); }

std::string state_to_json(const State& s) {
  json j;
  if (s.kind == State::Kind::Density) {
    j["kind"] = "density";
    j["rho"] = write_matrix(s.rho);
  } else {
    j["kind"] = "coeffs";
    j["values"] = std::vector<double>(s.values.data(), s.values.data() + s.values.size());
  }
  if (!s.label.empty()) j["label"] = s.label;
  return j.dump(2);
}

MetricSpace parse_metric(const std::string& text) {
  return guarded([&] { return metric_from(parse_document(text)); });
}

MetricSpace load_metric(const std::string& path_or_json) { return parse_metric(read_json_argument(path_or_json)); }

std::string metric_to_json(const MetricSpace& x) {
  json g = json::array();
  for (int i = 0; i < x.size; ++i) {
    json row = json::array();
    for (int k = 0; k < x.size; ++k) row.push_back(write_real(x.g(i, k)));
    g.push_back(row);
  }
  return json{{"size", x.size}, {"g", g}}.dump(2);
}

}  // namespace specdist
