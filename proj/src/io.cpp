#include "entcost/io.hpp"

#include <fstream>
#include <sstream>

namespace entcost {

namespace {

Json vector_json(std::span<const cplx> v, bool imag) {
  Json arr = Json::array();
  for (const auto& x : v) arr.push_back(imag ? x.imag() : x.real());
  return arr;
}

DimSplit dims_of(const Json& doc) {
  if (!doc.is_object() || !doc.contains("dims") || !doc.contains("re"))
    throw ParseError("state document needs \"dims\" and \"re\"");
  const Json& dims = doc.at("dims");
  if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_unsigned() || !dims[1].is_number_unsigned())
    throw ParseError("\"dims\" must be two positive integers");
  const DimSplit split{dims[0].get<std::size_t>(), dims[1].get<std::size_t>()};
  if (split.dA == 0 || split.dB == 0) throw ParseError("\"dims\" must be positive");
  if (split.total() > kMaxDim) throw ParseError("\"dims\" exceed the supported size");
  return split;
}

double number_at(const Json& arr, std::size_t i, const char* field) {
  const Json& x = arr.at(i);
  if (!x.is_number()) throw ParseError(std::string("non-numeric entry in \"") + field + "\"");
  return x.get<double>();
}

bool is_ket(const Json& doc) {
  const Json& re = doc.at("re");
  return re.is_array() && (re.empty() || !re.front().is_array());
}

Vector parse_ket(const Json& doc, std::size_t n) {
  const Json& re = doc.at("re");
  const Json* im = doc.contains("im") ? &doc.at("im") : nullptr;
  if (!re.is_array() || re.size() != n) throw ParseError("\"re\" length does not match dims");
  if (im && (!im->is_array() || im->size() != n)) throw ParseError("\"im\" length does not match dims");
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {number_at(re, i, "re"), im ? number_at(*im, i, "im") : 0.0};
  return v;
}

Matrix parse_matrix(const Json& doc, std::size_t n) {
  const Json& re = doc.at("re");
  const Json* im = doc.contains("im") ? &doc.at("im") : nullptr;
  auto check_rows = [n](const Json& rows, const char* field) {
    if (!rows.is_array() || rows.size() != n)
      throw ParseError(std::string("\"") + field + "\" must have one row per basis state");
    for (const auto& row : rows)
      if (!row.is_array() || row.size() != n) throw ParseError(std::string("\"") + field + "\" row has wrong length");
  };
  check_rows(re, "re");
  if (im) check_rows(*im, "im");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = {number_at(re[i], j, "re"), im ? number_at((*im)[i], j, "im") : 0.0};
  return m;
}

}  // namespace

Json to_json(const Matrix& m, DimSplit split) {
  Json re = Json::array();
  Json im = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json rr = Json::array();
    Json ri = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return Json{{"dims", {split.dA, split.dB}}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Json to_json(const DensityMatrix& rho) { return to_json(rho.mat(), rho.split()); }

Json to_json(const PureState& psi) {
  return Json{{"dims", {psi.split().dA, psi.split().dB}},
              {"re", vector_json(psi.vec(), false)},
              {"im", vector_json(psi.vec(), true)}};
}

Json to_json(const Decomposition& dec) {
  Json states = Json::array();
  for (const auto& s : dec.states) states.push_back(to_json(s));
  return Json{{"weights", dec.weights}, {"states", std::move(states)}};
}

Json to_json(const EfResult& result) {
  return Json{{"value", result.value.value()},
              {"restarts_converged", result.restarts_converged},
              {"history", result.history},
              {"decomposition", to_json(result.decomposition)}};
}

Json to_json(const EbCertificate& cert) {
  Json ensemble = Json::array();
  for (const auto& t : cert.ensemble) {
    ensemble.push_back(Json{{"weight", t.weight},
                            {"a", {{"re", vector_json(t.a, false)}, {"im", vector_json(t.a, true)}}},
                            {"b", {{"re", vector_json(t.b, false)}, {"im", vector_json(t.b, true)}}}});
  }
  Json doc{{"verdict", std::string(to_string(cert.verdict))},
           {"method", cert.method ? Json(std::string(to_string(*cert.method))) : Json(nullptr)},
           {"min_pt_eig", cert.min_pt_eig},
           {"ensemble", std::move(ensemble)}};
  if (!cert.ensemble.empty()) doc["ensemble_residual"] = cert.ensemble_residual;
  if (!cert.pt_witness.empty())
    doc["witness"] = Json{{"re", vector_json(cert.pt_witness, false)}, {"im", vector_json(cert.pt_witness, true)}};
  return doc;
}

DensityMatrix density_from_json(const Json& doc) {
  const DimSplit split = dims_of(doc);
  if (is_ket(doc)) {
    const Vector v = parse_ket(doc, split.total());
    return DensityMatrix(Matrix::projector(v), split);
  }
  return DensityMatrix(parse_matrix(doc, split.total()), split);
}

PureState pure_from_json(const Json& doc) {
  const DimSplit split = dims_of(doc);
  if (!is_ket(doc)) throw ParseError("expected a ket with flat \"re\"/\"im\" arrays");
  return PureState(parse_ket(doc, split.total()), split);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace entcost
