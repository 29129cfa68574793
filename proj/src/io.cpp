#include "decodyn/io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace decodyn {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

Cplx complex_entry_from_json(const json& e, const std::string& field) {
  if (e.is_number()) return Cplx(e.get<double>(), 0.0);
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return Cplx(e[0].get<double>(), e[1].get<double>());
  throw std::invalid_argument(field + ": entries must be numbers or [re, im] pairs");
}

const json& require_field(const json& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) throw std::invalid_argument("missing required field: " + key);
  return *it;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return j;
}

void check_schema_version(const json& j) {
  const json& v = require_field(j, "schema_version");
  if (!v.is_number_integer() || v.get<int>() != 1)
    throw std::invalid_argument("schema_version must be the integer 1");
}

}  // namespace

CMat complex_matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument(field + ": must be a non-empty array of rows");
  const size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty())
    throw std::invalid_argument(field + ": rows must be non-empty arrays of entries");
  const size_t cols = j[0].size();
  CMat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw std::invalid_argument(field + ": ragged row " + std::to_string(r));
    for (size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_entry_from_json(j[r][c], field);
  }
  return m;
}

ordered_json complex_matrix_to_json(const CMat& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

SpecDocument parse_spec_document(const json& j) {
  check_schema_version(j);
  SpecDocument doc;
  const json& dim_j = require_field(j, "dim");
  if (!dim_j.is_number_integer() || dim_j.get<int>() < 2)
    throw std::invalid_argument("dim must be an integer >= 2");
  const int d = dim_j.get<int>();
  doc.spec.dim = d;

  doc.spec.H = complex_matrix_from_json(require_field(j, "H"), "H");
  doc.spec.K = complex_matrix_from_json(require_field(j, "K"), "K");
  doc.spec.gamma = complex_matrix_from_json(require_field(j, "gamma"), "gamma");
  doc.spec.omega = complex_matrix_from_json(require_field(j, "omega"), "omega");

  auto check_size = [](const CMat& m, int rows, const std::string& name) {
    if (m.rows() != rows || m.cols() != rows)
      throw std::invalid_argument(name + ": expected " + std::to_string(rows) + "x" +
                                  std::to_string(rows) + " matrix");
  };
  check_size(doc.spec.H, d, "H");
  check_size(doc.spec.K, d, "K");
  check_size(doc.spec.gamma, d * d - 1, "gamma");
  check_size(doc.spec.omega, d * d, "omega");

  const json& profile = require_field(j, "profile");
  const json& kind = require_field(profile, "kind");
  if (kind == "constant") {
    doc.spec.profile.kind = TimeProfile::Kind::Constant;
  } else if (kind == "exp_sin") {
    doc.spec.profile.kind = TimeProfile::Kind::ExpSin;
    const json& w = require_field(profile, "omega_param");
    if (!w.is_number()) throw std::invalid_argument("profile.omega_param must be a number");
    doc.spec.profile.omega_param = w.get<double>();
  } else {
    throw std::invalid_argument("profile.kind must be \"constant\" or \"exp_sin\"");
  }

  const json& grid = require_field(j, "grid");
  doc.grid.t_start = require_field(grid, "t_start").get<double>();
  doc.grid.t_end = require_field(grid, "t_end").get<double>();
  doc.grid.points = require_field(grid, "points").get<int>();
  if (doc.grid.points < 1) throw std::invalid_argument("grid.points must be >= 1");
  if (!(doc.grid.t_start <= doc.grid.t_end))
    throw std::invalid_argument("grid.t_start must not exceed grid.t_end");
  return doc;
}

SpecDocument load_spec_document(const std::string& path) {
  return parse_spec_document(load_json_file(path));
}

ordered_json spec_document_to_json(const SpecDocument& doc) {
  ordered_json j;
  j["schema_version"] = 1;
  j["dim"] = doc.spec.dim;
  j["H"] = complex_matrix_to_json(doc.spec.H);
  j["K"] = complex_matrix_to_json(doc.spec.K);
  j["gamma"] = complex_matrix_to_json(doc.spec.gamma);
  j["omega"] = complex_matrix_to_json(doc.spec.omega);
  ordered_json profile;
  if (doc.spec.profile.kind == TimeProfile::Kind::Constant) {
    profile["kind"] = "constant";
  } else {
    profile["kind"] = "exp_sin";
    profile["omega_param"] = doc.spec.profile.omega_param;
  }
  j["profile"] = std::move(profile);
  j["grid"] = {{"t_start", doc.grid.t_start},
               {"t_end", doc.grid.t_end},
               {"points", doc.grid.points}};
  return j;
}

ChoiMatrix load_choi_document(const std::string& path) {
  const json j = load_json_file(path);
  check_schema_version(j);
  const json& dim_j = require_field(j, "dim");
  if (!dim_j.is_number_integer() || dim_j.get<int>() < 2)
    throw std::invalid_argument("dim must be an integer >= 2");
  const int d = dim_j.get<int>();
  ChoiMatrix c;
  c.dim = d;
  c.matrix = complex_matrix_from_json(require_field(j, "choi"), "choi");
  if (c.matrix.rows() != d * d || c.matrix.cols() != d * d)
    throw std::invalid_argument("choi: expected a d^2 x d^2 matrix");
  c.hermitian = (c.matrix - c.matrix.adjoint()).cwiseAbs().maxCoeff() <= 1e-10;
  return c;
}

ordered_json choi_document_to_json(const ChoiMatrix& c) {
  ordered_json j;
  j["schema_version"] = 1;
  j["dim"] = c.dim;
  j["choi"] = complex_matrix_to_json(c.matrix);
  return j;
}

std::string format_sig12(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

ordered_json report_to_json(const SpecDocument& doc, const ClassificationReport& report) {
  ordered_json j;
  j["schema_version"] = 1;
  j["spec"] = spec_document_to_json(doc);
  ordered_json rows = ordered_json::array();
  for (const TimeRecord& row : report.rows) {
    ordered_json r;
    r["t"] = row.t;
    r["lambda_min"] = row.lambda_min;
    r["wolk_lo"] = row.wolk_lo;
    r["wolk_hi"] = row.wolk_hi;
    r["g"] = row.g_value;
    r["cp"] = row.cp;
    if (std::isnan(row.witness_value))
      r["witness_value"] = nullptr;
    else
      r["witness_value"] = row.witness_value;
    r["verdict"] = row.verdict;
    if (row.witness) r["witness"] = complex_matrix_to_json(*row.witness);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["crossings"] = report.crossings;
  ordered_json asym;
  ordered_json spectrum = ordered_json::array();
  for (const Cplx& mu : report.spectrum) spectrum.push_back({mu.real(), mu.imag()});
  asym["spectrum"] = std::move(spectrum);
  if (std::isnan(report.limit))
    asym["limit"] = nullptr;
  else
    asym["limit"] = report.limit;
  asym["threshold"] = report.threshold;
  asym["verdict"] = report.asymptotic_verdict;
  j["asymptotic"] = std::move(asym);
  return j;
}

void write_report_csv(std::ostream& os, const ClassificationReport& report) {
  os << "t,lambda_min,wolk_lo,wolk_hi,g,cp,witness_value\n";
  for (const TimeRecord& row : report.rows) {
    os << format_sig12(row.t) << ',' << format_sig12(row.lambda_min) << ','
       << format_sig12(row.wolk_lo) << ',' << format_sig12(row.wolk_hi) << ','
       << format_sig12(row.g_value) << ',' << (row.cp ? 1 : 0) << ','
       << format_sig12(row.witness_value) << '\n';
  }
}

}  // namespace decodyn
