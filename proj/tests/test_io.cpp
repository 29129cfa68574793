#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "decodyn/io.hpp"

using namespace decodyn;
using nlohmann::json;

namespace {

json minimal_spec_json(int d = 2) {
  json j;
  j["schema_version"] = 1;
  j["dim"] = d;
  auto zeros = [](int n) {
    json rows = json::array();
    for (int r = 0; r < n; ++r) {
      json row = json::array();
      for (int c = 0; c < n; ++c) row.push_back(0.0);
      rows.push_back(row);
    }
    return rows;
  };
  j["H"] = zeros(d);
  j["K"] = zeros(d);
  j["gamma"] = zeros(d * d - 1);
  j["omega"] = zeros(d * d);
  j["profile"] = {{"kind", "constant"}};
  j["grid"] = {{"t_start", 0.0}, {"t_end", 1.0}, {"points", 3}};
  return j;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path(name) {
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("complex matrix parsing accepts numbers and [re, im] pairs") {
  const json j = json::parse(R"([[1, [0, 2]], [[3, -1], 4]])");
  const CMat m = complex_matrix_from_json(j, "m");
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 2);
  CHECK(m(0, 0) == Cplx(1, 0));
  CHECK(m(0, 1) == Cplx(0, 2));
  CHECK(m(1, 0) == Cplx(3, -1));
  CHECK(m(1, 1) == Cplx(4, 0));
}

TEST_CASE("complex matrix parsing rejects malformed input") {
  CHECK_THROWS_AS(complex_matrix_from_json(json::parse("[]"), "m"),
                  std::invalid_argument);
  CHECK_THROWS_AS(complex_matrix_from_json(json::parse("[[1,2],[3]]"), "m"),
                  std::invalid_argument);
  CHECK_THROWS_AS(complex_matrix_from_json(json::parse("[[\"x\"]]"), "m"),
                  std::invalid_argument);
  CHECK_THROWS_AS(complex_matrix_from_json(json::parse("[[[1,2,3]]]"), "m"),
                  std::invalid_argument);
}

TEST_CASE("matrix JSON round trip preserves complex entries") {
  CMat m(2, 2);
  m << Cplx(1, -0.5), Cplx(0, 2), Cplx(-3, 0), Cplx(0.25, 0.75);
  const CMat back = complex_matrix_from_json(complex_matrix_to_json(m), "m");
  CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("spec document parsing and round trip") {
  const SpecDocument doc = parse_spec_document(minimal_spec_json(2));
  CHECK(doc.spec.dim == 2);
  CHECK(doc.spec.profile.kind == TimeProfile::Kind::Constant);
  CHECK(doc.grid.points == 3);

  const SpecDocument again = parse_spec_document(spec_document_to_json(doc));
  CHECK(again.spec.dim == doc.spec.dim);
  CHECK((again.spec.omega - doc.spec.omega).cwiseAbs().maxCoeff() == 0.0);
  CHECK(again.grid.t_end == doc.grid.t_end);
}

TEST_CASE("spec document with the oscillating profile") {
  json j = minimal_spec_json(2);
  j["profile"] = {{"kind", "exp_sin"}, {"omega_param", 10.0}};
  const SpecDocument doc = parse_spec_document(j);
  CHECK(doc.spec.profile.kind == TimeProfile::Kind::ExpSin);
  CHECK(doc.spec.profile.omega_param == 10.0);
}

TEST_CASE("spec document validation failures") {
  {
    json j = minimal_spec_json();
    j.erase("schema_version");
    CHECK_THROWS_AS(parse_spec_document(j), std::invalid_argument);
  }
  {
    json j = minimal_spec_json();
    j["schema_version"] = 2;
    CHECK_THROWS_AS(parse_spec_document(j), std::invalid_argument);
  }
  {
    json j = minimal_spec_json();
    j["schema_version"] = "1";
    CHECK_THROWS_AS(parse_spec_document(j), std::invalid_argument);
  }
  {
    json j = minimal_spec_json();
    j["dim"] = 1;
    CHECK_THROWS_AS(parse_spec_document(j), std::invalid_argument);
  }
  {
    json j = minimal_spec_json();
    j["gamma"] = json::parse("[[0,0],[0,0]]");  // wrong size for d=2
    CHECK_THROWS_AS(parse_spec_document(j), std::invalid_argument);
  }
  {
    json j = minimal_spec_json();
    j["profile"] = {{"kind", "polynomial"}};
    CHECK_THROWS_AS(parse_spec_document(j), std::invalid_argument);
  }
  {
    json j = minimal_spec_json();
    j["profile"] = {{"kind", "exp_sin"}};  // missing omega_param
    CHECK_THROWS_AS(parse_spec_document(j), std::invalid_argument);
  }
  {
    json j = minimal_spec_json();
    j["grid"]["points"] = 0;
    CHECK_THROWS_AS(parse_spec_document(j), std::invalid_argument);
  }
  {
    json j = minimal_spec_json();
    j["grid"]["t_start"] = 2.0;
    CHECK_THROWS_AS(parse_spec_document(j), std::invalid_argument);
  }
}

TEST_CASE("spec and Choi documents load from disk") {
  const TempFile spec_file("io_test_spec_tmp.json", minimal_spec_json(2).dump());
  const SpecDocument doc = load_spec_document(spec_file.path);
  CHECK(doc.spec.dim == 2);

  json cj;
  cj["schema_version"] = 1;
  cj["dim"] = 2;
  cj["choi"] = json::parse(
      "[[1,0,0,1],[0,0,0,0],[0,0,0,0],[1,0,0,1]]");
  const TempFile choi_file("io_test_choi_tmp.json", cj.dump());
  const ChoiMatrix c = load_choi_document(choi_file.path);
  CHECK(c.dim == 2);
  CHECK(c.hermitian);
  CHECK(c.matrix(0, 3) == Cplx(1, 0));

  CHECK_THROWS_AS(load_spec_document("definitely_missing_file.json"),
                  std::invalid_argument);
  const TempFile broken("io_test_broken_tmp.json", "{ not json");
  CHECK_THROWS_AS(load_spec_document(broken.path), std::invalid_argument);

  cj["choi"] = json::parse("[[1,0],[0,1]]");  // wrong size
  const TempFile small("io_test_small_tmp.json", cj.dump());
  CHECK_THROWS_AS(load_choi_document(small.path), std::invalid_argument);
}

TEST_CASE("non-Hermitian Choi input is flagged") {
  json cj;
  cj["schema_version"] = 1;
  cj["dim"] = 2;
  cj["choi"] = json::parse(
      "[[1,2,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,1]]");
  const TempFile f("io_test_skew_tmp.json", cj.dump());
  CHECK(!load_choi_document(f.path).hermitian);
}

TEST_CASE("12 significant digit formatting") {
  CHECK(format_sig12(1.0 / 3.0) == "0.333333333333");
  CHECK(format_sig12(0.1) == "0.1");
  CHECK(format_sig12(0.0) == "0");
  CHECK(format_sig12(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("CSV report format") {
  ClassificationReport report;
  TimeRecord row;
  row.t = 0.5;
  row.lambda_min = -1.0 / 3.0;
  row.wolk_lo = -0.5;
  row.wolk_hi = 0.25;
  row.g_value = 1.125;
  row.cp = false;
  row.witness_value = std::numeric_limits<double>::quiet_NaN();
  row.verdict = "inconclusive";
  report.rows.push_back(row);

  std::ostringstream os;
  write_report_csv(os, report);
  CHECK(os.str() ==
        "t,lambda_min,wolk_lo,wolk_hi,g,cp,witness_value\n"
        "0.5,-0.333333333333,-0.5,0.25,1.125,0,nan\n");
}

TEST_CASE("JSON report encodes NaN fields as null") {
  SpecDocument doc = parse_spec_document(minimal_spec_json(2));
  ClassificationReport report;
  TimeRecord row;
  row.t = 1.0;
  row.lambda_min = -0.1;
  row.cp = false;
  row.witness_value = std::numeric_limits<double>::quiet_NaN();
  row.verdict = "inconclusive";
  report.rows.push_back(row);
  report.limit = std::numeric_limits<double>::quiet_NaN();
  report.threshold = 4.0 / 3.0;
  report.asymptotic_verdict = "unsupported_degenerate_kernel";
  report.spectrum = {Cplx(0, 0), Cplx(-1, 0.5)};

  const nlohmann::ordered_json j = report_to_json(doc, report);
  CHECK(j.at("schema_version") == 1);
  CHECK(j.at("rows")[0].at("witness_value").is_null());
  CHECK(j.at("asymptotic").at("limit").is_null());
  CHECK(j.at("asymptotic").at("verdict") == "unsupported_degenerate_kernel");
  CHECK(j.at("asymptotic").at("spectrum")[1][0] == -1.0);
  CHECK(j.at("spec").at("dim") == 2);
}
