#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "decodyn/certification.hpp"
#include "decodyn/generators.hpp"

namespace decodyn {

// Grid section of a spec document.
struct GridSpec {
  double t_start = 0.0;
  double t_end = 1.0;
  int points = 2;
};

struct SpecDocument {
  GeneratorSpec spec;
  GridSpec grid;
};

// JSON encoding: complex entries as [re, im] (plain numbers accepted on
// read); schema_version is required and must equal 1.
SpecDocument parse_spec_document(const nlohmann::json& j);
SpecDocument load_spec_document(const std::string& path);
nlohmann::ordered_json spec_document_to_json(const SpecDocument& doc);

nlohmann::ordered_json complex_matrix_to_json(const CMat& m);
CMat complex_matrix_from_json(const nlohmann::json& j, const std::string& field);

// {"schema_version":1, "dim":d, "choi": [[..]]}
ChoiMatrix load_choi_document(const std::string& path);
nlohmann::ordered_json choi_document_to_json(const ChoiMatrix& c);

nlohmann::ordered_json report_to_json(const SpecDocument& doc,
                                      const ClassificationReport& report);

// Header t,lambda_min,wolk_lo,wolk_hi,g,cp,witness_value; floating point
// columns carry 12 significant digits, cp is 0/1.
void write_report_csv(std::ostream& os, const ClassificationReport& report);

std::string format_sig12(double x);

}  // namespace decodyn
