#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "decodyn/basis.hpp"
#include "decodyn/certification.hpp"
#include "decodyn/dynamics.hpp"
#include "decodyn/geometry.hpp"
#include "decodyn/generators.hpp"
#include "decodyn/io.hpp"
#include "decodyn/maps.hpp"

namespace {

using decodyn::CMat;
using decodyn::Cplx;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct GlobalOptions {
  std::uint64_t seed = 0;
  // Looser than the library default: the step-doubling cap caps the
  // certifiable successive difference near 2e-8 on multi-unit horizons.
  double tol = 1e-7;
  long steps = 16;
};

void emit(const ordered_json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot open output path: " + out_path);
  out << j.dump(2) << '\n';
}

struct BuiltGenerator {
  decodyn::HermitianBasis basis;
  decodyn::XiTensor xi;
  decodyn::ThetaSignature theta;
  decodyn::GeometricTensor tensor;
  decodyn::GeneratorRep gen;
};

BuiltGenerator build_from_document(const decodyn::SpecDocument& doc) {
  BuiltGenerator b;
  b.basis = decodyn::build_basis(doc.spec.dim);
  b.xi = decodyn::build_xi(b.basis);
  b.theta = decodyn::theta_signature(doc.spec.dim);
  b.tensor = decodyn::build_omega_tensor(b.basis, b.theta, b.xi);
  b.gen = decodyn::build_generator(doc.spec, b.tensor, b.basis);
  return b;
}

int cmd_basis(int d, const std::string& out_path) {
  const decodyn::HermitianBasis basis = decodyn::build_basis(d);
  const decodyn::XiTensor xi = decodyn::build_xi(basis);
  ordered_json j;
  j["schema_version"] = 1;
  j["dim"] = d;
  ordered_json mats = ordered_json::array();
  for (const CMat& f : basis.matrices) mats.push_back(decodyn::complex_matrix_to_json(f));
  j["matrices"] = std::move(mats);
  ordered_json xi_entries = ordered_json::array();
  const int n = basis.size();
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj)
      for (int k = 0; k < n; ++k) {
        const Cplx v = xi(i, jj, k);
        if (std::abs(v) <= 1e-14) continue;
        xi_entries.push_back({{"i", i}, {"j", jj}, {"k", k}, {"value", {v.real(), v.imag()}}});
      }
  j["xi_nonzero"] = std::move(xi_entries);
  emit(j, out_path);
  return kExitOk;
}

int cmd_omega(int d, const std::string& out_path) {
  const decodyn::HermitianBasis basis = decodyn::build_basis(d);
  const decodyn::XiTensor xi = decodyn::build_xi(basis);
  const decodyn::ThetaSignature theta = decodyn::theta_signature(d);
  const decodyn::GeometricTensor tensor = decodyn::build_omega_tensor(basis, theta, xi);
  ordered_json j;
  j["schema_version"] = 1;
  j["dim"] = d;
  ordered_json entries = ordered_json::array();
  for (int jj = 0; jj < tensor.n(); ++jj)
    for (int k = 0; k < tensor.n(); ++k)
      for (int mu = 0; mu < tensor.m(); ++mu)
        for (int nu = 0; nu < tensor.m(); ++nu) {
          const Cplx v = tensor(jj, k, mu, nu);
          if (std::abs(v) <= 1e-14) continue;
          entries.push_back(
              {{"j", jj}, {"k", k}, {"mu", mu}, {"nu", nu}, {"value", {v.real(), v.imag()}}});
        }
  j["nonzero_entries"] = std::move(entries);
  emit(j, out_path);
  return kExitOk;
}

int cmd_generator(const std::string& spec_path, const std::string& out_path) {
  const decodyn::SpecDocument doc = decodyn::load_spec_document(spec_path);
  const BuiltGenerator b = build_from_document(doc);
  ordered_json j;
  j["schema_version"] = 1;
  j["dim"] = doc.spec.dim;
  j["eta"] = decodyn::complex_matrix_to_json(b.gen.eta);
  j["M"] = decodyn::complex_matrix_to_json(b.gen.M.matrix);
  j["N"] = decodyn::complex_matrix_to_json(b.gen.N.matrix);
  j["L"] = decodyn::complex_matrix_to_json(b.gen.L.matrix);
  j["trace_annihilating"] = decodyn::is_trace_annihilating(b.gen.L);
  emit(j, out_path);
  return kExitOk;
}

decodyn::ClassificationReport run_trajectory(const decodyn::SpecDocument& doc,
                                             const BuiltGenerator& b,
                                             const decodyn::ClassifyConfig& config) {
  const std::vector<double> grid =
      decodyn::uniform_grid(doc.grid.t_start, doc.grid.t_end, doc.grid.points);
  return decodyn::classify_trajectory(b.gen, grid, config);
}

void fill_asymptotic_section(const decodyn::GeneratorRep& gen,
                             decodyn::ClassificationReport& report) {
  const decodyn::SpectralDecomposition decomp = decodyn::spectral_decompose(gen.L);
  report.spectrum = decomp.eigenvalues;
  report.threshold = decodyn::cp_sufficient_threshold(gen.dim);
  try {
    const decodyn::AsymptoticCpResult acp = decodyn::asymptotic_cp_check(decomp, gen.dim);
    report.limit = acp.limit;
    report.asymptotic_verdict = acp.verdict == decodyn::AsymptoticVerdict::Certified
                                    ? "asymptotically_cp_certified"
                                    : "inconclusive";
  } catch (const decodyn::NumericalError&) {
    report.limit = std::numeric_limits<double>::quiet_NaN();
    report.asymptotic_verdict = "unsupported_degenerate_kernel";
  }
}

// Evolves with the splitting propagator so that --steps/--tol drive the
// numerical path; classify uses the analytic commutative flow instead.
int cmd_evolve(const std::string& spec_path, const std::string& csv_path,
               const std::string& json_path, const GlobalOptions& opts) {
  const decodyn::SpecDocument doc = decodyn::load_spec_document(spec_path);
  const BuiltGenerator b = build_from_document(doc);
  const std::vector<double> grid =
      decodyn::uniform_grid(doc.grid.t_start, doc.grid.t_end, doc.grid.points);

  decodyn::ClassificationReport report;
  for (double t : grid) {
    const decodyn::LinearMapRep map = decodyn::time_splitting_propagator(
        b.gen, std::min(0.0, t), t, opts.steps, opts.tol);
    const decodyn::ChoiMatrix c = decodyn::choi(map);
    decodyn::TimeRecord row;
    row.t = t;
    const decodyn::CpTestResult cp = decodyn::cp_test(c);
    row.cp = cp.cp;
    row.lambda_min = cp.lambda_min;
    const decodyn::WolkowiczBounds wb = decodyn::wolkowicz_bounds(c.matrix);
    row.wolk_lo = wb.lower;
    row.wolk_hi = wb.upper;
    row.g_value = decodyn::g_function(map);
    row.verdict = row.cp ? "certified_yes" : "inconclusive";
    row.witness_value = std::numeric_limits<double>::quiet_NaN();
    report.rows.push_back(std::move(row));
  }
  fill_asymptotic_section(b.gen, report);

  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw std::invalid_argument("cannot open output path: " + csv_path);
    decodyn::write_report_csv(out, report);
  }
  if (!json_path.empty() || csv_path.empty())
    emit(decodyn::report_to_json(doc, report), json_path);
  return kExitOk;
}

int cmd_spectrum(const std::string& spec_path, const std::string& out_path) {
  const decodyn::SpecDocument doc = decodyn::load_spec_document(spec_path);
  const BuiltGenerator b = build_from_document(doc);
  const decodyn::SpectralDecomposition decomp = decodyn::spectral_decompose(b.gen.L);
  const decodyn::AsymptoticCpResult acp = decodyn::asymptotic_cp_check(decomp, doc.spec.dim);

  ordered_json j;
  j["schema_version"] = 1;
  j["dim"] = doc.spec.dim;
  ordered_json spectrum = ordered_json::array();
  for (const Cplx& mu : decomp.eigenvalues) spectrum.push_back({mu.real(), mu.imag()});
  j["spectrum"] = std::move(spectrum);
  ordered_json eig = ordered_json::array();
  ordered_json duals = ordered_json::array();
  for (size_t i = 0; i < decomp.eigenmatrices.size(); ++i) {
    eig.push_back(decodyn::complex_matrix_to_json(decomp.eigenmatrices[i]));
    duals.push_back(decodyn::complex_matrix_to_json(decomp.duals[i]));
  }
  j["eigenmatrices"] = std::move(eig);
  j["dual_matrices"] = std::move(duals);
  j["limit"] = acp.limit;
  j["threshold"] = acp.threshold;
  j["verdict"] = acp.verdict == decodyn::AsymptoticVerdict::Certified
                     ? "asymptotically_cp_certified"
                     : "inconclusive";
  emit(j, out_path);
  return kExitOk;
}

int cmd_classify(const std::string& spec_path, const std::string& csv_path,
                 const std::string& json_path, int restarts,
                 const std::optional<double>& t_start,
                 const std::optional<double>& t_end,
                 const std::optional<int>& points, const GlobalOptions& opts) {
  decodyn::SpecDocument doc = decodyn::load_spec_document(spec_path);
  if (t_start) doc.grid.t_start = *t_start;
  if (t_end) doc.grid.t_end = *t_end;
  if (points) doc.grid.points = *points;
  if (doc.grid.points < 1) throw std::invalid_argument("grid.points must be >= 1");
  if (!(doc.grid.t_start <= doc.grid.t_end))
    throw std::invalid_argument("grid.t_start must not exceed grid.t_end");

  const BuiltGenerator b = build_from_document(doc);
  decodyn::ClassifyConfig config;
  config.witness.seed = opts.seed;
  config.witness.restarts = restarts;
  config.run_witness = restarts > 0;
  const decodyn::ClassificationReport report = run_trajectory(doc, b, config);

  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw std::invalid_argument("cannot open output path: " + csv_path);
    decodyn::write_report_csv(out, report);
  }
  if (!json_path.empty() || csv_path.empty())
    emit(decodyn::report_to_json(doc, report), json_path);
  return kExitOk;
}

int cmd_witness(const std::string& choi_path, int restarts, const GlobalOptions& opts) {
  const decodyn::ChoiMatrix c = decodyn::load_choi_document(choi_path);
  if (!c.hermitian) throw std::invalid_argument("choi: matrix is not Hermitian");

  ordered_json j;
  j["schema_version"] = 1;
  j["dim"] = c.dim;
  const decodyn::CpTestResult cp = decodyn::cp_test(c);
  j["lambda_min"] = cp.lambda_min;
  if (cp.cp) {
    j["verdict"] = "CP, trivially decomposable";
    emit(j, "");
    return kExitOk;
  }

  decodyn::WitnessConfig config;
  config.restarts = restarts;
  config.seed = opts.seed;
  const decodyn::WitnessResult result = decodyn::decomposability_witness_search(c, config);
  j["min_value"] = result.min_value;
  if (result.min_value < -1e-7 && decodyn::verify_cone_state(result.argmin)) {
    j["verdict"] = "witness found";
    j["witness"] = decodyn::complex_matrix_to_json(result.argmin.rho);
  } else {
    j["verdict"] = "no witness found";
  }
  emit(j, "");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct trace-annihilating generators, evolve the induced map "
               "families, and certify positivity classes of their Choi matrices"};
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_option("--seed", opts.seed, "Seed for all randomized routines");
  app.add_option("--tol", opts.tol,
                 "Convergence tolerance for iterative routines (default 1e-7)");
  app.add_option("--steps", opts.steps, "Initial step count for the splitting propagator");

  int basis_dim = 0;
  std::string basis_out;
  CLI::App* basis_cmd = app.add_subcommand("basis", "Write the Hermitian basis and xi tensor");
  basis_cmd->add_option("dim", basis_dim, "Matrix dimension d >= 2")->required();
  basis_cmd->add_option("--out", basis_out, "Output path (default stdout)");

  int omega_dim = 0;
  std::string omega_out;
  CLI::App* omega_cmd = app.add_subcommand("omega", "Write the geometric tensor");
  omega_cmd->add_option("dim", omega_dim, "Matrix dimension d >= 2")->required();
  omega_cmd->add_option("--out", omega_out, "Output path (default stdout)");

  std::string gen_spec, gen_out;
  CLI::App* gen_cmd = app.add_subcommand("generator", "Assemble the generator from a spec");
  gen_cmd->add_option("spec", gen_spec, "Spec JSON path")->required();
  gen_cmd->add_option("--out", gen_out, "Output path (default stdout)");

  std::string evolve_spec, evolve_csv, evolve_json;
  CLI::App* evolve_cmd = app.add_subcommand("evolve", "Evolve the family over the grid");
  evolve_cmd->add_option("spec", evolve_spec, "Spec JSON path")->required();
  evolve_cmd->add_option("--csv", evolve_csv, "CSV output path");
  evolve_cmd->add_option("--json", evolve_json, "JSON output path (default stdout)");

  std::string spectrum_spec, spectrum_out;
  CLI::App* spectrum_cmd =
      app.add_subcommand("spectrum", "Spectral decomposition and asymptotic check");
  spectrum_cmd->add_option("spec", spectrum_spec, "Spec JSON path")->required();
  spectrum_cmd->add_option("--out", spectrum_out, "Output path (default stdout)");

  std::string classify_spec, classify_csv, classify_json;
  int classify_restarts = 16;
  std::optional<double> classify_t_start, classify_t_end;
  std::optional<int> classify_points;
  CLI::App* classify_cmd = app.add_subcommand("classify", "Full per-time classification report");
  classify_cmd->add_option("spec", classify_spec, "Spec JSON path")->required();
  classify_cmd->add_option("--csv", classify_csv, "CSV output path");
  classify_cmd->add_option("--json", classify_json, "JSON output path (default stdout)");
  classify_cmd->add_option("--restarts", classify_restarts,
                           "Witness search restarts per non-CP grid point (0 disables)");
  classify_cmd->add_option("--t-start", classify_t_start, "Override grid t_start");
  classify_cmd->add_option("--t-end", classify_t_end, "Override grid t_end");
  classify_cmd->add_option("--points", classify_points, "Override grid points");

  std::string witness_choi;
  int witness_restarts = 16;
  CLI::App* witness_cmd = app.add_subcommand("witness", "Witness search on a Choi matrix");
  witness_cmd->add_option("choi", witness_choi, "Choi JSON path")->required();
  witness_cmd->add_option("--restarts", witness_restarts, "Optimizer restarts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitInput;
  }

  try {
    if (basis_cmd->parsed()) return cmd_basis(basis_dim, basis_out);
    if (omega_cmd->parsed()) return cmd_omega(omega_dim, omega_out);
    if (gen_cmd->parsed()) return cmd_generator(gen_spec, gen_out);
    if (evolve_cmd->parsed()) return cmd_evolve(evolve_spec, evolve_csv, evolve_json, opts);
    if (spectrum_cmd->parsed()) return cmd_spectrum(spectrum_spec, spectrum_out);
    if (classify_cmd->parsed())
      return cmd_classify(classify_spec, classify_csv, classify_json, classify_restarts,
                          classify_t_start, classify_t_end, classify_points, opts);
    if (witness_cmd->parsed()) return cmd_witness(witness_choi, witness_restarts, opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const decodyn::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}
