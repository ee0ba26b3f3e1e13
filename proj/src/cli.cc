// Copyright 2026 The choiqpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "choiqpt/cli.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"

#include "choiqpt/channels.h"
#include "choiqpt/gates.h"
#include "choiqpt/noise.h"
#include "choiqpt/simulator.h"
#include "choiqpt/svg.h"
#include "choiqpt/tomography.h"

namespace choiqpt {
namespace {

constexpr double kAlgebraTol = 1e-12;
constexpr double kPhaseTol = 1e-10;
constexpr double kCptpCheckTol = 1e-9;
constexpr std::uint64_t kDefaultRunShots = 11000;
constexpr std::uint64_t kDefaultExecuteShots = 7168;

using GateTable = std::function<ComplexMatrix(const std::string&, const std::vector<double>&)>;

ComplexMatrix unitary_with(const Circuit& c, const GateTable& table) {
  ComplexMatrix u = identity(std::size_t{1} << c.num_qubits);
  for (const auto& g : c.gates) u = embed_operator(table(g.name, g.params), g.qubits, c.num_qubits) * u;
  return u;
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string fmt_dev(double v) { return v == 0.0 ? "0e0" : fmt("%.1e", v); }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path.string());
  f << content;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

Circuit read_circuit(const std::string& path) {
  if (path.empty()) throw InputError("--circuit is required");
  try {
    return load_circuit(path);
  } catch (const std::exception& e) {
    throw InputError("circuit " + path + ": " + e.what());
  }
}

std::optional<NoiseModel> read_noise(const RunConfig& cfg, std::size_t num_qubits, std::ostream& out) {
  if (cfg.calib_path.empty()) {
    if (!cfg.layout.empty()) throw InputError("--layout needs --calib");
    return std::nullopt;
  }
  std::vector<std::size_t> layout = cfg.layout;
  if (layout.empty()) {
    for (std::size_t q = 0; q < num_qubits; ++q) layout.push_back(q);
  }
  if (layout.size() != num_qubits) {
    throw InputError("--layout names " + std::to_string(layout.size()) + " qubits, circuit has " +
                     std::to_string(num_qubits));
  }
  NoiseModel model = noise_model_from_calibration(load_calibration(cfg.calib_path), layout);
  for (const auto& w : model.warnings) out << "warning: " << w << "\n";
  return model;
}

void require_shots(std::uint64_t shots) {
  if (shots == 0) throw InputError("shots > 0 required");
}

std::filesystem::path prepare_out(const std::string& dir) {
  std::filesystem::path p(dir.empty() ? "." : dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) throw InputError("cannot create output directory " + p.string() + ": " + ec.message());
  return p;
}

int write_qpt_outputs(const QptResult& r, const RunConfig& cfg, bool write_dataset, std::ostream& out) {
  const std::filesystem::path dir = prepare_out(cfg.out_dir);
  const std::size_t k = r.dataset.plan.num_qubits;
  if (write_dataset) write_file(dir / "dataset.json", dump(to_json(r.dataset)));
  write_file(dir / "choi.json", dump(to_json(r.choi)));
  if (r.method == ReconstructionMethod::kLinearInversionThenCptp) {
    write_file(dir / "choi_raw.json", dump(to_json(r.raw)));
  }
  const ChiMatrix chi = choi_to_chi(r.choi, PauliBasis::for_qubits(k));
  write_file(dir / "chi.json", dump(to_json(chi)));
  write_file(dir / "ptm.json", dump(to_json(choi_to_ptm(r.choi))));
  write_file(dir / "report.json", dump(report_json(r)));
  write_file(dir / "choi_re.csv", matrix_to_csv(r.choi.matrix.real()));
  write_file(dir / "choi_im.csv", matrix_to_csv(r.choi.matrix.imag()));

  const std::vector<std::string> choi_labels = basis_labels(2 * k);
  write_file(dir / "choi_re_city.svg", city_svg(r.choi.matrix.real(), choi_labels, "Re(C)"));
  write_file(dir / "choi_im_city.svg", city_svg(r.choi.matrix.imag(), choi_labels, "Im(C)"));
  write_file(dir / "chi_re_hinton.svg", hinton_svg(chi.matrix.real(), chi.basis.labels, "Re(chi)"));
  write_file(dir / "chi_im_hinton.svg", hinton_svg(chi.matrix.imag(), chi.basis.labels, "Im(chi)"));

  out << "process fidelity " << fmt("%.6f", r.report.process_fidelity) << "  average gate fidelity "
      << fmt("%.6f", r.report.average_gate_fidelity) << "\n";
  out << "min eigenvalue " << fmt("%.3e", r.report.min_eigenvalue) << "  tp deviation "
      << fmt("%.3e", r.report.tp_deviation) << "\n";
  if (r.method == ReconstructionMethod::kLinearInversionThenCptp) {
    out << "cptp projection " << (r.converged ? "converged" : "did not converge") << " after "
        << r.iterations << " iterations\n";
  }
  out << "wrote " << dir.string() << "\n";

  int code = kExitOk;
  if (r.method == ReconstructionMethod::kLinearInversionThenCptp && !is_cptp(r.choi, kCptpCheckTol).passes) {
    out << "FAIL: projected Choi matrix is not CPTP\n";
    code = kExitVerification;
  }
  if (cfg.min_fidelity && r.report.process_fidelity < *cfg.min_fidelity) {
    out << "FAIL: process fidelity below " << *cfg.min_fidelity << "\n";
    code = kExitVerification;
  }
  return code;
}

ReconstructionOptions reconstruction(const RunConfig& cfg) {
  ReconstructionOptions o;
  o.method = cfg.cptp ? ReconstructionMethod::kLinearInversionThenCptp
                      : ReconstructionMethod::kLinearInversion;
  return o;
}

}  // namespace

std::vector<GateCheck> gate_checks(const std::string& corrupt_gate) {
  if (!corrupt_gate.empty()) gate_info(corrupt_gate);  // throws on unknown names
  const GateTable table = [&](const std::string& name, const std::vector<double>& params) {
    ComplexMatrix u = gate_unitary(name, params);
    if (name == corrupt_gate) u.row(u.rows() - 1) *= std::polar(1.0, 0.05);
    return u;
  };
  auto t = [&](const char* name) { return table(name, {}); };

  std::vector<GateCheck> out;
  auto algebra = [&](std::string name, const ComplexMatrix& a, const ComplexMatrix& b) {
    const double dev = max_abs_diff(a, b);
    out.push_back({std::move(name), dev < kAlgebraTol, dev, ""});
  };
  algebra("SQSCZ = √SWAP·√CZ", t("SQSCZ"), t("SQRT_SWAP") * t("SQRT_CZ"));
  algebra("SQSCZ = √CZ·√SWAP", t("SQSCZ"), t("SQRT_CZ") * t("SQRT_SWAP"));
  algebra("√SWAP² = SWAP", t("SQRT_SWAP") * t("SQRT_SWAP"), t("SWAP"));
  algebra("√CZ² = CZ", t("SQRT_CZ") * t("SQRT_CZ"), t("CZ"));

  {
    const Circuit d = sqscz_decomposition();
    const PhaseMatch m = equal_up_to_global_phase(unitary_with(d, table), t("SQSCZ"), kPhaseTol);
    bool native = true;
    for (const auto& g : d.gates) native = native && (g.name == "RZ" || g.name == "SX" || g.name == "CNOT");
    const std::size_t cnots = d.count("CNOT");
    out.push_back({"SQSCZ from RZ/SX + 2 CNOT", m.equal && native && cnots == 2, m.deviation,
                   std::to_string(cnots) + " CNOT, " + std::to_string(d.gates.size()) + " gates"});
  }
  {
    const Circuit c = cnot_from_sqscz();
    const PhaseMatch m = equal_up_to_global_phase(unitary_with(c, table), t("CNOT"), kPhaseTol);
    const std::size_t uses = c.count("SQSCZ");
    out.push_back({"CNOT from 2 SQSCZ", m.equal && uses == 2, m.deviation,
                   "global phase φ = " + fmt("%.6f", std::abs(m.phase) < 1e-12 ? 0.0 : m.phase) + " rad"});
  }
  for (const GateInfo& info : gate_library()) {
    const std::string name(info.name);
    std::vector<std::size_t> qubits(info.num_qubits);
    for (std::size_t i = 0; i < qubits.size(); ++i) qubits[i] = i;
    const std::vector<double> params(info.num_params, 0.3);
    Circuit c(info.num_qubits);
    c.add(name, qubits, params);
    const PhaseMatch m =
        equal_up_to_global_phase(unitary_with(lower_to_native(c), table), table(name, params), kPhaseTol);
    out.push_back({"native lowering of " + name, m.equal, m.deviation, ""});
  }
  return out;
}

int cmd_gate_check(std::ostream& out, const std::string& corrupt_gate) {
  if (!corrupt_gate.empty()) out << "test mode: gate table entry " << corrupt_gate << " corrupted\n";
  int code = kExitOk;
  for (const GateCheck& c : gate_checks(corrupt_gate)) {
    out << c.identity << ": " << (c.pass ? "PASS" : "FAIL") << " (dev " << fmt_dev(c.deviation) << ")";
    if (!c.detail.empty()) out << "  " << c.detail;
    out << "\n";
    if (!c.pass) code = kExitVerification;
  }
  return code;
}

int cmd_run(const RunConfig& cfg, std::ostream& out) {
  const Circuit c = read_circuit(cfg.circuit_path);
  if (!cfg.exact) require_shots(cfg.shots);
  const std::optional<NoiseModel> noise = read_noise(cfg, c.num_qubits, out);
  ExecutionOptions eo;
  eo.exact = cfg.exact;
  eo.threads = cfg.threads;
  const std::uint64_t shots = cfg.exact ? 0 : cfg.shots;
  const QptResult r = qpt(c, noise ? &*noise : nullptr, shots, cfg.seed, reconstruction(cfg), eo);
  return write_qpt_outputs(r, cfg, true, out);
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  if (cfg.dataset_path.empty()) throw InputError("--dataset is required");
  std::ifstream in(cfg.dataset_path);
  if (!in) throw InputError("cannot open dataset " + cfg.dataset_path);
  TomographyDataset ds;
  try {
    ds = dataset_from_json(nlohmann::json::parse(in));
  } catch (const std::exception& e) {
    throw InputError("dataset " + cfg.dataset_path + ": " + e.what());
  }
  return write_qpt_outputs(reconstruct(ds, reconstruction(cfg)), cfg, false, out);
}

int cmd_execute(const RunConfig& cfg, std::ostream& out) {
  const Circuit c = read_circuit(cfg.circuit_path);
  require_shots(cfg.shots);
  const std::optional<NoiseModel> noise = read_noise(cfg, c.num_qubits, out);
  const ExecutionResult r = execute_circuit(c, noise ? &*noise : nullptr, cfg.shots, cfg.seed);

  nlohmann::json j = to_json(r.counts);
  nlohmann::json probs = nlohmann::json::object();
  for (std::size_t i = 0; i < r.probabilities.size(); ++i) probs[bitstring(i, c.num_qubits)] = r.probabilities[i];
  j["probabilities"] = std::move(probs);
  j["seed"] = cfg.seed;
  j["noise_model"] = noise ? noise->id : "";

  const std::filesystem::path dir = prepare_out(cfg.out_dir);
  write_file(dir / "counts.json", dump(j));
  write_file(dir / "counts.svg", counts_svg(r.counts, c.num_qubits, "measurement counts"));
  for (std::size_t i = 0; i < r.probabilities.size(); ++i) {
    const std::string bits = bitstring(i, c.num_qubits);
    out << bits << " " << r.counts.count(bits) << "  (p = " << fmt("%.4f", r.probabilities[i]) << ")\n";
  }
  out << "wrote " << dir.string() << "\n";
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-qubit quantum process tomography on a density-matrix simulator"};
  app.name("qpt");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string corrupt;
  CLI::App* check = app.add_subcommand("gate-check", "Verify the gate identities and decompositions");
  check->add_option("--corrupt", corrupt, "Perturb one gate table entry first (test mode)");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--calib", cfg.calib_path, "Calibration JSON; omit for a noiseless run");
    sub->add_option("--layout", cfg.layout, "Physical qubits for the circuit wires, e.g. 0,1")->delimiter(',');
    sub->add_option("--seed", cfg.seed, "Sampling seed");
    sub->add_option("--out", cfg.out_dir, "Output directory");
    sub->add_option("--threads", cfg.threads, "Worker threads (0: hardware)");
  };
  CLI::App* run = app.add_subcommand("run", "Process tomography of a circuit");
  run->add_option("--circuit", cfg.circuit_path, "Circuit JSON")->required();
  CLI::Option* run_shots = run->add_option("--shots", cfg.shots, "Shots per tomography job");
  run->add_flag("--exact", cfg.exact, "Use exact outcome probabilities instead of sampling");
  bool no_cptp = false;
  run->add_flag("--no-cptp", no_cptp, "Skip CPTP projection, keep raw linear inversion");
  run->add_option("--min-fidelity", cfg.min_fidelity, "Exit 1 when the process fidelity is lower");
  common(run);

  CLI::App* exec = app.add_subcommand("execute", "Run a circuit and record measurement counts");
  exec->add_option("--circuit", cfg.circuit_path, "Circuit JSON")->required();
  CLI::Option* exec_shots = exec->add_option("--shots", cfg.shots, "Shots");
  exec->add_flag("--exact", cfg.exact, "Accepted for symmetry; probabilities are always written");
  common(exec);

  CLI::App* analyze = app.add_subcommand("analyze", "Reconstruct from a saved dataset");
  analyze->add_option("--dataset", cfg.dataset_path, "Dataset JSON from qpt run")->required();
  analyze->add_flag("--no-cptp", no_cptp, "Skip CPTP projection");
  analyze->add_option("--out", cfg.out_dir, "Output directory");
  analyze->add_option("--min-fidelity", cfg.min_fidelity, "Exit 1 when the process fidelity is lower");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }
  cfg.cptp = !no_cptp;

  try {
    if (check->parsed()) return cmd_gate_check(out, corrupt);
    if (run->parsed()) {
      if (run_shots->count() == 0) cfg.shots = kDefaultRunShots;
      return cmd_run(cfg, out);
    }
    if (exec->parsed()) {
      if (exec_shots->count() == 0) cfg.shots = kDefaultExecuteShots;
      return cmd_execute(cfg, out);
    }
    return cmd_analyze(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace choiqpt
