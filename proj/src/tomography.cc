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

#include "choiqpt/tomography.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

namespace choiqpt {
namespace {

constexpr std::string_view kPrepLabels[] = {"0", "1", "+", "+i"};

ComplexMatrix single_prep_density(PrepState s) {
  ComplexVector ket(2);
  const double r = 1.0 / std::sqrt(2.0);
  switch (s) {
    case PrepState::kZero: ket << 1, 0; break;
    case PrepState::kOne: ket << 0, 1; break;
    case PrepState::kPlus: ket << r, r; break;
    case PrepState::kPlusI: ket << r, Complex(0, r); break;
  }
  return ket * ket.adjoint();
}

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

ComplexMatrix project_psd(const ComplexMatrix& m) {
  return hermitian_function(m, [](double x) { return std::max(x, 0.0); });
}

ComplexMatrix project_tp(const ComplexMatrix& m, std::size_t d_in, std::size_t d_out) {
  const ComplexMatrix excess =
      partial_trace(m, d_in, d_out, Subsystem::A) - identity(d_in);
  return m - kron(excess, identity(d_out)) / static_cast<double>(d_out);
}

std::string method_name(ReconstructionMethod m) {
  return m == ReconstructionMethod::kLinearInversion ? "linear_inversion"
                                                     : "linear_inversion_then_cptp";
}

}  // namespace

std::string Preparation::label() const {
  std::string out;
  for (std::size_t q = 0; q < qubits.size(); ++q) {
    if (q) out += ',';
    out += kPrepLabels[static_cast<std::size_t>(qubits[q])];
  }
  return out;
}

Preparation Preparation::parse(const std::string& label) {
  Preparation p;
  std::size_t start = 0;
  while (start <= label.size()) {
    const std::size_t end = std::min(label.find(',', start), label.size());
    const std::string part = label.substr(start, end - start);
    const auto* it = std::find(std::begin(kPrepLabels), std::end(kPrepLabels), part);
    if (it == std::end(kPrepLabels)) {
      throw TomographyError("unknown preparation label '" + part + "'");
    }
    p.qubits.push_back(static_cast<PrepState>(it - std::begin(kPrepLabels)));
    start = end + 1;
  }
  return p;
}

Circuit Preparation::circuit() const {
  Circuit c(qubits.size());
  for (std::size_t q = 0; q < qubits.size(); ++q) {
    switch (qubits[q]) {
      case PrepState::kZero: break;
      case PrepState::kOne: c.add("X", {q}); break;
      case PrepState::kPlus: c.add("H", {q}); break;
      case PrepState::kPlusI: c.add("H", {q}).add("Ph", {q}, {std::numbers::pi / 2}); break;
    }
  }
  return c;
}

ComplexMatrix Preparation::density() const {
  ComplexMatrix rho = identity(1);
  for (PrepState s : qubits) rho = kron(rho, single_prep_density(s));
  return rho;
}

TomographyPlan build_plan(std::size_t num_qubits, std::uint64_t shots) {
  if (num_qubits == 0) throw TomographyError("build_plan: need at least one qubit");
  TomographyPlan plan;
  plan.num_qubits = num_qubits;
  plan.shots = shots;
  for (std::size_t i = 0; i < ipow(4, num_qubits); ++i) {
    Preparation p;
    for (std::size_t q = 0; q < num_qubits; ++q) {
      p.qubits.push_back(static_cast<PrepState>((i / ipow(4, num_qubits - 1 - q)) % 4));
    }
    plan.preparations.push_back(std::move(p));
  }
  static constexpr char kBases[] = {'X', 'Y', 'Z'};
  for (std::size_t i = 0; i < ipow(3, num_qubits); ++i) {
    std::string s;
    for (std::size_t q = 0; q < num_qubits; ++q) {
      s += kBases[(i / ipow(3, num_qubits - 1 - q)) % 3];
    }
    plan.settings.push_back(MeasurementSetting{s});
  }
  return plan;
}

RealMatrix design_matrix(const TomographyPlan& plan) {
  const PauliBasis basis = PauliBasis::for_qubits(plan.num_qubits);
  const std::size_t d = basis.dim();
  const std::size_t n_ops = d * d;
  const double norm = 1.0 / static_cast<double>(d * d);

  // Tr(P^T W_a) per preparation and Tr(Xi W_c) per (setting, outcome).
  std::vector<std::vector<double>> prep_traces;
  for (const auto& p : plan.preparations) {
    const ComplexMatrix pt = p.density().transpose();
    std::vector<double> row(n_ops);
    for (std::size_t a = 0; a < n_ops; ++a) row[a] = (pt * basis.operators[a]).trace().real();
    prep_traces.push_back(std::move(row));
  }
  std::vector<std::vector<double>> meas_traces;
  for (const auto& s : plan.settings) {
    for (std::size_t b = 0; b < d; ++b) {
      const ComplexMatrix xi = s.projector(b);
      std::vector<double> row(n_ops);
      for (std::size_t c = 0; c < n_ops; ++c) row[c] = (xi * basis.operators[c]).trace().real();
      meas_traces.push_back(std::move(row));
    }
  }

  RealMatrix a(static_cast<Eigen::Index>(plan.num_jobs() * d),
               static_cast<Eigen::Index>(n_ops * n_ops));
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < plan.preparations.size(); ++i) {
    for (std::size_t s = 0; s < plan.settings.size(); ++s) {
      for (std::size_t b = 0; b < d; ++b, ++row) {
        const auto& mt = meas_traces[s * d + b];
        for (std::size_t x = 0; x < n_ops; ++x) {
          for (std::size_t c = 0; c < n_ops; ++c) {
            a(row, static_cast<Eigen::Index>(x * n_ops + c)) = prep_traces[i][x] * mt[c] * norm;
          }
        }
      }
    }
  }
  return a;
}

std::size_t design_rank(const TomographyPlan& plan) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design_matrix(plan));
  qr.setThreshold(1e-10);
  return static_cast<std::size_t>(qr.rank());
}

std::vector<double> JobRecord::frequencies(std::size_t num_qubits) const {
  if (!probabilities.empty()) return probabilities;
  return counts.frequencies(num_qubits);
}

TomographyDataset execute_plan(const TomographyPlan& plan, const Circuit& target,
                               const NoiseModel* noise, std::uint64_t seed,
                               const ExecutionOptions& options) {
  if (target.num_qubits != plan.num_qubits) {
    throw TomographyError("execute_plan: target width " + std::to_string(target.num_qubits) +
                          " does not match plan width " + std::to_string(plan.num_qubits));
  }
  if (!options.exact && plan.shots == 0) throw SimulationError("shots > 0 required");
  target.validate();

  TomographyDataset data;
  data.plan = plan;
  data.target = target;
  data.seed = seed;
  data.exact = options.exact;
  data.noise_model_id = noise ? noise->id : "";
  data.jobs.resize(plan.num_jobs());

  const bool lower = noise != nullptr && options.lower_to_native;
  const Circuit body = lower ? lower_to_native(target) : target;
  const DensityMatrix ground = DensityMatrix::basis_state(0, plan.num_qubits);
  const MeasurementSetting all_z{std::string(plan.num_qubits, 'Z')};
  const std::vector<ConfusionMatrix>* confusion =
      noise != nullptr && !noise->readout_confusion.empty() ? &noise->readout_confusion
                                                            : nullptr;

  auto run_job = [&](std::size_t job) {
    const Preparation& prep = plan.preparations[job / plan.settings.size()];
    const MeasurementSetting& setting = plan.settings[job % plan.settings.size()];
    Circuit prep_c = prep.circuit(), rot_c = setting.rotation();
    if (lower) {
      prep_c = lower_to_native(prep_c);
      rot_c = lower_to_native(rot_c);
    }
    Circuit full(plan.num_qubits);
    full.append(prep_c).append(body).append(rot_c);
    const DensityMatrix out = simulate(full, noise, ground);
    std::vector<double> probs = measure_probabilities(out, all_z);

    JobRecord& rec = data.jobs[job];
    rec.prep = prep;
    rec.setting = setting;
    if (options.exact) {
      rec.probabilities = confusion ? apply_confusion(probs, *confusion) : std::move(probs);
    } else {
      rec.counts = sample_counts(probs, plan.shots, derive_seed(seed, job), confusion);
    }
  };

  std::size_t workers = options.threads ? options.threads : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, plan.num_jobs());
  if (workers == 1) {
    for (std::size_t job = 0; job < plan.num_jobs(); ++job) run_job(job);
    return data;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t job = next++; job < plan.num_jobs(); job = next++) {
        try {
          run_job(job);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return data;
}

ChoiMatrix linear_inversion(const TomographyDataset& dataset) {
  const TomographyPlan& plan = dataset.plan;
  if (dataset.jobs.size() != plan.num_jobs()) {
    throw TomographyError("linear_inversion: dataset has " + std::to_string(dataset.jobs.size()) +
                          " jobs, plan needs " + std::to_string(plan.num_jobs()));
  }
  const std::size_t d = std::size_t{1} << plan.num_qubits;
  Eigen::VectorXd f(static_cast<Eigen::Index>(plan.num_jobs() * d));
  for (std::size_t job = 0; job < plan.num_jobs(); ++job) {
    const std::vector<double> freq = dataset.jobs[job].frequencies(plan.num_qubits);
    if (freq.size() != d) throw TomographyError("linear_inversion: malformed job record");
    for (std::size_t b = 0; b < d; ++b) f(static_cast<Eigen::Index>(job * d + b)) = freq[b];
  }

  const Eigen::MatrixXd a = design_matrix(plan);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  const std::size_t n_ops = d * d;
  if (static_cast<std::size_t>(qr.rank()) != n_ops * n_ops) {
    throw TomographyError("linear_inversion: design matrix rank " + std::to_string(qr.rank()) +
                          " < " + std::to_string(n_ops * n_ops));
  }
  const Eigen::VectorXd x = qr.solve(f);

  const PauliBasis basis = PauliBasis::for_qubits(plan.num_qubits);
  const double norm = 1.0 / static_cast<double>(d * d);
  ComplexMatrix c = ComplexMatrix::Zero(static_cast<Eigen::Index>(d * d),
                                        static_cast<Eigen::Index>(d * d));
  for (std::size_t a_idx = 0; a_idx < n_ops; ++a_idx) {
    for (std::size_t c_idx = 0; c_idx < n_ops; ++c_idx) {
      const double coeff = x(static_cast<Eigen::Index>(a_idx * n_ops + c_idx)) * norm;
      if (coeff == 0.0) continue;
      c += coeff * kron(basis.operators[a_idx], basis.operators[c_idx]);
    }
  }
  return ChoiMatrix(d, d, hermitian_part(c));
}

ProjectionResult project_cptp(const ChoiMatrix& raw, double tol, std::size_t max_iter) {
  if (!(tol > 0)) throw TomographyError("project_cptp: tolerance must be positive");
  if (hermitian_deviation(raw.matrix) > 1e-6) {
    throw TomographyError("project_cptp: input is not Hermitian");
  }
  const std::size_t d_in = raw.dim_in, d_out = raw.dim_out;
  ComplexMatrix x = hermitian_part(raw.matrix);
  ComplexMatrix p = ComplexMatrix::Zero(x.rows(), x.cols());
  ComplexMatrix q = ComplexMatrix::Zero(x.rows(), x.cols());

  ProjectionResult result;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    const ComplexMatrix y = project_psd(x + p);
    p = x + p - y;
    ComplexMatrix next = project_tp(y + q, d_in, d_out);
    q = y + q - next;
    const double step = (next - x).norm();
    x = std::move(next);
    result.iterations = it;
    if (step < tol) {
      result.converged = true;
      break;
    }
  }

  // Exact trace preservation without leaving the PSD cone.
  const ComplexMatrix y = project_psd(x);
  const ComplexMatrix marginal = partial_trace(y, d_in, d_out, Subsystem::A);
  const HermitianEigen e = eig_hermitian(marginal);
  if (e.values.back() <= 1e-12) {
    result.converged = false;
    result.choi = ChoiMatrix(d_in, d_out, hermitian_part(x));
    return result;
  }
  const ComplexMatrix inv_root =
      hermitian_function(marginal, [](double v) { return 1.0 / std::sqrt(v); });
  const ComplexMatrix m = kron(inv_root, identity(d_out));
  result.choi = ChoiMatrix(d_in, d_out, hermitian_part(m * y * m));
  return result;
}

QptResult reconstruct(const TomographyDataset& dataset, const ReconstructionOptions& options) {
  QptResult r;
  r.dataset = dataset;
  r.raw = linear_inversion(dataset);
  r.ideal = choi_from_unitary(circuit_unitary(dataset.target));
  r.method = options.method;
  if (options.method == ReconstructionMethod::kLinearInversionThenCptp) {
    ProjectionResult proj = project_cptp(r.raw, options.cptp_tol, options.max_iter);
    r.choi = std::move(proj.choi);
    r.converged = proj.converged;
    r.iterations = proj.iterations;
  } else {
    r.choi = r.raw;
  }
  r.report = fidelity_report(r.choi, r.ideal);
  return r;
}

QptResult qpt(const Circuit& target, const NoiseModel* noise, std::uint64_t shots,
              std::uint64_t seed, const ReconstructionOptions& options,
              const ExecutionOptions& execution) {
  const TomographyPlan plan = build_plan(target.num_qubits, shots);
  QptResult r = reconstruct(execute_plan(plan, target, noise, seed, execution), options);
  return r;
}

nlohmann::json to_json(const TomographyDataset& d) {
  nlohmann::json preps = nlohmann::json::array(), settings = nlohmann::json::array();
  for (const auto& p : d.plan.preparations) preps.push_back(p.label());
  for (const auto& s : d.plan.settings) settings.push_back(s.bases);
  nlohmann::json jobs = nlohmann::json::array();
  for (const auto& job : d.jobs) {
    nlohmann::json j{{"prep", job.prep.label()}, {"setting", job.setting.bases}};
    if (d.exact) {
      j["probabilities"] = job.probabilities;
    } else {
      j["counts"] = to_json(job.counts);
    }
    jobs.push_back(std::move(j));
  }
  return nlohmann::json{{"num_qubits", d.plan.num_qubits},
                        {"shots", d.plan.shots},
                        {"seed", d.seed},
                        {"exact", d.exact},
                        {"noise_model", d.noise_model_id},
                        {"target", d.target},
                        {"preparations", std::move(preps)},
                        {"settings", std::move(settings)},
                        {"jobs", std::move(jobs)}};
}

TomographyDataset dataset_from_json(const nlohmann::json& j) {
  TomographyDataset d;
  const auto k = j.at("num_qubits").get<std::size_t>();
  d.plan = build_plan(k, j.at("shots").get<std::uint64_t>());
  d.seed = j.value("seed", std::uint64_t{0});
  d.exact = j.value("exact", false);
  d.noise_model_id = j.value("noise_model", std::string{});
  d.target = j.at("target").get<Circuit>();
  if (d.target.num_qubits != k) throw TomographyError("dataset: target width mismatch");

  std::map<std::pair<std::string, std::string>, const nlohmann::json*> by_key;
  for (const auto& job : j.at("jobs")) {
    const auto key = std::make_pair(Preparation::parse(job.at("prep").get<std::string>()).label(),
                                    MeasurementSetting::parse(job.at("setting")).bases);
    if (!by_key.emplace(key, &job).second) {
      throw TomographyError("dataset: duplicate job " + key.first + "/" + key.second);
    }
  }
  if (by_key.size() != d.plan.num_jobs()) {
    throw TomographyError("dataset: expected " + std::to_string(d.plan.num_jobs()) +
                          " jobs, found " + std::to_string(by_key.size()));
  }
  for (const auto& prep : d.plan.preparations) {
    for (const auto& setting : d.plan.settings) {
      const auto it = by_key.find({prep.label(), setting.bases});
      if (it == by_key.end()) {
        throw TomographyError("dataset: missing job " + prep.label() + "/" + setting.bases);
      }
      JobRecord rec{prep, setting, {}, {}};
      if (d.exact) {
        rec.probabilities = it->second->at("probabilities").get<std::vector<double>>();
      } else {
        rec.counts = counts_from_json(it->second->at("counts"));
      }
      d.jobs.push_back(std::move(rec));
    }
  }
  return d;
}

nlohmann::json report_json(const QptResult& r) {
  return nlohmann::json{{"fidelity", r.report.process_fidelity},
                        {"average_gate_fidelity", r.report.average_gate_fidelity},
                        {"tp_dev", r.report.tp_deviation},
                        {"min_eig", r.report.min_eigenvalue},
                        {"shots", r.dataset.plan.shots},
                        {"seed", r.dataset.seed},
                        {"exact", r.dataset.exact},
                        {"noise_model", r.dataset.noise_model_id},
                        {"method", method_name(r.method)},
                        {"converged", r.converged},
                        {"iterations", r.iterations}};
}

}  // namespace choiqpt
