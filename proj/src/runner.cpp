// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "kpvqe/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

namespace kpvqe {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

json mode_json(const EvalMode& mode) {
  json j{{"name", mode_name(mode)}};
  if (const auto* s = std::get_if<SampledMode>(&mode)) {
    j["shots"] = s->shots;
  } else if (const auto* n = std::get_if<NoisyMode>(&mode)) {
    j["shots"] = n->shots;
    j["noise_1q"] = n->noise.p_depol_1q;
    j["noise_2q"] = n->noise.p_depol_2q;
    j["noise_readout"] = n->noise.p_readout_flip;
  }
  return j;
}

}  // namespace

void RunConfig::validate() const {
  if (n_layers < 1) throw ConfigError("layers must be >= 1");
  if (!(step_rate > 0.0)) throw ConfigError("lr must be positive");
  if (tol && !(*tol > 0.0)) throw ConfigError("tol must be positive");
  if (max_cycles < 1) throw ConfigError("max_cycles must be >= 1");
  if (mode != "statevector" && mode != "sampled" && mode != "noisy") {
    throw ConfigError("mode must be statevector, sampled or noisy (got '" + mode + "')");
  }
  if (shots < 1) throw ConfigError("shots must be >= 1");
  try {
    noise.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (points_per_segment < 2) throw ConfigError("kpoints must be >= 2");
  if (!(extent > 0.0 && extent <= 1.0)) throw ConfigError("extent must lie in (0, 1]");
  if (chunks < 1) throw ConfigError("chunks must be >= 1");
}

EvalMode RunConfig::eval_mode() const {
  if (mode == "sampled") return SampledMode{shots, seed};
  if (mode == "noisy") return NoisyMode{noise, shots, seed};
  return ExactMode{};
}

OptimizerConfig RunConfig::optimizer_config() const {
  OptimizerConfig c;
  c.kind = optimizer;
  c.step_rate = step_rate;
  c.tol = tol.value_or(default_tolerance(eval_mode()));
  c.max_cycles = max_cycles;
  return c;
}

SweepOptions RunConfig::sweep_options() const {
  SweepOptions o;
  o.n_layers = n_layers;
  o.optimizer = optimizer_config();
  o.mode = eval_mode();
  o.seed = seed;
  o.kp = kp;
  o.chunks = chunks;
  return o;
}

std::string bands_csv(const BandStructureResult& result, bool record_timing) {
  std::ostringstream out;
  out << kBandsCsvHeader << '\n';
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const BandPoint& p = result.points[i];
    out << i << ',' << num(p.k.path_coord) << ',' << num(p.k.kx) << ',' << num(p.k.ky) << ','
        << num(p.k.kz);
    for (double e : p.ssvqe.energies) out << ',' << num(e);
    for (double x : p.exact) out << ',' << num(x);
    for (double err : p.errors) out << ',' << num(err);
    out << ',' << p.ssvqe.cycles << ',' << num(record_timing ? p.ssvqe.wall_time : 0.0) << '\n';
  }
  return out.str();
}

json bands_json(const BandStructureResult& result) {
  json points = json::array();
  double cycle_sum = 0.0;
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const BandPoint& p = result.points[i];
    cycle_sum += p.ssvqe.cycles;
    points.push_back({{"index", i},
                      {"k", {p.k.kx, p.k.ky, p.k.kz}},
                      {"path_coord", p.k.path_coord},
                      {"cycles", p.ssvqe.cycles},
                      {"cost_evaluations", p.ssvqe.cost_evaluations},
                      {"seconds", p.ssvqe.wall_time},
                      {"converged", p.ssvqe.converged},
                      {"diverged", p.ssvqe.diverged},
                      {"energies", p.ssvqe.energies},
                      {"energy_sources", p.ssvqe.energy_sources},
                      {"exact", p.exact},
                      {"errors", p.errors},
                      {"theta", p.ssvqe.theta_opt.angles}});
  }
  const double n = std::max<double>(1.0, static_cast<double>(result.points.size()));
  return {{"material", result.material},
          {"layers", result.n_layers},
          {"optimizer",
           {{"name", optimizer_name(result.optimizer.kind)},
            {"step_rate", result.optimizer.step_rate},
            {"tol", result.optimizer.tol},
            {"max_cycles", result.optimizer.max_cycles}}},
          {"mode", mode_json(result.mode)},
          {"seed", result.seed},
          {"generated_at", timestamp()},
          {"summary",
           {{"max_error", result.max_error()},
            {"median_error", result.median_error()},
            {"total_cycles", result.total_cycles()},
            {"mean_cycles", cycle_sum / n},
            {"any_diverged", result.any_diverged()}}},
          {"points", points}};
}

BandStructureResult bands_from_json(const json& doc) {
  try {
    BandStructureResult result;
    result.material = doc.at("material").get<std::string>();
    result.n_layers = doc.at("layers").get<int>();
    result.seed = doc.value("seed", kDefaultSeed);
    for (const auto& pj : doc.at("points")) {
      BandPoint p;
      const auto k = pj.at("k").get<std::vector<double>>();
      if (k.size() != 3) throw ConfigError("bands result: k must have three components");
      p.k = {k[0], k[1], k[2], pj.at("path_coord").get<double>()};
      p.ssvqe.energies = pj.at("energies").get<std::vector<double>>();
      p.ssvqe.energy_sources = pj.at("energy_sources").get<std::vector<std::size_t>>();
      p.ssvqe.cycles = pj.value("cycles", 0);
      p.ssvqe.diverged = pj.value("diverged", false);
      p.ssvqe.converged = pj.value("converged", false);
      const int n_qubits = std::countr_zero(p.ssvqe.energies.size());
      p.ssvqe.theta_opt =
          AnsatzParams(n_qubits, result.n_layers, pj.at("theta").get<std::vector<double>>());
      p.exact = pj.value("exact", std::vector<double>{});
      p.errors = pj.value("errors", std::vector<double>{});
      result.points.push_back(std::move(p));
    }
    return result;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bands result: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bands result: ") + e.what());
  }
}

BandStructureResult run_bands(const RunConfig& config) {
  config.validate();
  const MaterialParams material = load_material_file(config.material_path);
  const auto path = make_kpath(material.a, config.points_per_segment, config.extent);
  BandStructureResult result = band_sweep(material, path, config.sweep_options());
  write_text(config.out_dir / "bands.csv", bands_csv(result, config.record_timing));
  write_text(config.out_dir / "bands.json", bands_json(result).dump(2) + "\n");
  return result;
}

json decomposition_json(const PauliHamiltonian& h, std::span<const QWCGroup> groups) {
  json terms = json::array();
  for (const auto& t : h.terms()) {
    terms.push_back({{"string", t.string.str()}, {"coefficient", t.coefficient}});
  }
  json gj = json::array();
  for (const auto& g : groups) {
    std::string basis;
    for (Pauli p : g.basis) basis.push_back(to_char(p));
    json members = json::array();
    for (std::size_t m : g.members) members.push_back(h.terms()[m].string.str());
    gj.push_back({{"basis", basis}, {"member_strings", members}});
  }
  return {{"n_qubits", h.n_qubits()}, {"terms", terms}, {"groups", gj}};
}

PauliHamiltonian load_observable(const std::string& spec, int n_qubits) {
  if (spec == "identity") return identity_observable(n_qubits);
  const json doc = read_json_file(spec);
  try {
    std::vector<PauliTerm> terms;
    for (const auto& t : doc.at("terms")) {
      terms.push_back({PauliString(t.at("string").get<std::string>()),
                       t.at("coefficient").get<double>()});
    }
    if (terms.empty()) throw ConfigError(spec + ": observable has no terms");
    return PauliHamiltonian(doc.value("n_qubits", n_qubits), std::move(terms));
  } catch (const json::exception& e) {
    throw ConfigError(spec + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(spec + ": " + e.what());
  }
}

SpectrumRun run_spectrum(const RunConfig& config, const fs::path& bands_result,
                         const std::string& observable) {
  config.validate();
  const MaterialParams material = load_material_file(config.material_path);
  const BandStructureResult bands = bands_from_json(read_json_file(bands_result));
  if (bands.points.empty()) throw ConfigError("bands result has no k-points");
  const int n_qubits = bands.points.front().ssvqe.theta_opt.n_qubits;
  TransitionRequest req =
      TransitionRequest::from_bands(bands, load_observable(observable, n_qubits), config.eval_mode());
  req.seed = config.seed;

  SpectrumRun run;
  run.spectrum = absorption(bands, req, default_omega_grid(material.eps_gamma));
  run.call_budget_per_k = call_budget(req);
  run.total_calls = run.call_budget_per_k * bands.points.size();

  std::ostringstream csv;
  csv << kSpectrumCsvHeader << '\n';
  for (std::size_t i = 0; i < run.spectrum.alpha.size(); ++i) {
    csv << num(run.spectrum.photon_energies[i]) << ',' << num(run.spectrum.alpha[i]) << '\n';
  }
  write_text(config.out_dir / "spectrum.csv", csv.str());
  const json sidecar{{"material", material.name},
                     {"observable", observable},
                     {"mode", mode_json(req.mode)},
                     {"k_points", bands.points.size()},
                     {"valence_bands", req.valence_bands},
                     {"conduction_band", req.conduction_band},
                     {"calls_per_k_point", run.call_budget_per_k},
                     {"total_calls", run.total_calls},
                     {"raw_scale", run.spectrum.scale},
                     {"generated_at", timestamp()}};
  write_text(config.out_dir / "spectrum.json", sidecar.dump(2) + "\n");
  return run;
}

BenchmarkReport run_benchmark(const RunConfig& config, const std::vector<int>& layers,
                              const std::vector<OptimizerKind>& optimizers) {
  config.validate();
  if (layers.empty()) throw ConfigError("benchmark: layers set is empty");
  if (optimizers.empty()) throw ConfigError("benchmark: optimizer set is empty");
  if (config.mode != "statevector") throw ConfigError("benchmark: only statevector mode is supported");
  for (int l : layers) {
    if (l < 1) throw ConfigError("benchmark: layers must be >= 1");
  }
  const MaterialParams material = load_material_file(config.material_path);
  const auto path = make_kpath(material.a, config.points_per_segment, config.extent);

  BenchmarkReport report;
  report.material = material.name;
  for (int l : layers) {
    for (OptimizerKind kind : optimizers) {
      RunConfig c = config;
      c.n_layers = l;
      c.optimizer = kind;
      const BandStructureResult r = band_sweep(material, path, c.sweep_options());
      BenchmarkRow row;
      row.layers = l;
      row.optimizer = optimizer_name(kind);
      row.points = r.points.size();
      row.min_cycles = std::numeric_limits<int>::max();
      double seconds = 0.0;
      for (const auto& p : r.points) {
        row.mean_cycles += p.ssvqe.cycles;
        row.min_cycles = std::min(row.min_cycles, p.ssvqe.cycles);
        row.max_cycles = std::max(row.max_cycles, p.ssvqe.cycles);
        seconds += p.ssvqe.wall_time;
        if (p.ssvqe.converged) ++row.converged_points;
      }
      const auto n = static_cast<double>(r.points.size());
      row.mean_seconds = seconds / n;
      row.mean_seconds_per_cycle = row.mean_cycles > 0.0 ? seconds / row.mean_cycles : 0.0;
      row.mean_cycles /= n;
      row.max_error = r.max_error();
      report.rows.push_back(row);
    }
  }
  return report;
}

json benchmark_json(const BenchmarkReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"layers", r.layers},
                    {"optimizer", r.optimizer},
                    {"mean_cycles", r.mean_cycles},
                    {"min_cycles", r.min_cycles},
                    {"max_cycles", r.max_cycles},
                    {"mean_seconds", r.mean_seconds},
                    {"mean_seconds_per_cycle", r.mean_seconds_per_cycle},
                    {"converged_points", r.converged_points},
                    {"points", r.points},
                    {"max_error", r.max_error}});
  }
  return {{"material", report.material}, {"generated_at", timestamp()}, {"rows", rows}};
}

std::string benchmark_csv(const BenchmarkReport& report) {
  std::ostringstream out;
  out << "layers,optimizer,mean_cycles,min_cycles,max_cycles,mean_seconds,"
         "mean_seconds_per_cycle,converged_points,points,max_error\n";
  for (const auto& r : report.rows) {
    out << r.layers << ',' << r.optimizer << ',' << num(r.mean_cycles) << ',' << r.min_cycles
        << ',' << r.max_cycles << ',' << num(r.mean_seconds) << ','
        << num(r.mean_seconds_per_cycle) << ',' << r.converged_points << ',' << r.points << ','
        << num(r.max_error) << '\n';
  }
  return out.str();
}

void write_benchmark(const BenchmarkReport& report, const fs::path& out_dir) {
  write_text(out_dir / "benchmark.json", benchmark_json(report).dump(2) + "\n");
  write_text(out_dir / "benchmark.csv", benchmark_csv(report));
}

std::vector<MaterialOutcome> run_all_materials(const RunConfig& config, const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw ConfigError("material directory " + dir.string() + " not found");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  if (files.empty()) throw ConfigError("material directory " + dir.string() + " has no .json files");
  std::sort(files.begin(), files.end());

  std::vector<MaterialOutcome> outcomes;
  for (const auto& file : files) {
    MaterialOutcome o;
    o.file = file;
    o.material = file.stem().string();
    try {
      RunConfig c = config;
      c.material_path = file;
      c.out_dir = config.out_dir / file.stem();
      const BandStructureResult r = run_bands(c);
      o.material = r.material;
      o.max_error = r.max_error();
      o.diverged = r.any_diverged();
      o.ok = !o.diverged;
      if (o.diverged) o.error = "one or more k-points diverged";
    } catch (const std::exception& e) {
      o.error = e.what();
    }
    outcomes.push_back(std::move(o));
  }
  return outcomes;
}

std::vector<int> parse_int_range(const std::string& text) {
  std::vector<int> out;
  try {
    if (const auto dots = text.find(".."); dots != std::string::npos) {
      const int lo = std::stoi(text.substr(0, dots));
      const int hi = std::stoi(text.substr(dots + 2));
      if (hi < lo) throw ConfigError("range '" + text + "' is empty");
      for (int v = lo; v <= hi; ++v) out.push_back(v);
      return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(std::stoi(item));
    }
  } catch (const std::logic_error&) {
    throw ConfigError("cannot parse integer list '" + text + "'");
  }
  return out;
}

}  // namespace kpvqe
