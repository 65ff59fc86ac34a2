// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "kpvqe/ssvqe.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <numbers>
#include <numeric>
#include <set>

#include "kpvqe/exact.hpp"

namespace kpvqe {

namespace {

std::uint64_t mode_seed(const EvalMode& mode) {
  if (const auto* s = std::get_if<SampledMode>(&mode)) return s->seed;
  if (const auto* n = std::get_if<NoisyMode>(&mode)) return n->seed;
  return 0;
}

std::vector<double> energies_with_mode(const AnsatzParams& theta, const SSVQEProblem& problem,
                                       const EvalMode& mode) {
  const Circuit circuit = ansatz_circuit(theta);
  const std::uint64_t seed = mode_seed(mode);
  const bool stochastic = is_stochastic(mode);
  std::vector<double> out(problem.n_states());
  for (std::size_t l = 0; l < problem.n_states(); ++l) {
    const EvalMode state_mode = stochastic ? with_seed(mode, mix_seed(seed, l)) : mode;
    out[l] = expectation(circuit, problem.initial_basis_indices[l], problem.hamiltonian,
                         problem.groups, state_mode);
  }
  return out;
}

double cost_with_mode(const AnsatzParams& theta, const SSVQEProblem& problem,
                      const EvalMode& mode) {
  const std::vector<double> e = energies_with_mode(theta, problem, mode);
  return std::inner_product(problem.weights.begin(), problem.weights.end(), e.begin(), 0.0);
}

std::vector<double> gradient_with_mode(const AnsatzParams& theta, const SSVQEProblem& problem,
                                       const EvalMode& mode) {
  const std::uint64_t seed = mode_seed(mode);
  const bool stochastic = is_stochastic(mode);
  std::vector<double> g(theta.size());
  AnsatzParams shifted = theta;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const EvalMode plus_mode = stochastic ? with_seed(mode, mix_seed(seed, 2 * i)) : mode;
    const EvalMode minus_mode = stochastic ? with_seed(mode, mix_seed(seed, 2 * i + 1)) : mode;
    shifted.angles[i] = theta.angles[i] + std::numbers::pi / 2;
    const double plus = cost_with_mode(shifted, problem, plus_mode);
    shifted.angles[i] = theta.angles[i] - std::numbers::pi / 2;
    const double minus = cost_with_mode(shifted, problem, minus_mode);
    shifted.angles[i] = theta.angles[i];
    g[i] = 0.5 * (plus - minus);
  }
  return g;
}

// Each call consumes a fresh seed derived from the problem's master seed, so a
// run is reproducible for a fixed seed regardless of optimiser internals.
class SSVQEObjective final : public Objective {
 public:
  SSVQEObjective(const SSVQEProblem& problem, int n_qubits)
      : problem_(problem), n_qubits_(n_qubits), master_(mode_seed(problem.mode)) {}

  double value(const std::vector<double>& x) override {
    ++evaluations_;
    return cost_with_mode(params(x), problem_, next_mode());
  }

  std::vector<double> gradient(const std::vector<double>& x) override {
    evaluations_ += 2 * x.size();
    return gradient_with_mode(params(x), problem_, next_mode());
  }

  EvalMode next_mode() { return with_seed(problem_.mode, mix_seed(master_, counter_++)); }
  [[nodiscard]] std::uint64_t evaluations() const { return evaluations_; }

 private:
  AnsatzParams params(const std::vector<double>& x) const {
    AnsatzParams p;
    p.n_qubits = n_qubits_;
    p.n_layers = problem_.n_layers;
    p.angles = x;
    return p;
  }

  const SSVQEProblem& problem_;
  int n_qubits_;
  std::uint64_t master_;
  std::uint64_t counter_ = 0;
  std::uint64_t evaluations_ = 0;
};

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

SSVQEProblem SSVQEProblem::standard(PauliHamiltonian h, int n_layers, EvalMode mode) {
  SSVQEProblem p;
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  p.groups = qwc_partition(h);
  p.hamiltonian = std::move(h);
  for (std::size_t l = 0; l < dim; ++l) {
    p.weights.push_back(static_cast<double>(dim - l));
    p.initial_basis_indices.push_back(l);
  }
  p.n_layers = n_layers;
  p.mode = std::move(mode);
  return p;
}

void SSVQEProblem::validate() const {
  if (weights.empty()) throw std::invalid_argument("SSVQEProblem: no states to track");
  if (weights.size() != initial_basis_indices.size()) {
    throw std::invalid_argument("SSVQEProblem: weight count differs from initial state count");
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0)) throw std::invalid_argument("SSVQEProblem: weights must be positive");
    if (i > 0 && !(weights[i] < weights[i - 1])) {
      throw std::invalid_argument("SSVQEProblem: weights must be strictly descending");
    }
  }
  const std::set<std::size_t> distinct(initial_basis_indices.begin(),
                                       initial_basis_indices.end());
  if (distinct.size() != initial_basis_indices.size()) {
    throw std::invalid_argument("SSVQEProblem: initial basis indices must be distinct");
  }
  const std::size_t dim = std::size_t{1} << hamiltonian.n_qubits();
  if (*distinct.rbegin() >= dim) {
    throw std::invalid_argument("SSVQEProblem: initial basis index out of range");
  }
  if (n_layers < 1) throw std::invalid_argument("SSVQEProblem: n_layers must be >= 1");
  validate_mode(mode);
  if (is_stochastic(mode)) check_partition(hamiltonian, groups);
}

std::vector<double> state_energies(const AnsatzParams& theta, const SSVQEProblem& problem) {
  if (theta.n_qubits != problem.hamiltonian.n_qubits() || theta.n_layers != problem.n_layers) {
    throw std::invalid_argument("ansatz shape does not match the SSVQE problem");
  }
  return energies_with_mode(theta, problem, problem.mode);
}

double cost(const AnsatzParams& theta, const SSVQEProblem& problem) {
  const std::vector<double> e = state_energies(theta, problem);
  return std::inner_product(problem.weights.begin(), problem.weights.end(), e.begin(), 0.0);
}

std::vector<double> gradient(const AnsatzParams& theta, const SSVQEProblem& problem) {
  if (theta.n_qubits != problem.hamiltonian.n_qubits() || theta.n_layers != problem.n_layers) {
    throw std::invalid_argument("ansatz shape does not match the SSVQE problem");
  }
  return gradient_with_mode(theta, problem, problem.mode);
}

SSVQEResult minimize(const SSVQEProblem& problem, const OptimizerConfig& config,
                     const AnsatzParams& theta_init) {
  problem.validate();
  config.validate();
  if (theta_init.n_qubits != problem.hamiltonian.n_qubits() ||
      theta_init.n_layers != problem.n_layers) {
    throw std::invalid_argument("minimize: initial angles do not match the problem shape");
  }
  const auto start = std::chrono::steady_clock::now();
  SSVQEObjective objective(problem, theta_init.n_qubits);
  auto optimizer = Optimizer::create(config);
  const int patience = is_stochastic(problem.mode) ? kStochasticPatience : 1;

  SSVQEResult result;
  std::vector<double> x = theta_init.angles;
  std::vector<double> best_x = x;
  double best_cost = std::numeric_limits<double>::infinity();
  int streak = 0;
  for (int cycle = 1; cycle <= config.max_cycles; ++cycle) {
    const std::vector<double> before = x;
    const double c = optimizer->step(objective, x);
    result.cycles = cycle;
    result.cost_history.push_back(c);
    if (!std::isfinite(c) || !all_finite(x)) {
      result.diverged = true;
      break;
    }
    if (c < best_cost) {
      best_cost = c;
      best_x = before;
    }
    if (cycle > 1) {
      const double prev = result.cost_history[result.cost_history.size() - 2];
      streak = std::abs(c - prev) < config.tol ? streak + 1 : 0;
      if (streak >= patience) {
        result.converged = true;
        break;
      }
    }
  }

  result.theta_opt = AnsatzParams(theta_init.n_qubits, problem.n_layers, best_x);
  const std::vector<double> e =
      energies_with_mode(result.theta_opt, problem, objective.next_mode());
  result.cost_evaluations = objective.evaluations() + 1;
  std::vector<std::size_t> order(e.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return e[a] < e[b]; });
  for (std::size_t i : order) {
    result.energies.push_back(e[i]);
    result.energy_sources.push_back(problem.initial_basis_indices[i]);
  }
  if (!all_finite(result.energies)) {
    result.diverged = true;
    result.converged = false;
  }
  result.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

double default_tolerance(const EvalMode& mode) {
  if (std::holds_alternative<SampledMode>(mode)) return 1e-4;
  if (std::holds_alternative<NoisyMode>(mode)) return 1e-3;
  return 1e-7;
}

SSVQEProblem kp_problem(const MaterialParams& material, const KPoint& k, int n_layers,
                        const EvalMode& mode, const KpOptions& kp) {
  return SSVQEProblem::standard(decompose(build_hamiltonian(material, k, kp)), n_layers, mode);
}

bool BandStructureResult::any_diverged() const {
  return std::any_of(points.begin(), points.end(),
                     [](const BandPoint& p) { return p.ssvqe.diverged; });
}

double BandStructureResult::max_error() const {
  double m = 0.0;
  for (const auto& p : points) {
    for (double e : p.errors) m = std::max(m, e);
  }
  return m;
}

double BandStructureResult::median_error() const {
  std::vector<double> all;
  for (const auto& p : points) all.insert(all.end(), p.errors.begin(), p.errors.end());
  if (all.empty()) return 0.0;
  const std::size_t mid = all.size() / 2;
  std::nth_element(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(mid), all.end());
  if (all.size() % 2 == 1) return all[mid];
  const double upper = all[mid];
  const double lower = *std::max_element(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

int BandStructureResult::total_cycles() const {
  int total = 0;
  for (const auto& p : points) total += p.ssvqe.cycles;
  return total;
}

namespace {

std::vector<BandPoint> sweep_chunk(const MaterialParams& material, const std::vector<KPoint>& path,
                                   std::size_t begin, std::size_t end,
                                   const SweepOptions& options) {
  std::vector<BandPoint> out;
  AnsatzParams warm;
  bool have_warm = false;
  for (std::size_t i = begin; i < end; ++i) {
    const EvalMode mode = with_seed(options.mode, mix_seed(options.seed, 1000 + i));
    const SSVQEProblem problem = kp_problem(material, path[i], options.n_layers, mode, options.kp);
    const AnsatzParams init =
        (options.warm_start && have_warm)
            ? warm
            : AnsatzParams::random(problem.hamiltonian.n_qubits(), options.n_layers,
                                   i == 0 ? options.seed : mix_seed(options.seed, i));
    BandPoint point;
    point.k = path[i];
    point.ssvqe = minimize(problem, options.optimizer, init);
    point.exact = eigh(build_hamiltonian(material, path[i], options.kp)).eigenvalues;
    for (std::size_t b = 0; b < point.exact.size(); ++b) {
      point.errors.push_back(std::abs(point.ssvqe.energies[b] - point.exact[b]));
    }
    if (!point.ssvqe.diverged) {
      warm = point.ssvqe.theta_opt;
      have_warm = true;
    }
    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace

BandStructureResult band_sweep(const MaterialParams& material, const std::vector<KPoint>& path,
                               const SweepOptions& options) {
  if (path.empty()) throw std::invalid_argument("band_sweep: empty k-path");
  if (options.n_layers < 1) throw std::invalid_argument("band_sweep: n_layers must be >= 1");
  options.optimizer.validate();
  validate_mode(options.mode);

  BandStructureResult result;
  result.material = material.name;
  result.n_layers = options.n_layers;
  result.optimizer = options.optimizer;
  result.mode = options.mode;
  result.seed = options.seed;

  const std::size_t chunks = std::clamp<std::size_t>(options.chunks, 1, path.size());
  if (chunks == 1) {
    result.points = sweep_chunk(material, path, 0, path.size(), options);
    return result;
  }
  std::vector<std::future<std::vector<BandPoint>>> futures;
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = path.size() * c / chunks;
    const std::size_t end = path.size() * (c + 1) / chunks;
    futures.push_back(std::async(std::launch::async, sweep_chunk, std::cref(material),
                                 std::cref(path), begin, end, std::cref(options)));
  }
  for (auto& f : futures) {
    auto part = f.get();
    result.points.insert(result.points.end(), std::make_move_iterator(part.begin()),
                         std::make_move_iterator(part.end()));
  }
  return result;
}

}  // namespace kpvqe
