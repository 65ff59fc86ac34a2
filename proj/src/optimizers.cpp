// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "kpvqe/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace kpvqe {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

class Adam final : public Optimizer {
 public:
  explicit Adam(const OptimizerConfig& c) : config_(c) {}

  double step(Objective& f, std::vector<double>& x) override {
    const double value = f.value(x);
    const std::vector<double> g = f.gradient(x);
    if (m_.empty()) {
      m_.assign(x.size(), 0.0);
      v_.assign(x.size(), 0.0);
    }
    ++t_;
    const double lr = config_.step_rate * std::sqrt(1.0 - std::pow(config_.beta2, t_)) /
                      (1.0 - std::pow(config_.beta1, t_));
    for (std::size_t i = 0; i < x.size(); ++i) {
      m_[i] = config_.beta1 * m_[i] + (1.0 - config_.beta1) * g[i];
      v_[i] = config_.beta2 * v_[i] + (1.0 - config_.beta2) * g[i] * g[i];
      x[i] -= lr * m_[i] / (std::sqrt(v_[i]) + config_.epsilon);
    }
    return value;
  }

 private:
  OptimizerConfig config_;
  std::vector<double> m_, v_;
  int t_ = 0;
};

class Adagrad final : public Optimizer {
 public:
  explicit Adagrad(const OptimizerConfig& c) : config_(c) {}

  double step(Objective& f, std::vector<double>& x) override {
    const double value = f.value(x);
    const std::vector<double> g = f.gradient(x);
    if (accum_.empty()) accum_.assign(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      accum_[i] += g[i] * g[i];
      x[i] -= config_.step_rate * g[i] / std::sqrt(accum_[i] + config_.epsilon);
    }
    return value;
  }

 private:
  OptimizerConfig config_;
  std::vector<double> accum_;
};

// Gradient taken at the look-ahead point x - momentum * a.
class Nesterov final : public Optimizer {
 public:
  explicit Nesterov(const OptimizerConfig& c) : config_(c) {}

  double step(Objective& f, std::vector<double>& x) override {
    const double value = f.value(x);
    if (a_.empty()) a_.assign(x.size(), 0.0);
    std::vector<double> ahead = x;
    for (std::size_t i = 0; i < x.size(); ++i) ahead[i] -= config_.momentum * a_[i];
    const std::vector<double> g = f.gradient(ahead);
    for (std::size_t i = 0; i < x.size(); ++i) {
      a_[i] = config_.momentum * a_[i] + config_.step_rate * g[i];
      x[i] -= a_[i];
    }
    return value;
  }

 private:
  OptimizerConfig config_;
  std::vector<double> a_;
};

class GradientDescent final : public Optimizer {
 public:
  explicit GradientDescent(const OptimizerConfig& c) : config_(c) {}

  double step(Objective& f, std::vector<double>& x) override {
    const double value = f.value(x);
    const std::vector<double> g = f.gradient(x);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= config_.step_rate * g[i];
    return value;
  }

 private:
  OptimizerConfig config_;
};

// Polak-Ribiere (clipped at zero) with Armijo backtracking. The trial step
// starts at twice the last accepted one, seeded by step_rate; rejected trials
// shrink by quadratic interpolation and an accepted one gets one parabolic
// refinement probe.
class ConjugateGradient final : public Optimizer {
 public:
  explicit ConjugateGradient(const OptimizerConfig& c) : config_(c), alpha_(c.step_rate) {}

  double step(Objective& f, std::vector<double>& x) override {
    const double value = f.value(x);
    const std::vector<double> g = f.gradient(x);
    if (direction_.empty() || ++since_reset_ >= x.size()) {
      direction_ = negate(g);
      since_reset_ = 0;
    } else {
      double num = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) num += g[i] * (g[i] - prev_grad_[i]);
      const double denom = dot(prev_grad_, prev_grad_);
      const double beta = denom > 0.0 ? std::max(0.0, num / denom) : 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) direction_[i] = -g[i] + beta * direction_[i];
    }
    double slope = dot(g, direction_);
    if (slope >= 0.0) {
      direction_ = negate(g);
      slope = dot(g, direction_);
    }
    prev_grad_ = g;
    if (slope == 0.0) return value;

    double alpha = 2.0 * alpha_;
    std::vector<double> trial(x.size());
    auto probe_at = [&](double a) {
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + a * direction_[i];
      return f.value(trial);
    };
    auto armijo = [&](double a, double fa) {
      return std::isfinite(fa) && fa <= value + config_.armijo_c1 * a * slope;
    };
    for (int k = 0; k <= config_.max_backtracks; ++k) {
      const double probe = probe_at(alpha);
      // minimiser of the parabola through f(0), f'(0) and f(alpha)
      const double curvature = 2.0 * (probe - value - slope * alpha);
      const double parabola = curvature > 0.0 ? -slope * alpha * alpha / curvature : 0.0;
      if (armijo(alpha, probe)) {
        double best_alpha = alpha;
        if (parabola > 0.0 && parabola < 10.0 * alpha && std::abs(parabola - alpha) > 1e-3 * alpha) {
          const double refined = probe_at(parabola);
          if (armijo(parabola, refined) && refined < probe) best_alpha = parabola;
        }
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += best_alpha * direction_[i];
        alpha_ = best_alpha;
        return value;
      }
      const double shrink = config_.backtrack_factor * alpha;
      alpha = (std::isfinite(probe) && parabola > 0.0) ? std::clamp(parabola, 0.1 * alpha, shrink) : shrink;
    }
    // No acceptable step: restart along steepest descent next cycle.
    direction_.clear();
    alpha_ = std::max(alpha, 1e-12);
    return value;
  }

 private:
  static std::vector<double> negate(const std::vector<double>& g) {
    std::vector<double> d(g.size());
    std::transform(g.begin(), g.end(), d.begin(), [](double v) { return -v; });
    return d;
  }

  OptimizerConfig config_;
  double alpha_;
  std::vector<double> direction_, prev_grad_;
  std::size_t since_reset_ = 0;
};

}  // namespace

void OptimizerConfig::validate() const {
  if (!(step_rate > 0.0)) throw std::invalid_argument("optimizer step_rate must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("optimizer tol must be positive");
  if (max_cycles < 1) throw std::invalid_argument("optimizer max_cycles must be >= 1");
}

std::string optimizer_name(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::Adam: return "adam";
    case OptimizerKind::Adagrad: return "adagrad";
    case OptimizerKind::NesterovMomentum: return "nesterov";
    case OptimizerKind::VanillaGD: return "gd";
    case OptimizerKind::NonlinearCG: return "cg";
  }
  return "unknown";
}

OptimizerKind parse_optimizer(std::string_view name) {
  if (name == "adam") return OptimizerKind::Adam;
  if (name == "adagrad") return OptimizerKind::Adagrad;
  if (name == "nesterov") return OptimizerKind::NesterovMomentum;
  if (name == "gd" || name == "vanilla") return OptimizerKind::VanillaGD;
  if (name == "cg") return OptimizerKind::NonlinearCG;
  throw std::invalid_argument("unknown optimizer '" + std::string(name) + "'");
}

std::unique_ptr<Optimizer> Optimizer::create(const OptimizerConfig& config) {
  config.validate();
  switch (config.kind) {
    case OptimizerKind::Adam: return std::make_unique<Adam>(config);
    case OptimizerKind::Adagrad: return std::make_unique<Adagrad>(config);
    case OptimizerKind::NesterovMomentum: return std::make_unique<Nesterov>(config);
    case OptimizerKind::VanillaGD: return std::make_unique<GradientDescent>(config);
    case OptimizerKind::NonlinearCG: return std::make_unique<ConjugateGradient>(config);
  }
  throw std::invalid_argument("unsupported optimizer kind");
}

}  // namespace kpvqe
