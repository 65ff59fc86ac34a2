// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace kpvqe {

enum class OptimizerKind { Adam, Adagrad, NesterovMomentum, VanillaGD, NonlinearCG };

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::Adam;
  double step_rate = 0.01;
  double tol = 1e-7;  // eV, on |C_t - C_{t-1}|
  int max_cycles = 2000;

  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double momentum = 0.9;

  // NonlinearCG backtracking line search.
  double armijo_c1 = 1e-4;
  double backtrack_factor = 0.5;
  int max_backtracks = 30;

  /// Throws std::invalid_argument unless step_rate > 0, tol > 0, max_cycles >= 1.
  void validate() const;
};

std::string optimizer_name(OptimizerKind kind);
/// Accepts adam, adagrad, nesterov, gd (or vanilla), cg; throws std::invalid_argument otherwise.
OptimizerKind parse_optimizer(std::string_view name);

/// Scalar objective with gradient; implementations may count evaluations.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual double value(const std::vector<double>& x) = 0;
  virtual std::vector<double> gradient(const std::vector<double>& x) = 0;
};

class Optimizer {
 public:
  virtual ~Optimizer() = default;
  /// Updates x in place and returns the objective value at the incoming x.
  virtual double step(Objective& objective, std::vector<double>& x) = 0;

  static std::unique_ptr<Optimizer> create(const OptimizerConfig& config);
};

}  // namespace kpvqe
