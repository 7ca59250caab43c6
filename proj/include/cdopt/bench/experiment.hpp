#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cdopt/bench/generators.hpp"
#include "cdopt/bench/io.hpp"
#include "cdopt/bench/reference.hpp"
#include "cdopt/errors.hpp"
#include "cdopt/gradient_table.hpp"
#include "cdopt/index_rules.hpp"
#include "cdopt/partition.hpp"
#include "cdopt/problems/lasso.hpp"
#include "cdopt/problems/least_squares.hpp"
#include "cdopt/problems/logistic.hpp"
#include "cdopt/problems/nmf.hpp"
#include "cdopt/problems/svm_dual.hpp"
#include "cdopt/prox.hpp"
#include "cdopt/rng.hpp"
#include "cdopt/schemes.hpp"

namespace cdopt {

enum class ProblemKind { kLasso, kLeastSquares, kNmf, kLogistic, kSvm };

// Which recorded column the early-stop tolerance applies to.
enum class StopMetric { kGradMapNorm, kDistToRef };

struct ProblemParams {
  ProblemKind kind = ProblemKind::kLasso;
  std::size_t m = 50;   // samples / rows
  std::size_t n = 100;  // features / columns
  std::size_t k = 10;   // lasso planted support size
  double sigma = 1e-4;  // lasso noise level
  double lambda = 1e3;
  double continuation_eta = 0.0;  // > 1 turns on the lasso warm-start ladder
  std::size_t rank = 5;           // nmf factor rank
  double separation = 2.0;        // class separation for logistic / svm clouds
  double c = 1.0;                 // loss weight (logistic) / box cap (svm)
  std::size_t blocks = 10;        // least-squares block count
};

struct RuleSpec {
  RuleKind kind = RuleKind::kCyclic;
  GreedyRule greedy = GreedyRule::kGsS;
  double importance_alpha = 1.0;
};

struct ExperimentConfig {
  ProblemParams problem;
  RuleSpec rule;
  SchemeConfig scheme;
  std::size_t epochs = 100;
  std::uint64_t seed = 1;
  std::size_t trials = 1;
  double tolerance = 1e-6;
  StopMetric stop_metric = StopMetric::kGradMapNorm;
  std::string output_path;  // consumed by the CLI; empty = stdout summary only
};

struct RecordRow {
  std::size_t epoch = 0;
  double objective = 0.0;
  double grad_map_norm = 0.0;
  double dist_to_ref = 0.0;
  double flops = 0.0;  // cumulative tallied work; exact for totals below 2^53
  double elapsed_ns = 0.0;
};

struct ConvergenceRecord {
  std::vector<RecordRow> rows;
  std::vector<std::pair<std::string, std::string>> metadata;
};

// ---- name <-> enum helpers (CLI flags and metadata echo) -------------------

inline std::string problem_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::kLasso: return "lasso";
    case ProblemKind::kLeastSquares: return "ls";
    case ProblemKind::kNmf: return "nmf";
    case ProblemKind::kLogistic: return "logistic";
    case ProblemKind::kSvm: return "svm";
  }
  fail("config", "unknown problem kind");
}

inline ProblemKind parse_problem(const std::string& s) {
  if (s == "lasso") return ProblemKind::kLasso;
  if (s == "ls" || s == "least-squares") return ProblemKind::kLeastSquares;
  if (s == "nmf") return ProblemKind::kNmf;
  if (s == "logistic") return ProblemKind::kLogistic;
  if (s == "svm") return ProblemKind::kSvm;
  fail("config", "unknown problem '" + s + "'");
}

inline std::string rule_name(const RuleSpec& r) {
  switch (r.kind) {
    case RuleKind::kCyclic: return "cyclic";
    case RuleKind::kShuffledCyclic: return "shuffled";
    case RuleKind::kRandomUniform: return "random";
    case RuleKind::kImportance: return "importance";
    case RuleKind::kGreedy:
      switch (r.greedy) {
        case GreedyRule::kGs: return "gs";
        case GreedyRule::kGsl: return "gsl";
        case GreedyRule::kMbi: return "mbi";
        case GreedyRule::kGsS: return "gs-s";
        case GreedyRule::kGsR: return "gs-r";
        case GreedyRule::kGsQ: return "gs-q";
      }
  }
  fail("config", "unknown rule");
}

inline RuleSpec parse_rule(const std::string& s) {
  RuleSpec r;
  if (s == "cyclic") {
    r.kind = RuleKind::kCyclic;
  } else if (s == "shuffled") {
    r.kind = RuleKind::kShuffledCyclic;
  } else if (s == "random") {
    r.kind = RuleKind::kRandomUniform;
  } else if (s == "importance") {
    r.kind = RuleKind::kImportance;
  } else {
    r.kind = RuleKind::kGreedy;
    if (s == "gs") r.greedy = GreedyRule::kGs;
    else if (s == "gsl") r.greedy = GreedyRule::kGsl;
    else if (s == "mbi") r.greedy = GreedyRule::kMbi;
    else if (s == "gs-s") r.greedy = GreedyRule::kGsS;
    else if (s == "gs-r") r.greedy = GreedyRule::kGsR;
    else if (s == "gs-q") r.greedy = GreedyRule::kGsQ;
    else fail("config", "unknown rule '" + s + "'");
  }
  return r;
}

inline std::string scheme_name(SchemeKind k) {
  switch (k) {
    case SchemeKind::kExactMin: return "exact_min";
    case SchemeKind::kProximalPoint: return "proximal_point";
    case SchemeKind::kProxLinear: return "prox_linear";
    case SchemeKind::kProxLinearExtrapolated: return "prox_linear_extrapolated";
    case SchemeKind::kStochasticProxLinear: return "stochastic_prox_linear";
  }
  fail("config", "unknown scheme");
}

inline SchemeKind parse_scheme(const std::string& s) {
  if (s == "exact_min") return SchemeKind::kExactMin;
  if (s == "proximal_point") return SchemeKind::kProximalPoint;
  if (s == "prox_linear") return SchemeKind::kProxLinear;
  if (s == "prox_linear_extrapolated") return SchemeKind::kProxLinearExtrapolated;
  if (s == "stochastic_prox_linear") return SchemeKind::kStochasticProxLinear;
  fail("config", "unknown scheme '" + s + "'");
}

namespace detail {

// Everything one trial loop needs, independent of the concrete problem.
struct TrialHooks {
  std::size_t blocks = 0;
  std::function<void(std::size_t)> update;
  std::function<DenseVector()> scores;  // greedy selection only
  SelectionSense sense = SelectionSense::kMax;
  std::function<double()> objective;
  std::function<double()> grad_metric;
  std::function<double()> dist;
  std::function<std::uint64_t()> flops;
  std::function<void()> epoch_end;            // optional per-epoch hook
  DenseVector importance_lipschitz;           // per-block constants, importance rule
};

inline IndexRuleState make_rule_state(const RuleSpec& rule, const TrialHooks& hooks,
                                      std::uint64_t seed) {
  switch (rule.kind) {
    case RuleKind::kCyclic: return make_cyclic_state();
    case RuleKind::kShuffledCyclic: return make_shuffled_state(seed);
    case RuleKind::kRandomUniform: return make_random_uniform_state(hooks.blocks, seed);
    case RuleKind::kImportance:
      return make_importance_state(
          importance_distribution(hooks.importance_lipschitz, rule.importance_alpha), seed);
    case RuleKind::kGreedy: return make_greedy_state(rule.greedy);
  }
  fail("config", "unknown rule kind");
}

inline std::size_t next_index(IndexRuleState& state, const TrialHooks& hooks) {
  switch (state.kind) {
    case RuleKind::kCyclic: return next_cyclic(state, hooks.blocks);
    case RuleKind::kShuffledCyclic: return next_shuffled(state, hooks.blocks);
    case RuleKind::kRandomUniform:
    case RuleKind::kImportance: return sample_index(state);
    case RuleKind::kGreedy: return greedy_argmax(hooks.scores(), hooks.sense);
  }
  fail("config", "unknown rule kind");
}

inline ConvergenceRecord run_trial_loop(const ExperimentConfig& cfg, TrialHooks& hooks,
                                        std::uint64_t trial_seed) {
  IndexRuleState rule = make_rule_state(cfg.rule, hooks, trial_seed);
  const auto t0 = std::chrono::steady_clock::now();
  ConvergenceRecord rec;
  auto record = [&](std::size_t epoch) {
    RecordRow row;
    row.epoch = epoch;
    row.objective = hooks.objective();
    if (!std::isfinite(row.objective)) {
      fail("non-finite-objective", "epoch " + std::to_string(epoch) + " diverged");
    }
    row.grad_map_norm = hooks.grad_metric();
    row.dist_to_ref = hooks.dist();
    row.flops = static_cast<double>(hooks.flops());
    row.elapsed_ns = static_cast<double>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() -
                                                             t0)
            .count());
    rec.rows.push_back(row);
    const double watched =
        cfg.stop_metric == StopMetric::kGradMapNorm ? row.grad_map_norm : row.dist_to_ref;
    return watched <= cfg.tolerance;
  };
  if (record(0)) return rec;
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    for (std::size_t t = 0; t < hooks.blocks; ++t) {
      hooks.update(next_index(rule, hooks));
    }
    if (hooks.epoch_end) hooks.epoch_end();
    if (record(epoch)) break;
  }
  return rec;
}

// Warm-start pass used by lasso continuation: same rule and update machinery,
// no recording, stop on the gradient map alone.
inline void run_unrecorded(const ExperimentConfig& cfg, TrialHooks& hooks,
                           std::uint64_t stage_seed, double stage_tol) {
  IndexRuleState rule = make_rule_state(cfg.rule, hooks, stage_seed);
  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    for (std::size_t t = 0; t < hooks.blocks; ++t) {
      hooks.update(next_index(rule, hooks));
    }
    if (hooks.grad_metric() <= stage_tol) break;
  }
}

// Fixed-step resolution for coordinate gradient steps.
inline double resolve_step(const StepPolicy& p, double block_lipschitz) {
  switch (p.kind) {
    case StepPolicy::Kind::kFixed: return p.alpha;
    case StepPolicy::Kind::kBlockLipschitzReciprocal:
      if (block_lipschitz <= 0.0) fail("invalid-lipschitz", "nonpositive block constant");
      return 1.0 / block_lipschitz;
    case StepPolicy::Kind::kArmijo:
      fail("invalid-step", "armijo policy has no fixed step equivalent");
  }
  fail("invalid-step", "unknown step policy");
}

// Shared state for the stochastic coordinate scheme over problems exposing
// sample_gradient (lasso, logistic). One sample draw per update; SAG/SAGA
// maintain a slot table, SVRG refreshes a full anchor every svrg_period
// updates (0 = one sample count's worth).
template <typename Problem>
struct StochasticDriver {
  Problem* p;
  SchemeConfig scheme;
  Rng rng;
  GradientTable table;
  DenseVector anchor_point;
  std::size_t updates = 0;

  StochasticDriver(Problem& prob, const SchemeConfig& sc, std::uint64_t seed)
      : p(&prob), scheme(sc), rng(seed), table(prob.sample_count(), prob.dimension()) {
    if (sc.step.kind == StepPolicy::Kind::kArmijo) {
      fail("invalid-step", "stochastic scheme takes a fixed or Lipschitz-reciprocal step");
    }
    if (sc.vr_mode != VrMode::kNone && sc.batch_size != 1) {
      fail("unsupported-scheme", "variance reduction is defined for single-sample draws");
    }
  }

  std::size_t period() const {
    return scheme.svrg_period == 0 ? p->sample_count() : scheme.svrg_period;
  }

  void refresh_anchor() {
    std::vector<DenseVector> grads(p->sample_count());
    for (std::size_t i = 0; i < grads.size(); ++i) {
      grads[i] = p->sample_gradient(i, p->point());
    }
    anchor_point = p->point();
    table.set_anchor(anchor_point, grads);
  }

  void step(std::size_t j) {
    DenseVector est;
    double alpha = resolve_step(scheme.step, p->block_lipschitz(j));
    switch (scheme.vr_mode) {
      case VrMode::kNone: {
        std::vector<std::size_t> batch(scheme.batch_size);
        for (std::size_t& b : batch) b = rng.uniform_below(p->sample_count());
        est = minibatch_gradient(*p, p->point(), batch);
        alpha = sgd_decayed_step(alpha, updates, p->sample_count());
        break;
      }
      case VrMode::kSag: {
        const std::size_t i = rng.uniform_below(p->sample_count());
        est = table.sag_estimate(i, p->sample_gradient(i, p->point()));
        break;
      }
      case VrMode::kSaga: {
        const std::size_t i = rng.uniform_below(p->sample_count());
        est = table.saga_estimate(i, p->sample_gradient(i, p->point()));
        break;
      }
      case VrMode::kSvrg: {
        if (updates % period() == 0 || !table.has_anchor()) refresh_anchor();
        const std::size_t i = rng.uniform_below(p->sample_count());
        est = table.svrg_estimate(i, p->sample_gradient(i, p->point()),
                                  p->sample_gradient(i, anchor_point));
        break;
      }
    }
    DenseVector v = p->block_value(j);
    v[0] -= alpha * est[j];
    p->set_block(j, prox_apply(p->block_regularizer(j), v, alpha));
    ++updates;
  }
};

// Per-block memory of the previous block values, for extrapolated steps.
template <typename Problem>
struct ExtrapolationMemory {
  std::vector<DenseVector> previous;

  explicit ExtrapolationMemory(Problem& p) {
    previous.resize(p.block_count());
    for (std::size_t i = 0; i < previous.size(); ++i) previous[i] = p.block_value(i);
  }

  void step(Problem& p, std::size_t i, double alpha, double omega) {
    DenseVector cur = p.block_value(i);
    prox_linear_extrapolated_step(p, i, alpha, omega, previous[i]);
    previous[i] = std::move(cur);
  }
};

}  // namespace detail

inline void validate_experiment(const ExperimentConfig& cfg) {
  if (cfg.epochs == 0) fail("invalid-count", "epochs must be at least 1");
  if (cfg.trials == 0) fail("invalid-count", "trials must be at least 1");
  if (!(cfg.tolerance > 0.0)) fail("config", "tolerance must be positive");
  validate_scheme(cfg.scheme);
}

// ---- per-problem trial assembly --------------------------------------------

namespace detail {

inline ConvergenceRecord lasso_trial(const ExperimentConfig& cfg, const LassoInstance& inst,
                                     const DenseVector& ref_point, std::uint64_t trial_seed) {
  LassoProblem p(inst.a, inst.b, inst.lambda);
  const SchemeConfig& sc = cfg.scheme;

  TrialHooks hooks;
  hooks.blocks = p.block_count();
  hooks.sense = LassoProblem::greedy_sense(cfg.rule.greedy);
  hooks.objective = [&p] { return p.objective(); };
  hooks.grad_metric = [&p] { return p.gradient_map_norm(); };
  hooks.dist = [&p, &ref_point] { return norm2(vec_sub(p.point(), ref_point)); };
  hooks.flops = [&p] { return p.counter().total(); };
  hooks.scores = [&p, &cfg] { return p.gs_scores(cfg.rule.greedy); };
  for (std::size_t j = 0; j < p.block_count(); ++j) {
    hooks.importance_lipschitz.push_back(p.column_lipschitz(j));
  }

  std::shared_ptr<StochasticDriver<LassoProblem>> stoch;
  std::shared_ptr<ExtrapolationMemory<LassoProblem>> memory;
  switch (sc.scheme) {
    case SchemeKind::kExactMin:
      hooks.update = [&p](std::size_t j) { p.coordinate_step(j); };
      break;
    case SchemeKind::kProximalPoint: {
      if (sc.step.kind != StepPolicy::Kind::kFixed) {
        fail("invalid-step", "proximal point needs a fixed step");
      }
      const double weight = 1.0 / sc.step.alpha;
      hooks.update = [&p, weight](std::size_t j) { coordinate_argmin_step(p, j, weight); };
      break;
    }
    case SchemeKind::kProxLinear:
      if (sc.step.kind == StepPolicy::Kind::kBlockLipschitzReciprocal) {
        hooks.update = [&p](std::size_t j) { p.coordinate_step(j); };
      } else {
        const double alpha = resolve_step(sc.step, 0.0);
        hooks.update = [&p, alpha](std::size_t j) { prox_linear_step(p, j, alpha); };
      }
      break;
    case SchemeKind::kProxLinearExtrapolated: {
      memory = std::make_shared<ExtrapolationMemory<LassoProblem>>(p);
      hooks.update = [&p, memory, &sc](std::size_t j) {
        const double alpha = resolve_step(sc.step, p.block_lipschitz(j));
        memory->step(p, j, alpha, sc.omega);
      };
      break;
    }
    case SchemeKind::kStochasticProxLinear:
      stoch = std::make_shared<StochasticDriver<LassoProblem>>(
          p, sc, Rng::derive(trial_seed, 0x517cc1b727220a95ULL));
      hooks.update = [stoch](std::size_t j) { stoch->step(j); };
      break;
  }

  // Warm-start ladder: run the cheaper small-lambda stages unrecorded, then
  // record the target-lambda stage as usual.
  if (cfg.problem.continuation_eta > 1.0) {
    const double target = inst.lambda;
    double lambda0 = target;
    while (lambda0 / cfg.problem.continuation_eta >= 1.0) {
      lambda0 /= cfg.problem.continuation_eta;
    }
    const DenseVector ladder =
        continuation_schedule(lambda0, cfg.problem.continuation_eta, target);
    for (std::size_t s = 0; s + 1 < ladder.size(); ++s) {
      p.set_lambda(ladder[s]);
      run_unrecorded(cfg, hooks, Rng::derive(trial_seed, 0xa076bca9ULL + s),
                     std::max(cfg.tolerance, 1e-8));
    }
    p.set_lambda(target);
  }

  return run_trial_loop(cfg, hooks, trial_seed);
}

inline ConvergenceRecord least_squares_trial(const ExperimentConfig& cfg,
                                             const DenseMatrix& a, const DenseVector& b,
                                             const DenseVector& ref_point,
                                             std::uint64_t trial_seed) {
  LeastSquaresProblem p(a, b, make_block_partition(a.cols(), cfg.problem.blocks));
  const SchemeConfig& sc = cfg.scheme;

  TrialHooks hooks;
  hooks.blocks = p.block_count();
  hooks.sense = SelectionSense::kMax;
  hooks.objective = [&p] { return p.objective(); };
  hooks.grad_metric = [&p] { return p.gradient_map_norm(); };
  hooks.dist = [&p, &ref_point] { return norm2(vec_sub(p.point(), ref_point)); };
  hooks.flops = [&p] { return p.counter().total(); };
  hooks.importance_lipschitz = p.block_lipschitz_all();
  hooks.scores = [&p, &cfg, &hooks]() -> DenseVector {
    if (cfg.rule.greedy == GreedyRule::kGs) return p.gs_block_scores();
    if (cfg.rule.greedy == GreedyRule::kGsl) {
      return gsl_scores(p.gs_block_scores(), hooks.importance_lipschitz);
    }
    fail("unsupported-rule", "least squares supports gs and gsl greedy rules");
  };

  std::shared_ptr<ExtrapolationMemory<LeastSquaresProblem>> memory;
  switch (sc.scheme) {
    case SchemeKind::kProxLinear:
      hooks.update = [&p, &sc](std::size_t i) {
        p.coordinate_step(i, resolve_step(sc.step, p.block_lipschitz(i)));
      };
      break;
    case SchemeKind::kProxLinearExtrapolated: {
      memory = std::make_shared<ExtrapolationMemory<LeastSquaresProblem>>(p);
      hooks.update = [&p, memory, &sc](std::size_t i) {
        memory->step(p, i, resolve_step(sc.step, p.block_lipschitz(i)), sc.omega);
      };
      break;
    }
    default:
      fail("unsupported-scheme", "least squares runs prox-linear style updates");
  }

  return run_trial_loop(cfg, hooks, trial_seed);
}

inline ConvergenceRecord nmf_trial(const ExperimentConfig& cfg, const NmfInstance& inst,
                                   std::uint64_t trial_seed) {
  NmfProblem p(inst.data, inst.x0, inst.y0);
  if (cfg.scheme.scheme != SchemeKind::kProxLinear ||
      cfg.scheme.step.kind != StepPolicy::Kind::kBlockLipschitzReciprocal) {
    fail("unsupported-scheme",
         "factorization runs projected gradient columns with reciprocal-Lipschitz steps");
  }

  TrialHooks hooks;
  hooks.blocks = p.block_count();
  hooks.sense = NmfProblem::greedy_sense(cfg.rule.greedy);
  hooks.objective = [&p] { return p.objective(); };
  hooks.grad_metric = [&p] { return p.projected_gradient_norm(); };
  hooks.dist = [&p] { return p.relative_error(); };
  hooks.flops = [&p] { return p.counter().total(); };
  hooks.scores = [&p, &cfg] { return p.gs_scores(cfg.rule.greedy); };
  hooks.update = [&p](std::size_t t) { p.column_step(t); };
  hooks.epoch_end = [&p] { p.normalize(); };
  // block constants drift as the opposite factor moves; the starting values
  // still give importance sampling a sensible stationary distribution
  for (std::size_t t = 0; t < p.block_count(); ++t) {
    const bool x_side = t < p.rank();
    const std::size_t j = x_side ? t : t - p.rank();
    const DenseMatrix& opp = x_side ? p.right() : p.left();
    double nsq = 0.0;
    for (std::size_t i = 0; i < opp.rows(); ++i) nsq += opp(i, j) * opp(i, j);
    hooks.importance_lipschitz.push_back(std::max(nsq, 1e-12));
  }

  return run_trial_loop(cfg, hooks, trial_seed);
}

inline ConvergenceRecord logistic_trial(const ExperimentConfig& cfg,
                                        const LogisticInstance& inst,
                                        const DenseVector& ref_point,
                                        std::uint64_t trial_seed) {
  LogisticProblem p(inst.x, inst.y, inst.c);
  const SchemeConfig& sc = cfg.scheme;

  TrialHooks hooks;
  hooks.blocks = p.block_count();
  hooks.sense = LogisticProblem::greedy_sense(cfg.rule.greedy);
  hooks.objective = [&p] { return p.objective(); };
  hooks.grad_metric = [&p] { return p.gradient_map_norm(); };
  hooks.dist = [&p, &ref_point] { return norm2(vec_sub(p.point(), ref_point)); };
  hooks.flops = [&p] { return p.counter().total(); };
  hooks.scores = [&p, &cfg] { return p.gs_scores(cfg.rule.greedy); };
  for (std::size_t j = 0; j < p.block_count(); ++j) {
    hooks.importance_lipschitz.push_back(p.block_lipschitz(j));
  }

  std::shared_ptr<StochasticDriver<LogisticProblem>> stoch;
  std::shared_ptr<ExtrapolationMemory<LogisticProblem>> memory;
  switch (sc.scheme) {
    case SchemeKind::kProxLinear:
      if (sc.step.kind == StepPolicy::Kind::kArmijo) {
        hooks.update = [&p](std::size_t j) { p.newton_step(j); };
      } else {
        hooks.update = [&p, &sc](std::size_t j) {
          p.prox_gradient_coordinate_step(j, resolve_step(sc.step, p.block_lipschitz(j)));
        };
      }
      break;
    case SchemeKind::kProxLinearExtrapolated: {
      memory = std::make_shared<ExtrapolationMemory<LogisticProblem>>(p);
      hooks.update = [&p, memory, &sc](std::size_t j) {
        memory->step(p, j, resolve_step(sc.step, p.block_lipschitz(j)), sc.omega);
      };
      break;
    }
    case SchemeKind::kStochasticProxLinear:
      stoch = std::make_shared<StochasticDriver<LogisticProblem>>(
          p, sc, Rng::derive(trial_seed, 0x517cc1b727220a95ULL));
      hooks.update = [stoch](std::size_t j) { stoch->step(j); };
      break;
    default:
      fail("unsupported-scheme", "logistic loss has no closed-form coordinate minimizer");
  }

  return run_trial_loop(cfg, hooks, trial_seed);
}

inline ConvergenceRecord svm_trial(const ExperimentConfig& cfg, const SvmInstance& inst,
                                   const DenseVector& ref_point, std::uint64_t trial_seed) {
  SvmDualProblem p(inst.q, inst.c);
  const SchemeConfig& sc = cfg.scheme;

  TrialHooks hooks;
  hooks.blocks = p.block_count();
  hooks.sense = SvmDualProblem::greedy_sense(cfg.rule.greedy);
  hooks.objective = [&p] { return p.objective(); };
  hooks.grad_metric = [&p] { return p.projected_gradient_norm(); };
  hooks.dist = [&p, &ref_point] { return norm2(vec_sub(p.point(), ref_point)); };
  hooks.flops = [&p] { return p.counter().total(); };
  hooks.scores = [&p, &cfg] { return p.gs_scores(cfg.rule.greedy); };
  for (std::size_t i = 0; i < p.block_count(); ++i) {
    hooks.importance_lipschitz.push_back(p.block_lipschitz(i));
  }

  std::shared_ptr<ExtrapolationMemory<SvmDualProblem>> memory;
  switch (sc.scheme) {
    case SchemeKind::kExactMin:
      hooks.update = [&p](std::size_t i) { p.coordinate_step(i); };
      break;
    case SchemeKind::kProxLinear:
      if (sc.step.kind == StepPolicy::Kind::kBlockLipschitzReciprocal) {
        hooks.update = [&p](std::size_t i) { p.coordinate_step(i); };
      } else {
        const double alpha = resolve_step(sc.step, 0.0);
        hooks.update = [&p, alpha](std::size_t i) { prox_linear_step(p, i, alpha); };
      }
      break;
    case SchemeKind::kProxLinearExtrapolated: {
      memory = std::make_shared<ExtrapolationMemory<SvmDualProblem>>(p);
      hooks.update = [&p, memory, &sc](std::size_t i) {
        memory->step(p, i, resolve_step(sc.step, p.block_lipschitz(i)), sc.omega);
      };
      break;
    }
    default:
      fail("unsupported-scheme", "dual box problem runs exact or prox-linear updates");
  }

  return run_trial_loop(cfg, hooks, trial_seed);
}

}  // namespace detail

// Runs config.trials independent trials on one shared synthetic instance and
// returns one record per trial. The reference point is solved once up front.
inline std::vector<ConvergenceRecord> run_experiment(const ExperimentConfig& cfg) {
  validate_experiment(cfg);
  const ProblemParams& pp = cfg.problem;

  std::vector<std::pair<std::string, std::string>> meta;
  meta.emplace_back("problem", problem_name(pp.kind));
  meta.emplace_back("rule", rule_name(cfg.rule));
  meta.emplace_back("scheme", scheme_name(cfg.scheme.scheme));
  meta.emplace_back("epochs", std::to_string(cfg.epochs));
  meta.emplace_back("seed", std::to_string(cfg.seed));
  meta.emplace_back("trials", std::to_string(cfg.trials));
  meta.emplace_back("tolerance", format_double(cfg.tolerance));

  std::vector<ConvergenceRecord> out;
  auto run_all = [&](auto&& one_trial) {
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      ConvergenceRecord rec = one_trial(Rng::derive(cfg.seed, t));
      rec.metadata = meta;
      out.push_back(std::move(rec));
    }
  };

  switch (pp.kind) {
    case ProblemKind::kLasso: {
      const LassoInstance inst = gen_lasso(pp.m, pp.n, pp.k, pp.sigma, pp.lambda, cfg.seed);
      const ReferenceResult ref = reference_solve(inst);
      if (!ref.converged) fail("oracle-failure", "reference solve did not converge");
      meta.emplace_back("m", std::to_string(pp.m));
      meta.emplace_back("n", std::to_string(pp.n));
      meta.emplace_back("lambda", format_double(pp.lambda));
      meta.emplace_back("reference_objective", format_double(ref.objective));
      meta.emplace_back("reference_iterations", std::to_string(ref.iterations));
      run_all([&](std::uint64_t s) { return detail::lasso_trial(cfg, inst, ref.point, s); });
      break;
    }
    case ProblemKind::kLeastSquares: {
      // square-ish overdetermined design keeps the Gram system well posed
      Rng rng(cfg.seed);
      DenseMatrix a(pp.m, pp.n);
      for (double& v : a.data()) v = rng.normal();
      DenseVector b(pp.m);
      for (double& v : b) v = rng.normal();
      const ReferenceResult ref = reference_solve(a, b);
      if (!ref.converged) fail("oracle-failure", "reference solve did not converge");
      meta.emplace_back("m", std::to_string(pp.m));
      meta.emplace_back("n", std::to_string(pp.n));
      meta.emplace_back("blocks", std::to_string(pp.blocks));
      meta.emplace_back("reference_objective", format_double(ref.objective));
      run_all([&](std::uint64_t s) {
        return detail::least_squares_trial(cfg, a, b, ref.point, s);
      });
      break;
    }
    case ProblemKind::kNmf: {
      const NmfInstance inst = gen_nmf(pp.m, pp.n, pp.rank, cfg.seed);
      meta.emplace_back("m", std::to_string(pp.m));
      meta.emplace_back("n", std::to_string(pp.n));
      meta.emplace_back("rank", std::to_string(pp.rank));
      run_all([&](std::uint64_t s) { return detail::nmf_trial(cfg, inst, s); });
      break;
    }
    case ProblemKind::kLogistic: {
      const LogisticInstance inst = gen_logistic(pp.m, pp.separation, pp.c, cfg.seed);
      const ReferenceResult ref = reference_solve(inst);
      if (!ref.converged) fail("oracle-failure", "reference solve did not converge");
      meta.emplace_back("m", std::to_string(pp.m));
      meta.emplace_back("C", format_double(pp.c));
      meta.emplace_back("reference_objective", format_double(ref.objective));
      run_all([&](std::uint64_t s) { return detail::logistic_trial(cfg, inst, ref.point, s); });
      break;
    }
    case ProblemKind::kSvm: {
      const SvmInstance inst = gen_svm(pp.m, pp.n, pp.separation, pp.c, cfg.seed);
      const ReferenceResult ref = reference_solve(inst);
      if (!ref.converged) fail("oracle-failure", "reference solve did not converge");
      meta.emplace_back("m", std::to_string(pp.m));
      meta.emplace_back("n", std::to_string(pp.n));
      meta.emplace_back("C", format_double(pp.c));
      meta.emplace_back("reference_objective", format_double(ref.objective));
      run_all([&](std::uint64_t s) { return detail::svm_trial(cfg, inst, ref.point, s); });
      break;
    }
  }
  return out;
}

// ---- aggregation and export -------------------------------------------------

inline void validate_record(const ConvergenceRecord& rec) {
  if (rec.rows.empty()) fail("shape", "empty convergence record");
  for (std::size_t i = 0; i < rec.rows.size(); ++i) {
    if (!std::isfinite(rec.rows[i].objective)) {
      fail("non-finite-objective", "row " + std::to_string(i));
    }
    if (i > 0 && rec.rows[i].epoch <= rec.rows[i - 1].epoch) {
      fail("shape", "epochs must increase strictly");
    }
  }
}

// Per-epoch arithmetic mean across trials, truncated to the shortest trial
// (early-stopped trials end sooner).
inline ConvergenceRecord aggregate_records(const std::vector<ConvergenceRecord>& records) {
  if (records.empty()) fail("shape", "nothing to aggregate");
  std::size_t rows = records.front().rows.size();
  for (const ConvergenceRecord& r : records) {
    validate_record(r);
    rows = std::min(rows, r.rows.size());
  }
  ConvergenceRecord agg;
  agg.metadata = records.front().metadata;
  const double inv = 1.0 / static_cast<double>(records.size());
  for (std::size_t i = 0; i < rows; ++i) {
    RecordRow row;
    row.epoch = records.front().rows[i].epoch;
    for (const ConvergenceRecord& r : records) {
      row.objective += inv * r.rows[i].objective;
      row.grad_map_norm += inv * r.rows[i].grad_map_norm;
      row.dist_to_ref += inv * r.rows[i].dist_to_ref;
      row.flops += inv * r.rows[i].flops;
      row.elapsed_ns += inv * r.rows[i].elapsed_ns;
    }
    agg.rows.push_back(row);
  }
  return agg;
}

// One aggregate CSV: '#'-prefixed metadata, a header line, then one row per
// epoch with the per-epoch mean across trials.
inline void export_records(const std::vector<ConvergenceRecord>& records,
                           const std::string& path) {
  const ConvergenceRecord agg = aggregate_records(records);
  std::ofstream out(path);
  if (!out) fail("file", "cannot open for writing: " + path);
  for (const auto& [key, value] : agg.metadata) {
    out << "# " << key << "=" << value << "\n";
  }
  out << "epoch,objective,grad_map_norm,dist_to_ref,flops,elapsed_ns\n";
  for (const RecordRow& row : agg.rows) {
    out << row.epoch << "," << format_double(row.objective) << ","
        << format_double(row.grad_map_norm) << "," << format_double(row.dist_to_ref) << ","
        << format_double(row.flops) << "," << format_double(row.elapsed_ns) << "\n";
  }
  if (!out) fail("file", "write failed: " + path);
}

}  // namespace cdopt
