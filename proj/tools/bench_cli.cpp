// Command-line front end: synthetic instance generation, single solves,
// rule-comparison sweeps, and the composed-prox oracle suite.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cdopt/cdopt.hpp"

namespace {

struct Options {
  std::string problem = "lasso";
  std::string rule = "cyclic";
  std::string scheme = "prox_linear";
  std::string step = "auto";  // auto | lipschitz | fixed | armijo
  std::string vr = "none";
  std::string stop = "gradmap";  // gradmap | dist
  std::string out;
  std::size_t epochs = 200;
  std::uint64_t seed = 1;
  std::size_t trials = 1;
  double tol = 1e-6;
  double alpha = 0.0;
  double omega = 0.0;
  std::size_t batch = 1;
  std::size_t svrg_period = 0;
  double continuation = 0.0;
  // instance shape
  std::size_t m = 0;  // 0 = per-problem default
  std::size_t n = 0;
  std::size_t k = 10;
  double sigma = 1e-4;
  double lambda = 1e3;
  double c = 1.0;
  double separation = 2.0;
  std::size_t rank = 5;
  std::size_t blocks = 10;
};

void add_common_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--problem", o.problem, "lasso | ls | nmf | logistic | svm");
  cmd->add_option("--seed", o.seed, "base seed; trial t uses seed XOR t");
  cmd->add_option("--out", o.out, "output path");
  cmd->add_option("--m", o.m, "rows / sample count");
  cmd->add_option("--n", o.n, "columns / feature count");
  cmd->add_option("--k", o.k, "planted support size (lasso)");
  cmd->add_option("--sigma", o.sigma, "noise level (lasso)");
  cmd->add_option("--lambda", o.lambda, "data-fit weight (lasso)");
  cmd->add_option("--C", o.c, "loss weight (logistic) / box cap (svm)");
  cmd->add_option("--separation", o.separation, "class separation (logistic, svm)");
  cmd->add_option("--rank", o.rank, "factor rank (nmf)");
  cmd->add_option("--blocks", o.blocks, "block count (ls)");
}

void add_solver_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--scheme", o.scheme,
                  "exact_min | proximal_point | prox_linear | prox_linear_extrapolated | "
                  "stochastic_prox_linear");
  cmd->add_option("--step", o.step, "auto | lipschitz | fixed | armijo");
  cmd->add_option("--alpha", o.alpha, "fixed step size");
  cmd->add_option("--omega", o.omega, "extrapolation weight");
  cmd->add_option("--vr", o.vr, "none | sag | saga | svrg");
  cmd->add_option("--batch", o.batch, "minibatch size (stochastic scheme)");
  cmd->add_option("--svrg-period", o.svrg_period, "anchor refresh cadence in updates");
  cmd->add_option("--epochs", o.epochs, "epoch budget (1 epoch = one pass of updates)");
  cmd->add_option("--trials", o.trials, "independent trials, averaged on export");
  cmd->add_option("--tol", o.tol, "early-stop tolerance");
  cmd->add_option("--stop", o.stop, "gradmap | dist: column the tolerance watches");
  cmd->add_option("--continuation", o.continuation,
                  "warm-start ladder factor eta > 1 (lasso)");
}

// Flat key=value defaults; command-line flags win. Lines starting with '#'
// are comments.
std::vector<std::string> apply_config_file(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
  }
  if (config_path.empty()) return args;
  std::ifstream in(config_path);
  if (!in) cdopt::fail("config", "cannot open config file: " + config_path);
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) cdopt::fail("config", "expected key=value, got: " + line);
    auto trim = [](std::string s) {
      const std::size_t a = s.find_first_not_of(" \t");
      const std::size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) cdopt::fail("config", "empty key in line: " + line);
    const std::string flag = "--" + key;
    if (std::find(args.begin(), args.end(), flag) == args.end()) {
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return args;
}

cdopt::ExperimentConfig build_config(const Options& o) {
  cdopt::ExperimentConfig cfg;
  cfg.problem.kind = cdopt::parse_problem(o.problem);
  cfg.problem.k = o.k;
  cfg.problem.sigma = o.sigma;
  cfg.problem.lambda = o.lambda;
  cfg.problem.continuation_eta = o.continuation;
  cfg.problem.rank = o.rank;
  cfg.problem.separation = o.separation;
  cfg.problem.c = o.c;
  cfg.problem.blocks = o.blocks;
  switch (cfg.problem.kind) {
    case cdopt::ProblemKind::kLasso:
      cfg.problem.m = o.m ? o.m : 50;
      cfg.problem.n = o.n ? o.n : 100;
      break;
    case cdopt::ProblemKind::kLeastSquares:
      cfg.problem.n = o.n ? o.n : 200;
      cfg.problem.m = o.m ? o.m : 2 * cfg.problem.n;
      break;
    case cdopt::ProblemKind::kNmf:
      cfg.problem.m = o.m ? o.m : 200;
      cfg.problem.n = o.n ? o.n : 100;
      break;
    case cdopt::ProblemKind::kLogistic:
      cfg.problem.m = o.m ? o.m : 100;
      cfg.problem.n = 2;
      break;
    case cdopt::ProblemKind::kSvm:
      cfg.problem.m = o.m ? o.m : 500;
      cfg.problem.n = o.n ? o.n : 50;
      break;
  }
  cfg.rule = cdopt::parse_rule(o.rule);
  cfg.scheme.scheme = cdopt::parse_scheme(o.scheme);

  std::string step = o.step;
  if (step == "auto") {
    const bool newton_style = cfg.problem.kind == cdopt::ProblemKind::kLogistic &&
                              cfg.scheme.scheme == cdopt::SchemeKind::kProxLinear;
    step = newton_style ? "armijo" : "lipschitz";
    if (cfg.scheme.scheme == cdopt::SchemeKind::kProximalPoint ||
        cfg.scheme.scheme == cdopt::SchemeKind::kStochasticProxLinear) {
      step = "fixed";
    }
  }
  if (step == "fixed") {
    cfg.scheme.step.kind = cdopt::StepPolicy::Kind::kFixed;
    cfg.scheme.step.alpha = o.alpha > 0.0 ? o.alpha : 1e-3;
  } else if (step == "armijo") {
    cfg.scheme.step.kind = cdopt::StepPolicy::Kind::kArmijo;
  } else if (step == "lipschitz") {
    cfg.scheme.step.kind = cdopt::StepPolicy::Kind::kBlockLipschitzReciprocal;
  } else {
    cdopt::fail("config", "unknown step policy '" + step + "'");
  }
  cfg.scheme.omega = o.omega;
  cfg.scheme.batch_size = o.batch;
  cfg.scheme.svrg_period = o.svrg_period;
  if (o.vr == "none") cfg.scheme.vr_mode = cdopt::VrMode::kNone;
  else if (o.vr == "sag") cfg.scheme.vr_mode = cdopt::VrMode::kSag;
  else if (o.vr == "saga") cfg.scheme.vr_mode = cdopt::VrMode::kSaga;
  else if (o.vr == "svrg") cfg.scheme.vr_mode = cdopt::VrMode::kSvrg;
  else cdopt::fail("config", "unknown vr mode '" + o.vr + "'");

  cfg.epochs = o.epochs;
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.tolerance = o.tol;
  cfg.stop_metric =
      o.stop == "dist" ? cdopt::StopMetric::kDistToRef : cdopt::StopMetric::kGradMapNorm;
  cfg.output_path = o.out;
  return cfg;
}

int run_gen(const Options& o) {
  const cdopt::ExperimentConfig cfg = build_config(o);
  const auto& pp = cfg.problem;
  const std::string prefix = o.out.empty() ? "instance" : o.out;
  switch (pp.kind) {
    case cdopt::ProblemKind::kLasso: {
      const auto inst = cdopt::gen_lasso(pp.m, pp.n, pp.k, pp.sigma, pp.lambda, o.seed);
      cdopt::write_matrix_csv(inst.a, prefix + "_A.csv");
      cdopt::write_vector_csv(inst.b, prefix + "_b.csv");
      cdopt::write_vector_csv(inst.planted, prefix + "_planted.csv");
      break;
    }
    case cdopt::ProblemKind::kLeastSquares: {
      cdopt::Rng rng(o.seed);
      cdopt::DenseMatrix a(pp.m, pp.n);
      for (double& v : a.data()) v = rng.normal();
      cdopt::DenseVector b(pp.m);
      for (double& v : b) v = rng.normal();
      cdopt::write_matrix_csv(a, prefix + "_A.csv");
      cdopt::write_vector_csv(b, prefix + "_b.csv");
      break;
    }
    case cdopt::ProblemKind::kNmf: {
      const auto inst = cdopt::gen_nmf(pp.m, pp.n, pp.rank, o.seed);
      cdopt::write_matrix_csv(inst.data, prefix + "_M.csv");
      cdopt::write_matrix_csv(inst.x0, prefix + "_X0.csv");
      cdopt::write_matrix_csv(inst.y0, prefix + "_Y0.csv");
      break;
    }
    case cdopt::ProblemKind::kLogistic: {
      const auto inst = cdopt::gen_logistic(pp.m, pp.separation, pp.c, o.seed);
      cdopt::write_matrix_csv(inst.x, prefix + "_X.csv");
      cdopt::write_vector_csv(inst.y, prefix + "_y.csv");
      break;
    }
    case cdopt::ProblemKind::kSvm: {
      const auto inst = cdopt::gen_svm(pp.m, pp.n, pp.separation, pp.c, o.seed);
      cdopt::write_matrix_csv(inst.q, prefix + "_Q.csv");
      cdopt::write_matrix_csv(inst.x, prefix + "_X.csv");
      cdopt::write_vector_csv(inst.y, prefix + "_y.csv");
      break;
    }
  }
  std::cout << "wrote instance files with prefix " << prefix << "\n";
  return 0;
}

void print_summary(const std::string& label,
                   const std::vector<cdopt::ConvergenceRecord>& records) {
  const cdopt::ConvergenceRecord agg = cdopt::aggregate_records(records);
  const cdopt::RecordRow& last = agg.rows.back();
  std::cout << label << ": epochs=" << last.epoch << " objective=" << last.objective
            << " grad_map=" << last.grad_map_norm << " dist=" << last.dist_to_ref
            << " flops=" << static_cast<std::uint64_t>(last.flops) << "\n";
}

int run_solve(const Options& o) {
  const cdopt::ExperimentConfig cfg = build_config(o);
  const auto records = cdopt::run_experiment(cfg);
  if (!cfg.output_path.empty()) {
    cdopt::export_records(records, cfg.output_path);
    std::cout << "wrote " << cfg.output_path << "\n";
  }
  print_summary(o.problem + "/" + o.rule, records);
  return 0;
}

int run_bench(const Options& o, const std::string& rules_csv) {
  std::vector<std::string> rules;
  std::stringstream ss(rules_csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) rules.push_back(item);
  }
  if (rules.empty()) cdopt::fail("config", "no rules given");
  for (const std::string& rule : rules) {
    Options per = o;
    per.rule = rule;
    cdopt::ExperimentConfig cfg = build_config(per);
    const auto records = cdopt::run_experiment(cfg);
    if (!o.out.empty()) {
      const std::string path = o.out + "_" + rule + ".csv";
      cdopt::export_records(records, path);
    }
    print_summary(o.problem + "/" + rule, records);
  }
  return 0;
}

// Composed-prox suite: every eligible pair shape against the grid oracle on
// random one- and two-dimensional inputs.
int run_prox_check(std::size_t points, std::uint64_t seed) {
  using cdopt::SummativePair;
  struct Case {
    std::string name;
    SummativePair pair;
    std::size_t dim;
  };
  std::vector<Case> cases = {
      {"l1+group_l2", {cdopt::make_l1_reg(0.7), cdopt::make_group_l2_reg(0.9),
                       cdopt::PairEligibility::kHomogeneousPlusL2}, 2},
      {"nonneg+group_l2", {cdopt::make_nonneg_reg(), cdopt::make_group_l2_reg(1.1),
                           cdopt::PairEligibility::kHomogeneousPlusL2}, 2},
      {"origin_box+group_l2", {cdopt::make_box_reg(0.0, 0.0), cdopt::make_group_l2_reg(0.5),
                               cdopt::PairEligibility::kHomogeneousPlusL2}, 2},
      {"tv+l1", {cdopt::make_tv1d_reg(0.6), cdopt::make_l1_reg(0.8),
                 cdopt::PairEligibility::kTvPlusMonotone}, 2},
      {"tv+box", {cdopt::make_tv1d_reg(0.6), cdopt::make_box_reg(-1.0, 1.0),
                  cdopt::PairEligibility::kTvPlusMonotone}, 2},
      {"tv+nonneg", {cdopt::make_tv1d_reg(0.4), cdopt::make_nonneg_reg(),
                     cdopt::PairEligibility::kTvPlusMonotone}, 2},
      {"tv+group_l2", {cdopt::make_tv1d_reg(0.5), cdopt::make_group_l2_reg(0.7),
                       cdopt::PairEligibility::kTvPlusMonotone}, 2},
      {"abs+quadratic", {cdopt::make_l1_reg(1.0), cdopt::make_elastic_net_reg(0.0, 0.8),
                         cdopt::PairEligibility::kScalarAbsPlusSmooth}, 1},
  };
  cdopt::Rng rng(seed);
  bool all_ok = true;
  for (const Case& c : cases) {
    double worst = 0.0;
    for (std::size_t t = 0; t < points; ++t) {
      cdopt::DenseVector y(c.dim);
      for (double& v : y) v = 6.0 * (rng.uniform01() - 0.5);
      const double scale = 0.25 + 2.0 * rng.uniform01();
      const cdopt::DenseVector fast = cdopt::prox_summative(c.pair, y, scale);
      const auto value = [&](const cdopt::DenseVector& z) { return cdopt::pair_value(c.pair, z); };
      const cdopt::DenseVector slow = cdopt::brute_prox_oracle(value, y, scale);
      worst = std::max(worst, cdopt::linf_norm(cdopt::vec_sub(fast, slow)));
    }
    const bool ok = worst <= 1e-6;
    all_ok = all_ok && ok;
    std::printf("%-22s max|composed - grid| = %.3e  %s\n", c.name.c_str(), worst,
                ok ? "PASS" : "FAIL");
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coordinate-descent bench"};
  app.require_subcommand(1);

  Options o;
  std::string rules_csv = "cyclic,shuffled,random,gs-s,gs-r,gs-q";
  std::string config_path;
  app.add_option("--config", config_path, "flat key=value defaults; flags override");

  CLI::App* gen = app.add_subcommand("gen", "write a synthetic instance to CSV files");
  add_common_options(gen, o);
  gen->add_option("--config", config_path, "flat key=value defaults; flags override");

  CLI::App* solve = app.add_subcommand("solve", "run one configuration");
  add_common_options(solve, o);
  add_solver_options(solve, o);
  solve->add_option("--rule", o.rule,
                    "cyclic | shuffled | random | importance | gs | gsl | mbi | gs-s | gs-r | gs-q");
  solve->add_option("--config", config_path, "flat key=value defaults; flags override");

  CLI::App* bench = app.add_subcommand("bench", "compare index rules on one problem");
  add_common_options(bench, o);
  add_solver_options(bench, o);
  bench->add_option("--rules", rules_csv, "comma-separated rule list");
  bench->add_option("--config", config_path, "flat key=value defaults; flags override");

  CLI::App* prox = app.add_subcommand("prox-check", "composed prox vs grid oracle");
  std::size_t prox_points = 25;
  prox->add_option("--trials", prox_points, "points per pair");
  prox->add_option("--seed", o.seed, "rng seed");

  try {
    const std::vector<std::string> args = apply_config_file(argc, argv);
    // CLI11 parses reversed argv
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const cdopt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (gen->parsed()) return run_gen(o);
    if (solve->parsed()) return run_solve(o);
    if (bench->parsed()) return run_bench(o, rules_csv);
    if (prox->parsed()) return run_prox_check(prox_points, o.seed);
  } catch (const cdopt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
