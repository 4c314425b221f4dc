// Command-line driver: solve / path / check / bench subcommands around the
// sparselogit solver library. JSON or CSV output; exit 0 on convergence,
// 2 on flagged non-convergence, 1 on errors.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sparselogit/io.hpp"
#include "sparselogit/oracle.hpp"
#include "sparselogit/regpath.hpp"
#include "sparselogit/solver_en.hpp"
#include "sparselogit/solver_l1.hpp"
#include "sparselogit/synth.hpp"

namespace sl = sparselogit;
using nlohmann::json;

namespace {

sl::FileFormat parse_format(const std::string& s) {
  if (s == "csv") return sl::FileFormat::csv;
  if (s == "svmlight") return sl::FileFormat::svmlight;
  return sl::FileFormat::auto_detect;
}

json sparse_coefficients(const sl::Vector& theta) {
  json coefs = json::array();
  for (sl::Index j = 0; j < theta.size(); ++j)
    if (theta[j] != 0.0) coefs.push_back({j, theta[j]});
  return coefs;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream out(path);
    if (!out) throw sl::DataError("cannot write '" + path + "'");
    out << text << '\n';
  }
}

std::string solve_result_csv(const sl::Vector& theta) {
  std::string s = "index,value";
  for (sl::Index j = 0; j < theta.size(); ++j)
    if (theta[j] != 0.0)
      s += "\n" + std::to_string(j) + "," + sl::format_double(theta[j]);
  return s;
}

// Coefficient files: solve's JSON output, or plain `index:value` lines
// (0-based indices).
sl::Vector read_coefficients(const std::string& path, sl::Index n) {
  std::ifstream in(path);
  if (!in) throw sl::DataError("cannot open '" + path + "'");
  sl::Vector theta(n, 0.0);
  char first = 0;
  in >> first;
  in.seekg(0);
  if (first == '{') {
    json j;
    in >> j;
    for (const auto& pair : j.at("coefficients")) {
      const auto idx = pair.at(0).get<sl::Index>();
      if (idx >= n) throw sl::DataError("coefficient index out of range");
      theta[idx] = pair.at(1).get<double>();
    }
  } else {
    std::string line;
    sl::Index lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
      const auto colon = line.find(':');
      if (colon == std::string::npos)
        throw sl::ParseError("coefficients line " + std::to_string(lineno) +
                             ": expected index:value");
      const auto idx = static_cast<sl::Index>(std::stoul(line.substr(0, colon)));
      if (idx >= n) throw sl::DataError("coefficient index out of range");
      theta[idx] = std::stod(line.substr(colon + 1));
    }
  }
  return theta;
}

struct CommonOpts {
  std::string input, format = "auto", out, output_format = "json";
  double tol = 1e-8;
  std::size_t max_iter = 100000;
  bool trace = false;
  int threads = 0;  // forwarded to kernel parallelism; kernels are sequential
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_input = true) {
  auto* in = cmd->add_option("--input", o.input, "dataset file");
  if (needs_input) in->required();
  cmd->add_option("--format", o.format, "csv|svmlight|auto")
      ->check(CLI::IsMember({"csv", "svmlight", "auto"}));
  cmd->add_option("--tol", o.tol, "convergence tolerance");
  cmd->add_option("--max-iter", o.max_iter, "iteration cap");
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--output-format", o.output_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_flag("--trace", o.trace, "include residual history in output");
  cmd->add_option("--threads", o.threads, "kernel thread count");
}

int emit_solve_report(const sl::Dataset& data, const sl::SolveReport& rep,
                      const sl::PenaltyParams& p, const CommonOpts& o) {
  const sl::KktReport kkt =
      sl::kkt_residual(data, rep.theta_final, p, &rep.s_final);
  if (o.output_format == "csv") {
    write_output(o.out, solve_result_csv(rep.theta_final));
  } else {
    json j;
    j["coefficients"] = sparse_coefficients(rep.theta_final);
    j["objective"] = rep.objective_final;
    j["iterations"] = rep.iterations;
    j["final_residual"] =
        rep.residual_history.empty() ? 0.0 : rep.residual_history.back();
    j["kkt"] = {{"stationarity", kkt.stationarity_residual},
                {"dual_consistency", kkt.dual_consistency_residual}};
    j["termination"] = rep.termination == sl::Termination::converged
                           ? "converged"
                           : "max_iter_reached";
    if (o.trace) j["residual_history"] = rep.residual_history;
    write_output(o.out, j.dump(2));
  }
  return rep.termination == sl::Termination::converged ? 0 : 2;
}

sl::SolveReport run_solver(const sl::Dataset& data, double alpha, double lambda,
                           double tol, std::size_t max_iter) {
  if (alpha < 1.0) {
    sl::SolveConfig cfg;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    return sl::solve(data, sl::PenaltyParams(lambda, alpha, data.m()), cfg);
  }
  sl::L1SolveConfig cfg;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  return sl::solve_l1(data, lambda, cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse logistic regression via nonlinear primal-dual hybrid gradient"};
  app.require_subcommand(1);

  CommonOpts solve_o, path_o, check_o, bench_o;
  double alpha = 1.0, lambda = 0.0;

  auto* solve_cmd = app.add_subcommand("solve", "solve a single (alpha, lambda)");
  add_common(solve_cmd, solve_o);
  solve_cmd->add_option("--alpha", alpha, "elastic-net mixing in (0,1]")->required();
  solve_cmd->add_option("--lambda", lambda, "penalty weight")->required();

  auto* path_cmd = app.add_subcommand("path", "warm-started regularization path");
  add_common(path_cmd, path_o);
  double path_alpha = 1.0, lambda_min_ratio = 1e-3;
  std::size_t n_lambda = 100;
  bool cold_start = false;
  path_cmd->add_option("--alpha", path_alpha, "elastic-net mixing in (0,1]")->required();
  path_cmd->add_option("--nlambda", n_lambda, "grid size");
  path_cmd->add_option("--lambda-min-ratio", lambda_min_ratio, "smallest/largest lambda");
  path_cmd->add_flag("--cold-start", cold_start, "disable warm starts");

  auto* check_cmd = app.add_subcommand("check", "KKT residuals of a coefficient file");
  add_common(check_cmd, check_o);
  double check_alpha = 1.0, check_lambda = 0.0;
  std::string coef_path;
  check_cmd->add_option("--coefficients", coef_path, "coefficient file")->required();
  check_cmd->add_option("--alpha", check_alpha)->required();
  check_cmd->add_option("--lambda", check_lambda)->required();

  auto* bench_cmd = app.add_subcommand("bench", "seeded synthetic benchmark");
  add_common(bench_cmd, bench_o, /*needs_input=*/false);
  std::size_t bm = 200, bn = 50;
  double correlation = 0.0, bench_alpha = 1.0, bench_lambda = 0.0;
  std::uint64_t seed = 0;
  std::string solver_name = "l1", dump_data;
  bench_cmd->add_option("--m", bm, "samples")->required();
  bench_cmd->add_option("--n", bn, "features")->required();
  bench_cmd->add_option("--correlation", correlation, "pairwise feature correlation");
  bench_cmd->add_option("--seed", seed, "RNG seed")->required();
  bench_cmd->add_option("--solver", solver_name, "en|l1")
      ->check(CLI::IsMember({"en", "l1"}));
  bench_cmd->add_option("--alpha", bench_alpha, "mixing for the en solver");
  bench_cmd->add_option("--lambda", bench_lambda, "penalty weight")->required();
  bench_cmd->add_option("--dump-data", dump_data, "write the generated dataset (svmlight)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) {
      const sl::Dataset data =
          sl::load_dataset(solve_o.input, parse_format(solve_o.format));
      const sl::SolveReport rep =
          run_solver(data, alpha, lambda, solve_o.tol, solve_o.max_iter);
      return emit_solve_report(data, rep,
                               sl::PenaltyParams(lambda, alpha, data.m()), solve_o);
    }

    if (path_cmd->parsed()) {
      const sl::Dataset data =
          sl::load_dataset(path_o.input, parse_format(path_o.format));
      sl::PathConfig cfg;
      cfg.alpha = path_alpha;
      cfg.n_lambda = n_lambda;
      cfg.lambda_min_ratio = lambda_min_ratio;
      cfg.tol = path_o.tol;
      cfg.max_iter = path_o.max_iter;
      cfg.warm_start = !cold_start;
      const sl::PathResult res = sl::solve_path(data, cfg);
      if (path_o.output_format == "csv") {
        std::string s = "lambda,nonzeros,objective,iterations,converged";
        for (sl::Index j = 0; j < data.n(); ++j) s += ",coef_" + std::to_string(j);
        for (sl::Index i = 0; i < res.lambdas.size(); ++i) {
          s += "\n" + sl::format_double(res.lambdas[i]) + "," +
               std::to_string(res.nonzero_counts[i]) + "," +
               sl::format_double(res.objectives[i]) + "," +
               std::to_string(res.per_solve_iterations[i]) + "," +
               (res.converged[i] ? "1" : "0");
          for (double c : res.coefficients[i]) s += "," + sl::format_double(c);
        }
        write_output(path_o.out, s);
      } else {
        json j;
        j["lambdas"] = res.lambdas;
        j["nonzero_counts"] = res.nonzero_counts;
        j["objectives"] = res.objectives;
        j["iterations"] = res.per_solve_iterations;
        j["converged"] = std::vector<int>(res.converged.begin(), res.converged.end());
        j["partial"] = res.partial;
        json coefs = json::array();
        for (const auto& c : res.coefficients) coefs.push_back(sparse_coefficients(c));
        j["coefficients"] = coefs;
        write_output(path_o.out, j.dump(2));
      }
      return res.partial ? 2 : 0;
    }

    if (check_cmd->parsed()) {
      const sl::Dataset data =
          sl::load_dataset(check_o.input, parse_format(check_o.format));
      const sl::Vector theta = read_coefficients(coef_path, data.n());
      const sl::KktReport kkt = sl::kkt_residual(
          data, theta, sl::PenaltyParams(check_lambda, check_alpha, data.m()));
      json j;
      j["stationarity_residual"] = kkt.stationarity_residual;
      j["dual_consistency_residual"] = kkt.dual_consistency_residual;
      write_output(check_o.out, j.dump(2));
      return 0;
    }

    if (bench_cmd->parsed()) {
      sl::SynthConfig scfg;
      scfg.m = bm;
      scfg.n = bn;
      scfg.correlation = correlation;
      scfg.seed = seed;
      const sl::SynthInstance inst = sl::make_synthetic(scfg);
      if (!dump_data.empty()) {
        std::ofstream out(dump_data);
        if (!out) throw sl::DataError("cannot write '" + dump_data + "'");
        sl::write_svmlight(out, inst.data);
      }
      const double eff_alpha = solver_name == "l1" ? 1.0 : bench_alpha;
      const auto t0 = std::chrono::steady_clock::now();
      const sl::SolveReport rep = run_solver(inst.data, eff_alpha, bench_lambda,
                                             bench_o.tol, bench_o.max_iter);
      const auto t1 = std::chrono::steady_clock::now();
      json j;
      j["m"] = bm;
      j["n"] = bn;
      j["correlation"] = correlation;
      j["seed"] = seed;
      j["solver"] = solver_name;
      j["lambda"] = bench_lambda;
      j["iterations"] = rep.iterations;
      j["objective"] = rep.objective_final;
      j["wall_time_s"] = std::chrono::duration<double>(t1 - t0).count();
      j["termination"] = rep.termination == sl::Termination::converged
                             ? "converged"
                             : "max_iter_reached";
      write_output(bench_o.out, j.dump(2));
      return rep.termination == sl::Termination::converged ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
