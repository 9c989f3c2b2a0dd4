#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "bpb/acceptance.hpp"
#include "bpb/equilibrium.hpp"
#include "bpb/generator.hpp"
#include "bpb/learning.hpp"
#include "bpb/selection.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bpb::Rule parse_rule(const std::string& name) {
  if (name == "bpb") return bpb::Rule::Bpb;
  if (name == "knapsack") return bpb::Rule::Knapsack;
  if (name == "skip") return bpb::Rule::Skip;
  if (name == "opt") return bpb::Rule::Opt;
  throw CLI::ValidationError("--rule", "unknown rule: " + name);
}

bpb::MatroidFamily parse_family(const std::string& name) {
  if (name == "free") return bpb::MatroidFamily::Free;
  if (name == "uniform") return bpb::MatroidFamily::Uniform;
  if (name == "partition") return bpb::MatroidFamily::Partition;
  if (name == "graphic") return bpb::MatroidFamily::Graphic;
  throw CLI::ValidationError("--family", "unknown matroid family: " + name);
}

struct Exit {
  int code;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"budget-constrained procurement marketplace toolkit"};
  app.require_subcommand(1);

  // ---- select ----
  auto* sel_cmd = app.add_subcommand("select", "run a selection rule on an instance");
  std::string sel_rule = "bpb", sel_instance, sel_prices;
  sel_cmd->add_option("--rule", sel_rule, "bpb|knapsack|skip|opt")->capture_default_str();
  sel_cmd->add_option("--instance", sel_instance, "instance JSON file")->required();
  sel_cmd->add_option("--prices", sel_prices, "price vector file")->required();

  // ---- construct-eq ----
  auto* ceq_cmd = app.add_subcommand("construct-eq", "construct an equilibrium price vector");
  std::string ceq_algo, ceq_instance, ceq_eps = "1/100";
  bool ceq_trace = false;
  ceq_cmd->add_option("--algo", ceq_algo, "additive|unweighted|weighted")->required();
  ceq_cmd->add_option("--instance", ceq_instance, "instance JSON file")->required();
  ceq_cmd->add_option("--eps", ceq_eps, "slack for the additive construction")
      ->capture_default_str();
  ceq_cmd->add_flag("--trace", ceq_trace, "include the per-iteration trace in the output");

  // ---- verify-eq ----
  auto* veq_cmd = app.add_subcommand("verify-eq", "verify an eps-equilibrium (exit 1 on failure)");
  std::string veq_instance, veq_prices, veq_eps = "0", veq_rule = "bpb";
  bool veq_serial = false;
  veq_cmd->add_option("--instance", veq_instance, "instance JSON file")->required();
  veq_cmd->add_option("--prices", veq_prices, "price vector file")->required();
  veq_cmd->add_option("--eps", veq_eps, "deviation slack")->capture_default_str();
  veq_cmd->add_option("--rule", veq_rule, "bpb|knapsack|skip|opt")->capture_default_str();
  veq_cmd->add_flag("--serial", veq_serial, "use the serial reference scan");

  // ---- approx ----
  auto* apx_cmd = app.add_subcommand("approx", "selection value over the cost-priced optimum");
  std::string apx_rule = "bpb", apx_instance, apx_prices;
  apx_cmd->add_option("--rule", apx_rule, "bpb|knapsack|skip|opt")->capture_default_str();
  apx_cmd->add_option("--instance", apx_instance, "instance JSON file")->required();
  apx_cmd->add_option("--prices", apx_prices, "price vector file")->required();

  // ---- simulate ----
  auto* sim_cmd = app.add_subcommand("simulate", "run the learning dynamics");
  std::string sim_instance, sim_delta, sim_target, sim_csv;
  long sim_rounds = 0, sim_t0 = 0, sim_window = 0, sim_stride = 1;
  std::uint64_t sim_seed = 0;
  int sim_seeds = 1;
  double sim_c0 = 1.0;
  bool sim_strict = false, sim_gross = false;
  sim_cmd->add_option("--instance", sim_instance, "instance JSON file")->required();
  sim_cmd->add_option("--delta", sim_delta, "bid grid step (B/delta must be integral)")
      ->required();
  sim_cmd->add_option("--rounds", sim_rounds, "number of rounds")->required();
  sim_cmd->add_option("--t0", sim_t0, "payment phase switch round (default rounds/3)");
  sim_cmd->add_option("--seed", sim_seed, "base RNG seed")->required();
  sim_cmd->add_option("--seeds", sim_seeds, "number of consecutive seeds to run")
      ->capture_default_str();
  sim_cmd->add_option("--target", sim_target, "price file for the convergence verdict");
  sim_cmd->add_option("--csv", sim_csv, "trace CSV path (seed index appended when --seeds > 1)");
  sim_cmd->add_option("--window", sim_window, "summary window (default rounds/10)");
  sim_cmd->add_option("--stride", sim_stride, "CSV row stride")->capture_default_str();
  sim_cmd->add_option("--c0", sim_c0, "learning rate constant")->capture_default_str();
  sim_cmd->add_flag("--strict-assumptions", sim_strict,
                    "require the strict discretization assumptions up front");
  sim_cmd->add_flag("--gross", sim_gross, "gross payment base instead of net utility");

  // ---- sweep ----
  auto* swp_cmd = app.add_subcommand("sweep", "summary row per (delta, seed) dynamics run");
  std::string swp_instance, swp_deltas, swp_target;
  long swp_rounds = 0, swp_t0 = 0, swp_window = 0;
  std::uint64_t swp_seed = 0;
  int swp_seeds = 1;
  double swp_c0 = 1.0;
  swp_cmd->add_option("--instance", swp_instance, "instance JSON file")->required();
  swp_cmd->add_option("--deltas", swp_deltas, "comma-separated grid steps")->required();
  swp_cmd->add_option("--rounds", swp_rounds, "number of rounds")->required();
  swp_cmd->add_option("--t0", swp_t0, "payment phase switch round (default rounds/3)");
  swp_cmd->add_option("--seed", swp_seed, "base RNG seed")->required();
  swp_cmd->add_option("--seeds", swp_seeds, "seeds per delta")->capture_default_str();
  swp_cmd->add_option("--target", swp_target, "price file for the convergence verdict");
  swp_cmd->add_option("--window", swp_window, "summary window (default rounds/10)");
  swp_cmd->add_option("--c0", swp_c0, "learning rate constant")->capture_default_str();

  // ---- generate ----
  auto* gen_cmd = app.add_subcommand("generate", "emit a seeded random instance");
  std::string gen_family = "free", gen_lambda = "1/5", gen_floor, gen_budget = "1",
              gen_delta_s;
  int gen_n = 0, gen_value_max = 10, gen_granularity = 64;
  std::uint64_t gen_seed = 0;
  bool gen_strict = false;
  gen_cmd->add_option("--family", gen_family, "free|uniform|partition|graphic")
      ->capture_default_str();
  gen_cmd->add_option("--n", gen_n, "number of modules")->required();
  gen_cmd->add_option("--seed", gen_seed, "RNG seed")->required();
  gen_cmd->add_option("--lambda", gen_lambda, "cost cap as a fraction of the budget")
      ->capture_default_str();
  gen_cmd->add_option("--cost-floor", gen_floor, "minimum cost (default lambda*B/100)");
  gen_cmd->add_option("--budget", gen_budget, "budget")->capture_default_str();
  gen_cmd->add_option("--value-max", gen_value_max, "value upper bound")->capture_default_str();
  gen_cmd->add_option("--granularity", gen_granularity, "denominator of generated rationals")
      ->capture_default_str();
  gen_cmd->add_flag("--strict", gen_strict,
                    "draw an instance passing the strict discretization assumptions");
  gen_cmd->add_option("--delta", gen_delta_s, "grid step for --strict");

  // ---- paper-suite ----
  auto* ps_cmd = app.add_subcommand("paper-suite", "run the full acceptance experiments");
  bool ps_quick = false;
  std::string ps_out;
  ps_cmd->add_flag("--quick", ps_quick, "reduced seeds/rounds, marked smoke");
  ps_cmd->add_option("--out", ps_out, "directory for per-criterion CSVs and summary JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    auto tb = bpb::TieBreak::by_cost_ratio();
    if (*sel_cmd) {
      auto inst = bpb::load_instance(slurp(sel_instance));
      auto p = bpb::load_prices(slurp(sel_prices), inst.n);
      auto res = bpb::run_rule(parse_rule(sel_rule), inst, p, tb);
      std::cout << bpb::selection_to_json_string(res);
    } else if (*ceq_cmd) {
      auto inst = bpb::load_instance(slurp(ceq_instance));
      bpb::EquilibriumOutput out;
      if (ceq_algo == "additive")
        out = bpb::additive_equilibrium(inst, bpb::parse_scalar(ceq_eps));
      else if (ceq_algo == "unweighted")
        out = bpb::construct_eq_unweighted(inst);
      else if (ceq_algo == "weighted")
        out = bpb::construct_eq_weighted(inst);
      else
        throw CLI::ValidationError("--algo", "unknown algorithm: " + ceq_algo);
      std::cout << bpb::equilibrium_to_json_string(out, ceq_trace);
    } else if (*veq_cmd) {
      auto inst = bpb::load_instance(slurp(veq_instance));
      auto p = bpb::load_prices(slurp(veq_prices), inst.n);
      auto rep = bpb::verify_eps_equilibrium(
          inst, p, bpb::parse_scalar(veq_eps), parse_rule(veq_rule), tb,
          veq_serial ? bpb::ExecPolicy::Serial : bpb::ExecPolicy::Parallel);
      std::cout << bpb::deviation_report_to_json_string(rep);
      if (!rep.pass) throw Exit{1};
    } else if (*apx_cmd) {
      auto inst = bpb::load_instance(slurp(apx_instance));
      auto p = bpb::load_prices(slurp(apx_prices), inst.n);
      bpb::Scalar ratio = bpb::approx_ratio(inst, p, parse_rule(apx_rule), tb);
      nlohmann::json j;
      j["rule"] = apx_rule;
      j["ratio"] = bpb::to_fraction_string(ratio);
      j["decimal"] = bpb::to_double(ratio);
      std::cout << j.dump(2) << "\n";
    } else if (*sim_cmd) {
      auto inst = bpb::load_instance(slurp(sim_instance));
      bpb::Scalar delta = bpb::parse_scalar(sim_delta);
      long t0 = sim_t0 > 0 ? sim_t0 : sim_rounds / 3;
      long window = sim_window > 0 ? sim_window : std::max<long>(1, sim_rounds / 10);
      bpb::DynamicsOptions dyn;
      dyn.c0 = sim_c0;
      dyn.strict = sim_strict;
      dyn.mode = sim_gross ? bpb::PaymentMode::GrossPayment : bpb::PaymentMode::NetUtility;
      bpb::PriceVector target;
      if (!sim_target.empty()) target = bpb::load_prices(slurp(sim_target), inst.n);
      nlohmann::json summaries = nlohmann::json::array();
      for (int s = 0; s < sim_seeds; ++s) {
        auto trace = bpb::run_dynamics(inst, delta, sim_rounds, t0, sim_seed + s, dyn);
        if (!sim_csv.empty()) {
          std::string path = sim_seeds > 1 ? sim_csv + "." + std::to_string(s) : sim_csv;
          std::ofstream csv(path);
          if (!csv) throw std::invalid_argument("cannot write CSV: " + path);
          bpb::write_dynamics_csv(trace, csv, sim_stride);
        }
        summaries.push_back(nlohmann::json::parse(bpb::dynamics_summary_json(
            inst, trace, target.empty() ? nullptr : &target, window)));
      }
      if (sim_seeds == 1)
        std::cout << summaries[0].dump(2) << "\n";
      else
        std::cout << summaries.dump(2) << "\n";
    } else if (*swp_cmd) {
      auto inst = bpb::load_instance(slurp(swp_instance));
      long t0 = swp_t0;
      bpb::DynamicsOptions dyn;
      dyn.c0 = swp_c0;
      bpb::PriceVector target;
      if (!swp_target.empty()) target = bpb::load_prices(slurp(swp_target), inst.n);
      std::cout << "delta,seed,rounds,t0,window,converged,modal_prices\n";
      std::stringstream deltas(swp_deltas);
      std::string tok;
      while (std::getline(deltas, tok, ',')) {
        bpb::Scalar delta = bpb::parse_scalar(tok);
        long run_t0 = t0 > 0 ? t0 : swp_rounds / 3;
        long window = swp_window > 0 ? swp_window : std::max<long>(1, swp_rounds / 10);
        for (int s = 0; s < swp_seeds; ++s) {
          auto trace = bpb::run_dynamics(inst, delta, swp_rounds, run_t0, swp_seed + s, dyn);
          auto j = nlohmann::json::parse(bpb::dynamics_summary_json(
              inst, trace, target.empty() ? nullptr : &target, window));
          std::string modal;
          for (const auto& m : j["modal_price"]) {
            if (!modal.empty()) modal += ';';
            modal += m.get<std::string>();
          }
          std::cout << tok << ',' << (swp_seed + s) << ',' << swp_rounds << ',' << run_t0 << ','
                    << j["window"].get<long>() << ','
                    << (j.contains("converged") ? (j["converged"].get<bool>() ? "1" : "0") : "")
                    << ',' << modal << '\n';
        }
      }
    } else if (*gen_cmd) {
      bpb::Instance inst;
      if (gen_strict) {
        if (gen_delta_s.empty())
          throw CLI::ValidationError("--strict", "--delta is required with --strict");
        inst = bpb::random_strict_instance(parse_family(gen_family), gen_n,
                                           bpb::parse_scalar(gen_delta_s), gen_seed);
      } else {
        bpb::GenOptions opts;
        opts.B = bpb::parse_scalar(gen_budget);
        opts.lambda = bpb::parse_scalar(gen_lambda);
        if (!gen_floor.empty()) opts.cost_floor = bpb::parse_scalar(gen_floor);
        opts.value_max = gen_value_max;
        opts.granularity = gen_granularity;
        inst = bpb::random_instance(parse_family(gen_family), gen_n, gen_seed, opts);
      }
      std::cout << bpb::save_instance(inst);
    } else if (*ps_cmd) {
      bpb::SuiteOptions opts;
      opts.quick = ps_quick;
      opts.out_dir = ps_out;
      auto res = bpb::run_paper_suite(opts);
      for (const auto& c : res.criteria)
        std::cout << c.id << ": " << (c.pass ? "PASS" : "FAIL") << " — " << c.detail << " ("
                  << c.seconds << " s)\n";
      std::cout << (res.pass ? "paper suite: PASS" : "paper suite: FAIL") << "\n";
      if (!res.pass) throw Exit{1};
    }
  } catch (const Exit& e) {
    return e.code;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
