// Command-line driver for the decision-sufficient dataset toolkit. Talks to
// the core exclusively through the C API in sdd/sdd.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdd/sdd.h"

namespace {

using Json = nlohmann::json;

int fail_with(sdd_status status, const std::string& context) {
  std::cerr << "error: " << context << ": " << sdd_status_name(status) << ": "
            << sdd_last_error() << "\n";
  return 1;
}

std::string read_file(const std::string& path, bool* ok) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) {
    *ok = false;
    return {};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  *ok = in.good() || in.eof();
  return buf.str();
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  return out.good();
}

struct LearnArgs {
  std::string family = "hypercube";
  std::string instance_file;
  std::size_t d_star = 6;
  std::size_t d = 9;
  double eps = 0.1;
  std::size_t n = 500;
  std::size_t trials = 50;
  std::size_t fresh = 2000;
  double delta = 0.05;
  std::uint64_t seed = 1;
  bool lower_bound = false;
  bool svg = false;
  std::string out_dir;
};

int run_learn(const LearnArgs& args) {
  Json config{{"d_star", args.d_star}, {"d", args.d},
              {"epsilon", args.eps},   {"n", args.n},
              {"trials", args.trials}, {"fresh", args.fresh},
              {"delta", args.delta},   {"seed", args.seed},
              {"lower_bound", args.lower_bound}};
  if (!args.instance_file.empty()) {
    bool ok = true;
    const std::string text = read_file(args.instance_file, &ok);
    if (!ok) {
      std::cerr << "error: cannot read " << args.instance_file << "\n";
      return 1;
    }
    Json bundle;
    try {
      bundle = Json::parse(text);
      const Json& meta = bundle.at("metadata");
      if (meta.at("family") != "hypercube") {
        std::cerr << "error: learn requires a hypercube instance bundle\n";
        return 1;
      }
      const Json& params = meta.at("params");
      config["d_star"] = params.at("d_star");
      config["d"] = params.at("d");
      config["epsilon"] = params.at("epsilon");
    } catch (const Json::exception& e) {
      std::cerr << "error: invalid instance file " << args.instance_file
                << ": " << e.what() << "\n";
      return 1;
    }
  } else if (args.family != "hypercube") {
    std::cerr << "error: unsupported learn family: " << args.family << "\n";
    return 1;
  }
  if (!args.out_dir.empty()) config["out"] = args.out_dir;
  if (args.svg) config["svg"] = true;

  char* summary = nullptr;
  const sdd_status status =
      sdd_learn_experiment(config.dump().c_str(), &summary);
  if (status != SDD_OK) return fail_with(status, "learn experiment");
  const Json result = Json::parse(summary);
  sdd_string_free(summary);

  if (args.lower_bound) {
    std::cout << "trials: " << args.trials
              << "  n: " << result.at("n").get<std::size_t>()
              << "  fraction risk > " << args.eps << ": "
              << result.at("fraction_risk_above_epsilon").get<double>() << "\n";
  } else {
    std::cout << "trials: " << args.trials
              << "  fraction exceeding bound: "
              << result.at("fraction_exceeding_bound").get<double>() << "\n";
  }
  if (!args.out_dir.empty()) {
    std::cout << "wrote " << args.out_dir << "/learn_trials.csv and "
              << args.out_dir << "/learn_result.json\n";
  }
  return 0;
}

struct CloArgs {
  int g = 5;
  int p = 5;
  std::vector<std::size_t> n_train = {50, 100, 200, 300};
  std::size_t n_test = 2000;
  std::size_t trials = 10;
  std::size_t n_stage1 = 300;
  double eta0 = 0.5;
  std::size_t epochs = 3;
  double noise = 0.03;
  std::uint64_t seed = 1;
  std::string method = "both";
  std::string corridor = "staircase";
  bool verify = false;
  bool svg = false;
  std::string out_dir;
};

int run_clo(const CloArgs& args) {
  Json config{{"g", args.g},
              {"p", args.p},
              {"n_train_grid", args.n_train},
              {"n_test", args.n_test},
              {"trials", args.trials},
              {"n_stage1", args.n_stage1},
              {"eta0", args.eta0},
              {"epochs", args.epochs},
              {"noise", args.noise},
              {"seed", args.seed},
              {"corridor", args.corridor},
              {"verify", args.verify},
              {"full", args.method == "both" || args.method == "full"},
              {"compressed",
               args.method == "both" || args.method == "compressed"}};
  if (!args.out_dir.empty()) config["out"] = args.out_dir;
  if (args.svg) config["svg"] = true;

  char* summary = nullptr;
  const sdd_status status = sdd_clo_experiment(config.dump().c_str(), &summary);
  if (status != SDD_OK) return fail_with(status, "clo experiment");
  const Json result = Json::parse(summary);
  sdd_string_free(summary);

  std::cout << "oracle d*: " << result.at("oracle_d_star").get<std::size_t>()
            << "\n";
  for (const auto& [method, curve] : result.at("risk_stats").items()) {
    for (const auto& [n_train, stat] : curve.items()) {
      std::cout << method << " n_train=" << n_train
                << " mean_risk=" << stat.at("mean").get<double>() << " +-"
                << stat.at("ci90_halfwidth").get<double>() << " (90% CI)\n";
    }
  }
  if (!args.out_dir.empty()) {
    std::cout << "wrote " << args.out_dir << "/clo_risk.csv, "
              << args.out_dir << "/clo_dimension.csv and "
              << args.out_dir << "/clo_summary.json\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision-sufficient dataset discovery for linear programs"};
  app.require_subcommand(1);

  LearnArgs learn;
  CLI::App* learn_cmd =
      app.add_subcommand("learn", "cumulative learning with a PAC certificate");
  learn_cmd->add_option("--family", learn.family, "instance family");
  learn_cmd->add_option("--instance", learn.instance_file,
                        "instance bundle JSON file");
  learn_cmd->add_option("--dstar", learn.d_star, "intrinsic dimension");
  learn_cmd->add_option("--d", learn.d, "ambient dimension");
  learn_cmd->add_option("--eps", learn.eps, "rare-type mass parameter");
  learn_cmd->add_option("--n", learn.n, "training samples per trial");
  learn_cmd->add_option("--trials", learn.trials, "number of trials");
  learn_cmd->add_option("--fresh", learn.fresh, "fresh draws for risk");
  learn_cmd->add_option("--delta", learn.delta, "certificate confidence");
  learn_cmd->add_option("--seed", learn.seed, "base seed");
  learn_cmd->add_flag("--lower-bound", learn.lower_bound,
                      "lower-bound regime: n = floor((d*-1)/(8 eps))");
  learn_cmd->add_flag("--svg", learn.svg, "emit SVG charts");
  learn_cmd->add_option("--out", learn.out_dir, "output directory");

  CloArgs clo;
  CLI::App* clo_cmd =
      app.add_subcommand("clo", "two-stage contextual pipeline on the grid");
  clo_cmd->add_option("--grid", clo.g, "grid side length");
  clo_cmd->add_option("--p", clo.p, "context dimension");
  clo_cmd->add_option("--ntrain", clo.n_train, "training sizes for stage II");
  clo_cmd->add_option("--ntest", clo.n_test, "test samples");
  clo_cmd->add_option("--trials", clo.trials, "number of trials");
  clo_cmd->add_option("--nstage1", clo.n_stage1, "stage-I sample budget");
  clo_cmd->add_option("--eta0", clo.eta0, "SGD base stepsize");
  clo_cmd->add_option("--epochs", clo.epochs, "SGD epochs");
  clo_cmd->add_option("--noise", clo.noise, "cost noise level");
  clo_cmd->add_option("--seed", clo.seed, "base seed");
  clo_cmd->add_option("--method", clo.method, "full | compressed | both")
      ->check(CLI::IsMember({"full", "compressed", "both"}));
  clo_cmd->add_option("--corridor", clo.corridor, "corridor step string");
  clo_cmd->add_flag("--verify", clo.verify, "run oracle cross-checks");
  clo_cmd->add_flag("--svg", clo.svg, "emit SVG charts");
  clo_cmd->add_option("--out", clo.out_dir, "output directory");

  CLI::App* inst_cmd = app.add_subcommand("instance", "instance generators");
  inst_cmd->require_subcommand(1);

  std::size_t hc_dstar = 4, hc_d = 6;
  double hc_eps = 0.1;
  std::string hc_out;
  CLI::App* hc_cmd = inst_cmd->add_subcommand("hypercube", "rare-types family");
  hc_cmd->add_option("--dstar", hc_dstar, "intrinsic dimension");
  hc_cmd->add_option("--d", hc_d, "ambient dimension");
  hc_cmd->add_option("--eps", hc_eps, "rare-type mass");
  hc_cmd->add_option("--out", hc_out, "output file (default stdout)");

  int grid_g = 5, grid_p = 5;
  std::string grid_corridor = "staircase", grid_out;
  bool grid_oracle = false;
  CLI::App* grid_cmd = inst_cmd->add_subcommand("grid", "monotone path grid");
  grid_cmd->add_option("--g", grid_g, "grid side length");
  grid_cmd->add_option("--p", grid_p, "context dimension");
  grid_cmd->add_option("--corridor", grid_corridor, "corridor step string");
  grid_cmd->add_flag("--oracle-dstar", grid_oracle,
                     "print the enumeration-oracle d*");
  grid_cmd->add_option("--out", grid_out, "output file (default stdout)");

  std::string pispp_cnf, pispp_out;
  double pispp_eta = 0.5;
  bool pispp_check = false;
  CLI::App* pispp_cmd = inst_cmd->add_subcommand("pispp", "3-SAT gadget");
  pispp_cmd->add_option("--cnf", pispp_cnf, "DIMACS CNF file")->required();
  pispp_cmd->add_option("--eta", pispp_eta, "open-variant slack");
  pispp_cmd->add_flag("--check", pispp_check,
                      "run the brute-force equivalence check");
  pispp_cmd->add_option("--out", pispp_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (learn_cmd->parsed()) return run_learn(learn);
  if (clo_cmd->parsed()) return run_clo(clo);

  if (hc_cmd->parsed()) {
    const Json params{{"d_star", hc_dstar}, {"d", hc_d}, {"epsilon", hc_eps}};
    char* out = nullptr;
    const sdd_status status =
        sdd_instance_make("hypercube", params.dump().c_str(), &out);
    if (status != SDD_OK) return fail_with(status, "instance hypercube");
    const std::string text = std::string(out) + "\n";
    sdd_string_free(out);
    if (hc_out.empty()) {
      std::cout << text;
    } else if (!write_file(hc_out, text)) {
      std::cerr << "error: cannot write " << hc_out << "\n";
      return 1;
    }
    return 0;
  }

  if (grid_cmd->parsed()) {
    const Json params{{"g", grid_g}, {"p", grid_p}, {"corridor", grid_corridor}};
    if (grid_oracle) {
      int d_star = 0;
      const sdd_status status =
          sdd_grid_oracle_dstar(params.dump().c_str(), &d_star);
      if (status != SDD_OK) return fail_with(status, "grid oracle");
      std::cout << "oracle d*: " << d_star << "\n";
      if (grid_out.empty()) return 0;
    }
    char* out = nullptr;
    const sdd_status status =
        sdd_instance_make("grid", params.dump().c_str(), &out);
    if (status != SDD_OK) return fail_with(status, "instance grid");
    const std::string text = std::string(out) + "\n";
    sdd_string_free(out);
    if (grid_out.empty()) {
      std::cout << text;
    } else if (!write_file(grid_out, text)) {
      std::cerr << "error: cannot write " << grid_out << "\n";
      return 1;
    }
    return 0;
  }

  if (pispp_cmd->parsed()) {
    bool ok = true;
    const std::string cnf = read_file(pispp_cnf, &ok);
    if (!ok) {
      std::cerr << "error: cannot read " << pispp_cnf << "\n";
      return 1;
    }
    if (pispp_check) {
      int satisfiable = 0, equivalence = 0;
      const sdd_status status =
          sdd_pispp_check_cnf(cnf.c_str(), &satisfiable, &equivalence);
      if (status != SDD_OK) return fail_with(status, "pispp check");
      std::cout << "satisfiable: " << (satisfiable ? "yes" : "no")
                << "  equivalence holds: " << (equivalence ? "yes" : "no")
                << "\n";
      if (!equivalence) return 1;
    }
    const Json params{{"cnf", cnf}, {"eta", pispp_eta}};
    char* out = nullptr;
    const sdd_status status =
        sdd_instance_make("pispp", params.dump().c_str(), &out);
    if (status != SDD_OK) return fail_with(status, "instance pispp");
    const std::string text = std::string(out) + "\n";
    sdd_string_free(out);
    if (pispp_out.empty()) {
      std::cout << text;
    } else if (!write_file(pispp_out, text)) {
      std::cerr << "error: cannot write " << pispp_out << "\n";
      return 1;
    }
    return 0;
  }

  return 0;
}
