#include "roguewave/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "roguewave/errors.hpp"
#include "roguewave/output.hpp"
#include "roguewave/validate.hpp"

namespace roguewave {

namespace fs = std::filesystem;

namespace {

constexpr const char* kDefaultOutDir = "roguewave_out";

BinSpec parse_bins(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss{text};
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bins", "expected WIDTH or LOWER:UPPER:WIDTH, got '" + text + "'");
    }
  }
  BinSpec spec;
  if (parts.size() == 1) {
    spec.width = parts[0];
  } else if (parts.size() == 3) {
    spec.lower = parts[0];
    spec.upper = parts[1];
    spec.width = parts[2];
  } else {
    throw UsageError("bins", "expected WIDTH or LOWER:UPPER:WIDTH, got '" + text + "'");
  }
  try {
    spec.validate();
  } catch (const ArgumentError& e) {
    throw UsageError("bins", e.what());
  }
  return spec;
}

// ExperimentConfig::validate reports "field: message"; surface the field as
// the flag name.
[[noreturn]] void rethrow_as_usage(const ArgumentError& e) {
  const std::string what = e.what();
  const auto colon = what.find(": ");
  if (colon == std::string::npos) throw UsageError("config", what);
  std::string key = what.substr(0, colon);
  std::replace(key.begin(), key.end(), '_', '-');
  throw UsageError(key, what.substr(colon + 2));
}

PhaseDistribution discrete_or_usage(long long q) {
  if (q < 2 || q > 1'000'000'000) {
    throw UsageError("q", "number of phase states must be at least 2");
  }
  return PhaseDistribution::discrete(static_cast<int>(q));
}

}  // namespace

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["n_waves"] = c.n_waves;
  j["n_runs"] = c.n_runs;
  j["n_beta"] = c.n_beta;
  j["rho"] = c.rho_list;
  j["q"] = c.dist.is_discrete() ? nlohmann::json(c.dist.q()) : nlohmann::json(nullptr);
  j["shuffle"] = c.shuffle;
  j["e0"] = c.e0;
  j["seed"] = c.master_seed;
  j["bins"] = {{"lower", c.bins.lower}, {"upper", c.bins.upper}, {"width", c.bins.width}};
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base) {
  if (!j.is_object()) {
    throw UsageError("config", "top level must be a JSON object");
  }
  ExperimentConfig c = std::move(base);
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "n_waves") {
        c.n_waves = value.get<std::size_t>();
      } else if (key == "n_runs") {
        c.n_runs = value.get<std::size_t>();
      } else if (key == "n_beta") {
        c.n_beta = value.get<std::size_t>();
      } else if (key == "rho") {
        c.rho_list = value.is_array() ? value.get<std::vector<double>>()
                                      : std::vector<double>{value.get<double>()};
      } else if (key == "q") {
        c.dist = value.is_null() ? PhaseDistribution::continuous()
                                 : discrete_or_usage(value.get<long long>());
      } else if (key == "shuffle") {
        c.shuffle = value.get<bool>();
      } else if (key == "e0") {
        c.e0 = value.get<double>();
      } else if (key == "seed") {
        c.master_seed = value.get<std::uint64_t>();
      } else if (key == "bins") {
        BinSpec b = c.bins;
        for (const auto& [bk, bv] : value.items()) {
          if (bk == "lower") b.lower = bv.get<double>();
          else if (bk == "upper") b.upper = bv.get<double>();
          else if (bk == "width") b.width = bv.get<double>();
          else throw UsageError("bins." + bk, "unknown key");
        }
        c.bins = b;
      } else if (key == "workers") {
        c.workers = value.get<unsigned>();
      } else {
        throw UsageError(key, "unknown config key");
      }
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(key, std::string{"bad value: "} + e.what());
    }
  }
  return c;
}

std::vector<std::string> config_to_args(const ExperimentConfig& c) {
  std::vector<std::string> args{"--n-waves", std::to_string(c.n_waves),
                                "--n-runs",  std::to_string(c.n_runs),
                                "--n-beta",  std::to_string(c.n_beta)};
  for (const double rho : c.rho_list) {
    args.emplace_back("--rho");
    args.push_back(rho_label(rho));
  }
  if (c.dist.is_discrete()) {
    args.emplace_back("--q");
    args.push_back(std::to_string(c.dist.q()));
  } else {
    args.emplace_back("--continuous");
  }
  args.emplace_back(c.shuffle ? "--shuffle" : "--no-shuffle");
  args.emplace_back("--e0");
  args.push_back(rho_label(c.e0));
  args.emplace_back("--seed");
  args.push_back(std::to_string(c.master_seed));
  args.emplace_back("--bins");
  args.push_back(rho_label(c.bins.lower) + ":" + rho_label(c.bins.upper) + ":" +
                 rho_label(c.bins.width));
  return args;
}

Invocation parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Intensity statistics of superposed waves with correlated random phases",
               "roguewave"};
  app.require_subcommand(0, 1);

  std::string config_file;
  std::vector<double> rhos;
  long long q = 0;
  std::size_t n_waves = 0;
  std::size_t n_runs = 0;
  std::size_t n_beta = 0;
  double e0 = 0.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string bins;
  unsigned workers = 0;
  std::vector<std::size_t> n_beta_list;

  auto* o_config = app.add_option("--config", config_file, "JSON config file; flags override it");
  auto* o_rho = app.add_option("--rho", rhos, "Phase correlation in [0, 1] (repeatable)")
                    ->delimiter(',');
  auto* o_q = app.add_option("--q", q, "Discrete phase law with Q equiprobable states");
  auto* o_cont = app.add_flag("--continuous", "Continuous uniform phases on [-pi, pi] (default)");
  auto* o_waves = app.add_option("--n-waves", n_waves, "Number of superposed waves (1024)");
  auto* o_runs = app.add_option("--n-runs", n_runs, "Realizations per correlation (10000)");
  auto* o_beta = app.add_option("--n-beta", n_beta, "Points of the beta grid on [0, 2pi] (300)");
  auto* o_shuffle = app.add_flag("--shuffle", "Shuffle pair-generated phases (default)");
  auto* o_noshuffle = app.add_flag("--no-shuffle", "Keep correlated pairs adjacent");
  auto* o_e0 = app.add_option("--e0", e0, "Incident amplitude (1)");
  auto* o_seed = app.add_option("--seed", seed, "Master seed");
  auto* o_out = app.add_option("--out", out, "Output directory");
  auto* o_bins = app.add_option("--bins", bins, "Histogram bins: WIDTH or LOWER:UPPER:WIDTH");
  auto* o_workers = app.add_option("--workers", workers, "Worker threads (0 = all cores)");

  auto* sweep = app.add_subcommand("sweep", "Run a correlation sweep (default command)");
  auto* nbeta = app.add_subcommand("nbeta", "Repeat the sweep for several beta-grid sizes");
  auto* validate = app.add_subcommand("validate", "Run the analytic self-checks");
  auto* o_list = nbeta->add_option("--n-beta-list", n_beta_list,
                                   "Grid sizes (100,200,300,400)")
                     ->delimiter(',');
  for (auto* sub : {sweep, nbeta, validate}) sub->fallthrough();

  Invocation inv;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    inv.help = app.help();
    return inv;
  } catch (const CLI::ParseError& e) {
    throw UsageError("arguments", e.what());
  }
  if (nbeta->parsed()) inv.command = Command::NBeta;
  if (validate->parsed()) inv.command = Command::Validate;

  ExperimentConfig& c = inv.config;
  if (o_config->count() != 0) {
    std::ifstream is{config_file};
    if (!is) throw UsageError("config", "cannot read " + config_file);
    nlohmann::json j;
    try {
      is >> j;
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("config", std::string{"invalid JSON: "} + e.what());
    }
    c = config_from_json(j, c);
  }

  if (o_q->count() != 0 && o_cont->count() != 0) {
    throw UsageError("q", "conflicts with --continuous");
  }
  if (o_shuffle->count() != 0 && o_noshuffle->count() != 0) {
    throw UsageError("shuffle", "--shuffle conflicts with --no-shuffle");
  }
  if (o_rho->count() != 0) c.rho_list = rhos;
  if (o_q->count() != 0) c.dist = discrete_or_usage(q);
  if (o_cont->count() != 0) c.dist = PhaseDistribution::continuous();
  if (o_waves->count() != 0) c.n_waves = n_waves;
  if (o_runs->count() != 0) c.n_runs = n_runs;
  if (o_beta->count() != 0) c.n_beta = n_beta;
  if (o_shuffle->count() != 0) c.shuffle = true;
  if (o_noshuffle->count() != 0) c.shuffle = false;
  if (o_e0->count() != 0) c.e0 = e0;
  if (o_seed->count() != 0) c.master_seed = seed;
  if (o_bins->count() != 0) c.bins = parse_bins(bins);
  if (o_workers->count() != 0) c.workers = workers;

  try {
    c.validate();
  } catch (const ArgumentError& e) {
    rethrow_as_usage(e);
  }

  if (o_list->count() != 0) {
    for (const auto nb : n_beta_list) {
      if (nb < 2) throw UsageError("n-beta-list", "grid sizes must be at least 2");
    }
    inv.n_beta_list = n_beta_list;
  }

  if (o_out->count() != 0) {
    inv.out_dir = out;
  } else if (const char* root = std::getenv(kOutputRootEnv); root != nullptr && *root != 0) {
    inv.out_dir = root;
  } else {
    inv.out_dir = kDefaultOutDir;
  }
  return inv;
}

namespace {

std::vector<std::string> recorded_invocation(const char* command, const Invocation& inv) {
  std::vector<std::string> args{command};
  const auto flags = config_to_args(inv.config);
  args.insert(args.end(), flags.begin(), flags.end());
  if (inv.command == Command::NBeta) {
    std::string list;
    for (const auto nb : inv.n_beta_list) {
      if (!list.empty()) list += ',';
      list += std::to_string(nb);
    }
    args.emplace_back("--n-beta-list");
    args.push_back(list);
  }
  args.emplace_back("--out");
  args.push_back(inv.out_dir.string());
  return args;
}

void print_eta_table(const SweepResult& sweep, std::ostream& log) {
  log << "n_beta = " << sweep.config.n_beta << ", n_runs = " << sweep.config.n_runs << '\n';
  for (const auto& r : sweep.rhos) {
    log << "  rho = " << r.rho << "  eta = " << r.metrics.eta;
    if (r.metrics.eta_base) log << "  eta_base = " << *r.metrics.eta_base;
    log << '\n';
  }
}

}  // namespace

OutputBundle cmd_sweep(const Invocation& inv, std::ostream& log) {
  BundleWriter writer{inv.out_dir};
  OutputLock lock{inv.out_dir};
  const SweepResult sweep = run_sweep(inv.config);
  write_sweep_bundle(writer, sweep, recorded_invocation("sweep", inv));
  writer.commit();
  print_eta_table(sweep, log);
  return {writer.directory(), writer.files()};
}

OutputBundle cmd_nbeta(const Invocation& inv, std::ostream& log) {
  BundleWriter writer{inv.out_dir};
  OutputLock lock{inv.out_dir};
  const auto runs = nbeta_study(inv.config, inv.n_beta_list);
  write_nbeta_bundle(writer, runs, recorded_invocation("nbeta", inv));
  writer.commit();
  for (const auto& run : runs) print_eta_table(run.sweep, log);
  return {writer.directory(), writer.files()};
}

int cmd_validate(const Invocation& inv, std::ostream& out) {
  ValidationOptions options;
  options.workers = inv.config.workers;
  const auto report = run_validation(options);
  out << report.to_json().dump(2) << '\n';
  return report.passed() ? kExitOk : kExitFailure;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const Invocation inv = parse_config(args);
    if (!inv.help.empty()) {
      out << inv.help;
      return kExitOk;
    }
    if (inv.config.dist.even_q_flagged()) {
      err << "warning: even q = " << inv.config.dist.q()
          << " has no zero phase level; results are well defined but outside the odd-q"
             " family\n";
    }
    switch (inv.command) {
      case Command::Sweep:
        cmd_sweep(inv, out);
        return kExitOk;
      case Command::NBeta:
        cmd_nbeta(inv, out);
        return kExitOk;
      case Command::Validate:
        return cmd_validate(inv, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ArgumentError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return kExitResource;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::domain_error& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace roguewave
