#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "qlink/qlink.h"

int main(int argc, char** argv) {
  CLI::App app{"qlink: spin-1/2 quantum link model simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qlink_version()));

  std::string config, out;
  std::uint64_t seed = 0;
  int threads = 0, trajectories = 0;
  bool dump_basis = false, dump_operator = false;

  const char* commands[][2] = {
      {"params", "flux tuning curves of the circuit couplings"},
      {"spectrum", "eigenvalues of the microscopic or effective Hamiltonian"},
      {"spectroscopy", "steady-state populations under a weak drive"},
      {"evolve", "ring-exchange oscillations from a product state"},
      {"sweep", "adiabatic sweep of J and V"},
      {"disorder", "sweep averaged over random qubit detunings"},
      {"groundstate", "ground-state flux map of the effective model"},
  };
  for (auto& c : commands) {
    auto* sub = app.add_subcommand(c[0], c[1]);
    sub->add_option("--config,config", config, "configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory (overrides output.dir)");
    sub->add_option("--seed", seed, "random seed (overrides disorder.seed)");
    sub->add_option("--threads", threads, "worker thread cap")->check(CLI::NonNegativeNumber);
    sub->add_option("--trajectories", trajectories, "quantum trajectories instead of the master equation")
        ->check(CLI::NonNegativeNumber);
    sub->add_flag("--dump-basis", dump_basis, "write basis.txt");
    sub->add_flag("--dump-operator", dump_operator, "write the Hamiltonian as a coordinate list");
  }
  CLI11_PARSE(app, argc, argv);

  auto* sub = app.get_subcommands().front();
  qlink_run_options opts;
  qlink_run_options_init(&opts);
  opts.out_dir = out.empty() ? nullptr : out.c_str();
  opts.has_seed = sub->count("--seed") > 0;
  opts.seed = seed;
  opts.threads = threads;
  opts.trajectories = trajectories;
  opts.dump_basis = dump_basis;
  opts.dump_operator = dump_operator;

  qlink_status s = qlink_run(sub->get_name().c_str(), config.c_str(), &opts);
  if (s != QLINK_OK) {
    std::fprintf(stderr, "qlink %s: %s: %s\n", sub->get_name().c_str(), qlink_status_name(s), qlink_last_error());
    return 10 + static_cast<int>(s);
  }
  return 0;
}
