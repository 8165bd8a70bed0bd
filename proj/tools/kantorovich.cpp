// Command line front end: certify, convergence, modular, reconstruct.

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kantorovich/config.hpp"
#include "kantorovich/error.hpp"
#include "kantorovich/experiment.hpp"

namespace {

constexpr int kConfigFailure = 1;
constexpr int kNumericFailure = 2;
constexpr int kBoundViolation = 3;

struct Options {
  std::string config;
  std::string out = ".";
  int threads = 1;
  bool verbose = false;
  bool strict = false;
};

std::string output_path(const Options& o, const std::string& configured, const std::string& fallback) {
  return (std::filesystem::path(o.out) / (configured.empty() ? fallback : configured)).string();
}

int run(const std::string& verb, const Options& o) {
  using namespace kantorovich;
  const ExperimentConfig cfg = load_config(o.config);
  std::ostream* log = o.verbose ? &std::cerr : nullptr;
  if (verb == "certify") {
    const CertifyReport r = run_certify(cfg, o.threads, log);
    write_atomic(output_path(o, cfg.json, "certify.json"), r.json);
    return 0;
  }
  if (verb == "reconstruct") {
    const ReconstructReport r = run_reconstruct(cfg, o.threads, log);
    write_atomic(output_path(o, cfg.csv, "reconstruct.csv"), r.csv);
    write_atomic(output_path(o, cfg.json, "reconstruct.json"), r.json);
    return 0;
  }
  const ExperimentReport r =
      verb == "convergence" ? run_convergence(cfg, o.threads, log) : run_modular(cfg, o.threads, log);
  write_atomic(output_path(o, cfg.csv, verb + ".csv"), r.to_csv());
  write_atomic(output_path(o, cfg.json, verb + ".json"), r.to_json());
  if (o.verbose && r.fit) std::cerr << "fitted slope " << r.fit->slope << '\n';
  if (r.violations() > 0) {
    std::cerr << r.violations() << " bound violation(s)\n";
    if (o.strict) return kBoundViolation;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling Kantorovich operator experiments"};
  app.require_subcommand(1);
  Options o;
  std::string verb;
  for (const char* name : {"certify", "convergence", "modular", "reconstruct"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", o.config, "experiment config file")->required();
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--verbose", o.verbose, "progress on stderr");
    sub->add_flag("--strict", o.strict, "exit 3 on any bound violation");
    sub->callback([&verb, name] { verb = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigFailure;
  }
  try {
    return run(verb, o);
  } catch (const kantorovich::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == kantorovich::ErrorKind::config ? kConfigFailure : kNumericFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericFailure;
  }
}
