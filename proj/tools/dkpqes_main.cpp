#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "dkpqes/cli.hpp"

namespace {

std::string read_config(const std::string& path) {
  if (path.empty()) return "{}";
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw dkpqes::cli::ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace dkpqes::cli;

  CLI::App app{"spectra of inverse-quartic radial problems for spin-one Kratzer sectors"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;

  auto add = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "JSON config path, or '-' for stdin");
    sub->add_option("--out", out_path, "output file path (default: stdout)");
    return sub;
  };

  CLI::App* spectrum = add("spectrum", "closed-form level energies for one sector");
  CLI::App* wavefunction = add("wavefunction", "radial solution sampled on a log grid (CSV)");
  CLI::App* constraint = add("constraint", "roots of the determinant constraint in a freed parameter");
  CLI::App* scan = add("scan", "sweep one potential parameter and emit levels as CSV");
  CLI::App* verify = add("verify", "run the internal verification suite");
  verify->add_option("--seed", seed, "RNG seed for the randomized checks");
  CLI::App* classify = add("classify", "Heun class of a sector equation or a custom potential");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig cfg = parse_config(read_config(config_path));
    if (verify->parsed() && verify->count("--seed") > 0) cfg.seed = seed;

    std::ofstream file;
    std::ostream* sink = &std::cout;
    const std::string target = !out_path.empty() ? out_path : cfg.out.value_or("");
    if (!target.empty() && target != "-") {
      file.open(target);
      if (!file) {
        std::cerr << "cannot open output path: " << target << "\n";
        return kExitUsage;
      }
      sink = &file;
    }

    int code = kExitUsage;
    if (spectrum->parsed()) code = cmd_spectrum(cfg, *sink, std::cerr);
    else if (wavefunction->parsed()) code = cmd_wavefunction(cfg, *sink, std::cerr);
    else if (constraint->parsed()) code = cmd_constraint(cfg, *sink, std::cerr);
    else if (scan->parsed()) code = cmd_scan(cfg, *sink, std::cerr);
    else if (verify->parsed()) code = cmd_verify(cfg, *sink, std::cerr);
    else if (classify->parsed()) code = cmd_classify(cfg, *sink, std::cerr);

    if (file.is_open()) {
      file.flush();
      if (!file) {
        std::cerr << "write failure: " << target << "\n";
        return kExitUsage;
      }
    }
    return code;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
}
