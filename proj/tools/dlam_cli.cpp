#include <CLI11.hpp>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "dlam/dlam.h"

namespace {

struct Common {
  std::string config, preset, out = "-";
  int nodes = 0;
  double step = 0;
};

int exit_code(dlam_status s) {
  switch (s) {
    case DLAM_OK: return 0;
    case DLAM_ERR_CONFIG: return 2;
    case DLAM_ERR_NUMERICAL: return 3;
    default: return 1;
  }
}

int report(dlam_status s) {
  if (s != DLAM_OK) std::fprintf(stderr, "dlam: %s\n", dlam_last_error());
  return exit_code(s);
}

dlam_status open_config(const Common& c, dlam_config** cfg) {
  dlam_status s;
  if (!c.config.empty()) s = dlam_config_load(c.config.c_str(), cfg);
  else s = dlam_config_preset(c.preset.empty() ? "na2_hinze" : c.preset.c_str(), cfg);
  if (s != DLAM_OK) return s;
  if (c.nodes > 0 && (s = dlam_config_set_nodes(*cfg, c.nodes)) != DLAM_OK) return s;
  if (c.step > 0 && (s = dlam_config_set_step(*cfg, c.step)) != DLAM_OK) return s;
  return DLAM_OK;
}

// Failed validation checks are echoed as warnings; hard errors surface from the run itself.
void warn_failed_checks(const dlam_config* cfg) {
  std::vector<char> buf(1 << 16);
  int failures = 0;
  if (dlam_validate(cfg, buf.data(), buf.size(), &failures) != DLAM_OK || failures == 0) return;
  std::istringstream in(buf.data());
  for (std::string line; std::getline(in, line);)
    if (line.rfind("FAIL", 0) == 0) std::fprintf(stderr, "dlam: warning: %s\n", line.substr(6).c_str());
}

int run_verb(const std::string& verb, const Common& c) {
  dlam_config* cfg = nullptr;
  dlam_status s = open_config(c, &cfg);
  if (s == DLAM_OK) {
    warn_failed_checks(cfg);
    s = dlam_run(cfg, verb.c_str(), c.out.c_str());
  }
  int code = report(s);
  dlam_config_free(cfg);
  return code;
}

int run_validate(const Common& c) {
  dlam_config* cfg = nullptr;
  dlam_status s = open_config(c, &cfg);
  if (s != DLAM_OK) {
    dlam_config_free(cfg);
    return report(s);
  }
  std::vector<char> buf(1 << 16);
  int failures = 0;
  s = dlam_validate(cfg, buf.data(), buf.size(), &failures);
  dlam_config_free(cfg);
  if (s != DLAM_OK) return report(s);
  std::fputs(buf.data(), stdout);
  if (failures) {
    std::fprintf(stderr, "dlam: %d check(s) failed\n", failures);
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double-lambda four-wave mixing and inversionless amplification simulator"};
  app.require_subcommand(1);
  Common common;

  const std::vector<std::pair<std::string, std::string>> verbs{
      {"spectrum", "Doppler-averaged alpha4, Stokes gain and dispersion vs the scan variable"},
      {"propagate", "Coupled-wave propagation trace along Z"},
      {"switching", "Probe transmission at fixed Z vs Omega4 or G10"},
      {"velocity", "Per-velocity-class dump of a chosen quantity"},
      {"manley-rowe", "Photon-number changes with absorption and refraction switched off"},
      {"validate", "Check a configuration and print the report"}};
  std::string chosen;
  for (const auto& [name, help] : verbs) {
    auto* sub = app.add_subcommand(name, help);
    auto* src = sub->add_option("--config", common.config, "Configuration file");
    sub->add_option("--preset", common.preset, "Named preset (default na2_hinze)")->excludes(src);
    sub->add_option("--out", common.out, "Output CSV path, - for stdout");
    sub->add_option("--nodes", common.nodes, "Velocity grid nodes")->check(CLI::PositiveNumber);
    sub->add_option("--step", common.step, "Propagation step in Z")->check(CLI::PositiveNumber);
    sub->callback([&chosen, n = name] { chosen = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (chosen == "validate") return run_validate(common);
  return run_verb(chosen, common);
}
