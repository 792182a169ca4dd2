#include "dlam/dlam.h"

#include <cstring>
#include <string>

#include "dlam/error.hpp"
#include "dlam/harness.hpp"

struct dlam_config {
  dlam::RunConfig cfg;
};

namespace {

thread_local std::string last_error;

dlam_status code_of(dlam::ErrorKind k) {
  switch (k) {
    case dlam::ErrorKind::config: return DLAM_ERR_CONFIG;
    case dlam::ErrorKind::numerical: return DLAM_ERR_NUMERICAL;
    case dlam::ErrorKind::io: return DLAM_ERR_IO;
    case dlam::ErrorKind::misuse: return DLAM_ERR_MISUSE;
  }
  return DLAM_ERR_MISUSE;
}

template <class Fn>
dlam_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return DLAM_OK;
  } catch (const dlam::Error& e) {
    last_error = e.what();
    return code_of(e.kind());
  } catch (const std::exception& e) {
    last_error = e.what();
    return DLAM_ERR_MISUSE;
  }
}

dlam_status null_arg(const char* what) {
  last_error = std::string("null argument: ") + what;
  return DLAM_ERR_MISUSE;
}

}  // namespace

extern "C" {

const char* dlam_last_error(void) { return last_error.c_str(); }

dlam_status dlam_config_load(const char* path, dlam_config** out) {
  if (!path || !out) return null_arg("path/out");
  return guarded([&] { *out = new dlam_config{dlam::load_config(path)}; });
}

dlam_status dlam_config_preset(const char* name, dlam_config** out) {
  if (!name || !out) return null_arg("name/out");
  return guarded([&] { *out = new dlam_config{dlam::load_preset(name)}; });
}

void dlam_config_free(dlam_config* cfg) { delete cfg; }

dlam_status dlam_config_set_nodes(dlam_config* cfg, int nodes) {
  if (!cfg) return null_arg("cfg");
  return guarded([&] {
    if (nodes < 1) dlam::fail(dlam::ErrorKind::config, "nodes must be >= 1");
    cfg->cfg.grid.nodes = nodes;
  });
}

dlam_status dlam_config_set_step(dlam_config* cfg, double step) {
  if (!cfg) return null_arg("cfg");
  return guarded([&] {
    if (!(step > 0)) dlam::fail(dlam::ErrorKind::config, "step must be positive");
    cfg->cfg.prop.step = step;
  });
}

dlam_status dlam_validate(const dlam_config* cfg, char* buf, size_t cap, int* failures) {
  if (!cfg) return null_arg("cfg");
  return guarded([&] {
    auto rep = dlam::validate_config(cfg->cfg);
    int n = 0;
    for (const auto& c : rep.checks) n += !c.ok;
    if (failures) *failures = n;
    if (buf && cap) {
      std::string text = rep.text();
      std::size_t len = std::min(cap - 1, text.size());
      std::memcpy(buf, text.data(), len);
      buf[len] = '\0';
    }
  });
}

dlam_status dlam_run(const dlam_config* cfg, const char* verb, const char* out_path) {
  if (!cfg || !verb || !out_path) return null_arg("cfg/verb/out_path");
  return guarded([&] {
    const std::string v = verb;
    const auto& c = cfg->cfg;
    dlam::Table t;
    if (v == "spectrum") t = dlam::run_spectrum(c);
    else if (v == "propagate") t = dlam::run_propagation(c);
    else if (v == "switching") t = dlam::run_switching(c);
    else if (v == "velocity") t = dlam::run_velocity(c);
    else if (v == "manley-rowe") t = dlam::run_manley_rowe(c);
    else dlam::fail(dlam::ErrorKind::misuse, "unknown verb " + v);
    dlam::write_csv(out_path, c, t);
  });
}

dlam_status dlam_thermal_speed(const dlam_config* cfg, double* out) {
  if (!cfg || !out) return null_arg("cfg/out");
  return guarded([&] { *out = dlam::thermal_speed(cfg->cfg.scheme); });
}

dlam_status dlam_doppler_fwhm(const dlam_config* cfg, int beam, double* out) {
  if (!cfg || !out) return null_arg("cfg/out");
  return guarded([&] {
    if (beam < 1 || beam > 4) dlam::fail(dlam::ErrorKind::misuse, "beam must be 1..4");
    *out = dlam::doppler_fwhm(cfg->cfg.scheme, beam - 1);
  });
}

dlam_status dlam_raman_doppler_fwhm(const dlam_config* cfg, double* out) {
  if (!cfg || !out) return null_arg("cfg/out");
  return guarded([&] { *out = dlam::raman_doppler_fwhm(cfg->cfg.scheme); });
}

dlam_status dlam_boltzmann_fraction_n(const dlam_config* cfg, double* out) {
  if (!cfg || !out) return null_arg("cfg/out");
  return guarded([&] {
    *out = dlam::boltzmann_fraction(cfg->cfg.scheme, dlam::Level::n, dlam::Level::l);
  });
}

int dlam_preset_count(void) { return static_cast<int>(dlam::preset_names().size()); }

const char* dlam_preset_name(int index) {
  thread_local std::string name;
  auto names = dlam::preset_names();
  if (index < 0 || index >= static_cast<int>(names.size())) return nullptr;
  name = names[index];
  return name.c_str();
}

}  // extern "C"
