#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dlam/dlam.h"

namespace {

struct Handle {
  dlam_config* p = nullptr;
  ~Handle() { dlam_config_free(p); }
};

std::string temp_file(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("preset handle and scalar queries") {
  Handle h;
  REQUIRE(dlam_config_preset("na2_hinze", &h.p) == DLAM_OK);
  double u = 0, d4 = 0, raman = 0, bf = 0;
  CHECK(dlam_thermal_speed(h.p, &u) == DLAM_OK);
  CHECK(u == doctest::Approx(497.0).epsilon(1e-3));
  CHECK(dlam_doppler_fwhm(h.p, 4, &d4) == DLAM_OK);
  CHECK(d4 == doctest::Approx(1.72).epsilon(0.01));
  CHECK(dlam_raman_doppler_fwhm(h.p, &raman) == DLAM_OK);
  CHECK(raman == doctest::Approx(0.17).epsilon(0.02));
  CHECK(dlam_boltzmann_fraction_n(h.p, &bf) == DLAM_OK);
  CHECK(bf == doctest::Approx(0.0136).epsilon(0.03));
}

TEST_CASE("misuse is reported, not crashed on") {
  double x = 0;
  CHECK(dlam_thermal_speed(nullptr, &x) == DLAM_ERR_MISUSE);
  CHECK(std::strlen(dlam_last_error()) > 0);
  Handle h;
  REQUIRE(dlam_config_preset("na2_hinze", &h.p) == DLAM_OK);
  CHECK(dlam_doppler_fwhm(h.p, 0, &x) != DLAM_OK);
  CHECK(dlam_doppler_fwhm(h.p, 5, &x) != DLAM_OK);
  CHECK(dlam_thermal_speed(h.p, nullptr) == DLAM_ERR_MISUSE);
  CHECK(dlam_config_set_nodes(h.p, 0) == DLAM_ERR_CONFIG);
  CHECK(dlam_config_set_step(h.p, -1) == DLAM_ERR_CONFIG);
  CHECK(dlam_run(h.p, "dance", "-") == DLAM_ERR_MISUSE);
  CHECK(std::string(dlam_last_error()).find("dance") != std::string::npos);
  dlam_config_free(nullptr);
}

TEST_CASE("configuration errors map to the config status") {
  dlam_config* p = nullptr;
  CHECK(dlam_config_preset("no_such_preset", &p) == DLAM_ERR_CONFIG);
  CHECK(p == nullptr);
  CHECK(dlam_config_load("/nonexistent/file.ini", &p) == DLAM_ERR_CONFIG);
  auto path = temp_file("dlam_capi_bad.ini");
  std::ofstream(path) << "[fields]\nOmega2 = 3\n";
  CHECK(dlam_config_load(path.c_str(), &p) == DLAM_ERR_CONFIG);
  CHECK(std::string(dlam_last_error()).find("Omega2") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("validation report") {
  Handle h;
  REQUIRE(dlam_config_preset("fig9a", &h.p) == DLAM_OK);
  char buf[8192];
  int failures = -1;
  REQUIRE(dlam_validate(h.p, buf, sizeof buf, &failures) == DLAM_OK);
  CHECK(failures == 0);
  CHECK(std::string(buf).find("frequency matching") != std::string::npos);
  char tiny[8];
  CHECK(dlam_validate(h.p, tiny, sizeof tiny, &failures) == DLAM_OK);
  CHECK(std::strlen(tiny) == 7);
  REQUIRE(dlam_config_set_nodes(h.p, 11) == DLAM_OK);
  CHECK(dlam_validate(h.p, buf, sizeof buf, &failures) == DLAM_OK);
  CHECK(failures > 0);
}

TEST_CASE("run writes a CSV with a header") {
  auto path = temp_file("dlam_capi_run.csv");
  auto ini = temp_file("dlam_capi_run.ini");
  std::ofstream(ini) << "[scheme]\npreset = na2_hinze\n[fields]\nG1 = 60\nG3 = 20\nOmega4 = 35\n"
                        "G4 = 0.0001\n[grid]\nnodes = 101\n[propagation]\nzmax = 0.3\n";
  Handle h;
  REQUIRE(dlam_config_load(ini.c_str(), &h.p) == DLAM_OK);
  REQUIRE(dlam_config_set_step(h.p, 0.02) == DLAM_OK);
  REQUIRE(dlam_run(h.p, "propagate", path.c_str()) == DLAM_OK);
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  CHECK(s.str().rfind("# source: ", 0) == 0);
  CHECK(s.str().find("step: 0.02") != std::string::npos);
  CHECK(s.str().find("\nZ,re_G1,im_G1") != std::string::npos);
  CHECK(dlam_run(h.p, "propagate", "/nonexistent/dir/x.csv") == DLAM_ERR_IO);
  std::filesystem::remove(path);
  std::filesystem::remove(ini);
}

TEST_CASE("numerical failures map to the numerical status") {
  auto ini = temp_file("dlam_capi_step.ini");
  std::ofstream(ini) << "[scheme]\npreset = na2_hinze\n[fields]\nG4 = 0.0001\n[grid]\nnodes = 1\n"
                        "[propagation]\nzmax = 2\nstep = 1\n";
  Handle h;
  REQUIRE(dlam_config_load(ini.c_str(), &h.p) == DLAM_OK);
  CHECK(dlam_run(h.p, "propagate", "-") == DLAM_ERR_NUMERICAL);
  CHECK(std::string(dlam_last_error()).find("step") != std::string::npos);
  std::filesystem::remove(ini);
}

TEST_CASE("preset listing") {
  int n = dlam_preset_count();
  CHECK(n >= 23);
  bool found = false;
  for (int i = 0; i < n; ++i) found |= std::strcmp(dlam_preset_name(i), "fig7_g1000") == 0;
  CHECK(found);
  CHECK(dlam_preset_name(-1) == nullptr);
  CHECK(dlam_preset_name(n) == nullptr);
}
