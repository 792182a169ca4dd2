#include "dlam/config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dlam/error.hpp"

namespace dlam {

namespace pt = boost::property_tree;
namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad(const std::string& origin, const std::string& key, const std::string& msg) {
  fail(ErrorKind::config, origin + ": " + key + ": " + msg);
}

double to_double(const std::string& origin, const std::string& key, const std::string& s) {
  double x = 0;
  auto first = s.data(), last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc{} || ptr != last || !std::isfinite(x))
    bad(origin, key, "expected a finite number, got '" + s + "'");
  return x;
}

int to_int(const std::string& origin, const std::string& key, const std::string& s) {
  int x = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    bad(origin, key, "expected an integer, got '" + s + "'");
  return x;
}

bool to_bool(const std::string& origin, const std::string& key, const std::string& s) {
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  bad(origin, key, "expected true or false, got '" + s + "'");
}

std::vector<double> to_list(const std::string& origin, const std::string& key,
                            const std::string& s, std::size_t n) {
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    if (!tok.empty() && tok.back() == ',') tok.pop_back();
    if (!tok.empty()) out.push_back(to_double(origin, key, tok));
  }
  if (out.size() != n)
    bad(origin, key, "expected " + std::to_string(n) + " values, got " + std::to_string(out.size()));
  return out;
}

template <class Map>
auto lookup(const std::string& origin, const std::string& key, const std::string& s,
            const Map& m) {
  auto it = m.find(s);
  if (it == m.end()) {
    std::string opts;
    for (const auto& [k, v] : m) opts += (opts.empty() ? "" : ", ") + k;
    bad(origin, key, "unknown value '" + s + "' (expected one of: " + opts + ")");
  }
  return it->second;
}

const std::map<std::string, ScanVariable> kScanVars{{"Omega4", ScanVariable::Omega4},
                                                    {"Z", ScanVariable::Z},
                                                    {"G10", ScanVariable::G10},
                                                    {"G30", ScanVariable::G30},
                                                    {"v", ScanVariable::v}};
const std::map<std::string, SweepVariable> kSweepVars{{"Omega4", SweepVariable::Omega4},
                                                      {"G10", SweepVariable::G10}};
const std::map<std::string, ProfileQuantity> kQuantities{
    {"dr1", ProfileQuantity::dr1},       {"dr2", ProfileQuantity::dr2},
    {"dr3", ProfileQuantity::dr3},       {"dr4", ProfileQuantity::dr4},
    {"alpha4", ProfileQuantity::alpha4}, {"stokes_gain", ProfileQuantity::stokes_gain}};
const std::map<std::string, GridScheme> kGrids{{"uniform", GridScheme::uniform},
                                               {"gauss_hermite", GridScheme::gauss_hermite}};
const std::map<std::string, Topology> kTopologies{{"open", Topology::open},
                                                  {"closed", Topology::closed}};

template <class Map, class V>
std::string name_of(const Map& m, V v) {
  for (const auto& [k, x] : m)
    if (x == v) return k;
  return "?";
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(12);
  s << x;
  return s.str();
}

template <class Arr>
std::string fmt_list(const Arr& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + fmt(a[i]);
  return s + "]";
}

struct FieldInput {
  std::array<double, 4> amp{}, phase{};
};

void apply(RunConfig& c, FieldInput& in, const std::string& section, const std::string& key,
           const std::string& val, const std::string& origin) {
  const std::string where = "[" + section + "] " + key;
  auto num = [&] { return to_double(origin, where, val); };
  auto& s = c.scheme;
  auto& f = c.fields;

  if (section == "scheme") {
    std::map<std::string, double*> rates{
        {"gamma_gl", &s.gamma.gl}, {"gamma_gn", &s.gamma.gn}, {"gamma_mn", &s.gamma.mn},
        {"gamma_ml", &s.gamma.ml}, {"Gamma_l", &s.width.l},   {"Gamma_g", &s.width.g},
        {"Gamma_n", &s.width.n},   {"Gamma_m", &s.width.m},   {"Gamma_lg", &s.coh.lg},
        {"Gamma_ng", &s.coh.ng},   {"Gamma_nm", &s.coh.nm},   {"Gamma_lm", &s.coh.lm},
        {"Gamma_ln", &s.coh.ln},   {"Gamma_gm", &s.coh.gm},   {"temperature", &s.temperature},
        {"molar_mass", &s.molar_mass}, {"occupancy", &s.occupancy}};
    if (auto it = rates.find(key); it != rates.end()) {
      *it->second = num();
    } else if (key == "preset") {
      if (val != "na2_hinze") bad(origin, where, "only the built-in scheme na2_hinze can be named here");
      s = na2_hinze();
    } else if (key == "topology") {
      s.topology = lookup(origin, where, val, kTopologies);
    } else if (key == "lambda") {
      auto v = to_list(origin, where, val, 4);
      std::copy(v.begin(), v.end(), s.lambda_nm.begin());
    } else if (key == "pump") {
      auto v = to_list(origin, where, val, 4);
      std::copy(v.begin(), v.end(), s.pump.begin());
    } else if (key == "alpha0") {
      if (val == "equal_dipole") {
        s.equal_dipole = true;
      } else {
        auto v = to_list(origin, where, val, 4);
        std::copy(v.begin(), v.end(), s.alpha0.begin());
        s.equal_dipole = false;
      }
    } else if (key == "propagation_sign") {
      auto v = to_list(origin, where, val, 4);
      for (int j = 0; j < 4; ++j) s.propagation_sign[j] = static_cast<int>(v[j]);
    } else if (key == "stokes_alt_denominator") {
      s.stokes_alt_denominator = to_bool(origin, where, val);
    } else {
      bad(origin, where, "unknown key");
    }
  } else if (section == "fields") {
    if (key == "units") {
      if (val == "MHz") c.caption_mhz = true;
      else if (val == "internal") c.caption_mhz = false;
      else bad(origin, where, "expected MHz or internal");
    } else if (key.size() == 2 && key[0] == 'G' && key[1] >= '1' && key[1] <= '4') {
      double a = num();
      if (a < 0) bad(origin, where, "Rabi amplitude must be >= 0 (use phaseN for sign)");
      in.amp[key[1] - '1'] = a;
    } else if (key.size() == 6 && key.rfind("phase", 0) == 0 && key[5] >= '1' && key[5] <= '4') {
      in.phase[key[5] - '1'] = num();
    } else if (key == "Omega1") {
      f.Omega1 = num();
    } else if (key == "Omega3") {
      f.Omega3 = num();
    } else if (key == "Omega4") {
      f.Omega4 = num();
    } else if (key == "Omega2") {
      bad(origin, where, "Omega2 is derived from Omega1 + Omega3 - Omega4 and cannot be set");
    } else {
      bad(origin, where, "unknown key");
    }
  } else if (section == "grid") {
    if (key == "scheme") c.grid.scheme = lookup(origin, where, val, kGrids);
    else if (key == "nodes") c.grid.nodes = to_int(origin, where, val);
    else if (key == "span") c.grid.span = num();
    else bad(origin, where, "unknown key");
  } else if (section == "propagation") {
    auto& p = c.prop;
    if (key == "zmax") p.zmax = num();
    else if (key == "step") p.step = num();
    else if (key == "sample") p.sample = num();
    else if (key == "recompute") p.recompute = to_bool(origin, where, val);
    else if (key == "sigma_off") p.sigma_off = to_bool(origin, where, val);
    else if (key == "dk_geom") p.dk_geom = num();
    else if (key == "max_step_change") p.max_step_change = num();
    else bad(origin, where, "unknown key");
  } else if (section == "scan") {
    auto& sc = c.scan;
    if (key == "variable") sc.variable = lookup(origin, where, val, kScanVars);
    else if (key == "from") sc.from = num();
    else if (key == "to") sc.to = num();
    else if (key == "count") sc.count = to_int(origin, where, val);
    else if (key == "peak_lo") sc.peak_lo = num();
    else if (key == "peak_hi") sc.peak_hi = num();
    else bad(origin, where, "unknown key");
  } else if (section == "switching") {
    auto& sw = c.switching;
    if (key == "variable") sw.variable = lookup(origin, where, val, kSweepVars);
    else if (key == "from") sw.from = num();
    else if (key == "to") sw.to = num();
    else if (key == "count") sw.count = to_int(origin, where, val);
    else if (key == "z") sw.z = num();
    else bad(origin, where, "unknown key");
  } else if (section == "velocity") {
    if (key == "quantity") c.velocity.quantity = lookup(origin, where, val, kQuantities);
    else if (key == "envelope") {
      if (val == "removed") c.velocity.remove_envelope = true;
      else if (val == "kept") c.velocity.remove_envelope = false;
      else bad(origin, where, "expected removed or kept");
    } else bad(origin, where, "unknown key");
  } else {
    bad(origin, "[" + section + "]", "unknown section");
  }
}

}  // namespace

VelocityGrid RunConfig::make_grid() const {
  if (grid.scheme == GridScheme::gauss_hermite) return VelocityGrid::gauss_hermite(scheme, grid.nodes);
  return VelocityGrid::uniform(scheme, grid.nodes, grid.span);
}

double RunConfig::to_file_units(double internal) const {
  return caption_mhz ? to_mhz(internal) : internal;
}

double RunConfig::from_file_units(double value) const {
  return caption_mhz ? from_mhz(value) : value;
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(ErrorKind::config, origin + ":" + std::to_string(e.line()) + ": " + e.message());
  }

  RunConfig c;
  c.scheme = na2_hinze();
  c.origin = origin;
  FieldInput fin;
  for (const auto& [section, body] : tree) {
    if (body.empty()) bad(origin, section, "key outside of any section");
    // Apply "preset" and "units" first so the remaining keys override them.
    for (const char* first : {"preset", "units"})
      if (auto v = body.get_optional<std::string>(first)) apply(c, fin, section, first, *v, origin);
    for (const auto& [key, node] : body) {
      if (key == "preset" || key == "units") continue;
      if (!node.empty()) bad(origin, section + "." + key, "nested keys are not supported");
      apply(c, fin, section, key, node.data(), origin);
    }
  }
  for (int j = 0; j < 4; ++j) c.fields.G[j] = std::polar(c.from_file_units(fin.amp[j]), fin.phase[j]);
  c.fields.Omega1 = c.from_file_units(c.fields.Omega1);
  c.fields.Omega3 = c.from_file_units(c.fields.Omega3);
  c.fields.Omega4 = c.from_file_units(c.fields.Omega4);

  if (c.grid.nodes < 1) bad(origin, "[grid] nodes", "must be >= 1");
  if (!(c.grid.span > 0)) bad(origin, "[grid] span", "must be positive");
  if (!(c.prop.step > 0)) bad(origin, "[propagation] step", "must be positive");
  if (!(c.prop.zmax >= 0)) bad(origin, "[propagation] zmax", "must be >= 0");
  if (!(c.prop.sample > 0)) bad(origin, "[propagation] sample", "must be positive");
  if (c.scan.count < 2) bad(origin, "[scan] count", "must be >= 2");
  if (c.switching.count < 2) bad(origin, "[switching] count", "must be >= 2");
  if (!(c.switching.z > 0)) bad(origin, "[switching] z", "must be positive");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::config, "cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::string preset_dir() {
  if (const char* env = std::getenv("DLAM_PRESET_DIR")) return env;
  return DLAM_PRESET_DIR;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(preset_dir(), ec))
    if (e.path().extension() == ".ini") names.push_back(e.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

RunConfig load_preset(const std::string& name) {
  fs::path file = fs::path(preset_dir()) / (name + ".ini");
  if (fs::exists(file)) return load_config(file.string());
  if (name == "na2_hinze") {
    RunConfig c;
    c.scheme = na2_hinze();
    c.origin = "preset:na2_hinze";
    return c;
  }
  fail(ErrorKind::config, "unknown preset '" + name + "' (looked in " + preset_dir() + ")");
}

std::string describe(const RunConfig& c) {
  const auto& s = c.scheme;
  const auto& f = c.fields;
  std::ostringstream o;
  o << "# source: " << c.origin << "\n";
  o << "# units: rates internal 1e6 s^-1 (angular); fields " << (c.caption_mhz ? "MHz (ordinary)" : "internal") << "\n";
  o << "# scheme:\n";
  o << "#   topology: " << name_of(kTopologies, s.topology) << "\n";
  o << "#   lambda_nm: " << fmt_list(s.lambda_nm) << "\n";
  o << "#   gamma: {gl: " << fmt(s.gamma.gl) << ", gn: " << fmt(s.gamma.gn) << ", mn: " << fmt(s.gamma.mn)
    << ", ml: " << fmt(s.gamma.ml) << "}\n";
  o << "#   Gamma_level: {l: " << fmt(s.width.l) << ", g: " << fmt(s.width.g) << ", n: " << fmt(s.width.n)
    << ", m: " << fmt(s.width.m) << "}\n";
  o << "#   Gamma_coh: {lg: " << fmt(s.coh.lg) << ", ng: " << fmt(s.coh.ng) << ", nm: " << fmt(s.coh.nm)
    << ", lm: " << fmt(s.coh.lm) << ", ln: " << fmt(s.coh.ln) << ", gm: " << fmt(s.coh.gm) << "}\n";
  o << "#   pump: " << fmt_list(s.pump) << "\n";
  if (s.topology == Topology::open) o << "#   occupancy: " << fmt(s.occupancy) << "\n";
  o << "#   temperature: " << fmt(s.temperature) << "\n";
  o << "#   molar_mass: " << fmt(s.molar_mass) << "\n";
  o << "#   alpha0: " << (s.equal_dipole ? std::string("equal_dipole") : fmt_list(s.alpha0)) << "\n";
  o << "#   propagation_sign: " << fmt_list(s.propagation_sign) << "\n";
  o << "#   stokes_alt_denominator: " << (s.stokes_alt_denominator ? "true" : "false") << "\n";
  o << "# fields:\n";
  for (int j = 0; j < 4; ++j)
    o << "#   G" << j + 1 << ": {abs: " << fmt(c.to_file_units(std::abs(f.G[j]))) << ", phase: "
      << fmt(std::arg(f.G[j])) << "}\n";
  o << "#   Omega: [" << fmt(c.to_file_units(f.Omega1)) << ", " << fmt(c.to_file_units(f.Omega2())) << ", "
    << fmt(c.to_file_units(f.Omega3)) << ", " << fmt(c.to_file_units(f.Omega4)) << "]\n";
  o << "# grid: {scheme: " << name_of(kGrids, c.grid.scheme) << ", nodes: " << c.grid.nodes
    << ", span: " << fmt(c.grid.span) << "}\n";
  const auto& p = c.prop;
  o << "# propagation: {zmax: " << fmt(p.zmax) << ", step: " << fmt(p.step) << ", sample: " << fmt(p.sample)
    << ", recompute: " << (p.recompute ? "true" : "false") << ", sigma_off: " << (p.sigma_off ? "true" : "false")
    << ", dk_geom: " << fmt(p.dk_geom) << "}\n";
  o << "# scan: {variable: " << name_of(kScanVars, c.scan.variable) << ", from: " << fmt(c.scan.from)
    << ", to: " << fmt(c.scan.to) << ", count: " << c.scan.count << "}\n";
  o << "# switching: {variable: " << name_of(kSweepVars, c.switching.variable) << ", from: "
    << fmt(c.switching.from) << ", to: " << fmt(c.switching.to) << ", count: " << c.switching.count
    << ", z: " << fmt(c.switching.z) << "}\n";
  o << "# velocity: {quantity: " << name_of(kQuantities, c.velocity.quantity)
    << ", envelope: " << (c.velocity.remove_envelope ? "removed" : "kept") << "}\n";
  if (auto warn = resolution_warning(s, c.make_grid()); !warn.empty()) o << "# warning: " << warn << "\n";
  return o.str();
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

std::string ValidationReport::text() const {
  std::ostringstream o;
  for (const auto& c : checks)
    o << (c.ok ? "ok    " : "FAIL  ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  return o.str();
}

ValidationReport validate_config(const RunConfig& c) {
  ValidationReport r;
  r.checks = check(c.scheme);
  const auto& s = c.scheme;
  auto echo = [&](std::string name, std::string detail) { r.checks.push_back({std::move(name), true, std::move(detail)}); };
  bool temp_ok = s.temperature > 0 && s.molar_mass > 0;
  if (temp_ok) {
    echo("thermal speed", fmt(thermal_speed(s)) + " m/s");
    echo("probe Doppler FWHM", fmt(doppler_fwhm(s, 3)) + " GHz");
    echo("Raman Doppler FWHM", fmt(raman_doppler_fwhm(s) * 1e3) + " MHz");
  }
  echo("Raman homogeneous FWHM", fmt(raman_homogeneous_fwhm(s)) + " MHz");
  echo("Omega2", fmt(c.to_file_units(c.fields.Omega2())) + (c.caption_mhz ? " MHz" : " internal"));
  if (r.ok()) {
    auto n = zero_field_populations(s);
    echo("zero-field populations", fmt_list(n));
    bool absorbing = n[0] - n[3] > 0;
    r.checks.push_back({"probe transition absorbing at zero field", absorbing, "dn4 = " + fmt(n[0] - n[3])});
    auto warn = resolution_warning(s, c.make_grid());
    r.checks.push_back({"velocity grid resolution", warn.empty(), warn});
  }
  return r;
}

ValidationReport validate_config(const std::string& path) { return validate_config(load_config(path)); }

}  // namespace dlam
