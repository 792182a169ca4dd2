#pragma once

#include <string>
#include <vector>

#include "dlam/doppler.hpp"
#include "dlam/propagate.hpp"

namespace dlam {

enum class ScanVariable { Omega4, Z, G10, G30, v };

struct ScanSpec {
  ScanVariable variable = ScanVariable::Omega4;
  double from = -3000, to = 3000;  // MHz for frequencies and Rabi amplitudes, v/u for v
  int count = 601;
  // Optional peak report window for spectra (MHz); inactive when lo >= hi.
  double peak_lo = 0, peak_hi = 0;
};

struct GridSpec {
  GridScheme scheme = GridScheme::uniform;
  int nodes = kDefaultNodes;
  double span = 5.0;
};

struct SwitchingSpec {
  SweepVariable variable = SweepVariable::Omega4;
  double from = 0, to = 70;  // MHz
  int count = 71;
  double z = 2;
};

struct VelocitySpec {
  ProfileQuantity quantity = ProfileQuantity::alpha4;
  bool remove_envelope = true;
};

struct RunConfig {
  SchemeParams scheme;
  FieldState fields;
  bool caption_mhz = true;  // field values in the file are ordinary MHz (else internal units)
  GridSpec grid;
  PropagationOptions prop;
  ScanSpec scan;
  SwitchingSpec switching;
  VelocitySpec velocity;
  std::string origin;

  VelocityGrid make_grid() const;
  // Field amplitudes and detunings as written in the file from internal values and back.
  double to_file_units(double internal) const;
  double from_file_units(double value) const;
};

// Parses key = value text with [sections]. Throws config errors naming the line or key.
RunConfig parse_config(const std::string& text, const std::string& origin);
RunConfig load_config(const std::string& path);
// Built-in na2_hinze or a preset file from the preset directory.
RunConfig load_preset(const std::string& name);
std::string preset_dir();
std::vector<std::string> preset_names();

// Comment-prefixed YAML-like dump of the resolved configuration.
std::string describe(const RunConfig& c);

struct ValidationReport {
  std::vector<Check> checks;
  bool ok() const;
  std::string text() const;
};
ValidationReport validate_config(const RunConfig& c);
ValidationReport validate_config(const std::string& path);

}  // namespace dlam
