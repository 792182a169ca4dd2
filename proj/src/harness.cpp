#include "dlam/harness.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "dlam/error.hpp"
#include "dlam/parallel.hpp"

namespace dlam {

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  fail(ErrorKind::misuse, "no column named " + name);
}

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return x;
}

void validated(const RunConfig& c) { validate(c.scheme); }

}  // namespace

Table run_spectrum(const RunConfig& c) {
  validated(c);
  const auto& sc = c.scan;
  std::string var;
  switch (sc.variable) {
    case ScanVariable::Omega4: var = "Omega4"; break;
    case ScanVariable::G10: var = "G10"; break;
    case ScanVariable::G30: var = "G30"; break;
    default: fail(ErrorKind::config, "spectrum scans Omega4, G10 or G30");
  }
  const auto grid = c.make_grid();
  const auto k = doppler_coupling(c.scheme, grid);
  const auto xs = linspace(sc.from, sc.to, sc.count);
  Table t;
  t.columns = {var, "alpha4", "g2", "delta_k4", "delta_k2"};
  t.rows.resize(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    FieldState f = c.fields;
    const double x = c.from_file_units(xs[i]);
    if (sc.variable == ScanVariable::Omega4) f.Omega4 = x;
    else if (sc.variable == ScanVariable::G10) f.G[0] = std::polar(x, std::arg(c.fields.G[0]));
    else f.G[2] = std::polar(x, std::arg(c.fields.G[2]));
    auto s = average_susceptibility(c.scheme, f, grid, k);
    t.rows[i] = {xs[i], s.alpha(3), -s.alpha(1), s.dk(3), s.dk(1)};
  }, 1);
  return t;
}

namespace {

Table trace_table(const RunConfig& c, const PropagationTrace& tr) {
  Table t;
  t.columns = {"Z"};
  for (int j = 1; j <= 4; ++j) {
    t.columns.push_back("re_G" + std::to_string(j));
    t.columns.push_back("im_G" + std::to_string(j));
  }
  for (const char* n : {"T4", "T1", "N1", "N2", "N3", "N4", "theta", "psi"}) t.columns.push_back(n);
  for (const auto& r : tr.rows) {
    std::vector<double> row{r.Z};
    for (const auto& g : r.G) {
      row.push_back(c.to_file_units(g.real()));
      row.push_back(c.to_file_units(g.imag()));
    }
    row.insert(row.end(), {r.T4, r.T1, r.N[0], r.N[1], r.N[2], r.N[3], r.theta, r.psi});
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

Table run_propagation(const RunConfig& c) {
  validated(c);
  const auto grid = c.make_grid();
  return trace_table(c, integrate(c.scheme, c.fields, grid, c.prop));
}

Table run_manley_rowe(const RunConfig& c) {
  validated(c);
  auto opt = c.prop;
  opt.sigma_off = true;
  const auto grid = c.make_grid();
  auto rep = manley_rowe_report(integrate(c.scheme, c.fields, grid, opt));
  Table t;
  t.columns = {"Z", "dN1", "dN2", "dN3", "dN4", "D"};
  for (const auto& r : rep) t.rows.push_back({r.Z, r.dN[0], r.dN[1], r.dN[2], r.dN[3], r.defect});
  return t;
}

Table run_switching(const RunConfig& c) {
  validated(c);
  const auto& sw = c.switching;
  const auto grid = c.make_grid();
  const auto k = doppler_coupling(c.scheme, grid);
  auto xs = linspace(sw.from, sw.to, sw.count);
  std::vector<double> internal(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) internal[i] = c.from_file_units(xs[i]);
  auto rows = switching_curve(c.scheme, c.fields, grid, k, c.prop, sw.z, sw.variable, internal);
  Table t;
  t.columns = {sw.variable == SweepVariable::Omega4 ? "Omega4" : "G10", "T4"};
  for (std::size_t i = 0; i < rows.size(); ++i) t.rows.push_back({xs[i], rows[i].T});
  return t;
}

Table run_velocity(const RunConfig& c) {
  validated(c);
  const auto grid = c.make_grid();
  const auto k = doppler_coupling(c.scheme, grid);
  auto prof = velocity_profile(c.scheme, c.fields, grid, c.velocity.quantity, k,
                               c.velocity.remove_envelope);
  Table t;
  t.columns = {"v_over_u", "weight", "quantity_re", "quantity_im"};
  for (const auto& r : prof) t.rows.push_back({r.v_over_u, r.weight, r.value.real(), r.value.imag()});
  return t;
}

std::string to_csv(const RunConfig& c, const Table& t) {
  std::string out = describe(c);
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += "\n";
  char buf[32];
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.12g", r[i]);
      out += (i ? "," : "");
      out += buf;
    }
    out += "\n";
  }
  return out;
}

void write_csv(const std::string& path, const RunConfig& c, const Table& t) {
  const std::string text = to_csv(c, t);
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io, "cannot open output file " + path);
  out << text;
  if (!out) fail(ErrorKind::io, "write failed for " + path);
}

}  // namespace dlam
