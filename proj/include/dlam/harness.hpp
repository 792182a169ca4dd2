#pragma once

#include <string>
#include <vector>

#include "dlam/config.hpp"

namespace dlam {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;
};

Table run_spectrum(const RunConfig& c);
Table run_propagation(const RunConfig& c);
Table run_manley_rowe(const RunConfig& c);
Table run_switching(const RunConfig& c);
Table run_velocity(const RunConfig& c);

// CSV with the resolved configuration as a comment header. "-" writes to stdout.
void write_csv(const std::string& path, const RunConfig& c, const Table& t);
std::string to_csv(const RunConfig& c, const Table& t);

}  // namespace dlam
