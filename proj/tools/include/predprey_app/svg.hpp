#pragma once

#include <string>
#include <vector>

namespace predprey::app {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Standalone SVG line chart. With `log_y` non-positive samples are skipped.
std::string line_chart(const std::string& title, const std::vector<Series>& series, bool log_y);

} // namespace predprey::app
