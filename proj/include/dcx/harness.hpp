// Experiment orchestration: JSON configs, deterministic CSV tables, a plain
// text summary of every check, and a minimal SVG line chart.

#ifndef DCX_HARNESS_HPP
#define DCX_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace dcx {

// Malformed config or plot request; the CLI maps it to a usage error.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string experiment = "all";
  std::uint64_t seed = 1;
  std::filesystem::path out = "out";
  int bridge_instances = 100;
  int census_n_max = 4;
  std::vector<int> trend_n{10, 20, 30};
  double delta = 0.1;
  int delta_n_max = 120;
  // Also run the exact k=2 hardest-class search (about 15 s).
  bool hardest_k2 = false;
  int bounds_m = 2;
  double bounds_c = 0.1;
  long long bounds_n_max = 1'000'000;
};

// Unknown keys and wrong value types are rejected.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

const std::vector<std::string>& experiment_names();

struct Check {
  std::string label;
  bool pass = false;
  std::string detail;
};

struct ExperimentReport {
  std::string name;
  std::vector<Check> checks;
  std::vector<std::filesystem::path> files;
  bool passed() const;
};

// Writes <out>/<experiment>/*.csv and <out>/summary.txt.
std::vector<ExperimentReport> run_experiments(const ExperimentConfig& config);

// ------------------------------------------------------------------- csv

// "%.12g"; integers print without exponent up to 12 digits.
std::string format_number(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add(std::vector<std::string> row);
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::string str() const;
  void write(const std::filesystem::path& path) const;
  nlohmann::json to_json() const;

  static CsvTable read(const std::filesystem::path& path);

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// ------------------------------------------------------------------ plot

struct PlotSpec {
  std::string x;
  std::vector<std::string> y;
  std::string title;
  bool log_x = false;
  bool log_y = false;
  std::optional<double> marker_x;  // vertical line, e.g. a crossover
};

// Line chart of the named columns; throws ConfigError on an empty table or a
// missing column, in which case no file is written.
std::string render_svg(const CsvTable& table, const PlotSpec& spec);
void emit_plot(const std::filesystem::path& csv, const PlotSpec& spec, const std::filesystem::path& svg);

}  // namespace dcx

#endif  // DCX_HARNESS_HPP
