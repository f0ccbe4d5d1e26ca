#pragma once

#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "altxy/quench.hpp"
#include "altxy/scaling.hpp"

namespace altxy {

inline constexpr const char* kVersion = "0.1.0";

enum class Task { Spectrum, PhaseDiagram, ThermalMap, NgMap, Factorization, Quench, ErgodicityMap, Scaling, OracleCheck };
std::string to_string(Task t);
Task task_from_string(const std::string& s);  // throws ConfigError

// Config problem; line is 0 for command-line overrides.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, std::string field, const std::string& message)
      : std::runtime_error(message), line_(line), field_(std::move(field)) {}
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

// MIN:MAX:COUNT, count >= 1, endpoints included; a single value X means X:X:1
struct GridSpec {
  double min = 0.0, max = 0.0;
  int count = 1;
  std::vector<double> values() const;
  std::string describe() const;
};

enum class ScalingPath { Exact, PairSum, ED };

struct SweepConfig {
  Task task = Task::PhaseDiagram;
  double J = 1.0;
  std::vector<double> gammas{0.8};
  GridSpec lambda1{-2, 2, 201}, lambda2{-2, 2, 201};
  int phi_points = 2048;
  GridSpec time{0, 20, 201};
  std::vector<Temperature> betas{Temperature::zero_temperature()};
  SystemSize size = SystemSize::infinite();
  std::vector<Measure> measures{Measure::LN, Measure::QD};

  FieldValues post{};
  LongTimeOptions long_time;
  NonmonotonicityOptions ng;

  Axis axis = Axis::Lambda1;
  double fixed = 0.0;
  double bracket_lo = 0.8, bracket_hi = 1.2;
  std::vector<int> sizes{64, 128, 256, 512, 1024, 2048};
  ScalingPath scaling_path = ScalingPath::Exact;
  bool jump = false;
  double jump_delta = 1e-4;
  double lambda_c_inf = 0.0;
  bool lambda_c_inf_set = false;

  int oracle_N = 8;

  std::string out;
  int workers = 1;

  // effective key=value pairs (output.* excluded) and the keys set from the command line
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, std::string>> overrides;
};

// key=value lines with [section] headers; '#' starts a comment. Overrides (full keys such as
// "grid.lambda1") win over file values and are recorded. Throws ConfigError.
SweepConfig parse_config(const std::string& text, const std::vector<std::pair<std::string, std::string>>& overrides = {});

// Every accepted key with its default for the given task.
std::vector<std::pair<std::string, std::string>> documented_keys(Task t);

// CSV emission
std::string format_number(double v);  // 12 significant digits, NaN, inf, -inf

struct ResultTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;              // index first, error last
  std::map<long, std::vector<std::string>> rows;  // by index, formatted fields
  std::string render() const;
};

struct RunSummary {
  std::vector<std::string> files;
  long computed = 0, reused = 0, failed = 0;
  int exit_code = 0;  // 0, or 3 when NaN rows or failed checks are present
};

// Computes missing rows of every output file and rewrites them in index order. Throws
// ConfigError for unusable configs; other exceptions are internal errors.
RunSummary run(const SweepConfig& config, std::ostream& log);

}  // namespace altxy
