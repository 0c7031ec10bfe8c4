#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "barnes_zeta/analysis.hpp"

namespace barnes::cli {

struct ParsedValue {
  cplx value;
  bool irrational = false;  // contains sqrt2, sqrt3, sqrt5, golden or pi
};

// Complex literal such as "2", "-0.5+0.25i", "3i", "1+sqrt2" or "2*golden".
// Throws DomainError on malformed or non-finite input.
ParsedValue parse_value(std::string_view text);

// "auto", "irrational", "imaginary" or "p/q".
std::optional<RatioClass> parse_ratio(std::string_view text);

enum class Command { Eval, Verify, Scan, Moments, Table };
enum class Format { Json, Csv };

struct JobConfig {
  Command command = Command::Eval;
  std::string s = "3";
  std::string alpha = "1";
  std::string v = "1";
  std::string w = "1";
  std::optional<double> theta;
  std::optional<MethodTag> method;
  std::string ratio = "auto";
  double target_rel_err = 1e-6;
  std::string output = "-";
  std::optional<Format> format;  // default depends on the command
  bool deterministic = false;
  std::uint64_t seed = 0;

  std::string suite = "vw11";
  double tol = 1e-5;

  double sigma = 1.5;
  double t_min = 10.0;
  double t_max = 1000.0;
  int samples_per_decade = 100;
  int windows = 8;

  int k = 1;
  std::vector<double> T_values{50.0, 100.0, 200.0, 400.0};
  int density = 4;

  std::vector<std::string> s_list;
};

// %.17g; round-trips every finite double.
std::string format_double(double x);

std::string eval_json(cplx s, const EvalResult& r);
std::string eval_csv(const std::vector<std::pair<cplx, EvalResult>>& rows);
std::string scan_csv(const std::vector<ScanRecord>& records);

// Writes to a temporary sibling and renames it into place; "-" is stdout.
void write_output(const std::string& path, const std::string& content);

// Returns 0 on success, 1 when a verification fails, 2 on usage or domain
// errors. One summary line goes to err.
int run(const JobConfig& config, std::ostream& err);

int main(int argc, char** argv);

}  // namespace barnes::cli
