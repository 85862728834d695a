#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dp3/asymptotics.hpp"
#include "dp3/core.hpp"
#include "dp3/integrator.hpp"

namespace dp3::cli {

enum class OutFormat { csv, svg, both };

struct RunSpec {
  Params params;
  IntegratorConfig cfg;
  std::vector<Observable> outputs;
  bool correction = false;
  OutFormat format = OutFormat::both;
  /// File stem for solve/compare; files get .csv/.svg appended.
  std::filesystem::path out_path;

  /// Nonempty outputs, valid config, existing output directory.
  void validate() const;
};

/// Decimal or exact fraction n/d, e.g. "-1/8".
double parse_real(std::string_view text);

std::string observable_name(Observable obs);
Observable parse_observable(std::string_view name);
OutFormat parse_format(std::string_view name);

inline const std::vector<std::string> kSolveHeader = {"tau", "u", "du"};
inline const std::vector<std::string> kCompareHeader = {
    "tau", "numeric", "asymptotic", "asymptotic_corrected", "abs_diff", "rel_diff"};

/// Writes <stem>.csv (tau,u,du) and/or <stem>.svg.
std::vector<std::filesystem::path> cmd_solve(const RunSpec& spec);

/// One <stem>_<output>.csv / .svg pair per requested output.
std::vector<std::filesystem::path> cmd_compare(const RunSpec& spec);

inline constexpr int kFigureCount = 7;

/// Preset for figure n (1..7); out_path is dir/figN. Throws UnknownFigure.
RunSpec figure_spec(int n, const std::filesystem::path& dir, OutFormat format);

/// Writes figN.csv and figN.svg into dir.
std::vector<std::filesystem::path> cmd_figure(int n, const std::filesystem::path& dir,
                                              OutFormat format = OutFormat::both);

/// All figures, run concurrently.
std::vector<std::filesystem::path> cmd_figure_all(const std::filesystem::path& dir,
                                                  OutFormat format = OutFormat::both);

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitNumeric = 3, kExitIo = 4 };

int exit_code_for(ErrorCode code) noexcept;

/// Entry point behind the dp3 executable. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dp3::cli
