#include "dp3/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dp3/cli/csv.hpp"
#include "dp3/cli/selftest.hpp"
#include "dp3/cli/svg_plot.hpp"

namespace dp3::cli {
namespace fs = std::filesystem;

namespace {

double parse_plain(std::string_view text) {
  // from_chars rejects a leading '+'
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    fail(ErrorCode::Usage, "not a number: '" + std::string(text) + "'");
  }
  return v;
}

bool wants_csv(OutFormat f) { return f != OutFormat::svg; }
bool wants_svg(OutFormat f) { return f != OutFormat::csv; }

fs::path with_suffix(const fs::path& stem, const std::string& ext) {
  fs::path p = stem;
  p += ext;
  return p;
}

std::string param_label(const Params& p) {
  std::ostringstream os;
  os << "a = " << p.a_real() << ", b = " << p.b();
  return os.str();
}

std::string observable_title(Observable obs) {
  switch (obs) {
    case Observable::solution: return "u(tau)";
    case Observable::i1: return "I1(tau)";
    case Observable::re_i2: return "Re I2(tau)";
    case Observable::im_i2: return "Im I2(tau)";
  }
  return "";
}

std::vector<fs::path> write_solution(const RunSpec& spec, const Trajectory& traj,
                                     const fs::path& stem) {
  std::vector<fs::path> files;
  if (wants_csv(spec.format)) {
    CsvTable table(kSolveHeader);
    for (const auto& s : traj.samples()) {
      table.add_row({s.tau(), s.point.u(), s.point.du()});
    }
    files.push_back(with_suffix(stem, ".csv"));
    table.write(files.back());
  }
  if (wants_svg(spec.format)) {
    LinePlot plot("u(tau), " + param_label(spec.params), "tau", "u");
    PlotSeries numeric{"numerical u", "#1f4e9c", false, {}};
    for (const auto& s : traj.samples()) numeric.points.emplace_back(s.tau(), s.point.u());
    plot.add(std::move(numeric));
    files.push_back(with_suffix(stem, ".svg"));
    plot.write(files.back());
  }
  return files;
}

std::vector<fs::path> write_comparison(const RunSpec& spec, const Trajectory& traj,
                                       Observable obs, const fs::path& stem) {
  std::vector<AsymptoticReport> rows;
  rows.reserve(traj.samples().size());
  for (const auto& s : traj.samples()) {
    rows.push_back(compare(spec.params, obs, s, spec.correction));
  }

  std::vector<fs::path> files;
  if (wants_csv(spec.format)) {
    CsvTable table(kCompareHeader);
    for (const auto& r : rows) {
      table.add_row({r.tau, r.numeric, r.asymptotic_leading, r.asymptotic_with_correction,
                     r.abs_residual, r.rel_residual});
    }
    files.push_back(with_suffix(stem, ".csv"));
    table.write(files.back());
  }
  if (wants_svg(spec.format)) {
    LinePlot plot(observable_title(obs) + ", " + param_label(spec.params), "tau",
                  observable_title(obs));
    PlotSeries numeric{"numerical", "#1f4e9c", false, {}};
    PlotSeries leading{"asymptotics", "#c0392b", true, {}};
    PlotSeries corrected{"asymptotics + correction", "#27ae60", true, {}};
    double lo = HUGE_VAL;
    double hi = -HUGE_VAL;
    for (const auto& r : rows) {
      numeric.points.emplace_back(r.tau, r.numeric);
      leading.points.emplace_back(r.tau, r.asymptotic_leading);
      if (r.asymptotic_with_correction) {
        corrected.points.emplace_back(r.tau, *r.asymptotic_with_correction);
      }
      lo = std::min(lo, r.numeric);
      hi = std::max(hi, r.numeric);
    }
    // the asymptotic curves diverge at small tau; frame the data instead
    const double pad = 0.15 * std::max(hi - lo, 1e-300);
    plot.set_y_range(lo - pad, hi + pad);
    plot.add(std::move(numeric));
    plot.add(std::move(leading));
    if (!corrected.points.empty()) plot.add(std::move(corrected));
    files.push_back(with_suffix(stem, ".svg"));
    plot.write(files.back());
  }
  return files;
}

fs::path stem_for(const RunSpec& spec, Observable obs) {
  fs::path p = spec.out_path;
  p += "_" + observable_name(obs);
  return p;
}

Params preset_params(double a) { return Params::make(a, 1.0 / 100.0, Sign::plus, Mode::special); }

}  // namespace

void RunSpec::validate() const {
  if (outputs.empty()) fail(ErrorCode::Usage, "at least one output is required");
  require_special(params, "run");
  cfg.validate();
  if (out_path.empty()) fail(ErrorCode::Usage, "empty output path");
  const fs::path dir = out_path.has_parent_path() ? out_path.parent_path() : fs::path(".");
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    fail(ErrorCode::IoError, "output directory does not exist: " + dir.string());
  }
  const auto perms = fs::status(dir, ec).permissions();
  if (ec || (perms & fs::perms::owner_write) == fs::perms::none) {
    fail(ErrorCode::IoError, "output directory is not writable: " + dir.string());
  }
}

double parse_real(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) fail(ErrorCode::Usage, "empty number");
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_plain(text);
  const double num = parse_plain(text.substr(0, slash));
  const double den = parse_plain(text.substr(slash + 1));
  if (den == 0.0) fail(ErrorCode::Usage, "zero denominator in '" + std::string(text) + "'");
  return num / den;
}

std::string observable_name(Observable obs) {
  switch (obs) {
    case Observable::solution: return "solution";
    case Observable::i1: return "i1";
    case Observable::re_i2: return "re_i2";
    case Observable::im_i2: return "im_i2";
  }
  return "";
}

Observable parse_observable(std::string_view name) {
  for (Observable o : {Observable::solution, Observable::i1, Observable::re_i2, Observable::im_i2}) {
    if (observable_name(o) == name) return o;
  }
  fail(ErrorCode::Usage, "unknown output '" + std::string(name) + "'");
}

OutFormat parse_format(std::string_view name) {
  if (name == "csv") return OutFormat::csv;
  if (name == "svg") return OutFormat::svg;
  if (name == "both") return OutFormat::both;
  fail(ErrorCode::Usage, "unknown format '" + std::string(name) + "'");
}

std::vector<fs::path> cmd_solve(const RunSpec& spec) {
  spec.validate();
  const Trajectory traj = integrate(spec.params, spec.cfg);
  return write_solution(spec, traj, spec.out_path);
}

std::vector<fs::path> cmd_compare(const RunSpec& spec) {
  spec.validate();
  const Trajectory traj = integrate(spec.params, spec.cfg);
  std::vector<fs::path> files;
  for (Observable obs : spec.outputs) {
    auto written = write_comparison(spec, traj, obs, stem_for(spec, obs));
    files.insert(files.end(), written.begin(), written.end());
  }
  return files;
}

RunSpec figure_spec(int n, const fs::path& dir, OutFormat format) {
  if (n < 1 || n > kFigureCount) {
    fail(ErrorCode::UnknownFigure, "no figure " + std::to_string(n) + " (expected 1..7)");
  }
  const bool steep = n <= 3;
  RunSpec spec{preset_params(steep ? -8.0 : -1.0 / 8.0), IntegratorConfig{}, {}, false, format,
               dir / ("fig" + std::to_string(n))};
  spec.cfg.tau_max = 40.0;
  switch (n) {
    case 1:
    case 4: spec.outputs = {Observable::solution}; break;
    case 2:
    case 5: spec.outputs = {Observable::i1}; break;
    case 3:
      spec.outputs = {Observable::im_i2};
      spec.correction = true;
      break;
    case 6: spec.outputs = {Observable::im_i2}; break;
    case 7:
      spec.outputs = {Observable::im_i2};
      spec.correction = true;
      break;
  }
  return spec;
}

std::vector<fs::path> cmd_figure(int n, const fs::path& dir, OutFormat format) {
  const RunSpec spec = figure_spec(n, dir, format);
  std::error_code ec;
  fs::create_directories(dir, ec);
  spec.validate();
  const Trajectory traj = integrate(spec.params, spec.cfg);
  const Observable obs = spec.outputs.front();
  if (obs == Observable::solution) return write_solution(spec, traj, spec.out_path);
  return write_comparison(spec, traj, obs, spec.out_path);
}

std::vector<fs::path> cmd_figure_all(const fs::path& dir, OutFormat format) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::vector<std::future<std::vector<fs::path>>> jobs;
  for (int n = 1; n <= kFigureCount; ++n) {
    jobs.push_back(std::async(std::launch::async, [n, &dir, format] { return cmd_figure(n, dir, format); }));
  }
  std::vector<fs::path> files;
  for (auto& job : jobs) {
    auto written = job.get();
    files.insert(files.end(), written.begin(), written.end());
  }
  return files;
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IoError: return kExitIo;
    case ErrorCode::Usage:
    case ErrorCode::InvalidB:
    case ErrorCode::InvalidEpsilon:
    case ErrorCode::SpecialModeViolation:
    case ErrorCode::NonRealA:
    case ErrorCode::NonFinite:
    case ErrorCode::InvalidConfig:
    case ErrorCode::UnknownFigure:
    case ErrorCode::ZeroTau:
    case ErrorCode::OutOfRange: return kExitUsage;
    default: return kExitNumeric;
  }
}

namespace {

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

void report_error(std::ostream& err, const std::string& code, int exit_code,
                  const std::string& message) {
  err << "dp3: error code=" << code << " exit=" << exit_code << " message=\""
      << one_line(message) << "\"\n";
}

struct GlobalFlags {
  std::string a;
  std::string b = "1/100";
  std::string tau0;
  std::string tau_max;
  std::string rtol;
  std::string atol;
  std::string stride;
  std::string out;
  std::string format = "both";
};

RunSpec make_spec(const GlobalFlags& g, const std::string& default_out) {
  if (g.a.empty()) fail(ErrorCode::Usage, "--a is required");
  const Params params =
      Params::make(parse_real(g.a), parse_real(g.b), Sign::plus, Mode::special);
  IntegratorConfig cfg;
  if (!g.tau0.empty()) cfg.tau0 = parse_real(g.tau0);
  if (!g.tau_max.empty()) cfg.tau_max = parse_real(g.tau_max);
  if (!g.rtol.empty()) cfg.rtol = parse_real(g.rtol);
  if (!g.atol.empty()) cfg.atol = parse_real(g.atol);
  if (!g.stride.empty()) cfg.dense_output_stride = parse_real(g.stride);
  RunSpec spec{params, cfg, {}, false, parse_format(g.format),
               g.out.empty() ? fs::path(default_out) : fs::path(g.out)};
  return spec;
}

void print_files(std::ostream& out, const std::vector<fs::path>& files) {
  for (const auto& f : files) out << "wrote " << f.string() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Special solution of the degenerate third Painleve equation", "dp3"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "read `key = value` options from a file; flags win");

  GlobalFlags g;
  app.add_option("--a", g.a, "parameter a (decimal or n/d)");
  app.add_option("--b", g.b, "parameter b > 0 (decimal or n/d)")->capture_default_str();
  app.add_option("--tau0", g.tau0, "series handoff point");
  app.add_option("--tau-max", g.tau_max, "end of the integration interval");
  app.add_option("--rtol", g.rtol, "relative tolerance");
  app.add_option("--atol", g.atol, "absolute tolerance");
  app.add_option("--stride", g.stride, "dense output stride");
  app.add_option("--out", g.out, "output file stem (solve, compare) or directory (figure)");
  app.add_option("--format", g.format, "csv, svg or both")
      ->check(CLI::IsMember({"csv", "svg", "both"}))
      ->capture_default_str();

  auto* solve = app.add_subcommand("solve", "integrate and write tau,u,du");

  auto* cmp = app.add_subcommand("compare", "numeric values against the large-tau asymptotics");
  std::vector<std::string> outputs;
  std::string correction = "off";
  cmp->add_option("--output", outputs, "solution, i1, re_i2, im_i2 (repeatable)")
      ->delimiter(',')
      ->check(CLI::IsMember({"solution", "i1", "re_i2", "im_i2"}));
  cmp->add_option("--correction", correction, "on or off")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();

  auto* fig = app.add_subcommand("figure", "reproduce figure N (1..7) as figN.csv and figN.svg");
  int figure_n = 0;
  bool all = false;
  auto* n_opt = fig->add_option("n", figure_n, "figure number");
  auto* all_opt = fig->add_flag("--all", all, "all figures, in parallel");
  n_opt->excludes(all_opt);

  auto* self = app.add_subcommand("selftest", "run the built-in invariant checks");
  SelftestOptions self_opts;
  self->add_option("--perturb-b", self_opts.perturb_b, "testing hook: offset b in one identity check");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "Usage", kExitUsage, e.what());
    return kExitUsage;
  }

  try {
    if (solve->parsed()) {
      RunSpec spec = make_spec(g, "solve");
      spec.outputs = {Observable::solution};
      print_files(out, cmd_solve(spec));
    } else if (cmp->parsed()) {
      RunSpec spec = make_spec(g, "compare");
      if (outputs.empty()) outputs = {"solution", "i1", "re_i2", "im_i2"};
      for (const auto& name : outputs) {
        const Observable o = parse_observable(name);
        if (std::find(spec.outputs.begin(), spec.outputs.end(), o) == spec.outputs.end()) {
          spec.outputs.push_back(o);
        }
      }
      spec.correction = correction == "on";
      print_files(out, cmd_compare(spec));
    } else if (fig->parsed()) {
      const fs::path dir = g.out.empty() ? fs::path(".") : fs::path(g.out);
      const OutFormat format = parse_format(g.format);
      if (all) {
        print_files(out, cmd_figure_all(dir, format));
      } else {
        if (n_opt->count() == 0) fail(ErrorCode::Usage, "figure needs N or --all");
        print_files(out, cmd_figure(figure_n, dir, format));
      }
    } else if (self->parsed()) {
      const SelftestReport report = cmd_selftest(self_opts);
      out << report.text();
      return report.all_pass() ? kExitOk : kExitNumeric;
    }
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    report_error(err, std::string(to_string(e.code())), code, e.what());
    return code;
  } catch (const fs::filesystem_error& e) {
    report_error(err, "IoError", kExitIo, e.what());
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace dp3::cli
