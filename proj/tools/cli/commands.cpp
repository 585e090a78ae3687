#include "commands.hpp"

#include "config.hpp"

#include <probo/error.hpp>
#include <probo/format.hpp>
#include <probo/functions.hpp>
#include <probo/tabulated.hpp>
#include <probo/trace_io.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace probo::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 0;
  std::string out = "results";
  std::vector<std::string> acquisitions;
  std::vector<std::string> functions;
  std::string function;
  std::string csv;
  bool maximize = false;
};

// A setup problem: reported with exit code 1 before anything is written.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "JSON config file");
  cmd->add_option("--override", o.overrides, "key=value applied after the config file (repeatable)");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--out", o.out, "output directory")->capture_default_str();
}

// Config file, then --override assignments, then dedicated flags. Every
// assignment is recorded for the snapshot.
Json build_document(const Options& o, const std::vector<std::string>& flag_assignments,
                    std::vector<std::string>& applied) {
  Json doc = Json::object();
  if (!o.config.empty()) doc = load_json_file(o.config);
  for (const auto& a : o.overrides) {
    apply_override(doc, a);
    applied.push_back(a);
  }
  for (const auto& a : flag_assignments) {
    apply_override(doc, a);
    applied.push_back(a);
  }
  return doc;
}

std::string json_list(const std::vector<std::string>& items) {
  Json arr = Json::array();
  for (const auto& s : items) arr.push_back(s);
  return arr.dump();
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path.string() + "'");
  body(f);
  if (!f) throw Error("failed writing '" + path.string() + "'");
}

void write_snapshot(const fs::path& dir, Json snapshot, const std::vector<std::string>& applied) {
  snapshot["applied_overrides"] = applied;
  write_file(dir / "config.json", [&](std::ostream& f) { f << snapshot.dump(2) << "\n"; });
}

void write_trace(const fs::path& path, const OptimizationTrace& trace) {
  write_file(path, [&](std::ostream& f) { write_trace_csv(trace, f); });
}

void write_mop(const fs::path& path, const MopMatrix& mop) {
  write_file(path, [&](std::ostream& f) {
    f << "iteration";
    for (const auto& l : mop.labels) f << "," << l;
    f << "\n";
    for (Eigen::Index t = 0; t < mop.values.rows(); ++t) {
      f << t + 1;
      for (Eigen::Index s = 0; s < mop.values.cols(); ++s) f << "," << format_number(mop.values(t, s));
      f << "\n";
    }
  });
}

std::string join_point(const Point& x, const char* sep) {
  std::string s;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) s += sep;
    s += format_number(x(i));
  }
  return s;
}

std::string describe_bounds(const BoxBounds& b) {
  const Point& lo = b.lower();
  const Point& hi = b.upper();
  const bool uniform = (lo.array() == lo(0)).all() && (hi.array() == hi(0)).all();
  if (uniform) return "[" + format_number(lo(0)) + ", " + format_number(hi(0)) + "]^" + std::to_string(lo.size());
  std::string s;
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    if (i) s += " x ";
    s += "[" + format_number(lo(i)) + ", " + format_number(hi(i)) + "]";
  }
  return s;
}

int cmd_run(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<std::string> flags;
  if (o.seed) flags.push_back("seed=" + std::to_string(*o.seed));
  if (!o.acquisitions.empty()) {
    if (o.acquisitions.size() > 1) throw UsageError("run takes a single --acq");
    flags.push_back("acquisition=" + o.acquisitions.front());
  }
  if (!o.function.empty() && !o.csv.empty()) throw UsageError("give either --function or --csv, not both");
  if (!o.function.empty()) flags.push_back("function=" + Json(o.function).dump());
  if (!o.csv.empty()) {
    flags.push_back("function=" + Json{{"csv", o.csv}, {"maximize", o.maximize}}.dump());
  }

  std::vector<std::string> applied;
  const RunSettings settings = read_run_settings(build_document(o, flags, applied));
  if (settings.target.function.empty() && settings.target.csv.empty()) {
    throw UsageError("no target: set \"function\" in the config or pass --function / --csv");
  }
  const TargetFunction target = settings.target.resolve();
  settings.run.mean.with_dimension(target.dimension()).validate(target.dimension());

  const fs::path dir = fs::path(o.out) / settings.name;
  write_snapshot(dir, to_json(settings), applied);
  try {
    const OptimizationTrace trace = run_optimization(settings.run, target);
    write_trace(dir / "trace.csv", trace);
    const TraceRecord& best = trace.best();
    out << "argmin: " << join_point(best.x, " ") << "\n";
    out << "psi: " << format_number(best.psi) << "\n";
    if (const auto n = trace.perturbed_count()) out << "perturbed proposals: " << n << "\n";
  } catch (const RunError& e) {
    write_trace(dir / "trace.csv", e.partial_trace());
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<std::string> flags;
  if (o.seed) flags.push_back("seed=" + std::to_string(*o.seed));
  if (!o.acquisitions.empty()) flags.push_back("acquisitions=" + json_list(o.acquisitions));
  if (!o.functions.empty()) flags.push_back("functions=" + json_list(o.functions));

  std::vector<std::string> applied;
  const CompareSettings settings = read_compare_settings(build_document(o, flags, applied));
  const ComparisonPlan plan = settings.resolve_plan();
  plan.validate();

  const fs::path dir = fs::path(o.out) / settings.name;
  write_snapshot(dir, to_json(settings), applied);
  const ComparisonResult result = run_acquisition_comparison(plan, settings.seed, o.jobs);

  bool failed = false;
  std::ostringstream ad_csv;
  ad_csv << "function,ad\n";
  for (const auto& fc : result.functions) {
    const fs::path fdir = dir / fc.function;
    for (std::size_t a = 0; a < fc.traces.size(); ++a) {
      for (std::size_t r = 0; r < fc.traces[a].size(); ++r) {
        write_trace(fdir / plan.acquisitions[a].label() / ("rep" + std::to_string(r) + ".csv"), fc.traces[a][r]);
      }
    }
    if (fc.failure) {
      failed = true;
      continue;
    }
    write_mop(fdir / "mop.csv", fc.mop);
    write_file(fdir / "comparison.csv", [&](std::ostream& f) {
      f << "iteration";
      for (const auto& l : fc.mop.labels) f << "," << l << "_mop," << l << "_ci";
      f << "\n";
      for (Eigen::Index t = 0; t < fc.mop.values.rows(); ++t) {
        f << t + 1;
        for (Eigen::Index s = 0; s < fc.mop.values.cols(); ++s) {
          f << "," << format_number(fc.mop.values(t, s)) << "," << format_number(fc.ci_half_width(t, s));
        }
        f << "\n";
      }
    });
    ad_csv << fc.function << "," << format_number(fc.ad) << "\n";

    out << fc.function << " (final MOP +/- CI over " << plan.repetitions << " runs)\n";
    const Eigen::Index last = fc.mop.values.rows() - 1;
    for (Eigen::Index s = 0; s < fc.mop.values.cols(); ++s) {
      out << "  " << fc.mop.labels[static_cast<std::size_t>(s)] << ": " << format_number(fc.mop.values(last, s))
          << " +/- " << format_number(fc.ci_half_width(last, s)) << "\n";
    }
    out << "  AD: " << format_number(fc.ad) << "\n";
  }
  write_file(dir / "ad.csv", [&](std::ostream& f) { f << ad_csv.str(); });
  for (const auto& w : result.warnings) err << "warning: " << w << "\n";
  return failed ? kExitRuntime : kExitOk;
}

int cmd_sensitivity(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<std::string> flags;
  if (o.seed) flags.push_back("seed=" + std::to_string(*o.seed));
  if (!o.functions.empty()) flags.push_back("functions=" + json_list(o.functions));
  if (!o.acquisitions.empty()) {
    if (o.acquisitions.size() > 1) throw UsageError("sensitivity takes a single --acq");
    flags.push_back("acquisition=" + o.acquisitions.front());
  }

  std::vector<std::string> applied;
  const SensitivitySettings settings = read_sensitivity_settings(build_document(o, flags, applied));
  const SensitivityPlan plan = settings.resolve_plan();
  plan.validate();

  const fs::path dir = fs::path(o.out) / settings.name;
  write_snapshot(dir, to_json(settings), applied);
  const SensitivityResult result = run_sensitivity_experiment(plan, settings.seed, o.jobs);

  std::map<std::pair<std::string, PriorAxis>, double> relative;
  for (const auto& row : result.summary.rows) relative[{row.function, row.axis}] = row.relative;

  bool failed = false;
  std::ostringstream summary;
  summary << "function,axis,ad,relative_ad\n";
  for (const auto& fsens : result.functions) {
    for (std::size_t a = 0; a < fsens.axes.size(); ++a) {
      const AxisResult& ar = fsens.axes[a];
      const fs::path adir = dir / fsens.function / std::string(to_string(ar.axis));
      for (std::size_t v = 0; v < ar.traces.size(); ++v) {
        for (std::size_t r = 0; r < ar.traces[v].size(); ++r) {
          write_trace(adir / plan.axes[a].variants[v].label / ("rep" + std::to_string(r) + ".csv"), ar.traces[v][r]);
        }
      }
      if (fsens.failure) continue;
      write_mop(adir / "mop.csv", ar.mop);
      const auto it = relative.find({fsens.function, ar.axis});
      const double rel = it == relative.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
      summary << fsens.function << "," << to_string(ar.axis) << "," << format_number(ar.ad) << ","
              << format_number(rel) << "\n";
    }
    failed = failed || fsens.failure.has_value();
  }
  write_file(dir / "ad_summary.csv", [&](std::ostream& f) { f << summary.str(); });
  write_file(dir / "ad_sums.csv", [&](std::ostream& f) {
    f << "axis,relative_ad_sum\n";
    for (const auto& [axis, sum] : result.summary.sums) f << to_string(axis) << "," << format_number(sum) << "\n";
  });

  out << "sum of relative ADs over " << (result.functions.size() - result.summary.excluded.size()) << " function(s)\n";
  for (const auto& [axis, sum] : result.summary.sums) out << "  " << to_string(axis) << ": " << format_number(sum) << "\n";
  for (const auto& w : result.warnings) err << "warning: " << w << "\n";
  if (result.summary.sums.empty()) {
    err << "error: no function produced a relative AD\n";
    return kExitRuntime;
  }
  return failed ? kExitRuntime : kExitOk;
}

int cmd_functions(std::ostream& out) {
  for (const auto& name : registry_names()) {
    const TargetFunction f = registry_lookup(name);
    out << name << "  dim=" << f.dimension() << "  bounds=" << describe_bounds(f.bounds);
    if (f.known_optimum) out << "  optimum=" << format_number(*f.known_optimum);
    out << "\n";
  }
  return kExitOk;
}

int cmd_inspect(const Options& o, std::ostream& out) {
  if (o.csv.empty() == o.function.empty()) throw UsageError("inspect needs exactly one of --csv or --function");
  if (!o.csv.empty()) {
    const TabulatedTarget t = read_tabulated(o.csv);
    out << "rows: " << t.size() << "\n";
    out << "x-range: [" << format_number(t.x_min()) << ", " << format_number(t.x_max()) << "]\n";
    out << "y-range: [" << format_number(t.y_min()) << ", " << format_number(t.y_max()) << "]\n";
    return kExitOk;
  }
  const TargetFunction f = registry_lookup(o.function);
  out << "name: " << f.name << "\n";
  out << "dimension: " << f.dimension() << "\n";
  out << "bounds: " << describe_bounds(f.bounds) << "\n";
  if (f.known_optimum) out << "optimum: " << format_number(*f.known_optimum) << "\n";
  if (f.known_minimizer) out << "minimizer: " << join_point(*f.known_minimizer, " ") << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prior-robust Bayesian optimization and benchmark harness", "probo"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "single optimization run");
  add_common(run, o);
  run->add_option("--acq", o.acquisitions, "acquisition, e.g. lcb:tau=1, ei, glcb-1-100");
  run->add_option("--function", o.function, "registry function");
  run->add_option("--csv", o.csv, "tabulated target (columns x, y)");
  run->add_flag("--maximize", o.maximize, "maximize the tabulated target");

  auto* compare = app.add_subcommand("compare", "acquisition comparison");
  add_common(compare, o);
  compare->add_option("--jobs", o.jobs, "worker threads (0 = all cores)");
  compare->add_option("--acq", o.acquisitions, "acquisition (repeatable)");
  compare->add_option("--functions", o.functions, "registry functions (repeatable)")->delimiter(',');

  auto* sensitivity = app.add_subcommand("sensitivity", "prior sensitivity experiment");
  add_common(sensitivity, o);
  sensitivity->add_option("--jobs", o.jobs, "worker threads (0 = all cores)");
  sensitivity->add_option("--acq", o.acquisitions, "acquisition");
  sensitivity->add_option("--functions", o.functions, "registry functions (repeatable)")->delimiter(',');

  auto* functions = app.add_subcommand("functions", "list the function registry");

  auto* inspect = app.add_subcommand("inspect", "describe a registry function or a tabulated CSV");
  inspect->add_option("--function", o.function, "registry function");
  inspect->add_option("--csv", o.csv, "tabulated target");

  std::vector<std::string> argv_store{"probo"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  // Everything before the experiment starts is a usage/config problem.
  try {
    if (run->parsed()) return cmd_run(o, out, err);
    if (compare->parsed()) return cmd_compare(o, out, err);
    if (sensitivity->parsed()) return cmd_sensitivity(o, out, err);
    if (functions->parsed()) return cmd_functions(out);
    if (inspect->parsed()) return cmd_inspect(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace probo::cli
