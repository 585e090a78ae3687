#include "config.hpp"

#include <probo/error.hpp>
#include <probo/functions.hpp>
#include <probo/tabulated.hpp>

#include <fstream>
#include <initializer_list>
#include <set>
#include <string_view>

namespace probo::cli {

namespace {

constexpr std::string_view kSnapshotKey = "applied_overrides";

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InvalidArgument(where + ": " + what);
}

void check_keys(const Json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) fail(where, "unknown key '" + key + "'");
  }
}

std::string join(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

template <typename T>
T as(const Json& value, const std::string& where) {
  if constexpr (std::is_same_v<T, bool>) {
    if (!value.is_boolean()) fail(where, "expected true or false");
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!value.is_string()) fail(where, "expected a string");
  } else if constexpr (std::is_same_v<T, std::uint64_t>) {
    if (!value.is_number_unsigned() && !(value.is_number_integer() && value.template get<std::int64_t>() >= 0)) {
      fail(where, "expected a non-negative integer");
    }
  } else if constexpr (std::is_integral_v<T>) {
    if (!value.is_number_integer()) fail(where, "expected an integer");
  } else {
    if (!value.is_number()) fail(where, "expected a number");
  }
  return value.template get<T>();
}

template <typename T>
void read_field(const Json& obj, const char* key, T& out, const std::string& where) {
  if (auto it = obj.find(key); it != obj.end()) out = as<T>(*it, join(where, key));
}

std::vector<double> read_numbers(const Json& value, const std::string& where) {
  std::vector<double> out;
  if (value.is_number()) return {value.get<double>()};
  if (!value.is_array()) fail(where, "expected a number or an array of numbers");
  for (std::size_t i = 0; i < value.size(); ++i) out.push_back(as<double>(value[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

KernelSpec read_kernel(const Json& obj, KernelSpec spec, const std::string& where) {
  check_keys(obj, {"family", "lengthscales", "signal_variance", "power"}, where);
  if (auto it = obj.find("family"); it != obj.end()) {
    spec.family = parse_kernel_family(as<std::string>(*it, join(where, "family")));
  }
  if (auto it = obj.find("lengthscales"); it != obj.end()) spec.lengthscales = read_numbers(*it, join(where, "lengthscales"));
  read_field(obj, "signal_variance", spec.signal_variance, where);
  read_field(obj, "power", spec.power, where);
  spec.validate();
  return spec;
}

Json kernel_json(const KernelSpec& spec) {
  return Json{{"family", std::string(to_string(spec.family))},
              {"lengthscales", spec.lengthscales},
              {"signal_variance", spec.signal_variance},
              {"power", spec.power}};
}

MeanSpec read_mean(const Json& value, MeanSpec spec, const std::string& where) {
  if (value.is_string()) return {parse_mean_form(value.get<std::string>()), {}};
  check_keys(value, {"form", "coefficients"}, where);
  if (auto it = value.find("form"); it != value.end()) {
    const MeanForm form = parse_mean_form(as<std::string>(*it, join(where, "form")));
    if (form != spec.form) spec.coefficients.clear();
    spec.form = form;
  }
  if (auto it = value.find("coefficients"); it != value.end()) {
    spec.coefficients = read_numbers(*it, join(where, "coefficients"));
  }
  return spec;
}

Json mean_json(const MeanSpec& spec) {
  return Json{{"form", std::string(to_string(spec.form))}, {"coefficients", spec.coefficients}};
}

AcquisitionSpec read_acquisition(const Json& value, const std::string& where) {
  if (value.is_string()) return AcquisitionSpec::parse(value.get<std::string>());
  check_keys(value, {"kind", "tau", "rho", "c"}, where);
  AcquisitionSpec spec = AcquisitionSpec::parse(as<std::string>(value.value("kind", Json("lcb")), join(where, "kind")));
  read_field(value, "tau", spec.tau, where);
  read_field(value, "rho", spec.rho, where);
  read_field(value, "c", spec.c, where);
  spec.validate();
  return spec;
}

FocusSearchConfig read_infill(const Json& obj, FocusSearchConfig cfg, const std::string& where) {
  check_keys(obj, {"evals_per_round", "rounds", "restarts", "shrink"}, where);
  read_field(obj, "evals_per_round", cfg.evals_per_round, where);
  read_field(obj, "rounds", cfg.rounds, where);
  read_field(obj, "restarts", cfg.restarts, where);
  read_field(obj, "shrink", cfg.shrink, where);
  cfg.validate();
  return cfg;
}

Json infill_json(const FocusSearchConfig& cfg) {
  return Json{{"evals_per_round", cfg.evals_per_round},
              {"rounds", cfg.rounds},
              {"restarts", cfg.restarts},
              {"shrink", cfg.shrink}};
}

TargetSource read_target(const Json& value, const std::string& where) {
  TargetSource t;
  if (value.is_string()) {
    t.function = value.get<std::string>();
    return t;
  }
  check_keys(value, {"csv", "maximize"}, where);
  if (!value.contains("csv")) fail(where, "expected a registry name or {\"csv\": path}");
  read_field(value, "csv", t.csv, where);
  read_field(value, "maximize", t.maximize, where);
  return t;
}

Json target_json(const TargetSource& t) {
  if (t.csv.empty()) return t.function;
  return Json{{"csv", t.csv}, {"maximize", t.maximize}};
}

std::vector<TargetSource> read_targets(const Json& value, const std::string& where) {
  if (value.is_string()) return {read_target(value, where)};
  if (!value.is_array()) fail(where, "expected a function name or a list of targets");
  std::vector<TargetSource> out;
  for (std::size_t i = 0; i < value.size(); ++i) out.push_back(read_target(value[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Json targets_json(const std::vector<TargetSource>& targets) {
  Json arr = Json::array();
  for (const auto& t : targets) arr.push_back(target_json(t));
  return arr;
}

std::vector<TargetFunction> resolve_all(const std::vector<TargetSource>& sources) {
  std::vector<TargetFunction> out;
  for (const auto& s : sources) out.push_back(s.resolve());
  return out;
}

void check_top_level(const Json& doc, std::initializer_list<std::string_view> allowed) {
  if (!doc.is_object()) throw InvalidArgument("config: expected a JSON object at top level");
  for (const auto& [key, value] : doc.items()) {
    if (key == kSnapshotKey) continue;
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw InvalidArgument("config: unknown key '" + key + "'");
  }
}

}  // namespace

std::string TargetSource::name() const {
  if (csv.empty()) return function;
  return std::filesystem::path(csv).stem().string();
}

TargetFunction TargetSource::resolve() const {
  if (csv.empty()) return registry_lookup(function);
  return read_tabulated(csv).as_target(name(), maximize);
}

CompareSettings::CompareSettings() {
  plan.acquisitions = {AcquisitionSpec::parse("lcb:tau=1"), AcquisitionSpec::parse("ei"),
                       AcquisitionSpec::parse("glcb:tau=1,rho=1,c=100")};
}

ComparisonPlan CompareSettings::resolve_plan() const {
  ComparisonPlan p = plan;
  p.functions = resolve_all(functions);
  return p;
}

SensitivitySettings::SensitivitySettings() {
  functions = {{"sphere-1d", {}, false},
               {"ackley-2d", {}, false},
               {"rosenbrock-3d", {}, false},
               {"schwefel-4d", {}, false},
               {"sphere-7d", {}, false}};
  plan.axes = default_sensitivity_axes();
}

SensitivityPlan SensitivitySettings::resolve_plan() const {
  SensitivityPlan p = plan;
  p.functions = resolve_all(functions);
  return p;
}

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void apply_override(Json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw InvalidArgument("override '" + assignment + "' is not of the form key=value");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  Json value = Json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  Json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw InvalidArgument("override key '" + key + "' has an empty component");
    if (!node->is_object()) {
      if (!node->is_null()) throw InvalidArgument("override key '" + key + "' descends into a non-object");
      *node = Json::object();
    }
    node = &(*node)[part];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  *node = std::move(value);
}

RunSettings read_run_settings(const Json& doc) {
  check_top_level(doc, {"name", "function", "seed", "n_init", "budget", "kernel", "mean", "acquisition", "infill",
                        "igp_bounds", "fit_hyperparameters", "hyperparameter_budget", "standardize"});
  RunSettings s;
  RunConfig& c = s.run;
  read_field(doc, "name", s.name, "");
  if (auto it = doc.find("function"); it != doc.end()) s.target = read_target(*it, "function");
  read_field(doc, "seed", c.seed, "");
  read_field(doc, "n_init", c.n_init, "");
  read_field(doc, "budget", c.budget, "");
  if (auto it = doc.find("kernel"); it != doc.end()) c.kernel = read_kernel(*it, c.kernel, "kernel");
  if (auto it = doc.find("mean"); it != doc.end()) c.mean = read_mean(*it, c.mean, "mean");
  if (auto it = doc.find("acquisition"); it != doc.end()) c.acquisition = read_acquisition(*it, "acquisition");
  if (auto it = doc.find("infill"); it != doc.end()) c.infill = read_infill(*it, c.infill, "infill");
  if (auto it = doc.find("igp_bounds"); it != doc.end()) c.igp_bounds = parse_bounds_rule(as<std::string>(*it, "igp_bounds"));
  read_field(doc, "fit_hyperparameters", c.fit_hyperparameters, "");
  read_field(doc, "hyperparameter_budget", c.hyperparameter_budget, "");
  read_field(doc, "standardize", c.standardize, "");
  c.validate();
  return s;
}

CompareSettings read_compare_settings(const Json& doc) {
  check_top_level(doc, {"name", "functions", "acquisitions", "seed", "repetitions", "budget", "n_init", "kernel",
                        "mean", "infill", "igp_bounds", "standardize"});
  CompareSettings s;
  ComparisonPlan& p = s.plan;
  read_field(doc, "name", s.name, "");
  if (auto it = doc.find("functions"); it != doc.end()) s.functions = read_targets(*it, "functions");
  if (auto it = doc.find("acquisitions"); it != doc.end()) {
    if (!it->is_array()) fail("acquisitions", "expected a list");
    p.acquisitions.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      p.acquisitions.push_back(read_acquisition((*it)[i], "acquisitions[" + std::to_string(i) + "]"));
    }
  }
  read_field(doc, "seed", s.seed, "");
  read_field(doc, "repetitions", p.repetitions, "");
  read_field(doc, "budget", p.budget, "");
  read_field(doc, "n_init", p.n_init, "");
  if (auto it = doc.find("kernel"); it != doc.end()) p.kernel = read_kernel(*it, p.kernel, "kernel");
  if (auto it = doc.find("mean"); it != doc.end()) p.mean = read_mean(*it, p.mean, "mean");
  if (auto it = doc.find("infill"); it != doc.end()) p.infill = read_infill(*it, p.infill, "infill");
  if (auto it = doc.find("igp_bounds"); it != doc.end()) p.igp_bounds = parse_bounds_rule(as<std::string>(*it, "igp_bounds"));
  read_field(doc, "standardize", p.standardize, "");
  return s;
}

SensitivitySettings read_sensitivity_settings(const Json& doc) {
  check_top_level(doc, {"name", "functions", "seed", "repetitions", "iterations", "n_init", "acquisition", "infill",
                        "standardize", "axes"});
  SensitivitySettings s;
  SensitivityPlan& p = s.plan;
  read_field(doc, "name", s.name, "");
  if (auto it = doc.find("functions"); it != doc.end()) s.functions = read_targets(*it, "functions");
  read_field(doc, "seed", s.seed, "");
  read_field(doc, "repetitions", p.repetitions, "");
  read_field(doc, "iterations", p.iterations, "");
  read_field(doc, "n_init", p.n_init, "");
  if (auto it = doc.find("acquisition"); it != doc.end()) p.acquisition = read_acquisition(*it, "acquisition");
  if (auto it = doc.find("infill"); it != doc.end()) p.infill = read_infill(*it, p.infill, "infill");
  read_field(doc, "standardize", p.standardize, "");
  if (auto it = doc.find("axes"); it != doc.end()) {
    if (!it->is_array()) fail("axes", "expected a list");
    p.axes.clear();
    for (std::size_t a = 0; a < it->size(); ++a) {
      const std::string where = "axes[" + std::to_string(a) + "]";
      const Json& obj = (*it)[a];
      check_keys(obj, {"axis", "variants"}, where);
      if (!obj.contains("axis") || !obj.contains("variants")) fail(where, "needs 'axis' and 'variants'");
      AxisPlan axis;
      axis.axis = parse_prior_axis(as<std::string>(obj["axis"], where + ".axis"));
      const Json& vars = obj["variants"];
      if (!vars.is_array()) fail(where + ".variants", "expected a list");
      for (std::size_t v = 0; v < vars.size(); ++v) {
        const std::string vw = where + ".variants[" + std::to_string(v) + "]";
        check_keys(vars[v], {"label", "kernel", "mean"}, vw);
        if (!vars[v].contains("label") || !vars[v].contains("kernel") || !vars[v].contains("mean")) {
          fail(vw, "needs 'label', 'kernel' and 'mean'");
        }
        PriorVariant variant;
        variant.label = as<std::string>(vars[v]["label"], vw + ".label");
        variant.kernel = read_kernel(vars[v]["kernel"], KernelSpec{}, vw + ".kernel");
        variant.mean = read_mean(vars[v]["mean"], MeanSpec{}, vw + ".mean");
        axis.variants.push_back(std::move(variant));
      }
      p.axes.push_back(std::move(axis));
    }
  }
  return s;
}

Json to_json(const RunSettings& s) {
  const RunConfig& c = s.run;
  return Json{{"name", s.name},
              {"function", target_json(s.target)},
              {"seed", c.seed},
              {"n_init", c.n_init},
              {"budget", c.budget},
              {"kernel", kernel_json(c.kernel)},
              {"mean", mean_json(c.mean)},
              {"acquisition", c.acquisition.to_string()},
              {"infill", infill_json(c.infill)},
              {"igp_bounds", std::string(to_string(c.igp_bounds))},
              {"fit_hyperparameters", c.fit_hyperparameters},
              {"hyperparameter_budget", c.hyperparameter_budget},
              {"standardize", c.standardize}};
}

Json to_json(const CompareSettings& s) {
  const ComparisonPlan& p = s.plan;
  Json acqs = Json::array();
  for (const auto& a : p.acquisitions) acqs.push_back(a.to_string());
  return Json{{"name", s.name},
              {"functions", targets_json(s.functions)},
              {"acquisitions", acqs},
              {"seed", s.seed},
              {"repetitions", p.repetitions},
              {"budget", p.budget},
              {"n_init", p.n_init},
              {"kernel", kernel_json(p.kernel)},
              {"mean", mean_json(p.mean)},
              {"infill", infill_json(p.infill)},
              {"igp_bounds", std::string(to_string(p.igp_bounds))},
              {"standardize", p.standardize}};
}

Json to_json(const SensitivitySettings& s) {
  const SensitivityPlan& p = s.plan;
  Json axes = Json::array();
  for (const auto& axis : p.axes) {
    Json vars = Json::array();
    for (const auto& v : axis.variants) {
      vars.push_back(Json{{"label", v.label}, {"kernel", kernel_json(v.kernel)}, {"mean", mean_json(v.mean)}});
    }
    axes.push_back(Json{{"axis", std::string(to_string(axis.axis))}, {"variants", vars}});
  }
  return Json{{"name", s.name},
              {"functions", targets_json(s.functions)},
              {"seed", s.seed},
              {"repetitions", p.repetitions},
              {"iterations", p.iterations},
              {"n_init", p.n_init},
              {"acquisition", p.acquisition.to_string()},
              {"infill", infill_json(p.infill)},
              {"standardize", p.standardize},
              {"axes", axes}};
}

}  // namespace probo::cli
