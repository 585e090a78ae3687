#pragma once

#include <probo/experiments.hpp>

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace probo::cli {

using Json = nlohmann::ordered_json;

// A registry function or a tabulated CSV target.
// JSON: "sphere-2d" or {"csv": "path.csv", "maximize": true}.
struct TargetSource {
  std::string function;
  std::string csv;
  bool maximize = false;

  std::string name() const;  // registry name or CSV file stem
  TargetFunction resolve() const;
};

struct RunSettings {
  std::string name = "run";
  TargetSource target;
  RunConfig run;
};

struct CompareSettings {
  std::string name = "compare";
  std::vector<TargetSource> functions{{"wiggly-1d", {}, false}};
  std::uint64_t seed = 1;
  ComparisonPlan plan;  // `plan.functions` is filled by resolve_plan()

  CompareSettings();
  ComparisonPlan resolve_plan() const;
};

struct SensitivitySettings {
  std::string name = "sensitivity";
  std::vector<TargetSource> functions;
  std::uint64_t seed = 1;
  SensitivityPlan plan;

  SensitivitySettings();
  SensitivityPlan resolve_plan() const;
};

Json load_json_file(const std::filesystem::path& path);

// Applies "a.b.c=value". The value is taken as JSON when it parses as JSON and
// as a plain string otherwise. Intermediate objects are created as needed;
// whether the key exists is checked when the document is read.
void apply_override(Json& doc, const std::string& assignment);

// Readers reject unknown keys and missing or mistyped values with InvalidArgument.
// Fields absent from the document keep their defaults. A top-level
// "applied_overrides" entry (written into snapshots) is ignored.
RunSettings read_run_settings(const Json& doc);
CompareSettings read_compare_settings(const Json& doc);
SensitivitySettings read_sensitivity_settings(const Json& doc);

Json to_json(const RunSettings& s);
Json to_json(const CompareSettings& s);
Json to_json(const SensitivitySettings& s);

}  // namespace probo::cli
