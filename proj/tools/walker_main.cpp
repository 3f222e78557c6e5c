#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "walkerlie/pipeline.hpp"

namespace {

// Exit codes: 0 all checks passed, 1 some check failed,
// 2 validation/parse problem, 3 internal inconsistency.
constexpr int kChecksFailed = 1;
constexpr int kValidation = 2;
constexpr int kInternal = 3;

struct CommonOptions {
  std::string spec_path;
  bool json = false;
  bool timings = false;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("spec", opt.spec_path, "path to the JSON check document")->required();
  cmd->add_flag("--json", opt.json, "emit the canonical JSON report");
  cmd->add_flag("--timings", opt.timings, "include wall-clock timings in the JSON report");
  cmd->add_option("--seed", opt.seed, "seed for randomized verdicts (default 42)");
  cmd->add_option("--tol", opt.tol, "tolerance for probabilistic zero tests");
}

walkerlie::SpecDocument load(const CommonOptions& opt) {
  walkerlie::SpecDocument doc = walkerlie::load_spec_file(opt.spec_path);
  if (opt.seed) doc.seed = *opt.seed;
  if (opt.tol) doc.tolerance = *opt.tol;
  return doc;
}

int emit(walkerlie::Report report, const CommonOptions& opt) {
  report.include_timings = opt.timings;
  if (opt.json) {
    std::cout << report.to_json_string();
  } else {
    std::cout << report.human_table();
  }
  return report.all_passed() ? 0 : kChecksFailed;
}

std::optional<walkerlie::Point> parse_at(const std::string& text) {
  if (text.empty()) return std::nullopt;
  walkerlie::Point p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw walkerlie::ValidationError("--at expects name=value pairs separated by commas");
    p.set(item.substr(0, eq), std::stod(item.substr(eq + 1)));
  }
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"walker: mechanical checks for null parallel distributions, their metrics, "
               "structure algebras, and developing maps"};
  app.require_subcommand(1);

  CommonOptions check_opt, curv_opt, classify_opt, develop_opt, deform_opt;
  std::string at_text;

  CLI::App* check = app.add_subcommand("check", "run the full pipeline for the document kind");
  add_common(check, check_opt);
  CLI::App* curvature = app.add_subcommand("curvature", "tensors only");
  add_common(curvature, curv_opt);
  curvature->add_option("--at", at_text, "evaluate tensors at a point, e.g. x1=0.5,x2=1,x3=0");
  CLI::App* classify = app.add_subcommand("classify", "algebra classification only");
  add_common(classify, classify_opt);
  CLI::App* develop = app.add_subcommand("develop", "integrate the declared curves");
  add_common(develop, develop_opt);
  CLI::App* deform = app.add_subcommand("deform", "scan the declared family");
  add_common(deform, deform_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return emit(walkerlie::run_check(load(check_opt)), check_opt);
    if (curvature->parsed())
      return emit(walkerlie::run_curvature(load(curv_opt), parse_at(at_text)), curv_opt);
    if (classify->parsed()) return emit(walkerlie::run_classify(load(classify_opt)), classify_opt);
    if (develop->parsed()) return emit(walkerlie::run_develop(load(develop_opt)), develop_opt);
    if (deform->parsed()) return emit(walkerlie::run_deform(load(deform_opt)), deform_opt);
  } catch (const walkerlie::InternalError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kInternal;
  } catch (const walkerlie::ParseError& e) {
    std::cerr << "expression error at offset " << e.offset << ": " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kValidation;
}
