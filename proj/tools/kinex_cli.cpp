// kinex: command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 parse/validation/input error,
// 3 step budget exhausted (aem-run --strict-halt only).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kinex/kinex.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

/// Input problems the user can fix; reported with exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "': file not found or unreadable");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

/// "@name" addresses the bundled dataset; anything else is a file path.
kinex::PlatformDocument load_platform(const std::string& ref, kinex::Strictness mode) {
  if (!ref.empty() && ref[0] == '@') {
    const auto* doc = kinex::find_in_dataset(ref.substr(1));
    if (!doc) throw InputError("no bundled platform named '" + ref.substr(1) + "' (see dataset-list)");
    return *doc;
  }
  std::string text = read_file(ref);
  try {
    return kinex::parse_platform(text, {mode});
  } catch (const kinex::ParseError& e) {
    throw InputError(ref + ":" + std::to_string(e.line()) + ": error: " + e.detail());
  }
}

std::string count_line(const kinex::BigCount& c) {
  return c.scientific(2) + " configurations (" + std::to_string(c.decimal_digits()) + " digits)";
}

std::string bits_line(const char* name, double bits) {
  return std::string(name) + " = " + std::to_string(std::llround(bits)) + " bits (rounded), " +
         kinex::detail::fixed(bits, 6) + " bits";
}

struct ComputeArgs {
  std::string ref;
  bool exact = false;
  bool log_space = false;
  bool mechanical_only = false;
  bool json = false;
  bool lenient = false;
};

int run_compute(const ComputeArgs& a) {
  using namespace kinex;
  auto mode = a.lenient ? Strictness::lenient : Strictness::strict;
  auto doc = load_platform(a.ref, mode);
  AnalyzeOptions opts{a.exact ? CountMode::exact : a.log_space ? CountMode::log_space : CountMode::both, mode};
  CapacityReport r = analyze(doc.platform, opts);

  if (a.json) {
    nlohmann::json j;
    j["platform"] = r.platform_name;
    auto put_count = [&](const std::string& prefix, const BigCount& c, double bits) {
      j[prefix + "_log10"] = c.log10();
      j[prefix + "_digits"] = c.decimal_digits();
      j[prefix + "_leading"] = c.scientific(2);
      if (a.exact && c.exact()) j[prefix + "_exact"] = c.exact()->str();
      j[prefix == "c_all" ? "k_all_bits" : "k_mechanical_bits"] = bits;
      j[prefix == "c_all" ? "k_all_rounded" : "k_mechanical_rounded"] = std::llround(bits);
    };
    if (!a.mechanical_only) put_count("c_all", r.c_all, r.k_all_bits);
    put_count("c_mechanical", r.c_mechanical, r.k_mechanical_bits);
    if (r.computational_bits) {
      j["computational_bits"] = *r.computational_bits;
      j["computational_config_digits"] = r.computational_config_digits->str();
    }
    std::cout << j.dump() << "\n";
    return 0;
  }

  std::cout << "platform: " << r.platform_name << "\n";
  if (!a.mechanical_only) {
    std::cout << "C(all) = " << count_line(r.c_all) << "\n";
    if (a.exact && r.c_all.exact()) std::cout << "C(all) exact = " << r.c_all.exact()->str() << "\n";
    std::cout << bits_line("K(all)", r.k_all_bits) << "\n";
  }
  std::cout << "C(mechanical) = " << count_line(r.c_mechanical) << "\n";
  if (a.exact && r.c_mechanical.exact())
    std::cout << "C(mechanical) exact = " << r.c_mechanical.exact()->str() << "\n";
  std::cout << bits_line("K(mechanical)", r.k_mechanical_bits) << "\n";
  if (r.computational_bits) {
    std::cout << "computational = " << kinex::detail::shortest(*r.computational_bits) << " bits, 2^t has "
              << r.computational_config_digits->str() << " digits\n";
  }
  return 0;
}

int run_compare(const std::string& ref_a, const std::string& ref_b, bool json) {
  auto a = kinex::analyze(load_platform(ref_a, kinex::Strictness::strict).platform);
  auto b = kinex::analyze(load_platform(ref_b, kinex::Strictness::strict).platform);
  auto c = kinex::compare(a, b);
  if (json) {
    nlohmann::json j;
    j["a"] = c.a;
    j["b"] = c.b;
    j["delta_bits"] = c.delta_bits;
    j["orders_of_magnitude"] = c.orders_of_magnitude;
    if (c.bits_ratio) j["bits_ratio"] = *c.bits_ratio;
    std::cout << j.dump() << "\n";
    return 0;
  }
  std::cout << "a: " << c.a << "\n"
            << "b: " << c.b << "\n"
            << "delta_bits = " << kinex::detail::fixed(c.delta_bits, 6) << "\n"
            << "orders_of_magnitude = " << kinex::detail::fixed(c.orders_of_magnitude, 6) << "\n";
  if (c.bits_ratio) std::cout << "bits_ratio = " << kinex::detail::fixed(*c.bits_ratio, 6) << "\n";
  return 0;
}

int run_dataset_list() {
  for (const auto& d : kinex::load_dataset()) {
    const auto& p = d.platform;
    std::cout << "@" << kinex::slugify(p.name()) << "\t" << kinex::to_string(p.kind()) << "\t" << p.name()
              << (p.computable() ? "" : "\t(stub)") << "\n";
  }
  return 0;
}

struct PlotArgs {
  int figure = 0;
  std::string out_csv;
  std::string out_svg;
  int width = 800;
  int height = 600;
};

int run_plot(const PlotArgs& a) {
  using namespace kinex::report;
  FigureId id;
  try {
    id = figure_from_number(a.figure);
  } catch (const UnknownFigureId& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  auto opts = default_svg_options(id);
  opts.width = a.width;
  opts.height = a.height;
  auto platforms = kinex::dataset_platforms();
  auto bundle = make_figure(platforms, id, opts);
  for (const auto& d : bundle.diagnostics) std::cerr << "note: " << d << "\n";
  if (!a.out_csv.empty()) write_file(a.out_csv, bundle.csv);
  if (!a.out_svg.empty()) write_file(a.out_svg, bundle.svg);
  std::cout << to_string(id) << ": " << bundle.points.size() << " points\n";
  return 0;
}

int run_validate(const std::string& ref, bool strict) {
  auto mode = strict ? kinex::Strictness::strict : kinex::Strictness::lenient;
  std::vector<kinex::Diagnostic> diags;
  std::string where = ref;
  if (!ref.empty() && ref[0] == '@') {
    diags = kinex::validate(load_platform(ref, kinex::Strictness::lenient), mode);
  } else {
    diags = kinex::check_text(read_file(ref), mode);
  }
  for (const auto& d : diags)
    std::cout << where << ":" << d.line << ": " << kinex::to_string(d.severity) << ": " << d.message << "\n";
  if (kinex::has_errors(diags)) return kExitInput;
  if (diags.empty()) std::cout << where << ": ok\n";
  return 0;
}

int run_aem(const std::string& path, std::uint64_t max_steps, bool trace, bool strict_halt) {
  namespace aem = kinex::aem;
  std::string text = read_file(path);
  aem::MachineFile file = [&] {
    try {
      return aem::parse_machine(text);
    } catch (const kinex::ParseError& e) {
      throw InputError(path + ":" + std::to_string(e.line()) + ": error: " + e.detail());
    }
  }();
  aem::RunResult r;
  try {
    r = aem::run(file.machine, file.tape, max_steps, trace);
  } catch (const aem::MachineError& e) {
    throw InputError(path + ": error: " + e.what());
  }
  std::cout << aem::format_run_result(r);
  if (strict_halt && r.outcome == aem::Outcome::budget_exhausted) return kExitBudget;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kinex: kinematic expressivity and configuration-capacity toolkit"};
  app.require_subcommand(1);

  ComputeArgs compute;
  auto* compute_cmd = app.add_subcommand("compute", "Configuration count and expressivity of a platform");
  compute_cmd->add_option("platform", compute.ref, "file.mechx or @dataset-name")->required();
  auto* exact_flag = compute_cmd->add_flag("--exact", compute.exact, "Exact big-integer count only (prints it)");
  compute_cmd->add_flag("--log-space", compute.log_space, "Log-space arithmetic only")->excludes(exact_flag);
  compute_cmd->add_flag("--mechanical-only", compute.mechanical_only, "Report only mechanical groups");
  compute_cmd->add_flag("--json", compute.json, "Single-line JSON output");
  compute_cmd->add_flag("--lenient", compute.lenient, "Round non-integral spans instead of failing");

  std::string cmp_a, cmp_b;
  bool cmp_json = false;
  auto* compare_cmd = app.add_subcommand("compare", "Compare two platforms");
  compare_cmd->add_option("a", cmp_a, "file.mechx or @dataset-name")->required();
  compare_cmd->add_option("b", cmp_b, "file.mechx or @dataset-name")->required();
  compare_cmd->add_flag("--json", cmp_json, "Single-line JSON output");

  auto* list_cmd = app.add_subcommand("dataset-list", "List bundled platforms");

  PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plot", "Write a figure's CSV and SVG");
  plot_cmd->add_option("--figure", plot.figure, "Figure number 1-5")->required();
  plot_cmd->add_option("--out-csv", plot.out_csv, "CSV output path");
  plot_cmd->add_option("--out-svg", plot.out_svg, "SVG output path");
  plot_cmd->add_option("--width", plot.width, "SVG width in px")->check(CLI::PositiveNumber);
  plot_cmd->add_option("--height", plot.height, "SVG height in px")->check(CLI::PositiveNumber);

  std::string validate_ref;
  bool validate_strict = false;
  auto* validate_cmd = app.add_subcommand("validate", "Check a platform description");
  validate_cmd->add_option("file", validate_ref, "file.mechx or @dataset-name")->required();
  validate_cmd->add_flag("--strict", validate_strict, "Treat non-integral spans as errors");

  std::string aem_path;
  std::uint64_t max_steps = 0;
  bool aem_trace = false, strict_halt = false;
  auto* aem_cmd = app.add_subcommand("aem-run", "Run an a-machine or ae-machine description");
  aem_cmd->add_option("file", aem_path, "file.aem")->required();
  aem_cmd->add_option("--max-steps", max_steps, "Step budget")->required()->check(CLI::PositiveNumber);
  aem_cmd->add_flag("--trace", aem_trace, "Print one line per step");
  aem_cmd->add_flag("--strict-halt", strict_halt, "Exit 3 when the budget runs out");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*compute_cmd) return run_compute(compute);
    if (*compare_cmd) return run_compare(cmp_a, cmp_b, cmp_json);
    if (*list_cmd) return run_dataset_list();
    if (*plot_cmd) {
      if (plot.out_csv.empty() && plot.out_svg.empty()) {
        std::cerr << "error: plot needs --out-csv and/or --out-svg\n";
        return kExitUsage;
      }
      return run_plot(plot);
    }
    if (*validate_cmd) return run_validate(validate_ref, validate_strict);
    if (*aem_cmd) return run_aem(aem_path, max_steps, aem_trace, strict_halt);
  } catch (const InputError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
