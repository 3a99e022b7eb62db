// gpd: generalized persistence diagrams from the command line.
//
// Exit codes: 0 ok, 1 a stability trial violated a theorem, 2 bad input or
// flags, 3 no B group (FinSet) or a non-split characteristic polynomial.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gpd/diagram.hpp"
#include "gpd/errors.hpp"
#include "gpd/homology.hpp"
#include "gpd/io.hpp"
#include "gpd/metrics.hpp"
#include "gpd/stability.hpp"

namespace {

using namespace gpd;

struct Options {
  std::vector<std::string> inputs;
  std::string type = "A";
  std::string category;
  std::string coeff = "Z";
  std::size_t degree = 0;
  std::string epsilon = "0";
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  std::string format;
  std::string out;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + o.out + "'");
  out << text;
}

bool looks_like_json(const std::string& text) {
  const auto p = text.find_first_not_of(" \t\r\n");
  return p != std::string::npos && text[p] == '{';
}

GroupKind parse_type(const std::string& t) {
  if (t == "A") return GroupKind::A;
  if (t == "B") return GroupKind::B;
  throw ValidationError("--type must be A or B");
}

// Module from a module JSON file or a filtration file.
ConstructibleModule load_module(const Options& o, const std::string& path) {
  const std::string text = read_file(path);
  if (looks_like_json(text)) {
    ConstructibleModule f = module_from_json(parse_json(text));
    if (!o.category.empty() && o.category != f.category().name())
      throw ValidationError("--category " + o.category + " does not match the module's category " + f.category().name());
    return f;
  }
  const FilteredComplex complex = parse_filtration(text);
  if (o.category == "finset") {
    if (o.degree != 0) throw ValidationError("--category finset computes connected components; use --degree 0");
    return component_module(complex);
  }
  const Coefficients coeffs = Coefficients::parse(o.coeff);
  if (!o.category.empty() && o.category != coeffs.category().name())
    throw ValidationError("--coeff " + o.coeff + " gives category " + coeffs.category().name() + ", not " + o.category);
  return persistent_module(complex, o.degree, coeffs);
}

std::string render_diagram(const DiagramGrid& y, const std::string& format) {
  if (format.empty() || format == "json") return dump_json(diagram_to_json(y));
  if (format == "svg") return diagram_to_svg(y);
  if (format == "tsv") return diagram_to_tsv(y);
  throw ValidationError("unknown --format '" + format + "'");
}

int cmd_diagram(const Options& o) {
  if (o.inputs.size() != 1) throw ValidationError("diagram takes exactly one --input");
  const GroupKind kind = parse_type(o.type);
  if (!o.category.empty()) GroupTag::of(CategoryId::parse(o.category), kind);  // FinSet + B fails here
  const ConstructibleModule f = load_module(o, o.inputs[0]);
  const DiagramGrid y = kind == GroupKind::A ? type_A_diagram(f) : type_B_diagram(f);
  write_output(o, render_diagram(y, o.format));
  return 0;
}

int cmd_erosion(const Options& o) {
  if (o.inputs.size() != 2) throw ValidationError("erosion takes two --input diagram files");
  const DiagramGrid a = diagram_from_json(parse_json(read_file(o.inputs[0])));
  const DiagramGrid b = diagram_from_json(parse_json(read_file(o.inputs[1])));
  const ErosionReport report = erosion_distance(a, b);
  if (o.format.empty() || o.format == "tsv") {
    write_output(o, erosion_to_tsv(report));
  } else if (o.format == "json") {
    write_output(o, dump_json(erosion_to_json(report)));
  } else {
    throw ValidationError("erosion supports --format tsv or json");
  }
  return 0;
}

int cmd_stability(const Options& o) {
  if (o.inputs.size() != 1) throw ValidationError("stability takes exactly one --input filtration");
  if (!o.category.empty() && o.category != Coefficients::parse(o.coeff).category().name())
    throw ValidationError("stability runs on homology; choose the category through --coeff");
  const Rational eps = parse_rational(o.epsilon);
  const FilteredComplex complex = parse_filtration(read_file(o.inputs[0]));
  const StabilityReport report = run_stability(complex, o.degree, Coefficients::parse(o.coeff), eps, o.trials, o.seed);
  std::ostringstream os;
  os << "# epsilon " << to_string(report.eps) << ", rho " << (report.rho ? to_string(*report.rho) : "inf") << '\n';
  os << "trial\tseed\tinterleaving\terosion_B\tcontinuity\tsemicontinuity\n";
  std::size_t passed = 0;
  for (const auto& t : report.trials) {
    os << t.index << '\t' << t.seed << '\t' << (t.interleaving_ok ? "pass" : "fail") << '\t'
       << (t.erosion_b ? to_string(*t.erosion_b) : "inf") << '\t' << (t.continuity_ok ? "pass" : "fail") << '\t'
       << (t.semicontinuity_checked ? (t.semicontinuity_ok ? "pass" : "fail") : "skipped") << '\n';
    if (!t.interleaving_ok) std::cerr << "trial " << t.index << ": " << t.interleaving_failure << '\n';
    passed += t.passed() ? 1 : 0;
  }
  os << "# passed " << passed << "/" << report.trials.size() << '\n';
  write_output(o, os.str());
  return report.passed() ? 0 : 1;
}

int cmd_convert(const Options& o) {
  if (o.inputs.size() != 1) throw ValidationError("convert takes exactly one --input");
  const std::string text = read_file(o.inputs[0]);
  if (looks_like_json(text)) {
    const nlohmann::json j = parse_json(text);
    if (j.contains("cells")) {
      write_output(o, render_diagram(diagram_from_json(j), o.format));
    } else {
      if (!o.format.empty() && o.format != "json") throw ValidationError("modules convert to json only");
      write_output(o, dump_json(module_to_json(module_from_json(j))));
    }
    return 0;
  }
  if (!o.format.empty() && o.format != "json") throw ValidationError("filtrations convert to module json only");
  write_output(o, dump_json(module_to_json(load_module(o, o.inputs[0]))));
  return 0;
}

void add_common(CLI::App* cmd, Options& o, bool many_inputs) {
  auto* input = cmd->add_option("--input", o.inputs, many_inputs ? "Diagram JSON files (give two)" : "Input file")->required();
  if (!many_inputs) input->expected(1);
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "svg", "tsv"}));
  cmd->add_option("--out", o.out, "Write the result here instead of stdout");
}

void add_module_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--category", o.category, "Value category")->check(CLI::IsMember({"finset", "vect", "ab", "finab", "repn"}));
  cmd->add_option("--coeff", o.coeff, "Homology coefficients: Z, Q, Fp:<p>, Zm:<m>")->capture_default_str();
  cmd->add_option("--degree", o.degree, "Homology degree")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized persistence diagrams"};
  app.require_subcommand(1);
  Options o;

  auto* diagram = app.add_subcommand("diagram", "Type A or B persistence diagram of a module or filtration");
  add_common(diagram, o, false);
  add_module_flags(diagram, o);
  diagram->add_option("--type", o.type, "A or B")->check(CLI::IsMember({"A", "B"}))->capture_default_str();

  auto* erosion = app.add_subcommand("erosion", "Erosion distance between two diagram files");
  add_common(erosion, o, true);

  auto* stability = app.add_subcommand("stability", "Perturbation trials checking the stability theorems");
  add_common(stability, o, false);
  add_module_flags(stability, o);
  stability->add_option("--epsilon", o.epsilon, "Perturbation size (rational)")->capture_default_str();
  stability->add_option("--trials", o.trials, "Number of trials")->capture_default_str();
  stability->add_option("--seed", o.seed, "Run seed")->capture_default_str();

  auto* convert = app.add_subcommand("convert", "Re-render a diagram, or turn a filtration into module JSON");
  add_common(convert, o, false);
  add_module_flags(convert, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*diagram) return cmd_diagram(o);
    if (*erosion) return cmd_erosion(o);
    if (*stability) return cmd_stability(o);
    if (*convert) return cmd_convert(o);
  } catch (const NoBGroupError& e) {
    std::cerr << "gpd: " << e.what() << '\n';
    return 3;
  } catch (const NonSplitError& e) {
    std::cerr << "gpd: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "gpd: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
