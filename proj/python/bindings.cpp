#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "gpd/diagram.hpp"
#include "gpd/errors.hpp"
#include "gpd/homology.hpp"
#include "gpd/io.hpp"
#include "gpd/metrics.hpp"

namespace py = pybind11;
using namespace gpd;

namespace {

GroupKind kind_of(const std::string& t) {
  if (t == "A") return GroupKind::A;
  if (t == "B") return GroupKind::B;
  throw ValidationError("kind must be 'A' or 'B'");
}

ConstructibleModule module_of(const std::string& text, std::size_t degree, const std::string& coeff, bool components) {
  const auto p = text.find_first_not_of(" \t\r\n");
  if (p != std::string::npos && text[p] == '{') return module_from_json(parse_json(text));
  const FilteredComplex complex = parse_filtration(text);
  if (components) return component_module(complex);
  return persistent_module(complex, degree, Coefficients::parse(coeff));
}

}  // namespace

PYBIND11_MODULE(_gpd, m) {
  m.doc() = "Generalized persistence diagrams (exact arithmetic core)";

  static py::exception<Error> base(m, "GpdError");
  static py::exception<ValidationError> invalid(m, "ValidationError", base.ptr());
  static py::exception<NoBGroupError> no_b(m, "NoBGroupError", base.ptr());
  static py::exception<NonSplitError> non_split(m, "NonSplitError", base.ptr());
  py::register_exception_translator([](std::exception_ptr e) {
    try {
      if (e) std::rethrow_exception(e);
    } catch (const ValidationError& x) {
      invalid(x.what());
    } catch (const NoBGroupError& x) {
      no_b(x.what());
    } catch (const NonSplitError& x) {
      non_split(x.what());
    } catch (const Error& x) {
      base(x.what());
    }
  });

  m.def(
      "diagram",
      [](const std::string& text, const std::string& kind, std::size_t degree, const std::string& coeff, bool components) {
        const ConstructibleModule f = module_of(text, degree, coeff, components);
        const DiagramGrid y = kind_of(kind) == GroupKind::A ? type_A_diagram(f) : type_B_diagram(f);
        return dump_json(diagram_to_json(y));
      },
      py::arg("text"), py::arg("kind") = "A", py::arg("degree") = 0, py::arg("coeff") = "Z", py::arg("components") = false,
      "Diagram JSON for a filtration text or a module JSON document.");

  m.def(
      "module_json",
      [](const std::string& text, std::size_t degree, const std::string& coeff, bool components) {
        return dump_json(module_to_json(module_of(text, degree, coeff, components)));
      },
      py::arg("text"), py::arg("degree") = 0, py::arg("coeff") = "Z", py::arg("components") = false);

  m.def(
      "erosion_distance",
      [](const std::string& a, const std::string& b) -> std::optional<std::string> {
        const ErosionReport r = erosion_distance(diagram_from_json(parse_json(a)), diagram_from_json(parse_json(b)));
        if (!r.distance) return std::nullopt;
        return to_string(*r.distance);
      },
      py::arg("a"), py::arg("b"), "Exact erosion distance as a rational string, or None when infinite.");

  m.def(
      "erosion_exists",
      [](const std::string& a, const std::string& b, const std::string& eps) {
        return erosion_exists(diagram_from_json(parse_json(a)), diagram_from_json(parse_json(b)), parse_rational(eps));
      },
      py::arg("a"), py::arg("b"), py::arg("eps"));

  m.def(
      "render",
      [](const std::string& diagram, const std::string& format) {
        const DiagramGrid y = diagram_from_json(parse_json(diagram));
        if (format == "svg") return diagram_to_svg(y);
        if (format == "tsv") return diagram_to_tsv(y);
        if (format == "json") return dump_json(diagram_to_json(y));
        throw ValidationError("format must be json, svg or tsv");
      },
      py::arg("diagram"), py::arg("format") = "tsv");
}
