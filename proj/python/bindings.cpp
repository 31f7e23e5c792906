#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stringtop/cli.hpp"
#include "stringtop/error.hpp"
#include "stringtop/io.hpp"

namespace py = pybind11;
using namespace stringtop;

PYBIND11_MODULE(_stringtop, m) {
  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<TruncationError>(m, "TruncationError", error.ptr());

  m.def("commands", &cli::command_names);

  // Returns (exit_code, text, error, document as JSON text).
  m.def(
      "run",
      [](const std::string& command, const std::string& path, std::optional<int> max_degree, int copies,
         std::optional<int> expected_d) {
        cli::CommandOptions o{command, path, max_degree, copies, expected_d};
        cli::CommandResult r;
        {
          py::gil_scoped_release release;
          r = cli::run_command(o);
        }
        return py::make_tuple(r.exit_code, r.text, r.error, r.document.dump());
      },
      py::arg("command"), py::arg("path"), py::arg("max_degree") = py::none(), py::arg("copies") = 2,
      py::arg("expected_d") = py::none());

  m.def(
      "canonical", [](const std::string& text, const std::string& source) {
        return serialize(parse_algebra(text, source));
      },
      py::arg("text"), py::arg("source") = "<string>");

  m.def("sha256_hex", &cli::sha256_hex);
}
