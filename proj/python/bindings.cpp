#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <sstream>

#include "ergolab/cli.hpp"
#include "ergolab/fberg.hpp"
#include "ergolab/json_io.hpp"
#include "ergolab/line_search.hpp"
#include "ergolab/stationary.hpp"
#include "ergolab/words.hpp"

namespace py = pybind11;
using namespace ergolab;

namespace {

// documents cross the boundary as JSON text; the Python side decodes them
std::string recur(const std::string& system, const std::vector<std::size_t>& set) {
  FiniteZdSystem sys = system_from_json(parse_json_text(system));
  auto cert = recurrence_certificate(sys, IndexSet(set.begin(), set.end()));
  Json out = {{"limit", cert.limit.to_string()}};
  out["witness_n"] = cert.witness_n ? Json(*cert.witness_n) : Json(nullptr);
  return canonical(out);
}

std::string fjoin(const std::string& system) {
  FiniteZdSystem sys = system_from_json(parse_json_text(system));
  auto fj = furstenberg_joining(sys);
  return canonical({{"coupling", to_json(fj.coupling)}, {"period", fj.period}});
}

std::string correspond(const std::vector<std::string>& words, unsigned k, std::size_t N, std::size_t L) {
  IndexSet a;
  for (auto& w : words) {
    if (w.size() != N) throw InvalidInput("word \"" + w + "\" has the wrong length");
    validate_word(w, k);
    a.push_back(word_index(w, k));
  }
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return canonical(to_json(build_correspondence(a, k, N, L)));
}

py::tuple run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::dispatch(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_ergolab, m) {
  m.doc() = "exact finite ergodic and density Hales-Jewett checks";

  py::register_exception<Error>(m, "ErgolabError", PyExc_ValueError);

  m.def("run", &run, py::arg("args"), "run a CLI command; returns (exit_code, stdout, stderr)");
  m.def("recurrence_certificate", &recur, py::arg("system"), py::arg("set"));
  m.def("furstenberg_joining", &fjoin, py::arg("system"));
  m.def("build_correspondence", &correspond, py::arg("words"), py::arg("k"), py::arg("N"), py::arg("L"));
  m.def("max_line_free", [](unsigned k, std::size_t N) {
    auto r = max_line_free(k, N);
    std::vector<std::string> words;
    for (auto i : r.set) words.push_back(word_from_index(i, k, N));
    return py::make_tuple(r.size, words, r.exhaustive);
  }, py::arg("k"), py::arg("N"));
  m.def("line_count", [](unsigned k, std::size_t N) { return enumerate_lines(k, N).size(); },
        py::arg("k"), py::arg("N"));
  m.def("validate", [](const std::string& doc, const std::string& schema) {
    validate_document(parse_json_text(doc), schema);
  }, py::arg("document"), py::arg("schema") = "auto");
}
