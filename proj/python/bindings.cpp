#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bbcrystal/cli.hpp"
#include "bbcrystal/verify.hpp"

namespace py = pybind11;
using namespace bbcrystal;

namespace {

BCDatum make_datum(const std::vector<std::vector<int>>& a, const std::vector<int>& d) { return BCDatum(a, d); }

std::string crystal(const std::vector<std::vector<int>>& a, const std::vector<int>& d, int H,
                    const std::vector<int>& dom) {
  CrystalData c = build_crystal(make_ambient(make_datum(a, d), dom), H);
  json j = crystal_json(c.graph);
  j["counts"] = weight_counts(c.graph);
  return j.dump();
}

std::string global(const std::vector<std::vector<int>>& a, const std::vector<int>& d, int H, const std::vector<int>& dom) {
  auto c = std::make_shared<CrystalData>(build_crystal(make_ambient(make_datum(a, d), dom), H));
  return global_json(solve_global(c)).dump();
}

std::string perfect(const std::vector<std::vector<int>>& a, const std::vector<int>& d, int H, const std::vector<int>& dom,
                    bool upper) {
  Pipeline p(make_ambient(make_datum(a, d), dom), H);
  if (!upper) return certificate_json(certify_lower(p.filt, p.basis), p.basis).dump();
  UpperSide up(p);
  return certificate_json(certify_upper(up.filt, up.dual), up.dual).dump();
}

std::string verify(const std::vector<std::vector<int>>& a, const std::vector<int>& d, int H, const std::vector<int>& dom,
                   unsigned seed) {
  VerifyOptions opt;
  opt.H = H;
  opt.dom = dom;
  opt.seed = seed;
  return verify_all(make_datum(a, d), opt).to_json(false).dump();
}

py::tuple cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<InvalidDatum>(m, "InvalidDatum", PyExc_ValueError);
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  m.def("validate_datum", [](const std::string& text) { return datum_json(parse_datum(text)).dump(); });
  m.def("crystal", &crystal, py::arg("A"), py::arg("D"), py::arg("height"), py::arg("dom") = std::vector<int>{});
  m.def("global_basis", &global, py::arg("A"), py::arg("D"), py::arg("height"), py::arg("dom") = std::vector<int>{});
  m.def("perfect", &perfect, py::arg("A"), py::arg("D"), py::arg("height"), py::arg("dom") = std::vector<int>{},
        py::arg("upper") = false);
  m.def("verify_all", &verify, py::arg("A"), py::arg("D"), py::arg("height"), py::arg("dom") = std::vector<int>{},
        py::arg("seed") = 1u);
  m.def("run_cli", &cli);
}
