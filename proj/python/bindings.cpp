#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hbspace/cli.hpp"
#include "hbspace/defect.hpp"
#include "hbspace/error.hpp"
#include "hbspace/io.hpp"
#include "hbspace/parse.hpp"

namespace py = pybind11;
using namespace hbspace;

namespace {

Tolerances tolerances_from(const py::dict& overrides) {
  Tolerances tol;
  for (const auto& [key, value] : overrides) {
    const std::string name = py::cast<std::string>(key);
    bool found = false;
    for (auto& [tname, ptr] : tol.named()) {
      if (tname == name) {
        *ptr = py::cast<double>(value);
        found = true;
      }
    }
    if (name == "grid") {
      tol.grid = py::cast<int>(value);
      found = true;
    }
    if (!found) throw Error(ErrorCode::kInvalidArgument, "unknown tolerance '" + name + "'");
  }
  return tol;
}

Pair make_pair(const std::string& b, const py::dict& tol) {
  const Tolerances t = tolerances_from(tol);
  return pair_from_b(parse_rational(b, t), t);
}

}  // namespace

PYBIND11_MODULE(_hbspace, m) {
  m.doc() = "Computations in de Branges-Rovnyak spaces H(b) for nonextreme rational b";

  static py::exception<Error> error(m, "HbError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(py::str(e.what()));
      exc.attr("code") = error_code_name(e.code());
      exc.attr("input_error") = e.is_input_error();
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.attr("SCHEMA") = kSchemaVersion;

  m.def("parse_rational", [](const std::string& text) {
    const RationalFn f = parse_rational(text);
    return py::make_tuple(f.num().coeffs(), f.den().coeffs());
  }, py::arg("text"), "Numerator and denominator coefficients, ascending degree.");

  m.def("pair_json", [](const std::string& b, const py::dict& tol) { return json_of(make_pair(b, tol)).dump(); },
        py::arg("b"), py::arg("tol") = py::dict());

  m.def("kernel", [](const std::string& b, cplx w, int m, std::size_t n, const py::dict& tol) {
    const Pair pair = make_pair(b, tol);
    if (std::abs(w) < 1.0 - pair.tolerances().cluster) {
      const HbSpace space(pair, approach_truncation(n, w));
      const HbElement k = deriv_kernel(space, w, m);
      return py::make_tuple(k.value.coeffs(), hb_norm(k));
    }
    const HbSpace space(pair, n);
    const HbElement k = boundary_kernel(space, choose_lambda(pair, w).lambda, w, m);
    return py::make_tuple(k.value.coeffs(), hb_norm(k));
  }, py::arg("b"), py::arg("w"), py::arg("m") = 0, py::arg("N") = 512, py::arg("tol") = py::dict(),
     "Taylor coefficients and H(b) norm of the order-m kernel at w (interior or boundary).");

  m.def("hb_inner", [](const std::string& b, const std::vector<cplx>& f, const std::vector<cplx>& g, std::size_t n,
                       const py::dict& tol) {
    const HbSpace space(make_pair(b, tol), n);
    return hb_inner(space.element(HardyVec(f).resized(n)), space.element(HardyVec(g).resized(n)));
  }, py::arg("b"), py::arg("f"), py::arg("g"), py::arg("N") = 512, py::arg("tol") = py::dict());

  m.def("defect_json", [](const std::string& b, std::size_t n, const py::dict& tol) {
    py::gil_scoped_release release;
    return json_of(defect_space(make_pair(b, tol), n)).dump();
  }, py::arg("b"), py::arg("N") = 512, py::arg("tol") = py::dict());

  m.def("verify_json", [](const std::string& b, cplx z0, int k, std::size_t n, std::uint64_t seed,
                          const py::dict& tol) {
    const Pair pair = make_pair(b, tol);
    py::gil_scoped_release release;
    return json_of(verify_boundary_kernels(pair, z0, k, n, seed)).dump();
  }, py::arg("b"), py::arg("z0"), py::arg("k") = 0, py::arg("N") = 512, py::arg("seed") = 0,
     py::arg("tol") = py::dict());

  m.def("run", [](const std::vector<std::string>& args) {
    std::vector<std::string> full{"hbspace"};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : full) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(status, out.str(), err.str());
  }, py::arg("args"), "Runs the command line front end in-process; returns (status, stdout, stderr).");
}
