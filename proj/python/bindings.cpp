// Python bindings for the main operations: field arithmetic, matrix kernels,
// enumeration, tables, closures, connectivity sweeps, counting and the
// end-to-end theorem verifier.  Structured results cross the boundary as
// plain dicts (round-tripped through JSON) so they match the CLI output.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "igcert/counts.hpp"
#include "igcert/mat.hpp"
#include "igcert/report.hpp"

namespace py = pybind11;

namespace {

struct PyField {
  igcert::FieldRef ref;
};

PyField make_field_py(uint32_t q, std::optional<std::vector<uint32_t>> poly) {
  return PyField{igcert::make_field(q, std::move(poly))};
}

py::object to_py(const igcert::Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::object big_to_py(const igcert::BigCount& v) {
  return py::module_::import("builtins").attr("int")(v.get_str());
}

igcert::RunConfig make_cfg(int n, int r, uint32_t q,
                           const std::vector<uint32_t>& poly, int64_t budget,
                           uint64_t seed, int jobs) {
  igcert::RunConfig cfg;
  cfg.n = n;
  cfg.r = r;
  cfg.q = q;
  cfg.poly = poly;
  cfg.budget = budget;
  cfg.seed = seed;
  cfg.jobs = jobs;
  return cfg;
}

igcert::Mat mat_arg(const PyField& f, int rows, int cols, const std::string& digits) {
  return igcert::mat_from_digits(f.ref, rows, cols, digits);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "rank-r idempotent structure of M_n(F_q): tables, connectivity "
            "certificates and the GL_r(F_q) presentation collapse";

  py::register_exception<igcert::BudgetError>(m, "BudgetError");

  py::class_<PyField>(m, "Field")
      .def(py::init(&make_field_py), py::arg("q"), py::arg("poly") = py::none())
      .def_property_readonly("q", [](const PyField& f) { return f.ref->q; })
      .def_property_readonly("p", [](const PyField& f) { return f.ref->p; })
      .def_property_readonly("deg", [](const PyField& f) { return f.ref->deg; })
      .def("add", [](const PyField& f, uint32_t a, uint32_t b) {
        return f.ref->add(f.ref->element(a), f.ref->element(b)).code;
      })
      .def("mul", [](const PyField& f, uint32_t a, uint32_t b) {
        return f.ref->mul(f.ref->element(a), f.ref->element(b)).code;
      })
      .def("neg", [](const PyField& f, uint32_t a) {
        return f.ref->neg(f.ref->element(a)).code;
      })
      .def("inv", [](const PyField& f, uint32_t a) {
        return f.ref->inv(f.ref->element(a)).code;
      });

  m.def("make_field", &make_field_py, py::arg("q"), py::arg("poly") = py::none());

  m.def("rank",
        [](const PyField& f, int rows, int cols, const std::string& digits) {
          return igcert::rank(mat_arg(f, rows, cols, digits));
        },
        py::arg("field"), py::arg("rows"), py::arg("cols"), py::arg("digits"));
  m.def("rre",
        [](const PyField& f, int rows, int cols, const std::string& digits) {
          return igcert::mat_digits(igcert::rre(mat_arg(f, rows, cols, digits)));
        },
        py::arg("field"), py::arg("rows"), py::arg("cols"), py::arg("digits"));
  m.def("matmul",
        [](const PyField& f, int r1, int c1, const std::string& d1, int c2,
           const std::string& d2) {
          return igcert::mat_digits(
              igcert::matmul(mat_arg(f, r1, c1, d1), mat_arg(f, c1, c2, d2)));
        },
        py::arg("field"), py::arg("rows"), py::arg("inner"), py::arg("digits_a"),
        py::arg("cols"), py::arg("digits_b"));

  m.def("gaussian_binomial", [](int n, int r, uint32_t q) {
    return big_to_py(igcert::gaussian_binomial(n, r, q));
  });
  m.def("gl_order",
        [](int m_, uint32_t q) { return big_to_py(igcert::gl_order(m_, q)); });
  m.def("idempotent_count", [](int n, int r, uint32_t q) {
    return big_to_py(igcert::idempotent_count(n, r, q));
  });

  m.def("enumerate",
        [](int n, int r, uint32_t q, const std::vector<uint32_t>& poly) {
          return to_py(igcert::cmd_enumerate(
              make_cfg(n, r, q, poly, igcert::kDefaultCellBudget, 1, 1)));
        },
        py::arg("n"), py::arg("r"), py::arg("q"),
        py::arg("poly") = std::vector<uint32_t>{});
  m.def("rees",
        [](int n, int r, uint32_t q, bool full, int64_t budget, int jobs) {
          return to_py(igcert::cmd_rees(
              make_cfg(n, r, q, {}, budget, 1, jobs), full));
        },
        py::arg("n"), py::arg("r"), py::arg("q"), py::arg("full") = false,
        py::arg("budget") = igcert::kDefaultCellBudget, py::arg("jobs") = 1);
  m.def("closure",
        [](int n, int r, uint32_t q, bool lifo) {
          igcert::RunConfig cfg =
              make_cfg(n, r, q, {}, igcert::kDefaultCellBudget, 1, 1);
          cfg.lifo = lifo;
          return to_py(igcert::cmd_closure(cfg));
        },
        py::arg("n"), py::arg("r"), py::arg("q"), py::arg("lifo") = false);
  m.def("lambda_components",
        [](int m_, int k, uint32_t q) {
          return to_py(igcert::cmd_lambda(
              m_, k, make_cfg(2, 1, q, {}, igcert::kDefaultCellBudget, 1, 1)));
        },
        py::arg("m"), py::arg("k"), py::arg("q"));
  m.def("strong",
        [](int n, int r, uint32_t q, const std::string& value, int jobs) {
          return to_py(igcert::cmd_strong(
              make_cfg(n, r, q, {}, igcert::kDefaultCellBudget, 1, jobs), value));
        },
        py::arg("n"), py::arg("r"), py::arg("q"), py::arg("value") = "",
        py::arg("jobs") = 1);
  m.def("counts", [](int n, int r, uint32_t q) {
    return to_py(igcert::cmd_counts(
        make_cfg(n, r, q, {}, igcert::kDefaultCellBudget, 1, 1)));
  });
  m.def("presentation",
        [](int n, int r, uint32_t q, const std::string& mode, int64_t cap) {
          return igcert::cmd_presentation(
              make_cfg(n, r, q, {}, igcert::kDefaultCellBudget, 1, 1), mode, cap);
        },
        py::arg("n"), py::arg("r"), py::arg("q"), py::arg("mode") = "tree-only",
        py::arg("cap") = int64_t{1'000'000});
  m.def("verify_theorem",
        [](int n, int r, uint32_t q, bool exploratory, const std::string& cert_dir,
           uint64_t seed, int jobs) {
          igcert::RunConfig cfg =
              make_cfg(n, r, q, {}, igcert::kDefaultCellBudget, seed, jobs);
          cfg.exploratory = exploratory;
          cfg.out_dir = cert_dir;
          igcert::VerifyOutcome outcome = igcert::cmd_verify_theorem(cfg);
          igcert::write_verify_files(cfg, outcome);
          return to_py(outcome.summary);
        },
        py::arg("n"), py::arg("r"), py::arg("q"), py::arg("exploratory") = false,
        py::arg("cert_dir") = "", py::arg("seed") = 1, py::arg("jobs") = 1);
}
