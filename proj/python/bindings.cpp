#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "prodsys/checks.hpp"
#include "prodsys/config.hpp"
#include "prodsys/demos.hpp"
#include "prodsys/expression.hpp"
#include "prodsys/fock.hpp"
#include "prodsys/wick.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace prodsys;

namespace {

struct InexactError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class System {
 public:
  explicit System(const std::string& doc) : cfg_(doc.empty() ? default_config() : parse_config(parse(doc))) {}

  std::string config_json() const { return to_json(cfg_).dump(); }
  std::string normalize(const std::string& s) const { return m().format(m().parse(s)); }
  std::optional<std::string> join(const std::string& s, const std::string& t) const {
    const JoinResult j = m().join(m().parse(s), m().parse(t));
    if (j.is_infinite()) return std::nullopt;
    return m().format(j.value());
  }
  bool leq(const std::string& s, const std::string& t) const { return m().leq(m().parse(s), m().parse(t)); }

  std::string wick_mul(const std::string& a, const std::string& b) const {
    const auto ab = wick_multiply(cfg_.system, expr(a), expr(b));
    if (!ab.exact()) throw InexactError(ab.inexact_reason);
    return format(m(), *ab.value);
  }
  std::string expect(const std::string& x) const { return format(m(), phi_delta(expr(x))); }

  std::string norm_diag(const std::string& x) const {
    const WickElement e = expr(x);
    if (!e.is_diagonal()) throw std::invalid_argument("norm_diag needs a diagonal expression");
    const auto v = norm_diagonal(cfg_.system, e);
    if (!v.exact()) throw InexactError(v.inexact_reason);
    return json{{"value", v.value->value}, {"certificate", m().format(v.value->a)}, {"block_dimension", v.value->matrix_dim}}
        .dump();
  }

  Eigen::MatrixXcd fock_matrix(const std::string& x, std::optional<unsigned> bound) const {
    const IdealBound b = bound ? IdealBound{LengthBound{*bound}} : cfg_.require_truncation();
    const auto basis = std::make_shared<const FockBasis>(cfg_.system, b);
    return Eigen::MatrixXcd(represent(basis, expr(x)).matrix);
  }

  std::string check(const std::string& suite, std::uint64_t seed, std::size_t samples) const {
    return to_json(run_check_suite(cfg_, suite, SuiteOptions{seed, samples}), false).dump();
  }

 private:
  static json parse(const std::string& doc) {
    try {
      return json::parse(doc);
    } catch (const json::parse_error& e) {
      throw ConfigError({std::string("malformed JSON: ") + e.what()});
    }
  }
  const Monoid& m() const { return cfg_.monoid(); }
  WickElement expr(const std::string& s) const { return parse_expression(cfg_.system, s); }

  SystemConfig cfg_;
};

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "prodsys core bindings";
  mod.attr("__version__") = PRODSYS_VERSION;

  py::register_exception<ConfigError>(mod, "ConfigError", PyExc_ValueError);
  py::register_exception<InexactError>(mod, "InexactError", PyExc_ArithmeticError);
  py::register_exception<UnsupportedOperation>(mod, "UnsupportedOperation", PyExc_NotImplementedError);
  py::register_exception<ParseError>(mod, "ParseError", PyExc_ValueError);

  py::class_<System>(mod, "System")
      .def(py::init<const std::string&>(), py::arg("config_json") = "")
      .def("config_json", &System::config_json)
      .def("normalize", &System::normalize)
      .def("join", &System::join)
      .def("leq", &System::leq)
      .def("wick_mul", &System::wick_mul)
      .def("expect", &System::expect)
      .def("norm_diag", &System::norm_diag)
      .def("fock_matrix", &System::fock_matrix, py::arg("x"), py::arg("bound") = py::none())
      .def("check", &System::check, py::arg("suite"), py::arg("seed") = 1, py::arg("samples") = 0);

  mod.def("suite_ids", &suite_ids);
  mod.def("demo_ids", &demo_ids);
  mod.def("run_demo", [](const std::string& name) { return to_json(run_demo(name), false).dump(); });
}
