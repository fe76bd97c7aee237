// Native bindings. Rationals cross the boundary as "p/q" strings and JSON
// documents as text; the Python package converts both.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hyperball/bicombing.hpp"
#include "hyperball/cli.hpp"
#include "hyperball/error.hpp"
#include "hyperball/io.hpp"
#include "hyperball/ip.hpp"
#include "hyperball/lab.hpp"
#include "hyperball/metric.hpp"

namespace py = pybind11;
using namespace hyperball;

namespace {

using StrMatrix = std::vector<std::vector<std::string>>;

std::vector<Scalar> scalars(const std::vector<std::string>& text) {
  std::vector<Scalar> out;
  out.reserve(text.size());
  for (const auto& t : text) out.push_back(parse_scalar(t));
  return out;
}

std::vector<std::string> strings(const std::vector<Scalar>& values) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(format_scalar(v));
  return out;
}

Matrix matrix(const StrMatrix& rows) {
  Matrix m;
  for (const auto& r : rows) m.push_back(scalars(r));
  return m;
}

std::vector<Ball> balls(const std::vector<std::pair<std::vector<std::string>, std::string>>& spec) {
  std::vector<Ball> out;
  for (const auto& [c, r] : spec) out.push_back(Ball{scalars(c), parse_scalar(r)});
  return out;
}

GraphInstance graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                    const std::vector<std::string>& weights) {
  return GraphInstance{n, edges, scalars(weights)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact l-infinity and finite metric routines";

  static py::exception<Error> error_type(m, "NativeError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error_type.ptr())(std::string(to_string(e.code())), e.detail(), e.indices());
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  m.attr("__version__") = std::string(kVersion);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = dispatch(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });

  m.def("is_modular", [](const StrMatrix& d) { return to_json(is_modular(validate_metric(matrix(d)))).dump(); });
  m.def("graph_is_modular", [](std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                               const std::vector<std::string>& weights) {
    return to_json(is_modular(graph_metric(graph(n, edges, weights)))).dump();
  });
  m.def("graph_distances", [](std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                              const std::vector<std::string>& weights) {
    const FiniteMetricSpace s = graph_metric(graph(n, edges, weights));
    std::vector<std::vector<std::string>> out;
    for (const auto& row : s.matrix()) out.push_back(strings(row));
    return out;
  });
  m.def("median_set", [](const StrMatrix& d, std::size_t x, std::size_t y, std::size_t z) {
    return median_set(validate_metric(matrix(d)), x, y, z);
  });

  m.def("helly_counterexample", [](std::size_t n) { return serialize_instance(helly_counterexample(n)); });
  m.def("verify_helly", [](const std::string& text) {
    const Instance inst = parse_instance_text(text);
    const auto* h = std::get_if<HellyInstance>(&inst);
    if (!h) throw Error(ErrorCode::ValidationError, "expected a helly instance");
    return to_json(verify_helly_instance(*h)).dump();
  });
  m.def("normalize_instance", [](const std::string& text) { return serialize_instance(parse_instance_text(text)); });

  m.def("ip_threshold", &ip_threshold);
  m.def("ip_constants", [](std::size_t n, std::size_t k, const std::string& eps) {
    return to_json(ip_constants(n, k, parse_scalar(eps))).dump();
  });
  m.def("ip_default_eps", [](std::size_t n, std::size_t k) { return format_scalar(ip_default_eps(n, k)); });
  m.def("ip_lift", [](const std::vector<std::pair<std::vector<std::string>, std::string>>& spec, std::size_t k,
                      std::size_t rounds) {
    IpLiftConfig cfg;
    cfg.rounds = rounds;
    const IpLiftResult r = ip_lift(balls(spec), k, cfg);
    Json j{{"point", strings(r.point)},
           {"params", to_json(r.params)},
           {"radius", format_scalar(r.radius)},
           {"final_violation", format_scalar(r.final_violation)},
           {"passed", r.report.passed},
           {"warnings", r.warnings}};
    return j.dump();
  });

  m.def(
      "barycenter",
      [](const StrMatrix& points, const std::string& method, const std::string& tau, std::size_t max_rounds,
         const std::string& backend) {
        BarycenterConfig cfg;
        cfg.tau = parse_scalar(tau);
        cfg.max_rounds = max_rounds;
        if (method == "iterate") {
          cfg.method = BarycenterConfig::Method::iterate;
        } else if (method == "closed-form") {
          cfg.method = BarycenterConfig::Method::closed_form;
        } else {
          throw Error(ErrorCode::UsageError, "unknown method " + method);
        }
        BackendKind kind;
        if (backend == "dyadic") {
          kind = BackendKind::dyadic;
        } else if (backend == "exact") {
          kind = BackendKind::exact;
        } else {
          throw Error(ErrorCode::UsageError, "unknown backend " + backend);
        }
        std::vector<LinfPoint> pts;
        for (const auto& p : points) pts.push_back(scalars(p));
        return strings(barycenter_linf(kind, pts, cfg));
      },
      py::arg("points"), py::arg("method") = "iterate", py::arg("tau") = "1/1073741824", py::arg("max_rounds") = 200,
      py::arg("backend") = "dyadic");

  m.def("linf_dist", [](const std::vector<std::string>& p, const std::vector<std::string>& q) {
    return format_scalar(linf_dist(scalars(p), scalars(q)));
  });
}
