#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "tdl/coeffs.hpp"
#include "tdl/empirical.hpp"
#include "tdl/errors.hpp"
#include "tdl/integral.hpp"
#include "tdl/primes.hpp"
#include "tdl/saddle.hpp"
#include "tdl/wfunc.hpp"

namespace py = pybind11;
using namespace tdl;

namespace {

py::object json_to_python(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

std::tuple<int, std::string, std::string> run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "tdl");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code;
    {
        py::gil_scoped_release release;
        code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    }
    return {code, out.str(), err.str()};
}

}  // namespace

PYBIND11_MODULE(_tdl, m) {
    m.doc() = "Tail estimates for sigma(n)/n and n/phi(n)";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
    py::register_exception<PipelineError>(m, "PipelineError", PyExc_RuntimeError);

    m.def("prime_count", [](std::uint64_t limit) { return sieve_primes(limit).size(); }, py::arg("limit"));
    m.def("log_mertens", &log_mertens, py::arg("u"));
    m.def("log_primorial", &log_primorial, py::arg("u"));

    m.def(
        "coefficients", [](int m_) { return json_to_python(compute_chain(m_).to_json()); }, py::arg("m"),
        "Full coefficient set as a dict of families, each entry {text, pretty, value}.");
    m.def(
        "coefficients_text", [](int m_) { return compute_chain(m_).to_text(); }, py::arg("m"));

    py::class_<LogWValue>(m, "LogWValue")
        .def_readonly("s", &LogWValue::s)
        .def_readonly("value", &LogWValue::value)
        .def_readonly("cutoff", &LogWValue::cutoff)
        .def_readonly("tail_bound", &LogWValue::tail_bound);
    m.def("log_w", &log_w, py::arg("s"), py::arg("tol") = 1e-9, py::call_guard<py::gil_scoped_release>());
    m.def("log_w_d1", &log_w_d1, py::arg("s"), py::arg("tol") = 1e-9, py::call_guard<py::gil_scoped_release>());
    m.def("log_w_d2", &log_w_d2, py::arg("s"), py::arg("tol") = 1e-9, py::call_guard<py::gil_scoped_release>());
    m.def("solve_z", &solve_z, py::arg("s"));

    py::class_<SaddleResult>(m, "SaddleResult")
        .def_readonly("t", &SaddleResult::t)
        .def_readonly("y", &SaddleResult::y)
        .def_readonly("s_star", &SaddleResult::s_star)
        .def_readonly("log_min", &SaddleResult::log_min)
        .def_readonly("grad_residual", &SaddleResult::grad_residual)
        .def_readonly("iterations", &SaddleResult::iterations)
        .def_readonly("boundary", &SaddleResult::boundary)
        .def("lower_bracket", &SaddleResult::lower_bracket);
    m.def(
        "minimize_chernoff", [](double t, double tol) { return minimize_chernoff(t, tol); }, py::arg("t"),
        py::arg("tol") = 1e-10, py::call_guard<py::gil_scoped_release>());
    m.def(
        "thm1_estimate", [](double t, int m_) { return thm1_estimate(t, m_, compute_chain(m_)).log_value; },
        py::arg("t"), py::arg("m") = 4, "Log-scale expansion estimate -y(1 + sum a_j/t^j).");

    py::class_<IntegralEstimate>(m, "IntegralEstimate")
        .def_readonly("t", &IntegralEstimate::t)
        .def_readonly("y", &IntegralEstimate::y)
        .def_readonly("s_min", &IntegralEstimate::s_min)
        .def_readonly("I_min", &IntegralEstimate::I_min)
        .def_readonly("log_value", &IntegralEstimate::log_value)
        .def_readonly("interior", &IntegralEstimate::interior)
        .def_readonly("unimodal", &IntegralEstimate::unimodal);
    m.def("integral_I", &integral_I, py::arg("y"), py::arg("s"), py::arg("tol") = 1e-10);
    m.def("thm2_estimate", &thm2_estimate, py::arg("t"), py::arg("tol") = 1e-10,
          py::call_guard<py::gil_scoped_release>());

    m.def(
        "sieve_tails",
        [](std::uint64_t n, const std::string& thresholds) {
            EmpiricalTail tail;
            {
                py::gil_scoped_release release;
                tail = sieve_tails(n, parse_thresholds(thresholds));
            }
            py::dict out;
            out["N"] = tail.N;
            py::list ts;
            for (const auto& t : tail.thresholds) ts.append(t.text);
            out["thresholds"] = ts;
            out["count_A"] = tail.counts_A;
            out["count_B"] = tail.counts_B;
            out["count_D"] = tail.counts_D;
            out["csv"] = tail.to_csv();
            return out;
        },
        py::arg("n"), py::arg("thresholds"), "Exact counts for a comma-separated threshold list.");
    m.def(
        "dedekind_check", [](std::uint64_t n, const std::string& t) { return dedekind_check(n, parse_threshold(t)); },
        py::arg("n"), py::arg("t"), py::call_guard<py::gil_scoped_release>());

    py::class_<BridgeCertificate>(m, "BridgeCertificate")
        .def_readonly("t", &BridgeCertificate::t)
        .def_readonly("y", &BridgeCertificate::y)
        .def_readonly("m", &BridgeCertificate::m)
        .def_readonly("log_m", &BridgeCertificate::log_m)
        .def_readonly("p_lower", &BridgeCertificate::p_lower)
        .def_readonly("p_limit", &BridgeCertificate::p_limit)
        .def_readonly("samples_checked", &BridgeCertificate::samples_checked)
        .def_readonly("failures", &BridgeCertificate::failures)
        .def_readonly("all_passed", &BridgeCertificate::all_passed);
    m.def("bridge_certificate", &bridge_certificate, py::arg("t"), py::arg("sample_limit") = 100000,
          py::call_guard<py::gil_scoped_release>());

    m.def("run_cli", &run_cli, py::arg("args"), "Runs one CLI command; returns (exit_code, stdout, stderr).");
}
