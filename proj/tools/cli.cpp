#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "tdl/coeffs.hpp"
#include "tdl/empirical.hpp"
#include "tdl/errors.hpp"
#include "tdl/integral.hpp"
#include "tdl/numeric.hpp"
#include "tdl/saddle.hpp"
#include "tdl/wfunc.hpp"

#ifndef TDL_VERSION
#define TDL_VERSION "0.0.0"
#endif

namespace tdl::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::vector<std::string> split_list(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

struct Settings {
    int m = 4;
    double t = 10.0;
    std::uint64_t n = 0;
    std::string thresholds = "1,1.5,2,2.5,3,3.5,4";
    double tol = 1e-10;
    std::string methods = "baseline,thm1,saddle,thm2";
    std::string checks;
    std::string format;
    std::string out_path;
    std::uint64_t samples = 100000;
};

void check_m(int m) {
    if (m < 2 || m > 10) throw UsageError("--m must lie in 2..10");
}

json make_report(const std::string& command, json parameters, json results, int m_for_hash) {
    json report;
    report["command"] = command;
    report["parameters"] = std::move(parameters);
    report["results"] = std::move(results);
    report["versions"] = {{"tool", TDL_VERSION}, {"coefficients", hex64(compute_chain(m_for_hash).hash())}};
    return report;
}

void write_text(const std::string& text, const Settings& s, std::ostream& out) {
    if (s.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(s.out_path);
    if (!file) throw ResourceError("cannot open '" + s.out_path + "' for writing");
    file << text;
}

// ------------------------------------------------------------ commands

json cmd_coeffs(const Settings& s, std::string& text) {
    check_m(s.m);
    const CoefficientSet cs = compute_chain(s.m);
    text = cs.to_text();
    return make_report("coeffs", {{"m", s.m}}, cs.to_json(), s.m);
}

json cmd_estimate(const Settings& s, std::string& text) {
    check_m(s.m);
    const double t = s.t;
    if (!(s.tol > 0.0)) throw UsageError("--tol must be positive");
    if (!(tail_scale(t) >= 2.71828182845904523536 * (1.0 - 1e-12)))
        throw UsageError("--t must be at least e^gamma");
    std::vector<Method> methods;
    for (const std::string& name : split_list(s.methods)) methods.push_back(parse_method(name));
    if (methods.empty()) throw UsageError("--methods is empty");

    const double y = tail_scale(t);
    json results = {{"t", t}, {"y", y}, {"log_y", log_tail_scale(t)}};
    json per = json::object();
    std::ostringstream lines;
    double lo = INFINITY, hi = -INFINITY;
    for (Method m : methods) {
        json entry;
        double value = 0.0;
        switch (m) {
            case Method::baseline:
                value = baseline_estimate(t).log_value;
                break;
            case Method::thm1: {
                const TailEstimate e = thm1_estimate(t, s.m, compute_chain(s.m));
                value = e.log_value;
                entry["m"] = s.m;
                entry["terms"] = e.terms;
                break;
            }
            case Method::saddle: {
                const SaddleResult r = minimize_chernoff(t, s.tol);
                value = r.log_min;
                entry["s_star"] = r.s_star;
                entry["grad_residual"] = r.grad_residual;
                entry["iterations"] = r.iterations;
                entry["boundary"] = r.boundary;
                entry["lower_bracket"] = r.lower_bracket();
                entry["cutoff"] = r.cutoff;
                entry["tail_bound"] = r.tail_bound;
                break;
            }
            case Method::thm2: {
                const IntegralEstimate e = thm2_estimate(t, s.tol);
                value = e.log_value;
                entry["s_min"] = e.s_min;
                entry["I_min"] = e.I_min;
                entry["interior"] = e.interior;
                entry["unimodal"] = e.unimodal;
                entry["quadrature_error"] = e.quadrature_error;
                entry["panels"] = e.panels;
                entry["J"] = {e.j_lo, e.j_hi};
                break;
            }
        }
        entry["log_value"] = value;
        per[to_string(m)] = entry;
        lo = std::min(lo, value);
        hi = std::max(hi, value);
        char buf[96];
        std::snprintf(buf, sizeof buf, "%-9s %.17g\n", to_string(m).c_str(), value);
        lines << buf;
    }
    const double log_y = std::log(y);
    const double limit = y / (log_y * log_y);
    results["methods"] = per;
    results["spread"] = hi - lo;
    results["spread_limit"] = limit;
    results["consistent"] = hi - lo <= limit;
    text = lines.str();
    return make_report("estimate",
                       {{"t", t}, {"m", s.m}, {"tol", s.tol}, {"methods", split_list(s.methods)}},
                       std::move(results), s.m);
}

json bridge_json(const BridgeCertificate& c) {
    return {{"t", c.t},
            {"y", c.y},
            {"m", c.m},
            {"log_m", c.log_m},
            {"log_m_limit", c.log_m_limit},
            {"p_lower", c.p_lower},
            {"p_limit", c.p_limit},
            {"shifted_t", c.shifted_t},
            {"sample_limit", c.sample_limit},
            {"samples_checked", c.samples_checked},
            {"failures", c.failures},
            {"all_passed", c.all_passed}};
}

json cmd_empirical(const Settings& s, std::string& csv, bool& failed) {
    const auto thresholds = parse_thresholds(s.thresholds);
    const EmpiricalTail tail = sieve_tails(s.n, thresholds);
    csv = tail.to_csv();

    json rows = json::array();
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        const auto density = [&](std::uint64_t c) {
            return c == 0 ? -INFINITY : std::log(static_cast<double>(c) / static_cast<double>(tail.N));
        };
        rows.push_back({{"threshold", thresholds[i].text},
                        {"count_A", tail.counts_A[i]},
                        {"count_B", tail.counts_B[i]},
                        {"count_D", tail.counts_D[i]},
                        {"log_density_A", density(tail.counts_A[i])},
                        {"log_density_B", density(tail.counts_B[i])},
                        {"log_density_D", density(tail.counts_D[i])}});
    }
    json results = {{"N", tail.N}, {"rows", rows}};
    json checks = json::object();
    for (const std::string& name : split_list(s.checks)) {
        if (name == "chernoff") {
            json list = json::array();
            bool ok = true;
            for (const ChernoffRow& r : chernoff_rows(tail)) {
                list.push_back({{"threshold", r.t.text},
                                {"log_density", r.density > 0 ? std::log(r.density) : -INFINITY},
                                {"log_bound", r.log_bound},
                                {"gap", r.gap},
                                {"within", r.within}});
                ok = ok && r.within;
            }
            checks["chernoff"] = {{"passed", ok}, {"rows", list}};
            failed = failed || !ok;
        } else if (name == "dedekind") {
            json list = json::array();
            bool ok = true;
            for (const DedekindRow& r : dedekind_rows(s.n, thresholds)) {
                list.push_back({{"threshold", r.t.text},
                                {"count_B", r.count_B},
                                {"count_D", r.count_D},
                                {"holds", r.holds()}});
                ok = ok && r.holds();
            }
            checks["dedekind"] = {{"passed", ok}, {"rows", list}};
            failed = failed || !ok;
        } else if (name == "order") {
            bool ok = true;
            for (std::size_t i = 0; i < thresholds.size(); ++i) ok = ok && tail.counts_A[i] <= tail.counts_B[i];
            checks["order"] = {{"passed", ok}};
            failed = failed || !ok;
        } else if (name == "bridge") {
            json list = json::array();
            bool ok = true;
            const std::uint64_t limit = std::min<std::uint64_t>(s.n, s.samples);
            for (const Threshold& t : thresholds) {
                if (t.value() < 2.0) continue;
                const BridgeCertificate c = bridge_certificate(t.value(), limit);
                list.push_back(bridge_json(c));
                ok = ok && c.all_passed;
            }
            checks["bridge"] = {{"passed", ok}, {"certificates", list}};
            failed = failed || !ok;
        } else {
            throw UsageError("unknown check '" + name + "' (chernoff, dedekind, order, bridge)");
        }
    }
    if (!checks.empty()) results["checks"] = checks;
    return make_report("empirical", {{"n", s.n}, {"thresholds", s.thresholds}, {"checks", split_list(s.checks)}},
                       std::move(results), 4);
}

json cmd_bridge(const Settings& s, bool& failed) {
    const BridgeCertificate c = bridge_certificate(s.t, s.samples);
    failed = !c.all_passed;
    return make_report("bridge", {{"t", s.t}, {"samples", s.samples}}, bridge_json(c), 4);
}

json cmd_selftest(bool& failed) {
    json list = json::array();
    auto record = [&](const std::string& name, bool ok, json detail = nullptr) {
        list.push_back({{"name", name}, {"passed", ok}, {"detail", std::move(detail)}});
        failed = failed || !ok;
    };

    const CoefficientSet cs = compute_chain(4);
    bool gammas = true;
    for (const auto& [j, a] : cs.a) gammas = gammas && a.gamma_power() == j;
    record("coefficient chain internal checks", true, {{"hash", hex64(cs.hash())}});
    record("a_j carries e^{j gamma}", gammas);
    record("b_j symbolic vs numeric", [&] {
        for (const auto& [j, b] : cs.b) {
            const double num = alternating_sum_numeric((cs.q.at(j) + cs.r.at(j)) * RationalFunc::monomial(1, -1));
            if (std::fabs(num - numeric_eval(b)) > 1e-10 * std::max(1.0, std::fabs(num))) return false;
        }
        return true;
    }());
    record("log W(0) = 0", log_w(0.0, 1e-9).value == 0.0);

    // direct enumeration at N = 100
    std::uint64_t a2 = 0, b2 = 0;
    for (std::uint64_t n = 1; n <= 100; ++n) {
        std::uint64_t sigma = 0;
        for (std::uint64_t d = 1; d <= n; ++d)
            if (n % d == 0) sigma += d;
        std::uint64_t phi = 0;
        for (std::uint64_t k = 1; k <= n; ++k) phi += std::gcd(n, k) == 1;
        a2 += sigma >= 2 * n;
        b2 += n >= 2 * phi;
    }
    const EmpiricalTail tail = sieve_tails(100, parse_thresholds("2"));
    record("sieve counts at N = 100", tail.counts_A[0] == a2 && tail.counts_B[0] == b2,
           {{"count_A", tail.counts_A[0]}, {"count_B", tail.counts_B[0]}});
    record("sigma(n)/n < n/phi(n) for 2 <= n <= 10^4", pointwise_sigma_phi_violation(10000) == 0);
    const SaddleResult r1 = minimize_chernoff(1.0, 1e-10);
    record("Chernoff minimum at t = 1 is the boundary", r1.boundary && r1.log_min == 0.0);
    return make_report("selftest", json::object(), {{"checks", list}}, 4);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tail estimates for sigma(n)/n and n/phi(n)", "tdl"};
    app.require_subcommand(1);
    Settings s;

    auto* coeffs = app.add_subcommand("coeffs", "symbolic expansion coefficients");
    coeffs->add_option("--m", s.m, "expansion order (2..10)");
    coeffs->add_option("--format", s.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    coeffs->add_option("--out", s.out_path, "write output to PATH");

    auto* estimate = app.add_subcommand("estimate", "log-scale tail estimates");
    estimate->add_option("--t", s.t, "threshold t")->required();
    estimate->add_option("--m", s.m, "expansion order for thm1 (2..10)");
    estimate->add_option("--tol", s.tol, "solver tolerance");
    estimate->add_option("--methods", s.methods, "comma list of baseline,thm1,saddle,thm2");
    estimate->add_option("--format", s.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    estimate->add_option("--out", s.out_path, "write output to PATH");

    auto* empirical = app.add_subcommand("empirical", "sieve counts with optional checks");
    empirical->add_option("--n", s.n, "sieve limit N")->required();
    empirical->add_option("--thresholds", s.thresholds, "comma list of ascending decimals >= 1");
    empirical->add_option("--checks", s.checks, "comma list of chernoff,dedekind,order,bridge");
    empirical->add_option("--samples", s.samples, "bridge sample limit (at most 10^6)");
    empirical->add_option("--format", s.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    empirical->add_option("--out", s.out_path, "write CSV to PATH");

    auto* bridge = app.add_subcommand("bridge", "certificate for the sigma/phi bridge");
    bridge->add_option("--t", s.t, "threshold t >= 2")->required();
    bridge->add_option("--n,--samples", s.samples, "check every n up to this limit (at most 10^6)");
    bridge->add_option("--out", s.out_path, "write output to PATH");

    auto* selftest = app.add_subcommand("selftest", "quick internal consistency checks");
    selftest->add_option("--out", s.out_path, "write output to PATH");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    auto finish = [&](json report) {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        report["wall_time_ms"] = ms.count();
        return report.dump(2) + "\n";
    };

    try {
        bool failed = false;
        if (app.got_subcommand(coeffs)) {
            std::string text;
            json report = cmd_coeffs(s, text);
            write_text(s.format == "text" ? text : finish(std::move(report)), s, out);
        } else if (app.got_subcommand(estimate)) {
            std::string text;
            json report = cmd_estimate(s, text);
            write_text(s.format == "text" ? text : finish(std::move(report)), s, out);
        } else if (app.got_subcommand(empirical)) {
            std::string csv;
            json report = cmd_empirical(s, csv, failed);
            if (s.format == "json") {
                out << finish(std::move(report));
                if (!s.out_path.empty()) write_text(csv, s, out);
            } else {
                write_text(csv, s, out);
                if (report["results"].contains("checks")) err << report["results"]["checks"].dump(2) << "\n";
            }
        } else if (app.got_subcommand(bridge)) {
            write_text(finish(cmd_bridge(s, failed)), s, out);
        } else if (app.got_subcommand(selftest)) {
            write_text(finish(cmd_selftest(failed)), s, out);
        }
        return failed ? kConsistency : kOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << "\n";
        return kResource;
    } catch (const PipelineError& e) {
        err << "consistency error: " << e.what();
        if (!e.offending().empty()) err << " [" << e.offending() << "]";
        err << "\n";
        return kConsistency;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kConsistency;
    }
}

}  // namespace tdl::cli
