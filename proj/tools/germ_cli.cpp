// germ: command-line front end for the analysis pipeline.
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "germ/analysis.hpp"
#include "germ/errors.hpp"
#include "germ/parse.hpp"
#include "json.hpp"

namespace {

using germ::Rational;
using nlohmann::json;

enum ExitCode { kOk = 0, kUsage = 1, kCapability = 2, kVerification = 3 };

constexpr double kFitTolerance = 1e-2;
constexpr double kCnTolerance = 1e-12;

struct Options {
    std::string input;
    std::string order;
    double epsilon = 0.25;
    double mu = 2.0;
    std::vector<double> t_sweep{1e-1, 1e-2, 1e-3};
    std::uint64_t seed = 1;
    int samples = 1000;
    std::string json_path;
    std::string dot_path;
    std::string chart = "hp";
    std::string nu = "1";
    std::string nu_prime;
    bool verify_cn = false;
    std::string report;
};

// --input names a file when one exists at that path, otherwise it is the expression itself.
std::string read_input(const std::string& arg) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(arg, ec)) return arg;
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
    return text;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << content;
}

json rational_json(const Rational& r) {
    return {{"num", Rational(r.numerator()).to_long()}, {"den", Rational(r.denominator()).to_long()}};
}

germ::analysis::AnalysisConfig config_from(const Options& o) {
    germ::analysis::AnalysisConfig c;
    if (!o.order.empty()) c.order = Rational::parse(o.order);
    c.carousel.epsilon = o.epsilon;
    c.carousel.mu = o.mu;
    c.t_sweep = o.t_sweep;
    c.seed = o.seed;
    c.cn_samples = o.samples;
    return c;
}

int cmd_analyze(const Options& o) {
    const auto report = germ::analysis::analyze(read_input(o.input), config_from(o));
    std::cout << germ::analysis::to_text(report);
    if (!o.json_path.empty()) write_file(o.json_path, germ::analysis::to_json(report));
    if (!o.dot_path.empty())
        write_file(o.dot_path, germ::decomposition::to_dot(germ::analysis::graph_from_report(report)));
    return report.verified() ? kOk : kVerification;
}

int cmd_puiseux(const Options& o) {
    const auto text = read_input(o.input);
    germ::puiseux::ExpandOptions options;
    if (!o.order.empty()) options.order = Rational::parse(o.order);
    const auto branches = germ::puiseux::puiseux_expand(germ::poly::parse_poly(text), options);
    const auto reports = germ::analysis::describe_branches(branches);
    json out = {{"schema", "1"}, {"input", text}, {"branches", json::array()}};
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& b = reports[i];
        std::cout << "branch " << i << ": exponents [";
        json exps = json::array();
        json pairs = json::array();
        for (std::size_t k = 0; k < b.exponents.size(); ++k) {
            std::cout << (k ? ", " : "") << b.exponents[k].str();
            exps.push_back(rational_json(b.exponents[k]));
        }
        std::cout << "] pairs [";
        for (std::size_t k = 0; k < b.pairs.size(); ++k) {
            std::cout << (k ? ", " : "") << "(" << b.pairs[k].first << "," << b.pairs[k].second << ")";
            pairs.push_back({b.pairs[k].first, b.pairs[k].second});
        }
        std::cout << "] conjugates " << b.conjugates << "\n  y = " << b.series << "\n";
        out["branches"].push_back({{"series", b.series},
                                   {"exponents", exps},
                                   {"pairs", pairs},
                                   {"conjugates", b.conjugates},
                                   {"truncation_order", rational_json(b.truncation_order)}});
    }
    if (!o.json_path.empty()) write_file(o.json_path, out.dump(2) + "\n");
    return kOk;
}

int cmd_metrics(const Options& o) {
    namespace m = germ::metrics;
    const Rational nu = Rational::parse(o.nu);
    const auto need_prime = [&o]() {
        if (o.nu_prime.empty()) throw std::invalid_argument("--nuprime is required for this chart");
        return Rational::parse(o.nu_prime);
    };
    json out = {{"schema", "1"}};
    bool ok = true;
    if (o.verify_cn) {
        const Rational nu_prime = need_prime();
        std::mt19937_64 rng(o.seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<std::array<double, 3>> samples;
        for (int i = 0; i < o.samples; ++i) {
            const double t = 1e-3 + (1.0 - 1e-3) * u(rng);
            const double r = 1.0 + u(rng);
            samples.push_back({t, r, 2.0 * std::numbers::pi * u(rng)});
        }
        const auto check = m::verify_cn_identity(nu, nu_prime, samples);
        const bool pass = check.max_deviation <= kCnTolerance;
        ok = ok && pass;
        std::printf("cheeger-nagase identity nu=%s nu'=%s: max deviation %.3e over %zu samples (tolerance %.0e) %s\n",
                    nu.str().c_str(), nu_prime.str().c_str(), check.max_deviation, check.evaluated, kCnTolerance,
                    pass ? "ok" : "FAIL");
        out["cn_identity"] = {{"nu", rational_json(nu)},
                              {"nu_prime", rational_json(nu_prime)},
                              {"max_deviation", check.max_deviation},
                              {"evaluated", check.evaluated},
                              {"tolerance", kCnTolerance},
                              {"passed", pass}};
    } else {
        m::MetricChart chart = m::cone();
        if (o.chart == "hp") chart = m::hsiang_pati(nu);
        else if (o.chart == "cn") chart = m::cheeger_nagase(nu, need_prime());
        else if (o.chart == "annulus") chart = m::annulus_family(nu, need_prime());
        else if (o.chart == "mtc") chart = m::mapping_torus_cone(nu);
        else if (o.chart != "cone") throw std::invalid_argument("unknown chart '" + o.chart + "'");
        const auto fit = m::fit_shrink_exponent(chart, m::standard_loop(chart), o.t_sweep);
        const Rational rate = m::shrink_rate(chart);
        const bool pass = std::abs(fit.exponent - rate.to_double()) <= kFitTolerance;
        ok = ok && pass;
        std::printf("chart %s: fitted exponent %.4f, expected %s (tolerance %.0e) %s\n", germ::to_string(m::kind(chart)).c_str(),
                    fit.exponent, rate.str().c_str(), kFitTolerance, pass ? "ok" : "FAIL");
        std::printf("metrically conical: %s\n", rate == Rational(1) ? "yes" : "no");
        out["fit"] = {{"chart", germ::to_string(m::kind(chart))},
                      {"exponent", fit.exponent},
                      {"expected", rational_json(rate)},
                      {"tolerance", kFitTolerance},
                      {"t", fit.t},
                      {"lengths", fit.lengths},
                      {"conical", rate == Rational(1)},
                      {"passed", pass}};
    }
    if (!o.json_path.empty()) write_file(o.json_path, out.dump(2) + "\n");
    return ok ? kOk : kVerification;
}

int cmd_graph(const Options& o) {
    std::ifstream in(o.report);
    if (!in) throw std::invalid_argument("cannot read report " + o.report);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto dot = germ::decomposition::to_dot(germ::analysis::graph_from_report(germ::analysis::report_from_json(ss.str())));
    if (o.dot_path.empty()) std::cout << dot;
    else write_file(o.dot_path, dot);
    return kOk;
}

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("germ");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* level = std::getenv("GERM_LOG")) spdlog::set_level(spdlog::level::from_str(level));
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    Options o;
    CLI::App app{"Metric decomposition of complex surface germs z3^d = g(z1, z2)"};
    app.require_subcommand(1);

    const auto add_common = [&o](CLI::App* cmd) {
        cmd->add_option("--input,-i", o.input, "polynomial expression or a file containing one")->required();
        cmd->add_option("--order", o.order, "truncation order p/q");
        cmd->add_option("--json", o.json_path, "write the JSON report here");
    };
    auto* analyze = app.add_subcommand("analyze", "full decomposition of a germ");
    add_common(analyze);
    analyze->add_option("--epsilon", o.epsilon, "carousel radius");
    analyze->add_option("--mu", o.mu, "carousel width factor");
    analyze->add_option("--tsweep", o.t_sweep, "t values for exponent fits")->delimiter(',');
    analyze->add_option("--seed", o.seed, "seed for sampled checks");
    analyze->add_option("--samples", o.samples, "samples for the identity check");
    analyze->add_option("--dot", o.dot_path, "write the DOT graph here");

    auto* puiseux = app.add_subcommand("puiseux", "Puiseux characteristic data of a plane curve");
    add_common(puiseux);

    auto* metrics = app.add_subcommand("metrics", "shrink-exponent fits and metric identities");
    metrics->add_option("--chart", o.chart, "cone, hp, cn, annulus or mtc")
        ->check(CLI::IsMember({"cone", "hp", "cn", "annulus", "mtc"}));
    metrics->add_option("--nu", o.nu, "rate nu as p/q");
    metrics->add_option("--nuprime", o.nu_prime, "inner rate nu' as p/q");
    metrics->add_flag("--verify-cn", o.verify_cn, "check the annulus / Cheeger-Nagase identity");
    metrics->add_option("--tsweep", o.t_sweep, "t values")->delimiter(',');
    metrics->add_option("--seed", o.seed, "sample seed");
    metrics->add_option("--samples", o.samples, "identity samples");
    metrics->add_option("--json", o.json_path, "write results as JSON");

    auto* graph = app.add_subcommand("graph", "DOT graph of a saved analysis report");
    graph->add_option("report", o.report, "JSON report from analyze --json")->required();
    graph->add_option("--dot", o.dot_path, "write DOT here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*analyze) return cmd_analyze(o);
        if (*puiseux) return cmd_puiseux(o);
        if (*metrics) return cmd_metrics(o);
        return cmd_graph(o);
    } catch (const germ::CapabilityError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kCapability;
    } catch (const germ::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kVerification;
    } catch (const germ::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
