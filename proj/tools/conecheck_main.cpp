// conecheck: load a scenario file, answer expression queries against its
// models, and run its verification pipeline.
//
// Exit codes: 0 every requested step passed, 1 a pipeline expectation or
// certificate replay failed, 2 the scenario or an expression did not load,
// parse or evaluate.

#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "conecheck/report.hpp"

namespace {

using conecheck::EvalValue;
using conecheck::Scenario;

int eval_command(const std::string& path, const std::string& expr, const std::string& format,
                 bool with_tree) {
    Scenario sc = conecheck::load_scenario_file(path);
    EvalValue v = conecheck::eval_expression(sc, expr);
    std::string tree = v.cert ? conecheck::render_cert(*v.cert) : "";
    if (format == "json") {
        nlohmann::ordered_json doc;
        doc["scenario"] = sc.name;
        doc["expression"] = expr;
        doc["value"] = v.display;
        if (with_tree) doc["tree"] = tree;
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << expr << " = " << v.display << "\n";
        if (with_tree) std::cout << (tree.empty() ? "no certificate\n" : tree);
    }
    return 0;
}

int verify_command(const std::string& path, const conecheck::ReportOptions& opt) {
    Scenario sc = conecheck::load_scenario_file(path);
    conecheck::ReportResult res = conecheck::run_verify(sc, opt);
    std::cout << res.rendered;
    return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified divisor-class cohomology and cone verdicts over scenario files"};
    app.require_subcommand(1);

    std::string path, expr, format = "text";
    conecheck::ReportOptions opt;

    CLI::App* verify = app.add_subcommand("verify", "run the scenario's verification pipeline");
    verify->add_option("scenario", path, "scenario file")->required();
    verify->add_option("--nmax", opt.nmax, "override the sweep depth");
    verify->add_option("--format", opt.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--check", opt.only_check, "run a single named step");
    verify->add_option("--explain", opt.explain, "append the certificate tree of an expression");

    CLI::App* eval = app.add_subcommand("eval", "evaluate an expression against the models");
    eval->add_option("scenario", path, "scenario file")->required();
    eval->add_option("expression", expr, "expression to evaluate")->required();
    eval->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

    CLI::App* explain = app.add_subcommand("explain", "evaluate and print the certificate tree");
    explain->add_option("scenario", path, "scenario file")->required();
    explain->add_option("expression", expr, "expression to evaluate")->required();
    explain->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return verify_command(path, opt);
        if (eval->parsed()) return eval_command(path, expr, format, false);
        return eval_command(path, expr, format, true);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
