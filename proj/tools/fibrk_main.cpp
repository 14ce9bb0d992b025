// fibrk: exact stability functionals and W tables for polarized fibrations
// from numerical intersection data.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fibrk/examples.hpp"
#include "fibrk/io.hpp"

namespace {

using fibrk::OJson;

struct Options {
    std::string format = "text";
    bool check = false;
    bool approx = false;
    std::vector<std::string> assume;
    std::optional<int> truncation;
    std::optional<int> level;
    std::optional<std::string> lambda;
};

fibrk::Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw fibrk::SchemaError("", "cannot open input file '" + path + "'");
    fibrk::Json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw fibrk::SchemaError("", std::string("JSON parse error: ") + e.what());
    }
    return doc;
}

int default_truncation(const Options& opt) {
    if (opt.truncation) return *opt.truncation;
    if (const char* env = std::getenv("FIBRK_TRUNCATION")) {
        try {
            int value = std::stoi(env);
            if (value >= 0) return value;
        } catch (...) {
        }
        std::cerr << "warning: ignoring malformed FIBRK_TRUNCATION\n";
    }
    return 4;
}

void emit(const OJson& payload, const std::string& text, const Options& opt) {
    if (opt.format == "json")
        std::cout << payload.dump(2) << "\n";
    else
        std::cout << text;
}

int run_functionals_cmd(const std::string& path, const Options& opt) {
    fibrk::DatumFile file = fibrk::load_datum(read_json_file(path));
    OJson payload = fibrk::run_functionals(file, opt.check, opt.approx);
    fibrk::FunctionalReport report = fibrk::functional_report(file.datum, opt.check);
    std::string text = fibrk::report_text(report, file.datum.klog.has_value(), opt.approx);
    if (payload.contains("same_scalar"))
        text += "same-scalar check:\n" + fibrk::scalar_text(payload["same_scalar"]);
    emit(payload, text, opt);
    return 0;
}

int run_wtable_cmd(const std::string& path, const Options& opt, bool verdict_only) {
    fibrk::DatumFile file = fibrk::load_datum(read_json_file(path));
    fibrk::SignHypotheses signs = fibrk::parse_sign_flags(opt.assume);
    fibrk::WtableResult result = fibrk::wtable_for(file, signs);
    if (verdict_only) {
        OJson payload = fibrk::verdict_json(result.verdict);
        std::ostringstream os;
        os << "verdict: " << fibrk::to_string(result.verdict.kind) << " -- " << result.verdict.detail
           << "\n";
        emit(payload, os.str(), opt);
    } else {
        OJson payload = fibrk::wtable_json(result.dec, result.verdict, result.notes, opt.approx);
        emit(payload, fibrk::wtable_text(result.dec, result.verdict, result.notes, opt.approx), opt);
    }
    return 0;
}

int run_degenerate_cmd(const std::string& path, const Options& opt) {
    fibrk::Json doc = read_json_file(path);
    std::optional<fibrk::Rational> lambda;
    if (opt.lambda) lambda = fibrk::Rational::parse(*opt.lambda);
    if (fibrk::is_scalar_components(doc)) {
        OJson payload = fibrk::run_scalar_components(fibrk::load_scalar_components(doc));
        emit(payload, fibrk::scalar_text(payload), opt);
        return 0;
    }
    auto entries = fibrk::load_catalog(doc, default_truncation(opt));
    OJson payload = fibrk::run_catalog(entries, opt.level, lambda, opt.approx);
    emit(payload, fibrk::catalog_text(payload), opt);
    return 0;
}

int run_validate_cmd(const std::string& path, const Options& opt) {
    fibrk::Json doc = read_json_file(path);
    std::vector<fibrk::Diagnostic> diags;
    if (fibrk::is_scalar_components(doc)) {
        try {
            fibrk::load_scalar_components(doc);
        } catch (const fibrk::SchemaError& e) {
            diags.push_back({e.pointer(), e.what()});
        }
    } else if (fibrk::is_catalog(doc)) {
        diags = fibrk::validate_catalog(doc);
    } else {
        diags = fibrk::validate_datum(doc);
    }
    OJson payload = OJson::array();
    for (const fibrk::Diagnostic& d : diags)
        payload.push_back(OJson{{"pointer", d.pointer}, {"message", d.message}});
    emit(payload, fibrk::diagnostics_text(diags), opt);
    return diags.empty() ? 0 : 2;
}

int run_examples_cmd(const std::string& name, bool list, const Options& opt) {
    if (list || name.empty()) {
        OJson payload = OJson::array();
        std::ostringstream os;
        for (const fibrk::ExampleInfo& info : fibrk::bundled_examples()) {
            payload.push_back(OJson{{"name", info.name}, {"description", info.description}});
            os << info.name << ": " << info.description << "\n";
        }
        emit(payload, os.str(), opt);
        return 0;
    }
    OJson payload = fibrk::run_example(name);
    emit(payload, fibrk::example_text(payload), opt);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact non-Archimedean stability functionals for polarized fibrations"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--check", opt.check, "include identity checks in reports");
    app.add_flag("--approx", opt.approx, "add decimal renderings (never used in comparisons)");
    app.add_option("--assume", opt.assume, "free-parameter sign declaration, e.g. t>0")
        ->type_size(1)
        ->allow_extra_args(false);
    int truncation = -1;
    auto* trunc_opt = app.add_option("--truncation", truncation, "eps truncation order for catalogs");
    int level = -1;
    auto* level_opt = app.add_option("--level", level, "first nontrivial level for obstructions");
    std::string lambda;
    auto* lambda_opt = app.add_option("--lambda", lambda, "relative-Fano constant for obstructions");

    std::string input;
    auto* cmd_functionals = app.add_subcommand("functionals", "evaluate the NA functionals of a datum");
    cmd_functionals->add_option("file", input)->required();
    auto* cmd_wtable = app.add_subcommand("wtable", "decompose V(H+jL) M^NA into W levels");
    cmd_wtable->add_option("file", input)->required();
    auto* cmd_verdict = app.add_subcommand("verdict", "stability verdict of a datum");
    cmd_verdict->add_option("file", input)->required();
    auto* cmd_degenerate = app.add_subcommand("degenerate", "run a normal-cone degeneration catalog");
    cmd_degenerate->add_option("catalog", input)->required();
    auto* cmd_validate = app.add_subcommand("validate", "schema diagnostics for an input file");
    cmd_validate->add_option("file", input)->required();
    std::string example_name;
    bool list_examples = false;
    auto* cmd_examples = app.add_subcommand("examples", "run a bundled worked example");
    cmd_examples->add_option("name", example_name);
    cmd_examples->add_flag("--list", list_examples, "list bundled examples");

    CLI11_PARSE(app, argc, argv);
    if (*trunc_opt) opt.truncation = truncation;
    if (*level_opt) opt.level = level;
    if (*lambda_opt) opt.lambda = lambda;

    try {
        if (cmd_functionals->parsed()) return run_functionals_cmd(input, opt);
        if (cmd_wtable->parsed()) return run_wtable_cmd(input, opt, false);
        if (cmd_verdict->parsed()) return run_wtable_cmd(input, opt, true);
        if (cmd_degenerate->parsed()) return run_degenerate_cmd(input, opt);
        if (cmd_validate->parsed()) return run_validate_cmd(input, opt);
        if (cmd_examples->parsed()) return run_examples_cmd(example_name, list_examples, opt);
    } catch (const fibrk::SchemaError& e) {
        std::cerr << "schema error at " << (e.pointer().empty() ? "/" : e.pointer()) << ": " << e.what()
                  << "\n";
        return 2;
    } catch (const fibrk::Error& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
