#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "polystrata/cli.hpp"

using polystrata::cli::json;
namespace cli = polystrata::cli;

namespace {

int emit(const cli::Outcome& out, const std::string& path) {
    std::string text = out.report.dump(2) + "\n";
    if (path.empty() || out.exit_code != cli::kOk) {
        (out.exit_code == cli::kOk ? std::cout : std::cerr) << text;
        if (out.exit_code != cli::kOk && !path.empty()) std::cout << text;
    } else {
        std::ofstream f(path);
        if (!f) {
            std::cerr << cli::error_report("io_error", "cannot write " + path).dump(2) << "\n";
            return cli::kInputError;
        }
        f << text;
    }
    return out.exit_code;
}

int fail(const std::string& code, const std::string& message) {
    cli::Outcome o{cli::kInputError, cli::error_report(code, message)};
    return emit(o, "");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact lattice polytope, subdivision and periodic Delaunay computations"};
    std::string subcommand, in_path, inline_json, fixture, out_path;
    cli::Options opts;
    std::string names;
    for (const auto& s : cli::subcommands()) names += (names.empty() ? "" : ", ") + s;
    app.add_option("subcommand", subcommand, "one of: " + names)->required();
    auto* in = app.add_option("--in", in_path, "read input JSON from a file");
    auto* js = app.add_option("--json", inline_json, "inline input JSON");
    auto* fx = app.add_option("--fixture", fixture, "use a bundled fixture as input");
    in->excludes(js)->excludes(fx);
    js->excludes(fx);
    app.add_option("--out", out_path, "write the report to a file instead of stdout");
    app.add_option("--window", opts.window, "largest envelope window for periodic computations (1..4096)");
    app.add_option("--word-bound", opts.word_bound, "word length bound for gl-equiv (0..12)");
    app.add_option("--degree-bound", opts.degree_bound, "cone level bound for idp (2..10)");
    app.add_option("--max-points", opts.max_points, "point limit for enumerations (1..12)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what());
    }

    json input = json::object();
    try {
        if (!in_path.empty()) {
            std::ifstream f(in_path);
            if (!f) return fail("io_error", "cannot read " + in_path);
            std::stringstream buf;
            buf << f.rdbuf();
            input = json::parse(buf.str());
        } else if (!inline_json.empty()) {
            input = json::parse(inline_json);
        } else if (!fixture.empty()) {
            const cli::Fixture* f = cli::find_fixture(fixture);
            if (!f) return fail("unknown_fixture", "no fixture named \"" + fixture + "\"");
            if (f->subcommand != subcommand)
                return fail("usage", "fixture \"" + fixture + "\" is an input for " + f->subcommand);
            input = f->input;
        } else if (subcommand != "fixtures") {
            return fail("usage", "give exactly one of --in, --json, --fixture");
        }
    } catch (const json::exception& e) {
        return fail("invalid_json", e.what());
    }
    return emit(cli::run({subcommand, input, opts}), out_path);
}
