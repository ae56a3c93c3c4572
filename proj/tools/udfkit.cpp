#include "job.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using udfkit::json;

namespace {

fs::path output_path(const std::string& out)
{
    fs::path p(out);
    if (p.is_relative())
        if (const char* dir = std::getenv("UDFKIT_OUT_DIR"); dir && *dir)
            return fs::path(dir) / p;
    return p;
}

int emit(const std::string& text, const std::string& out)
{
    if (out.empty()) {
        std::cout << text;
        return 0;
    }
    const fs::path p = output_path(out);
    if (p.has_parent_path())
        fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    f << text;
    if (!f) {
        std::cerr << "udfkit: cannot write " << p.string() << "\n";
        return 2;
    }
    return 0;
}

json load_error(const std::string& message)
{
    json r;
    r["schema"] = udfkit::report_schema;
    r["tool"] = "udfkit";
    r["version"] = udfkit::tool_version;
    r["command"] = "";
    r["status"] = "error";
    r["error"] = {{"message", message}};
    return r;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Universal deformation formulas: verify twists, deformed products and their classes."};
    app.set_version_flag("--version", std::string("udfkit ") + udfkit::tool_version);

    std::string command, name, job_file, format = "text", out;
    std::optional<unsigned> order;
    std::optional<int> degree, cobar_cutoff;
    std::optional<std::uint64_t> seed;

    std::string command_help = "one of emit-example";
    for (const auto& c : udfkit::commands())
        command_help += ", " + c;
    command_help += " (default: the job's own command)";
    app.add_option("command", command, command_help);
    app.add_option("name", name, "fixture name for emit-example");
    app.add_option("--job", job_file, "job file (JSON, '-' for stdin)");
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--order", order, "t-order N (default 6)");
    app.add_option("--degree", degree, "degree cutoff d (default 4)");
    app.add_option("--cobar-cutoff", cobar_cutoff, "cobar internal-degree cutoff D (default 6)");
    app.add_option("--seed", seed, "sampling seed (default 0)");
    app.add_option("--out", out, "write the output here; relative paths resolve against $UDFKIT_OUT_DIR");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (command == "emit-example") {
        if (name.empty()) {
            for (const auto& n : udfkit::example_names())
                std::cout << n << "\n";
            return 0;
        }
        try {
            return emit(udfkit::example(name).dump(2) + "\n", out);
        } catch (const udfkit::JobError& e) {
            std::cerr << "udfkit: " << e.what() << "\n";
            return 2;
        }
    }
    if (!name.empty()) {
        std::cerr << "udfkit: unexpected argument '" << name << "'\n";
        return 2;
    }

    json report;
    if (job_file.empty()) {
        report = load_error("no job given (--job FILE)");
    } else {
        std::stringstream buf;
        if (job_file == "-") {
            buf << std::cin.rdbuf();
        } else {
            std::ifstream f(job_file, std::ios::binary);
            if (f)
                buf << f.rdbuf();
            else
                report = load_error("cannot read " + job_file);
        }
        if (report.is_null()) {
            try {
                const json job = json::parse(buf.str());
                udfkit::Overrides ov;
                if (!command.empty())
                    ov.command = command;
                ov.order = order;
                ov.degree = degree;
                ov.cobar_cutoff = cobar_cutoff;
                ov.seed = seed;
                report = udfkit::run(job, ov);
            } catch (const json::parse_error& e) {
                report = load_error("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
            }
        }
    }

    const std::string text = format == "json" ? udfkit::render_json(report) : udfkit::render_text(report);
    if (emit(text, out) != 0)
        return 2;
    return udfkit::exit_code(report);
}
