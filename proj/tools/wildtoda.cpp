// Command-line driver: enumeration of fixed-point classes, exact dictionary
// verification, radial lattice solves, Hitchin-section experiments, and the
// aggregate report.

#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wildtoda/cli.hpp"

namespace {

wildtoda::Format parse_format(const std::string& s) {
    if (s == "text") return wildtoda::Format::text;
    if (s == "json") return wildtoda::Format::json;
    if (s == "csv") return wildtoda::Format::csv;
    throw CLI::ValidationError("--format must be text, json or csv");
}

std::vector<int> parse_parts(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--b expects a comma-separated integer list");
        }
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixed-point data of wild Higgs bundle moduli and the attached "
                 "radial lattice problem"};
    app.require_subcommand(1);

    wildtoda::RunConfig cfg;
    std::string format_str = "text";
    std::string b_str;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--K", cfg.k, "rank K (>= 2)")->required();
        sub->add_option("--N", cfg.n, "pole parameter N, coprime to K")->required();
        sub->add_option("--out", cfg.out, "output file (or directory for solve-toda)");
        sub->add_option("--format", format_str, "text, json or csv");
    };
    auto add_toda_opts = [&](CLI::App* sub) {
        sub->add_option("--s-min", cfg.toda.s_min, "left endpoint in s = log(rho)");
        sub->add_option("--s-max", cfg.toda.s_max, "right endpoint in s = log(rho)");
        sub->add_option("--grid", cfg.toda.grid_points, "grid points (>= 16)");
        sub->add_option("--tol", cfg.toda.newton_tol, "Newton residual tolerance");
    };

    auto* c_enum = app.add_subcommand("enumerate", "list fixed-point classes with "
                                                   "weights, mu and module generators");
    add_common(c_enum);

    auto* c_dict = app.add_subcommand(
        "verify-dictionary", "check mu = (K-1-c_eff)/12 exactly for every class");
    add_common(c_dict);

    auto* c_toda = app.add_subcommand(
        "solve-toda", "solve the radial lattice problem per class; writes CSV+JSON");
    add_common(c_toda);
    add_toda_opts(c_toda);
    c_toda->add_option("--b", b_str, "single ordered class, e.g. 1,2");

    auto* c_hs = app.add_subcommand(
        "hitchin-section", "build the section from JSON {K,N,Q} on stdin");
    add_common(c_hs);

    auto* c_rep = app.add_subcommand("report", "aggregate JSON report");
    add_common(c_rep);
    add_toda_opts(c_rep);
    c_rep->add_flag("--with-toda", cfg.with_toda, "include numerical mu comparisons");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.format = parse_format(format_str);
        if (!b_str.empty()) cfg.b = parse_parts(b_str);
        if (c_enum->parsed()) {
            cfg.command = wildtoda::Command::enumerate_classes;
            return wildtoda::cmd_enumerate(cfg, std::cout);
        }
        if (c_dict->parsed()) {
            cfg.command = wildtoda::Command::verify_dictionary;
            return wildtoda::cmd_verify_dictionary(cfg, std::cout);
        }
        if (c_toda->parsed()) {
            cfg.command = wildtoda::Command::solve_toda;
            return wildtoda::cmd_solve_toda(cfg, std::cout);
        }
        if (c_hs->parsed()) {
            cfg.command = wildtoda::Command::hitchin_section;
            return wildtoda::cmd_hitchin_section(cfg, std::cin, std::cout);
        }
        cfg.command = wildtoda::Command::report;
        return wildtoda::cmd_report(cfg, std::cout);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
