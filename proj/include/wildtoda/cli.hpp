#pragma once

#include <filesystem>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "wildtoda/serialize.hpp"

namespace wildtoda {

enum class Command { enumerate_classes, verify_dictionary, solve_toda, hitchin_section, report };
enum class Format { text, json, csv };

struct RunConfig {
    Command command = Command::enumerate_classes;
    int k = 0;
    int n = 0;
    std::vector<int> b;  // optional ordered representative for solve-toda
    TodaConfig toda;
    std::string out;
    Format format = Format::text;
    bool with_toda = false;

    void validate() const {
        if (k < 2) throw std::invalid_argument("--K must be at least 2");
        if (n < 1) throw std::invalid_argument("--N must be positive");
        if (std::gcd(k, n) != 1)
            throw std::invalid_argument("K and N must be coprime (gcd(" +
                                        std::to_string(k) + "," + std::to_string(n) +
                                        ") != 1)");
    }
};

namespace cli_detail {

inline std::string join_ints(const std::vector<int>& v, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

inline std::string join_longs(const std::vector<long long>& v, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

inline void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
    if (cfg.out.empty())
        out << content;
    else
        atomic_write_file(cfg.out, content);
}

} // namespace cli_detail

inline int cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    const auto classes = enumerate_cyclic_partitions(cfg.k, cfg.n);
    std::string content;
    if (cfg.format == Format::json) {
        Json j;
        j["schema"] = kSchema;
        j["command"] = "enumerate";
        j["K"] = cfg.k;
        j["N"] = cfg.n;
        Json arr = Json::array();
        for (const auto& p : classes) {
            Json row = fixed_point_record(fixed_point(p));
            const auto gen = module_generators(p);
            row["generators"] = gen.a;
            row["generators_nonnegative"] = gen.all_nonnegative;
            arr.push_back(std::move(row));
        }
        j["classes"] = std::move(arr);
        content = j.dump(2) + "\n";
    } else if (cfg.format == Format::csv) {
        std::ostringstream os;
        os << "K,N,b,alpha,mu,generators\n";
        for (const auto& p : classes) {
            const auto f = fixed_point(p);
            const auto gen = module_generators(p);
            os << cfg.k << "," << cfg.n << ",\"" << cli_detail::join_ints(p.parts(), ",")
               << "\",\"";
            for (std::size_t i = 0; i < f.alpha.size(); ++i)
                os << (i ? "," : "") << to_pq_string(f.alpha[i]);
            os << "\"," << to_pq_string(f.mu) << ",\""
               << cli_detail::join_longs(gen.a, ",") << "\"\n";
        }
        content = os.str();
    } else {
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"b", "alpha", "mu", "generators"});
        for (const auto& p : classes) {
            const auto f = fixed_point(p);
            const auto gen = module_generators(p);
            std::string g = "(" + cli_detail::join_longs(gen.a, ",") + ")";
            if (!gen.all_nonnegative) g += " [negative]";
            rows.push_back({p.str(), detail::join_rationals(f.alpha),
                            to_short_string(f.mu), g});
        }
        std::ostringstream os;
        os << classes.size() << " classes for K=" << cfg.k << ", N=" << cfg.n << "\n";
        detail::print_aligned(os, rows);
        content = os.str();
    }
    cli_detail::emit(cfg, content, out);
    return 0;
}

inline int cmd_verify_dictionary(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    const auto rep = verify_dictionary(cfg.k, cfg.n);
    std::string content;
    if (cfg.format == Format::json) {
        content = dictionary_report_json(rep).dump(2) + "\n";
    } else {
        std::ostringstream os;
        dictionary_report_text(os, rep);
        content = os.str();
    }
    cli_detail::emit(cfg, content, out);
    return rep.all_pass ? 0 : 1;
}

inline int cmd_solve_toda(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    std::vector<CyclicPartition> classes;
    if (!cfg.b.empty())
        classes.push_back(CyclicPartition(cfg.k, cfg.n, cfg.b));
    else
        classes = enumerate_cyclic_partitions(cfg.k, cfg.n);

    const std::filesystem::path dir = cfg.out.empty() ? "." : cfg.out;
    std::filesystem::create_directories(dir);
    bool all_ok = true;
    for (const auto& p : classes) {
        const TodaSolution sol = solve_toda(p, cfg.toda);
        const std::string stem =
            "toda_K" + std::to_string(cfg.k) + "_N" + std::to_string(cfg.n) + "_b" +
            cli_detail::join_ints(p.parts(), "-");
        atomic_write_file(dir / (stem + ".csv"), toda_profile_csv(sol));
        atomic_write_file(dir / (stem + ".json"), toda_sidecar_json(sol).dump(2) + "\n");
        const double mu_x = to_double(mu_exact(p));
        out << "b=" << p.str() << (sol.converged ? "  converged" : "  NOT CONVERGED")
            << "  residual=" << fmt_double(sol.residual_norm)
            << "  mu_numeric=" << fmt_double(sol.mu_numeric)
            << "  mu_exact=" << to_pq_string(mu_exact(p))
            << "  rel_err=" << fmt_double(std::abs(sol.mu_numeric - mu_x) / mu_x) << "\n";
        all_ok = all_ok && sol.converged;
    }
    return all_ok ? 0 : 1;
}

inline int cmd_hitchin_section(const RunConfig& cfg, std::istream& in, std::ostream& out) {
    cfg.validate();
    Json input;
    try {
        in >> input;
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("hitchin-section: bad JSON input: ") +
                                    e.what());
    }
    if (input.contains("K") && input["K"].get<int>() != cfg.k)
        throw std::invalid_argument("hitchin-section: JSON K disagrees with --K");
    if (input.contains("N") && input["N"].get<int>() != cfg.n)
        throw std::invalid_argument("hitchin-section: JSON N disagrees with --N");
    if (!input.contains("Q") || !input["Q"].is_array())
        throw std::invalid_argument("hitchin-section: input needs \"Q\": [[coeffs]...]");

    std::vector<PolyQ> qs;
    for (const auto& coeffs : input["Q"]) {
        std::vector<Rat> c;
        for (const auto& v : coeffs) {
            if (v.is_string())
                c.push_back(rat_from_string(v.get<std::string>()));
            else if (v.is_number_integer())
                c.push_back(Rat(v.get<long long>()));
            else
                throw std::invalid_argument(
                    "hitchin-section: coefficients must be integers or \"p/q\" strings");
        }
        qs.emplace_back(std::move(c));
    }
    const auto m = hitchin_section(cfg.k, cfg.n, qs);
    const auto cp = char_poly(m, cfg.n);
    const bool bounds = degree_bounds_check(cp);

    if (cfg.format == Format::json) {
        Json j;
        j["schema"] = kSchema;
        j["command"] = "hitchin-section";
        j["K"] = cfg.k;
        j["N"] = cfg.n;
        Json qj = Json::array();
        for (const auto& q : qs) qj.push_back(polynomial_json<Rat>(q));
        j["Q"] = std::move(qj);
        j["matrix"] = poly_matrix_json(m);
        Json pj;
        for (int i = 2; i <= cfg.k; ++i)
            pj["P_" + std::to_string(i)] = polynomial_json<Rat>(cp.p(i));
        j["char_poly"] = std::move(pj);
        j["degree_bounds_ok"] = bounds;
        cli_detail::emit(cfg, j.dump(2) + "\n", out);
    } else {
        std::ostringstream os;
        os << "phi/dz for K=" << cfg.k << ", N=" << cfg.n << ":\n";
        for (int i = 0; i < cfg.k; ++i) {
            os << "  [";
            for (int j = 0; j < cfg.k; ++j)
                os << (j ? ", " : " ") << poly_str(m.at(i, j));
            os << " ]\n";
        }
        os << "char poly: lambda^" << cfg.k << " - z^" << cfg.n;
        for (int i = 2; i <= cfg.k; ++i)
            os << " + (" << poly_str(cp.p(i)) << ")*lambda^" << cfg.k - i;
        os << "\n";
        os << "degree bounds: " << (bounds ? "ok" : "VIOLATED") << "\n";
        cli_detail::emit(cfg, os.str(), out);
    }
    return bounds ? 0 : 1;
}

inline int cmd_report(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    Json j;
    j["schema"] = kSchema;
    j["command"] = "report";
    j["K"] = cfg.k;
    j["N"] = cfg.n;
    bool all_pass = true;

    const auto classes = enumerate_cyclic_partitions(cfg.k, cfg.n);
    {
        Json sec;
        sec["count"] = classes.size();
        Json arr = Json::array();
        for (const auto& p : classes) {
            Json row = fixed_point_record(fixed_point(p));
            const auto gen = module_generators(p);
            row["generators"] = gen.a;
            row["generators_nonnegative"] = gen.all_nonnegative;
            arr.push_back(std::move(row));
        }
        sec["classes"] = std::move(arr);
        j["enumeration"] = std::move(sec);
    }
    {
        const auto rep = verify_dictionary(cfg.k, cfg.n);
        Json sec = dictionary_report_json(rep);
        sec.erase("schema");
        sec.erase("command");
        j["dictionary"] = std::move(sec);
        all_pass = all_pass && rep.all_pass;
    }
    {
        Json sec;
        Json arr = Json::array();
        bool ok = true;
        for (const auto& p : classes) {
            const auto rep = verify_model_form(p);
            Json row;
            row["b"] = p.parts();
            row["expected_exponent"] = rep.expected_exponent;
            row["exponents_match"] = rep.exponents_match;
            row["residual"] = rep.residual;
            row["pass"] = rep.pass;
            arr.push_back(std::move(row));
            ok = ok && rep.pass;
        }
        sec["classes"] = std::move(arr);
        sec["all_pass"] = ok;
        j["model_form"] = std::move(sec);
        all_pass = all_pass && ok;
    }
    j["hitchin_base"] = Json{{"dimension", base_dimension(cfg.k, cfg.n)}};
    if (cfg.with_toda) {
        Json sec;
        Json arr = Json::array();
        bool ok = true;
        for (const auto& p : classes) {
            const TodaSolution sol = solve_toda(p, cfg.toda);
            const double mu_x = to_double(mu_exact(p));
            Json row;
            row["b"] = p.parts();
            row["converged"] = sol.converged;
            row["mu_numeric"] = sol.mu_numeric;
            row["mu_exact"] = to_pq_string(mu_exact(p));
            row["relative_error"] = std::abs(sol.mu_numeric - mu_x) / mu_x;
            arr.push_back(std::move(row));
            ok = ok && sol.converged;
        }
        sec["classes"] = std::move(arr);
        sec["all_pass"] = ok;
        j["toda"] = std::move(sec);
        all_pass = all_pass && ok;
    }
    j["all_pass"] = all_pass;
    cli_detail::emit(cfg, j.dump(2) + "\n", out);
    return all_pass ? 0 : 1;
}

} // namespace wildtoda
