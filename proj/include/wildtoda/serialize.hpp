#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wildtoda/fixed_points.hpp"
#include "wildtoda/hitchin.hpp"
#include "wildtoda/toda.hpp"
#include "wildtoda/walgebra.hpp"

namespace wildtoda {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "toda-fixed-points/1";

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline Json rationals_json(const VecQ& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_pq_string(x));
    return a;
}

// {"K":..,"N":..,"b":[..],"alpha":["p/q"..],"mu":"p/q"}
inline Json fixed_point_record(const FixedPointData& f) {
    Json j;
    j["K"] = f.partition.k();
    j["N"] = f.partition.n();
    j["b"] = f.partition.parts();
    j["alpha"] = rationals_json(f.alpha);
    j["mu"] = to_pq_string(f.mu);
    return j;
}

template <class T>
Json polynomial_json(const Polynomial<T>& p);

template <>
inline Json polynomial_json<Rat>(const PolyQ& p) {
    Json a = Json::array();
    for (const auto& c : p.coeffs()) a.push_back(to_pq_string(c));
    return a;
}

inline Json poly_matrix_json(const PolyMatrix<Rat>& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.size(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.size(); ++j) row.push_back(polynomial_json<Rat>(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json dictionary_report_json(const DictionaryReport& rep) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = "verify-dictionary";
    j["K"] = rep.k;
    j["N"] = rep.n;
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
        Json row;
        row["K"] = rep.k;
        row["N"] = rep.n;
        row["b"] = r.partition.parts();
        row["alpha"] = rationals_json(r.alpha);
        row["mu"] = to_pq_string(r.mu);
        row["lambda"] = rationals_json(r.lambda);
        row["c_eff"] = to_pq_string(r.c_eff);
        row["check"] = r.pass;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["all_pass"] = rep.all_pass;
    return j;
}

namespace detail {

inline std::string join_rationals(const VecQ& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += to_short_string(v[i]);
    }
    return s + ")";
}

inline void print_aligned(std::ostream& os, const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) return;
    std::vector<std::size_t> w(rows[0].size(), 0);
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) w[c] = std::max(w[c], r[c].size());
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            os << r[c];
            if (c + 1 < r.size()) os << std::string(w[c] - r[c].size() + 2, ' ');
        }
        os << "\n";
    }
}

} // namespace detail

inline void dictionary_report_text(std::ostream& os, const DictionaryReport& rep) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"K", "N", "b", "alpha", "mu", "lambda", "c_eff", "check"});
    for (const auto& r : rep.rows)
        rows.push_back({std::to_string(rep.k), std::to_string(rep.n), r.partition.str(),
                        detail::join_rationals(r.alpha), to_short_string(r.mu),
                        detail::join_rationals(r.lambda), to_short_string(r.c_eff),
                        r.pass ? "ok" : "FAIL"});
    detail::print_aligned(os, rows);
    os << (rep.all_pass ? "all classes pass" : "FAILURES present") << "\n";
}

inline Json toda_sidecar_json(const TodaSolution& sol) {
    const Rat mu_x = mu_exact(sol.partition);
    Json j;
    j["schema"] = kSchema;
    j["command"] = "solve-toda";
    j["K"] = sol.partition.k();
    j["N"] = sol.partition.n();
    j["b"] = sol.partition.parts();
    j["residual_norm"] = sol.residual_norm;
    j["mu_numeric"] = sol.mu_numeric;
    j["mu_exact"] = to_pq_string(mu_x);
    j["relative_error"] =
        sol.converged ? std::abs(sol.mu_numeric - to_double(mu_x)) / to_double(mu_x)
                      : 0.0;
    j["converged"] = sol.converged;
    j["config"] = {{"s_min", sol.config.s_min},
                   {"s_max", sol.config.s_max},
                   {"grid_points", sol.config.grid_points},
                   {"newton_tol", sol.config.newton_tol},
                   {"max_newton_iters", sol.config.max_newton_iters},
                   {"damping", sol.config.damping}};
    return j;
}

inline std::string toda_profile_csv(const TodaSolution& sol) {
    std::ostringstream os;
    os << "s,rho";
    for (int i = 1; i <= sol.partition.k(); ++i) os << ",u_" << i;
    os << "\n";
    for (std::size_t j = 0; j < sol.grid.size(); ++j) {
        os << fmt_double(sol.grid[j]) << "," << fmt_double(std::exp(sol.grid[j]));
        for (int i = 0; i < sol.partition.k(); ++i) os << "," << fmt_double(sol.u[i][j]);
        os << "\n";
    }
    return os.str();
}

// Write-then-rename so partial output is never visible under the target name.
inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    const auto tmp = std::filesystem::path(path.string() + ".tmp");
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os << content;
        if (!os) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace wildtoda
