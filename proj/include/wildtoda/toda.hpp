#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "wildtoda/banded.hpp"
#include "wildtoda/fixed_points.hpp"
#include "wildtoda/partitions.hpp"

namespace wildtoda {

// Discretization of the radial lattice system attached to a fixed point,
// on a uniform grid in s = log(rho). In that variable the system reads
//   u_i'' = e^{2s} (e^{u_i - u_{i+1}} - e^{u_{i-1} - u_i}),
// with prescribed slopes at s_min and u = 0 at s_max.
struct TodaConfig {
    double s_min = -6.0;
    double s_max = 2.5;
    int grid_points = 2048;
    double newton_tol = 1e-10;
    int max_newton_iters = 40;
    double damping = 1.0;

    void validate() const {
        if (!(s_min < s_max)) throw std::invalid_argument("TodaConfig: s_min >= s_max");
        if (grid_points < 16) throw std::invalid_argument("TodaConfig: grid_points < 16");
        if (!(newton_tol > 0)) throw std::invalid_argument("TodaConfig: newton_tol <= 0");
        if (max_newton_iters < 1)
            throw std::invalid_argument("TodaConfig: max_newton_iters < 1");
        if (!(damping > 0) || damping > 1)
            throw std::invalid_argument("TodaConfig: damping outside (0,1]");
    }
};

// Radial coordinate in which the lattice system has unit coupling:
// rho = (2K/(K+N)) |z|^{(K+N)/K}. Strictly increasing bijection of (0,inf).
inline double change_of_variables(double z_abs, int k, int n) {
    if (!(z_abs > 0)) throw std::invalid_argument("change_of_variables: |z| must be > 0");
    return 2.0 * k / (k + n) * std::pow(z_abs, static_cast<double>(k + n) / k);
}

// Exact asymptotic slopes du_i/ds as s -> -inf: the weights prescribe
// u_i ~ 2 alpha_i log|z| and log|z| = (K/(K+N)) s + const.
inline VecQ boundary_slopes(const CyclicPartition& p) {
    VecQ slopes = parabolic_weights(p);
    for (auto& x : slopes) x *= Rat(2 * p.k(), p.k() + p.n());
    return slopes;
}

struct TodaSolution {
    CyclicPartition partition;
    TodaConfig config;
    std::vector<double> grid;            // s values, uniform
    std::vector<std::vector<double>> u;  // K rows, M columns
    double residual_norm = std::numeric_limits<double>::infinity();
    std::vector<double> left_slopes;     // measured du_i/ds at s_min
    double mu_numeric = 0.0;
    bool converged = false;
    std::vector<double> residual_history;
};

namespace toda_detail {

inline std::vector<double> slopes_as_double(const CyclicPartition& p) {
    std::vector<double> out;
    for (const auto& s : boundary_slopes(p)) out.push_back(to_double(s));
    return out;
}

// u_i'(s) approaches slope_i only as s -> -inf; at a finite left endpoint
// the derivative carries the integrated forcing of the tail,
//   u_i'(s0) = slope_i + int_{-inf}^{s0} e^{2s}(e^{w_i} - e^{w_{i-1}}) ds.
// Evaluating the tail on the local asymptote w_i(s) ~ w_i(s0) + m_i(s-s0),
// m_i = slope_i - slope_{i+1}, gives a closed-form correction in the
// boundary values alone. It telescopes to zero over i.
inline std::vector<double> slope_corrections(const std::vector<double>& boundary_u,
                                             const std::vector<double>& slopes,
                                             double s0) {
    const int k = static_cast<int>(slopes.size());
    const double e2s = std::exp(2.0 * s0);
    std::vector<double> g(k);
    for (int i = 0; i < k; ++i) {
        const int ip = (i + 1) % k;
        const int im = (i + k - 1) % k;
        const double mi = slopes[i] - slopes[ip];
        const double mim = slopes[im] - slopes[i];
        g[i] = e2s * (std::exp(boundary_u[i] - boundary_u[ip]) / (mi + 2.0) -
                      std::exp(boundary_u[im] - boundary_u[i]) / (mim + 2.0));
    }
    return g;
}

// Residual of the discrete system. Interior rows: second-order central
// differences. Row 0: second-order one-sided derivative minus the
// prescribed slope and its finite-endpoint correction. Last row:
// Dirichlet u = 0.
inline std::vector<std::vector<double>> residual(const std::vector<std::vector<double>>& u,
                                                 const std::vector<double>& grid,
                                                 const std::vector<double>& slopes) {
    const int k = static_cast<int>(u.size());
    const int m = static_cast<int>(grid.size());
    const double h = (grid.back() - grid.front()) / (m - 1);
    std::vector<std::vector<double>> r(k, std::vector<double>(m, 0.0));
    std::vector<double> boundary_u(k);
    for (int i = 0; i < k; ++i) boundary_u[i] = u[i][0];
    const auto gamma = slope_corrections(boundary_u, slopes, grid.front());
    for (int i = 0; i < k; ++i) {
        r[i][0] = (-3.0 * u[i][0] + 4.0 * u[i][1] - u[i][2]) / (2.0 * h) - slopes[i] -
                  gamma[i];
        r[i][m - 1] = u[i][m - 1];
    }
    for (int j = 1; j + 1 < m; ++j) {
        const double e2s = std::exp(2.0 * grid[j]);
        for (int i = 0; i < k; ++i) {
            const int ip = (i + 1) % k;
            const int im = (i + k - 1) % k;
            const double f = std::exp(u[i][j] - u[ip][j]) - std::exp(u[im][j] - u[i][j]);
            r[i][j] = (u[i][j - 1] - 2.0 * u[i][j] + u[i][j + 1]) / (h * h) - e2s * f;
        }
    }
    return r;
}

inline double max_norm(const std::vector<std::vector<double>>& r) {
    double m = 0.0;
    for (const auto& row : r)
        for (double v : row) {
            if (std::isnan(v)) return std::numeric_limits<double>::infinity();
            m = std::max(m, std::abs(v));
        }
    return m;
}

// Residual values cannot drop below the rounding noise of the second
// difference, about eps * ||u|| / h^2; fine grids hit this before the
// nominal tolerance does.
inline double residual_floor(const std::vector<std::vector<double>>& u, double h,
                             double s_max) {
    double umax = 0.0;
    for (const auto& row : u)
        for (double v : row) umax = std::max(umax, std::abs(v));
    return 4.0 * std::numeric_limits<double>::epsilon() *
           (umax / (h * h) + std::exp(2.0 * s_max));
}

} // namespace toda_detail

// Discretized residual of the lattice system for a given iterate.
inline std::vector<std::vector<double>> toda_residual(
    const std::vector<std::vector<double>>& u, const std::vector<double>& grid,
    const CyclicPartition& p) {
    if (static_cast<int>(u.size()) != p.k())
        throw std::invalid_argument("toda_residual: component count != K");
    if (grid.size() < 3 || u[0].size() != grid.size())
        throw std::invalid_argument("toda_residual: bad grid");
    return toda_detail::residual(u, grid, toda_detail::slopes_as_double(p));
}

// Damped Newton iteration on the discretized system, starting from the
// piecewise-linear ramp matching the left asymptote and vanishing for
// s >= 0. Non-convergence is reported in the result, not thrown.
inline TodaSolution solve_toda(const CyclicPartition& p, const TodaConfig& cfg = {});

// Quadrature for mu: in the grid variable the regulated-norm integrand is
// (K+N)/K * sum_i (e^{u_i - u_{i+1}} - 1) * rho drho; trapezoid on [s_min,
// s_max] plus the left tail below s_min. The tail has the exact
// integration-by-parts form
//   T = (1/2) e^{2 s0} sum_i (e^{w_i(s0)} - 1)
//       - (1/4) (||u'(s0)||^2 - ||slopes||^2),
// which only needs boundary data: the same identity that collapses the
// whole integral to the weights collapses the tail to the endpoint.
struct MuQuadrature {
    double total = 0.0;
    double interior = 0.0;
    double left_tail = 0.0;
    double right_tail_bound = 0.0;
};

inline MuQuadrature mu_quadrature(const TodaSolution& sol) {
    if (!sol.converged) throw std::invalid_argument("mu_quadrature: solution not converged");
    const int k = sol.partition.k();
    const int n = sol.partition.n();
    const int m = static_cast<int>(sol.grid.size());
    const double h = (sol.grid.back() - sol.grid.front()) / (m - 1);
    const auto& u = sol.u;

    auto w_at = [&](int i, int j) { return u[i][j] - u[(i + 1) % k][j]; };

    MuQuadrature out;
    std::vector<double> g(m, 0.0);
    for (int j = 0; j < m; ++j) {
        double s = 0.0;
        for (int i = 0; i < k; ++i) s += std::expm1(w_at(i, j));
        g[j] = s * std::exp(2.0 * sol.grid[j]);
    }
    double acc = 0.5 * (g[0] + g[m - 1]);
    for (int j = 1; j + 1 < m; ++j) acc += g[j];
    out.interior = acc * h;
    out.right_tail_bound = std::abs(g[m - 2]);

    const double s0 = sol.grid.front();
    const auto slopes = toda_detail::slopes_as_double(sol.partition);
    double boundary_term = 0.0;
    double deriv_sq = 0.0, slope_sq = 0.0;
    for (int i = 0; i < k; ++i) {
        boundary_term += std::expm1(w_at(i, 0));
        deriv_sq += sol.left_slopes[i] * sol.left_slopes[i];
        slope_sq += slopes[i] * slopes[i];
    }
    out.left_tail =
        0.5 * std::exp(2.0 * s0) * boundary_term - 0.25 * (deriv_sq - slope_sq);

    out.total = (static_cast<double>(k) + n) / k * (out.interior + out.left_tail);
    return out;
}

inline double mu_numeric(const TodaSolution& sol) { return mu_quadrature(sol).total; }

// Decay-rate check on the outer part of a converged profile. ||u||^2 must
// decay at least like K_0(c rho) with c = sqrt(2 C_eps C_K), where C_K is
// the first nonzero eigenvalue of the cyclic difference Gram matrix,
// C_K = 2(1 - cos(2 pi / K)), and C_eps = (1 - e^{-2 eps})/(2 eps) at the
// window edge. The slowest linearized mode gives the sharper value
// 2 sqrt(C_K), reported alongside a Bessel-corrected fit (e^{-t}/sqrt(t)).
struct DecayCertificate {
    bool determinate = false;
    double epsilon = 0.0;
    double c_eps = 0.0;
    double c_k = 0.0;
    double predicted_rate = 0.0;   // sqrt(2 C_eps C_K)
    double fitted_rate = 0.0;      // from log ||u||^2 vs rho
    double bessel_rate = 0.0;      // from log(rho ||u||^2) vs rho
    double linearized_rate = 0.0;  // 2 sqrt(C_K)
    double fit_rms = 0.0;
    bool rate_ok = false;
    int window_begin = 0;
    int window_end = 0;
};

inline DecayCertificate decay_certificate(const TodaSolution& sol) {
    if (!sol.converged)
        throw std::invalid_argument("decay_certificate: solution not converged");
    const int k = sol.partition.k();
    const int m = static_cast<int>(sol.grid.size());
    DecayCertificate cert;
    cert.c_k = 2.0 * (1.0 - std::cos(2.0 * std::acos(-1.0) / k));
    cert.linearized_rate = 2.0 * std::sqrt(cert.c_k);

    const double mid = 0.5 * (sol.grid.front() + sol.grid.back());
    std::vector<double> rho, y;
    int begin = -1;
    for (int j = 0; j < m; ++j) {
        if (sol.grid[j] < mid) continue;
        double nsq = 0.0;
        for (int i = 0; i < k; ++i) nsq += sol.u[i][j] * sol.u[i][j];
        if (nsq < 1e-24) break;  // at round-off, not informative
        if (begin < 0) {
            begin = j;
            cert.epsilon = std::sqrt(nsq);
        }
        rho.push_back(std::exp(sol.grid[j]));
        y.push_back(std::log(nsq));
        cert.window_end = j;
    }
    cert.window_begin = std::max(begin, 0);
    if (static_cast<int>(rho.size()) < 12) return cert;  // indeterminate

    cert.determinate = true;
    cert.c_eps = cert.epsilon < 1e-12 ? 1.0 : -std::expm1(-2.0 * cert.epsilon) /
                                                 (2.0 * cert.epsilon);
    cert.predicted_rate = std::sqrt(2.0 * cert.c_eps * cert.c_k);

    auto ls_slope = [](const std::vector<double>& x, const std::vector<double>& v,
                       double* rms) {
        const std::size_t n = x.size();
        double mx = 0, mv = 0;
        for (std::size_t i = 0; i < n; ++i) { mx += x[i]; mv += v[i]; }
        mx /= n;
        mv /= n;
        double sxx = 0, sxv = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sxx += (x[i] - mx) * (x[i] - mx);
            sxv += (x[i] - mx) * (v[i] - mv);
        }
        const double slope = sxv / sxx;
        if (rms) {
            double r2 = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const double e = v[i] - mv - slope * (x[i] - mx);
                r2 += e * e;
            }
            *rms = std::sqrt(r2 / n);
        }
        return slope;
    };
    cert.fitted_rate = -ls_slope(rho, y, nullptr);
    std::vector<double> y2(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) y2[i] = y[i] + std::log(rho[i]);
    cert.bessel_rate = -ls_slope(rho, y2, &cert.fit_rms);
    cert.rate_ok = cert.fitted_rate >= 0.9 * cert.predicted_rate;
    return cert;
}

// Discrete check of the radial identity for ||u||^2, evaluated in the grid
// variable (both sides scaled by rho^2, which keeps round-off flat across
// the grid): (1/2) d^2||u||^2/ds^2 = e^{2s} sum_i w_i (e^{w_i} - 1)
// + ||du/ds||^2. Returns the max interior mismatch; second-order small.
struct SumIdentityReport {
    double max_mismatch = 0.0;
    bool rhs_nonnegative = true;
};

inline SumIdentityReport sum_identity_check(const TodaSolution& sol) {
    if (!sol.converged)
        throw std::invalid_argument("sum_identity_check: solution not converged");
    const int k = sol.partition.k();
    const int m = static_cast<int>(sol.grid.size());
    const double h = (sol.grid.back() - sol.grid.front()) / (m - 1);
    const auto& u = sol.u;
    std::vector<double> nsq(m, 0.0);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < k; ++i) nsq[j] += u[i][j] * u[i][j];
    SumIdentityReport rep;
    for (int j = 1; j + 1 < m; ++j) {
        const double lhs = 0.5 * (nsq[j - 1] - 2.0 * nsq[j] + nsq[j + 1]) / (h * h);
        double dissip = 0.0;
        double source = 0.0;
        for (int i = 0; i < k; ++i) {
            const double w = u[i][j] - u[(i + 1) % k][j];
            source += w * std::expm1(w);
            const double d = (u[i][j + 1] - u[i][j - 1]) / (2.0 * h);
            dissip += d * d;
        }
        if (source < -1e-18) rep.rhs_nonnegative = false;
        const double rhs = std::exp(2.0 * sol.grid[j]) * source + dissip;
        rep.max_mismatch = std::max(rep.max_mismatch, std::abs(lhs - rhs));
    }
    return rep;
}

inline TodaSolution solve_toda(const CyclicPartition& p, const TodaConfig& cfg) {
    cfg.validate();
    const int k = p.k();
    const int m = cfg.grid_points;
    const double h = (cfg.s_max - cfg.s_min) / (m - 1);

    TodaSolution sol{p, cfg, {}, {}, std::numeric_limits<double>::infinity(), {}, 0.0,
                     false, {}};
    sol.grid.resize(m);
    for (int j = 0; j < m; ++j) sol.grid[j] = cfg.s_min + h * j;

    const auto slopes = toda_detail::slopes_as_double(p);
    sol.u.assign(k, std::vector<double>(m, 0.0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < m; ++j)
            sol.u[i][j] = slopes[i] * std::min(sol.grid[j], 0.0);

    auto index = [k](int j, int i) { return j * k + i; };
    const int n_unknowns = m * k;

    auto res = toda_detail::residual(sol.u, sol.grid, slopes);
    double rnorm = toda_detail::max_norm(res);
    sol.residual_history.push_back(rnorm);
    auto effective_tol = [&] {
        return std::max(cfg.newton_tol,
                        toda_detail::residual_floor(sol.u, h, cfg.s_max));
    };

    int extra_after_tol = 0;
    for (int iter = 0; iter < cfg.max_newton_iters; ++iter) {
        if (rnorm <= effective_tol()) {
            // one or two polish steps push the residual to the round-off
            // floor, which the qualitative invariants rely on
            if (rnorm < 1e-14 || ++extra_after_tol > 2) break;
        }
        BandedSystem jac(n_unknowns, k, 2 * k);
        std::vector<double> rhs(n_unknowns, 0.0);
        const double e2s0 = std::exp(2.0 * sol.grid.front());
        for (int i = 0; i < k; ++i) {
            const int ip = (i + 1) % k;
            const int im = (i + k - 1) % k;
            const double mi = slopes[i] - slopes[ip];
            const double mim = slopes[im] - slopes[i];
            const double ew = std::exp(sol.u[i][0] - sol.u[ip][0]) / (mi + 2.0);
            const double ewm = std::exp(sol.u[im][0] - sol.u[i][0]) / (mim + 2.0);
            jac.add(index(0, i), index(0, i), -3.0 / (2.0 * h) - e2s0 * (ew + ewm));
            jac.add(index(0, i), index(0, ip), e2s0 * ew);
            jac.add(index(0, i), index(0, im), e2s0 * ewm);
            jac.add(index(0, i), index(1, i), 4.0 / (2.0 * h));
            jac.add(index(0, i), index(2, i), -1.0 / (2.0 * h));
            jac.add(index(m - 1, i), index(m - 1, i), 1.0);
            rhs[index(0, i)] = -res[i][0];
            rhs[index(m - 1, i)] = -res[i][m - 1];
        }
        for (int j = 1; j + 1 < m; ++j) {
            const double e2s = std::exp(2.0 * sol.grid[j]);
            for (int i = 0; i < k; ++i) {
                const int ip = (i + 1) % k;
                const int im = (i + k - 1) % k;
                const double ew = std::exp(sol.u[i][j] - sol.u[ip][j]);
                const double ewm = std::exp(sol.u[im][j] - sol.u[i][j]);
                const int row = index(j, i);
                jac.add(row, index(j - 1, i), 1.0 / (h * h));
                jac.add(row, index(j + 1, i), 1.0 / (h * h));
                jac.add(row, index(j, i), -2.0 / (h * h) - e2s * (ew + ewm));
                jac.add(row, index(j, ip), e2s * ew);
                jac.add(row, index(j, im), e2s * ewm);
                rhs[row] = -res[i][j];
            }
        }
        jac.solve(rhs);

        double lambda = cfg.damping;
        std::vector<std::vector<double>> cand(k, std::vector<double>(m));
        double cand_norm = std::numeric_limits<double>::infinity();
        std::vector<std::vector<double>> cand_res;
        while (lambda > 1.0 / (1 << 24)) {
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < m; ++j)
                    cand[i][j] = sol.u[i][j] + lambda * rhs[index(j, i)];
            cand_res = toda_detail::residual(cand, sol.grid, slopes);
            cand_norm = toda_detail::max_norm(cand_res);
            if (cand_norm < rnorm) break;
            lambda *= 0.5;
        }
        if (!(cand_norm < rnorm)) break;  // stalled
        sol.u.swap(cand);
        res.swap(cand_res);
        rnorm = cand_norm;
        sol.residual_history.push_back(rnorm);
    }

    sol.residual_norm = rnorm;
    sol.converged = rnorm <= effective_tol();
    sol.left_slopes.resize(k);
    for (int i = 0; i < k; ++i)
        sol.left_slopes[i] =
            (-3.0 * sol.u[i][0] + 4.0 * sol.u[i][1] - sol.u[i][2]) / (2.0 * h);
    if (sol.converged) sol.mu_numeric = mu_numeric(sol);
    return sol;
}

} // namespace wildtoda
