#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "wildtoda/toda.hpp"

using namespace wildtoda;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

TodaConfig coarse(int m, double s_min = -6.0, double s_max = 2.5) {
    TodaConfig cfg;
    cfg.grid_points = m;
    cfg.s_min = s_min;
    cfg.s_max = s_max;
    return cfg;
}

double max_abs_sum(const TodaSolution& sol) {
    double worst = 0.0;
    for (std::size_t j = 0; j < sol.grid.size(); ++j) {
        double s = 0.0;
        for (int i = 0; i < sol.partition.k(); ++i) s += sol.u[i][j];
        worst = std::max(worst, std::abs(s));
    }
    return worst;
}

bool norm_sq_nonincreasing(const TodaSolution& sol) {
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < sol.grid.size(); ++j) {
        double nsq = 0.0;
        for (int i = 0; i < sol.partition.k(); ++i) nsq += sol.u[i][j] * sol.u[i][j];
        if (nsq > prev * (1.0 + 1e-12) + 1e-24) return false;
        prev = nsq;
    }
    return true;
}

} // namespace

TEST_CASE("radial coordinate map") {
    CHECK_THAT(change_of_variables(1.0, 2, 3), WithinAbs(0.8, 1e-15));
    CHECK_THAT(change_of_variables(1.0, 2, 1), WithinAbs(4.0 / 3.0, 1e-15));
    // strictly increasing, vanishing at 0
    double prev = 0.0;
    for (double z = 0.1; z < 3.0; z += 0.1) {
        const double r = change_of_variables(z, 3, 4);
        CHECK(r > prev);
        prev = r;
    }
    CHECK(change_of_variables(1e-8, 2, 3) < 1e-15);
    CHECK_THROWS_AS(change_of_variables(0.0, 2, 3), std::invalid_argument);
}

TEST_CASE("boundary slopes") {
    CHECK(boundary_slopes(CyclicPartition(2, 3, {1, 2})) == VecQ{Rat(-1, 5), Rat(1, 5)});
    CHECK(boundary_slopes(CyclicPartition(2, 3, {0, 3})) == VecQ{Rat(-3, 5), Rat(3, 5)});
    for (const auto& p : enumerate_cyclic_partitions(3, 4))
        CHECK(sum(boundary_slopes(p)) == 0);
}

namespace {

// endpoint slope correction, written out independently of the library
std::vector<double> endpoint_correction(const std::vector<double>& u0,
                                        const std::vector<double>& slopes, double s0) {
    const int k = static_cast<int>(slopes.size());
    std::vector<double> g(k);
    for (int i = 0; i < k; ++i) {
        const int ip = (i + 1) % k;
        const int im = (i + k - 1) % k;
        g[i] = std::exp(2.0 * s0) *
               (std::exp(u0[i] - u0[ip]) / (slopes[i] - slopes[ip] + 2.0) -
                std::exp(u0[im] - u0[i]) / (slopes[im] - slopes[i] + 2.0));
    }
    return g;
}

} // namespace

TEST_CASE("residual of the zero field vanishes in the interior") {
    const CyclicPartition p(2, 3, {1, 2});
    const int m = 64;
    std::vector<double> grid(m);
    for (int j = 0; j < m; ++j) grid[j] = -4.0 + 6.0 * j / (m - 1);
    const std::vector<std::vector<double>> u(2, std::vector<double>(m, 0.0));
    const auto r = toda_residual(u, grid, p);
    for (int j = 1; j + 1 < m; ++j) {
        CHECK(r[0][j] == 0.0);
        CHECK(r[1][j] == 0.0);
    }
    CHECK(r[0][m - 1] == 0.0);
    // slope rows report minus the prescribed slope and endpoint correction
    const auto g = endpoint_correction({0.0, 0.0}, {-0.2, 0.2}, -4.0);
    CHECK_THAT(r[0][0], WithinAbs(0.2 - g[0], 1e-15));
    CHECK_THAT(r[1][0], WithinAbs(-0.2 - g[1], 1e-15));
}

TEST_CASE("stencils are exact on quadratics") {
    const CyclicPartition p(3, 4, {0, 1, 3});
    const int m = 48;
    const double s0 = -3.0, s1 = 1.5;
    const double h = (s1 - s0) / (m - 1);
    std::vector<double> grid(m);
    for (int j = 0; j < m; ++j) grid[j] = s0 + h * j;
    const double a[3] = {0.3, -0.2, 0.05}, b[3] = {-0.7, 0.4, 0.1}, c[3] = {0.2, 0.0, -0.4};
    std::vector<std::vector<double>> u(3, std::vector<double>(m));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < m; ++j)
            u[i][j] = a[i] * grid[j] * grid[j] + b[i] * grid[j] + c[i];
    const auto r = toda_residual(u, grid, p);
    for (int j = 1; j + 1 < m; ++j)
        for (int i = 0; i < 3; ++i) {
            const int ip = (i + 1) % 3, im = (i + 2) % 3;
            const double f =
                std::exp(u[i][j] - u[ip][j]) - std::exp(u[im][j] - u[i][j]);
            const double want = 2.0 * a[i] - std::exp(2.0 * grid[j]) * f;
            CHECK_THAT(r[i][j], WithinAbs(want, 1e-10));
        }
    // one-sided first-derivative row is exact on quadratics too
    std::vector<double> sl, u0;
    for (const auto& x : boundary_slopes(p)) sl.push_back(to_double(x));
    for (int i = 0; i < 3; ++i) u0.push_back(u[i][0]);
    const auto g = endpoint_correction(u0, sl, s0);
    for (int i = 0; i < 3; ++i) {
        const double want = b[i] + 2.0 * a[i] * s0 - sl[i] - g[i];
        CHECK_THAT(r[i][0], WithinAbs(want, 1e-12));
    }
}

TEST_CASE("K=2 reduction is the sinh-Gordon form") {
    const CyclicPartition p(2, 1, {0, 1});
    const int m = 32;
    std::vector<double> grid(m);
    for (int j = 0; j < m; ++j) grid[j] = -2.0 + 3.0 * j / (m - 1);
    const double h = grid[1] - grid[0];
    std::vector<std::vector<double>> u(2, std::vector<double>(m));
    for (int j = 0; j < m; ++j) {
        const double v = 0.3 * std::sin(grid[j]);
        u[0][j] = v;
        u[1][j] = -v;
    }
    const auto r = toda_residual(u, grid, p);
    for (int j = 1; j + 1 < m; ++j) {
        const double v = u[0][j];
        const double want = (u[0][j - 1] - 2 * u[0][j] + u[0][j + 1]) / (h * h) -
                            std::exp(2.0 * grid[j]) * (std::exp(2 * v) - std::exp(-2 * v));
        CHECK_THAT(r[0][j], WithinAbs(want, 1e-12));
        CHECK_THAT(r[1][j], WithinAbs(-want, 1e-12));
    }
}

TEST_CASE("solver: K=2, N=1 profile") {
    const CyclicPartition p(2, 1, {0, 1});
    const auto sol = solve_toda(p, coarse(512));
    REQUIRE(sol.converged);
    CHECK(sol.residual_norm <= 1e-10);
    CHECK(max_abs_sum(sol) <= 1e-9);
    CHECK(norm_sq_nonincreasing(sol));
    // exact Dirichlet cap
    CHECK(sol.u[0].back() == 0.0);
    CHECK(sol.u[1].back() == 0.0);
    // antisymmetry of the two components
    double worst = 0.0;
    for (std::size_t j = 0; j < sol.grid.size(); ++j)
        worst = std::max(worst, std::abs(sol.u[0][j] + sol.u[1][j]));
    CHECK(worst <= 1e-8);
    // recovered slopes match the prescribed asymptotic slopes up to the
    // finite-endpoint correction, and that correction exactly
    std::vector<double> sl, u0;
    for (const auto& x : boundary_slopes(p)) sl.push_back(to_double(x));
    for (int i = 0; i < 2; ++i) u0.push_back(sol.u[i][0]);
    const auto g = endpoint_correction(u0, sl, sol.grid.front());
    for (int i = 0; i < 2; ++i) {
        CHECK_THAT(sol.left_slopes[i], WithinAbs(sl[i], 1e-3));
        CHECK_THAT(sol.left_slopes[i], WithinAbs(sl[i] + g[i], 1e-8));
    }
    // mu within a coarse-grid tolerance of 1/12
    CHECK_THAT(sol.mu_numeric, WithinRel(1.0 / 12.0, 2e-3));
}

TEST_CASE("solver: K=2, N=3 classes against exact mu") {
    for (const auto& p : enumerate_cyclic_partitions(2, 3)) {
        const auto sol = solve_toda(p, coarse(512));
        REQUIRE(sol.converged);
        CHECK(norm_sq_nonincreasing(sol));
        CHECK(max_abs_sum(sol) <= 1e-9);
        CHECK_THAT(sol.mu_numeric, WithinRel(to_double(mu_exact(p)), 5e-3));
    }
}

TEST_CASE("solver: a K=3 class converges with the qualitative invariants") {
    const CyclicPartition p(3, 4, {0, 1, 3});
    const auto sol = solve_toda(p, coarse(512, -5.5, 2.3));
    REQUIRE(sol.converged);
    CHECK(max_abs_sum(sol) <= 1e-9);
    CHECK(norm_sq_nonincreasing(sol));
    std::vector<double> sl, u0;
    for (const auto& x : boundary_slopes(p)) sl.push_back(to_double(x));
    for (int i = 0; i < 3; ++i) u0.push_back(sol.u[i][0]);
    const auto g = endpoint_correction(u0, sl, sol.grid.front());
    for (int i = 0; i < 3; ++i)
        CHECK_THAT(sol.left_slopes[i], WithinAbs(sl[i] + g[i], 1e-7));

    const auto cert = decay_certificate(sol);
    REQUIRE(cert.determinate);
    CHECK_THAT(cert.c_k, WithinAbs(3.0, 1e-12));  // 2(1 - cos(2 pi / 3))
    CHECK(cert.rate_ok);
}

TEST_CASE("solver sweep: every class with K+N <= 9 converges accurately") {
    for (int k = 2; k <= 5; ++k)
        for (int n = 1; k + n <= 9; ++n) {
            if (std::gcd(k, n) != 1) continue;
            for (const auto& p : enumerate_cyclic_partitions(k, n)) {
                const auto sol = solve_toda(p, coarse(512, -6.0, 2.4));
                REQUIRE(sol.converged);
                CHECK(max_abs_sum(sol) <= 1e-8);
                CHECK(norm_sq_nonincreasing(sol));
                CHECK_THAT(sol.mu_numeric, WithinRel(to_double(mu_exact(p)), 5e-4));
            }
        }
}

TEST_CASE("mu quadrature improves under refinement") {
    const CyclicPartition p(2, 3, {1, 2});
    const double mu_x = to_double(mu_exact(p));
    const auto s1 = solve_toda(p, coarse(512));
    const auto s2 = solve_toda(p, coarse(1024));
    REQUIRE(s1.converged);
    REQUIRE(s2.converged);
    const double e1 = std::abs(s1.mu_numeric - mu_x) / mu_x;
    const double e2 = std::abs(s2.mu_numeric - mu_x) / mu_x;
    CHECK(e1 < 5e-3);
    CHECK(e2 < e1 / 2.5);
}

TEST_CASE("decay certificate on a converged profile") {
    const CyclicPartition p(2, 1, {0, 1});
    const auto sol = solve_toda(p, coarse(1024));
    REQUIRE(sol.converged);
    const auto cert = decay_certificate(sol);
    REQUIRE(cert.determinate);
    CHECK_THAT(cert.c_k, WithinAbs(4.0, 1e-12));
    CHECK(cert.c_eps > 0.0);
    CHECK(cert.c_eps <= 1.0);
    CHECK(cert.rate_ok);
    CHECK(cert.fitted_rate >= 0.9 * cert.predicted_rate);
    // the linearized decay of ||u||^2 is 2 sqrt(C_K) = 4
    CHECK(cert.fitted_rate > 0.8 * cert.linearized_rate);
    CHECK(cert.fitted_rate < 1.8 * cert.linearized_rate);
}

TEST_CASE("limit value of the epsilon factor") {
    // C_eps -> 1 as eps -> 0, via the same expression the certificate uses
    auto c_eps = [](double e) { return -std::expm1(-2.0 * e) / (2.0 * e); };
    CHECK_THAT(c_eps(1e-8), WithinAbs(1.0, 1e-7));
    CHECK(c_eps(0.5) < 1.0);
}

TEST_CASE("norm identity: discrete mismatch shrinks at second order") {
    const CyclicPartition p(2, 3, {1, 2});
    const auto s1 = solve_toda(p, coarse(512));
    const auto s2 = solve_toda(p, coarse(1024));
    const auto r1 = sum_identity_check(s1);
    const auto r2 = sum_identity_check(s2);
    CHECK(r1.rhs_nonnegative);
    CHECK(r2.rhs_nonnegative);
    CHECK(r2.max_mismatch < r1.max_mismatch / 2.5);
}

TEST_CASE("decay certificate is indeterminate when the tail sits at round-off") {
    TodaSolution sol{CyclicPartition(2, 1, {0, 1}), TodaConfig{}, {}, {}, 0.0, {0, 0},
                     0.0, true, {}};
    const int m = 64;
    sol.grid.resize(m);
    for (int j = 0; j < m; ++j) sol.grid[j] = -6.0 + 8.5 * j / (m - 1);
    sol.u.assign(2, std::vector<double>(m, 0.0));
    const auto cert = decay_certificate(sol);
    CHECK_FALSE(cert.determinate);

    // on the zero field both sides of the norm identity vanish
    const auto rep = sum_identity_check(sol);
    CHECK(rep.max_mismatch == 0.0);
    CHECK(rep.rhs_nonnegative);
}

TEST_CASE("non-converged solutions are refused by the analysis entry points") {
    TodaConfig cfg = coarse(64);
    cfg.max_newton_iters = 1;  // starve the iteration
    const auto sol = solve_toda(CyclicPartition(2, 3, {0, 3}), cfg);
    CHECK_FALSE(sol.converged);
    CHECK(!sol.residual_history.empty());
    CHECK_THROWS_AS(mu_numeric(sol), std::invalid_argument);
    CHECK_THROWS_AS(decay_certificate(sol), std::invalid_argument);
    CHECK_THROWS_AS(sum_identity_check(sol), std::invalid_argument);
}

TEST_CASE("config validation") {
    TodaConfig bad;
    bad.grid_points = 8;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = TodaConfig{};
    bad.s_min = 3.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = TodaConfig{};
    bad.damping = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
