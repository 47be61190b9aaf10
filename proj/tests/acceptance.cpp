// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <vector>

#include "wildtoda/hitchin.hpp"
#include "wildtoda/toda.hpp"
#include "wildtoda/walgebra.hpp"

using namespace wildtoda;

namespace {

int failures = 0;

void report(int id, const char* what, bool ok, const std::string& detail = "") {
    std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", id, what,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

} // namespace

// 1. exact fixed-point data for (2,3), under 1 ms
static void criterion_1() {
    // warm-up outside the timed region
    (void)enumerate_cyclic_partitions(2, 3);
    const auto t0 = std::chrono::steady_clock::now();
    const auto classes = enumerate_cyclic_partitions(2, 3);
    bool ok = classes.size() == 2;
    ok = ok && mu_exact(classes[0]) == Rat(9, 20) && mu_exact(classes[1]) == Rat(1, 20);
    ok = ok && parabolic_weights(classes[0]) == VecQ{Rat(-3, 4), Rat(3, 4)};
    ok = ok && parabolic_weights(classes[1]) == VecQ{Rat(-1, 4), Rat(1, 4)};
    const double dt = seconds_since(t0);
    ok = ok && dt < 1e-3;
    report(1, "exact (2,3) classes, mu and weights", ok, fmt(dt * 1e3) + " ms");
}

// 2. exact W-algebra data for (2,3)
static void criterion_2() {
    const auto classes = enumerate_cyclic_partitions(2, 3);
    bool ok = effective_central_charge(classes[0]) == Rat(-22, 5) &&
              effective_central_charge(classes[1]) == Rat(2, 5);
    for (const auto& p : classes)
        ok = ok && Rat(12) * mu_exact(p) == Rat(1) - effective_central_charge(p);
    report(2, "exact (2,3) c_eff and dictionary", ok);
}

// 3. dictionary sweep K+N <= 20 under 10 s
static void criterion_3() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    long long n_classes = 0;
    for (int k = 2; k <= 18; ++k)
        for (int n = 1; k + n <= 20; ++n) {
            if (std::gcd(k, n) != 1) continue;
            const auto rep = verify_dictionary(k, n);
            ok = ok && rep.all_pass;
            n_classes += static_cast<long long>(rep.rows.size());
        }
    const double dt = seconds_since(t0);
    ok = ok && dt < 10.0;
    report(3, "dictionary sweep K+N <= 20", ok,
           std::to_string(n_classes) + " classes, " + fmt(dt) + " s");
}

// 4. enumeration counts vs brute force for K+N <= 16
static void criterion_4() {
    bool ok = enumerate_cyclic_partitions(2, 3).size() == 2 &&
              enumerate_cyclic_partitions(3, 4).size() == 5;
    for (int k = 2; k <= 14 && ok; ++k)
        for (int n = 1; k + n <= 16 && ok; ++n) {
            if (std::gcd(k, n) != 1) continue;
            // independent count: orbits of the rotation action on all tuples
            long long tuples = 0;
            std::vector<int> cur(k, 0);
            auto rec = [&](auto&& self, int pos, int rem) -> void {
                if (pos == k - 1) {
                    ++tuples;
                    return;
                }
                for (int v = 0; v <= rem; ++v) self(self, pos + 1, rem - v);
            };
            rec(rec, 0, n);
            // free action: every orbit has size exactly K
            ok = ok && tuples % k == 0 &&
                 BigInt(tuples / k) == BigInt(enumerate_cyclic_partitions(k, n).size());
        }
    report(4, "enumeration counts match the brute-force orbit count", ok);
}

// 5. Hitchin base dimension, K <= 12, N <= 25
static void criterion_5() {
    bool ok = base_dimension(2, 3) == 1;
    for (int k = 2; k <= 12 && ok; ++k)
        for (int n = 1; n <= 25 && ok; ++n) {
            if (std::gcd(k, n) != 1) continue;
            ok = base_dimension(k, n) == static_cast<long long>(k - 1) * (n - 1) / 2;
        }
    report(5, "base dimension floor sum equals (K-1)(N-1)/2", ok);
}

// 6. section round trip on 100 random exact coefficient tuples, under 30 s
static void criterion_6() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(1234321);
    std::uniform_int_distribution<int> pick_k(2, 4);
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    bool ok = true;
    for (int rep = 0; rep < 100 && ok; ++rep) {
        const int k = pick_k(rng);
        int n = 0;
        std::uniform_int_distribution<int> pick_n(1, 7);
        do { n = pick_n(rng); } while (std::gcd(k, n) != 1);
        std::vector<PolyQ> qs;
        for (int i = 2; i <= k; ++i) {
            std::vector<Rat> cs;
            for (int d = 0; d <= coefficient_degree_bound(k, n, i); ++d)
                cs.emplace_back(num(rng), den(rng));
            qs.emplace_back(std::move(cs));
        }
        const auto cp = char_poly(hitchin_section(k, n, qs), n);
        ok = ok && degree_bounds_check(cp);
        const auto back = q_from_p(cp);
        for (int i = 2; i <= k && ok; ++i) ok = back[i - 2] == qs[i - 2];
    }
    const double dt = seconds_since(t0);
    ok = ok && dt < 30.0;
    report(6, "100 random section round trips", ok, fmt(dt) + " s");
}

// 7. strata char identities for 50 random exact parameters
static void criterion_7() {
    std::mt19937 rng(555);
    std::uniform_int_distribution<int> num(-8, 8);
    std::uniform_int_distribution<int> den(1, 5);
    bool ok = true;
    for (int rep = 0; rep < 50 && ok; ++rep) {
        const GaussianRational u(Rat(num(rng), den(rng)), Rat(num(rng), den(rng)));
        const auto cps = char_poly(m23_small(u), 3);
        ok = ok && cps.p(2) == PolyQi::constant(-u);
        const GaussianRational w(Rat(num(rng), den(rng)), Rat(num(rng), den(rng)));
        const GaussianRational g(Rat(num(rng), den(rng)), Rat(num(rng), den(rng)));
        const auto cpb = char_poly(m23_big(w, g), 3);
        ok = ok && cpb.p(2) == PolyQi::constant(-(g * g - w * w * w));
    }
    report(7, "M(2,3) strata characteristic identities", ok);
}

// 8. model form for every class with K+N <= 12
static void criterion_8() {
    bool ok = true;
    double worst = 0.0;
    for (int k = 2; k <= 11; ++k)
        for (int n = 1; k + n <= 12; ++n) {
            if (std::gcd(k, n) != 1) continue;
            for (const auto& p : enumerate_cyclic_partitions(k, n)) {
                const auto rep = verify_model_form(p);
                ok = ok && rep.pass && rep.exponents_match &&
                     rep.expected_exponent == -(2LL * k + 2 * n + 1);
                worst = std::max(worst, rep.residual);
            }
        }
    ok = ok && worst <= 1e-12;
    report(8, "model-form gauge check, K+N <= 12", ok, "max residual " + fmt(worst));
}

// 9. numerical mu vs exact for (2,3) both classes and (2,1)
static void criterion_9() {
    bool ok = true;
    std::string detail;
    const std::vector<CyclicPartition> cases{CyclicPartition(2, 3, {0, 3}),
                                             CyclicPartition(2, 3, {1, 2}),
                                             CyclicPartition(2, 1, {0, 1})};
    for (const auto& p : cases) {
        const auto t0 = std::chrono::steady_clock::now();
        TodaConfig cfg;  // defaults: M = 2048
        const auto sol = solve_toda(p, cfg);
        cfg.grid_points = 4096;
        const auto fine = solve_toda(p, cfg);
        const double dt = seconds_since(t0);
        const double mu_x = to_double(mu_exact(p));
        const double e1 = std::abs(sol.mu_numeric - mu_x) / mu_x;
        const double e2 = std::abs(fine.mu_numeric - mu_x) / mu_x;
        const bool this_ok = sol.converged && fine.converged && e1 <= 1e-3 &&
                             e2 <= e1 / 3.0 && dt <= 30.0;
        ok = ok && this_ok;
        detail += p.str() + " err " + fmt(e1) + " -> " + fmt(e2) + "; ";
    }
    report(9, "numerical mu within 1e-3, improving >= 3x on refinement", ok, detail);
}

// 10. qualitative invariants per converged solution
static void criterion_10() {
    bool ok = true;
    std::string detail;
    for (const auto& p : {CyclicPartition(2, 3, {0, 3}), CyclicPartition(2, 3, {1, 2}),
                          CyclicPartition(2, 1, {0, 1})}) {
        const auto sol = solve_toda(p, TodaConfig{});
        if (!sol.converged) {
            ok = false;
            continue;
        }
        double worst_sum = 0.0;
        double prev = std::numeric_limits<double>::infinity();
        bool monotone = true;
        for (std::size_t j = 0; j < sol.grid.size(); ++j) {
            double s = 0.0, nsq = 0.0;
            for (int i = 0; i < p.k(); ++i) {
                s += sol.u[i][j];
                nsq += sol.u[i][j] * sol.u[i][j];
            }
            worst_sum = std::max(worst_sum, std::abs(s));
            if (nsq > prev * (1.0 + 1e-12) + 1e-24) monotone = false;
            prev = nsq;
        }
        const auto cert = decay_certificate(sol);
        const bool this_ok = worst_sum <= 1e-9 && monotone && cert.determinate &&
                             cert.fitted_rate >= 0.9 * cert.predicted_rate;
        ok = ok && this_ok;
        detail += p.str() + " sum " + fmt(worst_sum) + " rate " + fmt(cert.fitted_rate) +
                  "/" + fmt(cert.predicted_rate) + "; ";
    }
    report(10, "sum ~ 0, ||u||^2 non-increasing, decay rate bound", ok, detail);
}

// 11. K=2, N=1 reduction: antisymmetry and the -1/2 log slope
static void criterion_11() {
    const CyclicPartition p(2, 1, {0, 1});
    const auto sol = solve_toda(p, TodaConfig{});
    bool ok = sol.converged;
    double anti = 0.0;
    for (std::size_t j = 0; j < sol.grid.size() && ok; ++j)
        anti = std::max(anti, std::abs(sol.u[0][j] + sol.u[1][j]));
    ok = ok && anti <= 1e-8;
    // component u_1 carries u ~ -1/2 log|z|; d log|z| = (K/(K+N)) ds
    const double slope_logz = sol.left_slopes[0] * (2.0 + 1.0) / 2.0;
    ok = ok && std::abs(slope_logz - (-0.5)) <= 0.02 * 0.5;
    report(11, "K=2, N=1 sinh-Gordon reduction", ok,
           "antisym " + fmt(anti) + ", slope " + fmt(slope_logz));
}

// 12. norm identity at second-order convergence on (2,3)
static void criterion_12() {
    bool ok = true;
    std::string detail;
    for (const auto& p : enumerate_cyclic_partitions(2, 3)) {
        TodaConfig cfg;
        const auto r1 = sum_identity_check(solve_toda(p, cfg));
        cfg.grid_points *= 2;
        const auto r2 = sum_identity_check(solve_toda(p, cfg));
        const bool this_ok = r1.rhs_nonnegative && r2.rhs_nonnegative &&
                             r2.max_mismatch <= r1.max_mismatch / 3.0;
        ok = ok && this_ok;
        detail += p.str() + " " + fmt(r1.max_mismatch) + " -> " + fmt(r2.max_mismatch) + "; ";
    }
    report(12, "norm identity mismatch shrinks >= 3x when M doubles", ok, detail);
}

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (failures == 0)
        std::printf("acceptance: all 12 criteria pass\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
