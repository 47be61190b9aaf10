#pragma once

#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "wildtoda/fixed_points.hpp"
#include "wildtoda/partitions.hpp"
#include "wildtoda/polymatrix.hpp"
#include "wildtoda/polynomial.hpp"
#include "wildtoda/rational_linalg.hpp"

namespace wildtoda {

// dim of the space of allowed characteristic polynomials:
// sum_{i=2}^K floor(N(i-1)/K), which closes to (K-1)(N-1)/2.
inline long long base_dimension(int k, int n) {
    if (k < 2 || n < 1 || std::gcd(k, n) != 1)
        throw std::invalid_argument("base_dimension: need coprime K >= 2, N >= 1");
    long long s = 0;
    for (int i = 2; i <= k; ++i) s += static_cast<long long>(n) * (i - 1) / k;
    if (2 * s != static_cast<long long>(k - 1) * (n - 1))
        throw std::logic_error("base_dimension: floor sum != (K-1)(N-1)/2");
    return s;
}

// Principal sl2 inside sl(K): X+ with ones on the superdiagonal, X- with
// r_i = i(K-i) on the subdiagonal, H = [X+, X-].
struct PrincipalSl2 {
    MatQ x_plus;
    MatQ x_minus;
    MatQ h;
};

inline PrincipalSl2 principal_sl2(int k) {
    if (k < 2) throw std::invalid_argument("principal_sl2: K must be at least 2");
    MatQ xp(k), xm(k);
    for (int i = 0; i + 1 < k; ++i) {
        xp.at(i, i + 1) = 1;
        xm.at(i + 1, i) = Rat(static_cast<long long>(i + 1) * (k - i - 1));
    }
    MatQ h = xp * xm - xm * xp;
    if (!(h * xp - xp * h == Rat(2) * xp) || !(h * xm - xm * h == Rat(-2) * xm))
        throw std::logic_error("principal_sl2: sl2 relations failed");
    return PrincipalSl2{std::move(xp), std::move(xm), std::move(h)};
}

// X_1..X_{K-1}: for each d, the unique-up-to-scale matrix supported on the
// d-th subdiagonal commuting with X-. Normalized so the first entry is 1.
inline std::vector<MatQ> commutant_basis(int k) {
    const PrincipalSl2 sl2 = principal_sl2(k);
    std::vector<MatQ> basis;
    basis.reserve(k - 1);
    for (int d = 1; d < k; ++d) {
        const int nx = k - d;  // unknowns x_r at entries (d+r, r)
        // rows of [X, X-] = 0 as linear functionals on the x_r
        std::vector<VecQ> rows;
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                VecQ row(nx, Rat(0));
                // (X X-)_{ab} = sum_c X_{ac} X-_{cb}; X_{ac} != 0 iff a = c + d
                if (a - d >= 0 && a - d < k && b == a - d - 1)
                    row[a - d] += sl2.x_minus.at(a - d, b);
                // (X- X)_{ab} = sum_c X-_{ac} X_{cb}; X_{cb} != 0 iff c = b + d
                if (b + d + 1 == a && b + d < k)
                    row[b] -= sl2.x_minus.at(a, b + d);
                bool nz = false;
                for (const auto& x : row) nz = nz || x != 0;
                if (nz) rows.push_back(std::move(row));
            }
        auto ns = nullspace(std::move(rows), nx);
        if (ns.size() != 1)
            throw std::logic_error("commutant_basis: nullspace dimension != 1");
        VecQ x = ns[0];
        if (x[0] == 0) throw std::logic_error("commutant_basis: vanishing leading entry");
        const Rat scale = Rat(1) / x[0];
        MatQ m(k);
        for (int r = 0; r < nx; ++r) m.at(d + r, r) = scale * x[r];
        const MatQ comm = m * sl2.x_minus - sl2.x_minus * m;
        if (!comm.is_zero()) throw std::logic_error("commutant_basis: [X_d, X-] != 0");
        basis.push_back(std::move(m));
    }
    return basis;
}

// Characteristic polynomial in the normal form
//   lambda^K - z^N + P_2 lambda^{K-2} + ... + P_K,
// stored as the coefficients P_2..P_K.
template <class T>
struct CharPoly {
    int k = 0;
    int n_pole = 0;
    std::vector<Polynomial<T>> ps;  // ps[i] is P_{i+2}

    const Polynomial<T>& p(int i) const { return ps.at(i - 2); }
    Polynomial<T>& p(int i) { return ps.at(i - 2); }
};

// Largest degree allowed for P_i (and for Q_i): floor(N(i-1)/K) - 1.
// N(i-1)/K is never an integer for coprime (K, N) and 2 <= i <= K.
inline int coefficient_degree_bound(int k, int n, int i) {
    return static_cast<int>(static_cast<long long>(n) * (i - 1) / k) - 1;
}

template <class T>
CharPoly<T> char_poly(const PolyMatrix<T>& m, int n_pole) {
    const int k = m.size();
    if (k < 2) throw std::invalid_argument("char_poly: matrix must be at least 2x2");
    auto c = char_poly_coeffs(m);
    if (!c[0].is_zero())
        throw std::invalid_argument("char_poly: matrix must be traceless");
    CharPoly<T> cp;
    cp.k = k;
    cp.n_pole = n_pole;
    cp.ps.assign(c.begin() + 1, c.end());
    cp.p(k) = cp.p(k) + Polynomial<T>::monomial(T(1), n_pole);
    return cp;
}

template <class T>
bool degree_bounds_check(const CharPoly<T>& cp) {
    for (int i = 2; i <= cp.k; ++i)
        if (cp.p(i).degree() > coefficient_degree_bound(cp.k, cp.n_pole, i)) return false;
    return true;
}

// Fixed-point Higgs field (z^{b_1}..z^{b_{K-1}} on the superdiagonal,
// z^{b_K} in the corner); char poly is lambda^K - z^N.
inline PolyMatrix<Rat> higgs_field_matrix(const CyclicPartition& p) {
    const int k = p.k();
    PolyMatrix<Rat> m(k);
    for (int i = 0; i + 1 < k; ++i) m.at(i, i + 1) = PolyQ::monomial(1, p.parts()[i]);
    m.at(k - 1, 0) = PolyQ::monomial(1, p.parts()[k - 1]);
    return m;
}

// The section: companion-type phi_0 (ones on the superdiagonal, z^N in the
// corner) plus sum_i X_{i-1} Q_i. qs holds Q_2..Q_K.
inline PolyMatrix<Rat> hitchin_section(int k, int n, const std::vector<PolyQ>& qs) {
    if (k < 2 || n < 1 || std::gcd(k, n) != 1)
        throw std::invalid_argument("hitchin_section: need coprime K >= 2, N >= 1");
    if (static_cast<int>(qs.size()) != k - 1)
        throw std::invalid_argument("hitchin_section: expected K-1 polynomials Q_2..Q_K");
    for (int i = 2; i <= k; ++i)
        if (qs[i - 2].degree() > coefficient_degree_bound(k, n, i))
            throw std::invalid_argument("hitchin_section: deg Q_" + std::to_string(i) +
                                        " exceeds its bound");
    PolyMatrix<Rat> m(k);
    for (int i = 0; i + 1 < k; ++i) m.at(i, i + 1) = PolyQ::constant(1);
    m.at(k - 1, 0) = PolyQ::monomial(1, n);
    const auto xs = commutant_basis(k);
    for (int i = 2; i <= k; ++i) {
        if (qs[i - 2].is_zero()) continue;
        const MatQ& x = xs[i - 2];
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                if (x.at(a, b) != 0)
                    m.at(a, b) = m.at(a, b) + x.at(a, b) * qs[i - 2];
    }
    return m;
}

// Inverts the char-poly map of the section: P_k depends on Q_k linearly
// with a constant nonzero coefficient plus terms in Q_2..Q_{k-2}, so the
// Q_k are determined inductively. Exact round trip guaranteed.
inline std::vector<PolyQ> q_from_p(const CharPoly<Rat>& target) {
    const int k = target.k;
    const int n = target.n_pole;
    if (!degree_bounds_check(target))
        throw std::invalid_argument("q_from_p: degree bounds violated");
    std::vector<PolyQ> qs(k - 1);
    for (int i = 2; i <= k; ++i) {
        if (coefficient_degree_bound(k, n, i) < 0) continue;  // Q_i forced zero
        const CharPoly<Rat> cur = char_poly(hitchin_section(k, n, qs), n);
        std::vector<PolyQ> probe = qs;
        probe[i - 2] = PolyQ::constant(1);
        const CharPoly<Rat> bumped = char_poly(hitchin_section(k, n, probe), n);
        const PolyQ diff = bumped.p(i) - cur.p(i);
        if (!diff.is_constant() || diff.is_zero())
            throw std::logic_error("q_from_p: coefficient of Q_" + std::to_string(i) +
                                   " is not a nonzero constant");
        qs[i - 2] = (target.p(i) - cur.p(i)).divided_by(diff.coeff(0));
        if (qs[i - 2].degree() > coefficient_degree_bound(k, n, i))
            throw std::logic_error("q_from_p: solved Q_" + std::to_string(i) +
                                   " exceeds its degree bound");
    }
    const CharPoly<Rat> check = char_poly(hitchin_section(k, n, qs), n);
    for (int i = 2; i <= k; ++i)
        if (!(check.p(i) == target.p(i)))
            throw std::logic_error("q_from_p: round trip failed");
    return qs;
}

// Explicit representatives of the two strata of the K=2, N=3 example.
// The small stratum covers the base directly; the big stratum maps to it
// along gamma^2 - w^3 = u.
inline PolyMatrix<GaussianRational> m23_small(const GaussianRational& u) {
    PolyMatrix<GaussianRational> m(2);
    m.at(0, 1) = PolyQi(std::vector<GaussianRational>{u, 0, 0, 1});  // z^3 + u
    m.at(1, 0) = PolyQi::constant(1);
    return m;
}

inline PolyMatrix<GaussianRational> m23_big(const GaussianRational& w,
                                            const GaussianRational& gamma) {
    PolyMatrix<GaussianRational> m(2);
    m.at(0, 0) = PolyQi::constant(gamma);
    // (z^3 - w^3)/(z - w) = z^2 + w z + w^2
    m.at(0, 1) = PolyQi(std::vector<GaussianRational>{w * w, w, 1});
    m.at(1, 0) = PolyQi(std::vector<GaussianRational>{-w, 1});  // z - w
    m.at(1, 1) = PolyQi::constant(-gamma);
    return m;
}

// Result of checking the local model form at a fixed point: pull phi_b back
// through z = u^{-2K}, conjugate by the diagonal weight gauge and the
// discrete Fourier matrix, and compare with the model
// -2K diag(w, w^2, ..., 1) du/u^{2K+2N+1}, w = e^{2 pi i / K}.
struct ModelFormReport {
    long long expected_exponent = 0;  // power of u, always -(2K+2N+1)
    bool weights_integral = false;    // 2K alpha_i all integers
    bool exponents_match = false;
    bool exact = false;               // K = 2 path, exact +-1 arithmetic
    double residual = 0.0;            // max entrywise coefficient mismatch
    bool pass = false;
};

inline ModelFormReport verify_model_form(const CyclicPartition& p) {
    const int k = p.k();
    const int n = p.n();
    ModelFormReport rep;
    rep.expected_exponent = -(2LL * k + 2LL * n + 1);

    const VecQ alpha = parabolic_weights(p);
    std::vector<long long> scaled(k);  // 2K alpha_i
    rep.weights_integral = true;
    for (int i = 0; i < k; ++i) {
        const Rat s = Rat(2 * k) * alpha[i];
        if (denominator(s) != 1) {
            rep.weights_integral = false;
            return rep;
        }
        scaled[i] = numerator(s).convert_to<long long>();
    }

    // Nonzero entries of phi_b/dz sit at (i, i+1 mod K) with power b_{i+1}.
    // Pullback z = u^{-2K}, dz = -2K u^{-2K-1} du, then conjugation by
    // diag(u^{2K alpha_i}) adds 2K(alpha_i - alpha_j) to the (i, j) entry.
    rep.exponents_match = true;
    for (int i = 0; i < k; ++i) {
        const int j = (i + 1) % k;
        const long long e = -2LL * k * p.parts()[i] - 2 * k - 1 + scaled[i] - scaled[j];
        if (e != rep.expected_exponent) rep.exponents_match = false;
    }
    if (!rep.exponents_match) return rep;

    // Coefficient part: the conjugated matrix is -2K C u^{-(2K+2N+1)} with C
    // the cyclic shift; the Fourier sandwich must produce the model diagonal.
    if (k == 2) {
        rep.exact = true;
        MatQ c(2);
        c.at(0, 1) = -2 * k;
        c.at(1, 0) = -2 * k;
        MatQ g(2);  // w = -1: g_{jk} = (-1)^{jk}, 1-based indices
        g.at(0, 0) = -1;
        g.at(0, 1) = 1;
        g.at(1, 0) = 1;
        g.at(1, 1) = 1;
        const MatQ h = g * c * (Rat(1, 2) * g);  // g^{-1} = g/2
        MatQ target(2);
        target.at(0, 0) = 2 * k;   // -2K * w^1 = +4
        target.at(1, 1) = -2 * k;  // -2K * w^2 = -4
        rep.residual = (h == target) ? 0.0 : 1.0;
    } else {
        using C = std::complex<long double>;
        const long double two_pi = 2.0L * std::acos(-1.0L);
        auto omega_pow = [&](long long e) {
            const long double t = two_pi * static_cast<long double>(e % k) / k;
            return C(std::cos(t), std::sin(t));
        };
        std::vector<C> g(static_cast<std::size_t>(k) * k), gi(g.size());
        for (int j = 1; j <= k; ++j)
            for (int m = 1; m <= k; ++m) {
                g[(j - 1) * k + (m - 1)] = omega_pow(-static_cast<long long>(j) * m);
                gi[(j - 1) * k + (m - 1)] =
                    omega_pow(static_cast<long long>(j) * m) / static_cast<long double>(k);
            }
        std::vector<C> c(g.size()), tmp(g.size(), C(0)), h(g.size(), C(0));
        for (int i = 0; i < k; ++i) c[i * k + (i + 1) % k] = C(-2.0L * k);
        for (int i = 0; i < k; ++i)
            for (int l = 0; l < k; ++l)
                for (int j = 0; j < k; ++j) tmp[i * k + j] += c[i * k + l] * gi[l * k + j];
        for (int i = 0; i < k; ++i)
            for (int l = 0; l < k; ++l)
                for (int j = 0; j < k; ++j) h[i * k + j] += g[i * k + l] * tmp[l * k + j];
        long double res = 0;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                C want(0);
                if (i == j) want = C(-2.0L * k) * omega_pow(i + 1);
                res = std::max(res, std::abs(h[i * k + j] - want));
            }
        rep.residual = static_cast<double>(res);
    }
    rep.pass = rep.weights_integral && rep.exponents_match && rep.residual <= 1e-12;
    return rep;
}

} // namespace wildtoda
