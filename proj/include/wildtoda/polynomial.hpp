#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wildtoda/rational.hpp"

namespace wildtoda {

// Element of Q(i), used for exact characteristic polynomials of matrices
// with Gaussian-rational entries.
struct GaussianRational {
    Rat re = 0;
    Rat im = 0;

    GaussianRational() = default;
    GaussianRational(int v) : re(v) {}  // NOLINT: implicit ring embedding
    GaussianRational(Rat r) : re(std::move(r)) {}
    GaussianRational(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        const Rat d = b.re * b.re + b.im * b.im;
        if (d == 0) throw std::invalid_argument("GaussianRational: division by zero");
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
        return !(a == b);
    }

    std::string str() const {
        if (im == 0) return to_short_string(re);
        return to_short_string(re) + (im > 0 ? "+" : "-") +
               to_short_string(im > 0 ? im : Rat(-im)) + "i";
    }
};

// Dense univariate polynomial over an exact coefficient ring T.
// Coefficients stored lowest degree first; the zero polynomial is the
// empty list and has degree() == -1.
template <class T>
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(int v) : c_{T(v)} { trim(); }  // NOLINT: ring embedding of constants
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial zero() { return Polynomial(); }
    static Polynomial constant(T v) { return Polynomial(std::vector<T>{std::move(v)}); }
    static Polynomial monomial(T v, int exp) {
        if (exp < 0) throw std::invalid_argument("Polynomial: negative exponent");
        std::vector<T> c(exp + 1, T(0));
        c[exp] = std::move(v);
        return Polynomial(std::move(c));
    }
    // The variable itself, z.
    static Polynomial variable() { return monomial(T(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return T(0);
        return c_[i];
    }
    T leading() const { return c_.empty() ? T(0) : c_.back(); }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = c[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = c[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] - b.c_[i];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a) {
        std::vector<T> c(a.c_);
        for (auto& x : c) x = -x;
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == T(0)) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const T& s, const Polynomial& a) {
        std::vector<T> c(a.c_);
        for (auto& x : c) x = s * x;
        return Polynomial(std::move(c));
    }
    Polynomial divided_by(const T& s) const {
        std::vector<T> c(c_);
        for (auto& x : c) x = x / s;
        return Polynomial(std::move(c));
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    T eval(const T& x) const {
        T acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }
    std::vector<T> c_;
};

using PolyQ = Polynomial<Rat>;
using PolyQi = Polynomial<GaussianRational>;

namespace detail {
inline std::string coeff_str(const Rat& r) { return to_short_string(r); }
inline std::string coeff_str(const GaussianRational& g) {
    return g.im == 0 ? g.str() : "(" + g.str() + ")";
}
} // namespace detail

template <class T>
std::string poly_str(const Polynomial<T>& p, const std::string& var = "z") {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        if (p.coeff(i) == T(0)) continue;
        if (!out.empty()) out += " + ";
        const std::string c = detail::coeff_str(p.coeff(i));
        if (i == 0) {
            out += c;
        } else {
            if (c != "1") out += c + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

} // namespace wildtoda
