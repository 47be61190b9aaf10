#pragma once

#include <stdexcept>
#include <vector>

#include "wildtoda/polynomial.hpp"

namespace wildtoda {

// Square matrix with univariate polynomial entries over an exact ring T.
template <class T>
class PolyMatrix {
public:
    PolyMatrix() : n_(0) {}
    explicit PolyMatrix(int n) : n_(n), e_(static_cast<std::size_t>(n) * n) {}

    static PolyMatrix identity(int n) {
        PolyMatrix m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Polynomial<T>::constant(T(1));
        return m;
    }

    int size() const { return n_; }
    Polynomial<T>& at(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }
    const Polynomial<T>& at(int i, int j) const {
        return e_[static_cast<std::size_t>(i) * n_ + j];
    }

    friend PolyMatrix operator+(const PolyMatrix& x, const PolyMatrix& y) {
        PolyMatrix r(x.check_same(y));
        for (std::size_t i = 0; i < x.e_.size(); ++i) r.e_[i] = x.e_[i] + y.e_[i];
        return r;
    }
    friend PolyMatrix operator-(const PolyMatrix& x, const PolyMatrix& y) {
        PolyMatrix r(x.check_same(y));
        for (std::size_t i = 0; i < x.e_.size(); ++i) r.e_[i] = x.e_[i] - y.e_[i];
        return r;
    }
    friend PolyMatrix operator*(const PolyMatrix& x, const PolyMatrix& y) {
        const int n = x.check_same(y);
        PolyMatrix r(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                if (x.at(i, k).is_zero()) continue;
                for (int j = 0; j < n; ++j) {
                    if (y.at(k, j).is_zero()) continue;
                    r.at(i, j) = r.at(i, j) + x.at(i, k) * y.at(k, j);
                }
            }
        return r;
    }
    friend bool operator==(const PolyMatrix& x, const PolyMatrix& y) {
        return x.n_ == y.n_ && x.e_ == y.e_;
    }

    PolyMatrix transposed() const {
        PolyMatrix r(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Polynomial<T> trace() const {
        Polynomial<T> t;
        for (int i = 0; i < n_; ++i) t = t + at(i, i);
        return t;
    }

    PolyMatrix scaled(const Polynomial<T>& s) const {
        PolyMatrix r(n_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = s * e_[i];
        return r;
    }

private:
    int check_same(const PolyMatrix& o) const {
        if (n_ != o.n_) throw std::invalid_argument("PolyMatrix: size mismatch");
        return n_;
    }
    int n_;
    std::vector<Polynomial<T>> e_;
};

// Coefficients c_1..c_n of det(lambda*I - A) = lambda^n + c_1 lambda^{n-1}
// + ... + c_n, by the trace-of-exterior-powers recursion. Exact; keeps all
// intermediate degrees bounded by deg(det).
template <class T>
std::vector<Polynomial<T>> char_poly_coeffs(const PolyMatrix<T>& a) {
    const int n = a.size();
    if (n == 0) throw std::invalid_argument("char_poly_coeffs: empty matrix");
    std::vector<Polynomial<T>> c;
    c.reserve(n);
    PolyMatrix<T> m = PolyMatrix<T>::identity(n);
    for (int k = 1; k <= n; ++k) {
        const PolyMatrix<T> am = a * m;
        Polynomial<T> ck = (-am.trace()).divided_by(T(k));
        m = am;
        for (int i = 0; i < n; ++i) m.at(i, i) = m.at(i, i) + ck;
        c.push_back(std::move(ck));
    }
    return c;
}

} // namespace wildtoda
