#pragma once

#include <stdexcept>
#include <vector>

#include "wildtoda/rational.hpp"

namespace wildtoda {

// Small dense square matrix over the exact rationals.
class MatQ {
public:
    MatQ() : n_(0) {}
    explicit MatQ(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, Rat(0)) {}

    static MatQ identity(int n) {
        MatQ m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int size() const { return n_; }
    Rat& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const Rat& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    friend MatQ operator+(const MatQ& x, const MatQ& y) {
        MatQ r(x.check_same(y));
        for (std::size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] + y.a_[i];
        return r;
    }
    friend MatQ operator-(const MatQ& x, const MatQ& y) {
        MatQ r(x.check_same(y));
        for (std::size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] - y.a_[i];
        return r;
    }
    friend MatQ operator*(const MatQ& x, const MatQ& y) {
        const int n = x.check_same(y);
        MatQ r(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                if (x.at(i, k) == 0) continue;
                for (int j = 0; j < n; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
            }
        return r;
    }
    friend MatQ operator*(const Rat& s, const MatQ& x) {
        MatQ r(x.n_);
        for (std::size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = s * x.a_[i];
        return r;
    }
    friend bool operator==(const MatQ& x, const MatQ& y) {
        return x.n_ == y.n_ && x.a_ == y.a_;
    }

    VecQ apply(const VecQ& v) const {
        if (static_cast<int>(v.size()) != n_)
            throw std::invalid_argument("MatQ::apply: size mismatch");
        VecQ r(n_, Rat(0));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r[i] += at(i, j) * v[j];
        return r;
    }

    MatQ transposed() const {
        MatQ r(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

private:
    int check_same(const MatQ& o) const {
        if (n_ != o.n_) throw std::invalid_argument("MatQ: size mismatch");
        return n_;
    }
    int n_;
    std::vector<Rat> a_;
};

// Cyclic shift by one: (S v)_i = v_{i+1}, entries S_{i,i+1 mod K} = 1.
inline MatQ shift_matrix(int k) {
    MatQ m(k);
    for (int i = 0; i < k; ++i) m.at(i, (i + 1) % k) = 1;
    return m;
}

// Orthogonal projection onto the sum-zero hyperplane.
inline MatQ ones_projector(int k) {
    MatQ m(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m.at(i, j) = (i == j ? Rat(1) : Rat(0)) - Rat(1, k);
    return m;
}

// The K x K matrix W with entries W_ij = (1/2K)(-(K-1) + 2((j-i) mod K)).
// It is the unique matrix with W*1 = 0 and W(S-Id) = (S-Id)W = P on the
// sum-zero hyperplane; parabolic weights of a partition are alpha = -W b.
inline MatQ weight_matrix(int k) {
    if (k < 2) throw std::invalid_argument("weight_matrix: K must be at least 2");
    MatQ m(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            const int d = ((j - i) % k + k) % k;
            m.at(i, j) = Rat(-(k - 1) + 2 * d, 2 * k);
        }
    return m;
}

// Cyclic difference: (D u)_i = u_i - u_{i+1}. Its Gram matrix D^T D drives
// the linearized decay rate of the radial lattice system.
inline MatQ cyclic_difference(int k) {
    MatQ m = MatQ::identity(k);
    for (int i = 0; i < k; ++i) m.at(i, (i + 1) % k) -= 1;
    return m;
}

// Reduced row echelon form in place; returns pivot column per row.
inline std::vector<int> rref(std::vector<VecQ>& rows, int ncols) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < ncols && r < static_cast<int>(rows.size()); ++c) {
        int sel = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (rows[i][c] != 0) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(rows[r], rows[sel]);
        const Rat inv = Rat(1) / rows[r][c];
        for (int j = c; j < ncols; ++j) rows[r][j] *= inv;
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Rat f = rows[i][c];
            for (int j = c; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Basis of the nullspace of the system given by `rows` (each row a linear
// functional on ncols unknowns).
inline std::vector<VecQ> nullspace(std::vector<VecQ> rows, int ncols) {
    const auto pivots = rref(rows, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<VecQ> basis;
    for (int c = 0; c < ncols; ++c) {
        if (is_pivot[c]) continue;
        VecQ v(ncols, Rat(0));
        v[c] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace wildtoda
