#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace wildtoda {

// General banded linear system, kl sub- and ku super-diagonals, solved by
// Gaussian elimination with partial pivoting. Band storage keeps kl extra
// super-diagonals for pivoting fill, as usual.
class BandedSystem {
public:
    BandedSystem(int n, int kl, int ku)
        : n_(n), kl_(kl), ku_(ku), width_(2 * kl + ku + 1),
          ab_(static_cast<std::size_t>(width_) * n, 0.0) {}

    int size() const { return n_; }

    // Valid for i - j in [-(ku + kl), kl].
    double& at(int i, int j) {
        const int r = kl_ + ku_ + i - j;
        return ab_[static_cast<std::size_t>(r) * n_ + j];
    }

    void add(int i, int j, double v) { at(i, j) += v; }

    // Factors in place and solves; rhs is overwritten with the solution.
    void solve(std::vector<double>& rhs) {
        if (static_cast<int>(rhs.size()) != n_)
            throw std::invalid_argument("BandedSystem::solve: rhs size mismatch");
        const int reach = kl_ + ku_;
        for (int j = 0; j < n_; ++j) {
            const int last_row = std::min(n_ - 1, j + kl_);
            int piv = j;
            double best = std::abs(at(j, j));
            for (int i = j + 1; i <= last_row; ++i) {
                const double v = std::abs(at(i, j));
                if (v > best) { best = v; piv = i; }
            }
            if (best == 0.0) throw std::runtime_error("BandedSystem: singular matrix");
            const int last_col = std::min(n_ - 1, j + reach);
            if (piv != j) {
                for (int c = j; c <= last_col; ++c) std::swap(at(j, c), at(piv, c));
                std::swap(rhs[j], rhs[piv]);
            }
            const double d = at(j, j);
            for (int i = j + 1; i <= last_row; ++i) {
                const double m = at(i, j) / d;
                if (m == 0.0) continue;
                for (int c = j + 1; c <= last_col; ++c) at(i, c) -= m * at(j, c);
                rhs[i] -= m * rhs[j];
            }
        }
        for (int j = n_ - 1; j >= 0; --j) {
            const int last_col = std::min(n_ - 1, j + reach);
            double acc = rhs[j];
            for (int c = j + 1; c <= last_col; ++c) acc -= at(j, c) * rhs[c];
            rhs[j] = acc / at(j, j);
        }
    }

private:
    int n_, kl_, ku_, width_;
    std::vector<double> ab_;
};

} // namespace wildtoda
