#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "wildtoda/rational.hpp"

namespace wildtoda {

// Lexicographically least among all cyclic rotations. Idempotent.
inline std::vector<int> canonical_rotation(const std::vector<int>& parts) {
    const int k = static_cast<int>(parts.size());
    if (k == 0) return parts;
    std::vector<int> best = parts;
    std::vector<int> cur = parts;
    for (int r = 1; r < k; ++r) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
    }
    return best;
}

// An equivalence class of K-tuples of nonnegative integers summing to N,
// up to cyclic rotation; stored in canonical (lex-least) rotation.
// Requires gcd(K, N) = 1, which makes the rotation action free.
class CyclicPartition {
public:
    CyclicPartition(int k, int n, std::vector<int> parts)
        : k_(k), n_(n), parts_(canonical_rotation(parts)) {
        if (k < 2) throw std::invalid_argument("rank K must be at least 2");
        if (n < 1) throw std::invalid_argument("pole parameter N must be positive");
        if (std::gcd(k, n) != 1)
            throw std::invalid_argument("K and N must be coprime");
        if (static_cast<int>(parts.size()) != k)
            throw std::invalid_argument("partition must have exactly K parts");
        long long s = 0;
        for (int b : parts) {
            if (b < 0) throw std::invalid_argument("partition parts must be nonnegative");
            s += b;
        }
        if (s != n) throw std::invalid_argument("partition parts must sum to N");
    }

    int k() const { return k_; }
    int n() const { return n_; }
    const std::vector<int>& parts() const { return parts_; }

    friend bool operator==(const CyclicPartition& a, const CyclicPartition& b) {
        return a.k_ == b.k_ && a.n_ == b.n_ && a.parts_ == b.parts_;
    }
    friend bool operator<(const CyclicPartition& a, const CyclicPartition& b) {
        return a.parts_ < b.parts_;
    }

    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < k_; ++i) {
            if (i) s += ",";
            s += std::to_string(parts_[i]);
        }
        return s + ")";
    }

private:
    int k_;
    int n_;
    std::vector<int> parts_;
};

// Reversal involution; on classes it corresponds to dualizing the bundle.
inline CyclicPartition reversed(const CyclicPartition& p) {
    std::vector<int> rev(p.parts().rbegin(), p.parts().rend());
    return CyclicPartition(p.k(), p.n(), std::move(rev));
}

// Number of classes: the rotation action on ordered tuples is free when
// gcd(K, N) = 1, so each class has exactly K ordered representatives.
inline BigInt cyclic_partition_count(int k, int n) {
    if (k < 2 || n < 1 || std::gcd(k, n) != 1)
        throw std::invalid_argument("cyclic_partition_count: need coprime K >= 2, N >= 1");
    return binomial(n + k - 1, k - 1) / k;
}

namespace detail {

template <class F>
void for_each_composition(int k, int n, std::vector<int>& buf, F&& f) {
    if (k == 1) {
        buf.push_back(n);
        f(buf);
        buf.pop_back();
        return;
    }
    for (int b = 0; b <= n; ++b) {
        buf.push_back(b);
        for_each_composition(k - 1, n - b, buf, f);
        buf.pop_back();
    }
}

} // namespace detail

// Every class exactly once, canonical rotations, sorted lexicographically.
inline std::vector<CyclicPartition> enumerate_cyclic_partitions(int k, int n) {
    if (k < 2) throw std::invalid_argument("rank K must be at least 2");
    if (n < 1) throw std::invalid_argument("pole parameter N must be positive");
    if (std::gcd(k, n) != 1)
        throw std::invalid_argument("K and N must be coprime");
    std::vector<std::vector<int>> reps;
    std::vector<int> buf;
    detail::for_each_composition(k, n, buf, [&](const std::vector<int>& c) {
        auto canon = canonical_rotation(c);
        if (canon == c) reps.push_back(canon);
    });
    std::sort(reps.begin(), reps.end());
    std::vector<CyclicPartition> out;
    out.reserve(reps.size());
    for (auto& r : reps) out.emplace_back(k, n, std::move(r));
    if (BigInt(out.size()) != cyclic_partition_count(k, n))
        throw std::logic_error("enumerate_cyclic_partitions: count mismatch");
    return out;
}

} // namespace wildtoda
