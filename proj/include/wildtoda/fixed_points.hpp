#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "wildtoda/partitions.hpp"
#include "wildtoda/rational.hpp"
#include "wildtoda/rational_linalg.hpp"

namespace wildtoda {

// Parabolic weights alpha = -W b of an ordered representative. The weights
// sum to zero and satisfy alpha_i - alpha_{i+1} = b_i - N/K cyclically.
// Written out entrywise: 2K alpha_i = sum_j ((K-1) - 2((j-i) mod K)) b_j,
// an integer, so each weight costs one rational construction.
inline VecQ parabolic_weights_ordered(int k, std::span<const int> parts) {
    VecQ alpha(k);
    for (int i = 0; i < k; ++i) {
        long long num = 0;
        for (int j = 0; j < k; ++j) {
            const int d = ((j - i) % k + k) % k;
            num += static_cast<long long>(k - 1 - 2 * d) * parts[j];
        }
        alpha[i] = Rat(num, 2 * k);
    }
    return alpha;
}

inline VecQ parabolic_weights(const CyclicPartition& p) {
    return parabolic_weights_ordered(p.k(), p.parts());
}

// Regulated L2 norm of the Higgs field at the fixed point:
// mu = K/(K+N) * ||alpha||^2. Rotation- and reversal-invariant.
inline Rat mu_exact(const CyclicPartition& p) {
    const VecQ alpha = parabolic_weights(p);
    return Rat(p.k(), p.k() + p.n()) * norm_sq(alpha);
}

// Fixed-point data: bundle weights, Higgs monomial exponents
// (superdiagonal b_1..b_{K-1}, lower-left corner b_K), exact mu.
struct FixedPointData {
    CyclicPartition partition;
    VecQ alpha;
    std::vector<int> exponents;
    Rat mu;
};

inline FixedPointData fixed_point(const CyclicPartition& p) {
    return FixedPointData{p, parabolic_weights(p), p.parts(), mu_exact(p)};
}

// Degrees a_0..a_{K-1} of the generators of the rank-1 module attached to
// the fixed point, normalized by a_0 = 0. They satisfy the relations
// N + a_i = K*b_{i+1} + a_{i+1} (indices cyclic) and a_i = i*N (mod K).
// Some rotations produce negative degrees; reported, never silently fixed.
struct ModuleGenerators {
    std::vector<long long> a;
    bool all_nonnegative;
};

inline ModuleGenerators module_generators(const CyclicPartition& p) {
    const int k = p.k();
    const int n = p.n();
    const auto& b = p.parts();
    std::vector<long long> a(k, 0);
    for (int i = 0; i + 1 < k; ++i) a[i + 1] = a[i] + n - static_cast<long long>(k) * b[i];
    // closure of the cyclic relation
    if (a[k - 1] + n - static_cast<long long>(k) * b[k - 1] != 0)
        throw std::logic_error("module_generators: cyclic relation failed to close");
    bool nonneg = true;
    for (int i = 0; i < k; ++i) {
        if (a[i] < 0) nonneg = false;
        if (((a[i] - static_cast<long long>(i) * n) % k + k) % k != 0)
            throw std::logic_error("module_generators: congruence a_i = i*N (mod K) violated");
    }
    return ModuleGenerators{std::move(a), nonneg};
}

} // namespace wildtoda
