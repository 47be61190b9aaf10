#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "wildtoda/fixed_points.hpp"
#include "wildtoda/partitions.hpp"
#include "wildtoda/rational.hpp"
#include "wildtoda/rational_linalg.hpp"

namespace wildtoda {

// Partial-sum vector (n_1, ..., n_K), n_i = N - (b_1 + ... + b_i).
// The last entry is always zero.
inline VecQ psi_vector_ordered(int n, std::span<const int> parts) {
    VecQ out;
    out.reserve(parts.size());
    long long acc = n;
    for (int b : parts) {
        acc -= b;
        out.emplace_back(acc);
    }
    return out;
}

inline VecQ psi_vector(const CyclicPartition& p) {
    return psi_vector_ordered(p.n(), p.parts());
}

// Half the sum of the positive weights of SL(K):
// rho = 1/2 (K-1, K-3, ..., 3-K, 1-K). Sums to zero.
inline VecQ weyl_vector(int k) {
    if (k < 2) throw std::invalid_argument("weyl_vector: K must be at least 2");
    VecQ rho(k);
    for (int i = 1; i <= k; ++i) rho[i - 1] = Rat(k + 1 - 2 * i, 2);
    return rho;
}

// Highest weight of the minimal-model representation attached to b:
// the projection of psi(b) onto the sum-zero hyperplane.
inline VecQ highest_weight_ordered(int n, std::span<const int> parts) {
    VecQ psi = psi_vector_ordered(n, parts);
    const Rat mean = sum(psi) / Rat(static_cast<long long>(psi.size()));
    for (auto& x : psi) x -= mean;
    return psi;
}

inline VecQ highest_weight(const CyclicPartition& p) {
    return highest_weight_ordered(p.n(), p.parts());
}

// Effective Virasoro central charge:
// c_eff = K - 1 - (12K/(K+N)) * ||Lambda - (N/K) rho||^2.
inline Rat effective_central_charge_ordered(int k, int n, std::span<const int> parts) {
    VecQ v = highest_weight_ordered(n, parts);
    const VecQ rho = weyl_vector(k);
    for (int i = 0; i < k; ++i) v[i] -= Rat(n, k) * rho[i];
    return Rat(k - 1) - Rat(12 * k, k + n) * norm_sq(v);
}

inline Rat effective_central_charge(const CyclicPartition& p) {
    return effective_central_charge_ordered(p.k(), p.n(), p.parts());
}

struct MinimalModelRep {
    CyclicPartition partition;
    VecQ psi;
    VecQ lambda;
    Rat c_eff;
};

inline MinimalModelRep minimal_model_rep(const CyclicPartition& p) {
    return MinimalModelRep{p, psi_vector(p), highest_weight(p),
                           effective_central_charge(p)};
}

// Both sides of the identity P(psi(b)) - (N/K) rho = -S W b, evaluated
// independently, for any ordered representative. Also exposes the shifted
// weight vector (S alpha)_i = alpha_{i+1}: componentwise the left side
// equals +alpha_{i+1} (measured; the opposite sign is sometimes quoted).
struct WeightAlphaRelation {
    VecQ lhs;            // P(psi) - (N/K) rho
    VecQ rhs;            // -S W b
    bool equal;          // lhs == rhs exactly
    VecQ shifted_alpha;  // S alpha, alpha = -W b
    bool componentwise_plus_shift;  // lhs == +shifted_alpha exactly
};

inline WeightAlphaRelation weight_alpha_relation_ordered(int k, int n,
                                                         std::span<const int> parts) {
    const MatQ s = shift_matrix(k);
    const MatQ w = weight_matrix(k);
    const VecQ rho = weyl_vector(k);

    VecQ lhs = highest_weight_ordered(n, parts);
    for (int i = 0; i < k; ++i) lhs[i] -= Rat(n, k) * rho[i];

    VecQ b(parts.begin(), parts.end());
    VecQ rhs = s.apply(w.apply(b));
    for (auto& x : rhs) x = -x;

    VecQ shifted = s.apply(parabolic_weights_ordered(k, parts));
    return WeightAlphaRelation{lhs, rhs, lhs == rhs, shifted, lhs == shifted};
}

inline WeightAlphaRelation weight_alpha_relation(const CyclicPartition& p) {
    return weight_alpha_relation_ordered(p.k(), p.n(), p.parts());
}

// Per-class verification of mu = (K - 1 - c_eff) / 12 with exact equality.
struct DictionaryRow {
    CyclicPartition partition;
    VecQ alpha;
    Rat mu;
    VecQ lambda;
    Rat c_eff;
    bool pass;
};

struct DictionaryReport {
    int k = 0;
    int n = 0;
    std::vector<DictionaryRow> rows;
    bool all_pass = true;
};

inline DictionaryReport verify_dictionary(int k, int n) {
    DictionaryReport rep;
    rep.k = k;
    rep.n = n;
    for (const auto& p : enumerate_cyclic_partitions(k, n)) {
        DictionaryRow row{p, parabolic_weights(p), mu_exact(p), highest_weight(p),
                          effective_central_charge(p), false};
        row.pass = (Rat(12) * row.mu == Rat(k - 1) - row.c_eff);
        rep.all_pass = rep.all_pass && row.pass;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

} // namespace wildtoda
