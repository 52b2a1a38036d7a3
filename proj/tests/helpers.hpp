#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qbell/entropy.hpp"

// Test-only utilities: deterministic random inputs and independent
// brute-force oracles for the entropy identities.
namespace testutil {

inline std::vector<double> random_simplex(std::mt19937& rng, std::size_t n) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> v(n);
    double total = 0.0;
    for (auto& x : v) {
        x = e(rng) + 1e-6;
        total += x;
    }
    for (auto& x : v) x /= total;
    return v;
}

inline qbell::ProbDist random_prob_dist(std::mt19937& rng, std::size_t n) {
    return qbell::ProbDist(random_simplex(rng, n));
}

inline qbell::JointDist random_joint(std::mt19937& rng, std::size_t rows,
                                     std::size_t cols) {
    return qbell::JointDist(random_simplex(rng, rows * cols), rows, cols);
}

// Entropy by the direct power-sum formula; deliberately not the expm1 route
// used by the library.
inline double entropy_oracle(const std::vector<double>& p, double q) {
    if (std::abs(q - 1.0) < 1e-12) {
        double h = 0.0;
        for (double v : p)
            if (v > 0.0) h -= v * std::log(v);
        return h;
    }
    double s = 0.0;
    for (double v : p)
        if (v > 0.0) s += std::pow(v, q);
    return (s - 1.0) / (1.0 - q);
}

// Three-variable joint table p(a, b, c), flattened row-major.
struct Joint3 {
    std::vector<double> p;
    std::size_t na, nb, nc;

    double at(std::size_t a, std::size_t b, std::size_t c) const {
        return p[(a * nb + b) * nc + c];
    }
};

inline Joint3 random_joint3(std::mt19937& rng, std::size_t na, std::size_t nb,
                            std::size_t nc) {
    return Joint3{random_simplex(rng, na * nb * nc), na, nb, nc};
}

// p(a, b) with c summed out.
inline qbell::JointDist marg_ab(const Joint3& j) {
    std::vector<double> t(j.na * j.nb, 0.0);
    for (std::size_t a = 0; a < j.na; ++a)
        for (std::size_t b = 0; b < j.nb; ++b)
            for (std::size_t c = 0; c < j.nc; ++c) t[a * j.nb + b] += j.at(a, b, c);
    return qbell::JointDist(std::move(t), j.na, j.nb);
}

// Table (a; (b, c)) with the pair flattened into one conditioning index.
inline qbell::JointDist given_bc(const Joint3& j) {
    std::vector<double> t(j.na * j.nb * j.nc);
    for (std::size_t a = 0; a < j.na; ++a)
        for (std::size_t b = 0; b < j.nb; ++b)
            for (std::size_t c = 0; c < j.nc; ++c)
                t[a * (j.nb * j.nc) + (b * j.nc + c)] = j.at(a, b, c);
    return qbell::JointDist(std::move(t), j.na, j.nb * j.nc);
}

// H_q(A|B,C), conditioning on the flattened pair.
inline double cond_given_bc(const Joint3& j, qbell::QOrder q) {
    return qbell::conditional_entropy(given_bc(j), q);
}

// A classical cyclic model: a random mixture of deterministic outcome
// assignments, marginalized to adjacent-pair tables and correlations.
struct ClassicalCycle {
    int n;
    std::vector<qbell::JointDist> pair_tables;  // (x_j, x_{j+1}), j cyclic
    std::vector<double> correlations;           // outcomes mapped to +/-1
};

inline ClassicalCycle random_classical_cycle(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> support_dist(1, 8);
    std::uniform_int_distribution<int> bit(0, 1);
    const int support = support_dist(rng);
    const std::vector<double> w = random_simplex(rng, support);
    std::vector<std::vector<int>> outcome(support, std::vector<int>(n));
    for (auto& row : outcome)
        for (auto& x : row) x = bit(rng);

    ClassicalCycle model{n, {}, {}};
    for (int j = 0; j < n; ++j) {
        const int k = (j + 1) % n;
        std::vector<double> t(4, 0.0);
        double corr = 0.0;
        for (int s = 0; s < support; ++s) {
            t[outcome[s][j] * 2 + outcome[s][k]] += w[s];
            corr += w[s] * (1 - 2 * outcome[s][j]) * (1 - 2 * outcome[s][k]);
        }
        model.pair_tables.emplace_back(std::move(t), 2, 2);
        model.correlations.push_back(corr);
    }
    return model;
}

// Cycle conditional entropies H_q(X_j|X_{j+1}) for j = 1..n-1 plus H_q(X_1|X_n).
inline std::vector<double> cycle_cond_entropies(const ClassicalCycle& m,
                                                qbell::QOrder q) {
    std::vector<double> h;
    for (int j = 0; j + 1 < m.n; ++j) {
        h.push_back(qbell::conditional_entropy(m.pair_tables[j], q));
    }
    // The last stored table is (x_n, x_1); transpose to condition on x_n.
    h.push_back(qbell::conditional_entropy(m.pair_tables[m.n - 1].transposed(), q));
    return h;
}

}  // namespace testutil
