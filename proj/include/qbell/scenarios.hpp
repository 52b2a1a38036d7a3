#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qbell/entropy.hpp"
#include "qbell/quantum.hpp"

namespace qbell {

/// Pairwise correlations <X_j X_{j+1}> of n dichotomic observables arranged
/// in a cycle (the n-th entry pairs X_n with X_1).
struct CycleCorrelations {
    int n;
    std::vector<double> correlations;

    CycleCorrelations(int n, std::vector<double> correlations);
};

/// Conditional entropies along a cycle: entries 1..n-1 hold H_q(X_j|X_{j+1})
/// and the n-th entry holds H_q(X_1|X_n).
struct CycleEntropies {
    int n;
    std::vector<double> cond_entropies;

    CycleEntropies(int n, std::vector<double> cond_entropies);
};

/// Result of evaluating a characteristic quantity C_q. Positive C_q means the
/// corresponding entropic inequality is violated; the relative value divides
/// by ln_q 2, the maximal binary entropy.
struct ViolationReport {
    double c_q;
    double c_q_relative;
    double q;
    std::vector<std::pair<std::string, double>> params;
    bool violated;
};

/// Verdict of the cycle-polytope membership test.
struct PolytopeVerdict {
    bool violated;
    double max_lhs;                 // maximal sum_j g_j <X_j X_{j+1}>
    double margin;                  // (n - 2) - max_lhs, negative if violated
    std::vector<int> worst_signs;   // the sign vector attaining max_lhs
};

/// C_q = H_q(X_1|X_n) - sum_{j=1}^{n-1} H_q(X_j|X_{j+1}). Models admitting a
/// global joint distribution satisfy C_q <= 0 for q >= 1.
double cycle_entropic_lhs(const CycleEntropies& e);

/// Characteristic quantity for the two-party scenario with coplanar
/// directions at angles (0, gamma/3, 2 gamma/3, gamma): by symmetry
/// C_q = H_q(A|B) - 3 H_q(B'|A'), the two terms at angles gamma and gamma/3.
ViolationReport chsh_cq(double gamma, QOrder q);

/// Characteristic quantity of the pentagon scenario,
/// C_q = H_q(X1|X5) - H_q(X1|X2) - H_q(X2|X3) - H_q(X3|X4) - H_q(X4|X5),
/// with each conditioning test measured first.
ViolationReport kcbs_cq(const KcbsConfig& cfg, QOrder q);

/// Checks all 2^{n-1} cycle inequalities sum_j g_j <X_j X_{j+1}> <= n - 2
/// over sign vectors g with an odd number of -1 entries. n is capped at 30.
PolytopeVerdict cycle_polytope_check(const CycleCorrelations& c);

/// The mutual-information form
/// I_q(A:B') + I_q(A':B') + I_q(A':B) - I_q(A:B) - H_q(A') - H_q(B');
/// algebraically equal to chsh_cq for the same geometry.
double chsh_mutual_info_form(double gamma, QOrder q);

/// Shannon-case cycle check for n = 4: true iff
/// H_1(A|B) <= H_1(A|B') + H_1(B'|A') + H_1(A'|B). Entries must have been
/// computed at q = 1.
bool braunstein_caves_check(const CycleEntropies& e);

}  // namespace qbell
