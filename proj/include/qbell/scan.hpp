#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "qbell/entropy.hpp"
#include "qbell/inefficiency.hpp"
#include "qbell/scenarios.hpp"

namespace qbell {

/// Deterministic grid settings for the violation scans: coarse ranges,
/// samples per axis and the refinement stopping tolerances.
struct ScanGrid {
    std::pair<double, double> gamma_range{1e-3, 3.1405926535897931};
    std::pair<double, double> alpha_range{1e-3, 0.7843981633974483};
    std::pair<double, double> theta_range{0.0, 1.5707963267948966};
    int points_per_axis = 400;
    double gamma_tol = 1e-6;
    double kcbs_tol = 1e-5;

    void validate() const;
};

/// Maximal violation found by a scan, with the parameters attaining it.
struct MaxViolation {
    double q;
    double max_cq;
    double max_cq_relative;
    std::vector<std::pair<std::string, double>> argmax;
};

struct ChshScan {
    MaxViolation best;
    std::vector<std::pair<double, double>> series;  // (gamma, relative C_q)
};

struct KcbsScan {
    MaxViolation best;
    std::vector<std::array<double, 3>> samples;  // (alpha, theta, relative C_q)
};

struct QThresholdResult {
    bool crossed;
    double q_star;  // meaningful only when crossed
};

/// Coarse pass over gamma followed by golden-section refinement. The series
/// holds the full coarse curve, negative values included.
ChshScan scan_chsh(QOrder q, const ScanGrid& grid);

/// Coarse (alpha, theta) pass followed by alternating golden-section
/// refinement in each coordinate. Samples are a decimated copy of the coarse
/// surface. Requires q >= 1.
KcbsScan scan_kcbs(QOrder q, const ScanGrid& grid);

/// The pentagon quantity along a theta grid at fixed alpha.
std::vector<std::pair<double, double>> kcbs_theta_series(
    double alpha, QOrder q, const std::vector<double>& thetas);

/// Locates the sign change of C_q(q) at a fixed configuration by a bracketing
/// scan plus bisection to 1e-4. Reports crossed = false when the sign is
/// constant over the range; more than one sign change is a domain error.
QThresholdResult q_threshold(double alpha, double theta,
                             std::pair<double, double> q_range);

/// r_q(0.99)-style ratios at each order's own maximal-violation
/// configuration, found with scan_kcbs on the given grid.
std::vector<double> table2_ratios(const std::vector<double>& q_list,
                                  Efficiency eta, const ScanGrid& grid);

}  // namespace qbell
