#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qbell/entropy.hpp"
#include "qbell/quantum.hpp"

namespace qbell {

/// How a no-click event enters a jointly measured pair: one shared detector
/// (a single joint no-click outcome) or one detector per observable.
enum class DetectorKind { single_detector, two_detector };

struct InefficiencyModel {
    DetectorKind kind;
    Efficiency eta;
};

/// Inefficiency analysis of a pentagon configuration in the two-detector
/// model; ratio is the size of the penalty delta_q relative to the scaled
/// violation eta^{2q} c_q and is only defined when c_q > 0.
struct EtaReport {
    double c_q;
    double c_q_eta;
    double delta_q;
    std::optional<double> ratio;
    double q;
    double eta;
};

/// Least-squares fit of ratio(eta) ~ slope * (1 - eta) through the origin.
/// slope is absent when every grid point has eta = 1.
struct SlopeReport {
    std::optional<double> slope;
    double max_rel_dev;
    std::vector<std::pair<double, double>> points;  // (eta, ratio)
};

/// Extends a joint table with explicit no-click outcomes. The single-detector
/// model scales the table by eta and adds one (no-click, no-click) cell of
/// mass 1 - eta; the two-detector model scales by eta^2, adds border
/// rows/columns eta(1-eta) times the supplied marginals and a (1-eta)^2
/// corner. Marginals inconsistent with the table are a domain error.
JointDist deform_joint(const JointDist& j, const InefficiencyModel& m,
                       const ProbDist& marg_a, const ProbDist& marg_b);

/// Single-detector characteristic quantity: eta^q * c_q. The no-click
/// entropy offsets cancel, so the violation merely rescales and its sign
/// survives any eta > 0.
double single_detector_cq(double c_q, Efficiency eta, QOrder q);

/// Fully constructive inefficiency-deformed characteristic quantity for the
/// pentagon configuration: every pair table is deformed per the model, the
/// single-test distributions gain their no-click outcome, and the
/// joint-entropy form of the cycle quantity is evaluated on the results.
double kcbs_deformed_cq(const KcbsConfig& cfg, const InefficiencyModel& m,
                        QOrder q);

/// Two-detector report at the given configuration: c_q_eta is computed
/// constructively via kcbs_deformed_cq, delta_q from the closed form
/// eta^q (eta^q + 2(1-eta)^q - 1)(H_q(X2)+H_q(X3)+H_q(X4))
///   + 3 (eta^q + (1-eta)^q) h_q(eta),
/// so c_q_eta = eta^{2q} c_q - delta_q is a nontrivial cross-check.
EtaReport two_detector_report(const KcbsConfig& cfg, Efficiency eta, QOrder q);

/// Fits ratio(eta) over an eta grid in (0.95, 1]; near eta = 1 the ratio is
/// close to linear in 1 - eta.
SlopeReport ratio_linear_fit(const KcbsConfig& cfg, QOrder q,
                             const std::vector<double>& eta_grid = {0.99, 0.995,
                                                                    0.999});

}  // namespace qbell
