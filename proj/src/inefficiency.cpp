#include "qbell/inefficiency.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qbell/scenarios.hpp"

namespace qbell {

namespace {

void check_marginal(const JointDist& j, const ProbDist& m, bool first) {
    const ProbDist actual = first ? j.marginal_first() : j.marginal_second();
    if (actual.size() != m.size()) {
        throw std::domain_error("marginal size mismatch");
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (std::abs(actual[i] - m[i]) > 1e-10) {
            throw std::domain_error("marginal inconsistent with joint table");
        }
    }
}

double binary_entropy_of(double p, QOrder q) {
    return tsallis_entropy(ProbDist({p, 1.0 - p}), q);
}

}  // namespace

JointDist deform_joint(const JointDist& j, const InefficiencyModel& m,
                       const ProbDist& marg_a, const ProbDist& marg_b) {
    check_marginal(j, marg_a, true);
    check_marginal(j, marg_b, false);
    const double eta = m.eta.value();
    const std::size_t rows = j.rows() + 1;
    const std::size_t cols = j.cols() + 1;
    std::vector<double> out(rows * cols, 0.0);
    if (m.kind == DetectorKind::single_detector) {
        for (std::size_t a = 0; a < j.rows(); ++a)
            for (std::size_t b = 0; b < j.cols(); ++b)
                out[a * cols + b] = eta * j.at(a, b);
        out[(rows - 1) * cols + (cols - 1)] = 1.0 - eta;
    } else {
        const double border = eta * (1.0 - eta);
        for (std::size_t a = 0; a < j.rows(); ++a) {
            for (std::size_t b = 0; b < j.cols(); ++b)
                out[a * cols + b] = eta * eta * j.at(a, b);
            out[a * cols + (cols - 1)] = border * marg_a[a];
        }
        for (std::size_t b = 0; b < j.cols(); ++b)
            out[(rows - 1) * cols + b] = border * marg_b[b];
        out[(rows - 1) * cols + (cols - 1)] = (1.0 - eta) * (1.0 - eta);
    }
    return JointDist(std::move(out), rows, cols);
}

double single_detector_cq(double c_q, Efficiency eta, QOrder q) {
    return std::pow(eta.value(), q.value()) * c_q;
}

double kcbs_deformed_cq(const KcbsConfig& cfg, const InefficiencyModel& m,
                        QOrder q) {
    const auto x = kcbs_vectors(cfg);
    const QuantumState psi = kcbs_state(cfg);
    const double eta = m.eta.value();

    double marginal[5];
    for (int j = 0; j < 5; ++j) marginal[j] = std::norm(overlap(x[j], psi));

    // Deformed joint entropy of the adjacent pair (a, b), b measured first.
    const auto h_pair = [&](int a, int b) {
        const JointDist t = kcbs_sequential_joint(x[b - 1], x[a - 1], psi);
        const JointDist d = deform_joint(t, m, t.marginal_first(), t.marginal_second());
        return joint_entropy(d, q);
    };
    // Deformed single-test entropy: {eta p, eta (1-p), 1-eta}.
    const auto h_single = [&](int a) {
        const double p = marginal[a - 1];
        return tsallis_entropy(
            ProbDist({eta * p, eta * (1.0 - p), 1.0 - eta}), q);
    };

    return -(h_pair(1, 2) + h_pair(2, 3) + h_pair(3, 4) + h_pair(4, 5)) +
           h_pair(1, 5) + h_single(2) + h_single(3) + h_single(4);
}

EtaReport two_detector_report(const KcbsConfig& cfg, Efficiency eta, QOrder q) {
    const double c_q = kcbs_cq(cfg, q).c_q;

    const auto x = kcbs_vectors(cfg);
    const QuantumState psi = kcbs_state(cfg);
    double h_mid = 0.0;  // H_q(X2) + H_q(X3) + H_q(X4)
    for (int j = 2; j <= 4; ++j) {
        h_mid += binary_entropy_of(std::norm(overlap(x[j - 1], psi)), q);
    }

    const double e = eta.value();
    const double qv = q.value();
    const double eq = std::pow(e, qv);
    const double ceq = std::pow(1.0 - e, qv);
    const double delta = eq * (eq + 2.0 * ceq - 1.0) * h_mid +
                         3.0 * (eq + ceq) * binary_q_entropy(eta, q);

    const double c_q_eta =
        kcbs_deformed_cq(cfg, {DetectorKind::two_detector, eta}, q);

    std::optional<double> ratio;
    if (c_q > 0.0) ratio = std::abs(delta) / (eq * eq * c_q);
    return EtaReport{c_q, c_q_eta, delta, ratio, qv, e};
}

SlopeReport ratio_linear_fit(const KcbsConfig& cfg, QOrder q,
                             const std::vector<double>& eta_grid) {
    if (eta_grid.empty()) throw std::invalid_argument("eta grid is empty");
    SlopeReport rep{std::nullopt, 0.0, {}};
    for (double e : eta_grid) {
        if (!(e > 0.95 && e <= 1.0)) {
            throw std::invalid_argument("eta grid entries must lie in (0.95, 1]");
        }
        const EtaReport r = two_detector_report(cfg, Efficiency(e), q);
        if (!r.ratio) {
            throw std::domain_error("ratio undefined: c_q <= 0 at this configuration");
        }
        rep.points.emplace_back(e, *r.ratio);
    }
    double sxy = 0.0, sxx = 0.0;
    for (const auto& [e, r] : rep.points) {
        const double dx = 1.0 - e;
        sxy += dx * r;
        sxx += dx * dx;
    }
    if (sxx == 0.0) return rep;  // all points at eta = 1
    rep.slope = sxy / sxx;
    for (const auto& [e, r] : rep.points) {
        const double model = *rep.slope * (1.0 - e);
        if (r > 0.0) {
            rep.max_rel_dev = std::max(rep.max_rel_dev, std::abs(r - model) / r);
        }
    }
    return rep;
}

}  // namespace qbell
