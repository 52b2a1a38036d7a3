#include "qbell/scan.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace qbell {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // 1/phi

// Deterministic golden-section maximizer; returns (x*, f(x*)).
template <typename F>
std::pair<double, double> golden_max(const F& f, double lo, double hi, double tol) {
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    return fc > fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> xs(n);
    if (n == 1) {
        xs[0] = lo;
        return xs;
    }
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) xs[i] = lo + i * step;
    xs.back() = hi;
    return xs;
}

}  // namespace

void ScanGrid::validate() const {
    const double pi = 3.14159265358979323846;
    if (!(gamma_range.first > 0.0 && gamma_range.second < pi &&
          gamma_range.first <= gamma_range.second)) {
        throw std::invalid_argument("gamma range must lie inside (0, pi)");
    }
    if (!(alpha_range.first > 0.0 && alpha_range.second < pi / 4.0 &&
          alpha_range.first <= alpha_range.second)) {
        throw std::invalid_argument("alpha range must lie inside (0, pi/4)");
    }
    if (!(theta_range.first >= 0.0 && theta_range.second <= pi / 2.0 &&
          theta_range.first <= theta_range.second)) {
        throw std::invalid_argument("theta range must lie inside [0, pi/2]");
    }
    if (points_per_axis < 1) throw std::invalid_argument("need at least 1 grid point");
    if (!(gamma_tol > 0.0) || !(kcbs_tol > 0.0)) {
        throw std::invalid_argument("refinement tolerances must be positive");
    }
}

ChshScan scan_chsh(QOrder q, const ScanGrid& grid) {
    grid.validate();
    const auto c_of = [&](double g) { return chsh_cq(g, q).c_q; };
    const double scale = q_ln(2.0, q);

    const auto gammas = linspace(grid.gamma_range.first, grid.gamma_range.second,
                                 grid.points_per_axis);
    ChshScan out;
    out.series.reserve(gammas.size());
    int besti = 0;
    double bestc = -1e300;
    for (int i = 0; i < static_cast<int>(gammas.size()); ++i) {
        const double c = c_of(gammas[i]);
        out.series.emplace_back(gammas[i], c / scale);
        if (c > bestc) {
            bestc = c;
            besti = i;
        }
    }
    double g_star = gammas[besti];
    double c_star = bestc;
    if (gammas.size() > 1) {
        const double lo = gammas[std::max(besti - 1, 0)];
        const double hi = gammas[std::min(besti + 1, static_cast<int>(gammas.size()) - 1)];
        const auto [g, c] = golden_max(c_of, lo, hi, grid.gamma_tol);
        if (c > c_star) {
            g_star = g;
            c_star = c;
        }
    }
    out.best = MaxViolation{q.value(), c_star, c_star / scale, {{"gamma", g_star}}};
    return out;
}

KcbsScan scan_kcbs(QOrder q, const ScanGrid& grid) {
    grid.validate();
    const auto c_of = [&](double a, double t) {
        return kcbs_cq(KcbsConfig(a, t), q).c_q;
    };
    const double scale = q_ln(2.0, q);

    const auto alphas = linspace(grid.alpha_range.first, grid.alpha_range.second,
                                 grid.points_per_axis);
    const auto thetas = linspace(grid.theta_range.first, grid.theta_range.second,
                                 grid.points_per_axis);
    const int stride = std::max(1, grid.points_per_axis / 50);

    KcbsScan out;
    double best = -1e300;
    double a_star = alphas.front(), t_star = thetas.front();
    for (int i = 0; i < static_cast<int>(alphas.size()); ++i) {
        for (int j = 0; j < static_cast<int>(thetas.size()); ++j) {
            const double c = c_of(alphas[i], thetas[j]);
            if (c > best) {
                best = c;
                a_star = alphas[i];
                t_star = thetas[j];
            }
            if (i % stride == 0 && j % stride == 0) {
                out.samples.push_back({alphas[i], thetas[j], c / scale});
            }
        }
    }

    // Alternating 1D refinements around the best coarse cell.
    const double step_a = alphas.size() > 1 ? alphas[1] - alphas[0] : 1e-2;
    const double step_t = thetas.size() > 1 ? thetas[1] - thetas[0] : 1e-2;
    double wa = step_a, wt = step_t;
    double a = a_star, t = t_star, c_best = best;
    for (int sweep = 0; sweep < 60; ++sweep) {
        const auto [a2, ca] = golden_max(
            [&](double x) { return c_of(x, t); },
            std::max(grid.alpha_range.first, a - wa),
            std::min(grid.alpha_range.second, a + wa), grid.kcbs_tol * 0.1);
        const auto [t2, ct] = golden_max(
            [&](double x) { return c_of(a2, x); },
            std::max(grid.theta_range.first, t - wt),
            std::min(grid.theta_range.second, t + wt), grid.kcbs_tol * 0.1);
        const bool done = std::abs(a2 - a) < grid.kcbs_tol &&
                          std::abs(t2 - t) < grid.kcbs_tol;
        a = a2;
        t = t2;
        c_best = std::max({c_best, ca, ct});
        if (done) break;
        wa = std::max(wa * 0.5, 8.0 * grid.kcbs_tol);
        wt = std::max(wt * 0.5, 8.0 * grid.kcbs_tol);
    }
    if (c_best > best) {
        best = c_best;
        a_star = a;
        t_star = t;
    }
    out.best = MaxViolation{q.value(), best, best / scale,
                            {{"alpha", a_star}, {"theta", t_star}}};
    return out;
}

std::vector<std::pair<double, double>> kcbs_theta_series(
    double alpha, QOrder q, const std::vector<double>& thetas) {
    std::vector<std::pair<double, double>> out;
    out.reserve(thetas.size());
    const double scale = q_ln(2.0, q);
    for (double t : thetas) {
        out.emplace_back(t, kcbs_cq(KcbsConfig(alpha, t), q).c_q / scale);
    }
    return out;
}

QThresholdResult q_threshold(double alpha, double theta,
                             std::pair<double, double> q_range) {
    if (!(q_range.first > 0.0 && q_range.first <= q_range.second)) {
        throw std::invalid_argument("invalid q range");
    }
    const auto c_of = [&](double qv) {
        return kcbs_cq(KcbsConfig(alpha, theta), QOrder(qv)).c_q;
    };
    const int n = 200;
    const auto qs = linspace(q_range.first, q_range.second, n);
    int bracket = -1;
    double prev = c_of(qs.front());
    for (int i = 1; i < n; ++i) {
        const double cur = c_of(qs[i]);
        if ((prev <= 0.0) != (cur <= 0.0)) {
            if (bracket >= 0) {
                throw std::domain_error("multiple sign changes in the q range");
            }
            bracket = i - 1;
        }
        prev = cur;
    }
    if (bracket < 0) return QThresholdResult{false, 0.0};
    double lo = qs[bracket], hi = qs[bracket + 1];
    const bool lo_nonpos = c_of(lo) <= 0.0;
    while (hi - lo > 1e-4) {
        const double mid = 0.5 * (lo + hi);
        if ((c_of(mid) <= 0.0) == lo_nonpos) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return QThresholdResult{true, 0.5 * (lo + hi)};
}

std::vector<double> table2_ratios(const std::vector<double>& q_list,
                                  Efficiency eta, const ScanGrid& grid) {
    std::vector<double> out;
    out.reserve(q_list.size());
    for (double qv : q_list) {
        const QOrder q(qv);
        const KcbsScan scan = scan_kcbs(q, grid);
        const KcbsConfig cfg(scan.best.argmax[0].second, scan.best.argmax[1].second);
        const EtaReport rep = two_detector_report(cfg, eta, q);
        if (!rep.ratio) {
            throw std::domain_error("ratio undefined: no violation at the scan maximum");
        }
        out.push_back(*rep.ratio);
    }
    return out;
}

}  // namespace qbell
