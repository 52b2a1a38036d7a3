#include "qbell/quantum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qbell {

namespace {

constexpr double kQuarterPi = 0.78539816339744830961;

using CMat2 = std::array<Complex, 4>;   // row-major 2x2
using CMat4 = std::array<Complex, 16>;  // row-major 4x4

// Eigenprojector (I + s n.sigma)/2 of n.sigma for eigenvalue s = +/-1.
CMat2 spin_projector(const std::array<double, 3>& n, int s) {
    const double x = n[0], y = n[1], z = n[2];
    CMat2 m;
    m[0] = 0.5 * (1.0 + s * z);
    m[1] = 0.5 * s * Complex(x, -y);
    m[2] = 0.5 * s * Complex(x, y);
    m[3] = 0.5 * (1.0 - s * z);
    return m;
}

CMat4 kron(const CMat2& a, const CMat2& b) {
    CMat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    out[(2 * i + k) * 4 + (2 * j + l)] = a[i * 2 + j] * b[k * 2 + l];
    return out;
}

double expectation(const CMat4& m, const QuantumState& v) {
    Complex acc = 0.0;
    for (int i = 0; i < 4; ++i) {
        Complex row = 0.0;
        for (int j = 0; j < 4; ++j) row += m[i * 4 + j] * v[j];
        acc += std::conj(v[i]) * row;
    }
    return acc.real();
}

// (|01> - |10>)/sqrt(2) in the |00>,|01>,|10>,|11> ordering; the quantization
// axis is immaterial.
const QuantumState& singlet_state() {
    static const QuantumState state([] {
        const double r = 1.0 / std::sqrt(2.0);
        return std::vector<Complex>{0.0, r, -r, 0.0};
    }());
    return state;
}

double clamp01(double p) {
    if (p < 0.0) return p > -1e-13 ? 0.0 : p;
    if (p > 1.0) return p < 1.0 + 1e-13 ? 1.0 : p;
    return p;
}

}  // namespace

QuantumState::QuantumState(std::vector<Complex> amplitudes)
    : amps_(std::move(amplitudes)) {
    if (amps_.size() < 2 || amps_.size() > 4) {
        throw std::invalid_argument("state dimension must be 2, 3 or 4");
    }
    double n2 = 0.0;
    for (const auto& a : amps_) n2 += std::norm(a);
    if (std::abs(n2 - 1.0) > 2.0 * kNormTol) {
        throw std::invalid_argument("state is not normalized");
    }
}

DichotomicSpinObservable::DichotomicSpinObservable(std::array<double, 3> direction)
    : dir_(direction) {
    const double n = std::sqrt(dir_[0] * dir_[0] + dir_[1] * dir_[1] + dir_[2] * dir_[2]);
    if (std::abs(n - 1.0) > kNormTol) {
        throw std::invalid_argument("spin direction must be a unit vector");
    }
}

DichotomicSpinObservable DichotomicSpinObservable::from_planar_angle(double angle) {
    return DichotomicSpinObservable({std::sin(angle), 0.0, std::cos(angle)});
}

RankOneTest::RankOneTest(std::array<Complex, 3> vector) : vec_(vector) {
    double n2 = 0.0;
    for (const auto& a : vec_) n2 += std::norm(a);
    if (std::abs(n2 - 1.0) > 2.0 * kNormTol) {
        throw std::invalid_argument("test vector is not normalized");
    }
}

KcbsConfig::KcbsConfig(double alpha_, double theta_) : alpha(alpha_), theta(theta_) {
    if (!(alpha > 0.0 && alpha < kQuarterPi)) {
        throw std::domain_error("alpha must lie in (0, pi/4), got " +
                                std::to_string(alpha_));
    }
}

Complex overlap(const RankOneTest& x, const RankOneTest& y) {
    Complex s = 0.0;
    for (int i = 0; i < 3; ++i) s += std::conj(x.vector()[i]) * y.vector()[i];
    return s;
}

Complex overlap(const RankOneTest& x, const QuantumState& psi) {
    if (psi.dim() != 3) throw std::invalid_argument("state must be a qutrit");
    Complex s = 0.0;
    for (int i = 0; i < 3; ++i) s += std::conj(x.vector()[i]) * psi[i];
    return s;
}

JointDist chsh_joint_dist(const DichotomicSpinObservable& a,
                          const DichotomicSpinObservable& b) {
    std::vector<double> table(4);
    const int signs[2] = {+1, -1};
    for (int i = 0; i < 2; ++i) {
        const CMat2 pa = spin_projector(a.direction(), signs[i]);
        for (int j = 0; j < 2; ++j) {
            const CMat2 pb = spin_projector(b.direction(), signs[j]);
            table[i * 2 + j] = clamp01(expectation(kron(pa, pb), singlet_state()));
        }
    }
    return JointDist(std::move(table), 2, 2);
}

JointDist chsh_joint_dist(double angle_ab) {
    return chsh_joint_dist(DichotomicSpinObservable::from_planar_angle(0.0),
                           DichotomicSpinObservable::from_planar_angle(angle_ab));
}

double chsh_correlation(double angle) {
    const JointDist j = chsh_joint_dist(angle);
    const double signs[2] = {+1.0, -1.0};
    double c = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) c += signs[a] * signs[b] * j.at(a, b);
    return c;
}

std::array<RankOneTest, 5> kcbs_vectors(const KcbsConfig& cfg) {
    const double c = std::cos(cfg.alpha);
    const double s = std::sin(cfg.alpha);
    const double root = std::sqrt(std::cos(2.0 * cfg.alpha));
    const double norm = 1.0 / (std::sqrt(2.0) * c);
    return {
        RankOneTest({norm * root, norm * s, norm * c}),
        RankOneTest({0.0, c, -s}),
        RankOneTest({1.0, 0.0, 0.0}),
        RankOneTest({0.0, c, s}),
        RankOneTest({norm * root, norm * s, -norm * c}),
    };
}

QuantumState kcbs_state(const KcbsConfig& cfg) {
    return QuantumState({std::sin(cfg.theta), std::cos(cfg.theta), 0.0});
}

JointDist kcbs_sequential_joint(const RankOneTest& first,
                                const RankOneTest& second,
                                const QuantumState& psi) {
    const Complex amp = overlap(first, psi);
    const double p_yes = clamp01(std::norm(amp));
    const double p_no = clamp01(1.0 - p_yes);

    // Row index: outcome of `second` (0 = yes); column: outcome of `first`.
    std::vector<double> t(4, 0.0);

    const double yes_then_yes = clamp01(std::norm(overlap(second, first)));
    t[0] = p_yes * yes_then_yes;
    t[2] = p_yes * (1.0 - yes_then_yes);

    if (p_no >= 1e-14) {
        // Projection-postulate state after a "no" outcome.
        std::array<Complex, 3> rest;
        double n2 = 0.0;
        for (int i = 0; i < 3; ++i) {
            rest[i] = psi[i] - first.vector()[i] * amp;
            n2 += std::norm(rest[i]);
        }
        const double inv = 1.0 / std::sqrt(n2);
        Complex a2 = 0.0;
        for (int i = 0; i < 3; ++i) a2 += std::conj(second.vector()[i]) * rest[i] * inv;
        const double no_then_yes = clamp01(std::norm(a2));
        t[1] = p_no * no_then_yes;
        t[3] = p_no * (1.0 - no_then_yes);
    } else {
        // The "no" branch carries no probability; keep the table normalized
        // by folding the remainder into the deterministic "yes" column.
        t[0] = yes_then_yes;
        t[2] = 1.0 - yes_then_yes;
    }
    return JointDist(std::move(t), 2, 2);
}

double kcbs_pair_correlation(int j, int k, const KcbsConfig& cfg,
                             const QuantumState& psi) {
    if (j < 1 || j > 5 || k < 1 || k > 5) {
        throw std::domain_error("test indices must lie in 1..5");
    }
    const int d = ((j - k) % 5 + 5) % 5;
    if (d != 1 && d != 4) {
        throw std::domain_error("tests " + std::to_string(j) + " and " +
                                std::to_string(k) + " are not adjacent");
    }
    const auto x = kcbs_vectors(cfg);
    const JointDist t = kcbs_sequential_joint(x[k - 1], x[j - 1], psi);
    const double signs[2] = {+1.0, -1.0};  // yes -> +1, no -> -1
    double c = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) c += signs[a] * signs[b] * t.at(a, b);
    return c;
}

}  // namespace qbell
