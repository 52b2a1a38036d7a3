#include "qbell/entropy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qbell {

namespace {

void check_probability(double p) {
    if (!(p >= 0.0) || p > 1.0 + kNormTol) {
        throw std::invalid_argument("probability entry outside [0, 1]: " +
                                    std::to_string(p));
    }
}

void check_total(double total) {
    if (std::abs(total - 1.0) > kNormTol) {
        throw std::invalid_argument("probabilities sum to " +
                                    std::to_string(total) + ", expected 1");
    }
}

// Entropy of a raw probability vector, zero entries skipped. For q != 1 the
// sum is accumulated as sum_p p*expm1((q-1) ln p) = sum_p (p^q - p), which
// stays accurate arbitrarily close to q = 1.
double entropy_raw(const std::vector<double>& p, const QOrder& q) {
    if (q.shannon_limit()) {
        double h = 0.0;
        for (double v : p) {
            if (v > 0.0) h -= v * std::log(v);
        }
        return h;
    }
    const double qv = q.value();
    double s = 0.0;
    for (double v : p) {
        if (v > 0.0) s += v * std::expm1((qv - 1.0) * std::log(v));
    }
    return s / (1.0 - qv);
}

double entropy_pair(double a, double b, const QOrder& q) {
    return entropy_raw({a, b}, q);
}

}  // namespace

QOrder::QOrder(double q) : q_(q) {
    if (!(q > 0.0)) {
        throw std::invalid_argument("entropic order q must be positive, got " +
                                    std::to_string(q));
    }
}

bool QOrder::shannon_limit() const { return std::abs(q_ - 1.0) < kShannonBranch; }

ProbDist::ProbDist(std::vector<double> probs) : probs_(std::move(probs)) {
    double total = 0.0;
    for (double p : probs_) {
        check_probability(p);
        total += p;
    }
    check_total(total);
}

JointDist::JointDist(std::vector<double> table, std::size_t rows, std::size_t cols)
    : table_(std::move(table)), rows_(rows), cols_(cols) {
    if (rows_ == 0 || cols_ == 0 || table_.size() != rows_ * cols_) {
        throw std::invalid_argument("joint table shape mismatch");
    }
    double total = 0.0;
    for (double p : table_) {
        check_probability(p);
        total += p;
    }
    check_total(total);
}

JointDist JointDist::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty()) {
        throw std::invalid_argument("joint table must be non-empty");
    }
    const std::size_t cols = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols) {
            throw std::invalid_argument("joint table rows have unequal length");
        }
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return JointDist(std::move(flat), rows.size(), cols);
}

ProbDist JointDist::marginal_first() const {
    std::vector<double> m(rows_, 0.0);
    for (std::size_t a = 0; a < rows_; ++a)
        for (std::size_t b = 0; b < cols_; ++b) m[a] += at(a, b);
    return ProbDist(std::move(m));
}

ProbDist JointDist::marginal_second() const {
    std::vector<double> m(cols_, 0.0);
    for (std::size_t a = 0; a < rows_; ++a)
        for (std::size_t b = 0; b < cols_; ++b) m[b] += at(a, b);
    return ProbDist(std::move(m));
}

JointDist JointDist::transposed() const {
    std::vector<double> t(table_.size());
    for (std::size_t a = 0; a < rows_; ++a)
        for (std::size_t b = 0; b < cols_; ++b) t[b * rows_ + a] = at(a, b);
    return JointDist(std::move(t), cols_, rows_);
}

Efficiency::Efficiency(double eta) : eta_(eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("efficiency must lie in [0, 1], got " +
                                    std::to_string(eta));
    }
}

double q_ln(double x, QOrder q) {
    if (!(x > 0.0)) {
        throw std::domain_error("q_ln requires x > 0, got " + std::to_string(x));
    }
    if (q.shannon_limit()) return std::log(x);
    const double qv = q.value();
    return std::expm1((1.0 - qv) * std::log(x)) / (1.0 - qv);
}

double tsallis_entropy(const ProbDist& p, QOrder q) {
    return entropy_raw(p.values(), q);
}

double joint_entropy(const JointDist& j, QOrder q) {
    return entropy_raw(j.flat(), q);
}

double conditional_entropy(const JointDist& j, QOrder q) {
    const double qv = q.value();
    double out = 0.0;
    std::vector<double> cond(j.rows());
    for (std::size_t b = 0; b < j.cols(); ++b) {
        double pb = 0.0;
        for (std::size_t a = 0; a < j.rows(); ++a) pb += j.at(a, b);
        if (pb <= 0.0) continue;
        for (std::size_t a = 0; a < j.rows(); ++a) cond[a] = j.at(a, b) / pb;
        out += std::pow(pb, qv) * entropy_raw(cond, q);
    }
    return out;
}

double mutual_information(const JointDist& j, QOrder q) {
    return tsallis_entropy(j.marginal_first(), q) - conditional_entropy(j, q);
}

double binary_q_entropy(Efficiency eta, QOrder q) {
    return entropy_pair(eta.value(), 1.0 - eta.value(), q);
}

double eta_deform_entropy(double h_a, Efficiency eta, QOrder q) {
    const double e = eta.value();
    return std::pow(e, q.value()) * h_a + binary_q_entropy(eta, q);
}

double eta_eta_deform_entropy(double h_a, double h_b, double h_c,
                              Efficiency eta, QOrder q) {
    const double e = eta.value();
    const double qv = q.value();
    const double eq = std::pow(e, qv);
    const double ceq = std::pow(1.0 - e, qv);
    return eq * eq * h_a + eq * ceq * (h_b + h_c) +
           (eq + ceq + 1.0) * binary_q_entropy(eta, q);
}

double chain_rule_residual(const JointDist& j, QOrder q) {
    const double hab = joint_entropy(j, q);
    const double r1 = hab - conditional_entropy(j, q) -
                      tsallis_entropy(j.marginal_second(), q);
    const double r2 = hab - conditional_entropy(j.transposed(), q) -
                      tsallis_entropy(j.marginal_first(), q);
    return std::max(std::abs(r1), std::abs(r2));
}

}  // namespace qbell
