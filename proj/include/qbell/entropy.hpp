#pragma once

#include <cstddef>
#include <vector>

namespace qbell {

/// Tolerance used when validating probability normalization and unit norms.
inline constexpr double kNormTol = 1e-12;

/// Width of the |q - 1| window in which the Shannon limit formulas are used.
inline constexpr double kShannonBranch = 1e-9;

/// Entropic order q > 0. Orders q >= 1 admit the cycle inequalities.
class QOrder {
  public:
    explicit QOrder(double q);

    double value() const { return q_; }

    /// True iff q >= 1, the regime in which the conditional entropy is
    /// monotone under extra conditioning and the cycle bounds hold.
    bool supports_bell_inequalities() const { return q_ >= 1.0; }

    /// True iff q is close enough to 1 that the Shannon formulas are used.
    bool shannon_limit() const;

  private:
    double q_;
};

/// Finite discrete probability distribution. Entries must lie in [0, 1]
/// and sum to 1 within kNormTol; out-of-tolerance input is rejected.
class ProbDist {
  public:
    explicit ProbDist(std::vector<double> probs);

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    const std::vector<double>& values() const { return probs_; }

  private:
    std::vector<double> probs_;
};

/// Two-variable probability table p(a, b), row index a, column index b.
/// Conditioning operations treat the second index as the conditioner.
class JointDist {
  public:
    JointDist(std::vector<double> table, std::size_t rows, std::size_t cols);

    static JointDist from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double at(std::size_t a, std::size_t b) const { return table_[a * cols_ + b]; }
    const std::vector<double>& flat() const { return table_; }

    ProbDist marginal_first() const;   // p(a) = sum_b p(a, b)
    ProbDist marginal_second() const;  // p(b) = sum_a p(a, b)
    JointDist transposed() const;

  private:
    std::vector<double> table_;
    std::size_t rows_;
    std::size_t cols_;
};

/// Detector efficiency, a probability in [0, 1].
class Efficiency {
  public:
    explicit Efficiency(double eta);
    double value() const { return eta_; }

  private:
    double eta_;
};

/// Deformed logarithm ln_q(x) = (x^{1-q} - 1)/(1 - q), ln(x) in the q -> 1
/// limit. Requires x > 0.
double q_ln(double x, QOrder q);

/// H_q(A) = (sum_a p(a)^q - 1)/(1 - q); Shannon entropy at q = 1.
/// Zero-probability entries contribute exactly 0. Result is in nats.
double tsallis_entropy(const ProbDist& p, QOrder q);

/// H_q(A, B): the entropy of the flattened table.
double joint_entropy(const JointDist& j, QOrder q);

/// Conditional entropy H_q(A|B) = sum_b p(b)^q H_q(A|b), conditioning on the
/// second index. Columns with p(b) = 0 contribute nothing.
double conditional_entropy(const JointDist& j, QOrder q);

/// Mutual information I_q(A:B) = H_q(A) - H_q(A|B). Symmetric in its
/// arguments; non-negative for q >= 1.
double mutual_information(const JointDist& j, QOrder q);

/// Binary entropy h_q(eta) = -eta^q ln_q eta - (1-eta)^q ln_q(1-eta).
double binary_q_entropy(Efficiency eta, QOrder q);

/// Entropy of the single-detector deformed distribution
/// {eta p(a)} u {1 - eta} given H_q(A) = h_a, without constructing it:
/// eta^q h_a + h_q(eta).
double eta_deform_entropy(double h_a, Efficiency eta, QOrder q);

/// Entropy of the two-detector deformed distribution
/// {eta^2 p(a)} u {eta(1-eta) p(b)} u {eta(1-eta) p(c)} u {(1-eta)^2}
/// given the three component entropies.
double eta_eta_deform_entropy(double h_a, double h_b, double h_c,
                              Efficiency eta, QOrder q);

/// Max absolute residual of the two chain-rule identities
/// H_q(A,B) = H_q(B|A) + H_q(A) = H_q(A|B) + H_q(B). A test utility; must be
/// below 1e-10 for any valid table.
double chain_rule_residual(const JointDist& j, QOrder q);

}  // namespace qbell
