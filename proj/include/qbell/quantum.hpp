#pragma once

#include <array>
#include <complex>
#include <vector>

#include "qbell/entropy.hpp"

namespace qbell {

using Complex = std::complex<double>;

/// Pure state of a 2-, 3- or 4-dimensional system; unit norm within kNormTol.
class QuantumState {
  public:
    explicit QuantumState(std::vector<Complex> amplitudes);

    std::size_t dim() const { return amps_.size(); }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }
    const std::vector<Complex>& amplitudes() const { return amps_; }

  private:
    std::vector<Complex> amps_;
};

/// Spin observable n.sigma with outcomes +1/-1 along a unit direction n.
class DichotomicSpinObservable {
  public:
    explicit DichotomicSpinObservable(std::array<double, 3> direction);

    /// Direction in the x-z plane at the given planar angle from +z.
    static DichotomicSpinObservable from_planar_angle(double angle);

    const std::array<double, 3>& direction() const { return dir_; }

  private:
    std::array<double, 3> dir_;
};

/// Rank-one yes/no test |x><x| on a qutrit; outcome 1 means "yes".
class RankOneTest {
  public:
    explicit RankOneTest(std::array<Complex, 3> vector);

    const std::array<Complex, 3>& vector() const { return vec_; }

  private:
    std::array<Complex, 3> vec_;
};

/// Pentagon test geometry: five cyclically orthogonal qutrit vectors
/// parameterized by alpha in (0, pi/4), probed in the state
/// (sin theta, cos theta, 0).
struct KcbsConfig {
    double alpha;
    double theta;

    KcbsConfig(double alpha, double theta);
};

/// Inner product <x|y>.
Complex overlap(const RankOneTest& x, const RankOneTest& y);
Complex overlap(const RankOneTest& x, const QuantumState& psi);

/// Joint outcome table for a pair of singlet-state spin measurements, one per
/// side, computed from the 4x4 tensor-product eigenprojectors. Outcome index
/// 0 is +1 and index 1 is -1 on both axes; rows belong to the first observable.
JointDist chsh_joint_dist(const DichotomicSpinObservable& a,
                          const DichotomicSpinObservable& b);

/// Same, for coplanar directions separated by the given angle.
JointDist chsh_joint_dist(double angle_ab);

/// <AB> on the singlet, summed from the joint table (equals -cos angle).
double chsh_correlation(double angle);

/// The five pentagon test vectors; adjacent pairs are orthogonal.
std::array<RankOneTest, 5> kcbs_vectors(const KcbsConfig& cfg);

/// The probed state (sin theta, cos theta, 0).
QuantumState kcbs_state(const KcbsConfig& cfg);

/// Sequential measurement: `first` is measured on psi, the state collapses by
/// the projection postulate, then `second` is measured. Returns the 2x2 table
/// over (second, first); outcome index 0 is "yes", 1 is "no". The marginal
/// over the second (column) index is the undisturbed distribution of `first`.
JointDist kcbs_sequential_joint(const RankOneTest& first,
                                const RankOneTest& second,
                                const QuantumState& psi);

/// Pair correlation <X_j X_k> for cyclically adjacent tests (1-based indices),
/// with outcomes rescaled yes -> +1, no -> -1. Non-adjacent pairs are a
/// domain error.
double kcbs_pair_correlation(int j, int k, const KcbsConfig& cfg,
                             const QuantumState& psi);

}  // namespace qbell
