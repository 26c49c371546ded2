#pragma once

#include <array>
#include <utility>
#include <vector>

#include "qfan/rational.hpp"

namespace qfan {

enum class Verdict { Stable, Unstable, Marginal };

/// Nyquist sweep of L(i omega): adaptively sampled trajectory, winding number
/// about -1 and the resulting verdict.
struct NyquistResult {
    std::vector<std::pair<double, cplx>> samples;  // (omega, L(i omega)), ordered by omega
    int winding_number = 0;
    double min_distance = 0.0;  // distance of the closed curve to -1
    Verdict verdict = Verdict::Marginal;
};

/// Nyquist criterion for a stable open loop. Samples L over
/// [-omega_max, -omega_min] U [omega_min, omega_max] with adaptive refinement
/// (chord turn angle <= 0.2 rad), closes the contour at L(inf) for biproper L
/// or at the origin for strictly proper L, and counts encirclements of -1.
/// Verdict: stable iff winding number 0 and min distance to -1 > 1e-6.
/// Throws if L is improper or has a pole with Re >= 0
/// ("Nyquist precondition violated").
NyquistResult nyquist(const Rational& l, double omega_min, double omega_max);

/// Stability of the monic real quartic s^4 + b3 s^3 + b2 s^2 + b1 s + b0:
/// stable iff b3 > 0, (b2 b3 - b1)/b3 > 0, b3^2 b0/(b1 - b2 b3) + b1 > 0 and
/// b0 > 0. b0 within 1e-9 of 0 (integrator limit) reports Marginal.
/// Throws if any coefficient has a nonzero imaginary part.
Verdict routh_hurwitz_quartic(const std::array<cplx, 4>& beta);

/// Direct root inspection: stable iff max Re(root) < -margin, unstable iff
/// some Re(root) > margin, otherwise marginal.
Verdict stable_by_roots(const Polynomial& den, double margin);

}  // namespace qfan
