#pragma once

#include "qfan/transfer_matrix.hpp"

namespace qfan {

/// Non-degenerate parametric amplifier: mirror rate gamma, pump coupling lambda.
/// gamma > 2*lambda is required only for stability, not for construction.
struct NdpaParams {
    double gamma;
    double lambda_;
};

/// Two-port cavity: coupling rates kappa1, kappa2 and (signed) detuning delta.
struct CavityParams {
    double kappa1;
    double kappa2;
    double delta = 0.0;
};

/// G(s) of the NDPA in ports (b1, b2^dag) -> (b1~, b2~^dag):
///   diag (s^2 - lambda^2 - gamma^2/4)/d, off-diag -gamma*lambda/d,
///   d = (s + gamma/2)^2 - lambda^2.
TransferMatrix make_ndpa(const NdpaParams& p);

/// Transmission through a detuned two-port cavity (asymmetric low-pass):
///   [[s + (k2-k1)/2 - i delta, -sqrt(k1 k2)],
///    [-sqrt(k1 k2),  s + (k1-k2)/2 - i delta]] / (s + (k1+k2)/2 - i delta)
TransferMatrix make_cavity_transmission(const CavityParams& p);

/// Reflection off the same cavity (asymmetric high-pass, anti-diagonal form).
/// kappa2 = 0 is the single-mirror specialization used by the
/// phase-cancellation filter.
TransferMatrix make_cavity_reflection(const CavityParams& p);

/// Beam splitter with power transmissivity T in (0, 1].
TransferMatrix make_beam_splitter(double T);

/// Constant phase factor e^{i phi}.
Rational make_phase_shifter(double phi);

/// Cascade K_r(s) [[0,-1],[1,0]] K_l(s) of two detuned cavities. The left
/// cavity carries detuning -delta inside its resonance denominator and the
/// right one +delta (the Butterworth tuning is delta = (k1+k2)/2, supplied by
/// the caller through p.delta).
TransferMatrix make_butterworth_controller(const CavityParams& p);

struct RealizabilityReport {
    // max over the grid of each commutation-condition violation:
    //   | |G11|^2 - |G12|^2 - 1 |, | |G22|^2 - |G21|^2 - 1 |,
    //   | G21 conj(G11) - G22 conj(G12) |
    double max_row1 = 0.0;
    double max_row2 = 0.0;
    double max_cross = 0.0;
    double max_violation = 0.0;
    bool pass = false;
};

/// Checks the phase-preserving-amplifier commutation conditions on s = i w.
RealizabilityReport check_amplifier_realizable(const TransferMatrix& g,
                                               const std::vector<double>& omegas,
                                               double tol);

struct UnitarityReport {
    double max_violation = 0.0;  // max over grid of ||K K^dag - I||_max
    bool pass = false;
};

/// Checks K(iw) K(iw)^dag = I for a passive (all-annihilation or
/// all-creation) square network.
UnitarityReport check_passive_unitary(const TransferMatrix& k,
                                      const std::vector<double>& omegas,
                                      double tol);

struct BogoliubovReport {
    double max_violation = 0.0;  // max over grid of ||G J_in G^dag - J_out||_max
    bool pass = false;
};

/// Signature-general commutation check G(iw) J_in G(iw)^dag = J_out, with
/// J = diag(+1 annihilation, -1 creation). Reduces to the amplifier check
/// for 2x2 (annihilation, creation) systems and to unitarity for passive ones.
BogoliubovReport check_bogoliubov(const TransferMatrix& g,
                                  const std::vector<double>& omegas,
                                  double tol);

/// 64-point log grid [1e-3, 1e3] * rate, the default realizability grid.
std::vector<double> default_check_grid(double rate);

}  // namespace qfan
