#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qfan/transfer_matrix.hpp"

namespace qfan {

/**
 * @brief Linear time-invariant model dx = A x + B u, y = C x + D u.
 *
 * Complex-valued so that doubled-up (annihilation/creation) dynamics and
 * detuned rotating frames are represented directly. Port signatures carry
 * over to the extracted transfer matrix.
 */
struct StateSpaceModel {
    Eigen::MatrixXcd A, B, C, D;
    std::vector<std::string> state_labels, input_labels, output_labels;
    std::vector<Port> in_sig, out_sig;
};

/// Validating constructor: checks dimensional consistency and label
/// uniqueness; missing signatures default to annihilation ports.
StateSpaceModel make_model(Eigen::MatrixXcd a, Eigen::MatrixXcd b, Eigen::MatrixXcd c,
                           Eigen::MatrixXcd d, std::vector<std::string> states,
                           std::vector<std::string> inputs, std::vector<std::string> outputs,
                           std::vector<Port> in_sig = {}, std::vector<Port> out_sig = {});

/// D + C (i omega I - A)^{-1} B by linear solve. Throws PoleError when
/// i omega is (numerically) an eigenvalue of A.
Eigen::MatrixXcd freq_response(const StateSpaceModel& m, double omega);

/// Symbolic transfer matrix via the Faddeev-LeVerrier resolvent expansion,
/// n <= 16. Each call self-verifies pointwise against freq_response at 8
/// pseudo-random frequencies to 1e-8 relative and throws on disagreement.
TransferMatrix to_transfer_matrix(const StateSpaceModel& m);

/// Amplifier-controller loop realized with an explicit loop-cavity mode:
/// rates in s^-1, loop length L4 in metres; the loop couplings are derived,
/// not free: g24 = sqrt(c gamma / L4), g34 = sqrt(c kappa / L4).
struct LoopCavityParams {
    double gamma;
    double lambda_;
    double kappa;
    double L4;
    static constexpr double c_light = 3e8;  // m/s
    double g24() const { return std::sqrt(c_light * gamma / L4); }
    double g34() const { return std::sqrt(c_light * kappa / L4); }
    void validate() const;
};

/// Four-mode integrator: states (a1, a2^dag, a3^dag, a4^dag), inputs
/// (b1, b4^dag), outputs (b1~, b3~^dag), plus the exact analytic
/// G21(s) = alpha0 / (s^4 + b3 s^3 + b2 s^2 + b1 s + b0).
struct IntegratorModel {
    StateSpaceModel model;
    Rational g21_analytic;
};
IntegratorModel build_integrator_model(const LoopCavityParams& p);

/// Mean-field self-oscillator: same four modes with the readout cavity
/// detuned by delta; autonomous (no inputs), output <b3~^dag> = sqrt(kappa) <a3^dag>.
StateSpaceModel build_self_oscillator(const LoopCavityParams& p, double delta);

/// Single-port phase-cancellation filter (kappa plays the role of kappa1)
/// with its exact all-pass response Z(s).
struct PhaseFilterModel {
    StateSpaceModel model;
    Rational z;
};
PhaseFilterModel build_phase_filter(const LoopCavityParams& p);

/// Mean-value trajectory x(t) = exp(A t) x0, y = C x.
struct Trajectory {
    std::vector<double> t;
    std::vector<Eigen::VectorXcd> x;
    std::vector<Eigen::VectorXcd> y;
};

/// Propagates means over an increasing time grid with a per-step matrix
/// exponential. Throws when a step violates the conditioning guard
/// ||A|| * dt > 50.
Trajectory simulate_mean(const StateSpaceModel& m, const Eigen::VectorXcd& x0,
                         const std::vector<double>& t_grid);

/// Closed-form dispersive-readout means: q1 = sqrt(Gamma/2) e^{-Gamma t/2} sx,
/// q3 = kappa sqrt(2/Gamma) (1 - e^{-Gamma t/2}) sx.
std::pair<double, double> qubit_readout_mean(double gamma_qubit, double kappa, double t,
                                             int sigma_x);

}  // namespace qfan
