#pragma once

#include <array>
#include <string>
#include <vector>

#include "qfan/statespace.hpp"

namespace qfan {

/// Interferometer + filter parameters (SI units, rates angular s^-1).
/// Defaults reproduce the detector design point used throughout.
struct GwParams {
    double M = 40.0;                 // mirror mass, kg
    double L_arm = 4000.0;           // arm length, m
    double P_arm = 800e3;            // circulating power, W
    double lambda_laser = 1064e-9;   // laser wavelength, m
    double Delta_d = -63.0;          // effective detuning, s^-1
    double gamma_IFO = 1062.0;       // effective detector coupling, s^-1
    double Omega_M = 1.0;            // mechanical frequency, s^-1
    double lambda_ = 3e6;            // amplifier pump coupling, s^-1
    double gamma = 2.01 * 3e6;       // amplifier mirror rate, s^-1
    double kappa1 = 2.0 * 3e8 / 4000.0;  // control-cavity rate 2c/L_arm, s^-1
    double L4 = 0.5;                 // loop length, m
    double gamma_1loss = 1e6;        // amplifier loss, s^-1
    double kappa_3loss = 100.0;      // control-cavity loss, s^-1
    double kappa_4loss = 6e5;        // loop-cavity loss, s^-1

    static constexpr double hbar = 1.054571817e-34;  // J s
    static constexpr double c = 3e8;                 // m/s

    double omega0() const;  // laser angular frequency 2 pi c / lambda_laser
    double g_arm() const;   // sqrt(2 P_arm omega0 / (hbar c L_arm))
    double g_m() const;     // g_arm * sqrt(hbar / (M Omega_M))
    double g_ni() const;    // sqrt(c gamma / (2 L_arm))
    double g24() const;     // sqrt(c gamma / L4)
    double g34() const;     // sqrt(c kappa1 / L4)
    void validate() const;
};

/// LQG weights: regulator pair (Q, R) and input-noise covariance V.
struct LqgWeights {
    Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(12, 12);
    double R = 0.01;
    Eigen::MatrixXd V;  // 9x9, default diag{1e-22, 1/2 x 8}
    LqgWeights();
};

/// Strain-referred quantum-noise decomposition over a frequency grid.
struct NoiseBudget {
    static constexpr std::array<const char*, 8> channel_names = {
        "Qd", "Pd", "Q1", "P1", "Q3", "P3", "Q4", "P4"};
    std::vector<double> omega;
    std::vector<double> total;                    // S(Omega), 1/Hz strain PSD
    std::array<std::vector<double>, 8> channel;   // per-input contributions
    std::vector<double> sql;                      // hbar / (M L^2 Omega^2)
    std::vector<bool> skipped;                    // singular points flagged
};

/// Baseline (no filter, no control) noise from the closed-form quadrature
/// responses; Omega = 0 grid points are skipped with a flag.
NoiseBudget baseline_noise(const GwParams& p, const std::vector<double>& omega_grid);

struct MizunoResult {
    double numeric;      // adaptive quadrature + analytic tail
    double closed_form;  // 2 pi g_arm^2 L_arm^2
    double rel_diff;
};

/// Sensitivity-bandwidth sum rule: integral of the inverse phase-quadrature
/// noise gain over all positive frequencies.
MizunoResult mizuno_integral(const GwParams& p, double rel_tol = 1e-9);

/// 12-state detector + amplifier + filter + loop model in the real
/// quadrature basis (X_M, P_M, q_d, p_d, q1, p1, q2, p2, q3, p3, q4, p4),
/// inputs (F_GW, Qd/Pd in, Q/P 1loss, Q/P 3loss, Q/P 4loss),
/// outputs (Qd out, Pd out).
StateSpaceModel build_full_system(const GwParams& p);

/// Numerical controllability/observability ranks of (A, B_u) and (A, C_m),
/// computed as Krylov-subspace dimensions with incremental
/// orthonormalization (relative breakdown threshold 1e-10).
std::pair<int, int> ctrb_obsv(const Eigen::MatrixXd& a, const Eigen::VectorXd& bu,
                              const Eigen::RowVectorXd& cm);

/// Stabilizing solution of P A + A^T P - P B R^{-1} B^T P + Q = 0 via the
/// stable invariant subspace of the Hamiltonian matrix, refined by
/// extended-precision Newton iterations. Throws "CARE not solvable" when no
/// n-dimensional stable subspace exists or the refinement fails to converge.
/// On return, *achieved (when given) holds the backward-relative residual of
/// the accepted solution: the residual Frobenius norm divided by
/// ||P A + A^T P|| + ||P S P|| + ||Q||, evaluated in extended precision.
Eigen::MatrixXd solve_care(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                           const Eigen::MatrixXd& q, const Eigen::MatrixXd& r,
                           double* achieved = nullptr);

/// Regulator + estimator synthesis and the combined 24-state closed loop
/// over (x, xhat - x).
struct LqgGains {
    Eigen::RowVectorXd fu;    // 1x12 state-feedback gain
    Eigen::VectorXd ku;       // 12x1 estimator gain
    Eigen::MatrixXd a_tot;    // 24x24
    Eigen::MatrixXd b_tot;    // 24x9
    Eigen::RowVectorXd c_tot; // 1x24 (measured quadrature)
    Eigen::RowVectorXd d_tot; // 1x9
    double residual_reg = 0.0, residual_kal = 0.0;  // backward-relative CARE residuals
    double max_re_eig = 0.0;  // of a_tot
    int rank_c = 0, rank_o = 0;
};
LqgGains lqg_synthesize(const StateSpaceModel& m, const LqgWeights& w);

/// Closed-loop noise budget from the 9 input channels to the measured
/// output, strain-referred through the force-to-strain conversion
/// F = M L (i Omega)^2 h.
NoiseBudget controlled_noise(const StateSpaceModel& m, const LqgGains& gains,
                             const GwParams& p, const std::vector<double>& omega_grid);

enum class LossChannel { Gamma1, Kappa3, Kappa4 };

struct SweepEntry {
    double value;
    bool ok = false;
    NoiseBudget budget;
    std::string error;
};

/// One full synthesize-and-evaluate run per loss value; failures are flagged
/// and the sweep continues.
std::vector<SweepEntry> loss_sweep(const GwParams& p, LossChannel channel,
                                   const std::vector<double>& values,
                                   const std::vector<double>& omega_grid);

struct GwConfig {
    GwParams params;
    LqgWeights weights;
};

/// Flat key-value parameter file ("key = value", '#' comments). Unknown keys
/// are rejected.
GwConfig load_gw_config(const std::string& path);

/// 400-point log grid over [2 pi 10, 2 pi 1e4] s^-1, the default plot band.
std::vector<double> default_gw_grid();

}  // namespace qfan
