#pragma once

#include <functional>
#include <string>

#include "qfan/transfer_matrix.hpp"

namespace qfan {

/// Result of closing an amplifier over a passive controller. Interconnection
/// is symbolic on rational functions so stability analysis can inspect exact
/// denominators.
struct ClosedLoop {
    TransferMatrix gfb;
    Rational open_loop;  // L(s) = -K21 * G22 for the 2-port loop
    std::string provenance;
};

/// 2-port loop of an amplifier G over a passive controller K:
///   G11fb = (G11 - K21 det G) / (1 - K21 G22),  G12fb = G12 K22 / (...),
///   G21fb = G21 K11 / (...),  G22fb = (K12 + G22 det K) / (...).
/// Throws if the interconnection denominator 1 - K21 G22 vanishes identically.
ClosedLoop close_loop(const TransferMatrix& g, const TransferMatrix& k);

/// Ideal quantum op-amp limit (-1/K21) [[1, K22], [K11, det K]].
/// Throws if K21 is identically zero.
TransferMatrix ideal_closed_loop(const TransferMatrix& k);

struct ConvergenceSample {
    double eps;
    cplx s;
    double err;        // max entrywise |close_loop - ideal|
    double inv_g11;    // contemporaneous 1/|G11(s)|
    bool in_domain;    // |G11(s)| large enough for the limit to be meaningful
};

struct ConvergenceReport {
    std::vector<ConvergenceSample> samples;
    // max over in-domain samples of err * |G11| divided by its min: how far
    // the error is from exact proportionality to 1/|G11|.
    double proportionality_spread = 0.0;
    bool gain_ceiling = false;  // flagged when |G11| never grows (e.g. lambda = 0)
};

/// Evaluates the approach of close_loop(G(eps), K) to ideal_closed_loop(K)
/// for an amplifier family indexed by eps, together with the contemporaneous
/// amplifier gain. The error tracks 1/|G11(s)|, not eps: at fixed s != 0 the
/// gain (and thus the error) saturates.
ConvergenceReport high_gain_convergence(
    const std::function<TransferMatrix(double)>& family,
    const TransferMatrix& k, const std::vector<cplx>& s_samples,
    const std::vector<double>& eps_values);

/// 3x3 open-loop system of the Nyquist construction:
///   rows [G11, G12, 0; K11 G21, K11 G22, K12; K21 G21, K21 G22, K22].
TransferMatrix open_loop_system(const TransferMatrix& g, const TransferMatrix& k);

/// Three-port non-reciprocal loop: two amplifiers G (forward) and Gbar
/// (return) closed over a passive K, with the reverse path carrying the
/// para-conjugated K entries. Ports: (b1^dag, b3, b4) -> (b2~^dag, b3~, b4~).
ClosedLoop nonreciprocal_close(const TransferMatrix& g, const TransferMatrix& gbar,
                               const TransferMatrix& k);

/// High-gain limit of the non-reciprocal loop:
///   [[-1/K22, -K21/K22, 0], [-K12/K22, det K/K22, 0],
///    [0, 0, (K11~ + det(K^dag)~)/(1 + K22~)]].
TransferMatrix nonreciprocal_ideal(const TransferMatrix& k);

}  // namespace qfan
