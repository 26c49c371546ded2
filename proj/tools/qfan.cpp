// Command-line front end: reproduces the analyses as CSV data plus
// single-line JSON summaries on stdout.
#include <complex>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfan/components.hpp"
#include "qfan/csv.hpp"
#include "qfan/feedback.hpp"
#include "qfan/gw.hpp"
#include "qfan/stability.hpp"
#include "qfan/statespace.hpp"

using json = nlohmann::json;
using namespace qfan;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitCare = 4;
constexpr int kExitRank = 5;

const cplx kI(0.0, 1.0);

struct GridSpec {
    double omega_min = 1e-2;
    double omega_max = 1e2;
    int points = 200;
    std::string scale = "log";
    std::string unit = "angular";

    double rate(double v) const { return unit == "hertz" ? 2.0 * M_PI * v : v; }
    std::vector<double> make() const {
        if (!(omega_min < omega_max) || points < 2)
            throw std::invalid_argument("grid requires omega_min < omega_max and points >= 2");
        double lo = rate(omega_min), hi = rate(omega_max);
        std::vector<double> g(static_cast<size_t>(points));
        for (int i = 0; i < points; ++i) {
            double f = static_cast<double>(i) / (points - 1);
            g[static_cast<size_t>(i)] =
                scale == "linear" ? lo + (hi - lo) * f : lo * std::pow(hi / lo, f);
        }
        return g;
    }
};

void add_grid(CLI::App* cmd, GridSpec& g) {
    cmd->add_option("--omega-min", g.omega_min, "grid lower edge");
    cmd->add_option("--omega-max", g.omega_max, "grid upper edge");
    cmd->add_option("--points", g.points, "grid size");
    cmd->add_option("--scale", g.scale, "log | linear")
        ->check(CLI::IsMember({"log", "linear"}));
    cmd->add_option("--unit", g.unit, "angular | hertz (inputs scaled by 2 pi)")
        ->check(CLI::IsMember({"angular", "hertz"}));
}

struct NetOpts {
    std::string network;
    std::string mode = "finite";
    std::string controller = "lpf";
    double lambda_ = 2.0;
    double gamma_ratio = 2.01;
    double kappa = 1.0;
    double kappa1 = 1.0;
    double kappa2 = 1.5;
    double delta = 0.0;
    bool delta_set = false;
    double transmissivity = 0.5;
    double c_over_l4 = 1e3;
    std::string matrix_file;
};

void add_net(CLI::App* cmd, NetOpts& n, const std::string& nets) {
    cmd->add_option("--network", n.network, "one of: " + nets)->required();
    cmd->add_option("--mode", n.mode, "finite | ideal")
        ->check(CLI::IsMember({"finite", "ideal"}));
    cmd->add_option("--controller", n.controller,
                    "lpf | hpf | asym-lpf | asym-hpf | butterworth | beamsplitter");
    cmd->add_option("--lambda", n.lambda_, "amplifier pump coupling");
    cmd->add_option("--gamma-ratio", n.gamma_ratio, "gamma / lambda");
    cmd->add_option("--kappa", n.kappa, "controller / readout cavity rate");
    cmd->add_option("--kappa1", n.kappa1, "input mirror rate");
    cmd->add_option("--kappa2", n.kappa2, "output mirror rate");
    cmd->add_option("--delta", n.delta, "cavity detuning")->each([&n](const std::string&) {
        n.delta_set = true;
    });
    cmd->add_option("--transmissivity", n.transmissivity, "beam-splitter transmissivity");
    cmd->add_option("--c-over-l4", n.c_over_l4, "loop rate scale c / L4 (units of kappa)");
    cmd->add_option("--matrix-file", n.matrix_file, "constant-matrix JSON for check");
}

TransferMatrix make_controller(const NetOpts& n) {
    if (n.controller == "lpf")
        return make_cavity_transmission({n.kappa, n.kappa, 0.0});
    if (n.controller == "hpf")
        return make_cavity_reflection({n.kappa, n.kappa, 0.0});
    if (n.controller == "asym-lpf")
        return make_cavity_transmission({n.kappa1, n.kappa2, n.delta});
    if (n.controller == "asym-hpf")
        return make_cavity_reflection({n.kappa1, n.kappa2, n.delta});
    if (n.controller == "butterworth")
        return make_butterworth_controller(
            {n.kappa1, n.kappa2, n.delta_set ? n.delta : (n.kappa1 + n.kappa2) / 2.0});
    if (n.controller == "beamsplitter") return make_beam_splitter(n.transmissivity);
    throw std::invalid_argument("unknown controller: " + n.controller);
}

TransferMatrix load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open matrix file: " + path);
    json j = json::parse(in);
    auto sig = [](const json& arr) {
        std::vector<Port> s;
        for (const auto& v : arr)
            s.push_back(v.get<std::string>() == "creation" ? Port::Creation
                                                           : Port::Annihilation);
        return s;
    };
    std::vector<Port> so = sig(j.at("sig_out")), si = sig(j.at("sig_in"));
    auto re = j.at("re"), im = j.at("im");
    TransferMatrix m(static_cast<int>(so.size()), static_cast<int>(si.size()), so, si);
    for (int i = 0; i < m.rows(); ++i)
        for (int k = 0; k < m.cols(); ++k)
            m.at(i, k) = Rational::constant(
                cplx(re.at(static_cast<size_t>(i)).at(static_cast<size_t>(k)).get<double>(),
                     im.at(static_cast<size_t>(i)).at(static_cast<size_t>(k)).get<double>()));
    return m;
}

// builds the requested network in the requested closure mode
TransferMatrix build_network(const NetOpts& n) {
    double gamma = n.gamma_ratio * n.lambda_;
    if (n.network == "ndpa") return make_ndpa({gamma, n.lambda_});
    if (n.network == "cavity-transmission")
        return make_cavity_transmission({n.kappa1, n.kappa2, n.delta});
    if (n.network == "cavity-reflection")
        return make_cavity_reflection({n.kappa1, n.kappa2, n.delta});
    if (n.network == "beamsplitter") return make_beam_splitter(n.transmissivity);
    if (n.network == "butterworth") {
        TransferMatrix k = make_controller(NetOpts{n.network, n.mode, "butterworth",
                                                   n.lambda_, n.gamma_ratio, n.kappa,
                                                   n.kappa1, n.kappa2, n.delta, n.delta_set,
                                                   n.transmissivity, n.c_over_l4, ""});
        if (n.mode == "ideal") return ideal_closed_loop(k);
        return close_loop(make_ndpa({gamma, n.lambda_}), k).gfb;
    }
    if (n.network == "closed-loop") {
        TransferMatrix k = make_controller(n);
        if (n.mode == "ideal") return ideal_closed_loop(k);
        return close_loop(make_ndpa({gamma, n.lambda_}), k).gfb;
    }
    if (n.network == "nonreciprocal") {
        TransferMatrix k = make_beam_splitter(n.transmissivity);
        if (n.mode == "ideal") return nonreciprocal_ideal(k);
        TransferMatrix g = make_ndpa({gamma, n.lambda_});
        return nonreciprocal_close(g, g, k).gfb;
    }
    if (n.network == "integrator") {
        LoopCavityParams p{gamma, n.lambda_, n.kappa,
                           LoopCavityParams::c_light / (n.c_over_l4 * n.kappa)};
        return to_transfer_matrix(build_integrator_model(p).model);
    }
    if (n.network == "phase-filter") {
        LoopCavityParams p{gamma, n.lambda_, n.kappa,
                           LoopCavityParams::c_light / (n.c_over_l4 * n.kappa)};
        PhaseFilterModel pf = build_phase_filter(p);
        TransferMatrix m(1, 1, {Port::Annihilation}, {Port::Annihilation});
        m.at(0, 0) = pf.z;
        return m;
    }
    if (n.network == "matrix-file") return load_matrix_file(n.matrix_file);
    throw std::invalid_argument("unknown network: " + n.network);
}

int run_check(const NetOpts& n, const GridSpec& gs, double tol) {
    TransferMatrix m = build_network(n);
    std::vector<double> grid = gs.make();
    BogoliubovReport rep = check_bogoliubov(m, grid, tol);
    json j{{"network", n.network},
           {"mode", n.mode},
           {"max_violation", rep.max_violation},
           {"tolerance", tol},
           {"pass", rep.pass}};
    if (m.rows() == 2 && m.sig_out()[0] == Port::Annihilation &&
        m.sig_out()[1] == Port::Creation) {
        RealizabilityReport r2 = check_amplifier_realizable(m, grid, tol);
        j["row1"] = r2.max_row1;
        j["row2"] = r2.max_row2;
        j["cross"] = r2.max_cross;
    }
    std::cout << j.dump() << '\n';
    return rep.pass ? 0 : 1;
}

int run_bode(const NetOpts& n, const GridSpec& gs, const std::string& out) {
    TransferMatrix m = build_network(n);
    std::vector<double> grid = gs.make();
    CsvWriter csv(out);
    std::vector<std::string> hdr{"omega"};
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            std::string suf = std::to_string(i + 1) + std::to_string(j + 1);
            hdr.push_back("abs" + suf);
            hdr.push_back("arg" + suf);
        }
    csv.header(hdr);
    int flagged = 0;
    for (double w : grid) {
        std::vector<std::string> cells{fmt_num(w)};
        try {
            Eigen::MatrixXcd v = m.eval(kI * w);
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j) {
                    cells.push_back(fmt_num(std::abs(v(i, j))));
                    cells.push_back(fmt_num(std::arg(v(i, j))));
                }
        } catch (const PoleError&) {
            cells.resize(1);
            cells.push_back("pole");
            ++flagged;
        }
        csv.line(cells);
    }
    json j{{"network", n.network}, {"mode", n.mode}, {"rows", grid.size()},
           {"poles_flagged", flagged}, {"output", out}};
    std::cout << j.dump() << '\n';
    return 0;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "stable";
        case Verdict::Unstable: return "unstable";
        default: return "marginal";
    }
}

int run_nyquist(const NetOpts& n, const GridSpec& gs, const std::string& out) {
    Rational l;
    if (n.network == "differentiator") {
        double gamma = n.gamma_ratio * n.lambda_;
        TransferMatrix g = make_ndpa({gamma, n.lambda_});
        TransferMatrix k = make_cavity_transmission({n.kappa, n.kappa, 0.0});
        l = -(k.at(1, 0) * g.at(1, 1));
    } else if (n.network == "zero") {
        l = Rational::zero();
    } else {
        throw std::invalid_argument("nyquist networks: differentiator | zero");
    }
    NyquistResult res = nyquist(l, gs.rate(gs.omega_min), gs.rate(gs.omega_max));
    CsvWriter csv(out);
    csv.header({"omega", "re", "im"});
    for (const auto& [w, v] : res.samples) csv.row({w, v.real(), v.imag()});
    json j{{"network", n.network},
           {"winding_number", res.winding_number},
           {"min_distance", res.min_distance},
           {"verdict", verdict_name(res.verdict)},
           {"samples", res.samples.size()},
           {"output", out}};
    std::cout << j.dump() << '\n';
    return 0;
}

StateSpaceModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open model file: " + path);
    json j = json::parse(in);
    auto mat = [&](const std::string& key, Eigen::Index r, Eigen::Index c) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(r, c);
        if (!j.contains(key + "_re")) return m;
        auto re = j[key + "_re"], im = j.value(key + "_im", json());
        for (Eigen::Index a = 0; a < r; ++a)
            for (Eigen::Index b = 0; b < c; ++b)
                m(a, b) = cplx(re.at(static_cast<size_t>(a)).at(static_cast<size_t>(b))
                                   .get<double>(),
                               im.is_null() ? 0.0
                                            : im.at(static_cast<size_t>(a))
                                                  .at(static_cast<size_t>(b))
                                                  .get<double>());
        return m;
    };
    auto n = static_cast<Eigen::Index>(j.at("A_re").size());
    auto p = j.contains("C_re") ? static_cast<Eigen::Index>(j["C_re"].size()) : n;
    Eigen::MatrixXcd a = mat("A", n, n);
    Eigen::MatrixXcd c =
        j.contains("C_re") ? mat("C", p, n) : Eigen::MatrixXcd::Identity(n, n);
    std::vector<std::string> sl, ol;
    for (Eigen::Index i = 0; i < n; ++i) sl.push_back("x" + std::to_string(i + 1));
    for (Eigen::Index i = 0; i < p; ++i) ol.push_back("y" + std::to_string(i + 1));
    return make_model(a, Eigen::MatrixXcd(n, 0), c, Eigen::MatrixXcd(p, 0), sl, {}, ol);
}

int run_simulate(const NetOpts& n, const std::string& model, const std::string& model_file,
                 double delta, double t_max, int t_points,
                 const std::vector<double>& x0_flat, const std::string& out) {
    StateSpaceModel m;
    if (model == "self-oscillator") {
        LoopCavityParams p{n.gamma_ratio * n.lambda_, n.lambda_, n.kappa,
                           LoopCavityParams::c_light / (n.c_over_l4 * n.kappa)};
        m = build_self_oscillator(p, delta);
    } else if (model == "integrator") {
        LoopCavityParams p{n.gamma_ratio * n.lambda_, n.lambda_, n.kappa,
                           LoopCavityParams::c_light / (n.c_over_l4 * n.kappa)};
        IntegratorModel im = build_integrator_model(p);
        m = make_model(im.model.A, Eigen::MatrixXcd(4, 0), im.model.C,
                       Eigen::MatrixXcd(2, 0), im.model.state_labels, {},
                       im.model.output_labels);
    } else if (model == "custom-file") {
        m = load_model_file(model_file);
    } else {
        throw std::invalid_argument("models: self-oscillator | integrator | custom-file");
    }
    Eigen::VectorXcd x0(m.A.rows());
    if (x0_flat.empty()) {
        x0.setConstant(cplx(1.0 / std::sqrt(2.0)));
    } else {
        if (static_cast<Eigen::Index>(x0_flat.size()) != 2 * m.A.rows())
            throw std::invalid_argument("--x0 needs re,im pairs for every state");
        for (Eigen::Index i = 0; i < m.A.rows(); ++i)
            x0(i) = cplx(x0_flat[static_cast<size_t>(2 * i)],
                         x0_flat[static_cast<size_t>(2 * i + 1)]);
    }
    std::vector<double> tg(static_cast<size_t>(std::max(1, t_points)));
    for (size_t i = 0; i < tg.size(); ++i)
        tg[i] = tg.size() == 1 ? 0.0
                               : t_max * static_cast<double>(i) /
                                     (static_cast<double>(tg.size()) - 1.0);
    Trajectory tr = simulate_mean(m, x0, tg);
    CsvWriter csv(out);
    std::vector<std::string> hdr{"t"};
    for (const auto& lbl : m.output_labels) {
        hdr.push_back(lbl + "_re");
        hdr.push_back(lbl + "_im");
    }
    csv.header(hdr);
    for (size_t i = 0; i < tr.t.size(); ++i) {
        std::vector<double> row{tr.t[i]};
        for (Eigen::Index k = 0; k < tr.y[i].size(); ++k) {
            row.push_back(tr.y[i](k).real());
            row.push_back(tr.y[i](k).imag());
        }
        csv.row(row);
    }
    json j{{"model", model}, {"rows", tr.t.size()}, {"output", out}};
    std::cout << j.dump() << '\n';
    return 0;
}

void write_budget(const NoiseBudget& nb, CsvWriter& csv, bool header) {
    if (header)
        csv.header({"omega", "sqrtS_total", "sqrtS_Qd", "sqrtS_Pd", "sqrtS_Q1", "sqrtS_P1",
                    "sqrtS_Q3", "sqrtS_P3", "sqrtS_Q4", "sqrtS_P4", "sqrtSQL"});
    for (size_t i = 0; i < nb.omega.size(); ++i) {
        if (nb.skipped[i]) continue;
        std::vector<double> row{nb.omega[i], std::sqrt(nb.total[i])};
        for (const auto& ch : nb.channel) row.push_back(std::sqrt(ch[i]));
        row.push_back(std::sqrt(nb.sql[i]));
        csv.row(row);
    }
}

int run_gw(const std::string& params_file, const std::string& mode,
           const std::string& channel, std::vector<double> values, const GridSpec& gs,
           bool default_grid, const std::string& out) {
    GwConfig cfg;
    if (!params_file.empty()) cfg = load_gw_config(params_file);
    std::vector<double> grid = default_grid ? default_gw_grid() : gs.make();
    if (mode == "baseline") {
        NoiseBudget nb = baseline_noise(cfg.params, grid);
        CsvWriter csv(out);
        write_budget(nb, csv, true);
        json j{{"mode", mode}, {"rows", nb.omega.size()}, {"output", out}};
        std::cout << j.dump() << '\n';
        return 0;
    }
    if (mode == "controlled") {
        StateSpaceModel m = build_full_system(cfg.params);
        LqgGains gains = lqg_synthesize(m, cfg.weights);
        if (gains.rank_c != 12 || gains.rank_o != 12) {
            json j{{"mode", mode}, {"error", "rank deficiency"},
                   {"rank_c", gains.rank_c}, {"rank_o", gains.rank_o}};
            std::cout << j.dump() << '\n';
            return kExitRank;
        }
        NoiseBudget nb = controlled_noise(m, gains, cfg.params, grid);
        CsvWriter csv(out);
        write_budget(nb, csv, true);
        json j{{"mode", mode},
               {"rank_c", gains.rank_c},
               {"rank_o", gains.rank_o},
               {"care_residual_regulator", gains.residual_reg},
               {"care_residual_estimator", gains.residual_kal},
               {"max_re_eig_Atot", gains.max_re_eig},
               {"stable", gains.max_re_eig < 0.0},
               {"rows", nb.omega.size()},
               {"output", out}};
        std::cout << j.dump() << '\n';
        return 0;
    }
    if (mode == "sweep") {
        LossChannel ch;
        if (channel == "gamma_1loss") ch = LossChannel::Gamma1;
        else if (channel == "kappa_3loss") ch = LossChannel::Kappa3;
        else if (channel == "kappa_4loss") ch = LossChannel::Kappa4;
        else throw std::invalid_argument("sweep channel: gamma_1loss | kappa_3loss | kappa_4loss");
        if (values.empty()) throw std::invalid_argument("sweep needs --values");
        auto entries = loss_sweep(cfg.params, ch, values, grid);
        json summary = json::array();
        for (size_t k = 0; k < entries.size(); ++k) {
            const auto& e = entries[k];
            json je{{"value", e.value}, {"ok", e.ok}};
            if (e.ok) {
                std::string path = out + "." + std::to_string(k) + ".csv";
                CsvWriter csv(path);
                write_budget(e.budget, csv, true);
                je["output"] = path;
            } else {
                je["error"] = e.error;
            }
            summary.push_back(je);
        }
        std::cout << json{{"mode", mode}, {"channel", channel}, {"entries", summary}}.dump()
                  << '\n';
        return 0;
    }
    throw std::invalid_argument("gw modes: baseline | controlled | sweep");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum feedback-amplification network toolkit"};
    app.require_subcommand(1);

    NetOpts net;
    GridSpec grid;
    std::string out = "qfan_out.csv";
    double tol = 1e-8;

    auto* c_check = app.add_subcommand("check", "commutation / unitarity validator");
    add_net(c_check, net, "ndpa cavity-transmission cavity-reflection beamsplitter "
                          "butterworth closed-loop nonreciprocal integrator phase-filter "
                          "matrix-file");
    add_grid(c_check, grid);
    c_check->add_option("--tol", tol, "violation tolerance");

    NetOpts net_b;
    GridSpec grid_b;
    std::string out_b = "qfan_bode.csv";
    auto* c_bode = app.add_subcommand("bode", "gain/phase sweep to CSV");
    add_net(c_bode, net_b, "ndpa cavity-transmission cavity-reflection beamsplitter "
                           "butterworth closed-loop nonreciprocal integrator phase-filter");
    add_grid(c_bode, grid_b);
    c_bode->add_option("--output", out_b, "CSV path");

    NetOpts net_n;
    GridSpec grid_n;
    grid_n.omega_min = 1e-3;
    grid_n.omega_max = 1e3;
    std::string out_n = "qfan_nyquist.csv";
    auto* c_nyq = app.add_subcommand("nyquist", "loop-gain trajectory and verdict");
    add_net(c_nyq, net_n, "differentiator zero");
    add_grid(c_nyq, grid_n);
    c_nyq->add_option("--output", out_n, "CSV path");

    NetOpts net_s;
    net_s.lambda_ = 0.01;
    net_s.kappa = 0.01;
    net_s.c_over_l4 = 10.0;  // c/L4 = 0.1 in units of kappa = 0.01
    std::string model = "self-oscillator", model_file, out_s = "qfan_sim.csv";
    double delta = 1.0, t_max = 100.0;
    int t_points = 500;
    std::vector<double> x0_flat;
    auto* c_sim = app.add_subcommand("simulate", "mean-value trajectories");
    c_sim->add_option("--model", model, "self-oscillator | integrator | custom-file");
    c_sim->add_option("--model-file", model_file, "JSON model for custom-file");
    c_sim->add_option("--delta", delta, "readout detuning");
    c_sim->add_option("--lambda", net_s.lambda_, "pump coupling");
    c_sim->add_option("--gamma-ratio", net_s.gamma_ratio, "gamma / lambda");
    c_sim->add_option("--kappa", net_s.kappa, "readout rate");
    c_sim->add_option("--c-over-l4", net_s.c_over_l4, "loop rate scale (units of kappa)");
    c_sim->add_option("--t-max", t_max, "final time");
    c_sim->add_option("--t-points", t_points, "trajectory length");
    c_sim->add_option("--x0", x0_flat, "initial means, re,im per state");
    c_sim->add_option("--output", out_s, "CSV path");

    std::string gw_params, gw_mode = "baseline", gw_channel, out_g = "qfan_gw.csv";
    std::vector<double> gw_values;
    GridSpec grid_g;
    bool grid_g_touched = false;
    auto* c_gw = app.add_subcommand("gw", "detector noise budgets");
    c_gw->add_option("--params", gw_params, "flat key-value parameter file");
    c_gw->add_option("--mode", gw_mode, "baseline | controlled | sweep");
    c_gw->add_option("--channel", gw_channel, "loss channel for sweep");
    c_gw->add_option("--values", gw_values, "loss values for sweep");
    auto touch = [&grid_g_touched](const std::string&) { grid_g_touched = true; };
    c_gw->add_option("--omega-min", grid_g.omega_min)->each(touch);
    c_gw->add_option("--omega-max", grid_g.omega_max)->each(touch);
    c_gw->add_option("--points", grid_g.points)->each(touch);
    c_gw->add_option("--scale", grid_g.scale)->check(CLI::IsMember({"log", "linear"}))
        ->each(touch);
    c_gw->add_option("--unit", grid_g.unit)
        ->check(CLI::IsMember({"angular", "hertz"}))->each(touch);
    c_gw->add_option("--output", out_g, "CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_check->parsed()) return run_check(net, grid, tol);
        if (c_bode->parsed()) return run_bode(net_b, grid_b, out_b);
        if (c_nyq->parsed()) return run_nyquist(net_n, grid_n, out_n);
        if (c_sim->parsed())
            return run_simulate(net_s, model, model_file, delta, t_max, t_points, x0_flat,
                                out_s);
        if (c_gw->parsed())
            return run_gw(gw_params, gw_mode, gw_channel, gw_values, grid_g,
                          !grid_g_touched, out_g);
    } catch (const PoleError& e) {
        std::cout << json{{"error", e.what()}}.dump() << '\n';
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cout << json{{"error", e.what()}}.dump() << '\n';
        return kExitConfig;
    } catch (const std::runtime_error& e) {
        std::string msg = e.what();
        json j{{"error", msg}};
        std::cout << j.dump() << '\n';
        if (msg.find("CARE") != std::string::npos) return kExitCare;
        if (msg.find("rank") != std::string::npos) return kExitRank;
        return kExitNumeric;
    }
    return kExitConfig;
}
