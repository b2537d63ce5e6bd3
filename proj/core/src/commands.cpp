#include "cqed/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cqed/analytic.hpp"
#include "cqed/error.hpp"
#include "cqed/units.hpp"

namespace cqed {

namespace {

using units::hz_to_rad;
using units::rad_to_hz;

std::ofstream open_output(const RunConfig& config, const std::string& name) {
    std::filesystem::create_directories(config.out_dir);
    const std::filesystem::path path = config.out_dir / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path.string() + "'");
    return f;
}

SweepPlan base_plan(const RunConfig& config) {
    SweepPlan plan;
    plan.fixed = config.drive;
    plan.params = config.params;
    plan.space = config.space;
    plan.solver = config.solver;
    return plan;
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& log) {
    for (const std::string& w : warnings) log << "warning: " << w << '\n';
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "NaN";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Axis default_spectrum_axis(const RunConfig& config, int points) {
    const double ge = rad_to_hz(config.params.dressed().omega_ge_tilde);
    const double chi = rad_to_hz(config.params.chi);
    const double last = ge + 2.0 * chi * (config.n_peaks - 1);
    const double margin = 2.0 * std::abs(chi);
    const double lo = std::min({ge - 15e6, ge - margin, last - margin});
    const double hi = std::max({ge + 15e6, ge + margin, last + margin});
    return Axis{"omega_s", lo, hi, points};
}

Axis splitting_window(const RunConfig& config, double Omega_d, int points) {
    const SystemParams& p = config.params;
    const double center = rad_to_hz(p.dressed().omega_ge_tilde + 2.0 * p.chi + 2.0 * p.zeta);
    const double delta = rad_to_hz(at_splitting(config.drive.Omega_s, Omega_d));
    const double half = std::max(2e6, 1.5 * delta);
    return Axis{"omega_s", center - half, center + half, points};
}

std::vector<SplittingPoint> splitting_curve(const RunConfig& config, int workers) {
    std::vector<double> rabi = config.coupler_rabi_list;
    std::vector<double> power;
    if (rabi.empty()) {
        for (double w : config.coupler_power_list) {
            rabi.push_back(rabi_from_power(w, config.calibration));
            power.push_back(w);
        }
    } else {
        for (double r : rabi) power.push_back(power_from_rabi(r, config.calibration));
    }
    if (rabi.empty()) {
        throw ConfigError("splitting-curve needs sweep.coupler_rabi_list_hz or "
                          "sweep.coupler_power_list_w", 0);
    }

    std::vector<SplittingPoint> out;
    for (std::size_t i = 0; i < rabi.size(); ++i) {
        SplittingPoint pt;
        pt.omega_d_rabi_hz = rad_to_hz(rabi[i]);
        pt.v_rf_volts = rms_voltage(power[i]);
        pt.gap_hz_analytic = rad_to_hz(at_splitting(config.drive.Omega_s, rabi[i]));

        SweepPlan plan = base_plan(config);
        plan.fixed.Omega_d = rabi[i];
        plan.axis1 = config.axis1 ? *config.axis1 : splitting_window(config, rabi[i]);
        try {
            pt.gap_hz_simulated = extract_gap(run_spectrum(plan, workers)).gap_hz;
        } catch (const NumericalError& e) {
            pt.gap_hz_simulated = std::numeric_limits<double>::quiet_NaN();
            pt.note = e.what();
        }
        out.push_back(pt);
    }
    return out;
}

void cmd_spectrum(const RunConfig& config, int workers, std::ostream& log) {
    SweepPlan plan = base_plan(config);
    if (config.axis2) throw ConfigError("spectrum takes a single axis; use map2d for two", 0);
    if (config.axis1 && config.axis1->name != "omega_s") {
        throw ConfigError("spectrum sweeps omega_s, got axis1 = " + config.axis1->name, 0);
    }
    plan.axis1 = config.axis1 ? *config.axis1 : default_spectrum_axis(config);

    const SpectrumTrace trace = run_spectrum(plan, workers);
    {
        std::ofstream f = open_output(config, "spectrum.csv");
        f << "omega_s_hz,signal,residual\n";
        for (std::size_t i = 0; i < trace.size(); ++i) {
            f << format_double(trace.axis.at(static_cast<int>(i))) << ','
              << format_double(trace.signal[i]) << ',' << format_double(trace.residual[i]) << '\n';
        }
    }

    const PeakFit fit = fit_lorentzians(trace, config.n_peaks);
    const PhotonStats stats = photon_stats(fit, config.params.chi,
                                           config.params.dressed().omega_ge_tilde,
                                           config.photon_frequency());
    {
        std::ofstream f = open_output(config, "peaks.csv");
        f << "field,index,value\n";
        const auto row = [&f](const char* field, std::size_t index, const std::string& value) {
            f << field << ',' << index << ',' << value << '\n';
        };
        for (std::size_t k = 0; k < fit.size(); ++k) {
            row("center_hz", k, format_double(fit.centers_hz[k]));
            row("width_hz", k, format_double(fit.widths_hz[k]));
            row("area", k, format_double(fit.areas[k]));
        }
        row("baseline", 0, format_double(fit.baseline));
        row("goodness", 0, format_double(fit.goodness));
        row("evaluations", 0, std::to_string(fit.evaluations));
        for (std::size_t n = 0; n < stats.weights.size(); ++n) {
            row("weight", n, format_double(stats.weights[n]));
        }
        row("nbar", 0, format_double(stats.nbar));
        row("n_th", 0, format_double(stats.n_th));
        row("t_eff_kelvin", 0, format_double(stats.t_eff_kelvin));
        row("t_eff_lower_bound", 0, stats.t_eff_is_lower_bound ? "1" : "0");
        row("classification", 0, to_string(stats.classification));
        row("poisson_distance", 0, format_double(stats.poisson_distance));
        row("thermal_distance", 0, format_double(stats.thermal_distance));
    }

    print_warnings(config.warnings, log);
    print_warnings(fit.warnings, log);
    log << "spectrum: " << trace.size() << " points, " << trace.failed() << " failed\n";
    log << "  peak  center [MHz]      width [MHz]  area\n";
    for (std::size_t k = 0; k < fit.size(); ++k) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "  %-4zu  %-16.6f  %-11.4f  %.4g\n", k,
                      fit.centers_hz[k] * 1e-6, fit.widths_hz[k] * 1e-6, fit.areas[k]);
        log << buf;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "  nbar %.4f  n_th %.4f  T_eff %.1f mK  %s\n", stats.nbar,
                  stats.n_th, stats.t_eff_kelvin * 1e3, to_string(stats.classification).c_str());
    log << buf;
}

void cmd_map2d(const RunConfig& config, int workers, std::ostream& log) {
    if (!config.axis1 || !config.axis2) {
        throw ConfigError("map2d needs sweep.axis1 and sweep.axis2", 0);
    }
    SweepPlan plan = base_plan(config);
    plan.axis1 = *config.axis1;
    plan.axis2 = *config.axis2;
    const Map2D map = run_map(plan, workers);

    const bool s_outer = map.axis1.name == "omega_s";
    {
        std::ofstream f = open_output(config, "map.csv");
        f << "omega_s_hz,omega_d_hz,signal\n";
        for (int i1 = 0; i1 < map.axis1.count; ++i1) {
            for (int i2 = 0; i2 < map.axis2.count; ++i2) {
                const double ws = s_outer ? map.axis1.at(i1) : map.axis2.at(i2);
                const double wd = s_outer ? map.axis2.at(i2) : map.axis1.at(i1);
                f << format_double(ws) << ',' << format_double(wd) << ','
                  << format_double(map.at(i1, i2)) << '\n';
            }
        }
    }
    {
        std::ofstream f = open_output(config, "map.meta");
        for (const Axis* a : {&map.axis1, &map.axis2}) {
            const std::string p = a == &map.axis1 ? "axis1" : "axis2";
            f << p << '=' << a->name << '\n';
            f << p << "_start_hz=" << format_double(a->start_hz) << '\n';
            f << p << "_stop_hz=" << format_double(a->stop_hz) << '\n';
            f << p << "_points=" << a->count << '\n';
        }
        f << "order=row-major,axis1-outer\n";
        f << "params_hash=" << parameters_hash(config) << '\n';
        f << "failed_points=" << map.failed() << '\n';
        // Loci omega_s + n omega_d = const of the |g,0> <-> |e,n> sidebands.
        const DressedFrequencies fr = config.params.dressed();
        for (int n = 1; n <= 2; ++n) {
            f << "sideband_n" << n << "_sum_hz="
              << format_double(rad_to_hz(fr.omega_ge_tilde + n * (fr.omega_r_tilde + config.params.chi)))
              << '\n';
        }
        std::istringstream params(canonical_parameters(config));
        std::string line;
        while (std::getline(params, line)) f << "param." << line << '\n';
    }

    print_warnings(config.warnings, log);
    log << "map2d: " << map.axis1.count << " x " << map.axis2.count << " points, " << map.failed()
        << " failed, params " << parameters_hash(config) << '\n';
    for (std::size_t k = 0; k < map.errors.size(); ++k) {
        if (!map.errors[k].empty()) log << "  point " << k << ": " << map.errors[k] << '\n';
    }
}

void cmd_splitting_curve(const RunConfig& config, int workers, std::ostream& log) {
    const std::vector<SplittingPoint> points = splitting_curve(config, workers);
    {
        std::ofstream f = open_output(config, "splitting.csv");
        f << "omega_d_rabi_hz,v_rf_volts,gap_hz_simulated,gap_hz_analytic\n";
        for (const SplittingPoint& p : points) {
            f << format_double(p.omega_d_rabi_hz) << ',' << format_double(p.v_rf_volts) << ','
              << format_double(p.gap_hz_simulated) << ',' << format_double(p.gap_hz_analytic) << '\n';
        }
    }
    print_warnings(config.warnings, log);
    log << "  Omega_d [MHz]  V_rf [V]      gap sim [MHz]  gap analytic [MHz]\n";
    for (const SplittingPoint& p : points) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "  %-13.4f  %-12.4e  %-13.4f  %.4f%s%s\n",
                      p.omega_d_rabi_hz * 1e-6, p.v_rf_volts, p.gap_hz_simulated * 1e-6,
                      p.gap_hz_analytic * 1e-6, p.note.empty() ? "" : "  unresolved: ",
                      p.note.c_str());
        log << buf;
    }
}

std::vector<ValidationCheck> validation_checks(const RunConfig& config) {
    std::vector<ValidationCheck> checks;
    const SystemParams& params = config.params;
    const SpaceConfig& space = config.space;

    const auto guarded = [&checks](const std::string& name, double tol, auto&& body) {
        ValidationCheck c{name, false, std::numeric_limits<double>::quiet_NaN(), tol, {}};
        try {
            body(c);
        } catch (const std::exception& e) {
            c.passed = false;
            c.detail = e.what();
        }
        checks.push_back(c);
    };

    guarded("trace_functional", 1e-12, [&](ValidationCheck& c) {
        const Liouvillian L = build_liouvillian(params, config.drive, space);
        const Matrix dense = L.dense();
        const int d = space.dim();
        Eigen::RowVectorXcd functional = Eigen::RowVectorXcd::Zero(dense.rows());
        for (int k = 0; k < d; ++k) functional(k + d * k) = 1.0;
        c.value = (functional * dense).cwiseAbs().maxCoeff() / dense.cwiseAbs().maxCoeff();
        c.passed = c.value < c.tolerance;
        c.detail = "relative to max |L|";
    });

    guarded("steady_state_invariants", kPositivityTolerance, [&](ValidationCheck& c) {
        const SteadyState ss = steady_state(build_liouvillian(params, config.drive, space));
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (ss.rho + ss.rho.adjoint()));
        c.value = -std::min(0.0, es.eigenvalues().minCoeff());
        c.passed = true;
        c.detail = "hermiticity, trace and positivity hold";
    });

    guarded("solver_agreement", 1e-8, [&](ValidationCheck& c) {
        const Liouvillian L = build_liouvillian(params, config.drive, space);
        const SteadyState a = steady_state(L, SolverKind::SparseLU);
        const SteadyState b = steady_state(L, SolverKind::DenseLU);
        c.value = (a.rho - b.rho).cwiseAbs().maxCoeff();
        c.passed = c.value < c.tolerance;
        c.detail = "max |rho_sparse - rho_dense|";
    });

    guarded("detailed_balance_resonator", 1e-8, [&](ValidationCheck& c) {
        DriveSpec off = config.drive;
        off.Omega_s = off.Omega_d = 0.0;
        const SteadyState ss = steady_state(build_liouvillian(params, off, space));
        const std::vector<double> p = ss.fock_populations(space);
        const double ratio = params.rates.kappa_plus / params.rates.kappa_minus;
        c.value = 0.0;
        for (int n = 0; n <= std::min(6, space.n_fock - 2); ++n) {
            if (p[n] <= 0) continue;
            c.value = std::max(c.value, std::abs(p[n + 1] / p[n] - ratio));
        }
        c.passed = c.value < c.tolerance;
        c.detail = "max |p(n+1)/p(n) - kappa_+/kappa_-|";
    });

    guarded("detailed_balance_qubit", 1e-8, [&](ValidationCheck& c) {
        DriveSpec off = config.drive;
        off.Omega_s = off.Omega_d = 0.0;
        const SteadyState ss = steady_state(build_liouvillian(params, off, space));
        const double pe = ss.excited_population(space);
        c.value = std::abs(pe / (1.0 - pe) - params.rates.gamma_plus / params.rates.gamma_minus);
        c.passed = c.value < c.tolerance;
        c.detail = "|p_e/p_g - Gamma_+/Gamma_-|";
    });

    guarded("truncation", 1e-8, [&](ValidationCheck& c) {
        const SpaceConfig larger{space.n_fock + 4, space.n_qubit};
        const double a = steady_state(build_liouvillian(params, config.drive, space)).sigma_z();
        const double b = steady_state(build_liouvillian(params, config.drive, larger)).sigma_z();
        c.value = std::abs(a - b);
        c.passed = c.value < c.tolerance;
        c.detail = "|<sigma_z>| change for n_fock + 4";
    });

    guarded("dispersive_stark_shift", 0.1, [&](ValidationCheck& c) {
        const BareDevice bare{params.omega_r, params.omega_ge, params.omega_ef, params.g_ge,
                              params.g_ef};
        const SystemParams derived = derive_params(bare, params.rates);
        const std::vector<double> f = exact_qubit_frequencies(params, 12, 1);
        c.value = std::abs((f[1] - f[0]) / (2.0 * derived.chi) - 1.0);
        c.passed = c.value < c.tolerance;
        c.detail = "exact per-photon shift vs 2 chi";
    });

    guarded("four_level_gap", 1e-12, [&](ValidationCheck& c) {
        FourLevelParams p{-2.0 * params.chi, -params.chi, params.chi, config.drive.Omega_s,
                          config.drive.Omega_d};
        const double delta = at_splitting(p.Omega_s, p.Omega_d);
        if (delta == 0.0) {
            c.value = 0.0;
            c.passed = true;
            c.detail = "no drive";
            return;
        }
        c.value = std::abs(dressed_pair_gap(four_level_spectrum(p)) / delta - 1.0);
        c.passed = c.value < c.tolerance;
        c.detail = "gap at double resonance vs sqrt(Omega_d^2 + Omega_s^2)";
    });

    guarded("calibration", 0.01, [&](ValidationCheck& c) {
        const CalibrationParams& cal = config.calibration;
        c.value = std::abs((1.0 / cal.q_internal + 1.0 / cal.q_coupling) * cal.q_loaded - 1.0);
        cal.validate();
        c.passed = true;
        c.detail = "1/Q_L = 1/Q_I + 1/Q_C";
    });

    for (const std::string& w : config.warnings) {
        checks.push_back({"dispersive_validity", true, 0.0, kDispersiveLambdaLimit, "warning: " + w});
    }
    return checks;
}

bool cmd_validate(const RunConfig& config, int /*workers*/, std::ostream& log) {
    const std::vector<ValidationCheck> checks = validation_checks(config);
    std::ostringstream csv;
    csv << "check,status,value,tolerance,detail\n";
    bool all = true;
    for (const ValidationCheck& c : checks) {
        std::string detail = c.detail;
        std::replace(detail.begin(), detail.end(), ',', ';');
        std::replace(detail.begin(), detail.end(), '\n', ' ');
        const bool warn = detail.rfind("warning: ", 0) == 0;
        csv << c.name << ',' << (c.passed ? (warn ? "warn" : "pass") : "fail") << ','
            << format_double(c.value) << ',' << format_double(c.tolerance) << ',' << detail << '\n';
        all = all && c.passed;
    }
    log << csv.str();
    std::ofstream f = open_output(config, "validate.csv");
    f << csv.str();
    return all;
}

}  // namespace cqed
