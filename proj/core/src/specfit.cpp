#include "cqed/specfit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>
#include <unsupported/Eigen/LevenbergMarquardt>

#include "cqed/analytic.hpp"
#include "cqed/error.hpp"
#include "cqed/units.hpp"

namespace cqed {

namespace {

constexpr double kInvTwoPi = 0.5 / std::numbers::pi;

// Parameter layout: [baseline, (center, log width, log area) per peak], all in
// the scaled coordinates u = (x - x0) / sx, v = (y - y0) / sy.
struct LorentzianSum : Eigen::DenseFunctor<double> {
    LorentzianSum(const Eigen::VectorXd& u, const Eigen::VectorXd& v, int peaks)
        : Eigen::DenseFunctor<double>(1 + 3 * peaks, static_cast<int>(u.size())),
          u_(u), v_(v), peaks_(peaks) {}

    int operator()(const InputType& p, ValueType& f) const {
        f = Eigen::VectorXd::Constant(u_.size(), p(0)) - v_;
        for (int k = 0; k < peaks_; ++k) {
            const double c = p(1 + 3 * k);
            const double w = std::exp(p(2 + 3 * k));
            const double a = std::exp(p(3 + 3 * k));
            for (Eigen::Index i = 0; i < u_.size(); ++i) {
                const double dx = u_(i) - c;
                f(i) += a * w * kInvTwoPi / (dx * dx + 0.25 * w * w);
            }
        }
        return 0;
    }

    int df(const InputType& p, JacobianType& jac) const {
        jac.setZero(u_.size(), 1 + 3 * peaks_);
        jac.col(0).setOnes();
        for (int k = 0; k < peaks_; ++k) {
            const double c = p(1 + 3 * k);
            const double w = std::exp(p(2 + 3 * k));
            const double a = std::exp(p(3 + 3 * k));
            for (Eigen::Index i = 0; i < u_.size(); ++i) {
                const double dx = u_(i) - c;
                const double den = dx * dx + 0.25 * w * w;
                const double value = a * w * kInvTwoPi / den;
                jac(i, 1 + 3 * k) = value * 2.0 * dx / den;
                // d/d(log w) = w * dL/dw, dL/dw = a/(2 pi) (den - w^2/2) / den^2
                jac(i, 2 + 3 * k) = w * a * kInvTwoPi * (den - 0.5 * w * w) / (den * den);
                jac(i, 3 + 3 * k) = value;
            }
        }
        return 0;
    }

private:
    Eigen::VectorXd u_;
    Eigen::VectorXd v_;
    int peaks_;
};

bool converged(Eigen::LevenbergMarquardtSpace::Status s) {
    using namespace Eigen::LevenbergMarquardtSpace;
    switch (s) {
        case RelativeReductionTooSmall:
        case RelativeErrorTooSmall:
        case RelativeErrorAndReductionTooSmall:
        case CosinusTooSmall:
        case FtolTooSmall:
        case XtolTooSmall:
        case GtolTooSmall:
            return true;
        default:
            return false;
    }
}

struct Seed {
    double center;  // scaled
    double width;   // scaled FWHM
    double area;    // scaled
};

// FWHM estimate by walking outwards from a maximum to half height.
double half_width_estimate(std::span<const double> v, std::size_t peak, double baseline,
                           double dx) {
    const double half = baseline + 0.5 * (v[peak] - baseline);
    std::size_t lo = peak;
    while (lo > 0 && v[lo] > half) --lo;
    std::size_t hi = peak;
    while (hi + 1 < v.size() && v[hi] > half) ++hi;
    const double w = static_cast<double>(hi - lo) * dx;
    return std::max(w, 2.0 * dx);
}

struct Attempt {
    Eigen::VectorXd params;
    double rms = 0.0;
    int evaluations = 0;
    bool ok = false;
    Eigen::LevenbergMarquardtSpace::Status status{};
};

Attempt run_lm(const LorentzianSum& functor, const std::vector<Seed>& seeds, double baseline) {
    Eigen::VectorXd p(1 + 3 * static_cast<Eigen::Index>(seeds.size()));
    p(0) = baseline;
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        p(1 + 3 * k) = seeds[k].center;
        p(2 + 3 * k) = std::log(seeds[k].width);
        p(3 + 3 * k) = std::log(std::max(seeds[k].area, 1e-12));
    }
    LorentzianSum f = functor;
    Eigen::LevenbergMarquardt<LorentzianSum> lm(f);
    lm.setMaxfev(kMaxFitEvaluations);
    lm.setXtol(1e-13);
    lm.setFtol(1e-15);
    lm.setGtol(0.0);
    Attempt a;
    a.status = lm.minimize(p);
    a.evaluations = static_cast<int>(lm.nfev());
    Eigen::VectorXd residual(functor.values());
    functor(p, residual);
    a.params = p;
    a.rms = std::sqrt(residual.squaredNorm() / static_cast<double>(residual.size()));
    a.ok = converged(a.status) && p.allFinite() && std::isfinite(a.rms);
    return a;
}

}  // namespace

double lorentzian(double x, double center, double fwhm, double area) noexcept {
    const double dx = x - center;
    return area * fwhm * kInvTwoPi / (dx * dx + 0.25 * fwhm * fwhm);
}

double PeakFit::evaluate(double x_hz) const noexcept {
    double y = baseline;
    for (std::size_t k = 0; k < size(); ++k) {
        y += lorentzian(x_hz, centers_hz[k], widths_hz[k], areas[k]);
    }
    return y;
}

std::vector<double> synthesize(const PeakFit& fit, std::span<const double> x_hz) {
    std::vector<double> y;
    y.reserve(x_hz.size());
    for (double x : x_hz) y.push_back(fit.evaluate(x));
    return y;
}

std::vector<Extremum> local_maxima(std::span<const double> y, double min_prominence_fraction) {
    std::vector<Extremum> out;
    if (y.size() < 3) return out;
    const auto [lo_it, hi_it] = std::minmax_element(y.begin(), y.end());
    const double range = *hi_it - *lo_it;
    if (!(range > 0.0)) return out;

    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (!(y[i] > y[i - 1])) continue;
        // Plateaus count once, at their left edge.
        std::size_t j = i;
        while (j + 1 < y.size() && y[j + 1] == y[i]) ++j;
        if (j + 1 >= y.size() || !(y[j + 1] < y[i])) continue;

        // Prominence: height above the higher of the two minima reached before
        // climbing above this peak on either side.
        double left_min = y[i];
        for (std::size_t k = i; k-- > 0;) {
            if (y[k] > y[i]) break;
            left_min = std::min(left_min, y[k]);
        }
        double right_min = y[i];
        for (std::size_t k = j + 1; k < y.size(); ++k) {
            if (y[k] > y[i]) break;
            right_min = std::min(right_min, y[k]);
        }
        const double prominence = y[i] - std::max(left_min, right_min);
        if (prominence >= min_prominence_fraction * range) out.push_back({i, prominence});
        i = j;
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Extremum& a, const Extremum& b) { return a.prominence > b.prominence; });
    return out;
}

PeakFit fit_lorentzians(std::span<const double> x_hz, std::span<const double> y, int n_peaks,
                        const FitOptions& options) {
    if (n_peaks < 1) throw FitError("n_peaks must be >= 1");
    if (x_hz.size() != y.size()) throw FitError("x and y lengths differ");
    if (x_hz.size() < 5) throw FitError("need at least 5 points to fit");
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!std::isfinite(y[i]) || !std::isfinite(x_hz[i])) {
            throw FitError("trace contains non-finite values at index " + std::to_string(i));
        }
    }

    const double x0 = 0.5 * (x_hz.front() + x_hz.back());
    const double sx = 0.5 * std::abs(x_hz.back() - x_hz.front());
    const auto [ymin_it, ymax_it] = std::minmax_element(y.begin(), y.end());
    const double y0 = *ymin_it;
    const double sy = *ymax_it - *ymin_it > 0 ? *ymax_it - *ymin_it : 1.0;

    const Eigen::Index m = static_cast<Eigen::Index>(x_hz.size());
    Eigen::VectorXd u(m), v(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        u(i) = (x_hz[static_cast<std::size_t>(i)] - x0) / sx;
        v(i) = (y[static_cast<std::size_t>(i)] - y0) / sy;
    }
    const double du = std::abs(u(1) - u(0));
    std::span<const double> vs(v.data(), static_cast<std::size_t>(m));

    // Seeds: given centers or the strongest local maxima.
    std::vector<std::size_t> seed_index;
    if (options.seeds_hz) {
        for (double c : *options.seeds_hz) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < x_hz.size(); ++i) {
                if (std::abs(x_hz[i] - c) < std::abs(x_hz[best] - c)) best = i;
            }
            seed_index.push_back(best);
        }
        if (static_cast<int>(seed_index.size()) > n_peaks) seed_index.resize(n_peaks);
    } else {
        for (const Extremum& e : local_maxima(vs, 1e-6)) {
            if (static_cast<int>(seed_index.size()) == n_peaks) break;
            seed_index.push_back(e.index);
        }
    }
    if (seed_index.empty()) throw FitError("no local maximum to seed the fit");

    const double base_seed = 0.0;  // v is shifted so its minimum is 0
    std::vector<Seed> seeds;
    for (std::size_t idx : seed_index) {
        const double w = half_width_estimate(vs, idx, base_seed, du);
        const double height = std::max(vs[idx] - base_seed, 1e-6);
        seeds.push_back({u(static_cast<Eigen::Index>(idx)), w, height * std::numbers::pi * w / 2.0});
    }

    const LorentzianSum functor(u, v, static_cast<int>(seeds.size()));
    std::vector<Attempt> attempts;
    attempts.push_back(run_lm(functor, seeds, base_seed));
    if (!attempts.back().ok) {
        // Deterministic perturbations: narrower, wider, shifted.
        for (int r = 0; r < kFitRestarts; ++r) {
            std::vector<Seed> perturbed = seeds;
            for (Seed& s : perturbed) {
                if (r == 0) s.width *= 0.5;
                if (r == 1) s.width *= 2.0;
                if (r == 2) s.center += 0.25 * s.width;
            }
            attempts.push_back(run_lm(functor, perturbed, base_seed));
            if (attempts.back().ok) break;
        }
    }

    const Attempt* best = nullptr;
    int total_evaluations = 0;
    for (const Attempt& a : attempts) {
        total_evaluations += a.evaluations;
        if (a.ok && (!best || a.rms < best->rms)) best = &a;
    }
    if (!best) {
        std::ostringstream os;
        os << "Lorentzian fit did not converge after " << attempts.size() << " starts (last status "
           << static_cast<int>(attempts.back().status) << ", rms " << attempts.back().rms * sy
           << ")";
        throw FitError(os.str());
    }

    PeakFit fit;
    fit.baseline = y0 + best->params(0) * sy;
    fit.goodness = best->rms * sy;
    fit.evaluations = total_evaluations;
    fit.starts = static_cast<int>(attempts.size());
    std::vector<std::size_t> order(seeds.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return best->params(1 + 3 * a) < best->params(1 + 3 * b);
    });
    for (std::size_t k : order) {
        fit.centers_hz.push_back(x0 + best->params(1 + 3 * k) * sx);
        fit.widths_hz.push_back(std::exp(best->params(2 + 3 * k)) * sx);
        fit.areas.push_back(std::exp(best->params(3 + 3 * k)) * sx * sy);
    }

    const double dx_hz = std::abs(x_hz[1] - x_hz[0]);
    for (std::size_t k = 0; k < fit.size(); ++k) {
        if (fit.widths_hz[k] < 5.0 * dx_hz) {
            std::ostringstream os;
            os << "peak " << k << " has fewer than 5 points per linewidth";
            fit.warnings.push_back(os.str());
        }
        for (std::size_t j = k + 1; j < fit.size(); ++j) {
            const double w = std::max(fit.widths_hz[k], fit.widths_hz[j]);
            if (std::abs(fit.centers_hz[j] - fit.centers_hz[k]) < 0.25 * w) {
                std::ostringstream os;
                os << "peaks " << k << " and " << j << " closer than 1/4 linewidth (degenerate)";
                fit.warnings.push_back(os.str());
            }
        }
    }
    return fit;
}

PeakFit fit_lorentzians(const SpectrumTrace& trace, int n_peaks, const FitOptions& options) {
    if (trace.failed() > 0) {
        throw FitError("trace has " + std::to_string(trace.failed()) + " failed points");
    }
    const std::vector<double> x = trace.axis.values();
    return fit_lorentzians(x, trace.signal, n_peaks, options);
}

std::string to_string(Distribution d) {
    switch (d) {
        case Distribution::Thermal: return "thermal";
        case Distribution::Coherent: return "coherent";
        case Distribution::Mixed: return "mixed";
    }
    return "unknown";
}

namespace {

double total_variation(std::span<const double> w, const std::vector<double>& model) {
    double sum = 0.0;
    double model_mass = 0.0;
    for (std::size_t n = 0; n < model.size(); ++n) {
        const double wn = n < w.size() ? w[n] : 0.0;
        sum += std::abs(wn - model[n]);
        model_mass += model[n];
    }
    for (std::size_t n = model.size(); n < w.size(); ++n) sum += w[n];
    sum += std::max(0.0, 1.0 - model_mass);  // model tail beyond the table
    return 0.5 * sum;
}

}  // namespace

Distribution classify_weights(std::span<const double> weights, double nbar,
                              double* poisson_distance, double* thermal_distance) {
    const int n_max = std::max(static_cast<int>(weights.size()) + 10,
                               static_cast<int>(std::ceil(nbar + 12.0 * std::sqrt(nbar + 1.0))));
    const double dp = total_variation(weights, poisson_weights(nbar, n_max));
    const double dt = total_variation(weights, thermal_weights(nbar, n_max));
    if (poisson_distance) *poisson_distance = dp;
    if (thermal_distance) *thermal_distance = dt;
    const bool poisson_ok = dp <= kDistributionTolerance;
    const bool thermal_ok = dt <= kDistributionTolerance;
    // When both fit (small n_bar) the data cannot tell them apart; the
    // undriven assumption is thermal.
    if (thermal_ok) return Distribution::Thermal;
    if (poisson_ok) return Distribution::Coherent;
    return Distribution::Mixed;
}

PhotonStats photon_stats(const PeakFit& fit, double chi, double omega_ge_tilde, double omega_photon) {
    if (fit.size() == 0) throw AssignmentError("no peaks to assign");
    if (chi == 0.0) throw AssignmentError("chi = 0: photon-number peaks are degenerate");
    const double chi_hz = units::rad_to_hz(chi);
    const double ge_hz = units::rad_to_hz(omega_ge_tilde);

    std::vector<double> raw;
    for (std::size_t k = 0; k < fit.size(); ++k) {
        const double slot = (fit.centers_hz[k] - ge_hz) / (2.0 * chi_hz);
        const long n = std::lround(slot);
        const double residual_hz = std::abs(fit.centers_hz[k] - (ge_hz + 2.0 * chi_hz * n));
        if (n < 0 || residual_hz >= std::abs(chi_hz) / 2.0) {
            std::ostringstream os;
            os << "peak at " << fit.centers_hz[k] << " Hz is not near any w_ge + 2 chi n (n >= 0)";
            throw AssignmentError(os.str());
        }
        if (raw.size() <= static_cast<std::size_t>(n)) raw.resize(static_cast<std::size_t>(n) + 1, 0.0);
        raw[static_cast<std::size_t>(n)] += fit.areas[k];
    }

    PhotonStats s;
    double total = 0.0;
    for (double a : raw) total += a;
    if (!(total > 0.0)) throw AssignmentError("fitted peak areas sum to zero");
    for (double a : raw) s.weights.push_back(a / total);
    s.nbar = nbar_from_weights(s.weights);

    const double w0 = s.weights[0];
    const double w1 = s.weights.size() > 1 ? s.weights[1] : 0.0;
    s.n_th = w0 > 0 ? w1 / w0 : std::numeric_limits<double>::infinity();
    if (w1 == 0.0) {
        s.t_eff_kelvin = 0.0;
        s.t_eff_is_lower_bound = true;
    } else if (w0 > 0.0 && w1 < w0) {
        s.t_eff_kelvin = units::hbar * omega_photon / (units::k_boltzmann * std::log(w0 / w1));
    } else {
        s.t_eff_kelvin = std::numeric_limits<double>::quiet_NaN();
    }
    s.classification = classify_weights(s.weights, s.nbar, &s.poisson_distance, &s.thermal_distance);
    return s;
}

}  // namespace cqed
