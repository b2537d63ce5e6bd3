#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cqed/grid.hpp"

namespace cqed {

// Area-normalized Lorentzian: area * (w / 2 pi) / ((x - c)^2 + (w / 2)^2),
// with w the full width at half maximum.
double lorentzian(double x, double center, double fwhm, double area) noexcept;

struct PeakFit {
    std::vector<double> centers_hz;
    std::vector<double> widths_hz;  // FWHM
    std::vector<double> areas;      // signal units x Hz
    double baseline = 0.0;
    double goodness = 0.0;          // residual RMS
    int evaluations = 0;
    int starts = 1;
    std::vector<std::string> warnings;

    std::size_t size() const noexcept { return centers_hz.size(); }
    double evaluate(double x_hz) const noexcept;
};

// Baseline plus the sum of the fitted Lorentzians on the grid `x_hz`.
std::vector<double> synthesize(const PeakFit& fit, std::span<const double> x_hz);

inline constexpr int kMaxFitEvaluations = 500;
inline constexpr int kFitRestarts = 3;

struct FitOptions {
    // Initial centers; defaults to the n_peaks strongest local maxima.
    std::optional<std::vector<double>> seeds_hz;
};

// Least-squares fit of baseline + sum of at most n_peaks Lorentzians.
// Throws FitError if no start converges within the evaluation budget.
PeakFit fit_lorentzians(std::span<const double> x_hz, std::span<const double> y, int n_peaks,
                        const FitOptions& options = {});
PeakFit fit_lorentzians(const SpectrumTrace& trace, int n_peaks, const FitOptions& options = {});

// Local maxima of y, strongest prominence first. Maxima whose prominence is
// below `min_prominence_fraction` of the full signal range are dropped.
struct Extremum {
    std::size_t index;
    double prominence;
};
std::vector<Extremum> local_maxima(std::span<const double> y, double min_prominence_fraction);

enum class Distribution { Thermal, Coherent, Mixed };
std::string to_string(Distribution d);

struct PhotonStats {
    std::vector<double> weights;  // normalized, indexed by photon number
    double nbar = 0.0;
    double n_th = 0.0;            // w_1 / w_0
    double t_eff_kelvin = 0.0;
    bool t_eff_is_lower_bound = false;  // no n = 1 peak: only T_eff >= 0 is known
    Distribution classification = Distribution::Thermal;
    double poisson_distance = 0.0;      // total-variation distances
    double thermal_distance = 0.0;
};

// Total-variation distance below which a candidate distribution is accepted.
inline constexpr double kDistributionTolerance = 0.05;

// Assign each fitted peak to the photon number n = round((c - w_ge~)/2 chi),
// turn the areas into normalized weights and derive n_bar, n_th = w_1/w_0 and
// T_eff from w_1 / w_0 = exp(-hbar w_photon / k_B T).
// `chi`, `omega_ge_tilde` and `omega_photon` are angular frequencies.
// Throws AssignmentError when a peak sits more than |chi|/2 from its slot.
PhotonStats photon_stats(const PeakFit& fit, double chi, double omega_ge_tilde,
                         double omega_photon);

// Distribution label from weights alone (used by photon_stats).
Distribution classify_weights(std::span<const double> weights, double nbar,
                              double* poisson_distance = nullptr,
                              double* thermal_distance = nullptr);

}  // namespace cqed
