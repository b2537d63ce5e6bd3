#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "cqed/commands.hpp"
#include "cqed/config.hpp"
#include "cqed/error.hpp"
#include "cqed/profile.hpp"
#include "cqed/units.hpp"

using namespace cqed;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("cqed_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int config_error_line(const std::string& text) {
    try {
        parse_config(text, "paper-device");
    } catch (const ConfigError& e) {
        return e.line();
    }
    return -1;
}

const char* kSmallMap = R"(
[system]
n_fock = 6
[sweep]
axis1 = omega_s
axis1_start_hz = 4.970e9
axis1_stop_hz = 4.985e9
axis1_points = 2
axis2 = omega_d
axis2_start_hz = 5.46e9
axis2_stop_hz = 5.48e9
axis2_points = 2
)";

}  // namespace

TEST_CASE("empty config with the profile reproduces the device parameters") {
    const RunConfig rc = parse_config("", "paper-device");
    const SystemParams p = paper_device_params();
    CHECK(rc.params.omega_r == p.omega_r);
    CHECK(rc.params.chi == p.chi);
    CHECK(rc.params.zeta_prime == p.zeta_prime);
    CHECK(rc.params.rates.kappa_plus == p.rates.kappa_plus);
    CHECK(rc.space == SpaceConfig{10, 2});
    CHECK(rc.drive.Omega_s == doctest::Approx(units::hz_to_rad(0.3e6)));
    CHECK(rc.drive.Omega_d == 0.0);
    CHECK(rc.drive.omega_s == p.dressed().omega_ge_tilde);
    CHECK(units::rad_to_hz(rc.photon_frequency()) == doctest::Approx(5.474e9).epsilon(1e-9));
    CHECK_FALSE(rc.axis1);
}

TEST_CASE("profile can come from the file") {
    const RunConfig rc = parse_config("[system]\nprofile = paper-device\n");
    CHECK(rc.profile == "paper-device");
}

TEST_CASE("values are converted from Hz once") {
    const RunConfig rc = parse_config("[drive]\nprobe_hz = 4.9e9\ncoupler_rabi_hz = 1e6\n", "paper-device");
    CHECK(rc.drive.omega_s == doctest::Approx(2 * M_PI * 4.9e9).epsilon(1e-15));
    CHECK(rc.drive.Omega_d == doctest::Approx(2 * M_PI * 1e6).epsilon(1e-15));
}

TEST_CASE("coupler power is converted with the calibration") {
    const RunConfig rc = parse_config("[drive]\ncoupler_power_w = 38e-18\n", "paper-device");
    CHECK(units::rad_to_hz(rc.drive.Omega_d) == doctest::Approx(0.53e6).epsilon(0.02));
}

TEST_CASE("config errors carry the offending line") {
    CHECK(config_error_line("[system]\n\nomega_rr_hz = 5e9\n") == 3);
    CHECK(config_error_line("[system]\n[bogus]\n") == 2);
    CHECK(config_error_line("omega_r_hz = 5e9\n") == 1);
    CHECK(config_error_line("[system]\nomega_r_hz = 5e9\nomega_r_hz = 6e9\n") == 3);
    CHECK(config_error_line("[system]\nomega_r_hz = five\n") == 2);
    CHECK(config_error_line("[system]\nn_fock = 2.5\n") == 2);
    CHECK(config_error_line("[sweep]\naxis1 = omega_q\n") == 2);
    CHECK(config_error_line("[sweep]\nsolver = magic\n") == 2);
    CHECK(config_error_line("[system]\nomega_r_hz = 5e9 # comment\n") == -1);
}

TEST_CASE("excitation faster than decay is rejected") {
    CHECK(config_error_line("[dissipation]\nkappa_minus_per_s = 1e6\nkappa_plus_per_s = 2e6\n") == 3);
}

TEST_CASE("without a profile every device key is required") {
    CHECK_THROWS_AS(parse_config(""), ConfigError);
    CHECK_THROWS_AS(parse_config("", "lab-device"), ConfigError);
    const std::string full = R"(
[system]
omega_r_hz = 6e9
omega_ge_tilde_hz = 5e9
charging_energy_hz = 300e6
g_ge_hz = 50e6
g_ef_hz = 70e6
chi_hz = -1e6
chi_ge_hz = -2.5e6
chi_ef_hz = -3e6
[dissipation]
q_loaded = 10000
q_internal = 100000
t1_s = 10e-6
)";
    const RunConfig rc = parse_config(full);
    CHECK(rc.params.chi == doctest::Approx(units::hz_to_rad(-1e6)));
    CHECK(rc.params.zeta == 0.0);
    CHECK(rc.params.rates.kappa_plus == 0.0);
}

TEST_CASE("derived dispersive parameters on request") {
    const RunConfig rc = parse_config("[system]\nderive = true\n", "paper-device");
    CHECK(rc.params.chi_ge == doctest::Approx(units::hz_to_rad(-10.38e6)).epsilon(0.01));
    CHECK(rc.params.zeta != units::hz_to_rad(23e3));
    const RunConfig kept = parse_config("[system]\nderive = true\nzeta_hz = 23e3\nzeta_prime_hz = 85e3\n", "paper-device");
    CHECK(kept.params.zeta == doctest::Approx(units::hz_to_rad(23e3)));
}

TEST_CASE("strong coupling surfaces a dispersive-validity warning") {
    const RunConfig rc = parse_config("[system]\nderive = true\ng_ge_hz = 236e6\n", "paper-device");
    REQUIRE_FALSE(rc.warnings.empty());
    bool flagged = false;
    for (const ValidationCheck& c : validation_checks(rc)) {
        if (c.name == "dispersive_validity") flagged = true;
    }
    CHECK(flagged);
}

TEST_CASE("parameter hash tracks every parameter") {
    const RunConfig a = parse_config("", "paper-device");
    const RunConfig b = parse_config("[dissipation]\ngamma_phi_per_s = 2.1e5\n", "paper-device");
    CHECK(parameters_hash(a) == parameters_hash(parse_config("", "paper-device")));
    CHECK(parameters_hash(a) != parameters_hash(b));
    CHECK(parameters_hash(a).size() == 16);
}

TEST_CASE("floats are written with round-trip precision") {
    for (double v : {0.1, 1.0 / 3.0, 4.982e9, -1e-300, 2.0 * M_PI}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(std::nan("")) == "NaN");
}

TEST_CASE("2x2 map smoke test") {
    RunConfig rc = parse_config(kSmallMap, "paper-device");
    rc.out_dir = scratch("map");
    std::ostringstream log;
    cmd_map2d(rc, 2, log);
    std::istringstream csv(slurp(rc.out_dir / "map.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "omega_s_hz,omega_d_hz,signal");
    std::vector<std::pair<double, double>> pts;
    while (std::getline(csv, line)) {
        std::stringstream ss(line);
        std::string a, b;
        std::getline(ss, a, ',');
        std::getline(ss, b, ',');
        pts.emplace_back(std::stod(a), std::stod(b));
    }
    REQUIRE(pts.size() == 4);
    CHECK(pts[0].first == pts[1].first);
    CHECK(pts[0].second < pts[1].second);
    CHECK(pts[1].first < pts[2].first);
    const std::string meta = slurp(rc.out_dir / "map.meta");
    CHECK(meta.find("failed_points=0\n") != std::string::npos);
    CHECK(meta.find("params_hash=" + parameters_hash(rc)) != std::string::npos);
}

TEST_CASE("outputs are byte-identical across runs and worker counts") {
    RunConfig rc = parse_config(kSmallMap, "paper-device");
    rc.out_dir = scratch("det_a");
    std::ostringstream log;
    cmd_map2d(rc, 1, log);
    const std::string first = slurp(rc.out_dir / "map.csv");
    rc.out_dir = scratch("det_b");
    cmd_map2d(rc, 3, log);
    CHECK(first == slurp(rc.out_dir / "map.csv"));
    CHECK(first.find('\r') == std::string::npos);
}

TEST_CASE("validate passes at the device parameters") {
    RunConfig rc = parse_config("", "paper-device");
    rc.out_dir = scratch("validate");
    std::ostringstream log;
    CHECK(cmd_validate(rc, 1, log));
    CHECK(log.str().find(",fail,") == std::string::npos);
    CHECK(fs::exists(rc.out_dir / "validate.csv"));
}

TEST_CASE("validate flags a resonator filled past the truncation") {
    // A resonant 1 MHz coupler leaves ~1e-5 of the population in the top
    // Fock level at n_fock = 10; the n_fock + 4 comparison picks that up.
    RunConfig rc = parse_config("[drive]\ncoupler_rabi_hz = 1e6\n", "paper-device");
    rc.out_dir = scratch("validate_trunc");
    std::ostringstream log;
    CHECK_FALSE(cmd_validate(rc, 1, log));
    CHECK(log.str().find("truncation,fail,") != std::string::npos);
    rc = parse_config("[system]\nn_fock = 18\n[drive]\ncoupler_rabi_hz = 1e6\n", "paper-device");
    CHECK(cmd_validate(rc, 1, log));
}

TEST_CASE("spectrum with no dissipation explains the failure") {
    RunConfig rc = parse_config(R"(
[dissipation]
kappa_minus_per_s = 0
kappa_plus_per_s = 0
gamma_minus_per_s = 0
gamma_plus_per_s = 0
gamma_phi_per_s = 0
[sweep]
axis1 = omega_s
axis1_start_hz = 4.97e9
axis1_stop_hz = 4.99e9
axis1_points = 5
)", "paper-device");
    rc.out_dir = scratch("zero");
    std::ostringstream log;
    try {
        cmd_spectrum(rc, 1, log);
        FAIL("expected a numerical error");
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()).find("dissipation") != std::string::npos);
    }
}

TEST_CASE("splitting curve needs a list of drive strengths") {
    RunConfig rc = parse_config("", "paper-device");
    CHECK_THROWS_AS(splitting_curve(rc, 1), ConfigError);
    CHECK(config_error_line("[sweep]\ncoupler_rabi_list_hz = 1e6, x\n") == 2);
    const RunConfig listed = parse_config("[sweep]\ncoupler_power_list_w = 1e-18, 4e-18\n", "paper-device");
    CHECK(listed.coupler_power_list.size() == 2);
}
