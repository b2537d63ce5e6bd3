#include "cqed/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "cqed/error.hpp"
#include "cqed/profile.hpp"
#include "cqed/units.hpp"

namespace cqed {

namespace {

using units::hz_to_rad;

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
bool is_set(double v) { return !std::isnan(v); }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, int line) {
    const std::string t = trim(text);
    if (t.empty()) throw ConfigError("empty value", line);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || !std::isfinite(v)) {
        throw ConfigError("not a finite number: '" + t + "'", line);
    }
    return v;
}

int parse_int(const std::string& text, int line) {
    const double v = parse_number(text, line);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw ConfigError("not an integer: '" + trim(text) + "'", line);
    }
    return static_cast<int>(v);
}

bool parse_bool(const std::string& text, int line) {
    const std::string t = trim(text);
    if (t == "true" || t == "yes" || t == "1") return true;
    if (t == "false" || t == "no" || t == "0") return false;
    throw ConfigError("not a boolean: '" + t + "'", line);
}

std::vector<double> parse_list(const std::string& text, int line) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(item, line));
    if (out.empty()) throw ConfigError("empty list", line);
    return out;
}

std::string format17(double v) {
    if (std::isnan(v)) return "NaN";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

PaperDeviceConstants unset_constants() {
    PaperDeviceConstants c;
    c.omega_r_hz = kUnset;
    c.omega_ge_tilde_hz = kUnset;
    c.charging_energy_hz = kUnset;
    c.josephson_energy_max_hz = kUnset;
    c.g_ge_hz = kUnset;
    c.g_ef_hz = kUnset;
    c.chi_hz = kUnset;
    c.chi_ge_hz = kUnset;
    c.chi_ef_hz = kUnset;
    c.zeta_hz = 0.0;
    c.zeta_prime_hz = 0.0;
    c.q_loaded = kUnset;
    c.q_internal = kUnset;
    c.t1_s = kUnset;
    c.gamma_phi_per_s = 0.0;
    c.thermal_ratio = 0.0;
    c.probe_rabi_hz = 0.0;
    c.attenuation_db = 0.0;
    return c;
}

struct AxisDraft {
    std::string name;
    double start = kUnset;
    double stop = kUnset;
    int count = 0;
    int line = 0;
};

// Everything read from the file before it is turned into a RunConfig.
struct Draft {
    std::string profile;
    PaperDeviceConstants c = unset_constants();
    double omega_ge_bare_hz = kUnset;
    bool derive = false;
    bool zeta_given = false;
    int n_fock = 10;
    double kappa_minus = kUnset, kappa_plus = kUnset;
    double gamma_minus = kUnset, gamma_plus = kUnset;
    double coupler_rabi_hz = kUnset;
    double coupler_power_w = kUnset;
    double probe_hz = kUnset;
    double coupler_hz = kUnset;
    AxisDraft axis1, axis2;
    std::string solver = "sparse-lu";
    int n_peaks = 2;
    std::vector<double> rabi_list_hz;
    std::vector<double> power_list_w;
    std::string out_dir = ".";
    std::map<std::string, int> lines;  // "section.key" -> line
};

using Setter = std::function<void(Draft&, const std::string&, int)>;

Setter number_into(double PaperDeviceConstants::*field) {
    return [field](Draft& d, const std::string& v, int line) { d.c.*field = parse_number(v, line); };
}
Setter number_into(double Draft::*field) {
    return [field](Draft& d, const std::string& v, int line) { d.*field = parse_number(v, line); };
}

Setter axis_name(AxisDraft Draft::*axis) {
    return [axis](Draft& d, const std::string& v, int line) {
        const std::string n = trim(v);
        if (n != "omega_s" && n != "omega_d") {
            throw ConfigError("axis must be omega_s or omega_d, got '" + n + "'", line);
        }
        (d.*axis).name = n;
        (d.*axis).line = line;
    };
}

const std::map<std::string, Setter>& schema() {
    using C = PaperDeviceConstants;
    static const std::map<std::string, Setter> s = {
        {"system.profile", [](Draft& d, const std::string& v, int line) {
             const std::string p = trim(v);
             if (p != "paper-device" && p != "none") throw ConfigError("unknown profile '" + p + "'", line);
             d.profile = p == "none" ? "" : p;
         }},
        {"system.omega_r_hz", number_into(&C::omega_r_hz)},
        {"system.omega_ge_tilde_hz", number_into(&C::omega_ge_tilde_hz)},
        {"system.omega_ge_hz", number_into(&Draft::omega_ge_bare_hz)},
        {"system.charging_energy_hz", number_into(&C::charging_energy_hz)},
        {"system.g_ge_hz", number_into(&C::g_ge_hz)},
        {"system.g_ef_hz", number_into(&C::g_ef_hz)},
        {"system.chi_hz", number_into(&C::chi_hz)},
        {"system.chi_ge_hz", number_into(&C::chi_ge_hz)},
        {"system.chi_ef_hz", number_into(&C::chi_ef_hz)},
        {"system.zeta_hz", [](Draft& d, const std::string& v, int line) {
             d.c.zeta_hz = parse_number(v, line);
             d.zeta_given = true;
         }},
        {"system.zeta_prime_hz", [](Draft& d, const std::string& v, int line) {
             d.c.zeta_prime_hz = parse_number(v, line);
             d.zeta_given = true;
         }},
        {"system.derive", [](Draft& d, const std::string& v, int line) { d.derive = parse_bool(v, line); }},
        {"system.n_fock", [](Draft& d, const std::string& v, int line) { d.n_fock = parse_int(v, line); }},

        {"dissipation.q_loaded", number_into(&C::q_loaded)},
        {"dissipation.q_internal", number_into(&C::q_internal)},
        {"dissipation.t1_s", number_into(&C::t1_s)},
        {"dissipation.gamma_phi_per_s", number_into(&C::gamma_phi_per_s)},
        {"dissipation.thermal_ratio", number_into(&C::thermal_ratio)},
        {"dissipation.kappa_minus_per_s", number_into(&Draft::kappa_minus)},
        {"dissipation.kappa_plus_per_s", number_into(&Draft::kappa_plus)},
        {"dissipation.gamma_minus_per_s", number_into(&Draft::gamma_minus)},
        {"dissipation.gamma_plus_per_s", number_into(&Draft::gamma_plus)},

        {"drive.probe_rabi_hz", number_into(&C::probe_rabi_hz)},
        {"drive.coupler_rabi_hz", number_into(&Draft::coupler_rabi_hz)},
        {"drive.coupler_power_w", number_into(&Draft::coupler_power_w)},
        {"drive.probe_hz", number_into(&Draft::probe_hz)},
        {"drive.coupler_hz", number_into(&Draft::coupler_hz)},
        {"drive.attenuation_db", number_into(&C::attenuation_db)},

        {"sweep.axis1", axis_name(&Draft::axis1)},
        {"sweep.axis1_start_hz", [](Draft& d, const std::string& v, int l) { d.axis1.start = parse_number(v, l); }},
        {"sweep.axis1_stop_hz", [](Draft& d, const std::string& v, int l) { d.axis1.stop = parse_number(v, l); }},
        {"sweep.axis1_points", [](Draft& d, const std::string& v, int l) { d.axis1.count = parse_int(v, l); }},
        {"sweep.axis2", axis_name(&Draft::axis2)},
        {"sweep.axis2_start_hz", [](Draft& d, const std::string& v, int l) { d.axis2.start = parse_number(v, l); }},
        {"sweep.axis2_stop_hz", [](Draft& d, const std::string& v, int l) { d.axis2.stop = parse_number(v, l); }},
        {"sweep.axis2_points", [](Draft& d, const std::string& v, int l) { d.axis2.count = parse_int(v, l); }},
        {"sweep.solver", [](Draft& d, const std::string& v, int line) {
             const std::string s = trim(v);
             if (s != "sparse-lu" && s != "dense-lu") throw ConfigError("unknown solver '" + s + "'", line);
             d.solver = s;
         }},
        {"sweep.n_peaks", [](Draft& d, const std::string& v, int l) { d.n_peaks = parse_int(v, l); }},
        {"sweep.coupler_rabi_list_hz", [](Draft& d, const std::string& v, int l) { d.rabi_list_hz = parse_list(v, l); }},
        {"sweep.coupler_power_list_w", [](Draft& d, const std::string& v, int l) { d.power_list_w = parse_list(v, l); }},

        {"output.dir", [](Draft& d, const std::string& v, int line) {
             d.out_dir = trim(v);
             if (d.out_dir.empty()) throw ConfigError("empty output directory", line);
         }},
    };
    return s;
}

const std::set<std::string> kSections = {"system", "dissipation", "drive", "sweep", "output"};

int line_of(const Draft& d, const std::string& key) {
    const auto it = d.lines.find(key);
    return it == d.lines.end() ? 0 : it->second;
}

void require(const Draft& d, double v, const std::string& key) {
    if (!is_set(v)) {
        throw ConfigError("missing required key " + key +
                          " (set it or use --profile paper-device)", line_of(d, key));
    }
}

Axis finish_axis(const Draft& d, const AxisDraft& a, const std::string& prefix) {
    require(d, a.start, "sweep." + prefix + "_start_hz");
    require(d, a.stop, "sweep." + prefix + "_stop_hz");
    if (a.count < 2) throw ConfigError("sweep." + prefix + "_points must be >= 2", line_of(d, "sweep." + prefix + "_points"));
    if (!(a.start < a.stop)) throw ConfigError("sweep." + prefix + " needs start < stop", line_of(d, "sweep." + prefix + "_stop_hz"));
    return Axis{a.name, a.start, a.stop, a.count};
}

RunConfig finish(Draft& d) {
    RunConfig rc;
    rc.profile = d.profile;
    const PaperDeviceConstants& c = d.c;

    require(d, c.omega_r_hz, "system.omega_r_hz");
    require(d, c.omega_ge_tilde_hz, "system.omega_ge_tilde_hz");
    require(d, c.charging_energy_hz, "system.charging_energy_hz");
    require(d, c.g_ge_hz, "system.g_ge_hz");
    require(d, c.g_ef_hz, "system.g_ef_hz");
    // Derivation from a given bare qubit frequency does not need chi_ge.
    if (!(d.derive && is_set(d.omega_ge_bare_hz))) require(d, c.chi_ge_hz, "system.chi_ge_hz");
    if (!d.derive) {
        require(d, c.chi_hz, "system.chi_hz");
        require(d, c.chi_ef_hz, "system.chi_ef_hz");
    }
    require(d, c.q_loaded, "dissipation.q_loaded");
    require(d, c.q_internal, "dissipation.q_internal");
    require(d, c.t1_s, "dissipation.t1_s");
    if (d.n_fock < 2) throw ConfigError("system.n_fock must be >= 2", line_of(d, "system.n_fock"));

    try {
        SystemParams p = paper_device_params(c);
        if (d.derive) {
            BareDevice bare = paper_bare_device(c);
            if (is_set(d.omega_ge_bare_hz)) {
                bare.omega_ge = hz_to_rad(d.omega_ge_bare_hz);
                bare.omega_ef = bare.omega_ge - hz_to_rad(c.charging_energy_hz);
            }
            SystemParams derived = derive_params(bare, p.rates);
            if (d.zeta_given) {
                derived.zeta = p.zeta;
                derived.zeta_prime = p.zeta_prime;
            }
            p = derived;
        }
        if (is_set(d.kappa_minus)) p.rates.kappa_minus = d.kappa_minus;
        if (is_set(d.kappa_plus)) p.rates.kappa_plus = d.kappa_plus;
        if (is_set(d.gamma_minus)) p.rates.gamma_minus = d.gamma_minus;
        if (is_set(d.gamma_plus)) p.rates.gamma_plus = d.gamma_plus;
        rc.params = p;
        rc.params.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        int line = 0;
        for (const char* k : {"dissipation.kappa_plus_per_s", "dissipation.gamma_plus_per_s",
                              "dissipation.kappa_minus_per_s", "dissipation.gamma_minus_per_s",
                              "dissipation.thermal_ratio", "dissipation.t1_s", "dissipation.q_loaded"}) {
            if (line_of(d, k) != 0) { line = line_of(d, k); break; }
        }
        throw ConfigError(e.what(), line);
    }
    rc.warnings = rc.params.warnings;
    rc.space = SpaceConfig{d.n_fock, 2};

    const auto dressed = rc.params.dressed();
    try {
        const double kappa = rc.params.omega_r / c.q_loaded;
        rc.calibration = CalibrationParams::from_quality(c.q_loaded, c.q_internal, kappa,
                                                         dressed.omega_r_tilde, c.attenuation_db);
        rc.calibration.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what(), line_of(d, "dissipation.q_internal"));
    }

    if (is_set(d.coupler_rabi_hz) && is_set(d.coupler_power_w)) {
        throw ConfigError("set drive.coupler_rabi_hz or drive.coupler_power_w, not both",
                          line_of(d, "drive.coupler_power_w"));
    }
    if (is_set(d.coupler_power_w) && d.coupler_power_w < 0) {
        throw ConfigError("coupler power must be >= 0", line_of(d, "drive.coupler_power_w"));
    }
    rc.drive.Omega_s = hz_to_rad(c.probe_rabi_hz);
    rc.drive.Omega_d = is_set(d.coupler_rabi_hz) ? hz_to_rad(d.coupler_rabi_hz)
                       : is_set(d.coupler_power_w) ? rabi_from_power(d.coupler_power_w, rc.calibration)
                                                   : 0.0;
    rc.drive.omega_s = is_set(d.probe_hz) ? hz_to_rad(d.probe_hz) : dressed.omega_ge_tilde;
    rc.drive.omega_d = is_set(d.coupler_hz) ? hz_to_rad(d.coupler_hz) : rc.coupler_resonance();
    try {
        rc.drive.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what(), line_of(d, "drive.probe_rabi_hz"));
    }

    if (!d.axis1.name.empty()) rc.axis1 = finish_axis(d, d.axis1, "axis1");
    if (!d.axis2.name.empty()) {
        if (!rc.axis1) throw ConfigError("sweep.axis2 given without sweep.axis1", d.axis2.line);
        if (d.axis2.name == d.axis1.name) throw ConfigError("both axes sweep " + d.axis1.name, d.axis2.line);
        rc.axis2 = finish_axis(d, d.axis2, "axis2");
    }
    rc.solver = d.solver == "dense-lu" ? SolverKind::DenseLU : SolverKind::SparseLU;
    if (d.n_peaks < 1) throw ConfigError("sweep.n_peaks must be >= 1", line_of(d, "sweep.n_peaks"));
    rc.n_peaks = d.n_peaks;

    if (!d.rabi_list_hz.empty() && !d.power_list_w.empty()) {
        throw ConfigError("set sweep.coupler_rabi_list_hz or sweep.coupler_power_list_w, not both",
                          line_of(d, "sweep.coupler_power_list_w"));
    }
    for (double hz : d.rabi_list_hz) {
        if (hz < 0) throw ConfigError("negative Rabi frequency in list", line_of(d, "sweep.coupler_rabi_list_hz"));
        rc.coupler_rabi_list.push_back(hz_to_rad(hz));
    }
    for (double w : d.power_list_w) {
        if (w < 0) throw ConfigError("negative power in list", line_of(d, "sweep.coupler_power_list_w"));
        rc.coupler_power_list.push_back(w);
    }
    rc.out_dir = d.out_dir;
    return rc;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& profile_override) {
    Draft d;
    // The profile decides the defaults, so find it before applying any key.
    struct Entry {
        std::string key;
        std::string value;
        int line;
    };
    std::vector<Entry> entries;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const auto hash = s.find_first_of("#;");
        if (hash != std::string::npos) s.erase(hash);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw ConfigError("malformed section header '" + s + "'", line);
            section = trim(s.substr(1, s.size() - 2));
            if (!kSections.count(section)) throw ConfigError("unknown section [" + section + "]", line);
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value, got '" + s + "'", line);
        if (section.empty()) throw ConfigError("key outside of any section", line);
        const std::string key = section + "." + trim(s.substr(0, eq));
        if (!schema().count(key)) {
            throw ConfigError("unknown key '" + trim(s.substr(0, eq)) + "' in [" + section + "]", line);
        }
        if (d.lines.count(key)) {
            throw ConfigError("duplicate key '" + key + "' (first on line " +
                              std::to_string(d.lines[key]) + ")", line);
        }
        d.lines[key] = line;
        entries.push_back({key, s.substr(eq + 1), line});
    }

    for (const Entry& e : entries) {
        if (e.key == "system.profile") schema().at(e.key)(d, e.value, e.line);
    }
    if (!profile_override.empty()) {
        if (profile_override != "paper-device") {
            throw ConfigError("unknown profile '" + profile_override + "'", 0);
        }
        d.profile = profile_override;
    }
    if (d.profile == "paper-device") d.c = kPaperDevice;
    for (const Entry& e : entries) {
        if (e.key != "system.profile") schema().at(e.key)(d, e.value, e.line);
    }
    return finish(d);
}

RunConfig load_config(const std::filesystem::path& path, const std::string& profile_override) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path.string() + "'", 0);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), profile_override);
}

std::string canonical_parameters(const RunConfig& config) {
    const SystemParams& p = config.params;
    std::ostringstream os;
    auto put = [&os](const char* k, double v) { os << k << '=' << format17(v) << '\n'; };
    put("omega_r", p.omega_r);
    put("omega_ge", p.omega_ge);
    put("omega_ef", p.omega_ef);
    put("g_ge", p.g_ge);
    put("g_ef", p.g_ef);
    put("chi_ge", p.chi_ge);
    put("chi_ef", p.chi_ef);
    put("chi", p.chi);
    put("zeta", p.zeta);
    put("zeta_prime", p.zeta_prime);
    put("kappa_minus", p.rates.kappa_minus);
    put("kappa_plus", p.rates.kappa_plus);
    put("gamma_minus", p.rates.gamma_minus);
    put("gamma_plus", p.rates.gamma_plus);
    put("gamma_phi", p.rates.gamma_phi);
    put("omega_s", config.drive.omega_s);
    put("omega_d", config.drive.omega_d);
    put("Omega_s", config.drive.Omega_s);
    put("Omega_d", config.drive.Omega_d);
    os << "n_fock=" << config.space.n_fock << '\n';
    os << "solver=" << to_string(config.solver) << '\n';
    return os.str();
}

std::string parameters_hash(const RunConfig& config) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : canonical_parameters(config)) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace cqed
