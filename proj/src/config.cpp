#include "vho/config.hpp"

#include "vho/bundled.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace vho {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    if (trim(s).empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(trim(item));
    }
    return out;
}

double parse_real(const std::string& s)
{
    if (s.empty()) throw std::invalid_argument("empty value");
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE) {
        throw std::invalid_argument("'" + s + "' is not a number");
    }
    return x;
}

std::uint64_t parse_count(const std::string& s)
{
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("'" + s + "' is not a non-negative integer");
    }
    errno = 0;
    const unsigned long long x = std::strtoull(s.c_str(), nullptr, 10);
    if (errno == ERANGE) throw std::invalid_argument("'" + s + "' is out of range");
    return x;
}

bool parse_bool(const std::string& s)
{
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw std::invalid_argument("'" + s + "' is not a boolean (true/false)");
}

std::vector<double> parse_reals(const std::string& s)
{
    std::vector<double> out;
    for (const auto& item : split_list(s)) out.push_back(parse_real(item));
    return out;
}

std::vector<FixedThreshold> parse_thresholds(const std::string& s)
{
    std::vector<FixedThreshold> out;
    for (const auto& item : split_list(s)) {
        if (item == "adaptive") {
            out.push_back({true, 0.0});
        } else {
            out.push_back({false, parse_real(item)});
        }
    }
    return out;
}

std::string real17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string reals17(const std::vector<double>& xs)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out += (i ? ", " : "") + real17(xs[i]);
    }
    return out;
}

std::string thresholds17(const std::vector<FixedThreshold>& xs)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out += (i ? ", " : "") + (xs[i].adaptive ? std::string("adaptive") : real17(xs[i].dbm));
    }
    return out;
}

struct Key {
    const char* section;
    const char* name;
    std::function<void(Scenario&, const std::string&)> set;
    std::function<std::string(const Scenario&)> get;
};

#define VHO_REAL(sec, field, path)                                                  \
    Key{sec, field, [](Scenario& s, const std::string& v) { s.path = parse_real(v); }, \
        [](const Scenario& s) { return real17(s.path); }}

const std::vector<Key>& keys()
{
    static const std::vector<Key> table = {
        VHO_REAL("cell", "mean_radius", cell.mean_radius),
        VHO_REAL("cell", "sigma_radius", cell.sigma_radius),
        VHO_REAL("cell", "tx_power_dbm", cell.tx_power_dbm),
        VHO_REAL("cell", "ref_distance", cell.ref_distance),
        VHO_REAL("cell", "ref_path_loss_db", cell.ref_path_loss_db),
        VHO_REAL("cell", "path_loss_exponent", cell.path_loss_exponent),
        VHO_REAL("cell", "shadow_sigma_db", cell.shadow_sigma_db),
        VHO_REAL("mobility", "v_min", mobility.v_min),
        VHO_REAL("mobility", "v_max", mobility.v_max),
        VHO_REAL("mobility", "r1", mobility.r1),
        VHO_REAL("mobility", "r2", mobility.r2),
        VHO_REAL("latency", "tau_a", budget.tau_a),
        VHO_REAL("latency", "tau_d", budget.tau_d),
        VHO_REAL("latency", "tau_b", budget.tau_b),
        VHO_REAL("latency", "delta", budget.delta),
        VHO_REAL("trigger", "p_break_target", trigger.p_break_target),
        VHO_REAL("trigger", "channel_adjustment", trigger.channel_adjustment),
        VHO_REAL("trigger", "chi", trigger.chi),
        VHO_REAL("trigger", "data_rate", trigger.data_rate),
        VHO_REAL("trigger", "d_a", d_a),
        Key{"sweep", "parameter",
            [](Scenario& s, const std::string& v) { s.sweep.parameter = parse_sweep_parameter(v); },
            [](const Scenario& s) { return to_string(s.sweep.parameter); }},
        Key{"sweep", "values", [](Scenario& s, const std::string& v) { s.sweep.values = parse_reals(v); },
            [](const Scenario& s) { return reals17(s.sweep.values); }},
        Key{"sweep", "trials_per_point",
            [](Scenario& s, const std::string& v) { s.sweep.trials_per_point = parse_count(v); },
            [](const Scenario& s) { return std::to_string(s.sweep.trials_per_point); }},
        Key{"sweep", "seed", [](Scenario& s, const std::string& v) { s.sweep.seed = parse_count(v); },
            [](const Scenario& s) { return std::to_string(s.sweep.seed); }},
        Key{"sweep", "equal_radii", [](Scenario& s, const std::string& v) { s.sweep.equal_radii = parse_bool(v); },
            [](const Scenario& s) { return std::string(s.sweep.equal_radii ? "true" : "false"); }},
        Key{"sweep", "threads",
            [](Scenario& s, const std::string& v) {
                const auto n = parse_count(v);
                if (n > 4096) throw std::invalid_argument("at most 4096 threads");
                s.sweep.threads = static_cast<unsigned>(n);
            },
            [](const Scenario& s) { return std::to_string(s.sweep.threads); }},
        VHO_REAL("sweep", "velocity", sweep.velocity),
        VHO_REAL("sweep", "target_pu", sweep.target_pu),
        VHO_REAL("sweep", "target_pf", sweep.target_pf),
        Key{"sweep", "p_break_targets",
            [](Scenario& s, const std::string& v) { s.sweep.p_break_targets = parse_reals(v); },
            [](const Scenario& s) { return reals17(s.sweep.p_break_targets); }},
        Key{"sweep", "fixed_thresholds",
            [](Scenario& s, const std::string& v) { s.sweep.fixed_thresholds = parse_thresholds(v); },
            [](const Scenario& s) { return thresholds17(s.sweep.fixed_thresholds); }},
        Key{"sweep", "calibration_samples",
            [](Scenario& s, const std::string& v) { s.sweep.calibration_samples = parse_count(v); },
            [](const Scenario& s) { return std::to_string(s.sweep.calibration_samples); }},
        VHO_REAL("gra", "zeta", gra.zeta),
        Key{"gra", "zeta_sweep", [](Scenario& s, const std::string& v) { s.gra.zeta_sweep = parse_reals(v); },
            [](const Scenario& s) { return reals17(s.gra.zeta_sweep); }},
    };
    return table;
}

#undef VHO_REAL

const std::vector<std::string>& sections()
{
    static const std::vector<std::string> names = {"cell", "mobility", "latency", "trigger", "sweep", "gra"};
    return names;
}

[[noreturn]] void fail_at(const std::string& source, int line, const std::string& what)
{
    throw std::invalid_argument(source + ":" + std::to_string(line) + ": " + what);
}

} // namespace

Scenario parse_scenario(std::string_view text, const std::string& source, ConfigMode mode)
{
    Scenario s = mode == ConfigMode::Overlay ? default_scenario() : Scenario{};
    std::set<std::pair<std::string, std::string>> seen;
    std::string section;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') fail_at(source, line_no, "malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (std::find(sections().begin(), sections().end(), section) == sections().end()) {
                fail_at(source, line_no, "unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail_at(source, line_no, "expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) fail_at(source, line_no, "key '" + key + "' appears before any section");

        const auto it = std::find_if(keys().begin(), keys().end(),
            [&](const Key& k) { return section == k.section && key == k.name; });
        if (it == keys().end()) fail_at(source, line_no, "unknown key '" + key + "' in [" + section + "]");
        if (!seen.insert({section, key}).second) {
            fail_at(source, line_no, "duplicate key '" + key + "' in [" + section + "]");
        }
        try {
            it->set(s, value);
        } catch (const std::invalid_argument& e) {
            fail_at(source, line_no, "[" + section + "] " + key + ": " + e.what());
        }
    }

    if (mode == ConfigMode::Strict) {
        std::string missing;
        const Scenario defaults;
        for (const auto& k : keys()) {
            if (!seen.count({k.section, k.name})) {
                missing += std::string(missing.empty() ? "" : ", ") + "[" + k.section + "] " + k.name +
                    " (default " + k.get(defaults) + ")";
            }
        }
        if (!missing.empty()) {
            throw std::invalid_argument(source + ": missing required keys: " + missing);
        }
    }

    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(source + ": " + e.what());
    }
    return s;
}

std::string read_text_file(const std::string& path, const char* what)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error(std::string("cannot open ") + what + " '" + path + "'");
    }
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

Scenario load_scenario(const std::string& path, ConfigMode mode)
{
    return parse_scenario(read_text_file(path, "config file"), path, mode);
}

std::string dump_scenario(const Scenario& scenario)
{
    std::ostringstream os;
    for (const auto& sec : sections()) {
        if (&sec != &sections().front()) os << '\n';
        os << '[' << sec << "]\n";
        for (const auto& k : keys()) {
            if (sec == k.section) os << k.name << " = " << k.get(scenario) << '\n';
        }
    }
    return os.str();
}

const Scenario& default_scenario()
{
    static const Scenario s = parse_scenario(bundled::default_scenario_ini(), "<bundled default_scenario.ini>",
        ConfigMode::Strict);
    return s;
}

} // namespace vho
