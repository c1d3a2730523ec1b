#include "vho/cli.hpp"

#include "vho/bundled.hpp"
#include "vho/sim.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace vho {

namespace {

namespace fs = std::filesystem;

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string> split_list(const std::string& s, const char* flag)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw std::invalid_argument(std::string(flag) + ": empty list entry");
        out.push_back(item);
    }
    if (out.empty()) throw std::invalid_argument(std::string(flag) + ": empty list");
    return out;
}

double to_real(const std::string& s, const char* flag)
{
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) {
        throw std::invalid_argument(std::string(flag) + ": '" + s + "' is not a number");
    }
    return x;
}

void write_file(const std::string& path, const std::string& content)
{
    const fs::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(p.parent_path(), ec);
    }
    std::ofstream f(path, std::ios::binary);
    f << content;
    f.close();
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
}

std::string sibling_path(const std::string& path, const std::string& suffix)
{
    fs::path p(path);
    const auto ext = p.extension().string();
    p.replace_filename(p.stem().string() + suffix + (ext.empty() ? ".csv" : ext));
    return p.string();
}

struct Common {
    std::optional<std::uint64_t> seed;
};

struct ScenarioArgs {
    std::string config;
    bool strict = false;
};

Scenario load(const ScenarioArgs& a, const Common& c)
{
    Scenario s = a.config.empty() ? default_scenario()
                                  : load_scenario(a.config, a.strict ? ConfigMode::Strict : ConfigMode::Overlay);
    if (c.seed) s.sweep.seed = *c.seed;
    return s;
}

void warn_all(std::ostream& err, const std::vector<std::string>& warnings)
{
    for (const auto& w : warnings) err << "warning: " << w << '\n';
}

void add_scenario_args(CLI::App* cmd, ScenarioArgs& a)
{
    cmd->add_option("config", a.config, "Scenario file layered over the bundled defaults");
    cmd->add_flag("--strict", a.strict, "Require every key in the scenario file");
}

std::string four(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

void print_grid(std::ostream& os, const std::string& title, const gra::DecisionMatrix& m, const gra::Grid& g)
{
    std::size_t w0 = 8;
    for (const auto& a : m.alternatives()) w0 = std::max(w0, a.size());
    os << title << '\n';
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-*s", static_cast<int>(w0), "network");
    os << buf;
    for (const auto& a : m.attributes()) {
        std::snprintf(buf, sizeof buf, "  %10s", a.name.c_str());
        os << buf;
    }
    os << '\n';
    for (std::size_t i = 0; i < g.rows(); ++i) {
        std::snprintf(buf, sizeof buf, "%-*s", static_cast<int>(w0), m.alternatives()[i].c_str());
        os << buf;
        for (std::size_t j = 0; j < g.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "  %10.4f", g(i, j));
            os << buf;
        }
        os << '\n';
    }
}

std::vector<std::size_t> ranks_of(const std::vector<std::size_t>& ranking)
{
    std::vector<std::size_t> rank(ranking.size());
    for (std::size_t pos = 0; pos < ranking.size(); ++pos) rank[ranking[pos]] = pos + 1;
    return rank;
}

Scenario with_trials(Scenario s, std::optional<std::uint64_t> trials)
{
    if (trials) s.sweep.trials_per_point = *trials;
    return s;
}

} // namespace

const std::vector<std::string>& figure_ids()
{
    static const std::vector<std::string> ids = {"4a", "4b", "4c", "4d", "4e1", "4e", "4f"};
    return ids;
}

Table gra_zeta_table(const gra::DecisionMatrix& matrix, const std::vector<double>& zetas)
{
    Table t;
    t.header = {"zeta", "alternative", "grade", "rank"};
    for (double z : zetas) {
        const auto r = gra::rank(matrix, z);
        const auto rank = ranks_of(r.ranking);
        for (std::size_t i = 0; i < r.grades.size(); ++i) {
            t.rows.push_back({z, matrix.alternatives()[i], r.grades[i], static_cast<std::int64_t>(rank[i])});
        }
    }
    return t;
}

Table gra_result_table(const gra::DecisionMatrix& matrix, const gra::GraResult& result)
{
    Table t;
    t.header = {"alternative", "grade", "rank"};
    for (const auto& a : matrix.attributes()) t.header.push_back("normalized_" + a.name);
    for (const auto& a : matrix.attributes()) t.header.push_back("coefficient_" + a.name);
    const auto rank = ranks_of(result.ranking);
    for (std::size_t i = 0; i < result.grades.size(); ++i) {
        std::vector<Cell> row{matrix.alternatives()[i], result.grades[i], static_cast<std::int64_t>(rank[i])};
        for (std::size_t j = 0; j < result.normalized.cols(); ++j) row.emplace_back(result.normalized(i, j));
        for (std::size_t j = 0; j < result.coefficients.cols(); ++j) row.emplace_back(result.coefficients(i, j));
        t.rows.push_back(std::move(row));
    }
    return t;
}

void print_gra_report(std::ostream& os, const gra::DecisionMatrix& matrix, const gra::GraResult& result)
{
    print_grid(os, "Normalized decision matrix", matrix, result.normalized);
    os << '\n';
    print_grid(os, "Grey relational coefficients", matrix, result.coefficients);
    os << "\nGrey relational grades\n";
    const auto rank = ranks_of(result.ranking);
    std::size_t w0 = 8;
    for (const auto& a : matrix.alternatives()) w0 = std::max(w0, a.size());
    char buf[128];
    for (std::size_t i = 0; i < result.grades.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%-*s  %s  rank %zu\n", static_cast<int>(w0), matrix.alternatives()[i].c_str(),
            four(result.grades[i]).c_str(), rank[i]);
        os << buf;
    }
    os << "\nRanking: ";
    for (std::size_t pos = 0; pos < result.ranking.size(); ++pos) {
        os << (pos ? " > " : "") << matrix.alternatives()[result.ranking[pos]];
    }
    os << '\n';
}

std::vector<std::pair<std::string, Table>> figure_tables(const std::string& id, const Scenario& scenario)
{
    if (id == "4a" || id == "4b") {
        const auto t = run_hne_sweep(scenario).table();
        if (id == "4a") {
            return {{"fig4a.csv", t.select({"velocity", "n_threshold", "n_closed_form", "pu_design", "pu", "pu_stderr", "pu_joint",
                                      "pu_joint_stderr", "trials", "pu_attempts", "unnecessary", "radius_rejections",
                                      "error"})}};
        }
        return {{"fig4b.csv", t.select({"velocity", "m_threshold", "m_closed_form", "pf_design", "pf", "pf_stderr", "pf_joint",
                                  "pf_joint_stderr", "trials", "pf_attempts", "failures", "radius_rejections",
                                  "error"})}};
    }
    if (id == "4c" || id == "4d") {
        Scenario s = scenario;
        s.sweep.fixed_thresholds.clear();
        const auto t = run_htce_sweep(s).table();
        if (id == "4c") {
            return {{"fig4c.csv", t.select({"p_break_target", "velocity", "trigger_radius", "trigger_distance",
                                      "trigger_radius_literal", "breakdown", "breakdown_stderr", "breakdown_literal",
                                      "literal_clamped", "sessions", "breakdowns", "error"})}};
        }
        return {{"fig4d.csv", t.select({"p_break_target", "velocity", "usage", "usage_stderr", "trigger_radius",
                                  "breakdown", "sessions", "error"})}};
    }
    if (id == "4e1") {
        Scenario s = scenario;
        s.sweep.p_break_targets.clear();
        return {{"fig4e1.csv", run_htce_sweep(s).loss_table()}};
    }
    if (id == "4e") {
        const auto m = gra::parse_matrix(bundled::case_study_1_normalized_csv(), "case_study_1_normalized.csv");
        return {{"fig4e.csv", gra_zeta_table(m, scenario.gra.zeta_sweep)}};
    }
    if (id == "4f") {
        const auto m = gra::parse_matrix(bundled::case_study_2_csv(), "case_study_2.csv");
        return {{"fig4f.csv", gra_zeta_table(m, scenario.gra.zeta_sweep)}};
    }
    std::string valid;
    for (const auto& f : figure_ids()) valid += (valid.empty() ? "" : ", ") + f;
    throw std::invalid_argument("unknown figure '" + id + "'; valid ids: " + valid);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Vertical handover decision toolkit"};
    app.name("vho");
    app.require_subcommand(1);
    Common common;
    app.add_option("--seed", common.seed, "Override the scenario seed");

    // hne
    ScenarioArgs hne_args;
    std::optional<double> pu, pf, velocity;
    std::string hne_out;
    auto* hne = app.add_subcommand("hne", "Handover necessity thresholds and Monte-Carlo P_u / P_f");
    add_scenario_args(hne, hne_args);
    hne->add_option("--pu", pu, "Designed probability of unnecessary handover");
    hne->add_option("--pf", pf, "Designed probability of handover failure");
    hne->add_option("--velocity", velocity, "Evaluate a single velocity (m/s)");
    hne->add_option("--out", hne_out, "CSV path (stdout if omitted)");

    // htce
    ScenarioArgs htce_args;
    std::optional<std::string> pbreak, fixed;
    std::string htce_out;
    auto* htce = app.add_subcommand("htce", "Trigger radius, breakdown, WLAN usage and packet loss");
    add_scenario_args(htce, htce_args);
    htce->add_option("--pbreak", pbreak, "Comma-separated breakdown targets");
    htce->add_option("--fixed-threshold", fixed, "Comma-separated fixed thresholds in dBm, or 'adaptive'");
    htce->add_option("--out", htce_out, "CSV path; packet loss goes to <stem>_packet_loss.csv");

    // gra
    std::string matrix_path;
    double zeta = gra::kDefaultZeta;
    std::string weights = "equal";
    std::string gra_out;
    auto* gra_cmd = app.add_subcommand("gra", "Rank candidate networks by grey relational grade");
    gra_cmd->add_option("matrix", matrix_path, "Decision matrix file")->required();
    gra_cmd->add_option("--zeta", zeta, "Distinguishing coefficient in (0, 1]");
    gra_cmd->add_option("--weights", weights, "'equal', 'file' or a comma-separated list");
    gra_cmd->add_option("--out", gra_out, "CSV path for full-precision results");

    // reproduce
    std::string figure;
    std::string out_dir = ".";
    std::optional<std::uint64_t> trials;
    auto* reproduce = app.add_subcommand("reproduce", "Emit the dataset behind a figure");
    reproduce->add_option("--figure", figure, "4a, 4b, 4c, 4d, 4e1, 4e or 4f")->required();
    reproduce->add_option("--out", out_dir, "Output directory");
    reproduce->add_option("--trials", trials, "Override trials per sweep point");

    // config
    ScenarioArgs config_args;
    std::string config_out;
    auto* config = app.add_subcommand("config", "Print the effective scenario");
    add_scenario_args(config, config_args);
    config->add_option("--out", config_out, "Write to a file instead of stdout");

    std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (hne->parsed()) {
            Scenario s = load(hne_args, common);
            if (pu) s.sweep.target_pu = *pu;
            if (pf) s.sweep.target_pf = *pf;
            if (velocity) {
                s.sweep.parameter = SweepParameter::Velocity;
                s.sweep.values = {*velocity};
            }
            warn_all(err, s.validate());
            const auto csv = to_csv(run_hne_sweep(s).table());
            if (hne_out.empty()) {
                out << csv;
            } else {
                write_file(hne_out, csv);
            }
        } else if (htce->parsed()) {
            Scenario s = load(htce_args, common);
            if (pbreak) {
                s.sweep.p_break_targets.clear();
                for (const auto& x : split_list(*pbreak, "--pbreak")) {
                    s.sweep.p_break_targets.push_back(to_real(x, "--pbreak"));
                }
            }
            if (fixed) {
                s.sweep.fixed_thresholds.clear();
                for (const auto& x : split_list(*fixed, "--fixed-threshold")) {
                    s.sweep.fixed_thresholds.push_back(
                        x == "adaptive" ? FixedThreshold{true, 0.0} : FixedThreshold{false, to_real(x, "--fixed-threshold")});
                }
            }
            if (s.sweep.p_break_targets.empty()) {
                throw std::invalid_argument("at least one breakdown target required");
            }
            warn_all(err, s.validate());
            const auto summary = run_htce_sweep(s);
            if (summary.literal_clamps > 0) {
                err << "note: closed-form breakdown probability clamped at " << summary.literal_clamps
                    << " point(s)\n";
            }
            if (summary.literal_undefined > 0) {
                err << "note: closed-form trigger radius undefined at " << summary.literal_undefined << " point(s)\n";
            }
            const auto trig = to_csv(summary.table());
            const auto loss = to_csv(summary.loss_table());
            if (htce_out.empty()) {
                out << trig << '\n' << loss;
            } else {
                write_file(htce_out, trig);
                if (!summary.loss_rows.empty()) write_file(sibling_path(htce_out, "_packet_loss"), loss);
            }
        } else if (gra_cmd->parsed()) {
            auto m = gra::load_matrix(matrix_path);
            if (weights == "equal") {
                const auto n = m.attributes().size();
                m.set_weights(std::vector<double>(n, 1.0 / static_cast<double>(n)));
            } else if (weights != "file") {
                std::vector<double> w;
                for (const auto& x : split_list(weights, "--weights")) w.push_back(to_real(x, "--weights"));
                m.set_weights(w);
            }
            const auto result = gra::rank(m, zeta);
            warn_all(err, result.warnings);
            print_gra_report(out, m, result);
            if (!gra_out.empty()) write_file(gra_out, to_csv(gra_result_table(m, result)));
        } else if (reproduce->parsed()) {
            const Scenario s = with_trials(load({}, common), trials);
            for (const auto& [name, table] : figure_tables(figure, s)) {
                const auto path = (fs::path(out_dir) / name).string();
                write_file(path, to_csv(table));
                out << "wrote " << path << '\n';
            }
        } else if (config->parsed()) {
            const Scenario s = load(config_args, common);
            warn_all(err, s.validate());
            const auto text = dump_scenario(s);
            if (config_out.empty()) {
                out << text;
            } else {
                write_file(config_out, text);
            }
        }
    } catch (const std::exception& e) {
        err << "vho: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace vho
