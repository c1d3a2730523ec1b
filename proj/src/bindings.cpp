#include "vho/cli.hpp"
#include "vho/config.hpp"
#include "vho/gra.hpp"
#include "vho/hne.hpp"
#include "vho/htce.hpp"
#include "vho/sim.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

namespace py = pybind11;

namespace {

vho::MobilityProfile profile(double r1, double r2)
{
    vho::MobilityProfile p;
    p.r1 = r1;
    p.r2 = r2;
    return p;
}

vho::LatencyBudget budget(double tau_a, double tau_d)
{
    vho::LatencyBudget b;
    b.tau_a = tau_a;
    b.tau_d = tau_d;
    return b;
}

py::dict gra_dict(const vho::gra::DecisionMatrix& m, const vho::gra::GraResult& r)
{
    auto grid = [](const vho::gra::Grid& g) {
        std::vector<std::vector<double>> rows(g.rows(), std::vector<double>(g.cols()));
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j) rows[i][j] = g(i, j);
        return rows;
    };
    std::vector<std::string> order;
    for (auto i : r.ranking) order.push_back(m.alternatives()[i]);
    py::dict d;
    d["alternatives"] = m.alternatives();
    d["normalized"] = grid(r.normalized);
    d["coefficients"] = grid(r.coefficients);
    d["grades"] = r.grades;
    d["ranking"] = order;
    d["warnings"] = r.warnings;
    return d;
}

vho::Scenario scenario_from(const std::string& text, std::optional<std::uint64_t> trials)
{
    vho::Scenario s = text.empty() ? vho::default_scenario() : vho::parse_scenario(text, "<python>");
    if (trials) s.sweep.trials_per_point = *trials;
    return s;
}

} // namespace

PYBIND11_MODULE(_vho, m)
{
    m.doc() = "Vertical handover decision toolkit";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const std::domain_error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def("theta_cdf", &vho::theta_cdf, py::arg("theta"));
    m.def("traversal_distance", &vho::traversal_distance, py::arg("r1"), py::arg("r2"), py::arg("theta"));
    m.def(
        "traversal_time_cdf",
        [](double r1, double r2, double v, double t) { return vho::traversal_time_cdf(profile(r1, r2), v, t); },
        py::arg("r1"), py::arg("r2"), py::arg("v"), py::arg("t"));
    m.def(
        "threshold_unnecessary",
        [](double r1, double r2, double v, double tau_a, double tau_d, double target) {
            return vho::threshold_unnecessary(profile(r1, r2), v, budget(tau_a, tau_d), target);
        },
        py::arg("r1"), py::arg("r2"), py::arg("v"), py::arg("tau_a"), py::arg("tau_d"), py::arg("target"));
    m.def(
        "threshold_failure",
        [](double r1, double r2, double v, double tau_a, double tau_d, double target) {
            return vho::threshold_failure(profile(r1, r2), v, budget(tau_a, tau_d), target);
        },
        py::arg("r1"), py::arg("r2"), py::arg("v"), py::arg("tau_a"), py::arg("tau_d"), py::arg("target"));
    m.def(
        "prob_unnecessary",
        [](double r1, double r2, double v, double tau_a, double tau_d, double n) {
            return vho::prob_unnecessary(profile(r1, r2), v, budget(tau_a, tau_d), n);
        },
        py::arg("r1"), py::arg("r2"), py::arg("v"), py::arg("tau_a"), py::arg("tau_d"), py::arg("n"));
    m.def(
        "prob_failure",
        [](double r1, double r2, double v, double tau_a, double tau_d, double mth) {
            return vho::prob_failure(profile(r1, r2), v, budget(tau_a, tau_d), mth);
        },
        py::arg("r1"), py::arg("r2"), py::arg("v"), py::arg("tau_a"), py::arg("tau_d"), py::arg("m"));

    m.def(
        "breakdown_probability",
        [](double r1, double r2, double d_a, double v, double tau_d, double r_s, const std::string& mode,
            std::uint64_t samples, std::uint64_t seed) {
            const vho::TriggerGeometry g{r1, r2, d_a, vho::kPi};
            if (mode == "literal") return vho::breakdown_probability(g, v, tau_d, r_s, vho::LiteralFormula{}).probability;
            if (mode == "oracle") {
                return vho::breakdown_probability(g, v, tau_d, r_s, vho::SamplingOracle{samples, {seed, 0}}).probability;
            }
            throw std::invalid_argument("mode must be 'literal' or 'oracle'");
        },
        py::arg("r1"), py::arg("r2"), py::arg("d_a"), py::arg("v"), py::arg("tau_d"), py::arg("r_s"),
        py::arg("mode") = "oracle", py::arg("samples") = 1'000'000, py::arg("seed") = 0);
    m.def(
        "trigger_radius",
        [](double r1, double r2, double d_a, double v, double tau_d, double p_break, double channel_adjustment) {
            vho::TriggerConfig c;
            c.p_break_target = p_break;
            c.channel_adjustment = channel_adjustment;
            return vho::trigger_radius({r1, r2, d_a, vho::kPi}, v, tau_d, c);
        },
        py::arg("r1"), py::arg("r2"), py::arg("d_a"), py::arg("v"), py::arg("tau_d"), py::arg("p_break"),
        py::arg("channel_adjustment") = 0.0);
    m.def(
        "packet_loss",
        [](double r2, double v, double fixed, double adaptive, double rss_b, double data_rate, double beta) {
            vho::CellModel c;
            c.path_loss_exponent = beta;
            return vho::packet_loss(c, r2, v, fixed, adaptive, rss_b, data_rate);
        },
        py::arg("r2"), py::arg("v"), py::arg("fixed"), py::arg("adaptive"), py::arg("rss_border"),
        py::arg("data_rate"), py::arg("beta") = 3.0);

    m.def(
        "gra_rank_file",
        [](const std::string& path, double zeta) {
            const auto mat = vho::gra::load_matrix(path);
            return gra_dict(mat, vho::gra::rank(mat, zeta));
        },
        py::arg("path"), py::arg("zeta") = vho::gra::kDefaultZeta);
    m.def(
        "gra_rank_text",
        [](const std::string& text, double zeta) {
            const auto mat = vho::gra::parse_matrix(text, "<python>");
            return gra_dict(mat, vho::gra::rank(mat, zeta));
        },
        py::arg("text"), py::arg("zeta") = vho::gra::kDefaultZeta);

    m.def(
        "default_config", [] { return vho::dump_scenario(vho::default_scenario()); },
        "The bundled default scenario as config text");
    m.def(
        "hne_sweep_csv",
        [](const std::string& config, std::optional<std::uint64_t> trials) {
            py::gil_scoped_release release;
            return vho::to_csv(vho::run_hne_sweep(scenario_from(config, trials)).table());
        },
        py::arg("config") = "", py::arg("trials") = py::none());
    m.def(
        "htce_sweep_csv",
        [](const std::string& config, std::optional<std::uint64_t> trials) {
            py::gil_scoped_release release;
            const auto s = vho::run_htce_sweep(scenario_from(config, trials));
            return std::make_pair(vho::to_csv(s.table()), vho::to_csv(s.loss_table()));
        },
        py::arg("config") = "", py::arg("trials") = py::none());
    m.def("figure_ids", &vho::figure_ids);
    m.def(
        "figure_csv",
        [](const std::string& id, std::optional<std::uint64_t> trials) {
            py::gil_scoped_release release;
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& [name, table] : vho::figure_tables(id, scenario_from("", trials))) {
                out.emplace_back(name, vho::to_csv(table));
            }
            return out;
        },
        py::arg("figure"), py::arg("trials") = py::none());
}
