#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <utility>

#include "dcarp/evaluate.hpp"
#include "dcarp/io.hpp"
#include "dcarp/report.hpp"
#include "dcarp/scenario.hpp"
#include "dcarp/simulator.hpp"

namespace py = pybind11;
using namespace dcarp;

namespace {

// Every entry point trades in text: dcarp-text instances, route-per-line
// solutions, key-value configs, csv logs. Parsing stays on the C++ side.

EventConfig event_config(double p_event, double p_road, double p_bdrr, double p_crr,
                         double p_crbb, double p_icd, double p_add, int n_break,
                         const std::string& mode, double cong_frac_lo, double cong_frac_hi,
                         double dem_frac_lo, double dem_frac_hi) {
    EventConfig cfg;
    cfg.p_event = p_event;
    cfg.p_road = p_road;
    cfg.p_bdrr = p_bdrr;
    cfg.p_crr = p_crr;
    cfg.p_crbb = p_crbb;
    cfg.p_icd = p_icd;
    cfg.p_add = p_add;
    cfg.n_break = n_break;
    if (mode == "collection") cfg.mode = ServiceMode::Collection;
    else if (mode == "delivery") cfg.mode = ServiceMode::Delivery;
    else throw DcarpError("mode must be 'collection' or 'delivery'");
    cfg.cong_frac_lo = cong_frac_lo;
    cfg.cong_frac_hi = cong_frac_hi;
    cfg.dem_frac_lo = dem_frac_lo;
    cfg.dem_frac_hi = dem_frac_hi;
    validate_event_config(cfg);
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Dynamic capacitated arc routing: instances, solvers, simulator, scenarios.";

    const auto exc_base = py::register_exception<DcarpError>(m, "DcarpError");
    py::register_exception<ParseError>(m, "ParseError", exc_base);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", exc_base);

    m.def(
        "canonical_instance",
        [](const std::string& text) { return write_instance(parse_instance_text(text)); },
        py::arg("text"), "Parse dcarp-text and return the canonical serialization.");

    m.def(
        "validate_instance_text",
        [](const std::string& text) {
            std::istringstream in(text);
            return validate_instance(parse_instance(in));
        },
        py::arg("text"),
        "List of invariant violations; empty means the instance is well formed.");

    m.def(
        "instance_info",
        [](const std::string& text) {
            const DcarpInstance inst = parse_instance_text(text);
            py::dict d;
            d["name"] = inst.network.name;
            d["vertices"] = inst.network.num_vertices;
            d["edges"] = inst.network.arcs.size() / 2;
            d["tasks"] = inst.tasks.size();
            d["fleet"] = inst.fleet_size();
            d["capacity"] = inst.capacity();
            d["depot"] = inst.depot();
            d["outside_vehicles"] = inst.outside.size();
            return d;
        },
        py::arg("text"), "Header facts of a dcarp-text instance.");

    m.def("convert_egl", &convert_egl, py::arg("text"),
          "Convert an egl-vocabulary benchmark file (Spanish or English headers) to dcarp-text.");

    m.def(
        "evaluate",
        [](const std::string& instance, const std::string& solution) {
            const DcarpInstance inst = parse_instance_text(instance);
            const Solution s = parse_solution(solution, inst.tasks);
            const Cost c = total_cost_sat(s, inst);
            const FeasibilityReport fr = check_feasibility(s, inst);
            py::dict d;
            if (c == kInfCost) d["cost"] = py::none();
            else d["cost"] = c;
            d["feasible"] = fr.feasible();
            py::list v;
            for (const Violation& viol : fr.violations) v.append(viol.message);
            d["violations"] = v;
            return d;
        },
        py::arg("instance"), py::arg("solution"),
        "Cost (None when a leg is unreachable) and feasibility of a solution text.");

    m.def(
        "solve",
        [](const std::string& instance, const std::string& strategy, const std::string& solver,
           long long max_evals, double time_limit_s, std::uint64_t seed, int pop_size,
           double p_ls, int tournament, int tabu_tenure, int stagnation,
           const std::optional<std::string>& prev_instance,
           const std::optional<std::string>& prev_solution) {
            const DcarpInstance inst = parse_instance_text(instance);
            SolverBudget b;
            b.max_evals = max_evals;
            b.time_limit_s = time_limit_s;
            b.seed = seed;
            b.pop_size = pop_size;
            b.p_ls = p_ls;
            b.tournament = tournament;
            b.tabu_tenure = tabu_tenure;
            b.stagnation = stagnation;
            const Strategy strat = strategy_from_string(strategy);
            const SolverKind kind = solver_from_string(solver);

            std::optional<DcarpInstance> pinst;
            std::optional<Solution> psol;
            TransferContext ctx;
            const TransferContext* pctx = nullptr;
            if (prev_instance.has_value() != prev_solution.has_value())
                throw DcarpError("prev_instance and prev_solution go together");
            if (prev_instance) {
                pinst = parse_instance_text(*prev_instance);
                psol = parse_solution(*prev_solution, pinst->tasks);
                ctx.prev_exec = &*psol;
                ctx.prev_inst = &*pinst;
                pctx = &ctx;
            }

            GofvtResult res;
            {
                py::gil_scoped_release release;
                res = gofvt_solve(inst, strat, kind, b, pctx);
            }
            py::dict d;
            d["cost"] = res.cost;
            d["evals"] = res.evals;
            d["solution"] = write_solution(res.exec, inst.tasks, inst.depot());
            return d;
        },
        py::arg("instance"), py::arg("strategy") = "restart", py::arg("solver") = "memetic",
        py::arg("max_evals") = 0, py::arg("time_limit_s") = 60.0, py::arg("seed") = 1,
        py::arg("pop_size") = 30, py::arg("p_ls") = 0.2, py::arg("tournament") = 2,
        py::arg("tabu_tenure") = 10, py::arg("stagnation") = 50,
        py::arg("prev_instance") = std::nullopt, py::arg("prev_solution") = std::nullopt,
        "Solve one instance; transfer needs the previous instance and solution texts.");

    m.def(
        "simulate_step",
        [](const std::string& instance, const std::string& solution, std::uint64_t seed,
           double p_event, double p_road, double p_bdrr, double p_crr, double p_crbb,
           double p_icd, double p_add, int n_break, const std::string& mode,
           double cong_frac_lo, double cong_frac_hi, double dem_frac_lo, double dem_frac_hi,
           const std::optional<std::pair<long long, long long>>& cap_band) -> py::object {
            const DcarpInstance inst = parse_instance_text(instance);
            const Solution s = parse_solution(solution, inst.tasks);
            const EventConfig cfg =
                event_config(p_event, p_road, p_bdrr, p_crr, p_crbb, p_icd, p_add, n_break,
                             mode, cong_frac_lo, cong_frac_hi, dem_frac_lo, dem_frac_hi);
            std::optional<CapBand> band;
            if (cap_band) band = CapBand{cap_band->first, cap_band->second};
            Rng rng(seed);
            const std::optional<DcarpInstance> next =
                step_scenario(inst, s, cfg, rng, band ? &*band : nullptr);
            if (!next) return py::none();
            return py::str(write_instance(*next));
        },
        py::arg("instance"), py::arg("solution"), py::arg("seed") = 1,
        py::arg("p_event") = 0.5, py::arg("p_road") = 0.1, py::arg("p_bdrr") = 0.5,
        py::arg("p_crr") = 0.3, py::arg("p_crbb") = 0.6, py::arg("p_icd") = 0.35,
        py::arg("p_add") = 0.35, py::arg("n_break") = 0, py::arg("mode") = "collection",
        py::arg("cong_frac_lo") = 0.1, py::arg("cong_frac_hi") = 1.0,
        py::arg("dem_frac_lo") = 0.1, py::arg("dem_frac_hi") = 0.5,
        py::arg("cap_band") = std::nullopt,
        "Interrupt the solution mid-execution and fire dynamic events; returns the next "
        "dcarp-text instance, or None when the scenario is over.");

    m.def(
        "run_scenario",
        [](const std::string& config) {
            std::istringstream in(config);
            const ScenarioConfig cfg = parse_scenario_config(in);
            ScenarioLog log;
            {
                py::gil_scoped_release release;
                log = run_scenario(cfg);
            }
            std::ostringstream out;
            write_log_csv(log, out);
            return out.str();
        },
        py::arg("config"),
        "Run a whole scenario chain from a key-value config document; returns the csv log.");

    m.def(
        "report",
        [](const std::string& csv, const std::string& baseline, const std::string& format) {
            std::istringstream in(csv);
            const Report rep = build_report(parse_log_csv(in), baseline);
            if (format == "text") return report_text(rep);
            if (format == "csv") return report_csv(rep);
            if (format == "json") return report_json(rep);
            throw DcarpError("format must be 'text', 'csv', or 'json'");
        },
        py::arg("csv"), py::arg("baseline") = "", py::arg("format") = "text",
        "Aggregate a csv log into per-arm statistics and win-draw-lose counts.");
}
