#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dcarp/io.hpp"
#include "dcarp/report.hpp"
#include "dcarp/scenario.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dcarp::ParseError("cannot open: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw dcarp::ParseError("cannot write: " + path);
    out << text;
}

struct SolveArgs {
    std::string instance;
    std::string strategy = "restart";
    std::string solver = "memetic";
    double budget_s = 60.0;
    long long max_evals = 0;
    std::uint64_t seed = 1;
    int pop_size = 30;
    double p_ls = 0.2;
    int tournament = 2;
    int tabu_tenure = 10;
    int stagnation = 50;
    std::string out;
};

int run_solve(const SolveArgs& a) {
    const dcarp::Strategy strat = dcarp::strategy_from_string(a.strategy);
    if (strat == dcarp::Strategy::Transfer) {
        std::cerr << "error: transfer needs a previous solution; run it inside `dcarp scenario`\n";
        return 1;
    }
    const dcarp::DcarpInstance inst = dcarp::load_instance(a.instance);
    dcarp::SolverBudget b;
    b.time_limit_s = a.budget_s;
    b.max_evals = a.max_evals;
    b.seed = a.seed;
    b.pop_size = a.pop_size;
    b.p_ls = a.p_ls;
    b.tournament = a.tournament;
    b.tabu_tenure = a.tabu_tenure;
    b.stagnation = a.stagnation;
    const dcarp::GofvtResult res =
        dcarp::gofvt_solve(inst, strat, dcarp::solver_from_string(a.solver), b);
    const std::string text = dcarp::write_solution(res.exec, inst.tasks, inst.depot());
    std::cout << "cost " << res.cost << "\n" << text;
    if (!a.out.empty()) write_file(a.out, text);
    return 0;
}

int run_scenario_cmd(const std::string& config_path, std::string csv, std::string report_path,
                     const std::string& json_path, bool quiet) {
    dcarp::ScenarioConfig cfg = dcarp::load_scenario_config(config_path);
    if (!csv.empty()) cfg.csv_path = csv;
    if (!report_path.empty()) cfg.report_path = report_path;
    if (cfg.csv_path.empty()) cfg.csv_path = "scenario_log.csv";

    const dcarp::ScenarioLog log = dcarp::run_scenario(cfg, quiet ? nullptr : &std::cerr);
    std::ofstream f(cfg.csv_path);
    if (!f) throw dcarp::ParseError("cannot write: " + cfg.csv_path);
    dcarp::write_log_csv(log, f);
    f.close();

    const dcarp::Report rep = dcarp::build_report(log, cfg.baseline);
    std::cout << dcarp::report_text(rep);
    if (!cfg.report_path.empty()) write_file(cfg.report_path, dcarp::report_text(rep));
    if (!json_path.empty()) write_file(json_path, dcarp::report_json(rep));
    if (!quiet) std::cerr << "log written to " << cfg.csv_path << "\n";
    return 0;
}

int run_convert(const std::string& egl_path, const std::string& out) {
    const std::string converted = dcarp::convert_egl(read_file(egl_path));
    if (out.empty()) std::cout << converted;
    else write_file(out, converted);
    return 0;
}

int run_report(const std::string& log_path, const std::string& baseline, const std::string& out,
               const std::string& csv_out, const std::string& json_out) {
    std::ifstream in(log_path);
    if (!in) throw dcarp::ParseError("cannot open: " + log_path);
    const dcarp::ScenarioLog log = dcarp::parse_log_csv(in);
    const dcarp::Report rep = dcarp::build_report(log, baseline);
    std::cout << dcarp::report_text(rep);
    if (!out.empty()) write_file(out, dcarp::report_text(rep));
    if (!csv_out.empty()) write_file(csv_out, dcarp::report_csv(rep));
    if (!json_out.empty()) write_file(json_out, dcarp::report_json(rep));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamic capacitated arc routing toolkit"};
    app.require_subcommand(1);

    SolveArgs sa;
    CLI::App* solve = app.add_subcommand("solve", "solve one instance");
    solve->add_option("instance", sa.instance, "instance file (dcarp-text)")->required();
    solve->add_option("--strategy", sa.strategy, "restart | return_first");
    solve->add_option("--solver", sa.solver, "memetic | descent");
    solve->add_option("--budget", sa.budget_s, "time budget in seconds");
    solve->add_option("--evals", sa.max_evals, "evaluation budget (overrides time)");
    solve->add_option("--seed", sa.seed, "rng seed");
    solve->add_option("--pop-size", sa.pop_size, "memetic population size");
    solve->add_option("--p-ls", sa.p_ls, "memetic local-search probability");
    solve->add_option("--tournament", sa.tournament, "memetic tournament size");
    solve->add_option("--tenure", sa.tabu_tenure, "descent tabu tenure");
    solve->add_option("--stagnation", sa.stagnation, "descent perturbation threshold");
    solve->add_option("--out", sa.out, "write the solution text here too");

    std::string sc_config, sc_csv, sc_report, sc_json;
    bool sc_quiet = false;
    CLI::App* scenario = app.add_subcommand("scenario", "run a scenario chain from a config");
    scenario->add_option("config", sc_config, "config file")->required();
    scenario->add_option("--csv", sc_csv, "override the log path");
    scenario->add_option("--report", sc_report, "write the text report here");
    scenario->add_option("--json", sc_json, "write the JSON report here");
    scenario->add_flag("--quiet", sc_quiet, "suppress progress output");

    std::string cv_in, cv_out;
    CLI::App* convert = app.add_subcommand("convert", "convert an egl benchmark file");
    convert->add_option("egl", cv_in, "egl file")->required();
    convert->add_option("-o,--out", cv_out, "output path (default stdout)");

    std::string rp_log, rp_baseline, rp_out, rp_csv, rp_json;
    CLI::App* report = app.add_subcommand("report", "summarize a scenario log");
    report->add_option("log", rp_log, "log CSV")->required();
    report->add_option("--baseline", rp_baseline, "baseline arm (default: first)");
    report->add_option("-o,--out", rp_out, "write the text report here");
    report->add_option("--csv", rp_csv, "write the CSV report here");
    report->add_option("--json", rp_json, "write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) return run_solve(sa);
        if (scenario->parsed())
            return run_scenario_cmd(sc_config, sc_csv, sc_report, sc_json, sc_quiet);
        if (convert->parsed()) return run_convert(cv_in, cv_out);
        if (report->parsed()) return run_report(rp_log, rp_baseline, rp_out, rp_csv, rp_json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
