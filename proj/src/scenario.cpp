#include "dcarp/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <cctype>
#include <sstream>

#include "dcarp/evaluate.hpp"
#include "dcarp/io.hpp"
#include "dcarp/vt.hpp"

namespace dcarp {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

long long to_ll(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ParseError("config value for '" + key + "' is not an integer: " + v);
    }
}

std::uint64_t to_u64(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const unsigned long long x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ParseError("config value for '" + key + "' is not an unsigned integer: " + v);
    }
}

double to_f64(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ParseError("config value for '" + key + "' is not a number: " + v);
    }
}

}  // namespace

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::Restart: return "restart";
        case Strategy::Transfer: return "transfer";
        case Strategy::ReturnFirst: return "return_first";
    }
    return "?";
}

const char* to_string(SolverKind s) {
    return s == SolverKind::Memetic ? "memetic" : "descent";
}

Strategy strategy_from_string(const std::string& s) {
    if (s == "restart") return Strategy::Restart;
    if (s == "transfer") return Strategy::Transfer;
    if (s == "return_first") return Strategy::ReturnFirst;
    throw ParseError("unknown strategy: " + s);
}

SolverKind solver_from_string(const std::string& s) {
    if (s == "memetic") return SolverKind::Memetic;
    if (s == "descent") return SolverKind::Descent;
    throw ParseError("unknown solver: " + s);
}

ScenarioConfig parse_scenario_config(std::istream& in) {
    ScenarioConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError("config line " + std::to_string(line_no) + ": expected 'key : value'");
        const std::string key = trim(line.substr(0, colon));
        const std::string val = trim(line.substr(colon + 1));
        if (key.empty() || val.empty())
            throw ParseError("config line " + std::to_string(line_no) + ": empty key or value");

        if (key == "instance") cfg.instance_path = val;
        else if (key == "instances") cfg.instances = static_cast<int>(to_ll(val, key));
        else if (key == "runs") cfg.runs = static_cast<int>(to_ll(val, key));
        else if (key == "arm") {
            std::istringstream ts(val);
            std::string strat, solver, name;
            ts >> strat >> solver >> name;
            if (strat.empty() || solver.empty())
                throw ParseError("config line " + std::to_string(line_no) +
                                 ": arm needs '<strategy> <solver> [name]'");
            ArmConfig arm;
            arm.strategy = strategy_from_string(strat);
            arm.solver = solver_from_string(solver);
            arm.name = name.empty() ? strat + "_" + solver : name;
            cfg.arms.push_back(std::move(arm));
        }
        else if (key == "p_event") cfg.events.p_event = to_f64(val, key);
        else if (key == "p_road") cfg.events.p_road = to_f64(val, key);
        else if (key == "p_bdrr") cfg.events.p_bdrr = to_f64(val, key);
        else if (key == "p_crr") cfg.events.p_crr = to_f64(val, key);
        else if (key == "p_crbb") cfg.events.p_crbb = to_f64(val, key);
        else if (key == "p_icd") cfg.events.p_icd = to_f64(val, key);
        else if (key == "p_add") cfg.events.p_add = to_f64(val, key);
        else if (key == "n_break") cfg.events.n_break = static_cast<int>(to_ll(val, key));
        else if (key == "mode") {
            if (val == "collection") cfg.events.mode = ServiceMode::Collection;
            else if (val == "delivery") cfg.events.mode = ServiceMode::Delivery;
            else throw ParseError("mode must be 'collection' or 'delivery'");
        }
        else if (key == "cong_frac_lo") cfg.events.cong_frac_lo = to_f64(val, key);
        else if (key == "cong_frac_hi") cfg.events.cong_frac_hi = to_f64(val, key);
        else if (key == "dem_frac_lo") cfg.events.dem_frac_lo = to_f64(val, key);
        else if (key == "dem_frac_hi") cfg.events.dem_frac_hi = to_f64(val, key);
        else if (key == "budget_small_s") cfg.budget_small_s = to_f64(val, key);
        else if (key == "budget_large_s") cfg.budget_large_s = to_f64(val, key);
        else if (key == "max_evals") cfg.max_evals = to_ll(val, key);
        else if (key == "large_threshold") cfg.large_threshold = static_cast<int>(to_ll(val, key));
        else if (key == "seed") cfg.master_seed = to_u64(val, key);
        else if (key == "scenario_id") cfg.scenario_id = val;
        else if (key == "csv") cfg.csv_path = val;
        else if (key == "report") cfg.report_path = val;
        else if (key == "cap_band") cfg.cap_band = static_cast<int>(to_ll(val, key));
        else if (key == "pop_size") cfg.pop_size = static_cast<int>(to_ll(val, key));
        else if (key == "p_ls") cfg.p_ls = to_f64(val, key);
        else if (key == "tournament") cfg.tournament = static_cast<int>(to_ll(val, key));
        else if (key == "tabu_tenure") cfg.tabu_tenure = static_cast<int>(to_ll(val, key));
        else if (key == "stagnation") cfg.stagnation = static_cast<int>(to_ll(val, key));
        else if (key == "baseline") cfg.baseline = val;
        else throw ParseError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    return cfg;
}

ScenarioConfig load_scenario_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config: " + path);
    return parse_scenario_config(in);
}

namespace {

void check_arm_name(const std::string& name) {
    if (name.empty()) throw ParseError("arm name must not be empty");
    for (char c : name)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'))
            throw ParseError("arm name must be alphanumeric/_/-: " + name);
}

}  // namespace

void validate_scenario_config(const ScenarioConfig& cfg) {
    if (cfg.instance_path.empty()) throw ParseError("config needs an 'instance' path");
    if (cfg.instances < 1) throw ParseError("instances must be >= 1");
    if (cfg.runs < 1) throw ParseError("runs must be >= 1");
    if (!(cfg.budget_small_s > 0.0 && cfg.budget_large_s > 0.0))
        throw ParseError("budgets must be > 0");
    if (cfg.max_evals < 0) throw ParseError("max_evals must be >= 0");
    if (cfg.arms.empty()) throw ParseError("config needs at least one arm");
    if (cfg.cap_band < 0 || cfg.cap_band > 3) throw ParseError("cap_band must be 0..3");
    if (cfg.pop_size < 1) throw ParseError("pop_size must be >= 1");
    if (cfg.tournament < 1) throw ParseError("tournament must be >= 1");
    if (cfg.tabu_tenure < 0) throw ParseError("tabu_tenure must be >= 0");
    if (cfg.stagnation < 1) throw ParseError("stagnation must be >= 1");
    if (!(cfg.p_ls >= 0.0 && cfg.p_ls <= 1.0)) throw ParseError("p_ls must be in [0,1]");
    for (std::size_t i = 0; i < cfg.arms.size(); ++i) {
        check_arm_name(cfg.arms[i].name);
        for (std::size_t j = i + 1; j < cfg.arms.size(); ++j)
            if (cfg.arms[i].name == cfg.arms[j].name)
                throw ParseError("duplicate arm name: " + cfg.arms[i].name);
    }
    if (!cfg.baseline.empty()) {
        bool found = false;
        for (const ArmConfig& a : cfg.arms) found = found || a.name == cfg.baseline;
        if (!found) throw ParseError("baseline is not an arm name: " + cfg.baseline);
    }
    validate_event_config(cfg.events);
}

void write_log_csv(const ScenarioLog& log, std::ostream& out) {
    out << "scenario_id,m,arm,run,seed,cost,wall_ms,feasible\n";
    for (const LogRow& r : log.rows)
        out << r.scenario_id << ',' << r.m << ',' << r.arm << ',' << r.run << ',' << r.seed
            << ',' << r.cost << ',' << r.wall_ms << ',' << r.feasible << '\n';
}

ScenarioLog parse_log_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty log");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "scenario_id,m,arm,run,seed,cost,wall_ms,feasible")
        throw ParseError("unexpected log header: " + line);
    ScenarioLog log;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i)
            if (i == line.size() || line[i] == ',') {
                f.push_back(line.substr(start, i - start));
                start = i + 1;
            }
        if (f.size() != 8)
            throw ParseError("log line " + std::to_string(line_no) + ": expected 8 fields");
        LogRow r;
        r.scenario_id = f[0];
        r.m = static_cast<int>(to_ll(f[1], "m"));
        r.arm = f[2];
        r.run = static_cast<int>(to_ll(f[3], "run"));
        r.seed = to_u64(f[4], "seed");
        r.cost = to_ll(f[5], "cost");
        r.wall_ms = to_ll(f[6], "wall_ms");
        r.feasible = static_cast<int>(to_ll(f[7], "feasible"));
        log.rows.push_back(std::move(r));
    }
    return log;
}

namespace {

GofvtResult check_result(GofvtResult res, Cost expected, const DcarpInstance& inst) {
    const Cost actual = total_cost(res.exec, inst);
    if (actual != expected)
        throw DcarpError("internal: reported cost does not match the executable solution");
    const FeasibilityReport fr = check_feasibility(res.exec, inst);
    if (!fr.feasible())
        throw InfeasibleError("internal: solver produced an infeasible solution: " +
                              fr.violations.front().message);
    res.cost = actual;
    return res;
}

}  // namespace

GofvtResult gofvt_solve(const DcarpInstance& inst, Strategy strategy, SolverKind solver,
                        const SolverBudget& budget, const TransferContext* ctx) {
    if (strategy == Strategy::ReturnFirst) {
        ReturnFirstResult rf = return_first_solve(inst, solver, budget);
        GofvtResult res;
        res.exec = std::move(rf.exec);
        res.evals = rf.evals;
        return check_result(std::move(res), rf.cost, inst);
    }

    if (strategy == Strategy::Transfer &&
        (ctx == nullptr || ctx->prev_exec == nullptr || ctx->prev_inst == nullptr))
        throw DcarpError("transfer strategy requires a previous solution and instance");

    const StaticView view = build_static_view(inst);
    Rng init_rng(derive_seed(budget.seed, 0xA11C));
    SolveOutcome out;
    if (solver == SolverKind::Memetic) {
        std::vector<Solution> init;
        if (strategy == Strategy::Transfer) {
            init.push_back(sequence_transfer(*ctx->prev_exec, *ctx->prev_inst, view));
            if (budget.pop_size > 1) {
                std::vector<Solution> more = restart_init(view, budget.pop_size - 1, init_rng);
                init.insert(init.end(), std::make_move_iterator(more.begin()),
                            std::make_move_iterator(more.end()));
            }
        } else {
            init = restart_init(view, budget.pop_size, init_rng);
        }
        out = memetic_solve(view, init, budget);
    } else {
        const Solution start = strategy == Strategy::Transfer
                                   ? sequence_transfer(*ctx->prev_exec, *ctx->prev_inst, view)
                                   : restart_init(view, 1, init_rng)[0];
        out = descent_solve(view, start, budget);
    }

    GofvtResult res;
    res.exec = to_executable(normalize_virtual_routes(out.best, view), view);
    res.evals = out.evals;
    return check_result(std::move(res), out.best_adjusted, inst);
}

CapBand scenario_band(int band, Demand q) {
    switch (band) {
        case 1: return {0, 33 * q / 100};
        case 2: return {(34 * q + 99) / 100, 66 * q / 100};
        case 3: return {(67 * q + 99) / 100, q};
        default: throw DcarpError("cap_band must be 1..3");
    }
}

ScenarioLog run_scenario(const ScenarioConfig& cfg, std::ostream* progress) {
    validate_scenario_config(cfg);
    DcarpInstance inst = load_instance(cfg.instance_path);
    inst.index = 0;
    const std::string sid = cfg.scenario_id.empty()
                                ? std::filesystem::path(cfg.instance_path).stem().string()
                                : cfg.scenario_id;

    int shared_arm = 0;
    for (std::size_t a = 0; a < cfg.arms.size(); ++a)
        if (cfg.arms[a].strategy == Strategy::Restart) {
            shared_arm = static_cast<int>(a);
            break;
        }

    std::optional<CapBand> band;
    if (cfg.cap_band >= 1) band = scenario_band(cfg.cap_band, inst.capacity());

    SolverBudget base;
    base.max_evals = cfg.max_evals;
    base.pop_size = cfg.pop_size;
    base.p_ls = cfg.p_ls;
    base.tournament = cfg.tournament;
    base.tabu_tenure = cfg.tabu_tenure;
    base.stagnation = cfg.stagnation;

    ScenarioLog log;
    DcarpInstance prev_inst;
    Solution prev_best;

    for (int m = 0; m < cfg.instances; ++m) {
        SolverBudget budget = base;
        budget.time_limit_s = inst.network.num_vertices > cfg.large_threshold
                                  ? cfg.budget_large_s
                                  : cfg.budget_small_s;

        Cost best_cost = kInfCost;
        Solution best_exec;
        bool any_ok = false;
        const TransferContext ctx{&prev_best, &prev_inst};

        auto one_solve = [&](int arm_idx, int run, bool shared) {
            const ArmConfig& arm = cfg.arms[static_cast<std::size_t>(arm_idx)];
            SolverBudget b = budget;
            b.seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(arm_idx),
                                 static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(run));
            const Strategy strat = shared ? Strategy::Restart : arm.strategy;

            LogRow row;
            row.scenario_id = sid;
            row.m = m;
            row.run = run;
            row.seed = b.seed;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const GofvtResult res = gofvt_solve(inst, strat, arm.solver, b,
                                                    m == 0 ? nullptr : &ctx);
                const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                    std::chrono::steady_clock::now() - t0)
                                    .count();
                row.cost = res.cost;
                row.wall_ms = cfg.max_evals > 0 ? res.evals : static_cast<long long>(ms);
                // Re-validate through serialization before logging.
                const Solution round =
                    parse_solution(write_solution(res.exec, inst.tasks, inst.depot()), inst.tasks);
                row.feasible = check_feasibility(round, inst).feasible() &&
                                       total_cost_sat(round, inst) == res.cost
                                   ? 1
                                   : 0;
                if (row.feasible == 1 && res.cost < best_cost) {
                    best_cost = res.cost;
                    best_exec = res.exec;
                    any_ok = true;
                }
            } catch (const DcarpError& e) {
                const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                    std::chrono::steady_clock::now() - t0)
                                    .count();
                row.cost = -1;
                row.wall_ms = cfg.max_evals > 0 ? 0 : static_cast<long long>(ms);
                row.feasible = 0;
                if (progress != nullptr)
                    *progress << "m=" << m << " arm=" << arm.name << " run=" << run
                              << " failed: " << e.what() << '\n';
            }
            row.arm = arm.name;
            return row;
        };

        if (m == 0) {
            // Shared static solve: one result per run, logged for every arm.
            for (int r = 0; r < cfg.runs; ++r) {
                LogRow row = one_solve(shared_arm, r, true);
                for (const ArmConfig& arm : cfg.arms) {
                    LogRow copy = row;
                    copy.arm = arm.name;
                    log.rows.push_back(std::move(copy));
                }
            }
        } else {
            for (int a = 0; a < static_cast<int>(cfg.arms.size()); ++a)
                for (int r = 0; r < cfg.runs; ++r) log.rows.push_back(one_solve(a, r, false));
        }

        if (progress != nullptr) {
            *progress << "m=" << m << " tasks=" << inst.tasks.size()
                      << " outside=" << inst.outside.size();
            if (any_ok) *progress << " best=" << best_cost;
            *progress << '\n';
        }
        if (!any_ok) break;
        if (m + 1 == cfg.instances) break;

        prev_inst = inst;
        prev_best = best_exec;
        Rng sim_rng(derive_seed(cfg.master_seed, 0x51, static_cast<std::uint64_t>(m)));
        std::optional<DcarpInstance> next =
            step_scenario(inst, best_exec, cfg.events, sim_rng, band ? &*band : nullptr);
        if (!next) break;
        inst = std::move(*next);
    }
    return log;
}

}  // namespace dcarp
