#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dcarp/evaluate.hpp"
#include "dcarp/io.hpp"
#include "dcarp/report.hpp"
#include "dcarp/scenario.hpp"
#include "doctest.h"
#include "json.hpp"
#include "test_util.hpp"

using namespace dcarp;
using namespace testutil;

namespace {

ScenarioConfig parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_scenario_config(in);
}

// Minimal config that passes validation; subcases break one field at a time.
ScenarioConfig valid_config() {
    ScenarioConfig cfg;
    cfg.instance_path = "x.dat";
    ArmConfig arm;
    arm.name = "a";
    cfg.arms.push_back(arm);
    return cfg;
}

LogRow row(std::string sid, int m, std::string arm, int run, std::uint64_t seed, Cost cost,
           long long wall_ms, int feasible) {
    LogRow r;
    r.scenario_id = std::move(sid);
    r.m = m;
    r.arm = std::move(arm);
    r.run = run;
    r.seed = seed;
    r.cost = cost;
    r.wall_ms = wall_ms;
    r.feasible = feasible;
    return r;
}

// The report fixture: two arms over three instance steps, with one failed run
// per arm and one step where only B produces statistics.
ScenarioLog report_log() {
    ScenarioLog log;
    log.rows.push_back(row("s", 0, "armA", 0, 1, 10, 5, 1));
    log.rows.push_back(row("s", 0, "armA", 1, 2, 12, 5, 1));
    log.rows.push_back(row("s", 0, "armB", 0, 3, 11, 5, 1));
    log.rows.push_back(row("s", 0, "armB", 1, 4, 11, 5, 1));
    log.rows.push_back(row("s", 1, "armA", 0, 5, -1, 5, 0));
    log.rows.push_back(row("s", 1, "armA", 1, 6, 14, 5, 1));
    log.rows.push_back(row("s", 1, "armB", 0, 7, 13, 5, 1));
    log.rows.push_back(row("s", 1, "armB", 1, 8, 14, 5, 1));
    log.rows.push_back(row("s", 2, "armA", 0, 9, -1, 5, 0));
    log.rows.push_back(row("s", 2, "armB", 0, 10, 5, 5, 1));
    return log;
}

const ArmSummary& cell(const Report& rep, int m, const std::string& arm) {
    for (const ArmSummary& s : rep.cells)
        if (s.m == m && s.arm == arm) return s;
    REQUIRE(false);
    return rep.cells.front();
}

const WdlRow& wdl(const Report& rep, const std::string& arm) {
    for (const WdlRow& w : rep.wdl)
        if (w.arm == arm) return w;
    REQUIRE(false);
    return rep.wdl.front();
}

}  // namespace

TEST_CASE("config parsing fills fields and keeps defaults") {
    const ScenarioConfig cfg = parse_text(
        "# leading comment\n"
        "instance : maps/foo.dat   # trailing comment\n"
        "instances : 3\n"
        "runs: 2\n"
        "arm : restart memetic\n"
        "arm : transfer descent td\n"
        "p_event : 0.25\n"
        "mode : delivery\n"
        "max_evals : 500\n"
        "seed : 42\n"
        "cap_band : 2\n"
        "baseline : td\n");
    CHECK(cfg.instance_path == "maps/foo.dat");
    CHECK(cfg.instances == 3);
    CHECK(cfg.runs == 2);
    REQUIRE(cfg.arms.size() == 2);
    CHECK(cfg.arms[0].name == "restart_memetic");
    CHECK(cfg.arms[0].strategy == Strategy::Restart);
    CHECK(cfg.arms[0].solver == SolverKind::Memetic);
    CHECK(cfg.arms[1].name == "td");
    CHECK(cfg.arms[1].strategy == Strategy::Transfer);
    CHECK(cfg.arms[1].solver == SolverKind::Descent);
    CHECK(cfg.events.p_event == doctest::Approx(0.25));
    CHECK(cfg.events.mode == ServiceMode::Delivery);
    CHECK(cfg.max_evals == 500);
    CHECK(cfg.master_seed == 42);
    CHECK(cfg.cap_band == 2);
    CHECK(cfg.baseline == "td");

    // Untouched keys keep their defaults.
    CHECK(cfg.pop_size == 30);
    CHECK(cfg.p_ls == doctest::Approx(0.2));
    CHECK(cfg.tournament == 2);
    CHECK(cfg.tabu_tenure == 10);
    CHECK(cfg.stagnation == 50);
    CHECK(cfg.budget_small_s == doctest::Approx(60.0));
    CHECK(cfg.budget_large_s == doctest::Approx(180.0));
    CHECK(cfg.large_threshold == 100);
    CHECK(cfg.events.p_road == doctest::Approx(0.1));
    CHECK(cfg.scenario_id.empty());

    const ScenarioConfig empty = parse_text("# nothing but comments\n\n");
    CHECK(empty.instances == 5);
    CHECK(empty.runs == 1);
    CHECK(empty.master_seed == 1);
    CHECK(empty.arms.empty());
}

TEST_CASE("config parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_text("frobnicate : 1\n"),
                         "config line 1: unknown key 'frobnicate'", ParseError);
    CHECK_THROWS_WITH_AS(parse_text("instance : a.dat\nno colon here\n"),
                         "config line 2: expected 'key : value'", ParseError);
    CHECK_THROWS_WITH_AS(parse_text("seed :\n"), "config line 1: empty key or value",
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_text("runs : x\n"),
                         "config value for 'runs' is not an integer: x", ParseError);
    CHECK_THROWS_WITH_AS(parse_text("p_event : fast\n"),
                         "config value for 'p_event' is not a number: fast", ParseError);
    CHECK_THROWS_WITH_AS(parse_text("arm : sideways memetic\n"), "unknown strategy: sideways",
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_text("arm : restart annealing\n"), "unknown solver: annealing",
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_text("mode : sideways\n"),
                         "mode must be 'collection' or 'delivery'", ParseError);
}

TEST_CASE("config validation rejects bad field combinations") {
    CHECK_NOTHROW(validate_scenario_config(valid_config()));
    auto cfg = valid_config();

    SUBCASE("missing instance") {
        cfg.instance_path.clear();
        CHECK_THROWS_AS(validate_scenario_config(cfg), ParseError);
    }
    SUBCASE("instances < 1") {
        cfg.instances = 0;
        CHECK_THROWS_AS(validate_scenario_config(cfg), ParseError);
    }
    SUBCASE("runs < 1") {
        cfg.runs = 0;
        CHECK_THROWS_AS(validate_scenario_config(cfg), ParseError);
    }
    SUBCASE("zero budget") {
        cfg.budget_small_s = 0.0;
        CHECK_THROWS_AS(validate_scenario_config(cfg), ParseError);
    }
    SUBCASE("negative eval budget") {
        cfg.max_evals = -1;
        CHECK_THROWS_AS(validate_scenario_config(cfg), ParseError);
    }
    SUBCASE("no arms") {
        cfg.arms.clear();
        CHECK_THROWS_AS(validate_scenario_config(cfg), ParseError);
    }
    SUBCASE("cap_band out of range") {
        cfg.cap_band = 4;
        CHECK_THROWS_AS(validate_scenario_config(cfg), ParseError);
    }
    SUBCASE("pop_size < 1") {
        cfg.pop_size = 0;
        CHECK_THROWS_AS(validate_scenario_config(cfg), ParseError);
    }
    SUBCASE("tournament < 1") {
        cfg.tournament = 0;
        CHECK_THROWS_AS(validate_scenario_config(cfg), ParseError);
    }
    SUBCASE("negative tenure") {
        cfg.tabu_tenure = -1;
        CHECK_THROWS_AS(validate_scenario_config(cfg), ParseError);
    }
    SUBCASE("stagnation < 1") {
        cfg.stagnation = 0;
        CHECK_THROWS_AS(validate_scenario_config(cfg), ParseError);
    }
    SUBCASE("p_ls out of range") {
        cfg.p_ls = 1.5;
        CHECK_THROWS_AS(validate_scenario_config(cfg), ParseError);
    }
    SUBCASE("bad arm name") {
        cfg.arms[0].name = "bad name!";
        CHECK_THROWS_WITH_AS(validate_scenario_config(cfg),
                             "arm name must be alphanumeric/_/-: bad name!", ParseError);
    }
    SUBCASE("duplicate arm names") {
        cfg.arms.push_back(cfg.arms[0]);
        CHECK_THROWS_WITH_AS(validate_scenario_config(cfg), "duplicate arm name: a",
                             ParseError);
    }
    SUBCASE("baseline must be an arm") {
        cfg.baseline = "zz";
        CHECK_THROWS_WITH_AS(validate_scenario_config(cfg), "baseline is not an arm name: zz",
                             ParseError);
    }
    SUBCASE("event probabilities are validated too") {
        cfg.events.p_event = 1.5;
        CHECK_THROWS_AS(validate_scenario_config(cfg), DcarpError);
    }
}

TEST_CASE("capacity bands follow the percentage splits") {
    CHECK(scenario_band(1, 10).lo == 0);
    CHECK(scenario_band(1, 10).hi == 3);
    CHECK(scenario_band(2, 10).lo == 4);
    CHECK(scenario_band(2, 10).hi == 6);
    CHECK(scenario_band(3, 10).lo == 7);
    CHECK(scenario_band(3, 10).hi == 10);

    CHECK(scenario_band(1, 100).lo == 0);
    CHECK(scenario_band(1, 100).hi == 33);
    CHECK(scenario_band(2, 100).lo == 34);
    CHECK(scenario_band(2, 100).hi == 66);
    CHECK(scenario_band(3, 100).lo == 67);
    CHECK(scenario_band(3, 100).hi == 100);

    CHECK_THROWS_AS(scenario_band(0, 10), DcarpError);
    CHECK_THROWS_AS(scenario_band(4, 10), DcarpError);
}

TEST_CASE("log csv round-trips and rejects malformed input") {
    ScenarioLog log;
    log.rows.push_back(row("egl-e1-A", 0, "transfer_memetic", 0, 18446744073709551615ULL, 123,
                           4567, 1));
    log.rows.push_back(row("egl-e1-A", 2, "rf", 3, 7, -1, 0, 0));

    std::ostringstream out;
    write_log_csv(log, out);
    const std::string text = out.str();
    CHECK(text.rfind("scenario_id,m,arm,run,seed,cost,wall_ms,feasible\n", 0) == 0);

    std::istringstream in(text);
    const ScenarioLog back = parse_log_csv(in);
    REQUIRE(back.rows.size() == 2);
    CHECK(back.rows[0].scenario_id == "egl-e1-A");
    CHECK(back.rows[0].m == 0);
    CHECK(back.rows[0].arm == "transfer_memetic");
    CHECK(back.rows[0].run == 0);
    CHECK(back.rows[0].seed == 18446744073709551615ULL);
    CHECK(back.rows[0].cost == 123);
    CHECK(back.rows[0].wall_ms == 4567);
    CHECK(back.rows[0].feasible == 1);
    CHECK(back.rows[1].cost == -1);
    CHECK(back.rows[1].feasible == 0);

    // Windows line endings parse the same.
    std::string crlf = text;
    std::string with_cr;
    for (char c : crlf) {
        if (c == '\n') with_cr += '\r';
        with_cr += c;
    }
    std::istringstream in_cr(with_cr);
    CHECK(parse_log_csv(in_cr).rows.size() == 2);

    std::istringstream empty("");
    CHECK_THROWS_WITH_AS(parse_log_csv(empty), "empty log", ParseError);
    std::istringstream bad_header("m,arm\n");
    CHECK_THROWS_AS(parse_log_csv(bad_header), ParseError);
    std::istringstream short_row("scenario_id,m,arm,run,seed,cost,wall_ms,feasible\na,1,b\n");
    CHECK_THROWS_WITH_AS(parse_log_csv(short_row), "log line 2: expected 8 fields", ParseError);
}

TEST_CASE("one-step solves produce verified executable solutions") {
    const DcarpInstance inst = diamond_with_ov();
    SolverBudget budget;
    budget.max_evals = 2000;
    budget.pop_size = 10;
    budget.seed = 31;

    // Transfer context: the instance before the outside vehicle went out, and
    // the best solution found on it.
    const DcarpInstance prev = diamond();
    Solution prev_best;
    prev_best.routes.push_back(Route{1, {{0, false}}});
    prev_best.routes.push_back(Route{1, {{1, false}, {2, false}}});
    REQUIRE(total_cost(prev_best, prev) == 18);
    const TransferContext ctx{&prev_best, &prev};

    auto check = [&](Strategy strat, SolverKind kind, Cost expect) {
        const GofvtResult res =
            gofvt_solve(inst, strat, kind, budget, strat == Strategy::Transfer ? &ctx : nullptr);
        CHECK(res.cost == expect);
        CHECK(res.evals > 0);
        CHECK(check_feasibility(res.exec, inst).feasible());
        CHECK(total_cost(res.exec, inst) == res.cost);
    };

    check(Strategy::Restart, SolverKind::Memetic, 11);
    check(Strategy::Restart, SolverKind::Descent, 11);
    check(Strategy::Transfer, SolverKind::Memetic, 11);
    check(Strategy::Transfer, SolverKind::Descent, 11);
    check(Strategy::ReturnFirst, SolverKind::Memetic, 16);
    check(Strategy::ReturnFirst, SolverKind::Descent, 16);
}

TEST_CASE("transfer without a previous solution is an error") {
    const DcarpInstance inst = diamond_with_ov();
    SolverBudget budget;
    budget.max_evals = 100;
    CHECK_THROWS_AS(gofvt_solve(inst, Strategy::Transfer, SolverKind::Descent, budget, nullptr),
                    DcarpError);
    const TransferContext half{nullptr, &inst};
    CHECK_THROWS_AS(gofvt_solve(inst, Strategy::Transfer, SolverKind::Descent, budget, &half),
                    DcarpError);
}

TEST_CASE("scenario runs share the first step and repeat byte for byte") {
    const auto path =
        std::filesystem::temp_directory_path() / "dcarp_scenario_case.dat";
    {
        std::ofstream out(path);
        out << write_instance(diamond());
    }

    ScenarioConfig cfg;
    cfg.instance_path = path.string();
    cfg.instances = 3;
    cfg.runs = 2;
    cfg.max_evals = 400;
    cfg.master_seed = 7;
    ArmConfig td;
    td.name = "td";
    td.strategy = Strategy::Transfer;
    td.solver = SolverKind::Descent;
    ArmConfig rd;
    rd.name = "rd";
    rd.strategy = Strategy::Restart;
    rd.solver = SolverKind::Descent;
    ArmConfig fd;
    fd.name = "fd";
    fd.strategy = Strategy::ReturnFirst;
    fd.solver = SolverKind::Descent;
    cfg.arms = {td, rd, fd};

    const ScenarioLog log = run_scenario(cfg);
    REQUIRE(log.rows.size() >= 6);
    CHECK(log.rows.size() % 6 == 0);

    // The first step is solved once per run by the restart arm and logged for
    // every arm: identical numbers, different labels.
    for (int r = 0; r < 2; ++r) {
        const LogRow& a = log.rows[static_cast<std::size_t>(3 * r)];
        const LogRow& b = log.rows[static_cast<std::size_t>(3 * r + 1)];
        const LogRow& c = log.rows[static_cast<std::size_t>(3 * r + 2)];
        CHECK(a.m == 0);
        CHECK(a.arm == "td");
        CHECK(b.arm == "rd");
        CHECK(c.arm == "fd");
        CHECK(a.run == r);
        CHECK(a.seed == derive_seed(7, 1, 0, static_cast<std::uint64_t>(r)));
        CHECK(a.seed == b.seed);
        CHECK(a.seed == c.seed);
        CHECK(a.cost == 18);
        CHECK(b.cost == 18);
        CHECK(c.cost == 18);
        CHECK(a.wall_ms == b.wall_ms);
        CHECK(a.feasible == 1);
    }
    for (const LogRow& r : log.rows) {
        CHECK(r.scenario_id == "dcarp_scenario_case");
        CHECK(r.feasible == 1);
        CHECK(r.wall_ms > 0);  // eval budgets log evals, not milliseconds
        CHECK(r.cost > 0);
    }

    // Deterministic end to end: a rerun gives an identical csv.
    const ScenarioLog again = run_scenario(cfg);
    std::ostringstream csv1, csv2;
    write_log_csv(log, csv1);
    write_log_csv(again, csv2);
    CHECK(csv1.str() == csv2.str());

    // A custom id overrides the one derived from the file name.
    cfg.scenario_id = "named";
    cfg.instances = 1;
    const ScenarioLog named = run_scenario(cfg);
    REQUIRE(!named.rows.empty());
    CHECK(named.rows[0].scenario_id == "named");

    std::filesystem::remove(path);
}

TEST_CASE("report aggregates per arm and counts exact wins") {
    const Report rep = build_report(report_log());
    CHECK(rep.baseline == "armA");
    REQUIRE(rep.cells.size() == 6);

    const ArmSummary& a0 = cell(rep, 0, "armA");
    CHECK(a0.n == 2);
    CHECK(a0.fails == 0);
    CHECK(a0.sum == 22);
    CHECK(a0.mean == doctest::Approx(11.0));
    CHECK(a0.std_dev == doctest::Approx(1.0));
    CHECK(a0.min == 10);

    const ArmSummary& b0 = cell(rep, 0, "armB");
    CHECK(b0.mean == doctest::Approx(11.0));
    CHECK(b0.std_dev == doctest::Approx(0.0));

    const ArmSummary& a1 = cell(rep, 1, "armA");
    CHECK(a1.n == 1);
    CHECK(a1.fails == 1);
    CHECK(a1.mean == doctest::Approx(14.0));

    const ArmSummary& b1 = cell(rep, 1, "armB");
    CHECK(b1.n == 2);
    CHECK(b1.sum == 27);
    CHECK(b1.std_dev == doctest::Approx(0.5));
    CHECK(b1.min == 13);

    const ArmSummary& a2 = cell(rep, 2, "armA");
    CHECK(a2.n == 0);
    CHECK(a2.fails == 1);

    // armA vs itself: every comparable step is an exact tie. armB: tie at
    // m=0 (same mean), win at m=1 (13.5 < 14), skip at m=2 (baseline empty).
    const WdlRow& wa = wdl(rep, "armA");
    CHECK(wa.wins == 0);
    CHECK(wa.draws == 2);
    CHECK(wa.losses == 0);
    const WdlRow& wb = wdl(rep, "armB");
    CHECK(wb.wins == 1);
    CHECK(wb.draws == 1);
    CHECK(wb.losses == 0);

    const Report flipped = build_report(report_log(), "armB");
    const WdlRow& fa = wdl(flipped, "armA");
    CHECK(fa.wins == 0);
    CHECK(fa.draws == 1);
    CHECK(fa.losses == 1);

    CHECK_THROWS_AS(build_report(report_log(), "zz"), DcarpError);
    CHECK_THROWS_AS(build_report(ScenarioLog{}), DcarpError);
}

TEST_CASE("report renders to text, csv, and json") {
    const Report rep = build_report(report_log());

    const std::string text = report_text(rep);
    CHECK(text.find("win-draw-lose vs armA") != std::string::npos);
    CHECK(text.find("armB: 1-1-0") != std::string::npos);
    CHECK(text.find("11.00") != std::string::npos);
    CHECK(text.find("13.50") != std::string::npos);

    const std::string csv = report_csv(rep);
    CHECK(csv.rfind("m,arm,n,fails,mean,std,min\n", 0) == 0);
    CHECK(csv.find("0,armA,2,0,11.00,1.00,10\n") != std::string::npos);
    CHECK(csv.find("2,armA,0,1,,,\n") != std::string::npos);
    CHECK(csv.find("arm,wins,draws,losses\n") != std::string::npos);
    CHECK(csv.find("armB,1,1,0\n") != std::string::npos);

    const nlohmann::json j = nlohmann::json::parse(report_json(rep));
    CHECK(j["baseline"] == "armA");
    REQUIRE(j["cells"].is_array());
    CHECK(j["cells"].size() == 6);
    bool saw_empty = false;
    for (const auto& c : j["cells"])
        if (c["m"] == 2 && c["arm"] == "armA") {
            saw_empty = true;
            CHECK(c["n"] == 0);
            CHECK(!c.contains("mean"));
        }
    CHECK(saw_empty);
    CHECK(j["wdl"].size() == 2);
}
