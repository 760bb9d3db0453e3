#include <algorithm>

#include "doctest.h"
#include "dcarp/evaluate.hpp"
#include "dcarp/io.hpp"
#include "dcarp/vt.hpp"
#include "test_util.hpp"

using namespace dcarp;
using namespace testutil;

namespace {

bool has_kind(const FeasibilityReport& rep, Violation::Kind k) {
    return std::any_of(rep.violations.begin(), rep.violations.end(),
                       [k](const Violation& v) { return v.kind == k; });
}

}  // namespace

TEST_CASE("route cost matches hand computation on the diamond") {
    const DcarpInstance inst = diamond();
    // Tasks (arc order): 0 = 1-2, 1 = 2-3, 2 = 3-4.
    const Route r12{1, {{1, false}, {2, false}}};
    CHECK(route_cost(r12, inst) == 13);  // 2 + 5 + 0 + 4 + 2
    CHECK(route_demand(r12, inst) == 8);
    const Route r0{1, {{0, false}}};
    CHECK(route_cost(r0, inst) == 5);  // 0 + 3 + 2
    const Solution best{{r12, r0}};
    CHECK(total_cost(best, inst) == 18);

    // Reversing a task changes the connecting legs, not the serving cost.
    const Route rev{1, {{1, true}, {2, false}}};
    CHECK(route_cost(rev, inst) == 18);  // 4 + 5 + 3 + 4 + 2
    // A single-task route is direction-symmetric because dc is symmetric.
    CHECK(route_cost(Route{1, {{0, true}}}, inst) == route_cost(r0, inst));
}

TEST_CASE("empty routes") {
    const DcarpInstance inst = diamond_with_ov();
    CHECK(route_cost(Route{1, {}}, inst) == 0);
    CHECK(route_cost(Route{3, {}}, inst) == 4);  // stop vertex still returns to the depot
    CHECK(route_demand(Route{3, {}}, inst) == 0);
}

TEST_CASE("route cost equals the matrix oracle on random solutions") {
    Rng rng(555);
    for (int it = 0; it < 40; ++it) {
        const DcarpInstance inst = random_instance(rng);
        const StaticView view = build_static_view(inst);
        const Solution s = random_view_solution(view, rng);
        const auto fw = fw_matrix(view.inst.network);
        CHECK(total_cost(s, view.inst) == oracle_total_cost(s, view.inst, fw));
        for (const Route& r : s.routes)
            CHECK(route_cost(r, view.inst) == oracle_route_cost(r, view.inst, fw));
    }
}

TEST_CASE("unreachable legs saturate or throw") {
    DcarpInstance inst = diamond();
    for (Arc& arc : inst.network.arcs)
        if (arc.entry == 4 || arc.exit == 4) {
            arc.state = ArcState::Closed;
            arc.dc = kInfCost;
        }
    inst.mdc = shortest_deadhead_matrix(inst.network);
    const Route r{1, {{2, false}}};  // 3-4 task, exit vertex now unreachable
    CHECK(route_cost_sat(r, inst) == kInfCost);
    CHECK_THROWS_AS(route_cost(r, inst), InfeasibleError);
    CHECK(total_cost_sat(Solution{{r}}, inst) == kInfCost);
}

TEST_CASE("feasibility violations are reported by kind") {
    const DcarpInstance plain = diamond();

    SUBCASE("feasible optimum") {
        const Solution s{{Route{1, {{1, false}, {2, false}}}, Route{1, {{0, false}}}}};
        CHECK(check_feasibility(s, plain).feasible());
    }
    SUBCASE("missing task") {
        const Solution s{{Route{1, {{0, false}}}}};
        CHECK(has_kind(check_feasibility(s, plain), Violation::MissingTask));
    }
    SUBCASE("duplicate task") {
        const Solution s{{Route{1, {{0, false}, {1, false}}}, Route{1, {{0, true}, {2, false}}}}};
        CHECK(has_kind(check_feasibility(s, plain), Violation::DuplicateTask));
    }
    SUBCASE("capacity exceeded") {
        const Solution s{{Route{1, {{0, false}, {1, false}, {2, false}}}}};
        CHECK(has_kind(check_feasibility(s, plain), Violation::CapacityExceeded));
    }
    SUBCASE("unknown task index") {
        const Solution s{{Route{1, {{0, false}, {1, false}, {2, false}, {9, false}}}}};
        CHECK(has_kind(check_feasibility(s, plain), Violation::UnknownTask));
    }
    SUBCASE("depot route starting elsewhere") {
        const Solution s{{Route{2, {{0, false}, {1, false}}}, Route{1, {{2, false}}}}};
        CHECK(has_kind(check_feasibility(s, plain), Violation::StartMismatch));
    }
}

TEST_CASE("outside vehicle routes are checked against stop and remaining capacity") {
    const DcarpInstance inst = diamond_with_ov();
    // Tasks: 0 = 1-2 (dm 4), 1 = 3-4 (dm 3); OV 0 stopped at 3 with q 6.
    REQUIRE(inst.tasks.size() == 2);
    REQUIRE(inst.outside.size() == 1);

    SUBCASE("valid executable solution") {
        const Solution s{{Route{3, {{1, false}}}, Route{1, {{0, false}}}}};
        CHECK(check_feasibility(s, inst).feasible());
        CHECK(total_cost(s, inst) == 11);  // 0+4+2 from the stop, 0+3+2 from the depot
    }
    SUBCASE("route 0 must start at the stop vertex") {
        const Solution s{{Route{1, {{1, false}}}, Route{1, {{0, false}}}}};
        CHECK(has_kind(check_feasibility(s, inst), Violation::StartMismatch));
    }
    SUBCASE("remaining capacity binds route 0") {
        const Solution s{{Route{3, {{1, false}, {0, false}}}, Route{1, {}}}};
        CHECK(has_kind(check_feasibility(s, inst), Violation::CapacityExceeded));
    }
    SUBCASE("missing outside vehicle route") {
        const Solution s{{Route{1, {{0, false}, {1, false}}}}};
        CHECK(!check_feasibility(s, inst).feasible());
    }
}

TEST_CASE("solution text round-trips") {
    Rng rng(8080);
    for (int it = 0; it < 20; ++it) {
        const DcarpInstance inst = random_instance(rng);
        const StaticView view = build_static_view(inst);
        const Solution s = random_view_solution(view, rng);
        const std::string text = write_solution(s, view.inst.tasks, view.inst.depot());
        const Solution back = parse_solution(text, view.inst.tasks);
        CHECK(back == s);
    }
}

TEST_CASE("solution text uses signed 1-based arc ids and v-tags") {
    const DcarpInstance inst = diamond_with_ov();
    const StaticView view = build_static_view(inst);
    // View tasks: 0 = 1-2 (arc 0), 1 = 3-4 (arc 4), 2 = virtual for OV 0.
    const Solution s{{Route{1, {{2, false}, {1, true}}}, Route{1, {{0, false}}}}};
    const std::string text = write_solution(s, view.inst.tasks, view.inst.depot());
    CHECK(text == "1 | v1 -5 | 1\n1 | 1 | 1\n");
    CHECK(parse_solution(text, view.inst.tasks) == s);
    CHECK_THROWS_AS(parse_solution("1 | 9 | 1\n", view.inst.tasks), ParseError);
    CHECK_THROWS_AS(parse_solution("1 | v4 | 1\n", view.inst.tasks), ParseError);
    CHECK_THROWS_AS(parse_solution("1 | 1\n", view.inst.tasks), ParseError);
}
