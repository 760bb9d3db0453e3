#include "dcarp/local_search.hpp"

#include <algorithm>

#include "dcarp/evaluate.hpp"

namespace dcarp {

namespace {

Cost steps_cost(const StaticView& view, const std::vector<TaskStep>& steps) {
    const DcarpInstance& inst = view.inst;
    Cost total = 0;
    int at = inst.depot();
    for (const TaskStep& st : steps) {
        const Task& t = inst.tasks[static_cast<std::size_t>(st.task)];
        total = add_sat(total, inst.mdc.at(at, step_entry(t, st.rev)));
        total = add_sat(total, t.sc);
        at = step_exit(t, st.rev);
    }
    return add_sat(total, inst.mdc.at(at, inst.depot()));
}

Demand steps_load(const StaticView& view, const std::vector<TaskStep>& steps) {
    Demand d = 0;
    for (const TaskStep& st : steps)
        d += view.inst.tasks[static_cast<std::size_t>(st.task)].dm;
    return d;
}

bool contains_virtual(const StaticView& view, const std::vector<TaskStep>& steps, int from,
                      int to) {
    for (int k = from; k < to; ++k)
        if (view.inst.tasks[static_cast<std::size_t>(steps[static_cast<std::size_t>(k)].task)]
                .is_virtual())
            return true;
    return false;
}

}  // namespace

void Neighborhood::load(const Solution& s) {
    routes_ = s.routes;
    costs_.clear();
    loads_.clear();
    total_ = 0;
    for (const Route& r : routes_) {
        const Cost c = steps_cost(*view_, r.steps);
        costs_.push_back(c);
        loads_.push_back(steps_load(*view_, r.steps));
        total_ = add_sat(total_, c);
    }
}

Solution Neighborhood::extract() const {
    Solution s;
    for (const Route& r : routes_)
        if (!r.steps.empty()) s.routes.push_back(r);
    return s;
}

void Neighborhood::consider(Move& best, bool& found, bool improving_only,
                            const std::vector<long long>* tabu_until, long long iter,
                            Cost aspiration, int r1, int r2,
                            const std::vector<TaskStep>& new1,
                            const std::vector<TaskStep>& new2,
                            std::initializer_list<int> touched) {
    const Demand q = view_->inst.capacity();
    if (steps_load(*view_, new1) > q) return;
    if (r2 != -2 && steps_load(*view_, new2) > q) return;
    const Cost c1_new = steps_cost(*view_, new1);
    if (c1_new == kInfCost) return;
    const Cost c2_new = r2 != -2 ? steps_cost(*view_, new2) : 0;
    if (c2_new == kInfCost) return;

    const Cost c1_old = costs_[static_cast<std::size_t>(r1)];
    const Cost c2_old = r2 >= 0 ? costs_[static_cast<std::size_t>(r2)] : 0;
    const Cost delta = c1_new + c2_new - c1_old - c2_old;
    if (improving_only && delta >= 0) return;
    if (found && delta >= best.delta) return;

    if (tabu_until != nullptr) {
        bool tabu = false;
        for (int t : touched)
            if ((*tabu_until)[static_cast<std::size_t>(t)] > iter) tabu = true;
        if (tabu && !(aspiration >= 0 && total_ + delta < aspiration)) return;
    }

    best.delta = delta;
    best.r1 = r1;
    best.r2 = r2;
    best.has_r2 = r2 != -2;
    best.new1 = new1;
    best.new2 = new2;
    best.touched.assign(touched.begin(), touched.end());
    found = true;
}

bool Neighborhood::best_move(Move& out, bool improving_only,
                             const std::vector<long long>* tabu_until, long long iter,
                             Cost aspiration) {
    const DcarpInstance& inst = view_->inst;
    const int nr = static_cast<int>(routes_.size());
    bool found = false;
    Move best;
    std::vector<TaskStep> a, b;

    // Reuse one empty route as the relocation target instead of growing the
    // route list without bound.
    int empty_route = -1;
    for (int r = 0; r < nr; ++r)
        if (routes_[static_cast<std::size_t>(r)].steps.empty()) {
            empty_route = r;
            break;
        }

    auto eval = [&](int r1, int r2, const std::vector<TaskStep>& n1,
                    const std::vector<TaskStep>& n2, std::initializer_list<int> touched) {
        consider(best, found, improving_only, tabu_until, iter, aspiration, r1, r2, n1, n2,
                 touched);
    };

    // Single insertion.
    for (int r1 = 0; r1 < nr; ++r1) {
        const auto& s1 = routes_[static_cast<std::size_t>(r1)].steps;
        for (int i = 0; i < static_cast<int>(s1.size()); ++i) {
            const TaskStep moved = s1[static_cast<std::size_t>(i)];
            const Task& t = inst.tasks[static_cast<std::size_t>(moved.task)];
            a = s1;
            a.erase(a.begin() + i);
            const int ndirs = t.is_virtual() ? 1 : 2;
            // Same route.
            for (int j = 0; j <= static_cast<int>(a.size()); ++j)
                for (int d = 0; d < ndirs; ++d) {
                    b = a;
                    b.insert(b.begin() + j, {moved.task, d == 1});
                    if (b == s1) continue;
                    eval(r1, -2, b, {}, {moved.task});
                }
            // Other routes.
            for (int r2 = 0; r2 < nr; ++r2) {
                if (r2 == r1) continue;
                const auto& s2 = routes_[static_cast<std::size_t>(r2)].steps;
                if (s2.empty() && r2 != empty_route) continue;
                for (int j = 0; j <= static_cast<int>(s2.size()); ++j)
                    for (int d = 0; d < ndirs; ++d) {
                        b = s2;
                        b.insert(b.begin() + j, {moved.task, d == 1});
                        eval(r1, r2, a, b, {moved.task});
                    }
            }
            // Fresh route when no empty one exists.
            if (empty_route < 0)
                for (int d = 0; d < ndirs; ++d)
                    eval(r1, -1, a, {{moved.task, d == 1}}, {moved.task});
        }
    }

    // Double insertion: two consecutive steps, order preserved.
    std::vector<TaskStep> pair(2);
    for (int r1 = 0; r1 < nr; ++r1) {
        const auto& s1 = routes_[static_cast<std::size_t>(r1)].steps;
        for (int i = 0; i + 1 < static_cast<int>(s1.size()); ++i) {
            const TaskStep m1 = s1[static_cast<std::size_t>(i)];
            const TaskStep m2 = s1[static_cast<std::size_t>(i + 1)];
            const Task& t1 = inst.tasks[static_cast<std::size_t>(m1.task)];
            const Task& t2 = inst.tasks[static_cast<std::size_t>(m2.task)];
            a = s1;
            a.erase(a.begin() + i, a.begin() + i + 2);
            const int nd1 = t1.is_virtual() ? 1 : 2;
            const int nd2 = t2.is_virtual() ? 1 : 2;
            for (int d1 = 0; d1 < nd1; ++d1)
                for (int d2 = 0; d2 < nd2; ++d2) {
                    pair[0] = {m1.task, d1 == 1};
                    pair[1] = {m2.task, d2 == 1};
                    for (int j = 0; j <= static_cast<int>(a.size()); ++j) {
                        b = a;
                        b.insert(b.begin() + j, pair.begin(), pair.end());
                        if (b == s1) continue;
                        eval(r1, -2, b, {}, {m1.task, m2.task});
                    }
                    for (int r2 = 0; r2 < nr; ++r2) {
                        if (r2 == r1) continue;
                        const auto& s2 = routes_[static_cast<std::size_t>(r2)].steps;
                        if (s2.empty() && r2 != empty_route) continue;
                        for (int j = 0; j <= static_cast<int>(s2.size()); ++j) {
                            b = s2;
                            b.insert(b.begin() + j, pair.begin(), pair.end());
                            eval(r1, r2, a, b, {m1.task, m2.task});
                        }
                    }
                    if (empty_route < 0) eval(r1, -1, a, pair, {m1.task, m2.task});
                }
        }
    }

    // Swap.
    for (int r1 = 0; r1 < nr; ++r1)
        for (int r2 = r1; r2 < nr; ++r2) {
            const auto& s1 = routes_[static_cast<std::size_t>(r1)].steps;
            const auto& s2 = routes_[static_cast<std::size_t>(r2)].steps;
            for (int i = 0; i < static_cast<int>(s1.size()); ++i) {
                const int j0 = r1 == r2 ? i + 1 : 0;
                for (int j = j0; j < static_cast<int>(s2.size()); ++j) {
                    const TaskStep mi = s1[static_cast<std::size_t>(i)];
                    const TaskStep mj = s2[static_cast<std::size_t>(j)];
                    const Task& ti = inst.tasks[static_cast<std::size_t>(mi.task)];
                    const Task& tj = inst.tasks[static_cast<std::size_t>(mj.task)];
                    const int ndi = ti.is_virtual() ? 1 : 2;
                    const int ndj = tj.is_virtual() ? 1 : 2;
                    for (int di = 0; di < ndi; ++di)
                        for (int dj = 0; dj < ndj; ++dj) {
                            if (r1 == r2) {
                                a = s1;
                                a[static_cast<std::size_t>(i)] = {mj.task, dj == 1};
                                a[static_cast<std::size_t>(j)] = {mi.task, di == 1};
                                if (a == s1) continue;
                                eval(r1, -2, a, {}, {mi.task, mj.task});
                            } else {
                                a = s1;
                                b = s2;
                                a[static_cast<std::size_t>(i)] = {mj.task, dj == 1};
                                b[static_cast<std::size_t>(j)] = {mi.task, di == 1};
                                eval(r1, r2, a, b, {mi.task, mj.task});
                            }
                        }
                }
            }
        }

    // Two-opt, intra route: reverse a segment, flipping directions. Segments
    // containing a virtual task cannot reverse (no twin direction).
    for (int r = 0; r < nr; ++r) {
        const auto& s = routes_[static_cast<std::size_t>(r)].steps;
        for (int i = 0; i < static_cast<int>(s.size()); ++i)
            for (int j = i + 1; j < static_cast<int>(s.size()); ++j) {
                if (contains_virtual(*view_, s, i, j + 1)) break;
                a = s;
                std::reverse(a.begin() + i, a.begin() + j + 1);
                for (int k = i; k <= j; ++k)
                    a[static_cast<std::size_t>(k)].rev = !a[static_cast<std::size_t>(k)].rev;
                eval(r, -2, a, {},
                     {s[static_cast<std::size_t>(i)].task, s[static_cast<std::size_t>(j)].task});
            }
    }

    // Two-opt, inter route: exchange tails at cut points.
    for (int r1 = 0; r1 < nr; ++r1)
        for (int r2 = r1 + 1; r2 < nr; ++r2) {
            const auto& s1 = routes_[static_cast<std::size_t>(r1)].steps;
            const auto& s2 = routes_[static_cast<std::size_t>(r2)].steps;
            for (int i = 0; i <= static_cast<int>(s1.size()); ++i)
                for (int j = 0; j <= static_cast<int>(s2.size()); ++j) {
                    if (i == 0 && j == 0) continue;
                    if (i == static_cast<int>(s1.size()) && j == static_cast<int>(s2.size()))
                        continue;
                    a.assign(s1.begin(), s1.begin() + i);
                    a.insert(a.end(), s2.begin() + j, s2.end());
                    b.assign(s2.begin(), s2.begin() + j);
                    b.insert(b.end(), s1.begin() + i, s1.end());
                    // Boundary tasks at the cut points, for tabu marks. At
                    // least one exists: the all-empty case is skipped above.
                    int ta = -1, tb = -1;
                    if (i < static_cast<int>(s1.size()))
                        ta = s1[static_cast<std::size_t>(i)].task;
                    else if (i > 0)
                        ta = s1[static_cast<std::size_t>(i - 1)].task;
                    if (j < static_cast<int>(s2.size()))
                        tb = s2[static_cast<std::size_t>(j)].task;
                    else if (j > 0)
                        tb = s2[static_cast<std::size_t>(j - 1)].task;
                    if (ta < 0) ta = tb;
                    if (tb < 0) tb = ta;
                    eval(r1, r2, a, b, {ta, tb});
                }
        }

    if (found) out = std::move(best);
    return found;
}

void Neighborhood::apply(const Move& m) {
    auto set_route = [&](int r, const std::vector<TaskStep>& steps) {
        routes_[static_cast<std::size_t>(r)].steps = steps;
        const Cost c = steps_cost(*view_, steps);
        total_ = total_ - costs_[static_cast<std::size_t>(r)] + c;
        costs_[static_cast<std::size_t>(r)] = c;
        loads_[static_cast<std::size_t>(r)] = steps_load(*view_, steps);
    };
    set_route(m.r1, m.new1);
    if (m.r2 >= 0) {
        set_route(m.r2, m.new2);
    } else if (m.r2 == -1) {
        routes_.push_back({view_->inst.depot(), m.new2});
        const Cost c = steps_cost(*view_, m.new2);
        costs_.push_back(c);
        loads_.push_back(steps_load(*view_, m.new2));
        total_ = add_sat(total_, c);
    }
}

Solution local_search(const Solution& s, const StaticView& view, const LsLimits& limits) {
    Neighborhood nb(view);
    nb.load(s);
    long long moves = 0;
    Move m;
    while ((limits.max_moves < 0 || moves < limits.max_moves) && nb.best_move(m, true)) {
        nb.apply(m);
        ++moves;
    }
    if (limits.moves_out != nullptr) *limits.moves_out += moves;
    return nb.extract();
}

}  // namespace dcarp
