#pragma once

#include <vector>

#include "dcarp/split.hpp"

namespace dcarp {

// A candidate move: replacement step lists for one or two routes. r2 == -1
// appends a new depot route. `touched` lists task ids whose position or
// direction changed (tabu bookkeeping).
struct Move {
    Cost delta = 0;
    int r1 = -1;
    int r2 = -1;
    bool has_r2 = false;
    std::vector<TaskStep> new1;
    std::vector<TaskStep> new2;
    std::vector<int> touched;
};

// Move neighborhood over a static-view solution: single insertion, double
// insertion, swap, and two-opt (intra-route reversal and inter-route tail
// swap), each with direction re-optimization for the moved tasks. Scan order
// is fixed, so results are deterministic.
class Neighborhood {
  public:
    explicit Neighborhood(const StaticView& view) : view_(&view) {}

    void load(const Solution& s);
    // Drops empty routes.
    Solution extract() const;
    Cost total() const { return total_; }

    // Best move by delta (ties keep the first found). When improving_only,
    // only delta < 0 qualifies. A move is tabu when any touched task has
    // tabu_until[task] > iter, unless the move's resulting total beats
    // `aspiration`. Returns false when no admissible move exists.
    bool best_move(Move& out, bool improving_only,
                   const std::vector<long long>* tabu_until = nullptr, long long iter = 0,
                   Cost aspiration = -1);

    void apply(const Move& m);

  private:
    void consider(Move& best, bool& found, bool improving_only,
                  const std::vector<long long>* tabu_until, long long iter, Cost aspiration,
                  int r1, int r2, const std::vector<TaskStep>& new1,
                  const std::vector<TaskStep>& new2, std::initializer_list<int> touched);

    const StaticView* view_;
    std::vector<Route> routes_;
    std::vector<Cost> costs_;
    std::vector<Demand> loads_;
    Cost total_ = 0;
};

struct LsLimits {
    long long max_moves = -1;    // < 0 = until local optimum
    long long* moves_out = nullptr;
};

// Best-improvement descent until a local optimum (or the move cap). Output
// cost <= input cost; feasibility preserved.
Solution local_search(const Solution& s, const StaticView& view, const LsLimits& limits = {});

}  // namespace dcarp
