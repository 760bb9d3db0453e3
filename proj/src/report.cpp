#include "dcarp/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"

namespace dcarp {

namespace {

std::string fmt2(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

}  // namespace

Report build_report(const ScenarioLog& log, const std::string& baseline) {
    if (log.rows.empty()) throw DcarpError("report needs a nonempty log");

    std::vector<std::string> arm_order;
    for (const LogRow& r : log.rows)
        if (std::find(arm_order.begin(), arm_order.end(), r.arm) == arm_order.end())
            arm_order.push_back(r.arm);

    Report rep;
    rep.baseline = baseline.empty() ? arm_order.front() : baseline;
    if (std::find(arm_order.begin(), arm_order.end(), rep.baseline) == arm_order.end())
        throw DcarpError("baseline is not an arm in the log: " + rep.baseline);

    std::map<int, std::map<std::string, std::vector<const LogRow*>>> cells;
    for (const LogRow& r : log.rows) cells[r.m][r.arm].push_back(&r);

    for (const auto& [m, arms] : cells)
        for (const std::string& arm : arm_order) {
            const auto it = arms.find(arm);
            if (it == arms.end()) continue;
            ArmSummary s;
            s.m = m;
            s.arm = arm;
            long double sq = 0.0L;
            for (const LogRow* r : it->second) {
                if (r->feasible != 1) {
                    ++s.fails;
                    continue;
                }
                ++s.n;
                s.sum += r->cost;
                sq += static_cast<long double>(r->cost) * static_cast<long double>(r->cost);
                s.min = s.n == 1 ? r->cost : std::min(s.min, r->cost);
            }
            if (s.n > 0) {
                s.mean = static_cast<double>(s.sum) / s.n;
                const long double var =
                    sq / s.n - static_cast<long double>(s.mean) * static_cast<long double>(s.mean);
                s.std_dev = var > 0.0L ? static_cast<double>(std::sqrt(var)) : 0.0;
            }
            rep.cells.push_back(std::move(s));
        }

    // Exact mean comparison per instance index: sum_a * n_b vs sum_b * n_a.
    auto cell_of = [&](int m, const std::string& arm) -> const ArmSummary* {
        for (const ArmSummary& s : rep.cells)
            if (s.m == m && s.arm == arm) return &s;
        return nullptr;
    };
    for (const std::string& arm : arm_order) {
        WdlRow w;
        w.arm = arm;
        for (const auto& [m, arms] : cells) {
            const ArmSummary* a = cell_of(m, arm);
            const ArmSummary* b = cell_of(m, rep.baseline);
            if (a == nullptr || b == nullptr || a->n == 0 || b->n == 0) continue;
            const __int128 lhs = static_cast<__int128>(a->sum) * b->n;
            const __int128 rhs = static_cast<__int128>(b->sum) * a->n;
            if (lhs < rhs) ++w.wins;
            else if (lhs == rhs) ++w.draws;
            else ++w.losses;
        }
        rep.wdl.push_back(std::move(w));
    }
    return rep;
}

std::string report_text(const Report& r) {
    std::ostringstream out;
    std::vector<std::array<std::string, 7>> rows;
    rows.push_back({"m", "arm", "n", "fails", "mean", "std", "min"});
    for (const ArmSummary& s : r.cells)
        rows.push_back({std::to_string(s.m), s.arm, std::to_string(s.n), std::to_string(s.fails),
                        s.n > 0 ? fmt2(s.mean) : "-", s.n > 0 ? fmt2(s.std_dev) : "-",
                        s.n > 0 ? std::to_string(s.min) : "-"});
    std::array<std::size_t, 7> width{};
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << row[c];
            if (c + 1 < row.size()) out << std::string(width[c] - row[c].size() + 2, ' ');
        }
        out << '\n';
    }
    out << "\nwin-draw-lose vs " << r.baseline << " (lower mean wins, exact ties draw):\n";
    for (const WdlRow& w : r.wdl)
        out << "  " << w.arm << ": " << w.wins << "-" << w.draws << "-" << w.losses << '\n';
    return out.str();
}

std::string report_csv(const Report& r) {
    std::ostringstream out;
    out << "m,arm,n,fails,mean,std,min\n";
    for (const ArmSummary& s : r.cells) {
        out << s.m << ',' << s.arm << ',' << s.n << ',' << s.fails << ',';
        if (s.n > 0) out << fmt2(s.mean) << ',' << fmt2(s.std_dev) << ',' << s.min;
        else out << ",,";
        out << '\n';
    }
    out << "\narm,wins,draws,losses\n";
    for (const WdlRow& w : r.wdl)
        out << w.arm << ',' << w.wins << ',' << w.draws << ',' << w.losses << '\n';
    return out.str();
}

std::string report_json(const Report& r) {
    nlohmann::json j;
    j["baseline"] = r.baseline;
    j["cells"] = nlohmann::json::array();
    for (const ArmSummary& s : r.cells) {
        nlohmann::json c{{"m", s.m},       {"arm", s.arm},          {"n", s.n},
                         {"fails", s.fails}};
        if (s.n > 0) {
            c["mean"] = s.mean;
            c["std"] = s.std_dev;
            c["min"] = s.min;
        }
        j["cells"].push_back(std::move(c));
    }
    j["wdl"] = nlohmann::json::array();
    for (const WdlRow& w : r.wdl)
        j["wdl"].push_back({{"arm", w.arm}, {"wins", w.wins}, {"draws", w.draws},
                            {"losses", w.losses}});
    return j.dump(2) + "\n";
}

}  // namespace dcarp
