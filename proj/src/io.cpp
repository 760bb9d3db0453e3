#include "dcarp/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace dcarp {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool blank_or_comment(const std::string& line) {
    const std::string t = trim(line);
    return t.empty() || t[0] == '#';
}

long long to_int(const std::string& tok, const std::string& what) {
    long long v = 0;
    const char* b = tok.data();
    const char* e = b + tok.size();
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || p != e)
        throw ParseError("expected an integer for " + what + ", got '" + tok + "'");
    return v;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

// Reads lines, skipping blanks and comments; tracks line numbers for errors.
class LineReader {
  public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++lineno_;
            if (!blank_or_comment(line)) {
                line = trim(line);
                return true;
            }
        }
        return false;
    }

    void push_back(const std::string& line) { pending_ = line; }

    bool next_or_pending(std::string& line) {
        if (!pending_.empty()) {
            line = pending_;
            pending_.clear();
            return true;
        }
        return next(line);
    }

    int lineno() const { return lineno_; }

  private:
    std::istream& in_;
    std::string pending_;
    int lineno_ = 0;
};

struct HeaderLine {
    std::string key;
    std::string value;
};

// `KEY : VALUE`; returns false when the line has no colon.
bool split_header(const std::string& line, HeaderLine& h) {
    const std::size_t pos = line.find(':');
    if (pos == std::string::npos) return false;
    h.key = trim(line.substr(0, pos));
    h.value = trim(line.substr(pos + 1));
    return true;
}

[[noreturn]] void fail(const LineReader& r, const std::string& msg) {
    throw ParseError("line " + std::to_string(r.lineno()) + ": " + msg);
}

}  // namespace

DcarpInstance parse_instance(std::istream& in) {
    LineReader rd(in);
    DcarpInstance inst;
    RoadNetwork& net = inst.network;

    long long n_req = -1, n_nonreq = -1;
    bool have_vertices = false, have_depot = false, have_vehicles = false,
         have_capacity = false;

    std::string line;
    // Headers until LIST_REQ.
    while (true) {
        if (!rd.next(line)) fail(rd, "unexpected end of file before LIST_REQ");
        HeaderLine h;
        if (!split_header(line, h)) fail(rd, "expected 'KEY : VALUE', got '" + line + "'");
        if (h.key == "LIST_REQ") break;
        if (h.key == "NAME") {
            net.name = h.value;
        } else if (h.key == "VERTICES") {
            net.num_vertices = static_cast<int>(to_int(h.value, "VERTICES"));
            if (net.num_vertices < 1) fail(rd, "VERTICES must be positive");
            have_vertices = true;
        } else if (h.key == "DEPOT") {
            net.depot = static_cast<int>(to_int(h.value, "DEPOT"));
            have_depot = true;
        } else if (h.key == "VEHICLES") {
            net.fleet_size = static_cast<int>(to_int(h.value, "VEHICLES"));
            if (net.fleet_size < 1) fail(rd, "VEHICLES must be at least 1");
            have_vehicles = true;
        } else if (h.key == "CAPACITY") {
            net.capacity = to_int(h.value, "CAPACITY");
            if (net.capacity <= 0) fail(rd, "CAPACITY must be positive");
            have_capacity = true;
        } else if (h.key == "EDGES_REQUIRED") {
            n_req = to_int(h.value, "EDGES_REQUIRED");
        } else if (h.key == "EDGES_NONREQUIRED") {
            n_nonreq = to_int(h.value, "EDGES_NONREQUIRED");
        } else {
            fail(rd, "malformed header key '" + h.key + "'");
        }
    }
    if (!have_vertices) throw ParseError("missing VERTICES header");
    if (!have_depot) throw ParseError("missing DEPOT header");
    if (!have_vehicles) throw ParseError("missing VEHICLES header");
    if (!have_capacity) throw ParseError("missing CAPACITY header");
    if (n_req < 0) throw ParseError("missing EDGES_REQUIRED header");
    if (n_nonreq < 0) throw ParseError("missing EDGES_NONREQUIRED header");
    if (!net.valid_vertex(net.depot)) throw ParseError("DEPOT vertex out of range");

    std::map<std::pair<int, int>, int> edge_ids;  // unordered pair -> forward arc id
    auto read_vertex = [&](const std::string& tok) {
        const int v = static_cast<int>(to_int(tok, "vertex id"));
        if (!net.valid_vertex(v)) fail(rd, "vertex index " + std::to_string(v) + " out of range");
        return v;
    };
    auto add_parsed_edge = [&](int u, int v, Cost dc, Cost sc, Demand dm) {
        if (u == v) fail(rd, "self-loop edge at vertex " + std::to_string(u));
        const auto key = std::minmax(u, v);
        if (edge_ids.count(key))
            fail(rd, "duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
        edge_ids[key] = net.add_edge(u, v, dc, sc, dm);
    };

    for (long long i = 0; i < n_req; ++i) {
        if (!rd.next(line)) fail(rd, "unexpected end of file in LIST_REQ");
        const auto toks = split_ws(line);
        if (toks.size() != 4 && toks.size() != 5)
            fail(rd, "LIST_REQ line needs 'u v dc dm [sc]', got '" + line + "'");
        const int u = read_vertex(toks[0]);
        const int v = read_vertex(toks[1]);
        const Cost dc = to_int(toks[2], "dc");
        const Demand dm = to_int(toks[3], "dm");
        const Cost sc = toks.size() == 5 ? to_int(toks[4], "sc") : dc;
        if (dc < 0 || sc < 0) fail(rd, "negative cost on edge " + line);
        if (dm <= 0) fail(rd, "required edge must have positive demand: '" + line + "'");
        if (sc < dc) fail(rd, "serving cost below deadheading cost: '" + line + "'");
        add_parsed_edge(u, v, dc, sc, dm);
    }

    if (!rd.next(line)) fail(rd, "unexpected end of file before LIST_NONREQ");
    {
        HeaderLine h;
        if (!split_header(line, h) || h.key != "LIST_NONREQ")
            fail(rd, "expected 'LIST_NONREQ :', got '" + line + "'");
    }
    for (long long i = 0; i < n_nonreq; ++i) {
        if (!rd.next(line)) fail(rd, "unexpected end of file in LIST_NONREQ");
        const auto toks = split_ws(line);
        if (toks.size() != 3) fail(rd, "LIST_NONREQ line needs 'u v dc', got '" + line + "'");
        const int u = read_vertex(toks[0]);
        const int v = read_vertex(toks[1]);
        const Cost dc = to_int(toks[2], "dc");
        if (dc < 0) fail(rd, "negative cost on edge " + line);
        add_parsed_edge(u, v, dc, dc, 0);
    }

    // Optional sections in any order.
    while (rd.next_or_pending(line)) {
        HeaderLine h;
        if (!split_header(line, h)) fail(rd, "expected a section header, got '" + line + "'");
        if (h.key == "OUTSIDE_VEHICLES") {
            const long long n_ov = to_int(h.value, "OUTSIDE_VEHICLES");
            if (n_ov < 0) fail(rd, "OUTSIDE_VEHICLES must be nonnegative");
            if (!rd.next(line)) fail(rd, "unexpected end of file before LIST_OV");
            HeaderLine h2;
            if (!split_header(line, h2) || h2.key != "LIST_OV")
                fail(rd, "expected 'LIST_OV :', got '" + line + "'");
            for (long long i = 0; i < n_ov; ++i) {
                if (!rd.next(line)) fail(rd, "unexpected end of file in LIST_OV");
                const auto toks = split_ws(line);
                if (toks.size() != 2)
                    fail(rd, "LIST_OV line needs 'stop_vertex remaining_capacity'");
                const int stop = read_vertex(toks[0]);
                const Demand q = to_int(toks[1], "remaining capacity");
                if (q < 0) fail(rd, "negative remaining capacity");
                if (q > net.capacity) fail(rd, "remaining capacity exceeds Q");
                inst.outside.push_back({stop, q, -1});
            }
        } else if (h.key == "ARC_STATES") {
            while (rd.next(line)) {
                if (line.find(':') != std::string::npos) {
                    rd.push_back(line);
                    break;
                }
                const auto toks = split_ws(line);
                if (toks.size() != 4)
                    fail(rd, "ARC_STATES line needs 'u v state dc_current', got '" + line + "'");
                const int u = read_vertex(toks[0]);
                const int v = read_vertex(toks[1]);
                const long long st = to_int(toks[2], "state");
                const Cost dc_cur = to_int(toks[3], "dc_current");
                const auto key = std::minmax(u, v);
                const auto it = edge_ids.find(key);
                if (it == edge_ids.end())
                    fail(rd, "ARC_STATES references unknown edge " + std::to_string(u) + "-" +
                                 std::to_string(v));
                Arc& fwd = net.arcs[static_cast<std::size_t>(it->second)];
                Arc& bwd = net.arcs[static_cast<std::size_t>(fwd.twin)];
                if (fwd.state != ArcState::Normal)
                    fail(rd, "duplicate ARC_STATES row for edge " + std::to_string(u) + "-" +
                                 std::to_string(v));
                if (st == 2) {
                    fwd.state = bwd.state = ArcState::Closed;
                    fwd.dc = bwd.dc = kInfCost;
                } else if (st == 3) {
                    if (dc_cur < fwd.base_dc)
                        fail(rd, "congested cost below base cost: '" + line + "'");
                    fwd.state = bwd.state = ArcState::Congested;
                    fwd.dc = bwd.dc = dc_cur;
                } else {
                    fail(rd, "unknown arc state " + std::to_string(st));
                }
            }
        } else {
            fail(rd, "malformed header key '" + h.key + "'");
        }
    }

    rebuild_instance(inst);
    const auto problems = validate_instance(inst);
    if (!problems.empty()) throw ParseError("invalid instance: " + problems.front());
    return inst;
}

DcarpInstance parse_instance_text(const std::string& text) {
    std::istringstream is(text);
    return parse_instance(is);
}

DcarpInstance load_instance(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open instance file '" + path + "'");
    return parse_instance(f);
}

std::string write_instance(const DcarpInstance& inst) {
    const RoadNetwork& net = inst.network;
    std::ostringstream os;
    long long n_req = 0, n_nonreq = 0;
    for (std::size_t a = 0; a < net.arcs.size(); a += 2)
        (net.arcs[a].dm > 0 ? n_req : n_nonreq) += 1;

    os << "NAME : " << net.name << "\n";
    os << "VERTICES : " << net.num_vertices << "\n";
    os << "DEPOT : " << net.depot << "\n";
    os << "VEHICLES : " << net.fleet_size << "\n";
    os << "CAPACITY : " << net.capacity << "\n";
    os << "EDGES_REQUIRED : " << n_req << "\n";
    os << "EDGES_NONREQUIRED : " << n_nonreq << "\n";
    os << "LIST_REQ :\n";
    for (std::size_t a = 0; a < net.arcs.size(); a += 2) {
        const Arc& arc = net.arcs[a];
        if (arc.dm > 0)
            os << arc.entry << " " << arc.exit << " " << arc.base_dc << " " << arc.dm << " "
               << arc.sc << "\n";
    }
    os << "LIST_NONREQ :\n";
    for (std::size_t a = 0; a < net.arcs.size(); a += 2) {
        const Arc& arc = net.arcs[a];
        if (arc.dm == 0) os << arc.entry << " " << arc.exit << " " << arc.base_dc << "\n";
    }
    if (!inst.outside.empty()) {
        os << "OUTSIDE_VEHICLES : " << inst.outside.size() << "\n";
        os << "LIST_OV :\n";
        for (const OutsideVehicle& ov : inst.outside)
            os << ov.stop_vertex << " " << ov.remaining_capacity << "\n";
    }
    bool any_state = false;
    for (std::size_t a = 0; a < net.arcs.size(); a += 2)
        if (net.arcs[a].state != ArcState::Normal) any_state = true;
    if (any_state) {
        // File order (required edges first), so a parse/rewrite cycle that
        // renumbers arc ids still reproduces the text byte for byte.
        os << "ARC_STATES :\n";
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t a = 0; a < net.arcs.size(); a += 2) {
                const Arc& arc = net.arcs[a];
                if ((pass == 0) != (arc.dm > 0)) continue;
                if (arc.state == ArcState::Closed)
                    os << arc.entry << " " << arc.exit << " 2 -1\n";
                else if (arc.state == ArcState::Congested)
                    os << arc.entry << " " << arc.exit << " 3 " << arc.dc << "\n";
            }
    }
    return os.str();
}

namespace {

using EdgeTuple = std::tuple<int, int, Cost, Cost, Cost, Demand, int>;

std::vector<EdgeTuple> edge_tuples(const DcarpInstance& inst) {
    std::vector<EdgeTuple> out;
    for (std::size_t a = 0; a < inst.network.arcs.size(); a += 2) {
        const Arc& arc = inst.network.arcs[a];
        const auto [lo, hi] = std::minmax(arc.entry, arc.exit);
        out.emplace_back(lo, hi, arc.base_dc, arc.dc, arc.sc, arc.dm,
                         static_cast<int>(arc.state));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

bool same_instance(const DcarpInstance& a, const DcarpInstance& b) {
    if (a.network.num_vertices != b.network.num_vertices) return false;
    if (a.network.depot != b.network.depot) return false;
    if (a.network.fleet_size != b.network.fleet_size) return false;
    if (a.network.capacity != b.network.capacity) return false;
    if (a.outside.size() != b.outside.size()) return false;
    for (std::size_t i = 0; i < a.outside.size(); ++i) {
        if (a.outside[i].stop_vertex != b.outside[i].stop_vertex) return false;
        if (a.outside[i].remaining_capacity != b.outside[i].remaining_capacity) return false;
    }
    return edge_tuples(a) == edge_tuples(b);
}

std::vector<std::string> validate_instance(const DcarpInstance& inst) {
    std::vector<std::string> out;
    const RoadNetwork& net = inst.network;
    if (net.num_vertices < 1) out.push_back("no vertices");
    if (!net.valid_vertex(net.depot)) out.push_back("depot out of range");
    if (net.capacity <= 0) out.push_back("capacity must be positive");
    if (net.fleet_size < 1) out.push_back("fleet size must be at least 1");
    if (net.arcs.size() % 2 != 0) out.push_back("arcs must come in twin pairs");

    for (std::size_t a = 0; a + 1 < net.arcs.size(); a += 2) {
        const Arc& f = net.arcs[a];
        const Arc& b = net.arcs[a + 1];
        const std::string tag = "edge " + std::to_string(f.entry) + "-" + std::to_string(f.exit);
        if (f.twin != static_cast<int>(a + 1) || b.twin != static_cast<int>(a))
            out.push_back(tag + ": twin links broken");
        if (f.entry != b.exit || f.exit != b.entry) out.push_back(tag + ": twin not mirrored");
        if (!net.valid_vertex(f.entry) || !net.valid_vertex(f.exit))
            out.push_back(tag + ": endpoint out of range");
        if (f.dm != b.dm) out.push_back(tag + ": twin demands differ");
        if (f.dm < 0) out.push_back(tag + ": negative demand");
        if (f.dm > net.capacity) out.push_back(tag + ": demand exceeds vehicle capacity");
        if (f.base_dc < 0) out.push_back(tag + ": negative base cost");
        if ((f.state == ArcState::Closed) != (f.dc == kInfCost))
            out.push_back(tag + ": closed state and cost disagree");
        if (f.state == ArcState::Normal && f.dc != f.base_dc)
            out.push_back(tag + ": normal arc cost differs from base");
        if (f.state == ArcState::Congested && f.dc < f.base_dc)
            out.push_back(tag + ": congested cost below base");
        if (f.state != b.state || f.dc != b.dc || f.sc != b.sc || f.base_dc != b.base_dc)
            out.push_back(tag + ": twins out of sync");
    }

    if (static_cast<int>(inst.outside.size()) > net.fleet_size)
        out.push_back("more outside vehicles than the fleet size");
    for (std::size_t k = 0; k < inst.outside.size(); ++k) {
        const OutsideVehicle& ov = inst.outside[k];
        const std::string tag = "outside vehicle " + std::to_string(k);
        if (!net.valid_vertex(ov.stop_vertex)) out.push_back(tag + ": stop vertex out of range");
        if (ov.remaining_capacity < 0 || ov.remaining_capacity > net.capacity)
            out.push_back(tag + ": remaining capacity out of range");
    }

    if (inst.mdc.n == net.num_vertices && net.valid_vertex(net.depot)) {
        for (const Task& t : inst.tasks) {
            if (t.is_virtual()) continue;
            if (inst.mdc.at(net.depot, t.entry) == kInfCost ||
                inst.mdc.at(net.depot, t.exit) == kInfCost ||
                inst.mdc.at(t.exit, net.depot) == kInfCost ||
                inst.mdc.at(t.entry, net.depot) == kInfCost)
                out.push_back("task endpoints " + std::to_string(t.entry) + "-" +
                              std::to_string(t.exit) + " not connected to the depot");
        }
        for (const OutsideVehicle& ov : inst.outside)
            if (inst.mdc.at(net.depot, ov.stop_vertex) == kInfCost ||
                inst.mdc.at(ov.stop_vertex, net.depot) == kInfCost)
                out.push_back("stop vertex " + std::to_string(ov.stop_vertex) +
                              " not connected to the depot");
    } else if (inst.mdc.n != net.num_vertices) {
        out.push_back("cost matrix size does not match the network");
    }
    return out;
}

namespace {

const std::map<std::string, std::string>& egl_header_map() {
    static const std::map<std::string, std::string> m = {
        {"NOMBRE", "NAME"},           {"NAME", "NAME"},
        {"VERTICES", "VERTICES"},     {"ARISTAS_REQ", "EDGES_REQUIRED"},
        {"REQUIRED EDGES", "EDGES_REQUIRED"},
        {"ARISTAS_NOREQ", "EDGES_NONREQUIRED"},
        {"NON-REQUIRED EDGES", "EDGES_NONREQUIRED"},
        {"VEHICULOS", "VEHICLES"},    {"VEHICLES", "VEHICLES"},
        {"CAPACIDAD", "CAPACITY"},    {"CAPACITY", "CAPACITY"},
        {"DEPOSITO", "DEPOT"},        {"DEPOT", "DEPOT"},
    };
    return m;
}

bool egl_list_header(const std::string& key, bool& required) {
    if (key == "LISTA_ARISTAS_REQ" || key == "LIST_REQ_EDGES") {
        required = true;
        return true;
    }
    if (key == "LISTA_ARISTAS_NOREQ" || key == "LIST_NOREQ_EDGES") {
        required = false;
        return true;
    }
    return false;
}

// `( u , v ) coste C demanda D` / `( u , v ) cost C demand D [serv_cost S]`.
// Attribute words are matched case-insensitively by prefix so both
// vocabularies and minor variants parse.
struct EglEdge {
    int u, v;
    Cost dc = -1, sc = -1;
    Demand dm = 0;
};

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

EglEdge parse_egl_edge(const std::string& line, bool required) {
    std::string prep = line;
    for (char& c : prep)
        if (c == '(' || c == ')' || c == ',') c = ' ';
    const auto toks = split_ws(prep);
    if (toks.size() < 3) throw ParseError("malformed egl edge line: '" + line + "'");
    EglEdge e{};
    e.u = static_cast<int>(to_int(toks[0], "vertex"));
    e.v = static_cast<int>(to_int(toks[1], "vertex"));
    std::size_t i = 2;
    while (i < toks.size()) {
        const std::string word = lower(toks[i]);
        if (i + 1 >= toks.size())
            throw ParseError("egl edge attribute without value: '" + line + "'");
        const long long val = to_int(toks[i + 1], word);
        if (word.rfind("serv", 0) == 0) {
            e.sc = val;
        } else if (word.rfind("cost", 0) == 0 || word.rfind("coste", 0) == 0) {
            e.dc = val;
        } else if (word.rfind("dem", 0) == 0) {
            e.dm = val;
        } else {
            throw ParseError("unknown egl edge attribute '" + toks[i] + "'");
        }
        i += 2;
    }
    if (e.dc < 0) throw ParseError("egl edge without cost: '" + line + "'");
    if (e.sc < 0) e.sc = e.dc;
    if (required && e.dm <= 0)
        throw ParseError("required egl edge without positive demand: '" + line + "'");
    return e;
}

}  // namespace

std::string convert_egl(const std::string& text) {
    std::istringstream is(text);
    LineReader rd(is);

    std::string name = "converted";
    int vertices = -1, depot = -1, vehicles = -1;
    Demand capacity = -1;
    std::vector<EglEdge> req, nonreq;

    std::string line;
    bool in_list = false, list_required = false;
    while (rd.next(line)) {
        HeaderLine h;
        if (split_header(line, h) && !h.key.empty() &&
            !std::isdigit(static_cast<unsigned char>(h.key[0])) && h.key[0] != '(') {
            bool required = false;
            if (egl_list_header(h.key, required)) {
                in_list = true;
                list_required = required;
                continue;
            }
            const auto it = egl_header_map().find(h.key);
            if (it == egl_header_map().end()) {
                in_list = false;  // decorative header (COMENTARIO, COSTE_TOTAL_REQ, ...)
                continue;
            }
            in_list = false;
            const std::string& key = it->second;
            if (key == "NAME")
                name = h.value;
            else if (key == "VERTICES")
                vertices = static_cast<int>(to_int(h.value, key));
            else if (key == "DEPOT")
                depot = static_cast<int>(to_int(h.value, key));
            else if (key == "VEHICLES")
                vehicles = static_cast<int>(to_int(h.value, key));
            else if (key == "CAPACITY")
                capacity = to_int(h.value, key);
            continue;
        }
        if (!in_list) throw ParseError("unexpected egl line outside a list: '" + line + "'");
        (list_required ? req : nonreq).push_back(parse_egl_edge(line, list_required));
    }

    if (vertices < 1) throw ParseError("egl file missing vertex count");
    if (capacity < 1) throw ParseError("egl file missing capacity");
    if (vehicles < 1) vehicles = 1;
    if (depot < 1) depot = 1;

    DcarpInstance inst;
    inst.network.name = name;
    inst.network.num_vertices = vertices;
    inst.network.depot = depot;
    inst.network.fleet_size = vehicles;
    inst.network.capacity = capacity;
    for (const EglEdge& e : req) {
        if (e.u < 1 || e.u > vertices || e.v < 1 || e.v > vertices)
            throw ParseError("egl edge vertex out of range");
        inst.network.add_edge(e.u, e.v, e.dc, std::max(e.sc, e.dc), e.dm);
    }
    for (const EglEdge& e : nonreq) {
        if (e.u < 1 || e.u > vertices || e.v < 1 || e.v > vertices)
            throw ParseError("egl edge vertex out of range");
        inst.network.add_edge(e.u, e.v, e.dc, e.dc, 0);
    }
    rebuild_instance(inst);
    const auto problems = validate_instance(inst);
    if (!problems.empty()) throw ParseError("converted instance invalid: " + problems.front());
    return write_instance(inst);
}

std::string write_solution(const Solution& s, const std::vector<Task>& tasks, int depot) {
    std::ostringstream os;
    for (const Route& r : s.routes) {
        os << r.start << " |";
        for (const TaskStep& st : r.steps) {
            const Task& t = tasks[static_cast<std::size_t>(st.task)];
            if (t.is_virtual())
                os << " v" << (t.owner + 1);
            else
                os << " " << (st.rev ? -(t.arc + 1) : (t.arc + 1));
        }
        os << " | " << depot << "\n";
    }
    return os.str();
}

Solution parse_solution(const std::string& text, const std::vector<Task>& tasks) {
    std::map<int, int> by_arc;     // forward arc id -> task index
    std::map<int, int> by_owner;   // outside vehicle -> virtual task index
    for (int i = 0; i < static_cast<int>(tasks.size()); ++i) {
        if (tasks[static_cast<std::size_t>(i)].is_virtual())
            by_owner[tasks[static_cast<std::size_t>(i)].owner] = i;
        else
            by_arc[tasks[static_cast<std::size_t>(i)].arc] = i;
    }

    Solution sol;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (blank_or_comment(line)) continue;
        std::vector<std::string> parts;
        std::size_t pos = 0;
        while (true) {
            const std::size_t bar = line.find('|', pos);
            parts.push_back(trim(line.substr(pos, bar - pos)));
            if (bar == std::string::npos) break;
            pos = bar + 1;
        }
        if (parts.size() != 3)
            throw ParseError("solution route needs 'start | tasks | depot', got '" + line + "'");
        Route r;
        r.start = static_cast<int>(to_int(parts[0], "route start"));
        for (const std::string& tok : split_ws(parts[1])) {
            if (tok[0] == 'v') {
                const int owner = static_cast<int>(to_int(tok.substr(1), "virtual task id")) - 1;
                const auto it = by_owner.find(owner);
                if (it == by_owner.end())
                    throw ParseError("unknown virtual task '" + tok + "'");
                r.steps.push_back({it->second, false});
            } else {
                const long long signed_id = to_int(tok, "arc id");
                const int arc = static_cast<int>(signed_id < 0 ? -signed_id : signed_id) - 1;
                const auto it = by_arc.find(arc);
                if (it == by_arc.end())
                    throw ParseError("no task on arc '" + tok + "'");
                r.steps.push_back({it->second, signed_id < 0});
            }
        }
        sol.routes.push_back(std::move(r));
    }
    return sol;
}

}  // namespace dcarp
