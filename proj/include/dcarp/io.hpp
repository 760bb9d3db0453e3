#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dcarp/instance.hpp"

namespace dcarp {

// Parses the dcarp-text format. Throws ParseError on malformed header keys,
// out-of-range vertex indices, negative costs/demands, duplicate edges, or an
// outside vehicle whose remaining capacity exceeds Q.
DcarpInstance parse_instance(std::istream& in);
DcarpInstance parse_instance_text(const std::string& text);
DcarpInstance load_instance(const std::string& path);

// Canonical serialization; parse(write(parse(x))) == parse(x) exactly.
// Edge lists carry base costs and current demands; non-NORMAL arcs get an
// ARC_STATES row with the current deadheading cost (-1 when closed).
std::string write_instance(const DcarpInstance& inst);

// Content equality ignoring arc id assignment (edge sets, depot, fleet,
// capacity, outside vehicles, traffic states).
bool same_instance(const DcarpInstance& a, const DcarpInstance& b);

// Converts a file in either published egl header vocabulary (Spanish:
// NOMBRE/ARISTAS_REQ/LISTA_ARISTAS_REQ/coste/demanda; English:
// NAME/REQUIRED EDGES/LIST_REQ_EDGES/cost/demand) into dcarp-text.
// Unknown decorative headers are ignored.
std::string convert_egl(const std::string& text);

// Solution text form: one route per line, `start | a1 a2 ... | depot`.
// Arc ids are printed 1-based and signed by direction (negative = twin);
// virtual tasks print as v<owner+1>.
std::string write_solution(const Solution& s, const std::vector<Task>& tasks, int depot);
Solution parse_solution(const std::string& text, const std::vector<Task>& tasks);

std::vector<std::string> validate_instance(const DcarpInstance& inst);

}  // namespace dcarp
