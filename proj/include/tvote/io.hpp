#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "tvote/axioms.hpp"
#include "tvote/election.hpp"
#include "tvote/generators.hpp"
#include "tvote/ip.hpp"
#include "tvote/solvers.hpp"
#include "tvote/typed.hpp"

namespace tvote {

using Json = nlohmann::ordered_json;

// Parse failures and schema violations surface as InputError.
Json read_json_file(const std::filesystem::path& path);
Json parse_json(const std::string& text);
void write_json_file(const std::filesystem::path& path, const Json& doc);

// {"candidates", "num_voters", "num_rounds", and exactly one of "approvals"
// (voter-major, then round) or "static_approvals" (one list per voter)}.
TemporalElection election_from_json(const Json& doc);
// Static elections are written with "static_approvals".
Json election_to_json(const TemporalElection& election);

Outcome outcome_from_json(const TemporalElection& election, const Json& doc);
Json outcome_to_json(const TemporalElection& election, const Outcome& outcome);

// {"types": [{"id", "count", "approvals": [[string]] per round}],
//  "num_rounds", optional "profiles": [{"rounds": [int]}], optional "candidates"}.
bool is_typed_json(const Json& doc);
TypedElection typed_from_json(const Json& doc);
Json typed_to_json(const TypedElection& typed);

Json report_to_json(const TemporalElection& election, const AxiomReport& report);
Json result_to_json(const TemporalElection& election, const SolverResult& result);
Json program_to_json(const IntegerProgram& program);

// {"q": int, "triples": [[int, int, int]]} over elements 1..3q.
X3cInstance x3c_from_json(const Json& doc);
Json x3c_to_json(const X3cInstance& x3c);
// {"vertices": int, "edges": [[int, int]]} with 0-based vertices.
CubicGraph graph_from_json(const Json& doc);
Json graph_to_json(const CubicGraph& graph);

}  // namespace tvote
