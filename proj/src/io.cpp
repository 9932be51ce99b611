#include "tvote/io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "tvote/errors.hpp"

namespace tvote {
namespace {

template <class F>
auto guarded(std::string_view what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object()) throw InputError("expected a JSON object");
  auto it = doc.find(key);
  if (it == doc.end()) throw InputError(std::string("missing key \"") + key + "\"");
  return *it;
}

std::size_t count_field(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw InputError(std::string("\"") + key + "\" must be a nonnegative integer");
  return v.get<std::size_t>();
}

class NameIndex {
 public:
  explicit NameIndex(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) index_.emplace(names[i], i);
  }

  std::vector<Candidate> ids(const Json& list) const {
    if (!list.is_array()) throw InputError("approval set must be a list of candidate names");
    std::vector<Candidate> out;
    for (const auto& name : list) {
      auto it = index_.find(name.get<std::string>());
      if (it == index_.end()) throw InputError("unknown candidate '" + name.get<std::string>() + "'");
      out.push_back(it->second);
    }
    return out;
  }

 private:
  std::unordered_map<std::string, std::size_t> index_;
};

Json names_of(const TemporalElection& e, const Bitset& row) {
  Json out = Json::array();
  row.for_each([&](std::size_t p) { out.push_back(e.candidate_name(p)); });
  return out;
}

Json names_of(const std::vector<std::string>& cands, const Bitset& row) {
  Json out = Json::array();
  row.for_each([&](std::size_t p) { out.push_back(cands[p]); });
  return out;
}

const char* comparator_name(Comparator c) {
  switch (c) {
    case Comparator::kLe: return "<=";
    case Comparator::kGe: return ">=";
    case Comparator::kEq: return "==";
  }
  return "?";
}

Json terms_to_json(const IntegerProgram& ip, const std::vector<LinearTerm>& terms) {
  Json out = Json::array();
  for (const auto& t : terms) out.push_back({{"var", ip.variables()[t.var].name}, {"coef", t.coef}});
  return out;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return guarded(path.string(), [&] { return Json::parse(buf.str()); });
}

Json parse_json(const std::string& text) {
  return guarded("JSON", [&] { return Json::parse(text); });
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

TemporalElection election_from_json(const Json& doc) {
  return guarded("instance", [&] {
    auto candidates = field(doc, "candidates").get<std::vector<std::string>>();
    const std::size_t n = count_field(doc, "num_voters");
    const std::size_t l = count_field(doc, "num_rounds");
    const bool full = doc.contains("approvals");
    const bool flat = doc.contains("static_approvals");
    if (full == flat) throw InputError("exactly one of \"approvals\" and \"static_approvals\" is required");
    NameIndex index(candidates);
    if (flat) {
      const Json& rows = doc["static_approvals"];
      if (!rows.is_array() || rows.size() != n)
        throw InputError("\"static_approvals\" needs one list per voter");
      std::vector<std::vector<Candidate>> out;
      for (const auto& r : rows) out.push_back(index.ids(r));
      return TemporalElection::from_static(std::move(candidates), l, out);
    }
    const Json& rows = doc["approvals"];
    if (!rows.is_array() || rows.size() != n) throw InputError("\"approvals\" needs one entry per voter");
    std::vector<std::vector<std::vector<Candidate>>> out(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (!rows[v].is_array() || rows[v].size() != l)
        throw InputError("voter " + std::to_string(v) + " needs one approval set per round");
      for (const auto& r : rows[v]) out[v].push_back(index.ids(r));
    }
    return TemporalElection(std::move(candidates), n, l, out);
  });
}

Json election_to_json(const TemporalElection& e) {
  Json doc;
  doc["candidates"] = e.candidates();
  doc["num_voters"] = e.num_voters();
  doc["num_rounds"] = e.num_rounds();
  Json rows = Json::array();
  for (Voter v = 0; v < e.num_voters(); ++v) {
    if (e.is_static()) {
      rows.push_back(names_of(e, e.approval(v, 0)));
      continue;
    }
    Json per = Json::array();
    for (Round r = 0; r < e.num_rounds(); ++r) per.push_back(names_of(e, e.approval(v, r)));
    rows.push_back(std::move(per));
  }
  doc[e.is_static() ? "static_approvals" : "approvals"] = std::move(rows);
  return doc;
}

Outcome outcome_from_json(const TemporalElection& e, const Json& doc) {
  return guarded("outcome", [&] {
    Outcome o;
    for (const auto& name : field(doc, "choices")) o.choices.push_back(e.candidate_index(name.get<std::string>()));
    validate_outcome(e, o);
    return o;
  });
}

Json outcome_to_json(const TemporalElection& e, const Outcome& o) {
  Json choices = Json::array();
  for (Candidate c : o.choices) choices.push_back(e.candidate_name(c));
  return {{"choices", std::move(choices)}};
}

bool is_typed_json(const Json& doc) { return doc.is_object() && doc.contains("types"); }

TypedElection typed_from_json(const Json& doc) {
  return guarded("typed instance", [&] {
    const std::size_t l = count_field(doc, "num_rounds");
    const Json& types = field(doc, "types");
    if (!types.is_array()) throw InputError("\"types\" must be a list");

    std::vector<std::string> candidates;
    if (doc.contains("candidates")) {
      candidates = doc["candidates"].get<std::vector<std::string>>();
    } else {
      // Candidates in order of first mention.
      std::unordered_map<std::string, bool> seen;
      for (const auto& t : types)
        for (const auto& r : field(t, "approvals"))
          for (const auto& name : r)
            if (seen.emplace(name.get<std::string>(), true).second) candidates.push_back(name.get<std::string>());
    }
    NameIndex index(candidates);

    std::vector<VoterType> out;
    for (const auto& t : types) {
      VoterType vt{field(t, "id").get<std::string>(), count_field(t, "count"), {}};
      const Json& rows = field(t, "approvals");
      if (!rows.is_array() || rows.size() != l)
        throw InputError("type '" + vt.id + "' needs one approval set per round");
      for (const auto& r : rows) {
        Bitset b(candidates.size());
        for (Candidate p : index.ids(r)) b.set(p);
        vt.rounds.push_back(std::move(b));
      }
      out.push_back(std::move(vt));
    }

    std::optional<std::vector<std::vector<Round>>> profiles;
    if (doc.contains("profiles")) {
      profiles.emplace();
      for (const auto& p : doc["profiles"]) profiles->push_back(field(p, "rounds").get<std::vector<Round>>());
    }
    return TypedElection(std::move(candidates), l, std::move(out), std::move(profiles));
  });
}

Json typed_to_json(const TypedElection& typed) {
  Json doc;
  doc["candidates"] = typed.candidates();
  doc["num_rounds"] = typed.num_rounds();
  Json types = Json::array();
  for (const auto& t : typed.types()) {
    Json rows = Json::array();
    for (const auto& r : t.rounds) rows.push_back(names_of(typed.candidates(), r));
    types.push_back({{"id", t.id}, {"count", t.count}, {"approvals", std::move(rows)}});
  }
  doc["types"] = std::move(types);
  if (typed.has_profiles()) {
    Json profiles = Json::array();
    for (const auto& p : typed.profiles()) profiles.push_back({{"rounds", p}});
    doc["profiles"] = std::move(profiles);
  }
  return doc;
}

Json report_to_json(const TemporalElection&, const AxiomReport& report) {
  Json doc;
  doc["axiom"] = axiom_name(report.axiom);
  doc["holds"] = report.holds;
  doc["groups_checked"] = report.groups_checked;
  if (report.witness) {
    const auto& w = *report.witness;
    Json wj;
    wj["group"] = w.group;
    wj["agreement_size"] = w.agreement_size;
    wj["cohesion_size"] = w.cohesion_size;
    wj["demand"] = w.demand;
    wj["observed"] = w.observed;
    if (w.offending_round) wj["offending_round"] = *w.offending_round;
    doc["witness"] = std::move(wj);
  } else {
    doc["witness"] = nullptr;
  }
  return doc;
}

Json result_to_json(const TemporalElection& e, const SolverResult& result) {
  Json doc;
  doc["axiom"] = axiom_name(result.axiom);
  doc["solver"] = solver_name(result.solver);
  doc["feasible"] = result.feasible;
  if (result.feasible) {
    doc["welfare"] = result.welfare;
    doc["outcome"] = outcome_to_json(e, result.outcome);
  }
  doc["certified"] = result.certified;
  return doc;
}

Json program_to_json(const IntegerProgram& ip) {
  Json vars = Json::array();
  for (const auto& v : ip.variables()) vars.push_back({{"name", v.name}, {"lower", v.lower}, {"upper", v.upper}});
  Json rows = Json::array();
  for (const auto& c : ip.constraints())
    rows.push_back({{"terms", terms_to_json(ip, c.terms)}, {"cmp", comparator_name(c.cmp)}, {"rhs", c.rhs}});
  return {{"sense", "max"},
          {"variables", std::move(vars)},
          {"objective", terms_to_json(ip, ip.objective())},
          {"constraints", std::move(rows)}};
}

X3cInstance x3c_from_json(const Json& doc) {
  return guarded("X3C instance", [&] {
    X3cInstance x{count_field(doc, "q"), field(doc, "triples").get<std::vector<std::array<std::size_t, 3>>>()};
    x.validate();
    return x;
  });
}

Json x3c_to_json(const X3cInstance& x3c) { return {{"q", x3c.q}, {"triples", x3c.triples}}; }

CubicGraph graph_from_json(const Json& doc) {
  return guarded("graph", [&] {
    CubicGraph g{count_field(doc, "vertices"),
                 field(doc, "edges").get<std::vector<std::pair<std::size_t, std::size_t>>>()};
    g.validate();
    return g;
  });
}

Json graph_to_json(const CubicGraph& graph) {
  Json edges = Json::array();
  for (auto [a, b] : graph.edges) edges.push_back({a, b});
  return {{"vertices", graph.vertices}, {"edges", std::move(edges)}};
}

}  // namespace tvote
