#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "tvote/bench.hpp"
#include "tvote/errors.hpp"
#include "tvote/io.hpp"
#include "tvote/price.hpp"

using namespace tvote;

namespace {

enum Exit { kOk = 0, kAxiomFail = 1, kInput = 2, kCapability = 3, kInternal = 4 };

struct Budgets {
  std::uint64_t brute_nodes = SolverLimits{}.brute_nodes;
  std::uint64_t ip_nodes = SolverLimits{}.ip_nodes;
  std::uint64_t dp_states = SolverLimits{}.dp_states;
  std::size_t max_voters = VerifyLimits{}.max_exhaustive_voters;
  std::size_t max_groups = VerifyLimits{}.max_groups;

  void attach(CLI::App& cmd) {
    auto pos = CLI::PositiveNumber;
    cmd.add_option("--brute-nodes", brute_nodes, "Brute-force search node cap")->capture_default_str()->check(pos);
    cmd.add_option("--ip-nodes", ip_nodes, "Branch-and-bound node cap")->capture_default_str()->check(pos);
    cmd.add_option("--dp-states", dp_states, "Dynamic-programming state cap")->capture_default_str()->check(pos);
    cmd.add_option("--max-voters", max_voters, "Largest approver set whose subsets are enumerated")
        ->capture_default_str()
        ->check(pos);
    cmd.add_option("--max-groups", max_groups, "Largest number of groups the verifier stores")
        ->capture_default_str()
        ->check(pos);
  }

  VerifyLimits verify() const { return {max_voters, max_groups}; }

  SolverLimits solver() const {
    SolverLimits l;
    l.brute_nodes = brute_nodes;
    l.ip_nodes = ip_nodes;
    l.dp_states = dp_states;
    l.verify = verify();
    return l;
  }
};

std::vector<Axiom> axioms_from(const std::string& text) {
  if (text == "all") return {std::begin(kAllAxioms), std::end(kAllAxioms)};
  return {parse_axiom(text)};
}

void emit(const Json& doc, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << doc.dump(2) << '\n';
  } else {
    write_json_file(path, doc);
  }
}

int cmd_verify(const std::string& instance, const std::string& outcome_path, const std::string& axiom,
               const Budgets& budgets) {
  const auto e = election_from_json(read_json_file(instance));
  const auto o = outcome_from_json(e, read_json_file(outcome_path));
  const AxiomChecker checker(e, budgets.verify());
  Json reports = Json::array();
  bool all = true;
  for (Axiom ax : axioms_from(axiom)) {
    const auto report = checker.check(o, ax);
    all = all && report.holds;
    reports.push_back(report_to_json(e, report));
  }
  emit({{"holds", all}, {"welfare", utilitarian_welfare(e, o)}, {"reports", reports}}, "");
  return all ? kOk : kAxiomFail;
}

int cmd_solve(const std::string& instance, const std::string& axiom_text, const std::string& solver_text,
              const std::string& dump_path, const Budgets& budgets) {
  const Json doc = read_json_file(instance);
  const Axiom axiom = parse_axiom(axiom_text);
  const SolverId solver = parse_solver(solver_text);
  SolverLimits limits = budgets.solver();
  IntegerProgram program;
  if (!dump_path.empty()) limits.dump_ip = &program;

  SolverResult result;
  Json out;
  if (is_typed_json(doc)) {
    const auto typed = typed_from_json(doc);
    result = solve(typed, axiom, solver, limits);
    out = result_to_json(typed.expand(), result);
  } else {
    const auto e = election_from_json(doc);
    result = solve(e, axiom, solver, limits);
    out = result_to_json(e, result);
  }
  if (!dump_path.empty()) {
    if (program.num_variables() == 0)
      std::cerr << "note: " << solver_name(result.solver) << " did not build an integer program\n";
    else
      write_json_file(dump_path, program_to_json(program));
  }
  emit(out, "");
  if (!result.certified) {
    std::cerr << "error: the verifier could not certify the result within its limits\n";
    return kCapability;
  }
  return result.feasible ? kOk : kAxiomFail;
}

struct PriceArgs {
  std::string instance;
  std::string family;
  std::vector<std::size_t> n, ell, a;
  std::string axiom = "all";
  std::string solver = "auto";
  std::string format = "table";
  std::string out;
  std::size_t jobs = 1;
};

void print_table(std::ostream& out, const std::vector<PriceRecord>& records) {
  for (const auto& r : records) {
    out << r.instance_id << "  " << axiom_name(r.axiom) << "  Util*=" << r.util_star;
    if (r.status != "OK") {
      out << "  " << r.status << ": " << r.note << '\n';
      continue;
    }
    out << "  Util^Phi=" << r.util_phi << "  rho=" << (r.ratio ? r.ratio->str() : "undefined");
    if (r.ratio) out << " (" << r.ratio->decimal() << ")";
    out << "  [" << solver_name(r.solver) << "]\n";
    for (const auto& b : r.bounds) out << "    " << b.name << " " << b.value << ": " << verdict_name(b.verdict) << '\n';
  }
}

Json records_to_json(const std::vector<PriceRecord>& records) {
  Json out = Json::array();
  for (const auto& r : records) {
    Json bounds = Json::array();
    for (const auto& b : r.bounds) bounds.push_back({{"name", b.name}, {"value", b.value}, {"verdict", verdict_name(b.verdict)}});
    Json j{{"instance_id", r.instance_id}, {"family", r.family.family}, {"n", r.n}, {"m", r.m},
           {"ell", r.ell}, {"axiom", axiom_name(r.axiom)}, {"util_star", r.util_star}, {"status", r.status}};
    if (r.status == "OK") {
      j["util_phi"] = r.util_phi;
      j["ratio"] = r.ratio ? Json(r.ratio->str()) : Json(nullptr);
      j["solver"] = solver_name(r.solver);
      j["certified"] = r.certified;
    } else {
      j["note"] = r.note;
    }
    j["bounds"] = std::move(bounds);
    out.push_back(std::move(j));
  }
  return out;
}

int cmd_price(const PriceArgs& args, const Budgets& budgets) {
  const SolverId solver = parse_solver(args.solver);
  const auto axioms = axioms_from(args.axiom);
  std::vector<PriceRecord> records;
  if (!args.instance.empty()) {
    if (!args.family.empty()) throw InputError("give either an instance file or --family, not both");
    const auto e = election_from_json(read_json_file(args.instance));
    for (Axiom ax : axioms) {
      auto rec = price_ratio(e, ax, solver, budgets.solver());
      rec.instance_id = args.instance;
      records.push_back(std::move(rec));
    }
  } else {
    if (args.family.empty()) throw InputError("price needs an instance file or --family");
    auto or_zero = [](const std::vector<std::size_t>& v) { return v.empty() ? std::vector<std::size_t>{0} : v; };
    std::vector<SweepCell> cells;
    for (std::size_t n : or_zero(args.n))
      for (std::size_t l : or_zero(args.ell))
        for (std::size_t a : or_zero(args.a))
          for (Axiom ax : axioms) cells.push_back({{args.family, n, l, a}, ax});
    records = sweep(cells, solver, budgets.solver(), args.jobs);
  }

  std::ofstream file;
  if (!args.out.empty()) {
    file.open(args.out);
    if (!file) throw InputError("cannot write " + args.out);
  }
  std::ostream& out = args.out.empty() ? std::cout : file;
  if (args.format == "csv")
    write_csv(out, records);
  else if (args.format == "json")
    out << records_to_json(records).dump(2) << '\n';
  else
    print_table(out, records);

  for (const auto& r : records)
    if (!bounds_hold(r)) return kAxiomFail;
  return kOk;
}

struct GenerateArgs {
  std::string family;
  std::size_t n = 4, m = 3, ell = 4, a = 2, types = 0, profiles = 0;
  double p = 0.4;
  bool is_static = false, complete = false;
  std::string input, graph;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_generate(const GenerateArgs& g) {
  Json doc;
  if (g.family == "core-private") {
    doc = election_to_json(gen_core_private(g.ell));
  } else if (g.family == "jr-tight") {
    doc = election_to_json(gen_jr_tight(g.n, g.ell));
  } else if (g.family == "separation") {
    doc = election_to_json(gen_separation(g.n, g.a));
  } else if (g.family == "x3c") {
    if (g.input.empty()) throw InputError("x3c needs --input with an X3C instance");
    const auto red = gen_x3c_reduction(x3c_from_json(read_json_file(g.input)));
    doc = election_to_json(red.election);
    doc["threshold"] = red.threshold;
  } else if (g.family == "vertex-cover") {
    CubicGraph graph;
    if (g.graph == "k4")
      graph = complete_graph_k4();
    else if (g.graph == "k33")
      graph = complete_bipartite_k33();
    else if (!g.input.empty())
      graph = graph_from_json(read_json_file(g.input));
    else
      throw InputError("vertex-cover needs --graph k4|k33 or --input with a cubic graph");
    doc = election_to_json(gen_vc_reduction(graph));
  } else if (g.family == "random") {
    RandomParams params{g.n, g.m, g.ell, g.p, g.is_static, g.complete, g.types, g.profiles};
    auto generated = gen_random(params, g.seed);
    if (auto* e = std::get_if<TemporalElection>(&generated))
      doc = election_to_json(*e);
    else
      doc = typed_to_json(std::get<TypedElection>(generated));
  } else {
    throw InputError("unknown family '" + g.family +
                     "' (core-private, jr-tight, separation, x3c, vertex-cover, random)");
  }
  emit(doc, g.out);
  return kOk;
}

int cmd_bench(const std::string& suite, std::size_t jobs) {
  const auto results = run_criteria(select_criteria(suite), jobs);
  print_results(std::cout, results);
  for (const auto& r : results)
    if (!r.passed) return kAxiomFail;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proportionality and welfare in temporal approval elections"};
  app.require_subcommand(1);
  Budgets budgets;

  auto* verify = app.add_subcommand("verify", "Check an outcome against the axioms");
  std::string instance, outcome, axiom = "all";
  verify->add_option("instance", instance, "Instance JSON")->required();
  verify->add_option("outcome", outcome, "Outcome JSON")->required();
  verify->add_option("--axiom", axiom, "jr|pjr|ejr|ejrplus|all")->capture_default_str();
  budgets.attach(*verify);

  auto* solve_cmd = app.add_subcommand("solve", "Maximize utilitarian welfare subject to an axiom");
  std::string solve_axiom = "jr", solver = "auto", dump;
  solve_cmd->add_option("instance", instance, "Instance or typed-instance JSON")->required();
  solve_cmd->add_option("--axiom", solve_axiom, "jr|pjr|ejr|ejrplus")->capture_default_str();
  solve_cmd->add_option("--solver", solver,
                        "auto|brute|jr-ilp|pjr-ilp|ejr-ilp|jr-dp|ejr-dp|pjr-profile|jr-rounding")
      ->capture_default_str();
  solve_cmd->add_option("--dump-ip", dump, "Write the integer program to this JSON file");
  budgets.attach(*solve_cmd);

  auto* price = app.add_subcommand("price", "Price of proportionality with bound checks");
  PriceArgs pa;
  pa.jobs = std::max(1U, std::thread::hardware_concurrency());
  price->add_option("instance", pa.instance, "Instance JSON");
  price->add_option("--family", pa.family, "core-private|jr-tight|separation");
  price->add_option("--n", pa.n, "Voter counts")->delimiter(',');
  price->add_option("--ell", pa.ell, "Round counts")->delimiter(',');
  price->add_option("--a", pa.a, "Separation multipliers")->delimiter(',');
  price->add_option("--axiom", pa.axiom, "jr|pjr|ejr|ejrplus|all")->capture_default_str();
  price->add_option("--solver", pa.solver, "Solver for the constrained optimum")->capture_default_str();
  price->add_option("--format", pa.format, "table|csv|json")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  price->add_option("--out", pa.out, "Write the report here instead of stdout");
  price->add_option("--jobs", pa.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  budgets.attach(*price);

  auto* generate = app.add_subcommand("generate", "Write a generated instance as JSON");
  GenerateArgs ga;
  generate->add_option("family", ga.family, "core-private|jr-tight|separation|x3c|vertex-cover|random")->required();
  generate->add_option("--n", ga.n, "Voters")->capture_default_str();
  generate->add_option("--m", ga.m, "Candidates (random)")->capture_default_str();
  generate->add_option("--ell", ga.ell, "Rounds")->capture_default_str();
  generate->add_option("--a", ga.a, "Separation multiplier")->capture_default_str();
  generate->add_option("--p", ga.p, "Approval probability (random)")->capture_default_str();
  generate->add_flag("--static", ga.is_static, "Static preferences (random)");
  generate->add_flag("--complete", ga.complete, "Patch empty approval sets (random)");
  generate->add_option("--types", ga.types, "Voter types; nonzero gives a typed instance")->capture_default_str();
  generate->add_option("--profiles", ga.profiles, "Round profiles; nonzero gives a typed instance")
      ->capture_default_str();
  generate->add_option("--input", ga.input, "X3C instance or cubic graph JSON");
  generate->add_option("--graph", ga.graph, "Built-in cubic graph: k4|k33");
  generate->add_option("--seed", ga.seed, "Random seed")->capture_default_str();
  generate->add_option("--out", ga.out, "Output file (stdout by default)");

  auto* bench = app.add_subcommand("bench", "Run the acceptance suites");
  std::string suite = "all";
  std::size_t bench_jobs = std::max(1U, std::thread::hardware_concurrency());
  bench->add_option("--suite", suite, "all, a suite number or a suite name")->capture_default_str();
  bench->add_option("--jobs", bench_jobs, "Suites run concurrently")->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*verify) return cmd_verify(instance, outcome, axiom, budgets);
    if (*solve_cmd) return cmd_solve(instance, solve_axiom, solver, dump, budgets);
    if (*price) return cmd_price(pa, budgets);
    if (*generate) return cmd_generate(ga);
    if (*bench) return cmd_bench(suite, bench_jobs);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << '\n';
    return kCapability;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}
