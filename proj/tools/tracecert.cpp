// Command-line front end: verify, translate, reorder, and experiment on
// clause-chain refutation traces.
//
// Exit codes: 0 verified / success, 1 rejected, 2 malformed input,
// 3 guidance failure or exhausted budget.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tracecert/errors.hpp"
#include "tracecert/fpc.hpp"
#include "tracecert/harness.hpp"
#include "tracecert/oracle.hpp"
#include "tracecert/parse.hpp"
#include "tracecert/translate.hpp"

namespace {

using namespace tracecert;

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Accepted: std::cout << "VERIFIED\n"; return 0;
    case Verdict::Rejected: std::cout << "REJECTED\n"; return 1;
    case Verdict::BudgetExceeded: std::cout << "BUDGET-EXCEEDED\n"; return 3;
    case Verdict::GuidanceError: std::cout << "GUIDANCE-ERROR\n"; return 3;
  }
  return 3;
}

int format_error(const std::exception& e) {
  std::cerr << "error: " << e.what() << '\n';
  std::cout << "FORMAT-ERROR\n";
  return 2;
}

int rejected(const std::exception& e) {
  std::cerr << "error: " << e.what() << '\n';
  std::cout << "REJECTED\n";
  return 1;
}

struct CheckArgs {
  std::string trace_path;
  std::string cnf_path;
  bool strict = false;
  std::uint64_t budget = 0;
  bool stats = false;
};

int cmd_check(const CheckArgs& args) {
  TraceFile trace;
  try {
    trace = parse_trace_file(args.trace_path);
    if (!args.cnf_path.empty()) {
      const CnfProblem cnf = parse_dimacs_file(args.cnf_path);
      const ValidationReport v = validate_against_cnf(trace, cnf);
      if (!v.ok) {
        for (const std::string& m : v.mismatches) std::cerr << "error: " << m << '\n';
        std::cout << "FORMAT-ERROR\n";
        return 2;
      }
    }
  } catch (const ParseError& e) {
    return format_error(e);
  }

  TranslatedProblem problem;
  try {
    problem = build_translated(resolve_implicit(trace));
  } catch (const OracleError& e) {
    return rejected(e);  // an implicit chain its antecedents cannot produce
  } catch (const TranslateError& e) {
    return format_error(e);
  }
  for (const std::string& w : problem.warnings) std::cerr << "warning: " << w << '\n';

  CheckOptions opts;
  opts.node_budget = args.budget;
  const CheckReport report = check_trace(
      problem, args.strict ? CheckMode::Strict : CheckMode::Backtracking, opts);

  if (!report.guidance_message.empty())
    std::cerr << "error: " << report.guidance_message << '\n';
  if (args.stats) {
    std::cerr << "nodes: " << report.nodes_visited << '\n'
              << "backtracks: " << report.backtracks << '\n'
              << "max-depth: " << report.max_depth << '\n'
              << "named-decide-failures: " << report.named_decide_failures << '\n'
              << "probe-decide-failures: " << report.probe_decide_failures << '\n';
  }
  return verdict_exit(report.verdict);
}

int cmd_translate(const std::string& trace_path) {
  try {
    const TranslatedProblem problem =
        build_translated(resolve_implicit(parse_trace_file(trace_path)));
    std::cout << dump_translated(problem);
    return 0;
  } catch (const ParseError& e) {
    return format_error(e);
  } catch (const TranslateError& e) {
    return format_error(e);
  } catch (const OracleError& e) {
    return rejected(e);
  }
}

int cmd_reorder(const std::string& trace_path, const std::string& out_path) {
  try {
    const TraceFile reordered = reorder_trace(parse_trace_file(trace_path));
    write_trace_file(out_path, reordered);
    std::cerr << "wrote " << out_path << '\n';

    // The rewritten antecedent order must carry a first-choice-only replay.
    const CheckReport report =
        check_trace(build_translated(reordered), CheckMode::Strict);
    return verdict_exit(report.verdict);
  } catch (const ParseError& e) {
    return format_error(e);
  } catch (const TranslateError& e) {
    return format_error(e);
  } catch (const OracleError& e) {
    return rejected(e);
  } catch (const HarnessError& e) {
    return rejected(e);
  }
}

struct ExperimentArgs {
  std::string trace_path;
  int exp = 0;
  std::uint64_t budget = 1'000'000;
  std::uint64_t seed = 1;
  std::size_t sample_cap = 120;
  std::uint64_t combo_cap = 4096;
  std::string out_path;
};

int cmd_experiment(const ExperimentArgs& args) {
  try {
    const TraceFile trace = parse_trace_file(args.trace_path);
    ExperimentResult result;
    switch (args.exp) {
      case 1: result = run_experiment1(trace, args.trace_path, args.budget); break;
      case 2:
        result = run_experiment2(trace, args.trace_path, args.budget,
                                 args.sample_cap, args.seed);
        break;
      case 3:
        result = run_experiment3(trace, args.trace_path, args.budget,
                                 args.combo_cap);
        break;
    }
    write_csv(args.out_path, result.records);

    const ExperimentSummary& s = result.summary;
    std::cout << "records: " << result.records.size() << '\n'
              << "accepted: " << s.accepted << '\n'
              << "timeouts: " << s.timeouts << '\n';
    if (s.timeouts < result.records.size())
      std::cout << "nodes best/median/mean/worst: " << s.best_nodes << '/'
                << s.median_nodes << '/' << s.mean_nodes << '/' << s.worst_nodes
                << '\n';
    std::cout << "chain length longest/median/mean: " << s.longest_chain_len
              << '/' << s.median_chain_len << '/' << s.avg_chain_len << '\n'
              << "csv: " << args.out_path << '\n';
    return 0;
  } catch (const ParseError& e) {
    return format_error(e);
  } catch (const TranslateError& e) {
    return format_error(e);
  } catch (const OracleError& e) {
    return rejected(e);
  } catch (const HarnessError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

struct GenArgs {
  int vars = 0;
  int clauses = 0;
  std::uint64_t seed = 1;
  int retries = 64;
  std::string out_cnf;
  std::string out_trace;
};

int cmd_gen(const GenArgs& args) {
  try {
    auto [cnf, trace] =
        generate_unsat_instance(args.vars, args.clauses, args.seed, args.retries);
    write_dimacs_file(args.out_cnf, cnf);
    write_trace_file(args.out_trace, trace);

    std::size_t derived = 0;
    for (const Chain& ch : trace.chains)
      if (!ch.is_original()) ++derived;
    std::cerr << "generated " << cnf.num_vars << " vars, " << cnf.clauses.size()
              << " clauses, " << derived << " derived chains\n";
    return 0;
  } catch (const ParseError& e) {
    return format_error(e);
  } catch (const OracleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const HarnessError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Replay clause-chain refutations through a focused-proof kernel"};
  app.require_subcommand(1);

  CheckArgs check_args;
  CLI::App* check = app.add_subcommand("check", "verify a refutation trace");
  check->add_option("trace", check_args.trace_path, "trace file")->required();
  check->add_option("--cnf", check_args.cnf_path,
                    "DIMACS file the trace's originals must match");
  check->add_flag("--strict", check_args.strict,
                  "take antecedents first-choice-only, no reordering search");
  check->add_option("--budget", check_args.budget,
                    "abort after this many rule applications (0 = unlimited)");
  check->add_flag("--stats", check_args.stats, "print search counters to stderr");

  std::string translate_path;
  CLI::App* translate = app.add_subcommand(
      "translate", "print the formula and guidance a trace turns into");
  translate->add_option("trace", translate_path, "trace file")->required();

  std::string reorder_in, reorder_out;
  CLI::App* reorder = app.add_subcommand(
      "reorder", "rewrite antecedent lists in the order a replay consumes them");
  reorder->add_option("trace", reorder_in, "trace file")->required();
  reorder->add_option("out", reorder_out, "output trace file")->required();

  ExperimentArgs exp_args;
  CLI::App* experiment = app.add_subcommand(
      "experiment", "measure how antecedent order drives search effort");
  experiment->add_option("trace", exp_args.trace_path, "trace file")->required();
  experiment->add_option("--exp", exp_args.exp, "experiment number")
      ->required()
      ->check(CLI::Range(1, 3));
  experiment->add_option("--budget", exp_args.budget,
                         "per-run rule-application budget");
  experiment->add_option("--seed", exp_args.seed, "sampling seed");
  experiment->add_option("--sample-cap", exp_args.sample_cap,
                         "max permutations before sampling kicks in");
  experiment->add_option("--combo-cap", exp_args.combo_cap,
                         "refuse full products larger than this");
  experiment->add_option("--out", exp_args.out_path, "CSV output path")->required();

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand(
      "gen", "sample an unsatisfiable CNF and a refutation trace for it");
  gen->add_option("--vars", gen_args.vars, "variable count")->required();
  gen->add_option("--clauses", gen_args.clauses, "clause count")->required();
  gen->add_option("--seed", gen_args.seed, "sampling seed");
  gen->add_option("--retries", gen_args.retries, "draws before giving up");
  gen->add_option("--out-cnf", gen_args.out_cnf, "DIMACS output path")->required();
  gen->add_option("--out-trace", gen_args.out_trace, "trace output path")->required();

  CLI11_PARSE(app, argc, argv);

  if (check->parsed()) return cmd_check(check_args);
  if (translate->parsed()) return cmd_translate(translate_path);
  if (reorder->parsed()) return cmd_reorder(reorder_in, reorder_out);
  if (experiment->parsed()) return cmd_experiment(exp_args);
  if (gen->parsed()) return cmd_gen(gen_args);
  return 0;
}
