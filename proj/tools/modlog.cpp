#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "modlog/engine.hpp"
#include "modlog/generate.hpp"
#include "modlog/oracle.hpp"
#include "modlog/parser.hpp"

namespace {

using namespace modlog;

constexpr int kExitUsage = 1;
constexpr int kExitParse = 1;
constexpr int kExitNotStratifiable = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

struct CommonOpts {
  std::string program_path, facts_path, output_path, stats_path;
  std::string mode = "modular";
  std::string modules = "auto";
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_output) {
  cmd->add_option("-p,--program", opts.program_path, "datalog rules file")->required();
  cmd->add_option("-f,--facts", opts.facts_path, "explicit facts file")->required();
  cmd->add_option("--mode", opts.mode, "evaluation mode")
      ->check(CLI::IsMember({"seminaive", "modular"}));
  cmd->add_option("--modules", opts.modules, "module detection")
      ->check(CLI::IsMember({"auto", "off"}));
  if (with_output) {
    cmd->add_option("-o,--output", opts.output_path, "materialisation output file")
        ->required();
    cmd->add_option("--stats", opts.stats_path, "per-phase stats CSV output");
  }
}

EvalMode mode_of(const CommonOpts& o) {
  return o.mode == "seminaive" ? EvalMode::Seminaive : EvalMode::Modular;
}

ModuleDetection detection_of(const CommonOpts& o) {
  return o.modules == "off" ? ModuleDetection::Off : ModuleDetection::Auto;
}

std::string stats_csv(const std::vector<PhaseStats>& stats) {
  std::ostringstream out;
  out << "phase,rule_instances,join_results,facts_deleted,facts_rederived,"
         "facts_added,wall_ms\n";
  for (const PhaseStats& p : stats)
    out << p.phase << ',' << p.rule_instances << ',' << p.join_results << ','
        << p.facts_deleted << ',' << p.facts_rederived << ',' << p.facts_added << ','
        << p.wall_ms << '\n';
  return out.str();
}

void print_summary(const MaterialisationState& state) {
  const Stratification& strat = state.stratification();
  std::size_t nr = 0, rec = 0, tc = 0, stc = 0, generic = 0;
  for (const StratumInfo& info : strat.strata) {
    nr += info.nonrecursive.size();
    rec += info.recursive.size();
    for (const ModuleSpec& m : info.modules) {
      if (m.kind == ModuleKind::Tc) ++tc;
      if (m.kind == ModuleKind::Stc) ++stc;
      if (m.kind == ModuleKind::Generic) ++generic;
    }
  }
  std::cout << "|E| = " << state.explicit_facts().size() << "\n"
            << "|I| = " << state.materialisation().size() << "\n"
            << "S = " << strat.max_stratum << "\n"
            << "nonrecursive rules = " << nr << "\n"
            << "recursive rules = " << rec << "\n"
            << "TC modules = " << tc << "\n"
            << "STC modules = " << stc << "\n"
            << "generic modules = " << generic << "\n";
}

MaterialisationState load_state(const CommonOpts& opts, FactSet& facts) {
  Program program = parse_program(slurp(opts.program_path));
  facts = parse_facts(slurp(opts.facts_path));
  check_fact_arities(program, facts);
  MaterialisationState state(std::move(program), mode_of(opts), detection_of(opts));
  state.materialise(facts);
  return state;
}

int cmd_materialise(const CommonOpts& opts) {
  FactSet facts;
  MaterialisationState state = load_state(opts, facts);
  spit(opts.output_path, serialise_dataset(state.materialisation()));
  if (!opts.stats_path.empty()) spit(opts.stats_path, stats_csv(state.last_stats()));
  print_summary(state);
  return 0;
}

int cmd_update(const CommonOpts& opts, const std::string& delete_path,
               const std::string& insert_path) {
  FactSet facts;
  MaterialisationState state = load_state(opts, facts);
  FactSet eminus = delete_path.empty() ? FactSet{} : parse_facts(slurp(delete_path));
  FactSet eplus = insert_path.empty() ? FactSet{} : parse_facts(slurp(insert_path));
  state.incremental_update(eminus, eplus);
  spit(opts.output_path, serialise_dataset(state.materialisation()));
  if (!opts.stats_path.empty()) spit(opts.stats_path, stats_csv(state.last_stats()));
  print_summary(state);
  return 0;
}

int cmd_verify(const CommonOpts& opts, const std::string& against_path) {
  FactSet facts;
  MaterialisationState state = load_state(opts, facts);
  FactSet expected = against_path.empty()
                         ? naive_fixpoint(state.program(), facts)
                         : parse_facts(slurp(against_path));
  OracleReport report = verify(state.materialisation(), expected);
  std::cout << report.summary() << "\n";
  return report.ok() ? 0 : 3;
}

int cmd_generate(const std::string& kind, int n, int edges, std::uint64_t seed,
                 const std::string& pred_name, const std::string& output_path) {
  if (n < 1) {
    std::cerr << "error: --n must be at least 1\n";
    return kExitUsage;
  }
  Symbol pred = symbols().intern(pred_name);
  FactSet facts;
  if (kind == "chain")
    facts = generate_chain(pred, n);
  else if (kind == "cycle")
    facts = generate_cycle(pred, n);
  else if (kind == "clique")
    facts = generate_clique(pred, n);
  else if (kind == "dag") {
    if (edges < 0) {
      std::cerr << "error: --edges is required for --kind dag\n";
      return kExitUsage;
    }
    facts = generate_dag(pred, n, edges, seed);
  }
  spit(output_path, serialise_dataset(facts));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"datalog materialisation and incremental maintenance"};
  app.require_subcommand(1);

  CommonOpts mat_opts, upd_opts, ver_opts;
  std::string delete_path, insert_path, against_path;
  std::string gen_kind = "chain", gen_pred = "R", gen_output;
  int gen_n = 1, gen_edges = -1;
  std::uint64_t gen_seed = 0;

  CLI::App* mat = app.add_subcommand("materialise", "compute a materialisation");
  add_common(mat, mat_opts, true);

  CLI::App* upd = app.add_subcommand("update", "apply an incremental update");
  add_common(upd, upd_opts, true);
  upd->add_option("--delete", delete_path, "facts to delete");
  upd->add_option("--insert", insert_path, "facts to insert");

  CLI::App* ver = app.add_subcommand("verify", "compare against the reference oracle");
  add_common(ver, ver_opts, false);
  ver->add_option("--against", against_path, "compare to this facts file instead");

  CLI::App* gen = app.add_subcommand("generate", "write a synthetic facts file");
  gen->add_option("--kind", gen_kind, "chain|cycle|dag|clique")
      ->check(CLI::IsMember({"chain", "cycle", "dag", "clique"}));
  gen->add_option("--n", gen_n, "vertex/edge count parameter")->required();
  gen->add_option("--edges", gen_edges, "edge count (dag only)");
  gen->add_option("--seed", gen_seed, "random seed (dag only)");
  gen->add_option("--pred", gen_pred, "predicate name");
  gen->add_option("-o,--output", gen_output, "output facts file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (mat->parsed()) return cmd_materialise(mat_opts);
    if (upd->parsed()) return cmd_update(upd_opts, delete_path, insert_path);
    if (ver->parsed()) return cmd_verify(ver_opts, against_path);
    if (gen->parsed())
      return cmd_generate(gen_kind, gen_n, gen_edges, gen_seed, gen_pred, gen_output);
  } catch (const NotStratifiableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotStratifiable;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const UnsafeRuleError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ArityClashError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
