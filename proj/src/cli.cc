#include "prefhist/cli.h"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <type_traits>

#include "prefhist/enumeration.h"
#include "prefhist/formula.h"
#include "prefhist/history.h"
#include "prefhist/postulates.h"
#include "prefhist/ranked_operator.h"
#include "prefhist/representation.h"

namespace prefhist::cli {
namespace {

// Parsed flags for every subcommand; CLI11 binds into these.
struct Flags {
  int atoms = -1;
  int universe = -1;
  std::string ranking = "canonical";
  std::vector<std::string> observations;
  int maxlen = -1;

  std::string file = "-";
  std::string theorem = "nd";
  bool relaxed = false;
  std::size_t budget = kDefaultOracleBudget;
  std::string output;

  std::uint64_t seed = 0;
  std::vector<std::string> pool;

  int n = 3;
  int sweep_universe = 2;
  std::string conditions = "suggested-wide";
  std::optional<std::uint64_t> sample;
  std::size_t cap = 10;
  std::string out_dir;
};

class Runner {
 public:
  Runner(const Flags& f, std::istream& in, std::ostream& out) : f_(f), in_(in), out_(out) {}

  int update() {
    std::optional<Universe> u = universe_flag();
    if (f_.observations.empty()) throw Error("update needs at least one observation");
    std::optional<FixedRanking> ranking;
    if (f_.ranking != "canonical") {
      ranking = with_input(f_.ranking, [](std::istream& s) { return read_fixed_ranking(s); });
      if (u && !(*u == ranking->universe())) throw Error("--atoms/--universe disagree with the ranking file");
      u = ranking->universe();
    }
    if (!u) throw Error("give --atoms or --universe");
    const auto obs = observations(*u);
    if (!ranking) ranking = FixedRanking::canonical(static_cast<int>(obs.size()), *u);
    if (static_cast<std::size_t>(ranking->dimension()) != obs.size()) {
      throw Error("the ranking has n=" + std::to_string(ranking->dimension()) + " but " +
                  std::to_string(obs.size()) + " observations were given");
    }
    print_result(update_from_ranking(*ranking, obs), *u);
    return kOk;
  }

  int update_general() {
    std::optional<Universe> u = universe_flag();
    std::optional<GeneralRanking> ranking;
    if (f_.ranking != "canonical") {
      ranking = with_input(f_.ranking, [](std::istream& s) { return read_general_ranking(s); });
      if (u && !(*u == ranking->universe())) throw Error("--atoms/--universe disagree with the ranking file");
      u = ranking->universe();
      if (auto bad = ranking->find_subhistory_violation()) {
        throw Error("ranking file does not rank " + to_string(bad->first) + " strictly below " +
                    to_string(bad->second));
      }
    }
    if (!u) throw Error("give --atoms or --universe");
    const auto obs = observations(*u);
    if (!ranking) {
      const int len = f_.maxlen > 0 ? f_.maxlen : std::max<int>(1, static_cast<int>(obs.size()));
      ranking = GeneralRanking::canonical(*u, len);
    }
    print_result(prefhist::update_general(obs, *ranking), *u);
    return kOk;
  }

  int check() {
    const auto table = read_table();
    CheckReport report;
    if (f_.theorem == "2d-tight") {
      report = check_theorem_2d(table, RelationVariant::kTwoDTight);
    } else if (f_.theorem == "2d-wide") {
      report = check_theorem_2d(table, RelationVariant::kTwoDWide);
    } else if (f_.theorem == "suggested-tight") {
      report = check_suggested_3d(table, RelationVariant::kThreeDTight);
    } else if (f_.theorem == "suggested-wide") {
      report = check_suggested_3d(table, RelationVariant::kThreeDWide);
    } else {
      report = check_theorem_nd(table, f_.relaxed ? PatchMode::kRelaxed : PatchMode::kTight);
    }
    out_ << to_text(report);
    return report.verdict ? kOk : kVerdictFalse;
  }

  int synthesize(std::ostream& err) {
    const auto table = read_table();
    try {
      const auto r = synthesize_ranking(table);
      write_to_output([&](std::ostream& s) { write_fixed_ranking(s, r); });
      return kOk;
    } catch (const SynthesisError& e) {
      err << to_text(e.report());
      return kVerdictFalse;
    }
  }

  int oracle() {
    const auto table = read_table();
    const bool yes = is_representable_bruteforce(table, f_.budget);
    out_ << "representable: " << (yes ? "yes" : "no") << '\n';
    return yes ? kOk : kVerdictFalse;
  }

  int postulates() {
    const Universe u = Universe::atoms(f_.atoms > 0 ? f_.atoms : 2);
    const int maxlen = f_.maxlen >= 0 ? f_.maxlen : 3;
    std::vector<Formula> pool;
    const std::vector<std::string> texts =
        f_.pool.empty() ? std::vector<std::string>{"p0", "p1", "!p0", "p0 | p1"} : f_.pool;
    for (const auto& t : texts) pool.push_back(parse_formula(t, u));
    std::optional<GeneralRanking> ranking;
    if (f_.ranking == "canonical") {
      ranking = GeneralRanking::canonical(u, std::max(maxlen, 1));
    } else if (f_.ranking == "random") {
      out_ << "seed=" << f_.seed << '\n';
      ranking = make_valid_general_ranking(u, std::max(maxlen, 1), f_.seed);
    } else {
      ranking = with_input(f_.ranking, [](std::istream& s) { return read_general_ranking(s); });
      if (!(ranking->universe() == u)) throw Error("ranking file universe differs from --atoms");
    }
    const auto report = check_postulate_suite(*ranking, pool, maxlen);
    out_ << to_text(report);
    return report.all_passed() ? kOk : kVerdictFalse;
  }

  int counterexample() {
    const auto t = builtin_counterexample();
    write_to_output([&](std::ostream& s) { write_operator_table(s, t); });
    return kOk;
  }

  int sweep() {
    const OperatorShape shape(f_.n, Universe::abstract(f_.sweep_universe));
    SweepOptions options;
    options.cap = f_.cap;
    options.sample = f_.sample;
    options.seed = f_.seed;
    options.oracle_budget = f_.budget;
    out_ << "seed=" << f_.seed << '\n';
    const auto r = prefhist::sweep(shape, parse_condition_set(f_.conditions), options);
    out_ << summary_line(r) << '\n';
    out_ << "conditions=" << to_string(r.conditions) << " oracle=" << r.oracle
         << " exhaustive=" << (r.exhaustive ? "yes" : "no") << " false_negatives=" << r.false_negatives
         << '\n';
    if (!f_.out_dir.empty()) {
      std::filesystem::create_directories(f_.out_dir);
      write_tables("counterexample", r.counterexample_tables);
      write_tables("false-negative", r.false_negative_tables);
    }
    return r.counterexamples == 0 && r.false_negatives == 0 ? kOk : kVerdictFalse;
  }

 private:
  std::optional<Universe> universe_flag() const {
    if (f_.atoms >= 0 && f_.universe >= 0) throw Error("give only one of --atoms and --universe");
    if (f_.atoms >= 0) return Universe::atoms(f_.atoms);
    if (f_.universe >= 0) return Universe::abstract(f_.universe);
    return std::nullopt;
  }

  // Set literals "{0,2}" work in any universe, formulas need atoms.
  ObservationSequence observations(const Universe& u) const {
    ObservationSequence obs;
    for (const auto& text : f_.observations) {
      const ModelSet m = text.find('{') != std::string::npos ? parse_model_set(text, u)
                                                             : models_of(parse_formula(text, u), u);
      if (m.empty()) throw Error("inconsistent observation '" + text + "'");
      obs.push_back(m);
    }
    return obs;
  }

  void print_result(ModelSet m, const Universe& u) {
    out_ << to_string(m) << '\n';
    if (u.has_atoms()) out_ << render_model_set(m, u) << '\n';
  }

  template <typename Fn>
  std::invoke_result_t<Fn, std::istream&> with_input(const std::string& path, Fn&& fn) {
    if (path == "-") return fn(in_);
    std::ifstream file(path);
    if (!file) throw Error("cannot open '" + path + "'");
    return fn(file);
  }

  OperatorTable read_table() {
    return with_input(f_.file, [](std::istream& s) { return read_operator_table(s); });
  }

  template <typename Fn>
  void write_to_output(Fn&& fn) {
    if (f_.output.empty() || f_.output == "-") {
      fn(out_);
      return;
    }
    std::ofstream file(f_.output);
    if (!file) throw Error("cannot write '" + f_.output + "'");
    fn(file);
  }

  void write_tables(const std::string& stem, const std::vector<OperatorTable>& tables) {
    for (std::size_t i = 0; i < tables.size(); ++i) {
      const auto path = std::filesystem::path(f_.out_dir) / (stem + "-" + std::to_string(i) + ".table");
      std::ofstream file(path);
      if (!file) throw Error("cannot write '" + path.string() + "'");
      write_operator_table(file, tables[i]);
      out_ << "wrote " << path.string() << '\n';
    }
  }

  const Flags& f_;
  std::istream& in_;
  std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app("Belief update by preferred histories: update engines, representation checks and "
               "enumeration sweeps.",
               "prefhist");
  app.require_subcommand(1);

  auto add_universe = [&](CLI::App* cmd) {
    cmd->add_option("--atoms", f.atoms, "Number of atoms k (2^k models)")->check(CLI::Range(0, 6));
    cmd->add_option("--universe", f.universe, "Abstract universe size")->check(CLI::Range(1, 64));
  };

  auto* update = app.add_subcommand("update", "Fixed-length update [A1 .. An]");
  add_universe(update);
  update->add_option("--ranking", f.ranking, "'canonical' or a fixed ranking file");
  update->add_option("observations", f.observations, "Formulas or set literals like {0,2}")->required();

  auto* general = app.add_subcommand("update-general", "Update by preferred histories of any length");
  add_universe(general);
  general->add_option("--ranking", f.ranking, "'canonical' or a general ranking file");
  general->add_option("--maxlen", f.maxlen, "History length bound for the canonical ranking");
  general->add_option("observations", f.observations, "Formulas or set literals")->required();

  auto* check = app.add_subcommand("check", "Check representation conditions on a table");
  check->add_option("table", f.file, "Table file, '-' for stdin")->required();
  check->add_option("--theorem", f.theorem)
      ->check(CLI::IsMember({"2d-tight", "2d-wide", "suggested-tight", "suggested-wide", "nd"}));
  check->add_flag("--relaxed", f.relaxed, "Relaxed patches (nd only)");

  auto* synth = app.add_subcommand("synthesize", "Print a ranking inducing the table");
  synth->add_option("table", f.file)->required();
  synth->add_option("-o,--output", f.output);

  auto* oracle = app.add_subcommand("oracle", "Brute-force representability over all rankings");
  oracle->add_option("table", f.file)->required();
  oracle->add_option("--budget", f.budget, "Largest |X|^n to enumerate");

  auto* post = app.add_subcommand("postulates", "Run the property suite on a general ranking");
  post->add_option("--atoms", f.atoms)->check(CLI::Range(1, 6));
  post->add_option("--ranking", f.ranking, "'canonical', 'random' or a general ranking file");
  post->add_option("--seed", f.seed);
  post->add_option("--maxlen", f.maxlen);
  post->add_option("pool", f.pool, "Observation formulas (default: p0 p1 !p0 'p0 | p1')");

  auto* cx = app.add_subcommand("counterexample", "Write the builtin counterexample table");
  cx->add_option("-o,--output", f.output);

  auto* sw = app.add_subcommand("sweep", "Compare conditions with the oracle over many tables");
  sw->add_option("--n", f.n)->check(CLI::Range(1, 4));
  sw->add_option("--universe", f.sweep_universe)->check(CLI::Range(1, 4));
  sw->add_option("--conditions", f.conditions)
      ->check(CLI::IsMember({"suggested-tight", "suggested-wide", "nd", "suggested_tight", "suggested_wide",
                             "theorem_nd", "theorem-nd"}));
  sw->add_option("--sample", f.sample, "Draw this many random tables instead of enumerating");
  sw->add_option("--seed", f.seed);
  sw->add_option("--cap", f.cap, "Tables kept per list");
  sw->add_option("--oracle-budget", f.budget);
  sw->add_option("--out-dir", f.out_dir, "Write kept tables here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  Runner runner(f, in, out);
  try {
    if (*update) return runner.update();
    if (*general) return runner.update_general();
    if (*check) return runner.check();
    if (*synth) return runner.synthesize(err);
    if (*oracle) return runner.oracle();
    if (*post) return runner.postulates();
    if (*cx) return runner.counterexample();
    if (*sw) return runner.sweep();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace prefhist::cli
