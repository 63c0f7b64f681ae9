// mb: run, sweep, verify and inspect Maker-Breaker games.
//
// Exit codes: 0 success, 1 a violation / infeasible instance / failed check,
// 2 bad configuration or unreadable input.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "mb/catalogue.h"
#include "mb/harness.h"
#include "mb/oracle.h"
#include "mb/registry.h"
#include "mb/service.h"
#include "mb/transcript.h"

namespace {

using namespace mb;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kConfig = 2;

// Game flags shared by run and sweep. Only flags given on the command line
// override the config file.
struct GameFlags {
  std::string config_file;
  std::map<std::string, std::string> values;

  void Add(CLI::App* app, bool with_strategies) {
    app->add_option("--config", config_file, "key = value file; flags override it");
    auto flag = [&](const std::string& name, const std::string& help) {
      app->add_option_function<std::string>(
          "--" + name, [this, name](const std::string& v) { values[name] = v; },
          help);
    };
    flag("board", "K<n>, K<m>,<n>, Kw or Kw,w");
    flag("horizon", "ordinal bound for infinite sides (default w)");
    flag("goal", "clique:<s>, biclique:<a>x<b> or club:<ordinal>");
    flag("bias", "Breaker moves per Maker move");
    flag("seed", "game seed");
    flag("budget", "Maker moves before the game stops");
    flag("schedule", "plain or phased:<p>");
    flag("mode", "strict or tournament");
    if (with_strategies) {
      flag("maker", "Maker strategy spec");
      flag("breaker", "Breaker strategy spec");
    }
    app->add_flag_callback(
        "--breaker-first", [this] { values["breaker-first"] = "true"; },
        "Breaker opens the game");
  }

  GameConfig Build() const {
    std::map<std::string, std::string> merged;
    if (!config_file.empty()) merged = ParseConfigFile(config_file);
    for (const auto& [k, v] : values) merged[k] = v;
    GameConfig config;
    ApplyConfig(merged, config);
    return config;
  }
};

bool WriteFile(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream out(path);
  out << text;
  return static_cast<bool>(out);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> SplitSpecs(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ';');) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

int Run(const GameFlags& flags, const std::string& out, bool check) {
  GameConfig config = flags.Build();
  RefereeHooks hooks;
  hooks.check_invariants = check;
  std::optional<GameRecord> record;
  try {
    record.emplace(RunConfigured(config, hooks));
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kViolation;
  } catch (const IllegalMove& e) {
    std::cerr << "illegal move: " << e.what() << "\n";
    return kViolation;
  }
  if (!out.empty() && !WriteFile(out, SerializeTranscript(record->transcript))) {
    std::cerr << "cannot write " << out << "\n";
    return kConfig;
  }
  std::cout << SummaryText(record->transcript);
  return kOk;
}

struct SweepFlags {
  std::string makers;
  std::string breakers;
  std::string seeds = "0";
  std::string budgets;
  std::string phase_lengths = "8";
  std::string biases;
  unsigned jobs = 1;
  std::string out = "-";
  std::string transcripts;
};

int Sweep(const GameFlags& flags, const SweepFlags& s) {
  SweepGrid grid;
  grid.base = flags.Build();
  grid.makers = SplitSpecs(s.makers.empty() ? grid.base.maker : s.makers);
  grid.breakers = SplitSpecs(s.breakers.empty() ? grid.base.breaker : s.breakers);
  grid.seeds = ParseNumberList(s.seeds, "seeds");
  grid.budgets = s.budgets.empty()
                     ? std::vector<std::uint64_t>{grid.base.budget}
                     : ParseNumberList(s.budgets, "budgets");
  grid.phase_lengths = ParseNumberList(s.phase_lengths, "p");
  grid.biases = s.biases.empty()
                    ? std::vector<std::uint64_t>{static_cast<std::uint64_t>(
                          grid.base.options.bias)}
                    : ParseNumberList(s.biases, "k");
  grid.jobs = s.jobs;
  std::vector<SweepRow> rows = RunSweep(grid);
  if (!s.transcripts.empty()) {
    std::filesystem::create_directories(s.transcripts);
    for (const SweepRow& r : rows) {
      WriteFile(s.transcripts + "/game-" + std::to_string(r.index) + ".jsonl",
                SerializeTranscript(r.transcript));
    }
  }
  if (!WriteFile(s.out, SweepCsv(rows))) {
    std::cerr << "cannot write " << s.out << "\n";
    return kConfig;
  }
  return kOk;
}

int Verify(const std::vector<std::string>& paths) {
  int status = kOk;
  for (const std::string& path : paths) {
    Transcript t;
    try {
      t = ParseTranscriptFile(path);
    } catch (const TranscriptError& e) {
      std::cout << path << ": " << e.what() << "\n";
      status = std::max(status, kConfig);
      continue;
    }
    VerifyReport report = VerifyTranscript(t);
    if (report.ok()) {
      std::cout << path << ": all invariants hold (" << report.moves_checked
                << " moves";
      if (!report.maker_resimulated) std::cout << "; maker not re-simulated";
      if (!report.breaker_resimulated) std::cout << "; breaker not re-simulated";
      std::cout << ")\n";
      continue;
    }
    for (const std::string& v : report.violations) {
      std::cout << path << ": " << v << "\n";
    }
    status = std::max(status, kViolation);
  }
  return status;
}

int Solve(const std::string& board_text, const std::string& goal_text,
          const std::string& transcript) {
  GameConfig config;
  ApplyConfig({{"board", board_text}, {"goal", goal_text}}, config);
  if (CountingImpossible(config.board, config.goal)) {
    std::cout << "counting: Maker cannot claim enough edges\n";
  }
  try {
    MinimaxSolver solver(config.board, config.goal);
    MinimaxValue v = solver.Solve();
    std::cout << MinimaxName(v) << "\n";
    std::cout << "positions: " << solver.positions_solved() << "\n";
  } catch (const TooLarge& e) {
    throw ConfigError("board", e.what());
  }
  if (!transcript.empty()) {
    config.maker = "minimax";
    config.breaker = "minimax";
    config.budget = *config.board.EdgeCount();
    GameRecord r = RunConfigured(config);
    WriteFile(transcript, SerializeTranscript(r.transcript));
  }
  return kOk;
}

struct ColourFlags {
  std::uint64_t k = 2;
  std::uint64_t m = 6;
  std::string catalogue_file;
  std::uint64_t u = 0;
  std::uint64_t n = 0;
  std::string out = "-";
};

Catalogue LoadCatalogue(const std::string& file, std::uint64_t k,
                        std::uint64_t m) {
  if (file.empty()) return Catalogue::AllSubsets(k, m);
  Json j = Json::parse(ReadFile(file), nullptr, false);
  if (j.is_discarded()) throw ConfigError(file, "not valid JSON");
  try {
    return Catalogue::FromJson(j);
  } catch (const std::exception& e) {
    throw ConfigError(file, e.what());
  }
}

int BuildColouring(const ColourFlags& f) {
  Catalogue cat = LoadCatalogue(f.catalogue_file, f.k, f.m);
  Colouring c(0, 0);
  try {
    c = BuildAvoidingColouring(cat, f.u, f.n);
  } catch (const CatalogueError& e) {
    throw ConfigError("u", e.what());
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kViolation;
  }
  std::vector<std::string> failed = CheckAvoiding(cat, c);
  if (!failed.empty()) {
    std::cerr << "constraint failed at alpha,beta = " << failed.front() << "\n";
    return kViolation;
  }
  WriteFile(f.out, c.ToCsv());
  return kOk;
}

struct RamseyFlags {
  std::string colouring_file;
  std::optional<std::uint64_t> random_seed;
  bool avoiding = false;
  std::uint64_t k = 2;
  std::uint64_t m = 6;
  std::string catalogue_file;
  std::uint64_t u = 8;
  std::uint64_t n = 8;
  std::uint64_t a = 2;
  std::uint64_t b = 2;
  std::uint64_t exhaustive_limit = 64;
};

std::string Describe(const std::optional<MonoBiclique>& m) {
  if (!m) return "none";
  std::string out = ColourName(m->colour);
  auto list = [](const std::vector<std::uint64_t>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
  };
  return out + " " + list(m->left) + " x " + list(m->right);
}

int RamseyCheck(const RamseyFlags& f) {
  Colouring c(0, 0);
  if (!f.colouring_file.empty()) {
    try {
      c = Colouring::FromCsv(ReadFile(f.colouring_file));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(f.colouring_file, e.what());
    }
  } else if (f.random_seed) {
    std::mt19937_64 rng(*f.random_seed);
    c = Colouring(f.u, f.n);
    for (std::uint64_t l = 0; l < f.u; ++l) {
      for (std::uint64_t r = 0; r < f.n; ++r) {
        c.Set(l, r, rng() % 2 ? Colour::kBlue : Colour::kRed);
      }
    }
  } else if (f.avoiding) {
    try {
      c = BuildAvoidingColouring(LoadCatalogue(f.catalogue_file, f.k, f.m), f.u, f.n);
    } catch (const CatalogueError& e) {
      throw ConfigError("u", e.what());
    } catch (const Infeasible& e) {
      std::cerr << "infeasible: " << e.what() << "\n";
      return kViolation;
    }
  } else {
    throw ConfigError("source", "give --colouring, --random or --avoiding");
  }
  std::optional<MonoBiclique> found = FilterIntersectFinder(c, f.a, f.b);
  std::cout << "colouring: K" << c.left_size() << "," << c.right_size() << "\n";
  std::cout << "filter-intersect: " << Describe(found) << "\n";
  if (found && !VerifyMonochromatic(c, *found)) {
    std::cout << "filter-intersect returned an unverified biclique\n";
    return kViolation;
  }
  if (c.left_size() * c.right_size() > f.exhaustive_limit) {
    std::cout << "exhaustive: skipped (more than " << f.exhaustive_limit
              << " cells)\n";
    return kOk;
  }
  std::optional<MonoBiclique> truth = ExhaustiveMonochromatic(c, f.a, f.b);
  std::cout << "exhaustive: " << Describe(truth) << "\n";
  if (found && !truth) {
    std::cout << "disagreement: exhaustive search finds none\n";
    return kViolation;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maker-Breaker games on complete and bipartite graphs"};
  app.require_subcommand(1);

  GameFlags run_flags;
  std::string run_out;
  bool check = false;
  CLI::App* run = app.add_subcommand("run", "play one game and print a summary");
  run_flags.Add(run, true);
  run->add_option("--out", run_out, "write the transcript here (- for stdout)");
  run->add_flag("--check-invariants", check,
                "check every strategy invariant after each move");

  GameFlags sweep_flags;
  SweepFlags sweep_opts;
  CLI::App* sweep = app.add_subcommand("sweep", "run a parameter grid to CSV");
  sweep_flags.Add(sweep, true);
  sweep->add_option("--makers", sweep_opts.makers, "Maker specs separated by ';'");
  sweep->add_option("--breakers", sweep_opts.breakers,
                    "Breaker specs separated by ';'");
  sweep->add_option("--seeds", sweep_opts.seeds, "e.g. 0..9 or 1,4,7");
  sweep->add_option("--budgets", sweep_opts.budgets, "Maker move budgets");
  sweep->add_option("--p", sweep_opts.phase_lengths,
                    "phase lengths for bipartite specs without p");
  sweep->add_option("--k", sweep_opts.biases, "biases");
  sweep->add_option("--jobs", sweep_opts.jobs, "games run in parallel");
  sweep->add_option("--out", sweep_opts.out, "CSV path (- for stdout)");
  sweep->add_option("--transcripts", sweep_opts.transcripts,
                    "also write each game's transcript to this directory");

  std::vector<std::string> verify_paths;
  CLI::App* verify = app.add_subcommand("verify", "re-check transcripts offline");
  verify->add_option("transcripts", verify_paths, "transcript files")->required();

  std::string solve_board;
  std::string solve_goal;
  std::string solve_transcript;
  CLI::App* solve = app.add_subcommand("solve", "exact value of a tiny game");
  solve->add_option("--board", solve_board)->required();
  solve->add_option("--goal", solve_goal)->required();
  solve->add_option("--transcript", solve_transcript,
                    "write an optimal-play transcript here");

  ColourFlags colour_opts;
  CLI::App* colour = app.add_subcommand(
      "colour", "build a red/blue colouring of K_{u,n} avoiding a catalogue");
  colour->add_option("--k", colour_opts.k, "catalogue set size");
  colour->add_option("--m", colour_opts.m, "catalogue sets are k-subsets of m");
  colour->add_option("--catalogue", colour_opts.catalogue_file,
                     "catalogue JSON instead of --k/--m");
  colour->add_option("--u", colour_opts.u, "left vertices")->required();
  colour->add_option("--n", colour_opts.n, "right vertices")->required();
  colour->add_option("--out", colour_opts.out, "CSV path (- for stdout)");

  RamseyFlags ramsey_opts;
  CLI::App* ramsey = app.add_subcommand(
      "ramsey-check", "look for a monochromatic K_{a,b} in a colouring");
  ramsey->add_option("--colouring", ramsey_opts.colouring_file, "u,v,colour CSV");
  ramsey->add_option("--random", ramsey_opts.random_seed,
                     "uniform random colouring with this seed");
  ramsey->add_flag("--avoiding", ramsey_opts.avoiding,
                   "the catalogue-avoiding colouring from --k/--m or --catalogue");
  ramsey->add_option("--k", ramsey_opts.k);
  ramsey->add_option("--m", ramsey_opts.m);
  ramsey->add_option("--catalogue", ramsey_opts.catalogue_file);
  ramsey->add_option("--u", ramsey_opts.u);
  ramsey->add_option("--n", ramsey_opts.n);
  ramsey->add_option("--a", ramsey_opts.a);
  ramsey->add_option("--b", ramsey_opts.b);
  ramsey->add_option("--exhaustive-limit", ramsey_opts.exhaustive_limit,
                     "largest u*n for the exhaustive cross-check");

  int port = 8080;
  std::string transcript_dir;
  CLI::App* serve = app.add_subcommand(
      "serve", "session service; binds MB_BIND_ADDRESS (default 127.0.0.1)");
  serve->add_option("--port", port);
  serve->add_option("--transcripts", transcript_dir,
                    "append each session's transcript to this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) return Run(run_flags, run_out, check);
    if (*sweep) return Sweep(sweep_flags, sweep_opts);
    if (*verify) return Verify(verify_paths);
    if (*solve) return Solve(solve_board, solve_goal, solve_transcript);
    if (*colour) return BuildColouring(colour_opts);
    if (*ramsey) return RamseyCheck(ramsey_opts);
    if (*serve) {
      SessionManager sessions(transcript_dir.empty()
                                  ? std::nullopt
                                  : std::optional<std::string>(transcript_dir));
      std::string host = BindAddress();
      std::cerr << "listening on " << host << ":" << port << "\n";
      if (!Serve(sessions, host, port)) {
        std::cerr << "cannot bind " << host << ":" << port << "\n";
        return kConfig;
      }
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const TranscriptError& e) {
    std::cerr << "transcript error: " << e.what() << "\n";
    return kConfig;
  }
  return kOk;
}
