// Command-line front end. Exit codes: 0 ok, 1 a check failed, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "dcx/census.hpp"
#include "dcx/complexity.hpp"
#include "dcx/entropy.hpp"
#include "dcx/errors.hpp"
#include "dcx/games.hpp"
#include "dcx/harness.hpp"
#include "dcx/semantics.hpp"

namespace {

using namespace dcx;

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
};

void emit(const Globals& g, const CsvTable& t) {
  const std::string text = g.format == "json" ? t.to_json().dump(2) + "\n" : t.str();
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file) throw ConfigError("cannot write " + g.out);
  file << text;
}

Dialect dialect_of(const std::string& name) {
  if (name == "mlu") return Dialect::mlu;
  if (name == "gmlu") return Dialect::gmlu;
  if (name == "fo") return Dialect::fo;
  throw ConfigError("dialect must be mlu, gmlu or fo");
}

ClassUniverse universe_of(Dialect d, int k, int n, const std::vector<int>& arities) {
  switch (d) {
    case Dialect::mlu: return ClassUniverse::mlu(k, n);
    case Dialect::gmlu: return ClassUniverse::gmlu(k, n);
    case Dialect::fo: return ClassUniverse::fo(arities, n);
  }
  throw ConfigError("unknown dialect");
}

std::size_t class_index(const ClassUniverse& u, const std::string& label) {
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u.label(i) == label) return i;
  throw ConfigError("no class labelled '" + label + "' in " + u.id());
}

// "[2,1]" -> counts.
TypeCountVector parse_counts(const std::string& text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') throw ConfigError("class must look like [2,1]");
  std::vector<int> counts;
  std::stringstream in(text.substr(1, text.size() - 2));
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      counts.push_back(std::stoi(part));
    } catch (const std::exception&) {
      throw ConfigError("bad count '" + part + "'");
    }
  }
  return TypeCountVector(counts);
}

// "<model text>@<point>" items separated by '|'; points are 1-based.
std::vector<PointedModel> parse_side(const std::string& text, int k) {
  std::vector<PointedModel> side;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, '|')) {
    const auto at = item.rfind('@');
    if (at == std::string::npos) throw ConfigError("pointed model needs '@point': " + item);
    KripkeModel m = parse_kripke(item.substr(0, at), k);
    const int point = std::stoi(item.substr(at + 1)) - 1;
    if (point < 0 || point >= m.n()) throw ConfigError("point outside the model: " + item);
    side.push_back({std::move(m), point});
  }
  return side;
}

int cmd_classes(const Globals& g, const std::string& dialect, int k, int n, const std::vector<int>& arities) {
  const Dialect d = dialect_of(dialect);
  CsvTable t({"class_id", "dialect", "k", "n", "size", "probability", "boltzmann_bits"});
  if (d == Dialect::fo) {
    const ClassUniverse u = ClassUniverse::fo(arities, n);
    const BigInt total = pow2(cell_total(arities, n));
    for (std::size_t i = 0; i < u.size(); ++i) {
      const BigInt size = factorial(n) / automorphism_count(u.structures()[i]);
      t.add({u.label(i), dialect, "", std::to_string(n), to_string(size), format_number(to_double(Rational(size, total))),
             format_number(log2_big(size))});
    }
  } else {
    const Partition p = d == Dialect::mlu ? mlu_partition(k, n) : gmlu_partition(k, n);
    for (const auto& c : class_stats(p))
      t.add({c.label, dialect, std::to_string(k), std::to_string(n), to_string(c.size), format_number(to_double(c.probability)),
             format_number(c.boltzmann_bits)});
  }
  emit(g, t);
  return 0;
}

int cmd_entropy(const Globals& g, const std::string& dialect, int k, int n) {
  const Dialect d = dialect_of(dialect);
  if (d == Dialect::fo) throw ConfigError("entropy supports mlu and gmlu");
  const Partition p = d == Dialect::mlu ? mlu_partition(k, n) : gmlu_partition(k, n);
  const EntropyStats s = entropy_stats(p);
  CsvTable t({"k", "n", "dialect", "shannon_bits", "expected_boltzmann_bits", "log_universe_bits",
              "identity_residual"});
  t.add({std::to_string(k), std::to_string(n), dialect, format_number(s.shannon_bits),
         format_number(s.expected_boltzmann_bits), format_number(s.log_universe_bits),
         format_number(s.identity_residual())});
  emit(g, t);
  return 0;
}

int cmd_complexity(const Globals& g, const std::string& dialect, int k, int n, const std::vector<int>& arities,
                   int budget, const std::string& label) {
  const Dialect d = dialect_of(dialect);
  const ClassUniverse u = universe_of(d, k, n, arities);
  std::vector<std::size_t> which;
  if (label.empty())
    for (std::size_t i = 0; i < u.size(); ++i) which.push_back(i);
  else
    which.push_back(class_index(u, label));
  CsvTable t({"dialect", "k", "n", "class_id", "c_lower", "c_upper_phi1", "c_upper_phi2", "c_exact", "witness"});
  std::optional<ModalDp> dp;
  std::optional<FoDp> fo;
  if (d == Dialect::fo) {
    if (n > 2 || budget > 10) throw CapExceeded("FO search limited to n <= 2 and budget <= 10");
    fo.emplace(u, 2);
  } else {
    if (budget > 24) throw CapExceeded("modal search limited to budget <= 24");
    dp.emplace(ModalDp::for_universe(u));
  }
  for (std::size_t i : which) {
    Denotation target(u.size());
    target.set(i);
    const auto w = fo ? fo->sentence(target, budget) : dp->guarded(dp->lift(target), budget);
    std::string lo, p1, p2;
    if (d == Dialect::gmlu) {
      const auto& c = u.count_classes()[i];
      lo = std::to_string(sandwich_lower_bound(c));
      p1 = std::to_string(phi1_size(c));
      p2 = std::to_string(phi2_size(c));
    } else if (d == Dialect::mlu) {
      p1 = std::to_string(phi_pi_size(k, u.type_sets()[i]));
    }
    t.add({dialect, d == Dialect::fo ? "" : std::to_string(k), std::to_string(n), u.label(i),
           lo, p1, p2, w ? std::to_string(w->size) : "", w ? w->text : ""});
  }
  emit(g, t);
  return 0;
}

struct GameArgs {
  std::string game = "fs";
  int k = 1;
  int n = 0;
  int r = 1;
  std::string a, b, instance, label;
  bool trace = false, strict = false, unpruned = false;
};

int cmd_game_solve(const Globals& g, const GameArgs& args) {
  GameOptions opts;
  opts.record_trace = args.trace;
  opts.strict_literal_rule = args.strict;
  opts.prune_splits = opts.prune_choices = !args.unpruned;
  GamePosition start;
  int k = args.k, n = args.n;
  std::string game = args.game;
  if (args.instance == "missing-type") {
    start = build_missing_type_instance(k).start(args.r);
    game = "fs";
  } else if (args.instance == "count") {
    const TypeCountVector c = parse_counts(args.label);
    start = build_count_instance(c).start(args.r);
    k = c.k();
    n = c.n();
    game = "fsc";
  } else if (args.instance.empty()) {
    start.r = args.r;
    start.a = parse_side(args.a, k);
    start.b = parse_side(args.b, k);
    if (game == "fsc" && n == 0 && !start.a.empty()) n = start.a.front().model.n();
  } else {
    throw ConfigError("instance must be missing-type or count");
  }
  const GameResult res = game == "fs" ? solve_fs(start, k, opts) : solve_fsc(start, k, n, opts);
  if (g.format == "json") {
    nlohmann::json j{{"game", game}, {"r", start.r}, {"winner", to_string(res.winner)},
                     {"positions", res.positions}, {"trace", res.trace}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "winner=" << to_string(res.winner) << " r=" << start.r << " positions=" << res.positions << "\n";
    for (const auto& line : res.trace) std::cout << line << "\n";
  }
  return 0;
}

int cmd_game_verify(const Globals& g, const std::string& strategy, int k, const std::string& label,
                    std::optional<int> r) {
  StrategyInstance inst;
  int rr = 0;
  if (strategy == "hardness") {
    inst = {DStrategy::hardness, k, std::nullopt};
    rr = r.value_or(k * (2 << k) + (1 << k) - 2);
  } else if (strategy == "cover") {
    const TypeCountVector c = parse_counts(label);
    std::vector<int> weights;
    for (int v : c.realized()) weights.push_back(c[static_cast<std::size_t>(v)]);
    inst = {DStrategy::cover, c.k(), c};
    rr = r.value_or(min_cover_cost(complete_cover_graph(c), weights).cost - 1);
  } else {
    throw ConfigError("strategy must be hardness or cover");
  }
  const Certificate cert = verify_d_strategy(inst, rr);
  CsvTable t({"strategy", "r", "valid", "positions", "samson_moves", "delilah_choices", "violation", "path"});
  std::string path;
  for (const auto& step : cert.path) path += (path.empty() ? "" : " ; ") + step;
  t.add({std::string(to_string(cert.strategy)), std::to_string(cert.r), cert.valid ? "1" : "0",
         std::to_string(cert.positions), std::to_string(cert.samson_moves), std::to_string(cert.delilah_choices),
         cert.violation, path});
  emit(g, t);
  return cert.valid ? 0 : 1;
}

int cmd_census(const Globals& g, int n_max, const std::vector<int>& arities) {
  CsvTable t({"n", "labeled", "iso", "rigid_labeled", "rigid_fraction", "fagin_ratio"});
  for (const auto& r : census(arities, n_max))
    t.add({std::to_string(r.n), to_string(r.labeled), to_string(r.iso),
           r.rigid_labeled ? to_string(*r.rigid_labeled) : "", format_number(r.rigid_fraction()),
           format_number(r.fagin_ratio())});
  emit(g, t);
  return 0;
}

int cmd_bounds(const Globals& g, int m, double c, long long n_max) {
  std::vector<long long> samples;
  for (long long n = 10; n <= n_max; n *= 10) samples.push_back(n);
  const BoundsReport rep = bounds_compare(m, c, 2, n_max, samples);
  CsvTable t({"n", "hb_upper_bits", "c_lower_bits"});
  for (const auto& row : rep.rows)
    t.add({std::to_string(row.n), format_number(row.hb_upper), format_number(row.c_lower)});
  emit(g, t);
  std::cerr << "crossover: " << (rep.crossover ? std::to_string(*rep.crossover) : "none") << "\n";
  return 0;
}

int cmd_experiment(const Globals& g, const std::string& config_path, bool seed_given, bool out_given) {
  ExperimentConfig config = load_config(config_path);
  if (seed_given) config.seed = g.seed;
  if (out_given) config.out = g.out;
  const auto reports = run_experiments(config);
  bool ok = true;
  for (const auto& r : reports) {
    for (const auto& c : r.checks)
      std::cout << (c.pass ? "PASS" : "FAIL") << " [" << r.name << "] " << c.label
                << (c.detail.empty() ? "" : " | " + c.detail) << "\n";
    ok = ok && r.passed();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Description complexity and entropy of model classes"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Globals g;
  app.add_option("--seed", g.seed, "Seed for randomized experiments");
  app.add_option("--out", g.out, "Output file (or directory for experiments)");
  app.add_option("--format", g.format, "Table format")->check(CLI::IsMember({"csv", "json"}));

  std::string dialect = "gmlu", label;
  int k = 1, n = 3, budget = 14;
  std::vector<int> arities{2};

  auto* classes = app.add_subcommand("classes", "List the classes of a universe");
  auto* entropy = app.add_subcommand("entropy", "Shannon and expected Boltzmann entropy");
  auto* complexity = app.add_subcommand("complexity", "Exact minimal defining formula sizes");
  for (auto* sub : {classes, entropy, complexity}) {
    sub->add_option("--dialect", dialect)->check(CLI::IsMember({"mlu", "gmlu", "fo"}));
    sub->add_option("--k", k)->check(CLI::Range(1, 4));
    sub->add_option("--n", n)->check(CLI::Range(1, 200));
  }
  classes->add_option("--arities", arities);
  complexity->add_option("--arities", arities);
  complexity->add_option("--budget", budget)->check(CLI::Range(1, 24));
  complexity->add_option("--class", label, "Class label, e.g. [2,1] or {+,-}");

  auto* game = app.add_subcommand("game", "Formula size games");
  game->require_subcommand(1);
  GameArgs ga;
  auto* solve = game->add_subcommand("solve", "Solve FS or FSc from a position");
  solve->add_option("--game", ga.game)->check(CLI::IsMember({"fs", "fsc"}));
  solve->add_option("--k", ga.k)->check(CLI::Range(1, 4));
  solve->add_option("--n", ga.n, "Model size for FSc (defaults to the first A model)");
  solve->add_option("--r", ga.r)->required()->check(CLI::Range(1, 10));
  solve->add_option("--a", ga.a, "A side: 'n=2; w1:p1; w2:!p1 @1 | ...'");
  solve->add_option("--b", ga.b, "B side");
  solve->add_option("--instance", ga.instance, "missing-type or count");
  solve->add_option("--class", ga.label, "Class of the count instance, e.g. [2,1]");
  solve->add_flag("--trace", ga.trace);
  solve->add_flag("--strict-literals", ga.strict, "Only diamond moves unlock literals");
  solve->add_flag("--unpruned", ga.unpruned, "Enumerate every split and choice");
  auto* verify = game->add_subcommand("verify", "Check a D strategy over every S move");
  std::string strategy = "hardness";
  std::optional<int> r;
  verify->add_option("--strategy", strategy)->check(CLI::IsMember({"hardness", "cover"}));
  verify->add_option("--k", k)->check(CLI::Range(1, 2));
  verify->add_option("--class", label);
  verify->add_option("--r", r);

  auto* census_cmd = app.add_subcommand("fo-census", "Isomorphism and rigidity counts");
  int n_max = 4;
  census_cmd->add_option("--n-max", n_max)->check(CLI::Range(1, 7));
  census_cmd->add_option("--arities", arities);

  auto* bounds_cmd = app.add_subcommand("bounds", "Entropy upper vs complexity lower bound");
  int m = 2;
  double c = 0.1;
  long long bounds_n_max = 1'000'000;
  bounds_cmd->add_option("--m", m)->check(CLI::Range(2, 4));
  bounds_cmd->add_option("--c", c);
  bounds_cmd->add_option("--n-max", bounds_n_max);

  auto* experiment = app.add_subcommand("experiment", "Experiment suite");
  experiment->require_subcommand(1);
  auto* run = experiment->add_subcommand("run", "Run experiments from a JSON config");
  std::string config_path;
  run->add_option("--config", config_path)->required();

  auto* plot = app.add_subcommand("plot", "SVG line chart from a CSV");
  std::string csv;
  PlotSpec spec;
  std::optional<double> marker;
  plot->add_option("--csv", csv)->required();
  plot->add_option("--x", spec.x)->required();
  plot->add_option("--y", spec.y)->required();
  plot->add_option("--title", spec.title);
  plot->add_option("--marker-x", marker);
  plot->add_flag("--log-x", spec.log_x);
  plot->add_flag("--log-y", spec.log_y);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*classes) return cmd_classes(g, dialect, k, n, arities);
    if (*entropy) return cmd_entropy(g, dialect, k, n);
    if (*complexity) return cmd_complexity(g, dialect, k, n, arities, budget, label);
    if (*solve) return cmd_game_solve(g, ga);
    if (*verify) return cmd_game_verify(g, strategy, k, label, r);
    if (*census_cmd) return cmd_census(g, n_max, arities);
    if (*bounds_cmd) return cmd_bounds(g, m, c, bounds_n_max);
    if (*run)
      return cmd_experiment(g, config_path, app.get_option("--seed")->count() > 0,
                            app.get_option("--out")->count() > 0);
    if (*plot) {
      if (g.out.empty()) throw ConfigError("plot needs --out");
      spec.marker_x = marker;
      emit_plot(csv, spec, g.out);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
