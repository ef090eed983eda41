#include "dcx/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "dcx/census.hpp"
#include "dcx/complexity.hpp"
#include "dcx/entropy.hpp"
#include "dcx/errors.hpp"
#include "dcx/games.hpp"
#include "dcx/semantics.hpp"

namespace dcx {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------- config

namespace {

template <typename T>
T field(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{"experiment", "seed",        "out",        "bridge_instances",
                                           "census_n_max", "trend_n",   "delta",      "delta_n_max",
                                           "hardest_k2",  "bounds_m",    "bounds_c",   "bounds_n_max"};
  for (const auto& [key, value] : doc.items())
    if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  ExperimentConfig c;
  c.experiment = field(doc, "experiment", c.experiment);
  c.seed = field(doc, "seed", c.seed);
  c.out = field(doc, "out", c.out.string());
  c.bridge_instances = field(doc, "bridge_instances", c.bridge_instances);
  c.census_n_max = field(doc, "census_n_max", c.census_n_max);
  c.trend_n = field(doc, "trend_n", c.trend_n);
  c.delta = field(doc, "delta", c.delta);
  c.delta_n_max = field(doc, "delta_n_max", c.delta_n_max);
  c.hardest_k2 = field(doc, "hardest_k2", c.hardest_k2);
  c.bounds_m = field(doc, "bounds_m", c.bounds_m);
  c.bounds_c = field(doc, "bounds_c", c.bounds_c);
  c.bounds_n_max = field(doc, "bounds_n_max", c.bounds_n_max);

  const auto& names = experiment_names();
  if (c.experiment != "all" && std::find(names.begin(), names.end(), c.experiment) == names.end())
    throw ConfigError("unknown experiment '" + c.experiment + "'");
  if (c.bridge_instances < 1 || c.bridge_instances > 10'000) throw ConfigError("bridge_instances must lie in 1..10000");
  if (c.census_n_max < 1 || c.census_n_max > 7) throw ConfigError("census_n_max must lie in 1..7");
  if (c.trend_n.empty()) throw ConfigError("trend_n must be nonempty");
  for (int n : c.trend_n)
    if (n < 2 || n > 200) throw ConfigError("trend_n entries must lie in 2..200");
  if (!(c.delta > 0) || !(c.delta < 0.5)) throw ConfigError("delta must lie in (0, 1/2)");
  if (c.delta_n_max < 1 || c.delta_n_max > 200) throw ConfigError("delta_n_max must lie in 1..200");
  if (c.bounds_m < 2 || c.bounds_m > 4) throw ConfigError("bounds_m must lie in 2..4");
  if (!(c.bounds_c > 0)) throw ConfigError("bounds_c must be positive");
  if (c.bounds_n_max < 1000 || c.bounds_n_max > 100'000'000) throw ConfigError("bounds_n_max must lie in 1000..1e8");
  return c;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

bool ExperimentReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

// ------------------------------------------------------------------- csv

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw ConfigError("a table needs at least one column");
}

void CsvTable::add(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw DomainError("row width differs from the header");
  rows_.push_back(std::move(row));
}

namespace {

std::string quoted(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char ch : cell) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells(1);
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (in_quotes) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (ch == '"') {
        in_quotes = false;
      } else {
        cells.back() += ch;
      }
    } else if (ch == '"') {
      in_quotes = true;
    } else if (ch == ',') {
      cells.emplace_back();
    } else {
      cells.back() += ch;
    }
  }
  return cells;
}

}  // namespace

std::string CsvTable::str() const {
  std::string out;
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + quoted(cells[i]);
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

void CsvTable::write(const fs::path& path) const {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << str();
}

json CsvTable::to_json() const {
  json rows = json::array();
  for (const auto& r : rows_) {
    json obj = json::object();
    for (std::size_t i = 0; i < header_.size(); ++i) obj[header_[i]] = r[i];
    rows.push_back(std::move(obj));
  }
  return rows;
}

CsvTable CsvTable::read(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.empty()) throw ConfigError(path.string() + " is empty");
  CsvTable t(split_csv_line(line));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != t.header_.size()) throw ConfigError(path.string() + ": ragged row");
    t.rows_.push_back(std::move(cells));
  }
  return t;
}

// ----------------------------------------------------------- experiments

namespace {

struct Context {
  const ExperimentConfig& config;
  fs::path dir;
  ExperimentReport& report;

  void check(std::string label, bool pass, std::string detail) {
    report.checks.push_back({std::move(label), pass, std::move(detail)});
  }
  void emit(const std::string& file, const CsvTable& t) {
    t.write(dir / file);
    report.files.push_back(dir / file);
  }
};

std::string str(const BigInt& x) { return to_string(x); }
std::string str(int x) { return std::to_string(x); }
std::string str(long long x) { return std::to_string(x); }
std::string str(std::size_t x) { return std::to_string(x); }
std::string num(double x) { return format_number(x); }

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) { return lo + rng() % (hi - lo + 1); }

// Class sizes, probabilities and Boltzmann entropies.
void classes_table(Context& ctx, const Partition& p, CsvTable& t) {
  const std::string dialect = p.dialect == Dialect::mlu ? "mlu" : "gmlu";
  for (const auto& c : class_stats(p))
    t.add({c.label, dialect, str(p.k), str(p.n), str(c.size), num(to_double(c.probability)), num(c.boltzmann_bits)});
  (void)ctx;
}

void entropy_identity(Context& ctx) {
  CsvTable entropy({"k", "n", "dialect", "shannon_bits", "expected_boltzmann_bits", "log_universe_bits",
                    "identity_residual", "classes", "boltzmann_ratio"});
  CsvTable classes({"class_id", "dialect", "k", "n", "size", "probability", "boltzmann_bits"});
  double worst = 0;
  for (Dialect d : {Dialect::mlu, Dialect::gmlu})
    for (int k = 1; k <= 3; ++k)
      for (int n = 1; n <= 12; ++n) {
        const Partition p = d == Dialect::mlu ? mlu_partition(k, n) : gmlu_partition(k, n);
        const EntropyStats s = entropy_stats(p);
        worst = std::max(worst, std::abs(s.identity_residual()));
        entropy.add({str(k), str(n), d == Dialect::mlu ? "mlu" : "gmlu", num(s.shannon_bits),
                     num(s.expected_boltzmann_bits), num(s.log_universe_bits), num(s.identity_residual()),
                     str(p.classes.size()), num(s.expected_boltzmann_bits / (k * n))});
        if (k == 1 && n <= 4) classes_table(ctx, p, classes);
      }
  ctx.emit("entropy.csv", entropy);
  ctx.emit("classes.csv", classes);
  ctx.check("entropy identity H_S + <H_B> = log2|universe| (MLU and GMLU, k<=3, n<=12)", worst < 1e-9,
            "max |residual| = " + num(worst));
}

void exact_sizes(Context& ctx) {
  CsvTable t({"k", "class", "proper", "constructed_size", "closed_form"});
  bool ok = true;
  std::size_t count = 0;
  for (int k = 1; k <= 3; ++k) {
    const std::uint64_t limit = std::uint64_t{1} << (1 << k);
    for (std::uint64_t bits = 1; bits < limit; ++bits) {
      const TypeSet set(bits, k);
      const bool proper = bits != limit - 1;
      const int built = size(construct_phi_pi(k, set));
      const int expected = proper ? k * (2 << k) + set.size() : k * (2 << k) + (1 << k) - 1;
      ok = ok && built == expected && phi_pi_size(k, set) == expected;
      t.add({str(k), set.label(), proper ? "1" : "0", str(built), str(expected)});
      ++count;
    }
  }
  ctx.emit("phi_sizes.csv", t);
  ctx.check("type-set defining formula has size k*2^(k+1)+|Pi| (proper) or k*2^(k+1)+2^k-1 (all types), k<=3", ok,
            str(count) + " type sets");
}

void mlu_hardest(Context& ctx) {
  CsvTable t({"dialect", "k", "n", "class_id", "c_lower", "c_upper_phi1", "c_upper_phi2", "c_exact", "witness"});
  std::vector<int> ks{1};
  if (ctx.config.hardest_k2) ks.push_back(2);
  for (int k : ks) {
    const ClassUniverse u = ClassUniverse::mlu(k);
    ModalDp dp = ModalDp::for_universe(u);
    const int budget = k == 1 ? 8 : 19;
    const std::size_t full = u.size() - 1;  // every type realized
    int worst = 0;
    bool all_found = true;
    int full_size = -1;
    for (std::size_t i = 0; i < u.size(); ++i) {
      Denotation target(u.size());
      target.set(i);
      const auto w = dp.guarded(dp.lift(target), budget);
      if (!w) {
        all_found = false;
        t.add({"mlu", str(k), "", u.label(i), "", "", "", "", ""});
        continue;
      }
      worst = std::max(worst, w->size);
      if (i == full) full_size = w->size;
      const int upper = phi_pi_size(k, u.type_sets()[i]);
      t.add({"mlu", str(k), "", u.label(i), "", str(upper), "", str(w->size), w->text});
    }
    const int predicted = k * (2 << k) + (1 << k) - 1;
    ctx.check("all-types MLU class needs exactly k*2^(k+1)+2^k-1 symbols and is the hardest class, k=" + str(k),
              all_found && full_size == predicted && worst == full_size,
              "exact " + str(full_size) + ", predicted " + str(predicted) + ", max over classes " + str(worst));
  }
  ctx.emit("complexity.csv", t);

  // Game side of the same bound.
  CsvTable g({"instance", "r", "winner", "positions"});
  const HardInstance inst = build_missing_type_instance(1);
  const int r_safe = 1 * 4 + 2 - 2;
  const auto d = solve_fs(inst.start(r_safe), 1);
  const auto s = solve_fs(inst.start(r_safe + 1), 1);
  g.add({"all-types-vs-missing-one k=1", str(r_safe), std::string(to_string(d.winner)), str(d.positions)});
  g.add({"all-types-vs-missing-one k=1", str(r_safe + 1), std::string(to_string(s.winner)), str(s.positions)});
  ctx.emit("games.csv", g);
  ctx.check("FS game on the missing-type instance: D survives r=4, S wins at r=5 (k=1)",
            d.winner == Player::delilah && s.winner == Player::samson,
            "r=4 " + std::string(to_string(d.winner)) + ", r=5 " + std::string(to_string(s.winner)));
}

KripkeModel random_model(std::mt19937_64& rng, int k) {
  const int n = static_cast<int>(draw(rng, 1, 3));
  std::vector<std::uint32_t> masks;
  for (int w = 0; w < n; ++w) masks.push_back(static_cast<std::uint32_t>(draw(rng, 0, (1U << k) - 1)));
  return KripkeModel::from_masks(k, masks);
}

void game_bridge(Context& ctx) {
  std::mt19937_64 rng(ctx.config.seed);
  CsvTable t({"instance", "k", "r", "a_models", "b_models", "winner", "dp_separates", "witness", "agree"});
  int agree = 0;
  const int total = ctx.config.bridge_instances;
  for (int i = 0; i < total; ++i) {
    const int k = static_cast<int>(draw(rng, 1, 2));
    GamePosition p;
    p.r = static_cast<int>(draw(rng, 1, 7));
    const auto na = draw(rng, 1, 3), nb = draw(rng, 1, 3);
    for (std::uint64_t j = 0; j < na + nb; ++j) {
      KripkeModel m = random_model(rng, k);
      const int point = static_cast<int>(draw(rng, 0, static_cast<std::uint64_t>(m.n() - 1)));
      (j < na ? p.a : p.b).push_back({std::move(m), point});
    }
    const GameResult g = solve_fs(p, k);
    // Same pairs as the game: one per (model class, point type).
    std::vector<TypeCountVector> models;
    for (const auto* side : {&p.a, &p.b})
      for (const auto& pm : *side) {
        auto c = classify(pm.model).counts;
        if (std::find(models.begin(), models.end(), c) == models.end()) models.push_back(c);
      }
    ModalDp dp(models, 1);
    const auto bits = [&](const std::vector<PointedModel>& side) {
      BitVec b;
      for (const auto& pm : side) {
        const auto c = classify(pm.model).counts;
        const auto m = static_cast<std::size_t>(std::find(models.begin(), models.end(), c) - models.begin());
        b.set(static_cast<std::size_t>(dp.pair_index(m, pm.model.type_at(pm.point).mask())));
      }
      return b;
    };
    const auto w = dp.separating(bits(p.a), bits(p.b), p.r);
    const bool same = (g.winner == Player::samson) == w.has_value();
    agree += same ? 1 : 0;
    t.add({str(i), str(k), str(p.r), str(p.a.size()), str(p.b.size()), std::string(to_string(g.winner)),
           w ? "1" : "0", w ? w->text : "", same ? "1" : "0"});
  }
  ctx.emit("bridge.csv", t);
  ctx.check("game winner S iff a separating MLU formula of size <= r exists (random tiny instances)", agree == total,
            str(agree) + "/" + str(total) + " agree");
}

void strategy_proofs(Context& ctx) {
  CsvTable t({"strategy", "class", "r", "valid", "positions", "samson_moves", "delilah_choices", "violation"});
  const Certificate h = verify_d_strategy({DStrategy::hardness, 1, std::nullopt}, 4);
  t.add({"hardness", "", str(h.r), h.valid ? "1" : "0", str(h.positions), str(h.samson_moves),
         str(h.delilah_choices), h.violation});
  ctx.check("hardness invariant (r < h(P), at most one kind-3 type) survives every S move, k=1, r=4", h.valid,
            h.valid ? str(h.positions) + " positions" : h.violation);
  const Certificate bad = verify_d_strategy({DStrategy::hardness, 1, std::nullopt}, 5);
  t.add({"hardness", "", str(bad.r), bad.valid ? "1" : "0", str(bad.positions), str(bad.samson_moves),
         str(bad.delilah_choices), bad.violation});
  ctx.check("hardness invariant fails at the root for r=5", !bad.valid, bad.violation);

  bool all = true;
  int instances = 0;
  for (const auto& c : count_vectors(1, 3)) {
    if (c[static_cast<std::size_t>(c.largest())] < 2 || c.realized().size() < 2) continue;
    std::vector<int> weights;
    for (int v : c.realized()) weights.push_back(c[static_cast<std::size_t>(v)]);
    const int big_r = min_cover_cost(complete_cover_graph(c), weights).cost;
    const Certificate cert = verify_d_strategy({DStrategy::cover, 1, c}, big_r - 1);
    all = all && cert.valid;
    ++instances;
    t.add({"cover", c.label(), str(cert.r), cert.valid ? "1" : "0", str(cert.positions), str(cert.samson_moves),
           str(cert.delilah_choices), cert.violation});
  }
  ctx.emit("certificates.csv", t);
  ctx.check("cover invariant r < R(P) survives every S move, k=1, n=3, r=R(P0)-1", all && instances > 0,
            str(instances) + " classes");
}

int cover_value(const TypeCountVector& c) {
  std::vector<int> weights;
  for (int v : c.realized()) weights.push_back(c[static_cast<std::size_t>(v)]);
  return min_cover_cost(complete_cover_graph(c), weights).cost;
}

void count_sandwich(Context& ctx) {
  CsvTable t({"dialect", "k", "n", "class_id", "c_lower", "c_upper_phi1", "c_upper_phi2", "c_exact", "witness"});
  bool sandwich = true, cover = true, built = true;
  std::size_t classes = 0;
  for (int n = 2; n <= 6; ++n) {
    const ClassUniverse u = ClassUniverse::gmlu(1, n);
    ModalDp dp = ModalDp::for_universe(u);
    for (std::size_t i = 0; i < u.size(); ++i) {
      const TypeCountVector& c = u.count_classes()[i];
      const int lo = sandwich_lower_bound(c);
      const int p1 = phi1_size(c), p2 = phi2_size(c);
      const int hi = std::min(p1, p2);
      built = built && size(construct_phi1(c)) == p1 && size(construct_phi2(c)) == p2;
      Denotation target(u.size());
      target.set(i);
      const auto w = dp.guarded(dp.lift(target), hi);
      const bool ok = w && lo <= w->size && w->size <= hi;
      sandwich = sandwich && ok;
      if (c[static_cast<std::size_t>(c.largest())] >= 2 && c.realized().size() >= 2)
        cover = cover && cover_value(c) == lo;
      ++classes;
      t.add({"gmlu", "1", str(n), c.label(), str(lo), str(p1), str(p2), w ? str(w->size) : "", w ? w->text : ""});
    }
  }
  ctx.emit("complexity.csv", t);
  ctx.check("min(n, 2(n-|pi_m|)) <= exact GMLU size <= min(|phi1|, |phi2|), k=1, n=2..6", sandwich,
            str(classes) + " classes");
  ctx.check("cheapest cover of the instance graph costs min(n, 2(n-|pi_m|))", cover, "every class with a repeated type");
  ctx.check("constructed count formulas match their closed-form sizes", built, "");
}

void gmlu_trends(Context& ctx) {
  CsvTable t({"k", "n", "expected_boltzmann_over_n", "lower_over_n", "upper_over_n", "ratio_low", "ratio_high"});
  std::vector<double> hb;
  double last_lo = 0, last_hi = 0, last_hb = 0;
  for (int n : ctx.config.trend_n) {
    const Partition p = gmlu_partition(1, n);
    const auto classes = count_vectors(1, n);
    long double lower = 0, upper = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const long double prob = to_double(Rational(p.classes[i].size, p.universe_size));
      lower += prob * sandwich_lower_bound(classes[i]);
      upper += prob * std::min(phi1_size(classes[i]), phi2_size(classes[i]));
    }
    const double h = entropy_stats(p).expected_boltzmann_bits;
    hb.push_back(h / n);
    last_hb = h / n;
    last_lo = static_cast<double>(lower) / n;
    last_hi = static_cast<double>(upper) / n;
    t.add({"1", str(n), num(h / n), num(last_lo), num(last_hi), num(h / static_cast<double>(upper)),
           num(h / static_cast<double>(lower))});
  }
  ctx.emit("trends.csv", t);
  const bool increasing = std::adjacent_find(hb.begin(), hb.end(), std::greater_equal<>()) == hb.end();
  const int n_last = ctx.config.trend_n.back();
  ctx.check("<H_B>/n increases with n (k=1)", increasing, "last " + num(last_hb));
  ctx.check("<H_B>/n >= 0.85 at n=" + str(n_last), last_hb >= 0.85, num(last_hb));
  ctx.check("sandwich bounds on <C>/n lie in [0.8, 1.1] at n=" + str(n_last),
            last_lo >= 0.8 && last_hi <= 1.1, "[" + num(last_lo) + ", " + num(last_hi) + "]");
  const double r_lo = last_hb / last_hi, r_hi = last_hb / last_lo;
  ctx.check("<H_B>/<C> within [0.75, 1.25] at n=" + str(n_last), r_lo >= 0.75 && r_hi <= 1.25,
            "[" + num(r_lo) + ", " + num(r_hi) + "]");
}

void delta_machinery(Context& ctx) {
  CsvTable f({"k", "f_at_zero"});
  bool exact = true;
  for (int k = 1; k <= 3; ++k) {
    const double v = f_delta(k, 0.0);
    exact = exact && v == k;
    f.add({str(k), num(v)});
  }
  ctx.emit("f_delta.csv", f);
  ctx.check("f(0) equals the vocabulary size exactly, k<=3", exact, "");

  const double delta = ctx.config.delta;
  CsvTable m({"k", "n", "delta", "i_delta_mass", "missing_type_exact", "missing_type_union_bound", "lln_max_deviation"});
  std::vector<double> mass;
  for (int n = 1; n <= ctx.config.delta_n_max; ++n) {
    const double v = to_double(i_delta_mass(1, n, delta));
    mass.push_back(v);
    const auto miss = missing_type_probability(1, n);
    m.add({"1", str(n), num(delta), num(v), num(to_double(miss.exact)), num(miss.union_bound),
           num(lln_demo(1, n, 200, ctx.config.seed + static_cast<std::uint64_t>(n)))});
  }
  ctx.emit("delta.csv", m);
  const int threshold = i_delta_threshold(1, delta, Rational(9, 10), ctx.config.delta_n_max);
  ctx.check("I_delta mass exceeds 0.9 from some n on (k=1, delta=" + num(delta) + ")", threshold > 0,
            "first n = " + str(threshold));
  int first_dip = -1;
  if (threshold > 0)
    for (int n = threshold + 1; n <= ctx.config.delta_n_max && first_dip < 0; ++n)
      if (mass[static_cast<std::size_t>(n - 1)] < mass[static_cast<std::size_t>(n - 2)]) first_dip = n;
  ctx.check("I_delta mass nondecreasing in n beyond the threshold", threshold > 0 && first_dip < 0,
            first_dip < 0 ? "no decrease up to n=" + str(ctx.config.delta_n_max)
                          : "decreases at n=" + str(first_dip) + ": " +
                                num(mass[static_cast<std::size_t>(first_dip - 2)]) + " -> " +
                                num(mass[static_cast<std::size_t>(first_dip - 1)]));
  const int largest = largest_class_threshold(1, 40);
  ctx.check("full type set is the largest MLU class from some n on (k=1, n<=40)", largest > 0,
            "from n = " + str(largest));
}

void fo_census(Context& ctx) {
  CsvTable t({"n", "labeled", "iso", "rigid_labeled", "rigid_fraction", "fagin_ratio"});
  const auto rows = census({2}, ctx.config.census_n_max);
  for (const auto& r : rows)
    t.add({str(r.n), str(r.labeled), str(r.iso), r.rigid_labeled ? str(*r.rigid_labeled) : "",
           num(r.rigid_fraction()), num(r.fagin_ratio())});
  ctx.emit("census.csv", t);
  const std::vector<BigInt> expected{2, 10, 104, 3044};
  bool counts = true;
  for (const auto& r : rows)
    if (r.n <= 4) counts = counts && r.iso == expected[static_cast<std::size_t>(r.n - 1)];
  ctx.check("digraph isomorphism-class counts 2, 10, 104, 3044 for n=1..4", counts, str(rows.size()) + " rows");
  bool fagin = true, rigid = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    fagin = fagin && rows[i].fagin_ratio() >= 1;
    if (i >= 2) {
      fagin = fagin && rows[i].fagin_ratio() < rows[i - 1].fagin_ratio();
      if (rows[i].rigid_labeled && rows[i - 1].rigid_labeled)
        rigid = rigid && rows[i].rigid_fraction() >= rows[i - 1].rigid_fraction();
    }
  }
  ctx.check("iso count / (2^p(n)/n!) >= 1 and decreasing from n=2", fagin, "");
  ctx.check("rigid fraction nondecreasing from n=2", rigid, "");
}

void fo_sentences(Context& ctx) {
  CsvTable t({"s", "sentences", "bound_log2"});
  bool below = true;
  for (int s = 2; s <= 4; ++s) {
    const std::uint64_t count = enumerate_fo_sentences({2}, 2, s);
    const BigInt bound = sentence_count_bound({2}, 2, s);
    below = below && BigInt(count) <= bound;
    t.add({str(s), std::to_string(count), num(log2_big(bound))});
  }
  ctx.emit("sentences.csv", t);
  ctx.check("FO sentences of size <= s (2 variables, one binary relation, n=2) stay below the encoding bound", below,
            "s = 2..4");
  CsvTable r({"n", "exponent", "base"});
  bool under = true;
  for (long long n : {64LL, 128LL, 256LL, 1024LL, 65536LL, 1000000LL}) {
    const auto rt = ratio_test({2}, n, 0.01, 2);
    under = under && rt.base < 1;
    r.add({str(n), num(rt.exponent), num(rt.base)});
  }
  ctx.emit("ratio.csv", r);
  ctx.check("short-formula-to-class ratio base < 1 (m=2, c=0.01, d=2, n>=64)", under, "");
}

void bounds(Context& ctx) {
  const auto& c = ctx.config;
  std::vector<long long> samples;
  for (long long n = 1000; n <= c.bounds_n_max; n *= 10) samples.push_back(n);
  const BoundsReport rep = bounds_compare(c.bounds_m, c.bounds_c, 2, c.bounds_n_max, samples);
  CsvTable t({"n", "hb_upper_bits", "c_lower_bits"});
  for (const auto& row : rep.rows) t.add({str(row.n), num(row.hb_upper), num(row.c_lower)});
  ctx.emit("bounds.csv", t);
  ctx.check("complexity lower bound overtakes the entropy upper bound for some n <= " + str(c.bounds_n_max),
            rep.crossover.has_value(), rep.crossover ? "crossover n = " + str(*rep.crossover) : "none");
  const auto lo = bound_point(c.bounds_m, c.bounds_c, 1000);
  const auto hi = bound_point(c.bounds_m, c.bounds_c, c.bounds_n_max);
  const double growth = (hi.c_lower / hi.hb_upper) / (lo.c_lower / lo.hb_upper);
  ctx.check("bound ratio grows at least 10x from n=1000 to n=" + str(c.bounds_n_max), growth >= 10,
            "growth " + num(growth));
}

const std::map<std::string, std::function<void(Context&)>>& registry() {
  static const std::map<std::string, std::function<void(Context&)>> r{
      {"entropy-identity", entropy_identity}, {"exact-sizes", exact_sizes},       {"mlu-hardest", mlu_hardest},
      {"game-bridge", game_bridge},         {"strategy-proofs", strategy_proofs}, {"count-sandwich", count_sandwich},
      {"gmlu-trends", gmlu_trends},         {"delta-machinery", delta_machinery}, {"fo-census", fo_census},
      {"fo-sentences", fo_sentences},       {"bounds", bounds}};
  return r;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"entropy-identity", "exact-sizes",    "mlu-hardest",     "game-bridge",
                                              "strategy-proofs", "count-sandwich", "gmlu-trends",     "delta-machinery",
                                              "fo-census",       "fo-sentences",   "bounds"};
  return names;
}

std::vector<ExperimentReport> run_experiments(const ExperimentConfig& config) {
  std::vector<std::string> todo;
  if (config.experiment == "all") todo = experiment_names();
  else todo.push_back(config.experiment);
  std::vector<ExperimentReport> reports;
  for (const auto& name : todo) {
    ExperimentReport report{name, {}, {}};
    Context ctx{config, config.out / name, report};
    fs::create_directories(ctx.dir);
    try {
      registry().at(name)(ctx);
    } catch (const CapExceeded& e) {
      ctx.check("experiment completed within caps", false, e.what());
    }
    reports.push_back(std::move(report));
  }
  std::ostringstream summary;
  for (const auto& r : reports)
    for (const auto& c : r.checks)
      summary << (c.pass ? "PASS" : "FAIL") << " [" << r.name << "] " << c.label
              << (c.detail.empty() ? "" : " | " + c.detail) << '\n';
  fs::create_directories(config.out);
  std::ofstream(config.out / "summary.txt", std::ios::binary) << summary.str();
  return reports;
}

// ------------------------------------------------------------------ plot

namespace {

double parse_cell(const std::string& cell, const std::string& column) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("column '" + column + "' holds a non-numeric cell '" + cell + "'");
  }
}

}  // namespace

std::string render_svg(const CsvTable& table, const PlotSpec& spec) {
  if (table.rows().empty()) throw ConfigError("cannot plot an empty table");
  if (spec.y.empty()) throw ConfigError("plot needs at least one y column");
  const auto column = [&](const std::string& name) {
    const auto& h = table.header();
    const auto it = std::find(h.begin(), h.end(), name);
    if (it == h.end()) throw ConfigError("missing column '" + name + "'");
    return static_cast<std::size_t>(it - h.begin());
  };
  const auto tx = [&](double v) { return spec.log_x ? std::log10(v) : v; };
  const auto ty = [&](double v) { return spec.log_y ? std::log10(v) : v; };
  const std::size_t xc = column(spec.x);
  std::vector<std::vector<std::pair<double, double>>> series;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& name : spec.y) {
    const std::size_t yc = column(name);
    auto& pts = series.emplace_back();
    for (const auto& row : table.rows()) {
      if (row[yc].empty()) continue;
      const double x = tx(parse_cell(row[xc], spec.x)), y = ty(parse_cell(row[yc], name));
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      pts.emplace_back(x, y);
      x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
  }
  if (!std::isfinite(x0)) throw ConfigError("no finite points to plot");
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  constexpr double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
  const auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  const auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::ostringstream out;
  const auto f = [](double v) { return format_number(std::round(v * 100) / 100); };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << spec.title << "</text>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
    out << "<text x=\"" << f(px(xv)) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\" font-size=\"10\">"
        << (spec.log_x ? "1e" : "") << format_number(std::round(xv * 1000) / 1000) << "</text>\n";
    out << "<text x=\"" << L - 6 << "\" y=\"" << f(py(yv) + 3) << "\" text-anchor=\"end\" font-size=\"10\">"
        << (spec.log_y ? "1e" : "") << format_number(std::round(yv * 1000) / 1000) << "</text>\n";
  }
  out << "<text x=\"" << W / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\" font-size=\"12\">" << spec.x
      << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = colors[s % 5];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (std::size_t i = 0; i < series[s].size(); ++i)
      out << (i ? " " : "") << f(px(series[s][i].first)) << "," << f(py(series[s][i].second));
    out << "\"/>\n";
    out << "<text x=\"" << W - R - 4 << "\" y=\"" << T + 14 * (s + 1) << "\" text-anchor=\"end\" font-size=\"11\" fill=\""
        << color << "\">" << spec.y[s] << "</text>\n";
  }
  if (spec.marker_x) {
    const double mx = px(tx(*spec.marker_x));
    out << "<line x1=\"" << f(mx) << "\" y1=\"" << T << "\" x2=\"" << f(mx) << "\" y2=\"" << H - B
        << "\" stroke=\"gray\" stroke-dasharray=\"4,3\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void emit_plot(const fs::path& csv, const PlotSpec& spec, const fs::path& svg) {
  const std::string text = render_svg(CsvTable::read(csv), spec);
  if (svg.has_parent_path()) fs::create_directories(svg.parent_path());
  std::ofstream out(svg, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + svg.string());
  out << text;
}

}  // namespace dcx
