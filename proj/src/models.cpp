#include "dcx/models.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <sstream>

#include "dcx/errors.hpp"

namespace dcx {

// ---------------------------------------------------------------- Kripke

KripkeModel::KripkeModel(int k, std::vector<OneType> types) : k_(k), types_(std::move(types)) {
  if (types_.empty()) throw DomainError("a Kripke model needs at least one world");
  for (const auto& t : types_)
    if (t.k() != k) throw DomainError("world type width differs from the vocabulary size");
}

KripkeModel KripkeModel::from_masks(int k, const std::vector<std::uint32_t>& masks) {
  std::vector<OneType> types;
  types.reserve(masks.size());
  for (auto m : masks) types.emplace_back(m, k);
  return KripkeModel(k, std::move(types));
}

TypeSet::TypeSet(std::uint64_t bits, int k) : bits_(bits), k_(k) {
  if (k < 1 || k > 6) throw DomainError("type sets support 1 <= k <= 6");
  if (k < 6 && (bits >> (1U << k)) != 0) throw DomainError("type set has bits beyond 2^k");
}

TypeSet TypeSet::all(int k) {
  const unsigned l = 1U << k;
  return TypeSet(l == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << l) - 1, k);
}

int TypeSet::size() const { return std::popcount(bits_); }

std::vector<std::uint32_t> TypeSet::masks() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1U << k_); ++m)
    if (contains(m)) out.push_back(m);
  return out;
}

std::string TypeSet::label() const {
  std::string s = "{";
  bool first = true;
  for (auto m : masks()) {
    if (!first) s += ',';
    first = false;
    s += OneType(m, k_).label();
  }
  return s + "}";
}

TypeCountVector::TypeCountVector(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.size() < 2 || !std::has_single_bit(counts_.size()))
    throw DomainError("count vector length must be 2^k with k >= 1");
  for (int c : counts_)
    if (c < 0) throw DomainError("negative type count");
}

int TypeCountVector::k() const { return std::countr_zero(counts_.size()); }

int TypeCountVector::n() const { return std::accumulate(counts_.begin(), counts_.end(), 0); }

TypeSet TypeCountVector::support() const {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i)
    if (counts_[i] > 0) bits |= std::uint64_t{1} << i;
  return TypeSet(bits, k());
}

std::vector<int> TypeCountVector::realized() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < counts_.size(); ++i)
    if (counts_[i] > 0) out.push_back(static_cast<int>(i));
  return out;
}

int TypeCountVector::largest() const {
  return static_cast<int>(std::max_element(counts_.begin(), counts_.end()) - counts_.begin());
}

std::string TypeCountVector::label() const {
  std::string s = "[";
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(counts_[i]);
  }
  return s + "]";
}

Classification classify(const KripkeModel& model) {
  std::vector<int> counts(std::size_t{1} << model.k(), 0);
  for (const auto& t : model.types()) ++counts[t.mask()];
  TypeCountVector v(std::move(counts));
  return {v.support(), v};
}

namespace {

void compose(std::vector<int>& parts, std::size_t at, int left, std::vector<TypeCountVector>& out) {
  if (at + 1 == parts.size()) {
    parts[at] = left;
    out.emplace_back(parts);
    return;
  }
  for (int c = left; c >= 0; --c) {
    parts[at] = c;
    compose(parts, at + 1, left - c, out);
  }
}

}  // namespace

std::vector<TypeCountVector> count_vectors(int k, int n) {
  if (k < 1 || k > 6 || n < 0) throw DomainError("count_vectors needs 1 <= k <= 6 and n >= 0");
  std::vector<int> parts(std::size_t{1} << k, 0);
  std::vector<TypeCountVector> out;
  compose(parts, 0, n, out);
  return out;
}

KripkeModel representative(const TypeCountVector& counts) {
  std::vector<std::uint32_t> masks;
  for (std::size_t i = 0; i < counts.counts().size(); ++i)
    for (int c = 0; c < counts[i]; ++c) masks.push_back(static_cast<std::uint32_t>(i));
  return KripkeModel::from_masks(counts.k(), masks);
}

KripkeRange::KripkeRange(int k, int n) : k_(k), n_(n) {
  if (k < 1 || n < 1) throw DomainError("enumerate_kripke needs k >= 1 and n >= 1");
  if (k * n > kMaxKripkeBits)
    throw CapExceeded("enumerate_kripke: k*n = " + std::to_string(k * n) + " exceeds " +
                      std::to_string(kMaxKripkeBits));
  count_ = std::uint64_t{1} << (k * n);
}

KripkeModel KripkeRange::iterator::operator*() const {
  std::vector<std::uint32_t> masks(static_cast<std::size_t>(n_));
  const std::uint32_t digit = (1U << k_) - 1;
  for (int w = 0; w < n_; ++w)
    masks[static_cast<std::size_t>(w)] =
        static_cast<std::uint32_t>(index_ >> (k_ * (n_ - 1 - w))) & digit;
  return KripkeModel::from_masks(k_, masks);
}

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

int parse_domain_size(const std::string& field, std::size_t at) {
  if (field.rfind("n=", 0) != 0 && field.rfind("n =", 0) != 0)
    throw SyntaxError("model text must start with n=<size>", at);
  const std::string digits = trim(field.substr(field.find('=') + 1));
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                     [](unsigned char c) { return std::isdigit(c); }))
    throw SyntaxError("bad domain size '" + digits + "'", at);
  const int n = std::stoi(digits);
  if (n < 1) throw SyntaxError("domain size must be positive", at);
  return n;
}

}  // namespace

KripkeModel parse_kripke(std::string_view text, int k) {
  const auto fields = split_top(text, ';');
  if (fields.empty()) throw SyntaxError("empty model text", 0);
  const int n = parse_domain_size(fields[0], 0);
  if (static_cast<int>(fields.size()) != n + 1)
    throw SyntaxError("expected " + std::to_string(n) + " world entries", 0);
  std::vector<std::uint32_t> masks(static_cast<std::size_t>(n), 0);
  std::vector<bool> seen_world(static_cast<std::size_t>(n), false);
  for (std::size_t f = 1; f < fields.size(); ++f) {
    const std::string& entry = fields[f];
    const auto colon = entry.find(':');
    if (entry.empty() || entry[0] != 'w' || colon == std::string::npos)
      throw SyntaxError("world entry must look like w<i>:<literals>", f);
    const int w = std::stoi(entry.substr(1, colon - 1)) - 1;
    if (w < 0 || w >= n || seen_world[static_cast<std::size_t>(w)])
      throw SyntaxError("bad or repeated world index in '" + entry + "'", f);
    seen_world[static_cast<std::size_t>(w)] = true;
    std::vector<bool> seen_prop(static_cast<std::size_t>(k), false);
    for (const auto& lit_raw : split_top(entry.substr(colon + 1), ',')) {
      std::string lit = trim(lit_raw);
      const bool neg = !lit.empty() && lit[0] == '!';
      if (neg) lit = trim(lit.substr(1));
      if (lit.size() < 2 || lit[0] != 'p') throw SyntaxError("bad literal '" + lit_raw + "'", f);
      const int p = std::stoi(lit.substr(1)) - 1;
      if (p < 0 || p >= k) throw SyntaxError("unknown proposition '" + lit + "'", f);
      if (seen_prop[static_cast<std::size_t>(p)])
        throw SyntaxError("proposition listed twice in '" + entry + "'", f);
      seen_prop[static_cast<std::size_t>(p)] = true;
      if (neg) masks[static_cast<std::size_t>(w)] |= 1U << p;
    }
    if (std::find(seen_prop.begin(), seen_prop.end(), false) != seen_prop.end())
      throw SyntaxError("world entry must list every proposition: '" + entry + "'", f);
  }
  return KripkeModel::from_masks(k, masks);
}

std::string format_kripke(const KripkeModel& model) {
  std::ostringstream out;
  out << "n=" << model.n();
  for (int w = 0; w < model.n(); ++w) {
    out << "; w" << (w + 1) << ':';
    const OneType t = model.type_at(w);
    for (int p = 0; p < model.k(); ++p) {
      if (p) out << ',';
      out << (t.positive(p) ? "p" : "!p") << (p + 1);
    }
  }
  return out.str();
}

// ---------------------------------------------------------- structures

std::size_t total_cells(const std::vector<int>& arities, int n) {
  std::size_t total = 0;
  for (int a : arities) {
    std::size_t c = 1;
    for (int i = 0; i < a; ++i) c *= static_cast<std::size_t>(n);
    total += c;
  }
  return total;
}

void throw_structure_cap(std::size_t cells) {
  throw CapExceeded("structure enumeration over " + std::to_string(cells) +
                    " relation cells exceeds the cap of 24");
}

RelationalStructure::RelationalStructure(int n, std::vector<int> arities)
    : n_(n), arities_(std::move(arities)) {
  if (n < 1) throw DomainError("structure domain must be nonempty");
  for (int a : arities_) {
    if (a < 1) throw DomainError("arity must be positive");
    std::size_t c = 1;
    for (int i = 0; i < a; ++i) c *= static_cast<std::size_t>(n);
    cells_.emplace_back(c, 0);
  }
}

std::size_t RelationalStructure::encode(std::span<const int> tuple) const {
  std::size_t code = 0;
  for (int v : tuple) {
    if (v < 0 || v >= n_) throw DomainError("tuple entry outside the domain");
    code = code * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }
  return code;
}

std::vector<int> RelationalStructure::decode(std::size_t r, std::size_t code) const {
  std::vector<int> t(static_cast<std::size_t>(arities_[r]));
  for (std::size_t i = t.size(); i-- > 0;) {
    t[i] = static_cast<int>(code % static_cast<std::size_t>(n_));
    code /= static_cast<std::size_t>(n_);
  }
  return t;
}

bool RelationalStructure::holds(std::size_t r, std::span<const int> tuple) const {
  if (tuple.size() != static_cast<std::size_t>(arities_[r])) throw DomainError("arity mismatch");
  return cells_[r][encode(tuple)] != 0;
}

void RelationalStructure::set(std::size_t r, std::span<const int> tuple, bool value) {
  if (tuple.size() != static_cast<std::size_t>(arities_[r])) throw DomainError("arity mismatch");
  cells_[r][encode(tuple)] = value ? 1 : 0;
}

RelationalStructure RelationalStructure::permuted(std::span<const int> perm) const {
  RelationalStructure out(n_, arities_);
  for (std::size_t r = 0; r < cells_.size(); ++r) {
    for (std::size_t code = 0; code < cells_[r].size(); ++code) {
      if (!cells_[r][code]) continue;
      std::size_t image = 0;
      std::size_t rest = code;
      std::size_t place = 1;
      for (int i = 0; i < arities_[r]; ++i) {
        const auto digit = rest % static_cast<std::size_t>(n_);
        rest /= static_cast<std::size_t>(n_);
        image += static_cast<std::size_t>(perm[digit]) * place;
        place *= static_cast<std::size_t>(n_);
      }
      out.cells_[r][image] = 1;
    }
  }
  return out;
}

bool operator<(const RelationalStructure& a, const RelationalStructure& b) {
  for (std::size_t r = 0; r < a.cells_.size(); ++r) {
    const auto& x = a.cells_[r];
    const auto& y = b.cells_[r];
    std::size_t i = 0, j = 0;
    // Walk the sorted tuple lists in parallel.
    while (true) {
      while (i < x.size() && !x[i]) ++i;
      while (j < y.size() && !y[j]) ++j;
      const bool x_end = i == x.size();
      const bool y_end = j == y.size();
      if (x_end && y_end) break;
      if (x_end) return true;
      if (y_end) return false;
      if (i != j) return i < j;
      ++i;
      ++j;
    }
  }
  return false;
}

namespace {

void check_canonical_cap(const RelationalStructure& s) {
  if (s.n() > kMaxCanonicalDomain)
    throw CapExceeded("permutation search limited to n <= " + std::to_string(kMaxCanonicalDomain));
}

}  // namespace

RelationalStructure canonical_form(const RelationalStructure& s) {
  check_canonical_cap(s);
  std::vector<int> perm(static_cast<std::size_t>(s.n()));
  std::iota(perm.begin(), perm.end(), 0);
  RelationalStructure best = s;
  do {
    RelationalStructure candidate = s.permuted(perm);
    if (candidate < best) best = std::move(candidate);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::uint64_t automorphism_count(const RelationalStructure& s) {
  check_canonical_cap(s);
  std::vector<int> perm(static_cast<std::size_t>(s.n()));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    if (s.permuted(perm) == s) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

RelationalStructure parse_structure(std::string_view text, const Vocabulary& vocab) {
  const auto fields = split_top(text, ';');
  if (fields.empty()) throw SyntaxError("empty structure text", 0);
  const int n = parse_domain_size(fields[0], 0);
  std::vector<int> arities;
  for (const auto& r : vocab.relations()) arities.push_back(r.arity);
  RelationalStructure s(n, arities);
  std::vector<bool> seen(arities.size(), false);
  for (std::size_t f = 1; f < fields.size(); ++f) {
    const std::string& entry = fields[f];
    const auto eq = entry.find('=');
    if (eq == std::string::npos) throw SyntaxError("relation entry must look like R<i>={...}", f);
    const std::string name = trim(entry.substr(0, eq));
    const int r = vocab.relation_index(name);
    if (r < 0) throw SyntaxError("unknown relation '" + name + "'", f);
    if (seen[static_cast<std::size_t>(r)]) throw SyntaxError("relation listed twice", f);
    seen[static_cast<std::size_t>(r)] = true;
    std::string body = trim(entry.substr(eq + 1));
    if (body.size() < 2 || body.front() != '{' || body.back() != '}')
      throw SyntaxError("relation body must be braced", f);
    body = body.substr(1, body.size() - 2);
    for (const auto& tup_raw : split_top(body, ',')) {
      std::string tup = trim(tup_raw);
      if (tup.empty()) continue;
      if (tup.front() != '(' || tup.back() != ')') throw SyntaxError("bad tuple '" + tup + "'", f);
      std::vector<int> t;
      for (const auto& v : split_top(tup.substr(1, tup.size() - 2), ',')) {
        if (v.empty() || !std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isdigit(c); }))
          throw SyntaxError("bad tuple entry '" + v + "'", f);
        const int e = std::stoi(v) - 1;
        if (e < 0 || e >= n) throw SyntaxError("tuple entry outside 1.." + std::to_string(n), f);
        t.push_back(e);
      }
      if (static_cast<int>(t.size()) != arities[static_cast<std::size_t>(r)])
        throw SyntaxError("tuple arity mismatch in '" + tup + "'", f);
      s.set(static_cast<std::size_t>(r), t);
    }
  }
  return s;
}

std::string format_structure(const RelationalStructure& s) {
  std::ostringstream out;
  out << "n=" << s.n();
  for (std::size_t r = 0; r < s.relation_count(); ++r) {
    out << "; R" << (r + 1) << "={";
    bool first = true;
    for (std::size_t c = 0; c < s.cell_count(r); ++c) {
      if (!s.cell(r, c)) continue;
      if (!first) out << ',';
      first = false;
      out << '(';
      const auto t = s.decode(r, c);
      for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << (t[i] + 1);
      out << ')';
    }
    out << '}';
  }
  return out.str();
}

}  // namespace dcx
