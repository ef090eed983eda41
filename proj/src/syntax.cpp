#include "dcx/syntax.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <optional>
#include <set>
#include <utility>

#include "dcx/errors.hpp"

namespace dcx {

std::string_view to_string(Dialect d) {
  switch (d) {
    case Dialect::mlu: return "mlu";
    case Dialect::gmlu: return "gmlu";
    case Dialect::fo: return "fo";
  }
  return "?";
}

Dialect parse_dialect(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "mlu") return Dialect::mlu;
  if (lower == "gmlu") return Dialect::gmlu;
  if (lower == "fo") return Dialect::fo;
  throw DomainError("unknown dialect '" + std::string(text) + "'");
}

// ---------------------------------------------------------------- Vocabulary

Vocabulary::Vocabulary(std::vector<std::string> propositions, std::vector<RelationSymbol> relations)
    : propositions_(std::move(propositions)), relations_(std::move(relations)) {
  std::set<std::string> seen;
  for (const auto& p : propositions_)
    if (!seen.insert(p).second) throw DomainError("duplicate symbol '" + p + "'");
  for (const auto& r : relations_) {
    if (r.arity < 1) throw DomainError("relation '" + r.name + "' needs arity >= 1");
    if (!seen.insert(r.name).second) throw DomainError("duplicate symbol '" + r.name + "'");
  }
}

Vocabulary Vocabulary::propositional(int k) {
  if (k < 1) throw DomainError("a modal vocabulary needs at least one proposition");
  std::vector<std::string> names;
  for (int i = 1; i <= k; ++i) names.push_back("p" + std::to_string(i));
  return Vocabulary(std::move(names), {});
}

Vocabulary Vocabulary::relational(const std::vector<int>& arities) {
  std::vector<RelationSymbol> rels;
  for (std::size_t i = 0; i < arities.size(); ++i)
    rels.push_back({"R" + std::to_string(i + 1), arities[i]});
  return Vocabulary({}, std::move(rels));
}

int Vocabulary::max_arity() const {
  int m = 0;
  for (const auto& r : relations_) m = std::max(m, r.arity);
  return m;
}

int Vocabulary::proposition_index(std::string_view name) const {
  for (std::size_t i = 0; i < propositions_.size(); ++i)
    if (propositions_[i] == name) return static_cast<int>(i);
  return -1;
}

int Vocabulary::relation_index(std::string_view name) const {
  for (std::size_t i = 0; i < relations_.size(); ++i)
    if (relations_[i].name == name) return static_cast<int>(i);
  return -1;
}

// ------------------------------------------------------------------- OneType

OneType::OneType(std::uint32_t mask, int k) : mask_(mask), k_(k) {
  if (k < 1 || k > 16) throw DomainError("1-type width must be in 1..16");
  if (mask >= (std::uint32_t{1} << k)) throw DomainError("1-type mask wider than k");
}

int OneType::hamming_distance(OneType other) const {
  return std::popcount(mask_ ^ other.mask_);
}

std::string OneType::label() const {
  std::string s;
  for (int i = 0; i < k_; ++i) s += positive(i) ? '+' : '-';
  return s;
}

std::vector<OneType> OneType::all(int k) {
  std::vector<OneType> out;
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << k); ++m) out.emplace_back(m, k);
  return out;
}

// ------------------------------------------------------------------- Formula

struct Formula::Node {
  NodeKind kind;
  int value = 0;  // proposition, grade, variable or relation
  bool positive = true;
  std::vector<int> args;
  std::optional<Formula> left;
  std::optional<Formula> right;
};

Formula Formula::literal(int prop, bool positive) {
  if (prop < 0) throw DomainError("negative proposition index");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::literal;
  n->value = prop;
  n->positive = positive;
  return Formula(std::move(n));
}

Formula Formula::conjunction(Formula left, Formula right) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::conjunction;
  n->left = std::move(left);
  n->right = std::move(right);
  return Formula(std::move(n));
}

Formula Formula::disjunction(Formula left, Formula right) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::disjunction;
  n->left = std::move(left);
  n->right = std::move(right);
  return Formula(std::move(n));
}

Formula Formula::diamond(int grade, Formula child) {
  if (grade < 1) throw DomainError("modal grade must be positive");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::diamond;
  n->value = grade;
  n->left = std::move(child);
  return Formula(std::move(n));
}

Formula Formula::box(int grade, Formula child) {
  if (grade < 1) throw DomainError("modal grade must be positive");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::box;
  n->value = grade;
  n->left = std::move(child);
  return Formula(std::move(n));
}

Formula Formula::exists(int var, Formula child) {
  if (var < 0 || var >= 32) throw DomainError("variable index out of range");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::exists;
  n->value = var;
  n->left = std::move(child);
  return Formula(std::move(n));
}

Formula Formula::forall(int var, Formula child) {
  if (var < 0 || var >= 32) throw DomainError("variable index out of range");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::forall;
  n->value = var;
  n->left = std::move(child);
  return Formula(std::move(n));
}

Formula Formula::equality(int lhs, int rhs, bool positive) {
  if (lhs < 0 || rhs < 0 || lhs >= 32 || rhs >= 32) throw DomainError("variable index out of range");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::equality;
  n->positive = positive;
  n->args = {lhs, rhs};
  return Formula(std::move(n));
}

Formula Formula::atom(int relation, std::vector<int> vars, bool positive) {
  if (relation < 0) throw DomainError("negative relation index");
  if (vars.empty()) throw DomainError("relational atom needs arguments");
  for (int v : vars)
    if (v < 0 || v >= 32) throw DomainError("variable index out of range");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::atom;
  n->value = relation;
  n->positive = positive;
  n->args = std::move(vars);
  return Formula(std::move(n));
}

NodeKind Formula::kind() const { return node_->kind; }

bool Formula::is_binary() const {
  return node_->kind == NodeKind::conjunction || node_->kind == NodeKind::disjunction;
}
bool Formula::is_modal() const {
  return node_->kind == NodeKind::diamond || node_->kind == NodeKind::box;
}
bool Formula::is_quantifier() const {
  return node_->kind == NodeKind::exists || node_->kind == NodeKind::forall;
}

int Formula::symbol() const { return node_->value; }
bool Formula::positive() const { return node_->positive; }
int Formula::grade() const { return node_->value; }
int Formula::variable() const { return node_->value; }
const std::vector<int>& Formula::arguments() const { return node_->args; }
const Formula& Formula::left() const { return *node_->left; }
const Formula& Formula::right() const { return *node_->right; }
const Formula& Formula::child() const { return *node_->left; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.value != y.value || x.positive != y.positive || x.args != y.args)
    return false;
  if (x.left.has_value() != y.left.has_value() || x.right.has_value() != y.right.has_value())
    return false;
  if (x.left && !(*x.left == *y.left)) return false;
  if (x.right && !(*x.right == *y.right)) return false;
  return true;
}

// ------------------------------------------------------------ size, duality

int size(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::literal:
    case NodeKind::equality:
    case NodeKind::atom: return 1;
    case NodeKind::conjunction:
    case NodeKind::disjunction: return size(f.left()) + size(f.right()) + 1;
    case NodeKind::diamond:
    case NodeKind::box: return size(f.child()) + f.grade();
    case NodeKind::exists:
    case NodeKind::forall: return size(f.child()) + 1;
  }
  return 0;
}

Formula dual_negate(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::literal: return Formula::literal(f.symbol(), !f.positive());
    case NodeKind::equality:
      return Formula::equality(f.arguments()[0], f.arguments()[1], !f.positive());
    case NodeKind::atom: return Formula::atom(f.symbol(), f.arguments(), !f.positive());
    case NodeKind::conjunction:
      return Formula::disjunction(dual_negate(f.left()), dual_negate(f.right()));
    case NodeKind::disjunction:
      return Formula::conjunction(dual_negate(f.left()), dual_negate(f.right()));
    case NodeKind::diamond: return Formula::box(f.grade(), dual_negate(f.child()));
    case NodeKind::box: return Formula::diamond(f.grade(), dual_negate(f.child()));
    case NodeKind::exists: return Formula::forall(f.variable(), dual_negate(f.child()));
    case NodeKind::forall: return Formula::exists(f.variable(), dual_negate(f.child()));
  }
  throw DomainError("unknown node kind");
}

Formula type_formula(OneType t) {
  std::vector<Formula> lits;
  for (int i = 0; i < t.k(); ++i) lits.push_back(Formula::literal(i, t.positive(i)));
  return conjunction_of(lits);
}

Formula conjunction_of(std::span<const Formula> parts) {
  if (parts.empty()) throw DomainError("empty conjunction");
  Formula acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::conjunction(acc, parts[i]);
  return acc;
}

Formula disjunction_of(std::span<const Formula> parts) {
  if (parts.empty()) throw DomainError("empty disjunction");
  Formula acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::disjunction(acc, parts[i]);
  return acc;
}

namespace {

bool guarded_below(const Formula& f, bool under_modality) {
  switch (f.kind()) {
    case NodeKind::literal: return under_modality;
    case NodeKind::conjunction:
    case NodeKind::disjunction:
      return guarded_below(f.left(), under_modality) && guarded_below(f.right(), under_modality);
    case NodeKind::diamond:
    case NodeKind::box: return guarded_below(f.child(), true);
    default: return true;
  }
}

}  // namespace

bool is_guarded(const Formula& f) { return guarded_below(f, false); }

std::uint32_t free_variables(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::equality:
    case NodeKind::atom: {
      std::uint32_t m = 0;
      for (int v : f.arguments()) m |= std::uint32_t{1} << v;
      return m;
    }
    case NodeKind::conjunction:
    case NodeKind::disjunction: return free_variables(f.left()) | free_variables(f.right());
    case NodeKind::exists:
    case NodeKind::forall:
      return free_variables(f.child()) & ~(std::uint32_t{1} << f.variable());
    case NodeKind::diamond:
    case NodeKind::box: return free_variables(f.child());
    case NodeKind::literal: return 0;
  }
  return 0;
}

// -------------------------------------------------------- well-formedness

namespace {

void check_node(const Formula& f, const Vocabulary& vocab, Dialect dialect, bool under_modality) {
  const bool modal_dialect = dialect != Dialect::fo;
  switch (f.kind()) {
    case NodeKind::literal:
      if (!modal_dialect) throw WellFormednessError("proposition literal in a first-order formula");
      if (f.symbol() >= vocab.k())
        throw WellFormednessError("unknown proposition p" + std::to_string(f.symbol() + 1));
      if (!under_modality)
        throw WellFormednessError("literal p" + std::to_string(f.symbol() + 1) +
                                  " is not in the scope of a modality");
      return;
    case NodeKind::conjunction:
    case NodeKind::disjunction:
      check_node(f.left(), vocab, dialect, under_modality);
      check_node(f.right(), vocab, dialect, under_modality);
      return;
    case NodeKind::diamond:
    case NodeKind::box:
      if (!modal_dialect) throw WellFormednessError("modality in a first-order formula");
      if (dialect == Dialect::mlu && f.grade() != 1)
        throw WellFormednessError("MLU admits only grade 1, found " + std::to_string(f.grade()));
      check_node(f.child(), vocab, dialect, true);
      return;
    case NodeKind::exists:
    case NodeKind::forall:
      if (modal_dialect) throw WellFormednessError("quantifier in a modal formula");
      check_node(f.child(), vocab, dialect, under_modality);
      return;
    case NodeKind::equality:
      if (modal_dialect) throw WellFormednessError("equality in a modal formula");
      return;
    case NodeKind::atom: {
      if (modal_dialect) throw WellFormednessError("relational atom in a modal formula");
      const auto& rels = vocab.relations();
      if (f.symbol() >= static_cast<int>(rels.size()))
        throw WellFormednessError("unknown relation R" + std::to_string(f.symbol() + 1));
      if (static_cast<int>(f.arguments().size()) != rels[static_cast<std::size_t>(f.symbol())].arity)
        throw WellFormednessError("arity mismatch for " + rels[static_cast<std::size_t>(f.symbol())].name);
      return;
    }
  }
}

}  // namespace

void check_well_formed(const Formula& f, const Vocabulary& vocab, Dialect dialect) {
  if (dialect != Dialect::fo && vocab.k() < 1)
    throw WellFormednessError("modal dialects need at least one proposition");
  check_node(f, vocab, dialect, false);
}

// -------------------------------------------------------------------- parse

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Vocabulary& vocab) : text_(text), vocab_(vocab) {}

  Formula parse_all() {
    Formula f = parse_disjunction();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a symbol");
    return std::string(text_.substr(start, pos_ - start));
  }

  int number() {
    skip_space();
    const std::size_t start = pos_;
    long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1'000'000) fail("number too large");
      ++pos_;
    }
    if (start == pos_) fail("expected a number");
    return static_cast<int>(value);
  }

  int variable() {
    const std::size_t start = (skip_space(), pos_);
    std::string name = identifier();
    if (auto v = variable_index(name)) return *v;
    pos_ = start;
    fail("expected a variable x<i>, found '" + name + "'");
  }

  static std::optional<int> variable_index(const std::string& name) {
    if (name.size() < 2 || name[0] != 'x') return std::nullopt;
    for (std::size_t i = 1; i < name.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
    const int idx = std::stoi(name.substr(1));
    if (idx < 1 || idx > 32) return std::nullopt;
    return idx - 1;
  }

  Formula parse_disjunction() {
    Formula acc = parse_conjunction();
    while (accept('|')) acc = Formula::disjunction(acc, parse_conjunction());
    return acc;
  }

  Formula parse_conjunction() {
    Formula acc = parse_unary();
    while (accept('&')) acc = Formula::conjunction(acc, parse_unary());
    return acc;
  }

  Formula parse_unary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Formula inner = parse_disjunction();
      expect(')');
      return inner;
    }
    if (c == '<' || c == '[') {
      ++pos_;
      const char close = c == '<' ? '>' : ']';
      int grade = 1;
      if (peek() != close) {
        const std::size_t at = pos_;
        grade = number();
        if (grade < 1) {
          pos_ = at;
          fail("modal grade must be positive");
        }
      }
      expect(close);
      Formula body = parse_unary();
      return c == '<' ? Formula::diamond(grade, body) : Formula::box(grade, body);
    }
    if (c == '!') {
      ++pos_;
      if (peek() == '(' || peek() == '<' || peek() == '[' || peek() == '!')
        fail("negation applies only to literals, atoms and equalities");
      return parse_atomic(false);
    }
    if (c == '\0') fail("unexpected end of input");
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      std::string name = identifier();
      if (name == "E" || name == "A") {
        const int v = variable();
        Formula body = parse_unary();
        return name == "E" ? Formula::exists(v, body) : Formula::forall(v, body);
      }
      pos_ = start;
      return parse_atomic(true);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Formula parse_atomic(bool positive) {
    skip_space();
    const std::size_t start = pos_;
    std::string name = identifier();
    if (int p = vocab_.proposition_index(name); p >= 0) return Formula::literal(p, positive);
    if (int r = vocab_.relation_index(name); r >= 0) {
      expect('(');
      std::vector<int> args{variable()};
      while (accept(',')) args.push_back(variable());
      expect(')');
      return Formula::atom(r, std::move(args), positive);
    }
    if (auto v = variable_index(name)) {
      expect('=');
      return Formula::equality(*v, variable(), positive);
    }
    pos_ = start;
    fail("unknown symbol '" + name + "'");
  }

  std::string_view text_;
  const Vocabulary& vocab_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text, const Vocabulary& vocab, Dialect dialect) {
  Parser parser(text, vocab);
  Formula f = parser.parse_all();
  check_well_formed(f, vocab, dialect);
  return f;
}

// ------------------------------------------------------------------- render

std::string render_binary(NodeKind op, NodeKind left_kind, std::string_view left,
                          NodeKind right_kind, std::string_view right) {
  std::string out;
  const bool conj = op == NodeKind::conjunction;
  const bool paren_left = conj && left_kind == NodeKind::disjunction;
  const bool paren_right = conj ? (right_kind == NodeKind::conjunction ||
                                   right_kind == NodeKind::disjunction)
                                : right_kind == NodeKind::disjunction;
  out.reserve(left.size() + right.size() + 7);
  if (paren_left) out += '(';
  out += left;
  if (paren_left) out += ')';
  out += conj ? " & " : " | ";
  if (paren_right) out += '(';
  out += right;
  if (paren_right) out += ')';
  return out;
}

std::string render_prefix(NodeKind op, int grade_or_var, NodeKind child_kind,
                          std::string_view child) {
  std::string out;
  switch (op) {
    case NodeKind::diamond: out = "<" + std::to_string(grade_or_var) + ">"; break;
    case NodeKind::box: out = "[" + std::to_string(grade_or_var) + "]"; break;
    case NodeKind::exists: out = "E x" + std::to_string(grade_or_var + 1) + " "; break;
    case NodeKind::forall: out = "A x" + std::to_string(grade_or_var + 1) + " "; break;
    default: throw DomainError("render_prefix: not a prefix operator");
  }
  const bool paren = child_kind == NodeKind::conjunction || child_kind == NodeKind::disjunction;
  if (paren) out += '(';
  out += child;
  if (paren) out += ')';
  return out;
}

std::string render(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::literal:
      return (f.positive() ? "p" : "!p") + std::to_string(f.symbol() + 1);
    case NodeKind::equality:
      return (f.positive() ? "x" : "!x") + std::to_string(f.arguments()[0] + 1) + "=x" +
             std::to_string(f.arguments()[1] + 1);
    case NodeKind::atom: {
      std::string out = (f.positive() ? "R" : "!R") + std::to_string(f.symbol() + 1) + "(";
      for (std::size_t i = 0; i < f.arguments().size(); ++i) {
        if (i) out += ',';
        out += "x" + std::to_string(f.arguments()[i] + 1);
      }
      return out + ")";
    }
    case NodeKind::conjunction:
    case NodeKind::disjunction:
      return render_binary(f.kind(), f.left().kind(), render(f.left()), f.right().kind(),
                           render(f.right()));
    case NodeKind::diamond:
    case NodeKind::box:
      return render_prefix(f.kind(), f.grade(), f.child().kind(), render(f.child()));
    case NodeKind::exists:
    case NodeKind::forall:
      return render_prefix(f.kind(), f.variable(), f.child().kind(), render(f.child()));
  }
  return {};
}

}  // namespace dcx
