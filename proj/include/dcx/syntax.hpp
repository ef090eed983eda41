// Formula syntax for the universal modal logics MLU/GMLU and first-order logic.
//
// Formulas are immutable trees in negation normal form: negation lives only in
// the polarity flag of literals, equalities and relational atoms. Nodes are
// shared, so copying a Formula is cheap.

#ifndef DCX_SYNTAX_HPP
#define DCX_SYNTAX_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dcx {

enum class Dialect { mlu, gmlu, fo };

std::string_view to_string(Dialect d);
Dialect parse_dialect(std::string_view text);

struct RelationSymbol {
  std::string name;
  int arity = 1;
};

class Vocabulary {
 public:
  Vocabulary(std::vector<std::string> propositions, std::vector<RelationSymbol> relations);

  // p1..pk.
  static Vocabulary propositional(int k);
  // R1..Rm with the given arities.
  static Vocabulary relational(const std::vector<int>& arities);

  int k() const { return static_cast<int>(propositions_.size()); }
  const std::vector<std::string>& propositions() const { return propositions_; }
  const std::vector<RelationSymbol>& relations() const { return relations_; }
  int max_arity() const;

  // Index of the named symbol, or -1.
  int proposition_index(std::string_view name) const;
  int relation_index(std::string_view name) const;

 private:
  std::vector<std::string> propositions_;
  std::vector<RelationSymbol> relations_;
};

// A 1-type over p1..pk. Bit i of the mask is set iff p_{i+1} is negated, so
// mask 0 is the all-positive type and type indices follow mask order.
class OneType {
 public:
  OneType(std::uint32_t mask, int k);

  std::uint32_t mask() const { return mask_; }
  int k() const { return k_; }
  bool positive(int prop) const { return ((mask_ >> prop) & 1U) == 0; }
  int hamming_distance(OneType other) const;
  // One '+' or '-' per proposition, p1 first.
  std::string label() const;

  static std::vector<OneType> all(int k);

  friend bool operator==(const OneType&, const OneType&) = default;

 private:
  std::uint32_t mask_;
  int k_;
};

enum class NodeKind {
  literal,
  conjunction,
  disjunction,
  diamond,  // at least `grade` points satisfy the child
  box,      // fewer than `grade` points falsify the child
  exists,
  forall,
  equality,
  atom,
};

class Formula {
 public:
  static Formula literal(int prop, bool positive);
  static Formula conjunction(Formula left, Formula right);
  static Formula disjunction(Formula left, Formula right);
  static Formula diamond(int grade, Formula child);
  static Formula box(int grade, Formula child);
  static Formula exists(int var, Formula child);
  static Formula forall(int var, Formula child);
  static Formula equality(int lhs, int rhs, bool positive);
  static Formula atom(int relation, std::vector<int> vars, bool positive);

  NodeKind kind() const;
  bool is_binary() const;
  bool is_modal() const;
  bool is_quantifier() const;

  // Literal: proposition index. Atom: relation index.
  int symbol() const;
  bool positive() const;
  int grade() const;
  // Quantified variable.
  int variable() const;
  // Atom arguments, or the two sides of an equality.
  const std::vector<int>& arguments() const;

  const Formula& left() const;
  const Formula& right() const;
  const Formula& child() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

int size(const Formula& f);

// NNF of the negation: and/or, diamond/box and exists/forall swap, polarity flips.
Formula dual_negate(const Formula& f);

// Left-nested conjunction of the literals of `t`.
Formula type_formula(OneType t);

// Left-nested folds; the span must be nonempty.
Formula conjunction_of(std::span<const Formula> parts);
Formula disjunction_of(std::span<const Formula> parts);

// True when every literal occurs inside some modality.
bool is_guarded(const Formula& f);

// Bit v set iff variable v occurs free.
std::uint32_t free_variables(const Formula& f);

void check_well_formed(const Formula& f, const Vocabulary& vocab, Dialect dialect);

Formula parse(std::string_view text, const Vocabulary& vocab, Dialect dialect);

std::string render(const Formula& f);

// Rendering pieces, shared with engines that cache the text of subformulas.
std::string render_binary(NodeKind op, NodeKind left_kind, std::string_view left,
                          NodeKind right_kind, std::string_view right);
std::string render_prefix(NodeKind op, int grade_or_var, NodeKind child_kind,
                          std::string_view child);

}  // namespace dcx

#endif  // DCX_SYNTAX_HPP
