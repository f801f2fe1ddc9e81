#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wmdelay/state_set.hh"

namespace wmdelay {

/// Boolean formula over state-name variables. Immutable; subtrees are shared.
///
/// Concrete grammar (used by parse()/to_string()):
///   precedence  ! > & > | > -> > <->,  -> and <-> right-associative,
///   parentheses for grouping, constants `true` / `false`.
/// Bare identifiers draw on [A-Za-z0-9_/<>-] plus any non-ASCII byte; a name
/// is quoted with `"` when it contains other characters (parentheses, commas,
/// spaces) or could be misread as an operator.
class Formula {
 public:
  enum class Kind : uint8_t { True, False, Var, Not, And, Or, Implies, Iff };

  Formula() : Formula(tt()) {}

  static Formula tt();
  static Formula ff();
  static Formula var(std::string name);
  static Formula negate(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  /// Conjunction/disjunction of a list; empty list yields true/false.
  static Formula conj_all(const std::vector<Formula>& fs);
  static Formula disj_all(const std::vector<Formula>& fs);

  static Formula parse(std::string_view text);

  Kind kind() const { return node_->kind; }
  const std::string& var_name() const { return node_->name; }
  Formula lhs() const { return Formula(node_->lhs); }
  Formula rhs() const { return Formula(node_->rhs); }

  /// Exact node count of the expression tree.
  size_t size() const;

  void collect_vars(std::set<std::string>& out) const;
  std::set<std::string> vars() const;

  /// Truth value under `truth`; every variable is resolved through it.
  bool evaluate(const std::function<bool(const std::string&)>& truth) const;

  std::string to_string() const;

  /// Structural rewrite substituting each variable by a formula.
  Formula substitute(const std::function<Formula(const std::string&)>& repl) const;

  bool operator==(const Formula& o) const { return equal(*this, o); }

 private:
  struct Node {
    Kind kind;
    std::string name;  // Var only
    std::shared_ptr<const Node> lhs, rhs;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static bool equal(const Formula& a, const Formula& b);

  std::shared_ptr<const Node> node_;

  friend class CompiledFormula;
};

/// eval_formula with an explicit universe of known state names; unknown
/// variables raise ValidationError naming the variable.
bool eval_formula(const Formula& f, const std::set<std::string>& assignment,
                  const std::set<std::string>* universe = nullptr);

/// Formula pre-resolved against a state ordering so occurrence sets can be
/// tested without string lookups. Postfix program over a small stack.
class CompiledFormula {
 public:
  CompiledFormula() = default;
  /// `index` maps state name -> bit position. Unknown variables raise
  /// ValidationError naming the variable.
  CompiledFormula(const Formula& f, const std::map<std::string, uint32_t>& index);

  bool eval(const StateSet& occ) const;

 private:
  enum class Op : uint8_t { PushVar, PushTrue, PushFalse, Not, And, Or, Implies, Iff };
  struct Instr {
    Op op;
    uint32_t var = 0;
  };
  std::vector<Instr> prog_;
};

}  // namespace wmdelay
