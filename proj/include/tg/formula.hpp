#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tg/linear_form.hpp"

namespace tg {

enum class Rel { Lt, Le, Eq, Ge, Gt };

std::string rel_str(Rel r);

// Primitive atoms over the term language.
struct CmpAtom {
  LinearForm lhs;
  Rel rel = Rel::Eq;
  LinearForm rhs;
  friend bool operator==(const CmpAtom&, const CmpAtom&) = default;
};
struct InZAtom {
  LinearForm term;
  friend bool operator==(const InZAtom&, const InZAtom&) = default;
};
struct InLAtom {
  LinearForm term;
  friend bool operator==(const InLAtom&, const InLAtom&) = default;
};
struct CongAtom {  // term ≡ residue (mod modulus), i.e. (term - residue)/modulus in Z
  LinearForm term;
  Int residue;
  Int modulus;
  friend bool operator==(const CongAtom&, const CongAtom&) = default;
};
struct QIsLAtom {
  friend bool operator==(const QIsLAtom&, const QIsLAtom&) = default;
};

using Atom = std::variant<CmpAtom, InZAtom, InLAtom, CongAtom, QIsLAtom>;

// The five special-formula atom shapes. Coefficients and bounds are integers;
// maps never contain zero coefficients.
struct FracGeAtom {  // sum n_i * frac(x_i) >= bound
  std::map<std::string, Int> coeffs;
  Int bound;
  friend bool operator==(const FracGeAtom&, const FracGeAtom&) = default;
};
struct FloorGeAtom {  // sum n_i * floor(x_i) >= bound
  std::map<std::string, Int> coeffs;
  Int bound;
  friend bool operator==(const FloorGeAtom&, const FloorGeAtom&) = default;
};
struct FloorCongAtom {  // floor(var) ≡ residue (mod modulus), 0 <= residue < modulus
  std::string var;
  Int residue;
  Int modulus;
  friend bool operator==(const FloorCongAtom&, const FloorCongAtom&) = default;
};
struct LinInLAtom {  // sum n_i * x_i in L
  std::map<std::string, Int> coeffs;
  friend bool operator==(const LinInLAtom&, const LinInLAtom&) = default;
};

using SpecialAtom = std::variant<FracGeAtom, FloorGeAtom, FloorCongAtom, LinInLAtom, QIsLAtom>;

// Immutable first-order syntax tree. Nodes are shared; every operation on
// formulas is a pure function, so concurrent use is safe.
class Formula {
public:
  enum class Kind { True, False, Atom, Special, Not, And, Or, Implies, Iff, Exists, Forall };

  Formula() = default;  // empty handle; only used internally

  static Formula truth();
  static Formula falsity();
  static Formula boolean(bool b) { return b ? truth() : falsity(); }
  static Formula atom(Atom a);
  static Formula special(SpecialAtom a);
  static Formula negation(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula exists(std::string var, Formula body);
  static Formula forall(std::string var, Formula body);

  // Left-associative folds with true/false absorption.
  static Formula conj_all(const std::vector<Formula>& fs);
  static Formula disj_all(const std::vector<Formula>& fs);

  Kind kind() const;
  bool is_true() const { return kind() == Kind::True; }
  bool is_false() const { return kind() == Kind::False; }

  const Atom& atom_ref() const;
  const SpecialAtom& special_ref() const;
  const Formula& child() const;  // Not
  const Formula& left() const;
  const Formula& right() const;
  const std::string& qvar() const;
  const Formula& body() const;

  bool operator==(const Formula& o) const;

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

// Canonicalizing special-atom constructors. They fold constant cases (for
// example a frac inequality that no point of [0,1)^k can violate) and keep
// coefficient maps free of zeros, so the special-atom invariants hold by
// construction.
Formula make_frac_ge(std::map<std::string, Int> coeffs, Int bound);
Formula make_floor_ge(std::map<std::string, Int> coeffs, Int bound);
Formula make_floor_cong(const std::string& var, Int residue, Int modulus);
Formula make_lin_in_l(std::map<std::string, Int> coeffs);

// Free variables (component references count as their base variable).
std::set<std::string> free_vars(const Formula& f);
// Every variable name occurring anywhere, bound or free.
std::set<std::string> all_var_names(const Formula& f);

// Concrete-syntax printer; parse(print(f)) == normalize(f) structurally.
std::string print(const Formula& f);
std::string atom_str(const Atom& a);
std::string special_atom_str(const SpecialAtom& a);

}  // namespace tg
