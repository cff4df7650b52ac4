#pragma once

#include <map>
#include <set>
#include <string>

#include "tg/rational.hpp"

namespace tg {

// Which component of a variable a coefficient applies to. Terms of the
// language are rational-affine combinations of x, floor(x) and frac(x).
enum class VarPart { Whole, Floor, Frac };

struct VarRef {
  std::string name;
  VarPart part = VarPart::Whole;

  friend bool operator==(const VarRef&, const VarRef&) = default;
  friend auto operator<=>(const VarRef&, const VarRef&) = default;
};

std::string var_ref_str(const VarRef& v);

// Exact rational-affine form: sum of coeff * component + constant.
// Zero coefficients are never stored, which makes the map canonical.
class LinearForm {
public:
  LinearForm() = default;
  explicit LinearForm(Rational constant) : constant_(std::move(constant)) {}

  static LinearForm var(VarRef v, Rational coeff = Rational(1));
  static LinearForm whole(const std::string& name, Rational coeff = Rational(1)) {
    return var({name, VarPart::Whole}, std::move(coeff));
  }
  static LinearForm floor_of(const std::string& name, Rational coeff = Rational(1)) {
    return var({name, VarPart::Floor}, std::move(coeff));
  }
  static LinearForm frac_of(const std::string& name, Rational coeff = Rational(1)) {
    return var({name, VarPart::Frac}, std::move(coeff));
  }

  const std::map<VarRef, Rational>& coeffs() const { return coeffs_; }
  const Rational& constant() const { return constant_; }

  Rational coeff(const VarRef& v) const;
  void add_term(const VarRef& v, const Rational& coeff);
  void add_constant(const Rational& c) { constant_ += c; }

  bool is_constant() const { return coeffs_.empty(); }
  // True when every term is an integer multiple of a floor component and the
  // constant is an integer, so the form only takes values in Z.
  bool is_integer_valued() const;
  bool has_part(VarPart p) const;
  bool mentions(const std::string& name) const;

  std::set<std::string> var_names() const;

  LinearForm operator-() const;
  LinearForm& operator+=(const LinearForm& o);
  LinearForm& operator-=(const LinearForm& o);
  friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
  friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }

  LinearForm scaled(const Rational& c) const;
  LinearForm without(const VarRef& v) const;

  // Replaces whole-variable terms by floor + frac of the same variable.
  LinearForm split_whole() const;

  // Smallest positive integer multiplier that clears every denominator.
  Int denominator_lcm() const;

  // Evaluates with the given integer substitution for variables (all parts
  // treated alike); used for residue arithmetic on floor forms.
  Int eval_int(const std::map<std::string, Int>& values) const;

  std::string str() const;

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
  // Deterministic order for canonical sets of forms; the key is the printed
  // representation, which is unique per form.
  friend bool operator<(const LinearForm& a, const LinearForm& b) { return a.str() < b.str(); }

private:
  std::map<VarRef, Rational> coeffs_;
  Rational constant_;
};

}  // namespace tg
