#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <variant>

#include "tg/formula.hpp"

namespace tg {

class EvalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A point of one of the two canonical models: a single rational (STD) or an
// ordered pair compared lexicographically (LEX).
class ModelValue {
public:
  ModelValue() : v_(Rational(0)) {}
  static ModelValue std_value(Rational q) { return ModelValue(std::move(q)); }
  static ModelValue lex_value(Rational hi, Rational lo) {
    return ModelValue(std::make_pair(std::move(hi), std::move(lo)));
  }

  bool is_lex() const { return std::holds_alternative<std::pair<Rational, Rational>>(v_); }
  const Rational& rat() const { return std::get<Rational>(v_); }
  const Rational& hi() const { return std::get<std::pair<Rational, Rational>>(v_).first; }
  const Rational& lo() const { return std::get<std::pair<Rational, Rational>>(v_).second; }

  ModelValue operator+(const ModelValue& o) const;
  ModelValue operator-(const ModelValue& o) const;
  ModelValue operator-() const;
  ModelValue scaled(const Rational& c) const;

  std::string str() const;

  friend bool operator==(const ModelValue& a, const ModelValue& b);
  friend std::strong_ordering operator<=>(const ModelValue& a, const ModelValue& b);

private:
  explicit ModelValue(std::variant<Rational, std::pair<Rational, Rational>> v) : v_(std::move(v)) {}
  std::variant<Rational, std::pair<Rational, Rational>> v_;
};

enum class ModelKind { Std, Lex };

// One of the two computable canonical models:
//   STD: universe Q = rationals, Z = integers, L = everything (so Q = L);
//   LEX: universe Q x Q ordered lexicographically with componentwise +,
//        0 = (0,0), 1 = (0,1), Z = Q x Z, L = {0} x Q (so Q != L).
// The corrupted variant replaces LEX's L by Q x {0}, which violates the
// axioms; it exists as a negative control for the axiom checker.
class Model {
public:
  static Model std_model() { return Model(ModelKind::Std, false); }
  static Model lex_model() { return Model(ModelKind::Lex, false); }
  static Model corrupted_lex_model() { return Model(ModelKind::Lex, true); }

  ModelKind kind() const { return kind_; }
  bool corrupted() const { return corrupt_; }
  bool q_is_l() const { return kind_ == ModelKind::Std; }

  ModelValue zero() const { return from_rational(Rational(0)); }
  ModelValue one() const { return from_rational(Rational(1)); }
  // Embeds a rational constant: q itself in STD, (0, q) in LEX.
  ModelValue from_rational(const Rational& q) const;

  bool in_z(const ModelValue& v) const;
  bool in_l(const ModelValue& v) const;
  ModelValue floor_val(const ModelValue& v) const;
  ModelValue frac_val(const ModelValue& v) const { return v - floor_val(v); }

private:
  Model(ModelKind k, bool corrupt) : kind_(k), corrupt_(corrupt) {}
  ModelKind kind_;
  bool corrupt_;
};

using Assignment = std::map<std::string, ModelValue>;

// Exact Tarskian evaluation of a quantifier-free formula. Throws EvalError on
// quantifiers or unbound variables.
bool eval_qf(const Model& m, const Formula& f, const Assignment& a);

ModelValue eval_term(const Model& m, const LinearForm& t, const Assignment& a);

// Parses the CLI assignment syntax: `x=3/2,y=-1` (STD) or `x=(1/2,3)` (LEX).
Assignment parse_assignment(const Model& m, const std::string& text);

}  // namespace tg
