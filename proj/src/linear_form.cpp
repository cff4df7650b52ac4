#include "tg/linear_form.hpp"

#include <stdexcept>

namespace tg {

std::string var_ref_str(const VarRef& v) {
  switch (v.part) {
    case VarPart::Whole: return v.name;
    case VarPart::Floor: return "floor(" + v.name + ")";
    case VarPart::Frac: return "frac(" + v.name + ")";
  }
  return v.name;
}

LinearForm LinearForm::var(VarRef v, Rational coeff) {
  LinearForm f;
  f.add_term(v, coeff);
  return f;
}

Rational LinearForm::coeff(const VarRef& v) const {
  auto it = coeffs_.find(v);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void LinearForm::add_term(const VarRef& v, const Rational& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = coeffs_.emplace(v, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

bool LinearForm::is_integer_valued() const {
  if (!constant_.is_integer()) return false;
  for (const auto& [v, c] : coeffs_) {
    if (v.part != VarPart::Floor || !c.is_integer()) return false;
  }
  return true;
}

bool LinearForm::has_part(VarPart p) const {
  for (const auto& [v, c] : coeffs_) {
    if (v.part == p) return true;
  }
  return false;
}

bool LinearForm::mentions(const std::string& name) const {
  for (const auto& [v, c] : coeffs_) {
    if (v.name == name) return true;
  }
  return false;
}

std::set<std::string> LinearForm::var_names() const {
  std::set<std::string> out;
  for (const auto& [v, c] : coeffs_) out.insert(v.name);
  return out;
}

LinearForm LinearForm::operator-() const {
  return scaled(Rational(-1));
}

LinearForm& LinearForm::operator+=(const LinearForm& o) {
  for (const auto& [v, c] : o.coeffs_) add_term(v, c);
  constant_ += o.constant_;
  return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& o) {
  for (const auto& [v, c] : o.coeffs_) add_term(v, -c);
  constant_ -= o.constant_;
  return *this;
}

LinearForm LinearForm::scaled(const Rational& c) const {
  LinearForm out;
  if (c.is_zero()) return out;
  for (const auto& [v, k] : coeffs_) out.coeffs_.emplace(v, k * c);
  out.constant_ = constant_ * c;
  return out;
}

LinearForm LinearForm::without(const VarRef& v) const {
  LinearForm out = *this;
  out.coeffs_.erase(v);
  return out;
}

LinearForm LinearForm::split_whole() const {
  LinearForm out;
  out.constant_ = constant_;
  for (const auto& [v, c] : coeffs_) {
    if (v.part == VarPart::Whole) {
      out.add_term({v.name, VarPart::Floor}, c);
      out.add_term({v.name, VarPart::Frac}, c);
    } else {
      out.add_term(v, c);
    }
  }
  return out;
}

Int LinearForm::denominator_lcm() const {
  Int m = constant_.den();
  for (const auto& [v, c] : coeffs_) m = lcm(m, c.den());
  return m;
}

Int LinearForm::eval_int(const std::map<std::string, Int>& values) const {
  Rational acc = constant_;
  for (const auto& [v, c] : coeffs_) {
    auto it = values.find(v.name);
    if (it == values.end()) throw std::invalid_argument("eval_int: unbound variable " + v.name);
    acc += c * Rational(it->second);
  }
  if (!acc.is_integer()) throw std::invalid_argument("eval_int: non-integer value");
  return acc.num();
}

std::string LinearForm::str() const {
  if (coeffs_.empty()) return constant_.str();
  std::string out;
  bool first = true;
  for (const auto& [v, c] : coeffs_) {
    if (first) {
      if (c == Rational(1)) {
        out += var_ref_str(v);
      } else {
        out += c.str() + "*" + var_ref_str(v);
      }
      first = false;
      continue;
    }
    Rational a = c.abs();
    out += c.sign() < 0 ? " - " : " + ";
    if (a == Rational(1)) {
      out += var_ref_str(v);
    } else {
      out += a.str() + "*" + var_ref_str(v);
    }
  }
  if (!constant_.is_zero()) {
    Rational a = constant_.abs();
    out += constant_.sign() < 0 ? " - " : " + ";
    out += a.str();
  }
  return out;
}

}  // namespace tg
