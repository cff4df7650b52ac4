#include "tg/model.hpp"

namespace tg {

ModelValue ModelValue::operator+(const ModelValue& o) const {
  if (is_lex() != o.is_lex()) throw EvalError("mixed model values");
  if (is_lex()) return lex_value(hi() + o.hi(), lo() + o.lo());
  return std_value(rat() + o.rat());
}

ModelValue ModelValue::operator-(const ModelValue& o) const {
  return *this + (-o);
}

ModelValue ModelValue::operator-() const {
  if (is_lex()) return lex_value(-hi(), -lo());
  return std_value(-rat());
}

ModelValue ModelValue::scaled(const Rational& c) const {
  if (is_lex()) return lex_value(hi() * c, lo() * c);
  return std_value(rat() * c);
}

std::string ModelValue::str() const {
  if (is_lex()) return "(" + hi().str() + "," + lo().str() + ")";
  return rat().str();
}

bool operator==(const ModelValue& a, const ModelValue& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const ModelValue& a, const ModelValue& b) {
  if (a.is_lex() != b.is_lex()) throw EvalError("mixed model values");
  if (a.is_lex()) {
    auto c = a.hi() <=> b.hi();
    return c != std::strong_ordering::equal ? c : a.lo() <=> b.lo();
  }
  return a.rat() <=> b.rat();
}

ModelValue Model::from_rational(const Rational& q) const {
  if (kind_ == ModelKind::Std) return ModelValue::std_value(q);
  return ModelValue::lex_value(Rational(0), q);
}

bool Model::in_z(const ModelValue& v) const {
  if (kind_ == ModelKind::Std) return v.rat().is_integer();
  return v.lo().is_integer();
}

bool Model::in_l(const ModelValue& v) const {
  if (kind_ == ModelKind::Std) return true;
  if (corrupt_) return v.lo().is_zero();  // deliberately wrong: Q x {0}
  return v.hi().is_zero();
}

ModelValue Model::floor_val(const ModelValue& v) const {
  if (kind_ == ModelKind::Std) return ModelValue::std_value(Rational(v.rat().floor()));
  return ModelValue::lex_value(v.hi(), Rational(v.lo().floor()));
}

namespace {

const ModelValue& lookup(const Assignment& a, const std::string& name) {
  auto it = a.find(name);
  if (it == a.end()) throw EvalError("unbound variable: " + name);
  return it->second;
}

bool cmp_holds(Rel rel, std::strong_ordering c) {
  switch (rel) {
    case Rel::Lt: return c == std::strong_ordering::less;
    case Rel::Le: return c != std::strong_ordering::greater;
    case Rel::Eq: return c == std::strong_ordering::equal;
    case Rel::Ge: return c != std::strong_ordering::less;
    case Rel::Gt: return c == std::strong_ordering::greater;
  }
  return false;
}

bool eval_atom(const Model& m, const Atom& a, const Assignment& env) {
  if (const auto* c = std::get_if<CmpAtom>(&a)) {
    return cmp_holds(c->rel, eval_term(m, c->lhs, env) <=> eval_term(m, c->rhs, env));
  }
  if (const auto* z = std::get_if<InZAtom>(&a)) return m.in_z(eval_term(m, z->term, env));
  if (const auto* l = std::get_if<InLAtom>(&a)) return m.in_l(eval_term(m, l->term, env));
  if (const auto* g = std::get_if<CongAtom>(&a)) {
    ModelValue t = eval_term(m, g->term, env) - m.from_rational(Rational(g->residue));
    return m.in_z(t.scaled(Rational(Int(1), g->modulus)));
  }
  return m.q_is_l();
}

bool eval_special(const Model& m, const SpecialAtom& a, const Assignment& env) {
  if (const auto* f = std::get_if<FracGeAtom>(&a)) {
    ModelValue sum = m.zero();
    for (const auto& [v, c] : f->coeffs) sum = sum + m.frac_val(lookup(env, v)).scaled(Rational(c));
    return sum >= m.from_rational(Rational(f->bound));
  }
  if (const auto* f2 = std::get_if<FloorGeAtom>(&a)) {
    ModelValue sum = m.zero();
    for (const auto& [v, c] : f2->coeffs) {
      sum = sum + m.floor_val(lookup(env, v)).scaled(Rational(c));
    }
    return sum >= m.from_rational(Rational(f2->bound));
  }
  if (const auto* c = std::get_if<FloorCongAtom>(&a)) {
    ModelValue t = m.floor_val(lookup(env, c->var)) - m.from_rational(Rational(c->residue));
    return m.in_z(t.scaled(Rational(Int(1), c->modulus)));
  }
  if (const auto* l = std::get_if<LinInLAtom>(&a)) {
    ModelValue sum = m.zero();
    for (const auto& [v, c] : l->coeffs) sum = sum + lookup(env, v).scaled(Rational(c));
    return m.in_l(sum);
  }
  return m.q_is_l();
}

}  // namespace

ModelValue eval_term(const Model& m, const LinearForm& t, const Assignment& a) {
  ModelValue sum = m.from_rational(t.constant());
  for (const auto& [v, c] : t.coeffs()) {
    const ModelValue& base = lookup(a, v.name);
    ModelValue component = v.part == VarPart::Whole   ? base
                           : v.part == VarPart::Floor ? m.floor_val(base)
                                                      : m.frac_val(base);
    sum = sum + component.scaled(c);
  }
  return sum;
}

bool eval_qf(const Model& m, const Formula& f, const Assignment& a) {
  switch (f.kind()) {
    case Formula::Kind::True: return true;
    case Formula::Kind::False: return false;
    case Formula::Kind::Atom: return eval_atom(m, f.atom_ref(), a);
    case Formula::Kind::Special: return eval_special(m, f.special_ref(), a);
    case Formula::Kind::Not: return !eval_qf(m, f.child(), a);
    case Formula::Kind::And: return eval_qf(m, f.left(), a) && eval_qf(m, f.right(), a);
    case Formula::Kind::Or: return eval_qf(m, f.left(), a) || eval_qf(m, f.right(), a);
    case Formula::Kind::Implies: return !eval_qf(m, f.left(), a) || eval_qf(m, f.right(), a);
    case Formula::Kind::Iff: return eval_qf(m, f.left(), a) == eval_qf(m, f.right(), a);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      throw EvalError("eval_qf: formula has quantifiers; use qe/decide instead");
  }
  return false;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

}  // namespace

Assignment parse_assignment(const Model& m, const std::string& text) {
  Assignment out;
  // split on commas at paren depth zero; LEX pair literals contain commas
  std::vector<std::string> entries;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      entries.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) entries.push_back(cur);
  for (const auto& raw : entries) {
    std::string entry = trim(raw);
    auto eq = entry.find('=');
    if (eq == std::string::npos) throw EvalError("bad assignment entry: " + entry);
    std::string name = trim(entry.substr(0, eq));
    std::string value = trim(entry.substr(eq + 1));
    if (name.empty()) throw EvalError("bad assignment entry: " + entry);
    if (m.kind() == ModelKind::Lex) {
      if (value.size() < 2 || value.front() != '(' || value.back() != ')') {
        throw EvalError("LEX assignments use pairs, e.g. x=(1/2,3): " + entry);
      }
      std::string inner = value.substr(1, value.size() - 2);
      auto comma = inner.find(',');
      if (comma == std::string::npos) throw EvalError("bad pair: " + value);
      Rational hi = Rational::from_string(trim(inner.substr(0, comma)));
      Rational lo = Rational::from_string(trim(inner.substr(comma + 1)));
      out[name] = ModelValue::lex_value(hi, lo);
    } else {
      out[name] = ModelValue::std_value(Rational::from_string(value));
    }
  }
  return out;
}

}  // namespace tg
