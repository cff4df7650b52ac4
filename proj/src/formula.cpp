#include "tg/formula.hpp"

#include <stdexcept>

namespace tg {

std::string rel_str(Rel r) {
  switch (r) {
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Eq: return "=";
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
  }
  return "=";
}

struct Formula::Node {
  Kind kind;
  std::variant<std::monostate, Atom, SpecialAtom> payload;
  std::string var;
  Formula a, b;
};

Formula Formula::truth() {
  static const auto n = std::make_shared<const Node>(Node{Kind::True, {}, {}, {}, {}});
  return Formula(n);
}

Formula Formula::falsity() {
  static const auto n = std::make_shared<const Node>(Node{Kind::False, {}, {}, {}, {}});
  return Formula(n);
}

Formula Formula::atom(Atom a) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(a), {}, {}, {}}));
}

Formula Formula::special(SpecialAtom a) {
  return Formula(std::make_shared<const Node>(Node{Kind::Special, std::move(a), {}, {}, {}}));
}

Formula Formula::negation(Formula f) {
  if (f.is_true()) return falsity();
  if (f.is_false()) return truth();
  if (f.kind() == Kind::Not) return f.child();
  return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, {}, std::move(f), {}}));
}

Formula Formula::conj(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::And, {}, {}, std::move(a), std::move(b)}));
}

Formula Formula::disj(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, {}, std::move(a), std::move(b)}));
}

Formula Formula::implies(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Implies, {}, {}, std::move(a), std::move(b)}));
}

Formula Formula::iff(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Iff, {}, {}, std::move(a), std::move(b)}));
}

Formula Formula::exists(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(Node{Kind::Exists, {}, std::move(var), std::move(body), {}}));
}

Formula Formula::forall(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(Node{Kind::Forall, {}, std::move(var), std::move(body), {}}));
}

Formula Formula::conj_all(const std::vector<Formula>& fs) {
  Formula out = truth();
  bool have = false;
  for (const auto& f : fs) {
    if (f.is_false()) return falsity();
    if (f.is_true()) continue;
    out = have ? conj(out, f) : f;
    have = true;
  }
  return have ? out : truth();
}

Formula Formula::disj_all(const std::vector<Formula>& fs) {
  Formula out = falsity();
  bool have = false;
  for (const auto& f : fs) {
    if (f.is_true()) return truth();
    if (f.is_false()) continue;
    out = have ? disj(out, f) : f;
    have = true;
  }
  return have ? out : falsity();
}

Formula::Kind Formula::kind() const {
  if (!n_) throw std::logic_error("empty formula handle");
  return n_->kind;
}

const Atom& Formula::atom_ref() const { return std::get<Atom>(n_->payload); }
const SpecialAtom& Formula::special_ref() const { return std::get<SpecialAtom>(n_->payload); }
const Formula& Formula::child() const { return n_->a; }
const Formula& Formula::left() const { return n_->a; }
const Formula& Formula::right() const { return n_->b; }
const std::string& Formula::qvar() const { return n_->var; }
const Formula& Formula::body() const { return n_->a; }

bool Formula::operator==(const Formula& o) const {
  if (n_ == o.n_) return true;
  if (!n_ || !o.n_) return false;
  if (n_->kind != o.n_->kind) return false;
  switch (n_->kind) {
    case Kind::True:
    case Kind::False:
      return true;
    case Kind::Atom:
      return atom_ref() == o.atom_ref();
    case Kind::Special:
      return special_ref() == o.special_ref();
    case Kind::Not:
      return child() == o.child();
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      return left() == o.left() && right() == o.right();
    case Kind::Exists:
    case Kind::Forall:
      return qvar() == o.qvar() && body() == o.body();
  }
  return false;
}

// --- canonicalizing special-atom constructors ---

namespace {

void drop_zero_coeffs(std::map<std::string, Int>& coeffs) {
  for (auto it = coeffs.begin(); it != coeffs.end();) {
    it = it->second == 0 ? coeffs.erase(it) : std::next(it);
  }
}

Int coeff_gcd(const std::map<std::string, Int>& coeffs) {
  Int g = 0;
  for (const auto& [v, c] : coeffs) g = gcd(g, c);
  return g;
}

}  // namespace

Formula make_frac_ge(std::map<std::string, Int> coeffs, Int bound) {
  drop_zero_coeffs(coeffs);
  if (coeffs.empty()) return Formula::boolean(bound <= 0);
  // Value range of sum n_i*frac(x_i): bounded below by the sum of negative
  // coefficients (approached, attained only when none) and above by the sum
  // of positive ones (attained only when none).
  Int neg_sum = 0, pos_sum = 0;
  for (const auto& [v, c] : coeffs) (c < 0 ? neg_sum : pos_sum) += c;
  if (bound <= neg_sum) return Formula::truth();
  if (bound > pos_sum || (bound == pos_sum && pos_sum > 0)) return Formula::falsity();
  Int g = coeff_gcd(coeffs);
  if (g > 1 && mod_floor(bound, g) == 0) {
    for (auto& [v, c] : coeffs) c /= g;
    bound /= g;
  }
  return Formula::special(FracGeAtom{std::move(coeffs), std::move(bound)});
}

Formula make_floor_ge(std::map<std::string, Int> coeffs, Int bound) {
  drop_zero_coeffs(coeffs);
  if (coeffs.empty()) return Formula::boolean(bound <= 0);
  Int g = coeff_gcd(coeffs);
  if (g > 1) {
    for (auto& [v, c] : coeffs) c /= g;
    bound = ceil_div(bound, g);  // sum of floors is an integer
  }
  return Formula::special(FloorGeAtom{std::move(coeffs), std::move(bound)});
}

Formula make_floor_cong(const std::string& var, Int residue, Int modulus) {
  if (modulus <= 0) throw std::invalid_argument("congruence with non-positive modulus");
  if (modulus == 1) return Formula::truth();
  return Formula::special(FloorCongAtom{var, mod_floor(residue, modulus), std::move(modulus)});
}

Formula make_lin_in_l(std::map<std::string, Int> coeffs) {
  drop_zero_coeffs(coeffs);
  if (coeffs.empty()) return Formula::truth();  // L(0) holds
  Int g = coeff_gcd(coeffs);
  if (coeffs.begin()->second < 0) g = -g;  // leading coefficient positive
  if (g != 1) {
    for (auto& [v, c] : coeffs) c /= g;
  }
  return Formula::special(LinInLAtom{std::move(coeffs)});
}

// --- variable collection ---

namespace {

void collect_form_vars(const LinearForm& f, std::set<std::string>& out) {
  for (const auto& [v, c] : f.coeffs()) out.insert(v.name);
}

void collect_atom_vars(const Atom& a, std::set<std::string>& out) {
  if (const auto* c = std::get_if<CmpAtom>(&a)) {
    collect_form_vars(c->lhs, out);
    collect_form_vars(c->rhs, out);
  } else if (const auto* z = std::get_if<InZAtom>(&a)) {
    collect_form_vars(z->term, out);
  } else if (const auto* l = std::get_if<InLAtom>(&a)) {
    collect_form_vars(l->term, out);
  } else if (const auto* g = std::get_if<CongAtom>(&a)) {
    collect_form_vars(g->term, out);
  }
}

void collect_special_vars(const SpecialAtom& a, std::set<std::string>& out) {
  if (const auto* f = std::get_if<FracGeAtom>(&a)) {
    for (const auto& [v, c] : f->coeffs) out.insert(v);
  } else if (const auto* f2 = std::get_if<FloorGeAtom>(&a)) {
    for (const auto& [v, c] : f2->coeffs) out.insert(v);
  } else if (const auto* c = std::get_if<FloorCongAtom>(&a)) {
    out.insert(c->var);
  } else if (const auto* l = std::get_if<LinInLAtom>(&a)) {
    for (const auto& [v, c] : l->coeffs) out.insert(v);
  }
}

void free_vars_rec(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return;
    case Formula::Kind::Atom: {
      std::set<std::string> vs;
      collect_atom_vars(f.atom_ref(), vs);
      for (const auto& v : vs) {
        if (!bound.count(v)) out.insert(v);
      }
      return;
    }
    case Formula::Kind::Special: {
      std::set<std::string> vs;
      collect_special_vars(f.special_ref(), vs);
      for (const auto& v : vs) {
        if (!bound.count(v)) out.insert(v);
      }
      return;
    }
    case Formula::Kind::Not:
      free_vars_rec(f.child(), bound, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      free_vars_rec(f.left(), bound, out);
      free_vars_rec(f.right(), bound, out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool fresh = bound.insert(f.qvar()).second;
      free_vars_rec(f.body(), bound, out);
      if (fresh) bound.erase(f.qvar());
      return;
    }
  }
}

void all_vars_rec(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return;
    case Formula::Kind::Atom:
      collect_atom_vars(f.atom_ref(), out);
      return;
    case Formula::Kind::Special:
      collect_special_vars(f.special_ref(), out);
      return;
    case Formula::Kind::Not:
      all_vars_rec(f.child(), out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      all_vars_rec(f.left(), out);
      all_vars_rec(f.right(), out);
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      out.insert(f.qvar());
      all_vars_rec(f.body(), out);
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

std::set<std::string> all_var_names(const Formula& f) {
  std::set<std::string> out;
  all_vars_rec(f, out);
  return out;
}

// --- printer ---

namespace {

LinearForm form_of_coeffs(const std::map<std::string, Int>& coeffs, VarPart part) {
  LinearForm f;
  for (const auto& [v, c] : coeffs) f.add_term({v, part}, Rational(c));
  return f;
}

// Precedence levels: atoms 0, not 1, and 2, or 3, implies 4, iff 5,
// quantifiers 6 (body extends maximally right).
void print_rec(const Formula& f, int allowed, std::string& out) {
  auto wrap = [&](int prec, auto&& fn) {
    bool parens = prec > allowed;
    if (parens) out += "(";
    fn();
    if (parens) out += ")";
  };
  switch (f.kind()) {
    case Formula::Kind::True: out += "true"; return;
    case Formula::Kind::False: out += "false"; return;
    case Formula::Kind::Atom: out += atom_str(f.atom_ref()); return;
    case Formula::Kind::Special: out += special_atom_str(f.special_ref()); return;
    case Formula::Kind::Not:
      wrap(1, [&] {
        out += "not ";
        print_rec(f.child(), 1, out);
      });
      return;
    case Formula::Kind::And:
      wrap(2, [&] {
        print_rec(f.left(), 2, out);
        out += " & ";
        print_rec(f.right(), 1, out);
      });
      return;
    case Formula::Kind::Or:
      wrap(3, [&] {
        print_rec(f.left(), 3, out);
        out += " | ";
        print_rec(f.right(), 2, out);
      });
      return;
    case Formula::Kind::Implies:
      wrap(4, [&] {
        print_rec(f.left(), 3, out);
        out += " -> ";
        print_rec(f.right(), 4, out);
      });
      return;
    case Formula::Kind::Iff:
      wrap(5, [&] {
        print_rec(f.left(), 4, out);
        out += " <-> ";
        print_rec(f.right(), 5, out);
      });
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      wrap(6, [&] {
        out += f.kind() == Formula::Kind::Exists ? "exists " : "forall ";
        out += f.qvar();
        out += ". ";
        print_rec(f.body(), 6, out);
      });
      return;
  }
}

}  // namespace

std::string atom_str(const Atom& a) {
  if (const auto* c = std::get_if<CmpAtom>(&a)) {
    return c->lhs.str() + " " + rel_str(c->rel) + " " + c->rhs.str();
  }
  if (const auto* z = std::get_if<InZAtom>(&a)) return "Z(" + z->term.str() + ")";
  if (const auto* l = std::get_if<InLAtom>(&a)) return "L(" + l->term.str() + ")";
  if (const auto* g = std::get_if<CongAtom>(&a)) {
    return g->term.str() + " ~ " + g->residue.get_str() + " mod " + g->modulus.get_str();
  }
  return "QisL";
}

std::string special_atom_str(const SpecialAtom& a) {
  if (const auto* f = std::get_if<FracGeAtom>(&a)) {
    return form_of_coeffs(f->coeffs, VarPart::Frac).str() + " >= " + f->bound.get_str();
  }
  if (const auto* f2 = std::get_if<FloorGeAtom>(&a)) {
    return form_of_coeffs(f2->coeffs, VarPart::Floor).str() + " >= " + f2->bound.get_str();
  }
  if (const auto* c = std::get_if<FloorCongAtom>(&a)) {
    return "floor(" + c->var + ") ~ " + c->residue.get_str() + " mod " + c->modulus.get_str();
  }
  if (const auto* l = std::get_if<LinInLAtom>(&a)) {
    return "L(" + form_of_coeffs(l->coeffs, VarPart::Whole).str() + ")";
  }
  return "QisL";
}

std::string print(const Formula& f) {
  std::string out;
  print_rec(f, 6, out);
  return out;
}

}  // namespace tg
