#include <map>
#include <optional>
#include <vector>

#include "tg/normalize.hpp"

namespace tg {

namespace {

std::string coeffs_key(const std::map<std::string, Int>& coeffs) {
  std::string out;
  for (const auto& [v, c] : coeffs) {
    out += v;
    out += ":";
    out += c.get_str();
    out += ";";
  }
  return out;
}

// Bound bookkeeping for sum-of-parts inequalities with identical coefficient
// vectors: in a conjunction only the largest lower bound matters, and a pair
// with opposite coefficient vectors is contradictory when the bounds overlap
// the wrong way.
struct GeBuckets {
  // key -> (coeffs, best bound)
  std::map<std::string, std::pair<std::map<std::string, Int>, Int>> best;

  // Returns false when the whole junction collapses (contradiction in a
  // conjunction / tautology in a disjunction).
  bool add(const std::map<std::string, Int>& coeffs, const Int& bound, bool conjunctive,
           bool integer_valued) {
    std::string key = coeffs_key(coeffs);
    auto it = best.find(key);
    if (it == best.end()) {
      best.emplace(key, std::make_pair(coeffs, bound));
    } else if (conjunctive ? bound > it->second.second : bound < it->second.second) {
      it->second.second = bound;
    }
    auto opp = best.find(coeffs_key(negated(coeffs)));
    if (opp != best.end()) {
      const Int& n1 = best.find(key)->second.second;
      const Int& n2 = opp->second.second;
      if (conjunctive && n1 + n2 > 0) return false;            // v >= n1 and v <= -n2 empty
      if (!conjunctive) {
        if (integer_valued && n1 + n2 <= 1) return false;      // covers every integer value
        if (!integer_valued && n1 + n2 <= 0) return false;     // covers every value
      }
    }
    return true;
  }

  static std::map<std::string, Int> negated(const std::map<std::string, Int>& coeffs) {
    std::map<std::string, Int> out;
    for (const auto& [v, c] : coeffs) out.emplace(v, -c);
    return out;
  }
};

void flatten(const Formula& f, Formula::Kind kind, std::vector<Formula>& out) {
  if (f.kind() == kind) {
    flatten(f.left(), kind, out);
    flatten(f.right(), kind, out);
  } else {
    out.push_back(f);
  }
}

Formula simplify_junction(const Formula& f, bool conjunctive) {
  Formula::Kind kind = conjunctive ? Formula::Kind::And : Formula::Kind::Or;
  std::vector<Formula> raw;
  flatten(f, kind, raw);

  std::vector<Formula> parts;
  std::set<std::string> seen;
  GeBuckets frac_bounds, floor_bounds;
  std::map<std::string, std::map<std::string, std::set<std::string>>> cong_residues;
  bool collapsed = false;

  auto absorb = [&](const Formula& g) {
    std::string key = print(g);
    if (seen.count(key)) return;
    // complementary literal
    Formula comp = g.kind() == Formula::Kind::Not ? g.child() : Formula::negation(g);
    if (seen.count(print(comp))) {
      collapsed = true;
      return;
    }
    seen.insert(key);
    if (g.kind() == Formula::Kind::Special) {
      const SpecialAtom& a = g.special_ref();
      if (const auto* fr = std::get_if<FracGeAtom>(&a)) {
        if (!frac_bounds.add(fr->coeffs, fr->bound, conjunctive, false)) collapsed = true;
      } else if (const auto* fl = std::get_if<FloorGeAtom>(&a)) {
        if (!floor_bounds.add(fl->coeffs, fl->bound, conjunctive, true)) collapsed = true;
      } else if (const auto* c = std::get_if<FloorCongAtom>(&a)) {
        auto& residues = cong_residues[c->var][c->modulus.get_str()];
        residues.insert(c->residue.get_str());
        if (conjunctive && residues.size() > 1) collapsed = true;  // two residues, one modulus
        if (!conjunctive && Int(static_cast<long>(residues.size())) == c->modulus) {
          collapsed = true;  // all residues present: covers Z
        }
      }
    }
    parts.push_back(g);
  };

  for (const auto& part : raw) {
    Formula s = simplify(part);
    if (conjunctive ? s.is_false() : s.is_true()) return Formula::boolean(!conjunctive);
    if (conjunctive ? s.is_true() : s.is_false()) continue;
    // merge nested junctions produced by the recursive simplify
    if (s.kind() == kind) {
      std::vector<Formula> nested;
      flatten(s, kind, nested);
      for (const auto& n : nested) absorb(n);
    } else {
      absorb(s);
    }
    if (collapsed) return Formula::boolean(!conjunctive);
  }

  // Drop inequality literals that a tighter sibling bound subsumes.
  std::vector<Formula> kept;
  for (const auto& g : parts) {
    if (g.kind() == Formula::Kind::Special) {
      const SpecialAtom& a = g.special_ref();
      if (const auto* fr = std::get_if<FracGeAtom>(&a)) {
        if (fr->bound != frac_bounds.best.at(coeffs_key(fr->coeffs)).second) continue;
      } else if (const auto* fl = std::get_if<FloorGeAtom>(&a)) {
        if (fl->bound != floor_bounds.best.at(coeffs_key(fl->coeffs)).second) continue;
      }
    }
    kept.push_back(g);
  }
  return conjunctive ? Formula::conj_all(kept) : Formula::disj_all(kept);
}

}  // namespace

Formula simplify(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom:
    case Formula::Kind::Special:
      return f;
    case Formula::Kind::Not:
      return Formula::negation(simplify(f.child()));
    case Formula::Kind::And:
      return simplify_junction(f, true);
    case Formula::Kind::Or:
      return simplify_junction(f, false);
    case Formula::Kind::Implies: {
      Formula a = simplify(f.left());
      Formula b = simplify(f.right());
      if (a.is_true()) return b;
      if (a.is_false() || b.is_true()) return Formula::truth();
      if (b.is_false()) return Formula::negation(a);
      if (a == b) return Formula::truth();
      return Formula::implies(a, b);
    }
    case Formula::Kind::Iff: {
      Formula a = simplify(f.left());
      Formula b = simplify(f.right());
      if (a.is_true()) return b;
      if (b.is_true()) return a;
      if (a.is_false()) return Formula::negation(b);
      if (b.is_false()) return Formula::negation(a);
      if (a == b) return Formula::truth();
      return Formula::iff(a, b);
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      Formula body = simplify(f.body());
      if (body.is_true() || body.is_false()) return body;
      return f.kind() == Formula::Kind::Exists ? Formula::exists(f.qvar(), body)
                                               : Formula::forall(f.qvar(), body);
    }
  }
  return f;
}

}  // namespace tg
