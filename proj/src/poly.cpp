#include "poly.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qs {

void Poly::add_term(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::constant(const Rat& c) {
  Poly p;
  p.add_term(Monomial{}, c);
  return p;
}

Poly Poly::var(const std::string& name) {
  Poly p;
  Monomial m;
  m.exps[name] = 1;
  p.add_term(m, Rat(1));
  return p;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m = m1;
      for (const auto& [v, e] : m2.exps) m.exps[v] += e;
      r.add_term(m, c1 * c2);
    }
  }
  return r;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.exps.empty());
}

Rat Poly::constant_value() const {
  if (terms_.empty()) return Rat(0);
  return terms_.begin()->second;
}

std::optional<Rat> Poly::eval(const Assignment& a) const {
  Rat total(0);
  for (const auto& [m, c] : terms_) {
    Rat t = c;
    for (const auto& [v, e] : m.exps) {
      auto it = a.find(v);
      if (it == a.end()) return std::nullopt;
      for (unsigned k = 0; k < e; ++k) t *= it->second;
    }
    total += t;
  }
  return total;
}

Poly Poly::substitute(const Assignment& ground) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    Rat coeff = c;
    Monomial rest;
    for (const auto& [v, e] : m.exps) {
      auto it = ground.find(v);
      if (it == ground.end()) {
        rest.exps[v] = e;
      } else {
        for (unsigned k = 0; k < e; ++k) coeff *= it->second;
      }
    }
    r.add_term(rest, coeff);
  }
  return r;
}

Poly Poly::rename(const std::map<std::string, std::string>& m) const {
  Poly r;
  for (const auto& [mono, c] : terms_) {
    Monomial nm;
    for (const auto& [v, e] : mono.exps) {
      auto it = m.find(v);
      nm.exps[it == m.end() ? v : it->second] += e;
    }
    r.add_term(nm, c);
  }
  return r;
}

void Poly::collect_vars(std::set<std::string>& out) const {
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.exps) out.insert(v);
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) s += " + ";
    first = false;
    s += rat_to_string(c);
    for (const auto& [v, e] : m.exps) {
      s += "*" + v;
      if (e > 1) s += "^" + std::to_string(e);
    }
  }
  return s;
}

PolyAtom complement(const PolyAtom& a) {
  switch (a.rel) {
    case Cmp::Eq: return {a.lhs, Cmp::Ne};
    case Cmp::Ne: return {a.lhs, Cmp::Eq};
    case Cmp::Lt: return {-a.lhs, Cmp::Le};  // !(p<0)  <=>  -p<=0
    case Cmp::Le: return {-a.lhs, Cmp::Lt};  // !(p<=0) <=>  -p<0
  }
  throw std::logic_error("bad Cmp");
}

Formula Formula::mk_atom(PolyAtom a) {
  Formula f;
  f.kind = Kind::Atom;
  f.atom = std::move(a);
  return f;
}

Formula Formula::mk_atom(Poly lhs, Cmp rel) { return mk_atom(PolyAtom{std::move(lhs), rel}); }

Formula Formula::mk_and(std::vector<Formula> kids) {
  Formula f;
  f.kind = Kind::And;
  f.kids = std::move(kids);
  return f;
}

Formula Formula::mk_or(std::vector<Formula> kids) {
  Formula f;
  f.kind = Kind::Or;
  f.kids = std::move(kids);
  return f;
}

Formula Formula::mk_not(Formula g) {
  Formula f;
  f.kind = Kind::Not;
  f.kids.push_back(std::move(g));
  return f;
}

Formula Formula::mk_exists(std::vector<std::string> vars, Formula body) {
  Formula f;
  f.kind = Kind::Exists;
  f.bound = std::move(vars);
  f.kids.push_back(std::move(body));
  return f;
}

Formula Formula::mk_forall(std::vector<std::string> vars, Formula body) {
  Formula f;
  f.kind = Kind::Forall;
  f.bound = std::move(vars);
  f.kids.push_back(std::move(body));
  return f;
}

namespace {

Formula nnf_impl(const Formula& f, bool negate) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      return negate ? Formula::mk_atom(complement(f.atom)) : Formula::mk_atom(f.atom);
    case Formula::Kind::Not:
      return nnf_impl(f.kids[0], !negate);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      bool is_and = (f.kind == Formula::Kind::And) != negate;
      std::vector<Formula> kids;
      kids.reserve(f.kids.size());
      for (const auto& k : f.kids) kids.push_back(nnf_impl(k, negate));
      return is_and ? Formula::mk_and(std::move(kids)) : Formula::mk_or(std::move(kids));
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool is_exists = (f.kind == Formula::Kind::Exists) != negate;
      Formula body = nnf_impl(f.kids[0], negate);
      return is_exists ? Formula::mk_exists(f.bound, std::move(body))
                       : Formula::mk_forall(f.bound, std::move(body));
    }
  }
  throw std::logic_error("bad formula kind");
}

void free_vars_impl(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      std::set<std::string> vs;
      f.atom.lhs.collect_vars(vs);
      for (const auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      std::vector<std::string> added;
      for (const auto& v : f.bound)
        if (bound.insert(v).second) added.push_back(v);
      free_vars_impl(f.kids[0], bound, out);
      for (const auto& v : added) bound.erase(v);
      return;
    }
    default:
      for (const auto& k : f.kids) free_vars_impl(k, bound, out);
  }
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf_impl(f, false); }

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  free_vars_impl(f, bound, out);
  return out;
}

Formula substitute(const Formula& f, const Assignment& ground) {
  Formula r = f;
  switch (f.kind) {
    case Formula::Kind::Atom:
      r.atom.lhs = f.atom.lhs.substitute(ground);
      return r;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      Assignment inner = ground;
      for (const auto& v : f.bound) inner.erase(v);
      r.kids[0] = substitute(f.kids[0], inner);
      return r;
    }
    default:
      for (std::size_t i = 0; i < f.kids.size(); ++i) r.kids[i] = substitute(f.kids[i], ground);
      return r;
  }
}

Formula rename_vars(const Formula& f, const std::map<std::string, std::string>& m) {
  Formula r = f;
  switch (f.kind) {
    case Formula::Kind::Atom:
      r.atom.lhs = f.atom.lhs.rename(m);
      return r;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      std::map<std::string, std::string> inner = m;
      for (const auto& v : f.bound) inner.erase(v);
      r.kids[0] = rename_vars(f.kids[0], inner);
      return r;
    }
    default:
      for (std::size_t i = 0; i < f.kids.size(); ++i) r.kids[i] = rename_vars(f.kids[i], m);
      return r;
  }
}

namespace {

Formula skolemize_impl(const Formula& f, bool under_forall) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::Exists:
      if (!under_forall) return skolemize_impl(f.kids[0], false);
      [[fallthrough]];
    case Formula::Kind::Forall: {
      Formula r = f;
      r.kids[0] = skolemize_impl(f.kids[0], f.kind == Formula::Kind::Forall || under_forall);
      return r;
    }
    default: {
      Formula r = f;
      for (std::size_t i = 0; i < f.kids.size(); ++i)
        r.kids[i] = skolemize_impl(f.kids[i], under_forall);
      return r;
    }
  }
}

}  // namespace

Formula skolemize(const Formula& f) { return skolemize_impl(f, false); }

bool has_quantifier(const Formula& f) {
  if (f.kind == Formula::Kind::Exists || f.kind == Formula::Kind::Forall) return true;
  for (const auto& k : f.kids)
    if (has_quantifier(k)) return true;
  return false;
}

std::optional<bool> eval_ground(const Formula& f, const Assignment& a,
                                const std::vector<Assignment>* candidates,
                                bool candidates_exhaustive) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      auto v = f.atom.lhs.eval(a);
      if (!v) return std::nullopt;
      switch (f.atom.rel) {
        case Cmp::Eq: return *v == 0;
        case Cmp::Ne: return *v != 0;
        case Cmp::Lt: return *v < 0;
        case Cmp::Le: return *v <= 0;
      }
      return std::nullopt;
    }
    case Formula::Kind::Not: {
      auto v = eval_ground(f.kids[0], a, candidates, candidates_exhaustive);
      if (!v) return std::nullopt;
      return !*v;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      bool is_and = f.kind == Formula::Kind::And;
      bool undecided = false;
      for (const auto& k : f.kids) {
        auto v = eval_ground(k, a, candidates, candidates_exhaustive);
        if (!v) {
          undecided = true;
        } else if (*v != is_and) {
          return !is_and;  // short-circuit: false in And / true in Or
        }
      }
      if (undecided) return std::nullopt;
      return is_and;
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool is_exists = f.kind == Formula::Kind::Exists;
      if (!candidates) return std::nullopt;
      bool tried = false, undecided = false;
      for (const auto& cand : *candidates) {
        Assignment merged = a;
        bool covers = true;
        for (const auto& v : f.bound) {
          auto it = cand.find(v);
          if (it == cand.end()) {
            covers = false;
            break;
          }
          merged[v] = it->second;
        }
        if (!covers) continue;
        tried = true;
        auto r = eval_ground(f.kids[0], merged, candidates, candidates_exhaustive);
        if (!r) {
          undecided = true;
        } else if (*r == is_exists) {
          return is_exists;  // witness found / counterexample found
        }
      }
      if (tried && candidates_exhaustive && !undecided) return !is_exists;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

namespace {

std::optional<double> eval_poly_double(const Poly& p, const Assignment& a) {
  double sum = 0;
  for (const auto& [mono, coeff] : p.terms()) {
    double term = coeff.get_d();
    for (const auto& [var, exp] : mono.exps) {
      auto it = a.find(var);
      if (it == a.end()) return std::nullopt;
      term *= std::pow(it->second.get_d(), exp);
    }
    sum += term;
  }
  return sum;
}

}  // namespace

std::optional<bool> eval_approx(const Formula& f, const Assignment& a, double tol) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      auto v = eval_poly_double(f.atom.lhs, a);
      if (!v || !std::isfinite(*v)) return std::nullopt;
      switch (f.atom.rel) {
        case Cmp::Eq: return std::fabs(*v) <= tol;
        case Cmp::Ne: return std::fabs(*v) > tol;
        case Cmp::Lt: return *v < tol;
        case Cmp::Le: return *v <= tol;
      }
      return std::nullopt;
    }
    case Formula::Kind::Not: {
      auto v = eval_approx(f.kids[0], a, tol);
      if (!v) return std::nullopt;
      return !*v;
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      bool is_and = f.kind == Formula::Kind::And;
      bool undecided = false;
      for (const auto& k : f.kids) {
        auto v = eval_approx(k, a, tol);
        if (!v)
          undecided = true;
        else if (*v != is_and)
          return !is_and;
      }
      if (undecided) return std::nullopt;
      return is_and;
    }
    default:
      return std::nullopt;
  }
}

}  // namespace qs
