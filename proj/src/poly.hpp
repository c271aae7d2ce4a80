#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rational.hpp"

namespace qs {

// Multivariate polynomial over Q in canonical form: monomials sorted by the
// map ordering, no zero coefficients, no zero exponents.
struct Monomial {
  std::map<std::string, unsigned> exps;
  bool operator<(const Monomial& o) const { return exps < o.exps; }
  bool operator==(const Monomial& o) const { return exps == o.exps; }
};

class Poly {
 public:
  Poly() = default;
  static Poly constant(const Rat& c);
  static Poly var(const std::string& name);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rat constant_value() const;  // valid when is_constant()

  // Exact evaluation; every variable must be covered by the assignment.
  std::optional<Rat> eval(const Assignment& a) const;

  Poly substitute(const Assignment& ground) const;
  Poly rename(const std::map<std::string, std::string>& m) const;

  void collect_vars(std::set<std::string>& out) const;
  const std::map<Monomial, Rat>& terms() const { return terms_; }

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

  std::string to_string() const;

 private:
  std::map<Monomial, Rat> terms_;
  void add_term(const Monomial& m, const Rat& c);
};

// Relation of a polynomial atom, right-hand side normalized to zero.
enum class Cmp { Eq, Ne, Lt, Le };

struct PolyAtom {
  Poly lhs;
  Cmp rel;
  bool operator==(const PolyAtom& o) const { return rel == o.rel && lhs == o.lhs; }
};

// complement(p REL 0) as a single atom; Lt/Le flip the polynomial's sign.
PolyAtom complement(const PolyAtom& a);

// Boolean combination of polynomial atoms with optional real quantifiers.
struct Formula {
  enum class Kind { Atom, And, Or, Not, Exists, Forall };

  Kind kind = Kind::And;
  PolyAtom atom;                   // Kind::Atom
  std::vector<Formula> kids;       // And/Or (n-ary), Not (1), quantifiers (1)
  std::vector<std::string> bound;  // quantifiers

  static Formula mk_atom(PolyAtom a);
  static Formula mk_atom(Poly lhs, Cmp rel);
  static Formula mk_and(std::vector<Formula> kids);
  static Formula mk_or(std::vector<Formula> kids);
  static Formula mk_not(Formula f);
  static Formula mk_exists(std::vector<std::string> vars, Formula body);
  static Formula mk_forall(std::vector<std::string> vars, Formula body);
  static Formula top() { return mk_and({}); }
  static Formula bottom() { return mk_or({}); }

  bool is_top() const { return kind == Kind::And && kids.empty(); }
  bool is_bottom() const { return kind == Kind::Or && kids.empty(); }
};

// Negation normal form: Not eliminated entirely by atom complementation,
// Exists/Forall dualized under negation.
Formula to_nnf(const Formula& f);

std::set<std::string> free_vars(const Formula& f);

Formula substitute(const Formula& f, const Assignment& ground);
Formula rename_vars(const Formula& f, const std::map<std::string, std::string>& m);

// Drops Exists binders that are not in the scope of any Forall (their bound
// variables become free; names are globally unique by construction).
Formula skolemize(const Formula& f);

bool has_quantifier(const Formula& f);

// Exact three-valued evaluation. Quantified subformulas are tried against the
// provided finite candidate assignments; `candidates_exhaustive` lets a
// quantifier be decided negatively (Exists) / positively (Forall) when every
// candidate fails, which test oracles use with constructed witness sets.
std::optional<bool> eval_ground(const Formula& f, const Assignment& a,
                                const std::vector<Assignment>* candidates = nullptr,
                                bool candidates_exhaustive = false);

// Floating-point evaluation with absolute tolerance on every comparison, for
// witnesses whose values approximate irrational roots. Quantified subformulas
// evaluate to nullopt.
std::optional<bool> eval_approx(const Formula& f, const Assignment& a, double tol);

}  // namespace qs
