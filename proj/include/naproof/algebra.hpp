#pragma once

#include "naproof/ast.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace naproof {

// Atom key -> exponent. Atoms are variables, constants and opaque subterms.
using Monomial = std::map<std::string, int>;

struct Poly {
  std::map<Monomial, Rational> terms;  // no zero coefficients
  std::map<std::string, TermPtr> atoms;

  static Poly constant(const Rational& c);
  static Poly atom(const TermPtr& t);

  bool is_zero() const { return terms.empty(); }
  std::optional<Rational> constant_value() const;
  // Highest exponent of the atom `key` across monomials.
  int degree_in(const std::string& key) const;
  int total_degree() const;
  // Coefficient polynomial of key^k.
  Poly coefficient(const std::string& key, int k) const;
  bool depends_on(const std::string& key) const { return degree_in(key) > 0; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly pow(unsigned k) const;
  bool operator==(const Poly& o) const { return terms == o.terms; }
};

// Canonical string of a term: arithmetic normalized, bound names replaced by position.
std::string atom_key(const TermPtr& t);
std::string var_key(const std::string& name);

// Polynomial view with non-polynomial subterms treated as opaque atoms. Fails only on
// division by a non-constant or on infinities.
std::optional<Poly> to_poly(const TermPtr& t);
// Strict polynomial view: variables and exact rationals only. nullopt if not a polynomial.
std::optional<Poly> normalize_poly(const TermPtr& t);
TermPtr from_poly(const Poly& p);

struct RatFunc {
  Poly num;
  Poly den;
};
// Rational-expression view (opaque atoms allowed). Every non-constant denominator met
// on the way is appended to `denominators` when provided.
std::optional<RatFunc> to_ratfunc(const TermPtr& t, std::vector<TermPtr>* denominators = nullptr);
bool ratfunc_equal(const RatFunc& a, const RatFunc& b);

// Arithmetic simplification through the polynomial view; leaves the term as is otherwise.
TermPtr simplify(const TermPtr& t);

struct UnsupportedOperator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Symbolic derivative by the usual rules, lightly folded but not normalized. Named
// functions differentiate to their derivative symbol: d/dx f(u) = f'(u) * du.
TermPtr differentiate(const TermPtr& t, const std::string& var);

// Floating evaluation; nullopt on unknown variables, limits, sets and domain errors.
std::optional<double> evaluate(const TermPtr& t, const std::map<std::string, double>& env);

}  // namespace naproof
