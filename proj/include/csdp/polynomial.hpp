#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace csdp {

using Exponent = std::vector<int>;
// sorted lexicographically, no duplicates
using ExponentSet = std::vector<Exponent>;

Exponent operator+(const Exponent& a, const Exponent& b);
int degree(const Exponent& e);
std::vector<int> nnz(const Exponent& e);
ExponentSet make_exponent_set(std::vector<Exponent> es);
// index of e in a sorted set, or -1
int find_exponent(const ExponentSet& s, const Exponent& e);
// N^n_d: every exponent with total degree ≤ d
ExponentSet monomials_up_to(int n, int d);
// "x1^2*x3" style; "1" for the zero exponent
std::string monomial_string(const Exponent& e);

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int n) : n_(n) {}
  static Polynomial constant(int n, const mpq_class& c);
  static Polynomial variable(int n, int i);
  static Polynomial monomial(const Exponent& e, const mpq_class& c = 1);

  int n() const { return n_; }
  // zero coefficients are never stored
  const std::map<Exponent, mpq_class>& terms() const { return terms_; }
  mpq_class coeff(const Exponent& e) const;
  void add_term(const Exponent& e, const mpq_class& c);
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // -1 for the zero polynomial
  ExponentSet support() const;
  // indices of the variables that appear
  std::vector<int> vars() const;
  bool is_homogeneous() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const mpq_class& c) const;
  Polynomial pow(int k) const;
  bool operator==(const Polynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }

  double max_abs_coeff() const;

 private:
  int n_ = 0;
  std::map<Exponent, mpq_class> terms_;
};

// Text format: one term per line, "coeff e1 e2 … en". Coefficients are
// integers, fractions ("3/4") or decimals ("0.25", read exactly). '#' starts
// a comment. n comes from the first term unless given.
Polynomial read_polynomial(std::istream& in, int n = -1);
Polynomial read_polynomial_file(const std::string& path, int n = -1);
Polynomial parse_polynomial(const std::string& text, int n = -1);
void write_polynomial(std::ostream& out, const Polynomial& p);
std::string to_string(const Polynomial& p);
mpq_class parse_rational(const std::string& s);

// Is target a convex combination of pts? Exact rational simplex (Bland's rule).
bool in_convex_hull(const ExponentSet& pts, const std::vector<mpq_class>& target);
// {β ∈ N^n_d : 2β ∈ New(f)}, 2d = deg f. Throws Error for odd degree.
ExponentSet newton_basis(const Polynomial& f);

}  // namespace csdp
