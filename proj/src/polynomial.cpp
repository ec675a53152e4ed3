#include "csdp/polynomial.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "csdp/errors.hpp"

namespace csdp {

SupportNotCovered::SupportNotCovered(std::vector<std::vector<int>> alphas)
    : Error([&] {
        std::string s = "support not covered by the Gram sparsity:";
        for (const auto& a : alphas) s += " " + monomial_string(a);
        return s;
      }()),
      uncovered(std::move(alphas)) {}

Exponent operator+(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw DimensionMismatch("exponents of different length");
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

int degree(const Exponent& e) {
  int d = 0;
  for (int v : e) d += v;
  return d;
}

std::vector<int> nnz(const Exponent& e) {
  std::vector<int> r;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) r.push_back(static_cast<int>(i));
  return r;
}

ExponentSet make_exponent_set(std::vector<Exponent> es) {
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  return es;
}

int find_exponent(const ExponentSet& s, const Exponent& e) {
  auto it = std::lower_bound(s.begin(), s.end(), e);
  if (it == s.end() || *it != e) return -1;
  return static_cast<int>(it - s.begin());
}

namespace {

void fill_monomials(int n, int d, int i, Exponent& cur, ExponentSet& out) {
  if (i == n) {
    out.push_back(cur);
    return;
  }
  for (int k = 0; k <= d; ++k) {
    cur[i] = k;
    fill_monomials(n, d - k, i + 1, cur, out);
  }
  cur[i] = 0;
}

}  // namespace

ExponentSet monomials_up_to(int n, int d) {
  ExponentSet out;
  if (d < 0) return out;
  Exponent cur(n, 0);
  fill_monomials(n, d, 0, cur, out);
  return make_exponent_set(std::move(out));
}

std::string monomial_string(const Exponent& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += "x" + std::to_string(i + 1);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

Polynomial Polynomial::constant(int n, const mpq_class& c) {
  Polynomial p(n);
  p.add_term(Exponent(n, 0), c);
  return p;
}

Polynomial Polynomial::variable(int n, int i) {
  Exponent e(n, 0);
  e[i] = 1;
  return monomial(e);
}

Polynomial Polynomial::monomial(const Exponent& e, const mpq_class& c) {
  Polynomial p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

mpq_class Polynomial::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void Polynomial::add_term(const Exponent& e, const mpq_class& c) {
  if (static_cast<int>(e.size()) != n_) throw DimensionMismatch("exponent length differs from variable count");
  for (int v : e)
    if (v < 0) throw Error("negative exponent");
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, csdp::degree(e));
  return d;
}

ExponentSet Polynomial::support() const {
  ExponentSet s;
  for (const auto& [e, c] : terms_) s.push_back(e);
  return s;  // map order is already lexicographic
}

std::vector<int> Polynomial::vars() const {
  std::vector<int> v;
  for (int i = 0; i < n_; ++i)
    for (const auto& [e, c] : terms_)
      if (e[i] != 0) {
        v.push_back(i);
        break;
      }
  return v;
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = csdp::degree(terms_.begin()->first);
  for (const auto& [e, c] : terms_)
    if (csdp::degree(e) != d) return false;
  return true;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (o.n_ != n_) throw DimensionMismatch("polynomials in different variable counts");
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * mpq_class(-1); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (o.n_ != n_) throw DimensionMismatch("polynomials in different variable counts");
  Polynomial r(n_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) r.add_term(a + b, ca * cb);
  return r;
}

Polynomial Polynomial::operator*(const mpq_class& c) const {
  Polynomial r(n_);
  if (c == 0) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

Polynomial Polynomial::pow(int k) const {
  Polynomial r = constant(n_, 1);
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c.get_d()));
  return m;
}

mpq_class parse_rational(const std::string& s) {
  if (s.empty()) throw Error("empty number");
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      mpz_class num(s.substr(0, slash), 10), den(s.substr(slash + 1), 10);
      if (den == 0) throw Error("zero denominator in '" + s + "'");
      mpq_class q(num, den);
      q.canonicalize();
      return q;
    }
    // decimal with optional exponent, read exactly
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
    std::string digits;
    int scale = 0;
    bool any = false, dot = false;
    for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
      if (s[i] == '.' && !dot) {
        dot = true;
      } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
        digits += s[i];
        any = true;
        if (dot) --scale;
      } else {
        throw Error("bad number '" + s + "'");
      }
    }
    if (!any) throw Error("bad number '" + s + "'");
    if (i < s.size()) {
      std::string ex = s.substr(i + 1);
      if (ex.empty()) throw Error("bad number '" + s + "'");
      std::size_t used = 0;
      int e = std::stoi(ex, &used);
      if (used != ex.size()) throw Error("bad number '" + s + "'");
      scale += e;
    }
    mpq_class q{mpz_class(digits, 10)};
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(scale)));
    if (scale >= 0) q *= p10;
    else q /= p10;
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
  } catch (const std::invalid_argument&) {
    throw Error("bad number '" + s + "'");
  } catch (const std::out_of_range&) {
    throw Error("bad number '" + s + "'");
  }
}

Polynomial read_polynomial(std::istream& in, int n) {
  Polynomial p(std::max(n, 0));
  bool sized = n >= 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ss(line);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (!sized) {
      p = Polynomial(static_cast<int>(tok.size()) - 1);
      sized = true;
    }
    if (static_cast<int>(tok.size()) != p.n() + 1)
      throw ParseError("expected a coefficient and " + std::to_string(p.n()) + " exponents", lineno);
    mpq_class c;
    try {
      c = parse_rational(tok[0]);
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno);
    }
    Exponent ex(p.n());
    for (int i = 0; i < p.n(); ++i) {
      const std::string& t = tok[i + 1];
      if (t.empty() || !std::all_of(t.begin(), t.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
        throw ParseError("exponent must be a nonnegative integer, got '" + t + "'", lineno);
      ex[i] = std::stoi(t);
    }
    p.add_term(ex, c);
  }
  if (!sized) throw ParseError("no terms", 0);
  return p;
}

Polynomial read_polynomial_file(const std::string& path, int n) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path, 0);
  return read_polynomial(f, n);
}

Polynomial parse_polynomial(const std::string& text, int n) {
  std::istringstream ss(text);
  return read_polynomial(ss, n);
}

void write_polynomial(std::ostream& out, const Polynomial& p) {
  for (const auto& [e, c] : p.terms()) {
    out << c.get_str();
    for (int v : e) out << ' ' << v;
    out << '\n';
  }
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& [e, c] : p.terms()) {
    mpq_class a = abs(c);
    bool neg = c < 0;
    if (s.empty()) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    bool unit = a == 1 && degree(e) > 0;
    if (!unit) s += a.get_str();
    if (degree(e) > 0) s += (unit ? "" : "*") + monomial_string(e);
  }
  return s;
}

// Phase-one simplex over the rationals: is there λ ≥ 0 with Σλ_j = 1 and
// Σλ_j p_j = target? Points using a coordinate where target is 0 are dropped
// first, since all coordinates are nonnegative.
bool in_convex_hull(const ExponentSet& pts, const std::vector<mpq_class>& target) {
  const int n = static_cast<int>(target.size());
  std::vector<int> active;
  for (int i = 0; i < n; ++i) {
    if (target[i] < 0) return false;
    if (target[i] > 0) active.push_back(i);
  }
  std::vector<const Exponent*> cols;
  for (const auto& p : pts) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = target[i] != 0 || p[i] == 0;
    if (!ok) continue;
    bool equal = true;
    for (int i = 0; i < n && equal; ++i) equal = p[i] == target[i];
    if (equal) return true;
    cols.push_back(&p);
  }
  if (cols.empty()) return false;
  const int m = static_cast<int>(active.size()) + 1;
  const int N = static_cast<int>(cols.size());
  const int W = N + m + 1;  // structural, artificial, rhs
  std::vector<std::vector<mpq_class>> T(m + 1, std::vector<mpq_class>(W));
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < N; ++j) T[r][j] = r + 1 < m ? mpq_class((*cols[j])[active[r]]) : mpq_class(1);
    T[r][N + r] = 1;
    T[r][W - 1] = r + 1 < m ? target[active[r]] : mpq_class(1);
  }
  // objective row: minimize Σ artificials, written as reduced costs
  for (int j = 0; j < W; ++j) {
    if (j >= N && j < N + m) continue;
    mpq_class s = 0;
    for (int r = 0; r < m; ++r) s += T[r][j];
    T[m][j] = -s;
  }
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) basis[r] = N + r;
  while (true) {
    int enter = -1;
    for (int j = 0; j < N + m; ++j)
      if (T[m][j] < 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    mpq_class best;
    for (int r = 0; r < m; ++r) {
      if (T[r][enter] <= 0) continue;
      mpq_class ratio = T[r][W - 1] / T[r][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave < 0) break;  // cannot happen in phase one: objective is bounded below
    mpq_class piv = T[leave][enter];
    for (auto& v : T[leave]) v /= piv;
    for (int r = 0; r <= m; ++r) {
      if (r == leave || T[r][enter] == 0) continue;
      mpq_class f = T[r][enter];
      for (int j = 0; j < W; ++j) T[r][j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }
  return T[m][W - 1] == 0;
}

ExponentSet newton_basis(const Polynomial& f) {
  int deg = f.degree();
  if (deg < 0) return {};
  if (deg % 2 != 0) throw Error("Newton reduction needs an even degree, got " + std::to_string(deg));
  const int n = f.n();
  auto supp = f.support();
  int lo = deg, hi = 0;
  std::vector<int> cap(n, 0);
  for (const auto& a : supp) {
    lo = std::min(lo, csdp::degree(a));
    hi = std::max(hi, csdp::degree(a));
    for (int i = 0; i < n; ++i) cap[i] = std::max(cap[i], a[i]);
  }
  ExponentSet out;
  for (const auto& b : monomials_up_to(n, deg / 2)) {
    int d2 = 2 * csdp::degree(b);
    if (d2 < lo || d2 > hi) continue;
    bool box = true;
    for (int i = 0; i < n && box; ++i) box = 2 * b[i] <= cap[i];
    if (!box) continue;
    std::vector<mpq_class> t(n);
    for (int i = 0; i < n; ++i) t[i] = 2 * b[i];
    if (in_convex_hull(supp, t)) out.push_back(b);
  }
  return out;
}

}  // namespace csdp
