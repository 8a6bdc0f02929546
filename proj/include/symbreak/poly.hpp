#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "symbreak/perm.hpp"

namespace symbreak {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Power product of variables: (var, exponent) factors, strictly ascending by
// var, no zero exponents. The empty factor list is the constant monomial 1.
struct Monomial {
  std::vector<std::pair<VarIndex, std::uint32_t>> factors;

  static Monomial one() { return {}; }

  static Monomial var(VarIndex v, std::uint32_t exp = 1) {
    Monomial m;
    if (exp > 0) m.factors.emplace_back(v, exp);
    return m;
  }

  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& [v, e] : factors) d += e;
    return d;
  }

  bool operator==(const Monomial& o) const { return factors == o.factors; }
};

// Graded lexicographic order used everywhere terms are stored or printed:
// higher total degree first; within a degree, lexicographic with
// x0 > x1 > ... (so x0^2 precedes x0*x1 precedes x1^2).
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const std::uint32_t da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db;
    std::size_t ia = 0, ib = 0;
    while (ia < a.factors.size() && ib < b.factors.size()) {
      const auto& [va, ea] = a.factors[ia];
      const auto& [vb, eb] = b.factors[ib];
      if (va != vb) return va < vb;  // lower index = higher lex weight
      if (ea != eb) return ea > eb;
      ++ia;
      ++ib;
    }
    return ia < a.factors.size();
  }
};

enum class PolyClass { Zero, Linear, HasQuadratic, Higher };

// Sparse multivariate polynomial over integer coefficients. Canonical form is
// maintained on every operation: no zero coefficients, terms kept in
// MonomialOrder. Immutable in practice -- all operations return new values.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, std::int64_t, MonomialOrder>;

  Polynomial() = default;

  static Polynomial zero() { return {}; }

  static Polynomial constant(std::int64_t c) {
    Polynomial p;
    if (c != 0) p.terms_[Monomial::one()] = c;
    return p;
  }

  static Polynomial var(VarIndex v, std::uint32_t exp = 1, std::int64_t coeff = 1) {
    Polynomial p;
    if (coeff != 0) p.terms_[Monomial::var(v, exp)] = coeff;
    return p;
  }

  static Polynomial from_terms(std::vector<std::pair<Monomial, std::int64_t>> terms) {
    Polynomial p;
    for (auto& [m, c] : terms) p.add_term(std::move(m), c);
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  // 0 for the zero polynomial; the map is degree-sorted so the front term is maximal.
  std::uint32_t degree() const {
    return terms_.empty() ? 0 : terms_.begin()->first.total_degree();
  }

  PolyClass classify() const {
    if (terms_.empty()) return PolyClass::Zero;
    const std::uint32_t d = degree();
    if (d <= 1) return PolyClass::Linear;
    if (d == 2) return PolyClass::HasQuadratic;
    return PolyClass::Higher;
  }

  std::set<VarIndex> variables() const {
    std::set<VarIndex> vars;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m.factors) vars.insert(v);
    return vars;
  }

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    Polynomial r = p;
    for (const auto& [m, c] : q.terms_) r.add_term(m, c);
    return r;
  }

  friend Polynomial operator-(const Polynomial& p) {
    Polynomial r;
    for (const auto& [m, c] : p.terms_) r.terms_[m] = -c;
    return r;
  }

  friend Polynomial operator-(const Polynomial& p, const Polynomial& q) {
    Polynomial r = p;
    for (const auto& [m, c] : q.terms_) r.add_term(m, -c);
    return r;
  }

  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    Polynomial r;
    for (const auto& [mp, cp] : p.terms_)
      for (const auto& [mq, cq] : q.terms_) r.add_term(mul_monomials(mp, mq), cp * cq);
    return r;
  }

  friend Polynomial operator*(std::int64_t c, const Polynomial& p) {
    Polynomial r;
    if (c != 0)
      for (const auto& [m, pc] : p.terms_) r.terms_[m] = c * pc;
    return r;
  }

  // Substitutes x_{perm(i)} for every variable x_i. Requires the permutation
  // domain to cover every variable of the polynomial.
  Polynomial apply_permutation(const Permutation& perm) const {
    Polynomial r;
    for (const auto& [m, c] : terms_) {
      Monomial nm;
      nm.factors.reserve(m.factors.size());
      for (const auto& [v, e] : m.factors) {
        if (v >= perm.size())
          throw std::out_of_range("variable x[" + std::to_string(v) +
                                  "] outside permutation domain of size " +
                                  std::to_string(perm.size()));
        nm.factors.emplace_back(perm(v), e);
      }
      std::sort(nm.factors.begin(), nm.factors.end());
      r.add_term(std::move(nm), c);
    }
    return r;
  }

  // Exact rational evaluation; the assignment must cover every variable.
  Rational evaluate(const std::vector<Rational>& assignment) const {
    Rational total = 0;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (const auto& [v, e] : m.factors) {
        if (v >= assignment.size())
          throw std::out_of_range("assignment missing variable x[" + std::to_string(v) + "]");
        for (std::uint32_t k = 0; k < e; ++k) t *= assignment[v];
      }
      total += t;
    }
    return total;
  }

  // Integer fast path for lattice points; exact for the small coefficients
  // and 0/1 domains this toolkit works with.
  std::int64_t evaluate_int(std::span<const int> assignment) const {
    std::int64_t total = 0;
    for (const auto& [m, c] : terms_) {
      std::int64_t t = c;
      for (const auto& [v, e] : m.factors) {
        if (v >= assignment.size())
          throw std::out_of_range("assignment missing variable x[" + std::to_string(v) + "]");
        for (std::uint32_t k = 0; k < e; ++k) t *= assignment[v];
      }
      total += t;
    }
    return total;
  }

  // Canonical text: terms in canonical order, each as an explicitly signed
  // integer coefficient followed by its factors, e.g. `+1 x[0]^2 -2 x[0]`.
  std::string render() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << ' ';
      first = false;
      os << (c < 0 ? '-' : '+') << (c < 0 ? -c : c);
      for (const auto& [v, e] : m.factors) {
        os << " x[" << v << ']';
        if (e > 1) os << '^' << e;
      }
    }
    return os.str();
  }

  static Polynomial parse(const std::string& text);

 private:
  void add_term(Monomial m, std::int64_t c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  static Monomial mul_monomials(const Monomial& a, const Monomial& b) {
    Monomial r;
    std::size_t ia = 0, ib = 0;
    while (ia < a.factors.size() || ib < b.factors.size()) {
      if (ib == b.factors.size() ||
          (ia < a.factors.size() && a.factors[ia].first < b.factors[ib].first)) {
        r.factors.push_back(a.factors[ia++]);
      } else if (ia == a.factors.size() || b.factors[ib].first < a.factors[ia].first) {
        r.factors.push_back(b.factors[ib++]);
      } else {
        r.factors.emplace_back(a.factors[ia].first,
                               a.factors[ia].second + b.factors[ib].second);
        ++ia;
        ++ib;
      }
    }
    return r;
  }

  TermMap terms_;
};

// Parses the canonical text produced by render(). Tokens are
// whitespace-separated; each term is a signed integer coefficient followed by
// zero or more `x[i]` or `x[i]^e` factors.
inline Polynomial Polynomial::parse(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  Polynomial result;
  std::int64_t coeff = 0;
  Monomial mono;
  bool in_term = false;

  auto flush = [&] {
    if (!in_term) return;
    std::sort(mono.factors.begin(), mono.factors.end());
    for (std::size_t i = 1; i < mono.factors.size(); ++i)
      if (mono.factors[i].first == mono.factors[i - 1].first)
        throw std::invalid_argument("repeated variable in monomial");
    result.add_term(std::move(mono), coeff);
    mono = Monomial::one();
    in_term = false;
  };

  while (is >> tok) {
    if (tok == "0" && !in_term && result.is_zero() && is.peek() == EOF) {
      return result;  // the zero polynomial renders as a bare "0"
    }
    if (tok[0] == '+' || tok[0] == '-' || (tok[0] >= '0' && tok[0] <= '9')) {
      flush();
      std::size_t pos = 0;
      coeff = std::stoll(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument("malformed coefficient: " + tok);
      in_term = true;
    } else if (tok.rfind("x[", 0) == 0) {
      if (!in_term) throw std::invalid_argument("factor without coefficient: " + tok);
      const std::size_t close = tok.find(']');
      if (close == std::string::npos) throw std::invalid_argument("malformed factor: " + tok);
      const VarIndex v = static_cast<VarIndex>(std::stoul(tok.substr(2, close - 2)));
      std::uint32_t exp = 1;
      if (close + 1 < tok.size()) {
        if (tok[close + 1] != '^') throw std::invalid_argument("malformed factor: " + tok);
        exp = static_cast<std::uint32_t>(std::stoul(tok.substr(close + 2)));
        if (exp == 0) throw std::invalid_argument("zero exponent in factor: " + tok);
      }
      mono.factors.emplace_back(v, exp);
    } else {
      throw std::invalid_argument("unexpected token: " + tok);
    }
  }
  flush();
  return result;
}

}  // namespace symbreak
