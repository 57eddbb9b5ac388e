#pragma once

#include <tambara/coeff.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace tambara {

// Multivariate polynomial with exact coefficients, stored as a sorted map
// from exponent vectors to nonzero coefficients.  Exponent vectors are
// normalized by stripping trailing zeros, so x0 has the same key in any
// number of ambient variables.
template <typename C = Int>
class Polynomial {
 public:
  using Monomial = std::vector<unsigned>;

  Polynomial() = default;
  explicit Polynomial(C c) {
    if (!(c == C{0})) terms_[{}] = std::move(c);
  }

  static Polynomial variable(unsigned idx, unsigned power = 1) {
    Polynomial p;
    if (power == 0) return Polynomial(C{1});
    Monomial m(idx + 1, 0);
    m[idx] = power;
    p.terms_[std::move(m)] = C{1};
    return p;
  }

  static Polynomial constant(C c) { return Polynomial(std::move(c)); }

  bool is_zero() const { return terms_.empty(); }

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial operator+(const Polynomial& o) const {
    Polynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

  Polynomial operator*(const Polynomial& o) const {
    Polynomial r;
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) {
        Monomial m(std::max(ma.size(), mb.size()), 0);
        for (std::size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
        for (std::size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
        normalize(m);
        r.add_term(m, ca * cb);
      }
    return r;
  }

  const std::map<Monomial, C>& terms() const { return terms_; }

  // Substitutes values (one per variable index) in an arbitrary commutative
  // ring; coefficients are mapped through `embed`.
  template <typename R, typename Embed>
  R evaluate(const std::vector<R>& values, Embed embed) const {
    R acc = embed(C{0});
    for (const auto& [m, c] : terms_) {
      R t = embed(c);
      for (std::size_t i = 0; i < m.size(); ++i)
        for (unsigned k = 0; k < m[i]; ++k) t = t * values.at(i);
      acc = acc + t;
    }
    return acc;
  }

  std::optional<Polynomial> divide_exact(const Int& d) const {
    Polynomial r;
    for (const auto& [m, c] : terms_) {
      auto q = try_divide(c, d);
      if (!q) return std::nullopt;
      if (!(*q == C{0})) r.terms_[m] = *q;
    }
    return r;
  }

  bool all_coefficients_integral() const {
    if constexpr (std::is_same_v<C, Rational>) {
      for (const auto& [m, c] : terms_)
        if (boost::multiprecision::denominator(c) != 1) return false;
    }
    return true;
  }

  // Rendering with a caller-supplied variable namer.
  template <typename Namer>
  std::string str(Namer name) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::ostringstream mono;
      bool any = false;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (any) mono << "*";
        mono << name(static_cast<unsigned>(i));
        if (m[i] > 1) mono << "^" << m[i];
        any = true;
      }
      C abs_c = c < C{0} ? C(-c) : c;
      if (!first) os << (c < C{0} ? " - " : " + ");
      else if (c < C{0}) os << "-";
      first = false;
      if (!any)
        os << abs_c;
      else if (abs_c == C{1})
        os << mono.str();
      else
        os << abs_c << "*" << mono.str();
    }
    return os.str();
  }

 private:
  static void normalize(Monomial& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
  }

  void add_term(const Monomial& m, const C& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!(c == C{0})) terms_[m] = c;
      return;
    }
    it->second = it->second + c;
    if (it->second == C{0}) terms_.erase(it);
  }

  std::map<Monomial, C> terms_;
};

template <typename C>
std::optional<Polynomial<C>> try_divide(const Polynomial<C>& p, const Int& d) {
  return p.divide_exact(d);
}

}  // namespace tambara
