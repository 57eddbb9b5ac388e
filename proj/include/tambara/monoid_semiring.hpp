#pragma once

#include <tambara/coeff.hpp>
#include <tambara/semiring.hpp>

#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace tambara {

// Element of the monoid semiring Z[M] for a finite commutative monoid M:
// a finite-support map (monoid element index) -> coefficient, with
// [a][b] = [a+b].  Integer coefficients make the additive completion free.
struct MonoidSemiringElement {
  const FinCommMonoid* monoid = nullptr;
  std::map<int, Int> coeffs;  // nonzero entries only

  MonoidSemiringElement() = default;
  explicit MonoidSemiringElement(const FinCommMonoid& m) : monoid(&m) {}

  static MonoidSemiringElement basis(const FinCommMonoid& m, int elem, Int c = Int(1)) {
    MonoidSemiringElement r(m);
    if (c != 0) r.coeffs[elem] = std::move(c);
    return r;
  }

  static MonoidSemiringElement unit(const FinCommMonoid& m) { return basis(m, m.zero); }

  void add_term(int elem, const Int& c) {
    auto it = coeffs.find(elem);
    if (it == coeffs.end()) {
      if (c != 0) coeffs[elem] = c;
      return;
    }
    it->second += c;
    if (it->second == 0) coeffs.erase(it);
  }

  MonoidSemiringElement operator+(const MonoidSemiringElement& o) const {
    MonoidSemiringElement r = *this;
    if (!r.monoid) r.monoid = o.monoid;
    for (const auto& [e, c] : o.coeffs) r.add_term(e, c);
    return r;
  }

  MonoidSemiringElement operator-() const {
    MonoidSemiringElement r = *this;
    for (auto& [e, c] : r.coeffs) c = -c;
    return r;
  }

  MonoidSemiringElement operator-(const MonoidSemiringElement& o) const { return *this + (-o); }

  MonoidSemiringElement operator*(const MonoidSemiringElement& o) const {
    MonoidSemiringElement r;
    r.monoid = monoid ? monoid : o.monoid;
    for (const auto& [ea, ca] : coeffs)
      for (const auto& [eb, cb] : o.coeffs)
        r.add_term(r.monoid->add_table[ea * r.monoid->size + eb], ca * cb);
    return r;
  }

  bool operator==(const MonoidSemiringElement& o) const { return coeffs == o.coeffs; }
  bool operator!=(const MonoidSemiringElement& o) const { return !(*this == o); }

  bool is_zero() const { return coeffs.empty(); }

  std::string str() const {
    if (coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : coeffs) {
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      first = false;
      Int a = c < 0 ? Int(-c) : c;
      if (a != 1) os << a;
      os << "[" << e << "]";
    }
    return os.str();
  }
};

// The <k>-power: (sum n_i [m_i])^<k> = sum n_i [k.m_i].
inline MonoidSemiringElement bracket_power(const MonoidSemiringElement& a, std::uint64_t k) {
  MonoidSemiringElement r;
  r.monoid = a.monoid;
  for (const auto& [e, c] : a.coeffs) {
    int m = a.monoid->zero;
    for (std::uint64_t i = 0; i < k; ++i) m = a.monoid->add_table[m * a.monoid->size + e];
    r.add_term(m, c);
  }
  return r;
}

inline std::optional<MonoidSemiringElement> try_divide(const MonoidSemiringElement& a, const Int& d) {
  MonoidSemiringElement r;
  r.monoid = a.monoid;
  for (const auto& [e, c] : a.coeffs) {
    auto q = try_divide(c, d);
    if (!q) return std::nullopt;
    r.add_term(e, *q);
  }
  return r;
}

inline bool congruent_mod(const MonoidSemiringElement& a, const MonoidSemiringElement& b, const Int& p) {
  MonoidSemiringElement d = a - b;
  for (const auto& [e, c] : d.coeffs)
    if (c % p != 0) return false;
  return true;
}

}  // namespace tambara
