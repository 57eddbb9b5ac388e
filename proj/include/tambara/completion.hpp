#pragma once

#include <tambara/coeff.hpp>
#include <tambara/semiring.hpp>

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace tambara {

// Additive completion of a commutative semiring presented by a scalar model:
// elements are formal differences (pos, neg) with
//   (a+,a-) ~ (b+,b-)  <=>  a+ + b- + x = a- + b+ + x  for some x.
// The existential is decided by scanning (finite carriers) or dropped
// (cancellative carriers); anything else is refused.
enum class CompletionPolicy { FiniteScan, Cancellative };

template <typename Scalar>
class AdditiveCompletion {
 public:
  using scalar_type = typename Scalar::value_type;
  struct Elt {
    scalar_type pos, neg;
  };

  AdditiveCompletion(Scalar s, CompletionPolicy policy) : s_(std::move(s)), policy_(policy) {
    if (policy_ == CompletionPolicy::FiniteScan && !s_.enumerable())
      throw UnsupportedCarrierError(
          "additive completion: equality is undecidable on a non-enumerable, non-cancellative carrier");
  }

  Elt embed(scalar_type a) const { return {std::move(a), s_.zero()}; }
  Elt zero() const { return {s_.zero(), s_.zero()}; }
  Elt one() const { return {s_.one(), s_.zero()}; }
  Elt neg(const Elt& a) const { return {a.neg, a.pos}; }

  Elt add(const Elt& a, const Elt& b) const {
    return {s_.add(a.pos, b.pos), s_.add(a.neg, b.neg)};
  }

  Elt mul(const Elt& a, const Elt& b) const {
    return {s_.add(s_.mul(a.pos, b.pos), s_.mul(a.neg, b.neg)),
            s_.add(s_.mul(a.pos, b.neg), s_.mul(a.neg, b.pos))};
  }

  bool eq(const Elt& a, const Elt& b) const {
    scalar_type lhs = s_.add(a.pos, b.neg);
    scalar_type rhs = s_.add(a.neg, b.pos);
    if (policy_ == CompletionPolicy::Cancellative) return s_.eq(lhs, rhs);
    for (const auto& x : s_.all())
      if (s_.eq(s_.add(lhs, x), s_.add(rhs, x))) return true;
    return false;
  }

 private:
  Scalar s_;
  CompletionPolicy policy_;
};

// Table-backed completion of a finite semiring: the congruence and quotient
// are materialized, so the result is again a FinCommSemiring.
struct CompletedSemiring {
  FinCommSemiring hat;        // pairs (a+, a-) with the hS product
  Congruence relation;        // (a+,a-) ~ (b+,b-)
  FinCommSemiring completed;  // the quotient ring
  std::vector<int> embed_class;  // a -> class of (a, 0)

  int pair_index(int pos, int neg, int n) const { return pos * n + neg; }
};

inline CompletedSemiring additive_completion(const FinCommSemiring& s) {
  const int n = s.size;
  CompletedSemiring out;
  out.hat.size = n * n;
  out.hat.zero = s.zero * n + s.zero;
  out.hat.one = s.one * n + s.zero;
  out.hat.add_table.assign(out.hat.size * out.hat.size, 0);
  out.hat.mul_table.assign(out.hat.size * out.hat.size, 0);
  auto ix = [n](int p, int q) { return p * n + q; };
  for (int ap = 0; ap < n; ++ap)
    for (int am = 0; am < n; ++am)
      for (int bp = 0; bp < n; ++bp)
        for (int bm = 0; bm < n; ++bm) {
          int a = ix(ap, am), b = ix(bp, bm);
          out.hat.add_table[a * out.hat.size + b] = ix(s.add(ap, bp), s.add(am, bm));
          out.hat.mul_table[a * out.hat.size + b] =
              ix(s.add(s.mul(ap, bp), s.mul(am, bm)), s.add(s.mul(ap, bm), s.mul(am, bp)));
        }
  // the defining relation is already a congruence; compute its classes
  detail::DisjointSet ds(out.hat.size);
  for (int ap = 0; ap < n; ++ap)
    for (int am = 0; am < n; ++am)
      for (int bp = 0; bp < n; ++bp)
        for (int bm = 0; bm < n; ++bm) {
          bool related = false;
          for (int x = 0; x < n && !related; ++x)
            related = s.add(s.add(ap, bm), x) == s.add(s.add(am, bp), x);
          if (related) ds.merge(ix(ap, am), ix(bp, bm));
        }
  out.relation = detail::finish_congruence(ds, 0);
  out.completed = quotient(out.hat, out.relation);
  out.embed_class.resize(n);
  for (int a = 0; a < n; ++a) out.embed_class[a] = out.relation.class_of[ix(a, s.zero)];
  return out;
}

// ---------------------------------------------------------------------------
// Difference operators and polynomial-degree testing
// ---------------------------------------------------------------------------

// (delta[a]f)(x) = f(a+x) - f(x); iterated over a list of increments via the
// inclusion-exclusion expansion sum_{J <= I} (-1)^{|I\J|} f(sigma(J)+x).
// Dom needs addition; Cod needs an additively complete structure.
template <typename Dom, typename Cod, typename DomAdd, typename CodAdd, typename CodNeg, typename F>
Cod delta_iterated(const F& f, const std::vector<Dom>& increments, const Dom& base, DomAdd dadd,
                   CodAdd cadd, CodNeg cneg, const Cod& czero) {
  const std::size_t k = increments.size();
  Cod acc = czero;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Dom pt = base;
    int bits = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t{1} << i)) {
        pt = dadd(pt, increments[i]);
        ++bits;
      }
    Cod value = f(pt);
    bool negate = ((static_cast<int>(k) - bits) % 2) != 0;
    acc = cadd(acc, negate ? cneg(value) : value);
  }
  return acc;
}

// Degree test: evaluates delta[I,a]f on every supplied trial with |I| = n+1
// and reports the first nonzero witness.
template <typename Dom, typename Cod, typename DomAdd, typename CodAdd, typename CodNeg,
          typename CodEq, typename F>
std::optional<std::size_t> polynomial_degree_at_most(
    const F& f, int degree, const std::vector<std::pair<std::vector<Dom>, Dom>>& trials,
    DomAdd dadd, CodAdd cadd, CodNeg cneg, CodEq ceq, const Cod& czero) {
  for (std::size_t t = 0; t < trials.size(); ++t) {
    const auto& [incs, base] = trials[t];
    if (static_cast<int>(incs.size()) != degree + 1)
      throw PreconditionError("degree test: each trial needs exactly degree+1 increments");
    Cod d = delta_iterated<Dom, Cod>(f, incs, base, dadd, cadd, cneg, czero);
    if (!ceq(d, czero)) return t;
  }
  return std::nullopt;
}

}  // namespace tambara
