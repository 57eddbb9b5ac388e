#pragma once

#include <tambara/coeff.hpp>

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace tambara {

namespace detail {

class DisjointSet {
 public:
  explicit DisjointSet(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) const {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns true when the classes were distinct.
  bool merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  int size() const { return static_cast<int>(parent_.size()); }

 private:
  mutable std::vector<int> parent_;
};

}  // namespace detail

// Finite commutative monoid (the paper's "semigroup": commutative, associative,
// unital), given by a full addition table on {0..size-1}.
struct FinCommMonoid {
  int size = 0;
  std::vector<int> add_table;  // size*size
  int zero = 0;

  int add(int a, int b) const { return add_table[a * size + b]; }
};

// Finite commutative semiring: two unital commutative monoid structures with
// multiplication distributing over addition and 0 absorbing.
struct FinCommSemiring {
  int size = 0;
  std::vector<int> add_table;
  std::vector<int> mul_table;
  int zero = 0;
  int one = 1;

  int add(int a, int b) const { return add_table[a * size + b]; }
  int mul(int a, int b) const { return mul_table[a * size + b]; }

  FinCommMonoid additive() const { return FinCommMonoid{size, add_table, zero}; }
};

inline void validate_monoid(const FinCommMonoid& m) {
  const int n = m.size;
  if (n <= 0 || static_cast<int>(m.add_table.size()) != n * n)
    throw ValidationError("monoid: bad table shape");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int v = m.add(a, b);
      if (v < 0 || v >= n) throw ValidationError("monoid: entry out of range");
      if (v != m.add(b, a)) throw ValidationError("monoid: addition not commutative at (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  for (int a = 0; a < n; ++a)
    if (m.add(m.zero, a) != a) throw ValidationError("monoid: zero not an identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (m.add(m.add(a, b), c) != m.add(a, m.add(b, c)))
          throw ValidationError("monoid: addition not associative at (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
}

inline void validate_semiring(const FinCommSemiring& s) {
  validate_monoid(s.additive());
  validate_monoid(FinCommMonoid{s.size, s.mul_table, s.one});
  for (int a = 0; a < s.size; ++a) {
    if (s.mul(s.zero, a) != s.zero) throw ValidationError("semiring: 0*a != 0");
    for (int b = 0; b < s.size; ++b)
      for (int c = 0; c < s.size; ++c)
        if (s.mul(a, s.add(b, c)) != s.add(s.mul(a, b), s.mul(a, c)))
          throw ValidationError("semiring: distributivity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
  }
}

// Congruence on a finite carrier: a partition closed under the operations.
struct Congruence {
  std::vector<int> class_of;  // carrier point -> class id (dense, 0-based)
  int class_count = 0;
  int rounds = 0;  // operation-closure passes until the fixpoint

  bool related(int a, int b) const { return class_of[a] == class_of[b]; }
};

namespace detail {

inline Congruence finish_congruence(const DisjointSet& ds, int rounds) {
  Congruence c;
  c.class_of.assign(ds.size(), -1);
  c.rounds = rounds;
  for (int i = 0; i < ds.size(); ++i) {
    int r = ds.find(i);
    if (c.class_of[r] < 0) c.class_of[r] = c.class_count++;
    c.class_of[i] = c.class_of[r];
  }
  return c;
}

// Smallest partition containing `pairs` and closed under every operation
// table supplied (each table is size n*n).  Alternates transitive closure
// (implicit in the union-find) with operation-closure passes, mirroring the
// E(2k+1)/E(2k+2) tower.
inline Congruence closure(int n, const std::vector<std::pair<int, int>>& pairs,
                          const std::vector<const std::vector<int>*>& tables) {
  DisjointSet ds(n);
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw PreconditionError("congruence: pair out of range");
    ds.merge(a, b);
  }
  int rounds = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    ++rounds;
    for (const auto* t : tables) {
      for (int a = 0; a < n; ++a) {
        int ra = ds.find(a);
        if (ra == a) continue;
        // a ~ ra, so a op c ~ ra op c for every c
        for (int c = 0; c < n; ++c)
          if (ds.merge((*t)[a * n + c], (*t)[ra * n + c])) changed = true;
      }
    }
  }
  return finish_congruence(ds, rounds);
}

}  // namespace detail

inline Congruence congruence_closure(const FinCommMonoid& m,
                                     const std::vector<std::pair<int, int>>& pairs) {
  return detail::closure(m.size, pairs, {&m.add_table});
}

inline Congruence congruence_closure(const FinCommSemiring& s,
                                     const std::vector<std::pair<int, int>>& pairs) {
  return detail::closure(s.size, pairs, {&s.add_table, &s.mul_table});
}

inline FinCommMonoid quotient(const FinCommMonoid& m, const Congruence& e) {
  FinCommMonoid q;
  q.size = e.class_count;
  q.add_table.assign(q.size * q.size, -1);
  q.zero = e.class_of[m.zero];
  for (int a = 0; a < m.size; ++a)
    for (int b = 0; b < m.size; ++b) {
      int& slot = q.add_table[e.class_of[a] * q.size + e.class_of[b]];
      int v = e.class_of[m.add(a, b)];
      if (slot >= 0 && slot != v) throw ValidationError("quotient: relation is not a congruence");
      slot = v;
    }
  return q;
}

inline FinCommSemiring quotient(const FinCommSemiring& s, const Congruence& e) {
  FinCommSemiring q;
  q.size = e.class_count;
  q.add_table.assign(q.size * q.size, -1);
  q.mul_table.assign(q.size * q.size, -1);
  q.zero = e.class_of[s.zero];
  q.one = e.class_of[s.one];
  for (int a = 0; a < s.size; ++a)
    for (int b = 0; b < s.size; ++b) {
      int ca = e.class_of[a], cb = e.class_of[b];
      int& sa = q.add_table[ca * q.size + cb];
      int va = e.class_of[s.add(a, b)];
      if (sa >= 0 && sa != va) throw ValidationError("quotient: relation is not an additive congruence");
      sa = va;
      int& sm = q.mul_table[ca * q.size + cb];
      int vm = e.class_of[s.mul(a, b)];
      if (sm >= 0 && sm != vm) throw ValidationError("quotient: relation is not a multiplicative congruence");
      sm = vm;
    }
  return q;
}

// A finite-group action on a finite carrier, one permutation per group element.
struct CarrierAction {
  int group_order = 0;
  int carrier_size = 0;
  std::vector<int> perm;  // group_order * carrier_size

  int apply(int g, int x) const { return perm[g * carrier_size + x]; }
};

namespace detail {

inline std::vector<std::pair<int, int>> orbit_pairs(const CarrierAction& act) {
  std::vector<std::pair<int, int>> pairs;
  for (int g = 0; g < act.group_order; ++g)
    for (int x = 0; x < act.carrier_size; ++x) pairs.emplace_back(x, act.apply(g, x));
  return pairs;
}

inline void validate_action_preserves(const CarrierAction& act, const std::vector<int>& table, int n) {
  for (int g = 0; g < act.group_order; ++g)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (act.apply(g, table[a * n + b]) != table[act.apply(g, a) * n + act.apply(g, b)])
          throw PreconditionError("coinvariants: action is not by automorphisms");
}

}  // namespace detail

// Coinvariant quotient A_G: quotient by the smallest congruence containing
// {(m, g.m)}.  Semigroup mode closes under + only; semiring mode also under
// multiplication (and can be a strictly coarser quotient).
inline FinCommMonoid coinvariants(const FinCommMonoid& m, const CarrierAction& act) {
  if (act.carrier_size != m.size) throw PreconditionError("coinvariants: size mismatch");
  detail::validate_action_preserves(act, m.add_table, m.size);
  return quotient(m, congruence_closure(m, detail::orbit_pairs(act)));
}

inline FinCommSemiring coinvariants(const FinCommSemiring& s, const CarrierAction& act) {
  if (act.carrier_size != s.size) throw PreconditionError("coinvariants: size mismatch");
  detail::validate_action_preserves(act, s.add_table, s.size);
  detail::validate_action_preserves(act, s.mul_table, s.size);
  return quotient(s, congruence_closure(s, detail::orbit_pairs(act)));
}

// The same carrier read additively only (the coinvariant *semigroup*).
inline FinCommMonoid coinvariants_semigroup(const FinCommSemiring& s, const CarrierAction& act) {
  if (act.carrier_size != s.size) throw PreconditionError("coinvariants: size mismatch");
  detail::validate_action_preserves(act, s.add_table, s.size);
  return quotient(s.additive(), congruence_closure(s.additive(), detail::orbit_pairs(act)));
}

}  // namespace tambara
