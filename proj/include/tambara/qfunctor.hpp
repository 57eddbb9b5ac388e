#pragma once

#include <tambara/burnside.hpp>
#include <tambara/monoid_burnside.hpp>
#include <tambara/semiring.hpp>

#include <vector>

namespace tambara {

// q(M)(U) for a transitive U: the value semigroup of M at U modulo the
// smallest congruence collapsing every transfer from a non-isomorphic orbit
// over U to zero.
struct QFunctorResult {
  FinCommMonoid value_monoid;  // M(U) as a table
  Congruence relation;
  FinCommMonoid quotient_monoid;
  std::vector<int> value_class;  // index into enumerate(M, U) -> quotient class
};

template <FiniteMackeyModel M>
QFunctorResult q_functor(const M& m, const SubgroupSystem& sys, const GSet& u,
                         std::uint64_t cap = kDefaultCap) {
  if (orbits_of(u).size() != 1) throw PreconditionError("q: U must be transitive");
  auto vals = m.enumerate(u, cap);
  auto index_of = [&](const typename M::value_type& v) {
    for (std::size_t i = 0; i < vals.size(); ++i)
      if (m.equal(u, vals[i], v)) return static_cast<int>(i);
    throw PreconditionError("q: value not found in enumeration");
  };
  FinCommMonoid table;
  table.size = static_cast<int>(vals.size());
  table.zero = index_of(m.zero(u));
  table.add_table.assign(table.size * table.size, 0);
  for (int i = 0; i < table.size; ++i)
    for (int j = 0; j < table.size; ++j)
      table.add_table[i * table.size + j] = index_of(m.add(u, vals[i], vals[j]));

  std::vector<std::pair<int, int>> pairs;
  for (int cls = 0; cls < sys.size(); ++cls) {
    GSet orb = orbit_gset(sys.group, sys.reps[cls]);
    if (orb.size == u.size) continue;  // maps between equal-size orbits are isomorphisms
    for (const auto& f : enumerate_gmaps(orb, u, cap))
      for (const auto& mv : m.enumerate(orb, cap))
        pairs.emplace_back(index_of(m.transfer(f, mv)), table.zero);
  }
  QFunctorResult out;
  out.value_monoid = table;
  out.relation = congruence_closure(table, pairs);
  out.quotient_monoid = quotient(table, out.relation);
  out.value_class = out.relation.class_of;
  return out;
}

// q of the Burnside functor, computed through the section count: the class of
// [W -> U] in q(A)(U) is |Sec| = the number of orbits of W carried
// isomorphically onto U.
inline Int burnside_section_count(const BurnsideCarrier& a, const GSet& u,
                                  const BurnsideElement& e) {
  Int count = 0;
  for (auto& [oc, mult] : e.orbits) {
    GSet orb = orbit_gset(a.group(), a.system().reps[oc.first]);
    if (orb.size == u.size) count += mult;
  }
  return count;
}

}  // namespace tambara
