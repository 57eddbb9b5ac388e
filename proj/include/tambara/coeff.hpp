#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace tambara {

// Exact coefficient arithmetic. Everything downstream (ghost solves, Witt
// polynomials, Burnside multiplicities) assumes these never overflow, so the
// integer and rational carriers are arbitrary precision.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct UnsupportedCarrierError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SizeCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Default enumeration cap: aborts section/term-system searches that would
// produce more candidates than this.
inline constexpr std::uint64_t kDefaultCap = 1'000'000;

template <typename R>
R ring_pow(R base, std::uint64_t e) {
  R acc{1};
  while (e) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

// Exact division by a positive integer; nullopt when not divisible.
inline std::optional<Int> try_divide(const Int& a, const Int& d) {
  if (d == 0) return std::nullopt;
  Int q = a / d;
  if (q * d != a) return std::nullopt;
  return q;
}

inline std::optional<Rational> try_divide(const Rational& a, const Int& d) {
  if (d == 0) return std::nullopt;
  return Rational(a / Rational(d));
}

inline std::string to_string(const Int& v) { return v.str(); }

}  // namespace tambara
