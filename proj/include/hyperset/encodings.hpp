#ifndef HYPERSET_ENCODINGS_HPP
#define HYPERSET_ENCODINGS_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>

#include "hyperset/kernel.hpp"

namespace hyperset {

/// Exact rational in lowest terms; zero is uniquely 0/1. Arithmetic is exact
/// on 64-bit numerator/denominator and throws OverflowError when a reduced
/// result no longer fits.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long num, long long den);
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design

  int sign() const { return num_ > 0 ? 1 : num_ < 0 ? -1 : 0; }
  /// Numerator magnitude (the natural m of the triple (m, n, sign)).
  unsigned long long num_magnitude() const;
  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator-() const;

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  /// "m/n", or just "m" when the denominator is 1.
  std::string to_string() const;

 private:
  long long num_;  // carries the sign
  long long den_;  // always positive
};

/// Multiset summary {value -> multiplicity}; counts are always positive.
class Histogram {
 public:
  void add(const Rational& value, std::uint64_t count = 1);
  const std::map<Rational, std::uint64_t>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::uint64_t total() const;

  bool operator==(const Histogram& o) const { return entries_ == o.entries_; }

 private:
  std::map<Rational, std::uint64_t> entries_;
};

/// The histogram of a finite multiset of rationals.
Histogram histogram_of(std::span<const Rational> values);

/// Von Neumann ordinal: 0 -> {}, n+1 -> n ∪ {n}.
SetValue nat_to_set(std::uint64_t n);
/// Inverse of nat_to_set; throws DecodeError if x is not such an ordinal.
std::uint64_t set_to_nat(const SetValue& x);

/// Kuratowski pair {{a},{a,b}}.
SetValue pair(const SetValue& a, const SetValue& b);
/// Inverse of pair; throws DecodeError if x is not a Kuratowski pair.
std::pair<SetValue, SetValue> unpair(const SetValue& x);

/// q as pair(sign, pair(m, n)) with sign = 0 for q >= 0 and 1 for q < 0,
/// m = |numerator|, n = denominator, all as von Neumann ordinals.
SetValue rat_to_set(const Rational& q);
/// Inverse of rat_to_set; rejects encodings that are not in lowest terms.
Rational set_to_rat(const SetValue& x);

/// { pair(value, count) : entries }. Injective on histograms.
SetValue histogram_to_set(const Histogram& h);

/// The unique set satisfying x = {x}: a single node with a self-loop.
SetValue quine_atom();

}  // namespace hyperset

#endif  // HYPERSET_ENCODINGS_HPP
