#include "hyperset/encodings.hpp"

#include <limits>
#include <mutex>
#include <numeric>
#include <vector>

namespace hyperset {

namespace {

using Wide = __int128;

long long narrow(Wide v, const char* what) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
    throw OverflowError(std::string(what) + ": rational arithmetic overflow");
  return static_cast<long long>(v);
}

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational reduced(Wide num, Wide den, const char* what) {
  if (den == 0) throw Error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Wide g = num == 0 ? den : wide_gcd(num, den);
  return Rational(narrow(num / g, what), narrow(den / g, what));
}

}  // namespace

Rational::Rational(long long num, long long den) : num_(num), den_(den) {
  if (den_ == 0) throw Error("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const long long g = num_ == 0 ? den_ : std::gcd(num_ < 0 ? -num_ : num_, den_);
  num_ /= g;
  den_ /= g;
}

unsigned long long Rational::num_magnitude() const {
  return num_ < 0 ? static_cast<unsigned long long>(-(num_ + 1)) + 1
                  : static_cast<unsigned long long>(num_);
}

Rational Rational::operator+(const Rational& o) const {
  return reduced(Wide(num_) * o.den_ + Wide(o.num_) * den_, Wide(den_) * o.den_, "+");
}

Rational Rational::operator-(const Rational& o) const {
  return reduced(Wide(num_) * o.den_ - Wide(o.num_) * den_, Wide(den_) * o.den_, "-");
}

Rational Rational::operator*(const Rational& o) const {
  return reduced(Wide(num_) * o.num_, Wide(den_) * o.den_, "*");
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

bool Rational::operator<(const Rational& o) const {
  return Wide(num_) * o.den_ < Wide(o.num_) * den_;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

void Histogram::add(const Rational& value, std::uint64_t count) {
  if (count == 0) return;
  entries_[value] += count;
}

std::uint64_t Histogram::total() const {
  std::uint64_t sum = 0;
  for (const auto& [value, count] : entries_) sum += count;
  return sum;
}

Histogram histogram_of(std::span<const Rational> values) {
  Histogram h;
  for (const Rational& v : values) h.add(v);
  return h;
}

SetValue nat_to_set(std::uint64_t n) {
  // ordinals nest (each contains every smaller one), so cache the chain
  static std::mutex mutex;
  static std::vector<SetValue> cache{make_set({})};
  std::lock_guard<std::mutex> lock(mutex);
  while (cache.size() <= n)
    cache.push_back(make_set(std::span<const SetValue>(cache.data(), cache.size())));
  return cache[n];
}

std::uint64_t set_to_nat(const SetValue& x) {
  // The canonical form of the ordinal n has node 0 (the point) with children
  // 1..n and node i >= 1 (the ordinal i-1) with children 1..i-1: the rank
  // pass orders ordinals by value. Checking that shape decodes without
  // rebuilding the encoder's output.
  const std::uint64_t n = x.children_ids(0).size();
  if (x.node_count() != n + 1) throw DecodeError("set_to_nat: not a von Neumann ordinal");
  for (NodeId i = 0; i < x.node_count(); ++i) {
    const auto& kids = x.children_ids(i);
    const std::size_t expected = i == 0 ? n : i - 1;
    if (kids.size() != expected) throw DecodeError("set_to_nat: not a von Neumann ordinal");
    for (std::size_t k = 0; k < kids.size(); ++k)
      if (kids[k] != k + 1) throw DecodeError("set_to_nat: not a von Neumann ordinal");
  }
  return n;
}

SetValue pair(const SetValue& a, const SetValue& b) {
  return make_set({make_set({a}), make_set({a, b})});
}

std::pair<SetValue, SetValue> unpair(const SetValue& x) {
  const std::vector<SetValue> outer = children(x);
  if (outer.size() == 1) {
    // {{a}} is the collapsed pair (a, a)
    const std::vector<SetValue> inner = children(outer[0]);
    if (inner.size() != 1) throw DecodeError("unpair: not a Kuratowski pair");
    return {inner[0], inner[0]};
  }
  if (outer.size() != 2) throw DecodeError("unpair: not a Kuratowski pair");
  std::vector<SetValue> c0 = children(outer[0]);
  std::vector<SetValue> c1 = children(outer[1]);
  if (c0.size() > c1.size()) std::swap(c0, c1);
  if (c0.size() != 1 || c1.size() != 2) throw DecodeError("unpair: not a Kuratowski pair");
  const SetValue& first = c0[0];
  if (first == c1[0]) return {first, c1[1]};
  if (first == c1[1]) return {first, c1[0]};
  throw DecodeError("unpair: not a Kuratowski pair");
}

SetValue rat_to_set(const Rational& q) {
  const SetValue sign_code = nat_to_set(q.sign() < 0 ? 1 : 0);
  return pair(sign_code, pair(nat_to_set(q.num_magnitude()), nat_to_set(q.den())));
}

Rational set_to_rat(const SetValue& x) {
  const auto [sign_code, magnitude] = unpair(x);
  const std::uint64_t sign = set_to_nat(sign_code);
  if (sign > 1) throw DecodeError("set_to_rat: sign code must be 0 or 1");
  const auto [m_set, n_set] = unpair(magnitude);
  const std::uint64_t m = set_to_nat(m_set);
  const std::uint64_t n = set_to_nat(n_set);
  constexpr std::uint64_t kMax = std::numeric_limits<long long>::max();
  if (n == 0) throw DecodeError("set_to_rat: zero denominator");
  if (m > kMax || n > kMax) throw DecodeError("set_to_rat: out of range");
  if (std::gcd(m, n) != 1) throw DecodeError("set_to_rat: not in lowest terms");
  if (sign == 1 && m == 0) throw DecodeError("set_to_rat: negative zero");
  const long long num = static_cast<long long>(m);
  return Rational(sign == 1 ? -num : num, static_cast<long long>(n));
}

SetValue histogram_to_set(const Histogram& h) {
  std::vector<SetValue> elems;
  elems.reserve(h.entries().size());
  for (const auto& [value, count] : h.entries())
    elems.push_back(pair(rat_to_set(value), nat_to_set(count)));
  return make_set(elems);
}

SetValue quine_atom() {
  SetGraph g(1);
  g.add_edge(0, 0);
  return canon(g, 0);
}

}  // namespace hyperset
