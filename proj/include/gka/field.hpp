#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "gka/errors.hpp"

namespace gka {

// A field is a small value object; scalars are plain values and all
// arithmetic goes through the field so GF(p) can carry a runtime p.
template <class F>
concept ScalarField = std::equality_comparable<F> &&
    requires(const F f, const typename F::value_type a,
             const typename F::value_type b, std::int64_t n,
             std::string_view text) {
      typename F::value_type;
      { f.zero() } -> std::same_as<typename F::value_type>;
      { f.one() } -> std::same_as<typename F::value_type>;
      { f.from_int(n) } -> std::same_as<typename F::value_type>;
      { f.add(a, b) } -> std::same_as<typename F::value_type>;
      { f.sub(a, b) } -> std::same_as<typename F::value_type>;
      { f.mul(a, b) } -> std::same_as<typename F::value_type>;
      { f.div(a, b) } -> std::same_as<typename F::value_type>;
      { f.neg(a) } -> std::same_as<typename F::value_type>;
      { f.is_zero(a) } -> std::same_as<bool>;
      { f.eq(a, b) } -> std::same_as<bool>;
      { f.to_string(a) } -> std::same_as<std::string>;
      { f.parse(text) } -> std::same_as<typename F::value_type>;
      { f.name() } -> std::same_as<std::string>;
    };

/// The rationals, exact, always in lowest terms with positive denominator.
class Rationals {
 public:
  using value_type = boost::multiprecision::cpp_rational;

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type from_int(std::int64_t n) const { return value_type(n); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type div(const value_type& a, const value_type& b) const {
    if (b == 0) throw PreconditionError("division by zero in Q");
    return a / b;
  }
  value_type neg(const value_type& a) const { return -a; }
  bool is_zero(const value_type& a) const { return a == 0; }
  bool eq(const value_type& a, const value_type& b) const { return a == b; }

  std::string to_string(const value_type& a) const {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    const auto den = denominator(a);
    if (den == 1) return numerator(a).str();
    return numerator(a).str() + "/" + den.str();
  }

  value_type parse(std::string_view text) const {
    using boost::multiprecision::cpp_int;
    try {
      const auto slash = text.find('/');
      if (slash == std::string_view::npos) return value_type(cpp_int(std::string(text)));
      cpp_int num(std::string(text.substr(0, slash)));
      cpp_int den(std::string(text.substr(slash + 1)));
      if (den == 0) throw SchemaError("zero denominator in rational '" + std::string(text) + "'");
      if (den < 0) {
        num = -num;
        den = -den;
      }
      return value_type(num, den);
    } catch (const std::runtime_error& e) {
      if (dynamic_cast<const SchemaError*>(&e) != nullptr) throw;
      throw SchemaError("not a rational number: '" + std::string(text) + "'");
    }
  }

  std::string name() const { return "Q"; }
  friend bool operator==(const Rationals&, const Rationals&) = default;
};

/// The prime field GF(p); elements are residues in [0, p).
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t p = 101) : p_(p) {
    if (!is_prime(p)) throw PreconditionError("GF(p) needs a prime p, got " + std::to_string(p));
  }

  std::uint32_t characteristic() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1 % p_; }
  value_type from_int(std::int64_t n) const {
    const auto p = static_cast<std::int64_t>(p_);
    return static_cast<value_type>(((n % p) + p) % p);
  }
  value_type add(value_type a, value_type b) const {
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<value_type>(s >= p_ ? s - p_ : s);
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (p_ - b); }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((std::uint64_t{a} * b) % p_);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const {
    if (a == 0) throw PreconditionError("division by zero in GF(" + std::to_string(p_) + ")");
    // a^(p-2)
    std::uint64_t result = 1, base = a, e = p_ - 2;
    while (e > 0) {
      if (e & 1U) result = result * base % p_;
      base = base * base % p_;
      e >>= 1U;
    }
    return static_cast<value_type>(result);
  }
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
  bool is_zero(value_type a) const { return a == 0; }
  bool eq(value_type a, value_type b) const { return a == b; }

  std::string to_string(value_type a) const { return std::to_string(a); }
  value_type parse(std::string_view text) const {
    // Accept "a" or "a/b" so files written over Q with small entries load over GF(p).
    const Rationals q;
    const auto r = q.parse(text);
    using boost::multiprecision::cpp_int;
    const cpp_int num = boost::multiprecision::numerator(r);
    const cpp_int den = boost::multiprecision::denominator(r);
    const cpp_int pp = p_;
    auto reduce = [&](const cpp_int& x) {
      cpp_int m = x % pp;
      if (m < 0) m += pp;
      return static_cast<value_type>(m.convert_to<std::uint64_t>());
    };
    const value_type d = reduce(den);
    if (d == 0) throw SchemaError("denominator divisible by p in '" + std::string(text) + "'");
    return div(reduce(num), d);
  }

  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }
  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  static bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; std::uint64_t{d} * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }

  std::uint32_t p_;
};

static_assert(ScalarField<Rationals>);
static_assert(ScalarField<PrimeField>);

}  // namespace gka
