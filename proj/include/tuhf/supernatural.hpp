#pragma once

// Supernatural numbers: formal products of primes with exponents in
// N u {inf}. Only finitely supported values are representable.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tuhf/common.hpp"

namespace tuhf {

class Exponent {
 public:
  constexpr Exponent() = default;

  static constexpr Exponent finite(std::uint64_t v) { return Exponent(false, v); }
  static constexpr Exponent infinite() { return Exponent(true, 0); }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_zero() const { return !infinite_ && value_ == 0; }
  // Finite value; throws when infinite.
  std::uint64_t value() const;

  friend Exponent operator+(Exponent a, Exponent b);
  friend constexpr bool operator==(Exponent a, Exponent b) = default;
  friend std::strong_ordering operator<=>(Exponent a, Exponent b);

 private:
  constexpr Exponent(bool inf, std::uint64_t v) : infinite_(inf), value_(v) {}

  bool infinite_ = false;
  std::uint64_t value_ = 0;
};

class SupernaturalNumber {
 public:
  SupernaturalNumber() = default;

  // Grammar: term ("*" term)*, term = prime "^" (nat | "inf") | prime.
  // The literal "1" denotes the empty product.
  static SupernaturalNumber parse(std::string_view text);

  // Exact factorization of an ordinary positive integer.
  static SupernaturalNumber from_integer(std::uint64_t n);

  // Multiplies in p^e. p must be prime.
  void absorb(std::uint64_t p, Exponent e);

  Exponent exponent(std::uint64_t p) const;
  const std::map<std::uint64_t, Exponent>& support() const { return support_; }
  bool empty() const { return support_.empty(); }

  // Every finite exponent becomes infinite: the supernatural number
  // of a ratio repeated forever.
  SupernaturalNumber infinite_power() const;

  // Canonical form: primes ascending, "^inf" for infinity, "^1" omitted.
  std::string to_string() const;

  friend bool operator==(const SupernaturalNumber&, const SupernaturalNumber&) = default;

 private:
  std::map<std::uint64_t, Exponent> support_;
};

SupernaturalNumber multiply(const SupernaturalNumber& a, const SupernaturalNumber& b);

std::set<std::uint64_t> infinite_primes(const SupernaturalNumber& a);

std::size_t common_infinite_count(const SupernaturalNumber& s, const SupernaturalNumber& t);

// Positive rational kept in lowest terms.
struct Rational {
  BigInt num = 1;
  BigInt den = 1;

  std::string to_string() const;
  Rational inverse() const { return {den, num}; }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// A positive rational r with s_phi = r * s_psi and t_phi = r^-1 * t_psi,
// choosing exponent 0 wherever r is unconstrained. Empty when no such r
// exists.
std::optional<Rational> rational_pair_witness(const SupernaturalNumber& s_phi,
                                              const SupernaturalNumber& t_phi,
                                              const SupernaturalNumber& s_psi,
                                              const SupernaturalNumber& t_psi);

bool is_prime(std::uint64_t n);

// Prime factorization by trial division, primes ascending.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
std::vector<std::pair<std::uint64_t, unsigned>> factorize(const BigInt& n);

}  // namespace tuhf
