#pragma once

// Ordinal notations below epsilon_{Omega+1}.
//
// A code is one of
//   Sub(x)        an ordinal x < Omega, itself a Cantor normal form below eps_0
//   Omega         the order type of the ordinals of the universe
//   WPow(a)       omega^a with a > Omega
//   Sum(p1..pn)   p1 + ... + pn with n >= 2, every pi additively principal,
//                 p1 >= ... >= pn and p1 >= Omega
//
// omega^Omega = Omega in this coding, so WPow never carries the exponent Omega.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kpr/errors.hpp"

namespace kpr::ord {

struct CnfTerm;

/// Cantor normal form omega^e1*c1 + ... + omega^ek*ck, e1 > ... > ek, ci > 0.
/// The empty sum is zero.
struct Cnf {
  std::vector<CnfTerm> terms;

  static Cnf zero() { return {}; }
  static Cnf nat(std::uint64_t n);
  static Cnf omega();
  /// omega^e as a single term.
  static Cnf power(Cnf e);

  bool is_zero() const { return terms.empty(); }
  bool is_finite() const;
  /// Value of a finite CNF. Requires is_finite().
  std::uint64_t finite_value() const;
  /// omega^e with coefficient one.
  bool is_principal() const;

  friend bool operator==(const Cnf&, const Cnf&);
};

struct CnfTerm {
  Cnf exponent;
  std::uint64_t coeff = 1;

  friend bool operator==(const CnfTerm&, const CnfTerm&) = default;
};

std::strong_ordering compare(const Cnf& a, const Cnf& b);
bool valid(const Cnf& a);
Cnf add(const Cnf& a, const Cnf& b);
Cnf nat_sum(const Cnf& a, const Cnf& b);
/// k * a (left multiplication by a natural): scales only the finite part.
Cnf mul_left(std::uint64_t k, const Cnf& a);
/// Tree size: one per term plus the size of each exponent.
std::size_t size(const Cnf& a);

class OrdCode {
 public:
  enum class Kind : std::uint8_t { Sub, Omega, WPow, Sum };

  OrdCode() : kind_(Kind::Sub) {}

  static OrdCode sub(Cnf x);
  static OrdCode nat(std::uint64_t n) { return sub(Cnf::nat(n)); }
  static OrdCode zero() { return sub(Cnf::zero()); }
  static OrdCode omega();
  /// Raw constructors: no normalisation, possibly invalid. See validate_nf.
  static OrdCode wpow(OrdCode exponent);
  static OrdCode sum(std::vector<OrdCode> parts);

  Kind kind() const { return kind_; }
  bool is_sub() const { return kind_ == Kind::Sub; }
  bool is_zero() const { return kind_ == Kind::Sub && sub_.is_zero(); }
  const Cnf& sub_value() const { return sub_; }
  const OrdCode& exponent() const { return kids_.front(); }
  const std::vector<OrdCode>& parts() const { return kids_; }

  friend bool operator==(const OrdCode&, const OrdCode&) = default;

 private:
  Kind kind_;
  Cnf sub_;
  std::vector<OrdCode> kids_;
};

enum class Cmp : std::int8_t { Less = -1, Equal = 0, Greater = 1 };

/// True iff every node satisfies the normal-form invariants.
bool validate_nf(const OrdCode& a);

/// Total order on normal codes. Throws ValidationError on non-normal input.
Cmp cmp(const OrdCode& a, const OrdCode& b);
inline bool less(const OrdCode& a, const OrdCode& b) { return cmp(a, b) == Cmp::Less; }
inline bool less_eq(const OrdCode& a, const OrdCode& b) { return cmp(a, b) != Cmp::Greater; }

OrdCode add(const OrdCode& a, const OrdCode& b);
OrdCode nat_sum(const OrdCode& a, const OrdCode& b);
OrdCode omega_exp(const OrdCode& a);
/// omega_0(x) = x, omega_{k+1}(x) = omega^{omega_k(x)}.
OrdCode omega_tower(std::uint64_t n, const OrdCode& base);
/// a * n for a natural n (n-fold sum).
OrdCode mul_nat(const OrdCode& a, std::uint64_t n);
/// Omega * m.
OrdCode omega_times(std::uint64_t m);
/// k * x for x < Omega. Throws ValidationError for x >= Omega.
OrdCode mul_left_sub(std::uint64_t k, const OrdCode& x);
OrdCode succ(const OrdCode& a);
const OrdCode& max(const OrdCode& a, const OrdCode& b);

/// Additively principal: Omega, WPow, or Sub(omega^e).
bool is_principal(const OrdCode& a);
/// Tree size as used by the enumeration tests: Sub and Omega count one,
/// WPow and Sum count one plus their children.
std::size_t tree_size(const OrdCode& a);

std::string render(const Cnf& a);
std::string render(const OrdCode& a);

/// Parses `W`, naturals, `w`, `w^x`, `w_n(x)`, `+`, `#`, `*n`, parentheses.
OrdCode parse(std::string_view text);

}  // namespace kpr::ord
