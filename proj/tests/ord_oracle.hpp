#pragma once

// Test-only reference model for ordinal codes: every code is converted to a
// Cantor normal form to base Omega,
//     alpha = Omega^g1 * d1 + ... + Omega^gk * dk,   g1 > ... > gk,  0 < di < Omega,
// with the sub-Omega coefficients held in a separate, minimal CNF. Nothing here
// calls the library's comparison or arithmetic.

#include <compare>
#include <functional>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "kpr/ord.hpp"

namespace oracle {

struct Small;  // sub-Omega value, CNF base omega
struct SmallTerm;
struct Small {
  std::vector<SmallTerm> terms;
};
struct SmallTerm {
  Small exp;
  std::uint64_t coeff;
};

inline std::strong_ordering small_cmp(const Small& a, const Small& b) {
  for (std::size_t i = 0; i < a.terms.size() && i < b.terms.size(); ++i) {
    if (auto c = small_cmp(a.terms[i].exp, b.terms[i].exp); c != 0) return c;
    if (auto c = a.terms[i].coeff <=> b.terms[i].coeff; c != 0) return c;
  }
  return a.terms.size() <=> b.terms.size();
}

inline Small small_add(const Small& a, const Small& b) {
  if (b.terms.empty()) return a;
  Small out;
  for (const auto& t : a.terms) {
    auto c = small_cmp(t.exp, b.terms[0].exp);
    if (c < 0) break;
    if (c == 0) {
      out.terms.push_back({t.exp, t.coeff + b.terms[0].coeff});
      out.terms.insert(out.terms.end(), b.terms.begin() + 1, b.terms.end());
      return out;
    }
    out.terms.push_back(t);
  }
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

inline Small from_cnf(const kpr::ord::Cnf& c) {
  Small s;
  for (const auto& t : c.terms) s.terms.push_back({from_cnf(t.exponent), t.coeff});
  return s;
}

inline bool small_is_nat(const Small& s, std::uint64_t* n) {
  if (s.terms.empty()) {
    *n = 0;
    return true;
  }
  if (s.terms.size() == 1 && s.terms[0].exp.terms.empty()) {
    *n = s.terms[0].coeff;
    return true;
  }
  return false;
}

struct Big;
struct BigTerm;
struct Big {
  std::vector<BigTerm> terms;
};
struct BigTerm {
  Big exp;
  Small coeff;
};

inline std::strong_ordering big_cmp(const Big& a, const Big& b) {
  for (std::size_t i = 0; i < a.terms.size() && i < b.terms.size(); ++i) {
    if (auto c = big_cmp(a.terms[i].exp, b.terms[i].exp); c != 0) return c;
    if (auto c = small_cmp(a.terms[i].coeff, b.terms[i].coeff); c != 0) return c;
  }
  return a.terms.size() <=> b.terms.size();
}

inline Big big_nat(std::uint64_t n) {
  Big b;
  if (n > 0) b.terms.push_back({Big{}, Small{{SmallTerm{Small{}, n}}}});
  return b;
}

inline Big big_add(const Big& a, const Big& b) {
  if (b.terms.empty()) return a;
  Big out;
  for (const auto& t : a.terms) {
    auto c = big_cmp(t.exp, b.terms[0].exp);
    if (c < 0) break;
    if (c == 0) {
      out.terms.push_back({t.exp, small_add(t.coeff, b.terms[0].coeff)});
      out.terms.insert(out.terms.end(), b.terms.begin() + 1, b.terms.end());
      return out;
    }
    out.terms.push_back(t);
  }
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

// -1 + g for g >= 1.
inline Big left_pred(const Big& g) {
  if (g.terms.size() == 1 && g.terms[0].exp.terms.empty()) {
    std::uint64_t n = 0;
    if (small_is_nat(g.terms[0].coeff, &n)) return big_nat(n - 1);
  }
  return g;
}

inline Big value(const kpr::ord::OrdCode& a) {
  using K = kpr::ord::OrdCode::Kind;
  switch (a.kind()) {
    case K::Sub: {
      Big b;
      if (!a.sub_value().is_zero()) b.terms.push_back({Big{}, from_cnf(a.sub_value())});
      return b;
    }
    case K::Omega:
      return Big{{BigTerm{big_nat(1), Small{{SmallTerm{Small{}, 1}}}}}};
    case K::WPow: {
      // exponent = Omega*g + d  =>  omega^exponent = Omega^g * omega^d
      Big e = value(a.exponent());
      Big g;
      Small d;
      for (const auto& t : e.terms) {
        if (t.exp.terms.empty())
          d = t.coeff;
        else
          g.terms.push_back({left_pred(t.exp), t.coeff});
      }
      Small coeff{{SmallTerm{d, 1}}};
      return Big{{BigTerm{g, coeff}}};
    }
    case K::Sum: {
      Big acc;
      for (const auto& p : a.parts()) acc = big_add(acc, value(p));
      return acc;
    }
  }
  return {};
}

inline kpr::ord::Cmp cmp(const kpr::ord::OrdCode& a, const kpr::ord::OrdCode& b) {
  auto c = big_cmp(value(a), value(b));
  if (c < 0) return kpr::ord::Cmp::Less;
  if (c > 0) return kpr::ord::Cmp::Greater;
  return kpr::ord::Cmp::Equal;
}

// ---------------------------------------------------------------------------
// Generators

/// Random normal code built from small atoms with the public operations,
/// retried until its tree size is at most max_size.
class CodeGen {
 public:
  explicit CodeGen(std::uint64_t seed) : rng_(seed) {}

  kpr::ord::OrdCode next(std::size_t max_size = 10) {
    for (;;) {
      auto c = build(3);
      if (kpr::ord::tree_size(c) <= max_size) return c;
    }
  }

 private:
  std::mt19937_64 rng_;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  kpr::ord::OrdCode atom() {
    using kpr::ord::OrdCode;
    switch (pick(5)) {
      case 0: return OrdCode::nat(static_cast<std::uint64_t>(pick(3)));
      case 1: return OrdCode::sub(kpr::ord::Cnf::omega());
      case 2: return OrdCode::sub(kpr::ord::Cnf::power(kpr::ord::Cnf::nat(static_cast<std::uint64_t>(1 + pick(2)))));
      default: return OrdCode::omega();
    }
  }

  kpr::ord::OrdCode build(int depth) {
    if (depth == 0) return atom();
    switch (pick(6)) {
      case 0: return atom();
      case 1: return kpr::ord::add(build(depth - 1), build(depth - 1));
      case 2: return kpr::ord::nat_sum(build(depth - 1), build(depth - 1));
      case 3: return kpr::ord::omega_exp(build(depth - 1));
      case 4: return kpr::ord::add(kpr::ord::OrdCode::omega(), build(depth - 1));
      default: return kpr::ord::omega_exp(kpr::ord::add(kpr::ord::OrdCode::omega(), build(depth - 1)));
    }
  }
};

/// All normal codes of tree size <= max_size whose sub-Omega constants are
/// among {0, 1, omega}. Built structurally; normality is checked afterwards.
inline std::vector<kpr::ord::OrdCode> enumerate_codes(std::size_t max_size) {
  using kpr::ord::OrdCode;
  std::vector<std::vector<OrdCode>> by_size(max_size + 1);
  std::vector<std::vector<OrdCode>> principal(max_size + 1);
  const OrdCode one = OrdCode::nat(1), w = OrdCode::sub(kpr::ord::Cnf::omega());
  by_size[1] = {OrdCode::zero(), one, w, OrdCode::omega()};
  principal[1] = {one, w, OrdCode::omega()};
  // Sums: non-increasing sequences of principal parts, built part by part.
  for (std::size_t s = 2; s <= max_size; ++s) {
    for (const auto& e : by_size[s - 1]) {
      if (oracle::cmp(e, OrdCode::omega()) == kpr::ord::Cmp::Greater) {
        auto p = OrdCode::wpow(e);
        by_size[s].push_back(p);
        principal[s].push_back(p);
      }
    }
    // Sequences summing to s-1, length >= 2.
    std::vector<OrdCode> seq;
    std::function<void(std::size_t)> extend = [&](std::size_t remaining) {
      if (remaining == 0) {
        if (seq.size() >= 2 && !seq.front().is_sub()) by_size[s].push_back(OrdCode::sum(seq));
        return;
      }
      for (std::size_t ps = 1; ps <= remaining; ++ps) {
        for (const auto& p : principal[ps]) {
          if (!seq.empty() && oracle::cmp(seq.back(), p) == kpr::ord::Cmp::Less) continue;
          seq.push_back(p);
          extend(remaining - ps);
          seq.pop_back();
        }
      }
    };
    extend(s - 1);
  }
  std::vector<OrdCode> all;
  for (auto& v : by_size) all.insert(all.end(), v.begin(), v.end());
  return all;
}

}  // namespace oracle
