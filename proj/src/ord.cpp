#include "kpr/ord.hpp"

#include <algorithm>
#include <utility>

namespace kpr::ord {

// ---------------------------------------------------------------------------
// Sub-Omega Cantor normal forms

Cnf Cnf::nat(std::uint64_t n) {
  Cnf c;
  if (n > 0) c.terms.push_back(CnfTerm{Cnf{}, n});
  return c;
}

Cnf Cnf::omega() { return power(nat(1)); }

Cnf Cnf::power(Cnf e) {
  Cnf c;
  c.terms.push_back(CnfTerm{std::move(e), 1});
  return c;
}

bool Cnf::is_finite() const {
  return terms.empty() || (terms.size() == 1 && terms[0].exponent.is_zero());
}

std::uint64_t Cnf::finite_value() const {
  if (!is_finite()) throw ValidationError("finite_value of an infinite ordinal");
  return terms.empty() ? 0 : terms[0].coeff;
}

bool Cnf::is_principal() const { return terms.size() == 1 && terms[0].coeff == 1; }

bool operator==(const Cnf& a, const Cnf& b) { return a.terms == b.terms; }

std::strong_ordering compare(const Cnf& a, const Cnf& b) {
  const std::size_t n = std::min(a.terms.size(), b.terms.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = compare(a.terms[i].exponent, b.terms[i].exponent); c != 0) return c;
    if (auto c = a.terms[i].coeff <=> b.terms[i].coeff; c != 0) return c;
  }
  return a.terms.size() <=> b.terms.size();
}

bool valid(const Cnf& a) {
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    if (a.terms[i].coeff == 0 || !valid(a.terms[i].exponent)) return false;
    if (i > 0 && compare(a.terms[i - 1].exponent, a.terms[i].exponent) != std::strong_ordering::greater)
      return false;
  }
  return true;
}

Cnf add(const Cnf& a, const Cnf& b) {
  if (b.is_zero()) return a;
  const Cnf& head = b.terms.front().exponent;
  Cnf out;
  for (const auto& t : a.terms) {
    auto c = compare(t.exponent, head);
    if (c == std::strong_ordering::less) break;
    if (c == std::strong_ordering::equal) {
      out.terms.push_back(CnfTerm{t.exponent, t.coeff + b.terms.front().coeff});
      out.terms.insert(out.terms.end(), b.terms.begin() + 1, b.terms.end());
      return out;
    }
    out.terms.push_back(t);
  }
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

Cnf nat_sum(const Cnf& a, const Cnf& b) {
  Cnf out;
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j == b.terms.size()) {
      out.terms.push_back(a.terms[i++]);
    } else if (i == a.terms.size()) {
      out.terms.push_back(b.terms[j++]);
    } else {
      auto c = compare(a.terms[i].exponent, b.terms[j].exponent);
      if (c == std::strong_ordering::greater) {
        out.terms.push_back(a.terms[i++]);
      } else if (c == std::strong_ordering::less) {
        out.terms.push_back(b.terms[j++]);
      } else {
        out.terms.push_back(CnfTerm{a.terms[i].exponent, a.terms[i].coeff + b.terms[j].coeff});
        ++i;
        ++j;
      }
    }
  }
  return out;
}

Cnf mul_left(std::uint64_t k, const Cnf& a) {
  if (k == 0) return Cnf{};
  Cnf out = a;
  if (!out.terms.empty() && out.terms.back().exponent.is_zero()) out.terms.back().coeff *= k;
  return out;
}

std::size_t size(const Cnf& a) {
  std::size_t n = 0;
  for (const auto& t : a.terms) n += 1 + size(t.exponent);
  return n;
}

// ---------------------------------------------------------------------------
// Codes

OrdCode OrdCode::sub(Cnf x) {
  OrdCode c;
  c.kind_ = Kind::Sub;
  c.sub_ = std::move(x);
  return c;
}

OrdCode OrdCode::omega() {
  OrdCode c;
  c.kind_ = Kind::Omega;
  return c;
}

OrdCode OrdCode::wpow(OrdCode exponent) {
  OrdCode c;
  c.kind_ = Kind::WPow;
  c.kids_.push_back(std::move(exponent));
  return c;
}

OrdCode OrdCode::sum(std::vector<OrdCode> parts) {
  OrdCode c;
  c.kind_ = Kind::Sum;
  c.kids_ = std::move(parts);
  return c;
}

namespace {

int kind_rank(const OrdCode& p) {
  switch (p.kind()) {
    case OrdCode::Kind::Sub: return 0;
    case OrdCode::Kind::Omega: return 1;
    default: return 2;
  }
}

Cmp to_cmp(std::strong_ordering o) {
  if (o == std::strong_ordering::less) return Cmp::Less;
  if (o == std::strong_ordering::greater) return Cmp::Greater;
  return Cmp::Equal;
}

Cmp cmp_unchecked(const OrdCode& a, const OrdCode& b);

// Principal parts only.
Cmp pcmp(const OrdCode& p, const OrdCode& q) {
  int kp = kind_rank(p), kq = kind_rank(q);
  if (kp != kq) return kp < kq ? Cmp::Less : Cmp::Greater;
  if (kp == 0) return to_cmp(compare(p.sub_value(), q.sub_value()));
  if (kp == 1) return Cmp::Equal;
  return cmp_unchecked(p.exponent(), q.exponent());
}

struct Run {
  OrdCode part;
  std::uint64_t count;
};

// The non-increasing sequence of principal parts, run-length encoded.
std::vector<Run> runs(const OrdCode& a) {
  std::vector<Run> out;
  auto push = [&out](const OrdCode& p, std::uint64_t n) {
    if (!out.empty() && out.back().part == p)
      out.back().count += n;
    else
      out.push_back(Run{p, n});
  };
  switch (a.kind()) {
    case OrdCode::Kind::Sub:
      for (const auto& t : a.sub_value().terms) push(OrdCode::sub(Cnf::power(t.exponent)), t.coeff);
      break;
    case OrdCode::Kind::Omega:
    case OrdCode::Kind::WPow:
      push(a, 1);
      break;
    case OrdCode::Kind::Sum:
      for (const auto& p : a.parts()) push(p, 1);
      break;
  }
  return out;
}

OrdCode from_runs(const std::vector<Run>& rs) {
  if (rs.empty()) return OrdCode::zero();
  if (rs.front().part.is_sub()) {
    Cnf c;
    for (const auto& r : rs) c.terms.push_back(CnfTerm{r.part.sub_value().terms.front().exponent, r.count});
    return OrdCode::sub(std::move(c));
  }
  if (rs.size() == 1 && rs.front().count == 1) return rs.front().part;
  std::vector<OrdCode> parts;
  for (const auto& r : rs)
    for (std::uint64_t i = 0; i < r.count; ++i) parts.push_back(r.part);
  return OrdCode::sum(std::move(parts));
}

Cmp cmp_unchecked(const OrdCode& a, const OrdCode& b) {
  if (a.is_sub() && b.is_sub()) return to_cmp(compare(a.sub_value(), b.sub_value()));
  auto ra = runs(a), rb = runs(b);
  const std::size_t n = std::min(ra.size(), rb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = pcmp(ra[i].part, rb[i].part); c != Cmp::Equal) return c;
    if (ra[i].count != rb[i].count) return ra[i].count < rb[i].count ? Cmp::Less : Cmp::Greater;
  }
  if (ra.size() == rb.size()) return Cmp::Equal;
  return ra.size() < rb.size() ? Cmp::Less : Cmp::Greater;
}

void require_nf(const OrdCode& a) {
  if (!validate_nf(a)) throw ValidationError("ordinal code not in normal form: " + render(a));
}

}  // namespace

bool is_principal(const OrdCode& a) {
  switch (a.kind()) {
    case OrdCode::Kind::Sub: return a.sub_value().is_principal();
    case OrdCode::Kind::Omega:
    case OrdCode::Kind::WPow: return true;
    case OrdCode::Kind::Sum: return false;
  }
  return false;
}

bool validate_nf(const OrdCode& a) {
  switch (a.kind()) {
    case OrdCode::Kind::Sub:
      return a.parts().empty() && valid(a.sub_value());
    case OrdCode::Kind::Omega:
      return a.parts().empty() && a.sub_value().is_zero();
    case OrdCode::Kind::WPow:
      return a.parts().size() == 1 && validate_nf(a.exponent()) &&
             cmp_unchecked(a.exponent(), OrdCode::omega()) == Cmp::Greater;
    case OrdCode::Kind::Sum: {
      const auto& ps = a.parts();
      if (ps.size() < 2 || ps.front().is_sub()) return false;
      for (std::size_t i = 0; i < ps.size(); ++i) {
        if (!validate_nf(ps[i]) || !is_principal(ps[i])) return false;
        if (i > 0 && pcmp(ps[i - 1], ps[i]) == Cmp::Less) return false;
      }
      return true;
    }
  }
  return false;
}

Cmp cmp(const OrdCode& a, const OrdCode& b) {
  require_nf(a);
  require_nf(b);
  return cmp_unchecked(a, b);
}

OrdCode add(const OrdCode& a, const OrdCode& b) {
  require_nf(a);
  require_nf(b);
  auto rb = runs(b);
  if (rb.empty()) return a;
  auto ra = runs(a);
  const OrdCode& head = rb.front().part;
  while (!ra.empty() && pcmp(ra.back().part, head) == Cmp::Less) ra.pop_back();
  for (auto& r : rb) {
    if (!ra.empty() && ra.back().part == r.part)
      ra.back().count += r.count;
    else
      ra.push_back(std::move(r));
  }
  return from_runs(ra);
}

OrdCode nat_sum(const OrdCode& a, const OrdCode& b) {
  require_nf(a);
  require_nf(b);
  auto ra = runs(a), rb = runs(b);
  std::vector<Run> out;
  std::size_t i = 0, j = 0;
  while (i < ra.size() || j < rb.size()) {
    if (j == rb.size()) {
      out.push_back(ra[i++]);
    } else if (i == ra.size()) {
      out.push_back(rb[j++]);
    } else {
      Cmp c = pcmp(ra[i].part, rb[j].part);
      if (c == Cmp::Greater) {
        out.push_back(ra[i++]);
      } else if (c == Cmp::Less) {
        out.push_back(rb[j++]);
      } else {
        out.push_back(Run{ra[i].part, ra[i].count + rb[j].count});
        ++i;
        ++j;
      }
    }
  }
  return from_runs(out);
}

OrdCode omega_exp(const OrdCode& a) {
  require_nf(a);
  if (a.is_sub()) return OrdCode::sub(Cnf::power(a.sub_value()));
  if (a.kind() == OrdCode::Kind::Omega) return a;
  return OrdCode::wpow(a);
}

OrdCode omega_tower(std::uint64_t n, const OrdCode& base) {
  require_nf(base);
  OrdCode x = base;
  for (std::uint64_t i = 0; i < n; ++i) x = omega_exp(x);
  return x;
}

OrdCode mul_nat(const OrdCode& a, std::uint64_t n) {
  require_nf(a);
  if (n == 0 || a.is_zero()) return OrdCode::zero();
  auto ra = runs(a);
  ra.front().count *= n;
  return from_runs(ra);
}

OrdCode omega_times(std::uint64_t m) { return mul_nat(OrdCode::omega(), m); }

OrdCode mul_left_sub(std::uint64_t k, const OrdCode& x) {
  require_nf(x);
  if (!x.is_sub()) throw ValidationError("mul_left_sub expects an ordinal below Omega");
  return OrdCode::sub(mul_left(k, x.sub_value()));
}

OrdCode succ(const OrdCode& a) { return add(a, OrdCode::nat(1)); }

const OrdCode& max(const OrdCode& a, const OrdCode& b) { return cmp(a, b) == Cmp::Less ? b : a; }

std::size_t tree_size(const OrdCode& a) {
  switch (a.kind()) {
    case OrdCode::Kind::Sub:
    case OrdCode::Kind::Omega: return 1;
    case OrdCode::Kind::WPow: return 1 + tree_size(a.exponent());
    case OrdCode::Kind::Sum: {
      std::size_t n = 1;
      for (const auto& p : a.parts()) n += tree_size(p);
      return n;
    }
  }
  return 1;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

bool renders_atomic(const Cnf& e) { return e.is_finite() || e == Cnf::omega(); }

}  // namespace

std::string render(const Cnf& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& t : a.terms) {
    if (!out.empty()) out += "+";
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coeff);
      continue;
    }
    if (t.exponent == Cnf::nat(1))
      out += "w";
    else if (renders_atomic(t.exponent))
      out += "w^" + render(t.exponent);
    else
      out += "w^(" + render(t.exponent) + ")";
    if (t.coeff > 1) out += "*" + std::to_string(t.coeff);
  }
  return out;
}

std::string render(const OrdCode& a) {
  switch (a.kind()) {
    case OrdCode::Kind::Sub: return render(a.sub_value());
    case OrdCode::Kind::Omega: return "W";
    case OrdCode::Kind::WPow: return "w^(" + render(a.exponent()) + ")";
    case OrdCode::Kind::Sum: break;
  }
  std::string out;
  auto rs = runs(a);
  Cnf tail;
  for (const auto& r : rs) {
    if (r.part.is_sub()) {
      tail.terms.push_back(CnfTerm{r.part.sub_value().terms.front().exponent, r.count});
      continue;
    }
    if (!out.empty()) out += "+";
    out += render(r.part);
    if (r.count > 1) out += "*" + std::to_string(r.count);
  }
  if (!tail.is_zero()) out += "+" + render(tail);
  return out;
}

}  // namespace kpr::ord
