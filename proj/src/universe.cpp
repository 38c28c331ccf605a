#include "kpr/universe.hpp"

#include <algorithm>

namespace kpr {

namespace {

std::optional<bool> eval3(const Formula& a) {
  switch (a.op()) {
    case Op::In:
    case Op::NotIn: {
      auto m = member(a.lhs().set(), a.rhs().set());
      if (!m) return std::nullopt;
      return a.op() == Op::In ? *m : !*m;
    }
    case Op::Ad:
    case Op::NotAd:
      return std::nullopt;
    case Op::Or:
    case Op::And: {
      bool is_or = a.op() == Op::Or;
      auto l = eval3(a.left());
      if (l && *l == is_or) return is_or;
      auto r = eval3(a.right());
      if (r && *r == is_or) return is_or;
      if (l && r) return !is_or;
      return std::nullopt;
    }
    case Op::BEx:
    case Op::BAll: {
      bool is_ex = a.op() == Op::BEx;
      const DeskSet& s = a.bound().set();
      bool undecided = false;
      for (const auto& m : s.members()) {
        auto v = eval3(subst(a.body(), a.var(), Term::name(m)));
        if (v && *v == is_ex) return is_ex;
        if (!v) undecided = true;
      }
      if (undecided || !s.members_complete()) return std::nullopt;
      return !is_ex;
    }
    case Op::Ex:
    case Op::All:
      break;
  }
  return std::nullopt;
}

}  // namespace

std::optional<bool> try_eval_delta0(const Formula& a) {
  if (!a.closed()) throw ValidationError("eval_delta0: not a sentence: " + a.render());
  if (a.depth() != 0) throw ValidationError("eval_delta0: has an unbounded quantifier: " + a.render());
  return eval3(a);
}

bool eval_delta0(const Formula& a) {
  if (!a.delta0()) throw ValidationError("eval_delta0: not Delta_0: " + a.render());
  auto v = try_eval_delta0(a);
  if (!v) throw EvalError("eval_delta0: truth depends on an abstract parameter: " + a.render());
  return *v;
}

HullDescriptor::HullDescriptor(const std::vector<DeskSet>& gens) {
  for (const auto& g : gens) *this = hull_extend(*this, g);
}

std::string HullDescriptor::render() const {
  std::string out = "P[";
  for (std::size_t i = 0; i < gens_.size(); ++i) out += (i ? "," : "") + gens_[i].render();
  return out + "]";
}

HullDescriptor hull_extend(const HullDescriptor& p, const DeskSet& iota) {
  if (hull_contains(p, iota)) return p;
  HullDescriptor q = p;
  auto& g = q.gens_;
  g.insert(std::lower_bound(g.begin(), g.end(), iota), iota);
  return q;
}

HullDescriptor hull_extend(const HullDescriptor& p, const std::vector<DeskSet>& iotas) {
  HullDescriptor q = p;
  for (const auto& i : iotas) q = hull_extend(q, i);
  return q;
}

bool hull_contains(const HullDescriptor& p, const DeskSet& x) {
  if (x.is_concrete()) return true;
  const auto& g = p.generators();
  if (std::binary_search(g.begin(), g.end(), x)) return true;
  // Hulls are transitive and closed under pairing.
  if (!x.is_param()) {
    auto ms = x.members();
    return std::all_of(ms.begin(), ms.end(), [&](const DeskSet& m) { return hull_contains(p, m); });
  }
  for (const auto& gen : g) {
    auto tc = transitive_members(gen);
    if (std::binary_search(tc.begin(), tc.end(), x)) return true;
  }
  return false;
}

bool hull_contains(const HullDescriptor&, const ord::OrdCode&) { return true; }

bool hull_contains_all(const HullDescriptor& p, const std::vector<DeskSet>& xs) {
  return std::all_of(xs.begin(), xs.end(), [&](const DeskSet& x) { return hull_contains(p, x); });
}

bool hull_subset(const HullDescriptor& p, const HullDescriptor& q) { return hull_contains_all(q, p.generators()); }

}  // namespace kpr
