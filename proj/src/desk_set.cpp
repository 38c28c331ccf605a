#include "kpr/desk_set.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <shared_mutex>

namespace kpr {

namespace {

struct ConcreteNode {
  std::vector<DeskSet> elems;  // canonical order
  std::uint64_t rank = 0;
};

struct AbstractNode {
  bool is_param = false;
  std::string name;  // parameter name, or the rendering of a finite literal
  ord::OrdCode rank;
  std::vector<DeskSet> members;
};

// Interning tables. std::deque keeps references stable under push_back, so
// a node reference obtained under the lock stays valid after it is released.
class Registry {
 public:
  static Registry& get() {
    static Registry r;
    return r;
  }

  const ConcreteNode& concrete(std::uint32_t id) const {
    std::shared_lock lock(mu_);
    return concrete_[id];
  }

  const AbstractNode& abstract(std::uint32_t id) const {
    std::shared_lock lock(mu_);
    return abstract_[id];
  }

  std::uint32_t intern_concrete(std::vector<DeskSet> elems, std::uint64_t rank) {
    std::vector<std::uint32_t> key;
    key.reserve(elems.size());
    for (const auto& e : elems) key.push_back(e.id());
    {
      std::shared_lock lock(mu_);
      if (auto it = concrete_index_.find(key); it != concrete_index_.end()) return it->second;
    }
    std::unique_lock lock(mu_);
    if (auto it = concrete_index_.find(key); it != concrete_index_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(concrete_.size());
    concrete_.push_back(ConcreteNode{std::move(elems), rank});
    concrete_index_.emplace(std::move(key), id);
    return id;
  }

  // Returns the id and whether the stored node matches `node`.
  std::pair<std::uint32_t, bool> intern_abstract(AbstractNode node) {
    const std::string key = (node.is_param ? "@" : "") + node.name;
    std::unique_lock lock(mu_);
    if (auto it = abstract_index_.find(key); it != abstract_index_.end()) {
      const auto& old = abstract_[it->second];
      bool same = old.rank == node.rank && old.members == node.members;
      return {it->second, same};
    }
    auto id = static_cast<std::uint32_t>(abstract_.size());
    abstract_.push_back(std::move(node));
    abstract_index_.emplace(key, id);
    return {id, true};
  }

  std::optional<std::uint32_t> find_param(const std::string& name) const {
    std::shared_lock lock(mu_);
    if (auto it = abstract_index_.find("@" + name); it != abstract_index_.end()) return it->second;
    return std::nullopt;
  }

 private:
  Registry() { concrete_.push_back(ConcreteNode{}); concrete_index_.emplace(std::vector<std::uint32_t>{}, 0); }

  mutable std::shared_mutex mu_;
  std::deque<ConcreteNode> concrete_;
  std::map<std::vector<std::uint32_t>, std::uint32_t> concrete_index_;
  std::deque<AbstractNode> abstract_;
  std::map<std::string, std::uint32_t> abstract_index_;
};

}  // namespace

DeskSet DeskSet::finite(std::vector<DeskSet> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  bool all_concrete = std::all_of(elems.begin(), elems.end(), [](const DeskSet& e) { return e.is_concrete(); });
  if (all_concrete) {
    std::uint64_t rank = 0;
    for (const auto& e : elems) rank = std::max(rank, e.finite_rank() + 1);
    return DeskSet(Kind::Concrete, Registry::get().intern_concrete(std::move(elems), rank));
  }
  ord::OrdCode rank = ord::OrdCode::zero();
  for (const auto& e : elems) rank = ord::max(rank, ord::succ(e.rank()));
  AbstractNode node;
  node.rank = rank;
  node.members = elems;
  node.name = "{";
  for (std::size_t i = 0; i < elems.size(); ++i) node.name += (i ? "," : "") + elems[i].render();
  node.name += "}";
  return DeskSet(Kind::Abstract, Registry::get().intern_abstract(std::move(node)).first);
}

DeskSet DeskSet::nat(std::uint64_t n) {
  std::vector<DeskSet> elems;
  for (std::uint64_t i = 0; i < n; ++i) elems.push_back(finite(elems));
  return finite(elems);
}

DeskSet DeskSet::param(const std::string& name, const ord::OrdCode& rank, std::vector<DeskSet> known) {
  if (name.empty()) throw ValidationError("parameter name must be non-empty");
  if (!ord::validate_nf(rank) || !rank.is_sub())
    throw ValidationError("parameter rank must be a normal code below Omega");
  std::sort(known.begin(), known.end());
  known.erase(std::unique(known.begin(), known.end()), known.end());
  for (const auto& k : known) {
    if (!ord::less(k.rank(), rank))
      throw ValidationError("known member " + k.render() + " of @" + name + " has rank not below the declared rank");
  }
  AbstractNode node{true, name, rank, std::move(known)};
  auto [id, same] = Registry::get().intern_abstract(std::move(node));
  if (!same) throw ValidationError("parameter @" + name + " redeclared with different data");
  return DeskSet(Kind::Abstract, id);
}

std::optional<DeskSet> DeskSet::find_param(const std::string& name) {
  if (auto id = Registry::get().find_param(name)) return DeskSet(Kind::Abstract, *id);
  return std::nullopt;
}

bool DeskSet::is_param() const { return !is_concrete() && Registry::get().abstract(id_).is_param; }

std::vector<DeskSet> DeskSet::members() const {
  if (is_concrete()) return Registry::get().concrete(id_).elems;
  return Registry::get().abstract(id_).members;
}

bool DeskSet::members_complete() const { return is_concrete() || !Registry::get().abstract(id_).is_param; }

ord::OrdCode DeskSet::rank() const {
  if (is_concrete()) return ord::OrdCode::nat(finite_rank());
  return Registry::get().abstract(id_).rank;
}

std::uint64_t DeskSet::finite_rank() const {
  if (!is_concrete()) throw EvalError("finite_rank of abstract set " + render());
  return Registry::get().concrete(id_).rank;
}

std::string DeskSet::render() const {
  if (!is_concrete()) {
    const auto& n = Registry::get().abstract(id_);
    return n.is_param ? "@" + n.name : n.name;
  }
  std::string out = "{";
  const auto& elems = Registry::get().concrete(id_).elems;
  for (std::size_t i = 0; i < elems.size(); ++i) out += (i ? "," : "") + elems[i].render();
  return out + "}";
}

std::strong_ordering operator<=>(const DeskSet& a, const DeskSet& b) {
  if (a.kind_ != b.kind_) return a.is_concrete() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.id_ == b.id_) return std::strong_ordering::equal;
  if (!a.is_concrete()) return a.render() <=> b.render();
  const auto& na = Registry::get().concrete(a.id_);
  const auto& nb = Registry::get().concrete(b.id_);
  if (auto c = na.rank <=> nb.rank; c != 0) return c;
  if (auto c = na.elems.size() <=> nb.elems.size(); c != 0) return c;
  for (std::size_t i = 0; i < na.elems.size(); ++i)
    if (auto c = na.elems[i] <=> nb.elems[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::optional<bool> member(const DeskSet& x, const DeskSet& s) {
  auto ms = s.members();
  if (std::find(ms.begin(), ms.end(), x) != ms.end()) return true;
  if (s.is_concrete() && x.is_concrete()) return false;
  if (!ord::less(x.rank(), s.rank())) return false;
  if (!s.members_complete()) return std::nullopt;
  // x is in s iff it equals a listed member; sets of different rank differ.
  for (const auto& m : ms)
    if (!(m.is_concrete() && x.is_concrete()) && x.rank() == m.rank()) return std::nullopt;
  return false;
}

std::vector<DeskSet> transitive_members(const DeskSet& s) {
  std::set<DeskSet> seen;
  std::vector<DeskSet> todo = s.members();
  while (!todo.empty()) {
    DeskSet x = todo.back();
    todo.pop_back();
    if (!seen.insert(x).second) continue;
    for (const auto& y : x.members()) todo.push_back(y);
  }
  return {seen.begin(), seen.end()};
}

std::vector<DeskSet> hf_sets_up_to_rank(std::uint64_t max_rank) {
  if (max_rank > 4) throw ValidationError("hf_sets_up_to_rank supports ranks up to 4");
  // Sets of rank <= r are exactly the subsets of V_r (the sets of rank < r).
  std::vector<DeskSet> below;  // rank < r
  std::vector<DeskSet> upto{DeskSet::empty()};
  for (std::uint64_t r = 1; r <= max_rank + 1; ++r) {
    below = upto;
    if (r == max_rank + 1) break;
    std::vector<DeskSet> next;
    const std::size_t n = below.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<DeskSet> elems;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::uint64_t{1} << i)) elems.push_back(below[i]);
      next.push_back(DeskSet::finite(std::move(elems)));
    }
    upto = std::move(next);
  }
  std::sort(upto.begin(), upto.end());
  return upto;
}

namespace {

class SetParser {
 public:
  explicit SetParser(std::string_view s) : s_(s) {}

  DeskSet parse_all() {
    DeskSet d = set();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return d;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("set literal: " + what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  DeskSet set() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '{') {
      ++pos_;
      std::vector<DeskSet> elems;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '}') {
        ++pos_;
        return DeskSet::empty();
      }
      for (;;) {
        elems.push_back(set());
        skip();
        if (pos_ < s_.size() && s_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (pos_ < s_.size() && s_[pos_] == '}') {
          ++pos_;
          return DeskSet::finite(std::move(elems));
        }
        fail("expected ',' or '}'");
      }
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t n = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) n = n * 10 + (s_[pos_++] - '0');
      if (n > 8) fail("natural too large for a set literal");
      return DeskSet::nat(n);
    }
    if (c == '@') {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto p = DeskSet::find_param(name);
      if (!p) fail("undeclared parameter @" + name);
      return *p;
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

DeskSet parse_set(std::string_view text) { return SetParser(text).parse_all(); }

}  // namespace kpr
