#include "kpr/syntax.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>
#include <unordered_map>

#include "kpr/errors.hpp"
#include "kpr/universe.hpp"

namespace kpr {

Term Term::var(std::string name) {
  if (name.empty()) throw ValidationError("variable name must be non-empty");
  Term t;
  t.kind_ = Kind::Var;
  t.var_ = std::move(name);
  return t;
}

Term Term::name(DeskSet s) {
  Term t;
  t.kind_ = Kind::Name;
  t.set_ = s;
  return t;
}

std::string Term::render() const { return is_var() ? var_ : set_.render(); }

std::string Level::render() const {
  if (delta0()) return "D0";
  if (sigma <= pi) return "S" + std::to_string(sigma);
  return "P" + std::to_string(pi);
}

struct FormulaNode {
  Op op;
  Term t0, t1;
  std::string var;
  Formula a, b;
  std::uint64_t serial = 0;
  Level level;
  int depth = 0;
  bool unbounded = false;  // contains an unbounded quantifier
  std::vector<std::string> free_vars;
  std::vector<DeskSet> support;
};

namespace {

template <class T>
std::vector<T> merged(std::vector<T> x, const std::vector<T>& y) {
  x.insert(x.end(), y.begin(), y.end());
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  return x;
}

std::string term_key(const Term& t) {
  if (t.is_var()) return "v" + t.var_name();
  return (t.set().is_concrete() ? "c" : "a") + std::to_string(t.set().id());
}

bool is_quant(Op op) { return op == Op::BEx || op == Op::BAll || op == Op::Ex || op == Op::All; }
bool is_bounded(Op op) { return op == Op::BEx || op == Op::BAll; }
bool is_binary(Op op) { return op == Op::Or || op == Op::And; }

void add_term(const Term& t, std::vector<std::string>& vars, std::vector<DeskSet>& names) {
  if (t.is_var())
    vars.push_back(t.var_name());
  else
    names.push_back(t.set());
}

class Interner {
 public:
  static Interner& get() {
    static Interner i;
    return i;
  }

  const FormulaNode* intern(FormulaNode node, const std::string& key) {
    std::lock_guard lock(mu_);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    node.serial = nodes_.size();
    nodes_.push_back(std::move(node));
    const FormulaNode* p = &nodes_.back();
    index_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mu_;
  std::deque<FormulaNode> nodes_;
  std::unordered_map<std::string, const FormulaNode*> index_;
};

}  // namespace

Formula Formula::make(Op op, Term t0, Term t1, std::string var, Formula a, Formula b) {
  FormulaNode n{op, std::move(t0), std::move(t1), std::move(var), a, b, 0, {}, 0, false, {}, {}};
  std::vector<std::string> vars;
  std::vector<DeskSet> names;
  switch (op) {
    case Op::In:
    case Op::NotIn:
      add_term(n.t0, vars, names);
      add_term(n.t1, vars, names);
      break;
    case Op::Ad:
    case Op::NotAd:
      add_term(n.t0, vars, names);
      // ad^t is an opaque Pi_3 sentence; for depth it counts as an atom.
      n.level = op == Op::Ad ? Level{4, 3} : Level{3, 4};
      break;
    case Op::Or:
    case Op::And: {
      vars = merged(a.free_vars(), b.free_vars());
      names = merged(a.support(), b.support());
      n.level = {std::max(a.level().sigma, b.level().sigma), std::max(a.level().pi, b.level().pi)};
      n.unbounded = a.n_->unbounded || b.n_->unbounded;
      if (n.unbounded) n.depth = std::max(a.depth(), b.depth()) + 1;
      break;
    }
    case Op::BEx:
    case Op::BAll:
    case Op::Ex:
    case Op::All: {
      for (const auto& v : a.free_vars())
        if (v != n.var) vars.push_back(v);
      names = a.support();
      if (is_bounded(op)) {
        add_term(n.t0, vars, names);
        n.level = a.level();
      } else {
        const Level& l = a.level();
        if (op == Op::Ex) {
          n.level.sigma = std::max(1, std::min(l.sigma, l.pi + 1));
          n.level.pi = n.level.sigma + 1;
        } else {
          n.level.pi = std::max(1, std::min(l.pi, l.sigma + 1));
          n.level.sigma = n.level.pi + 1;
        }
      }
      n.unbounded = a.n_->unbounded || !is_bounded(op);
      if (n.unbounded) n.depth = a.depth() + 1;
      break;
    }
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  n.free_vars = std::move(vars);
  n.support = std::move(names);

  std::string key = std::to_string(static_cast<int>(op)) + "|" + term_key(n.t0) + "|" + term_key(n.t1) + "|" + n.var +
                    "|" + (a.valid() ? std::to_string(a.serial()) : "-") + "|" +
                    (b.valid() ? std::to_string(b.serial()) : "-");
  return Formula(Interner::get().intern(std::move(n), key));
}

Formula Formula::in(Term t, Term s) { return make(Op::In, std::move(t), std::move(s), "", {}, {}); }
Formula Formula::not_in(Term t, Term s) { return make(Op::NotIn, std::move(t), std::move(s), "", {}, {}); }
Formula Formula::ad(Term t) { return make(Op::Ad, std::move(t), Term::zero(), "", {}, {}); }
Formula Formula::not_ad(Term t) { return make(Op::NotAd, std::move(t), Term::zero(), "", {}, {}); }

Formula Formula::disj(Formula a, Formula b) {
  if (!a.valid() || !b.valid()) throw ValidationError("disjunction of an invalid formula");
  return make(Op::Or, Term::zero(), Term::zero(), "", a, b);
}

Formula Formula::conj(Formula a, Formula b) {
  if (!a.valid() || !b.valid()) throw ValidationError("conjunction of an invalid formula");
  return make(Op::And, Term::zero(), Term::zero(), "", a, b);
}

namespace {

void check_binder(const std::string& x, const Formula& body) {
  if (x.empty()) throw ValidationError("bound variable name must be non-empty");
  if (!body.valid()) throw ValidationError("quantifier over an invalid formula");
}

}  // namespace

Formula Formula::bex(std::string x, Term bound, Formula body) {
  check_binder(x, body);
  if (bound.is_var() && bound.var_name() == x) throw ValidationError("variable " + x + " bounded by itself");
  return make(Op::BEx, std::move(bound), Term::zero(), std::move(x), body, {});
}

Formula Formula::ball(std::string x, Term bound, Formula body) {
  check_binder(x, body);
  if (bound.is_var() && bound.var_name() == x) throw ValidationError("variable " + x + " bounded by itself");
  return make(Op::BAll, std::move(bound), Term::zero(), std::move(x), body, {});
}

Formula Formula::ex(std::string x, Formula body) {
  check_binder(x, body);
  return make(Op::Ex, Term::zero(), Term::zero(), std::move(x), body, {});
}

Formula Formula::all(std::string x, Formula body) {
  check_binder(x, body);
  return make(Op::All, Term::zero(), Term::zero(), std::move(x), body, {});
}

Formula Formula::eq(Term s, Term t) {
  std::vector<std::string> avoid;
  if (s.is_var()) avoid.push_back(s.var_name());
  if (t.is_var()) avoid.push_back(t.var_name());
  std::string x = fresh_var(avoid, "x");
  Term xv = Term::var(x);
  return conj(ball(x, s, in(xv, t)), ball(x, t, in(xv, s)));
}

Formula Formula::neq(Term s, Term t) { return negate(eq(std::move(s), std::move(t))); }

Op Formula::op() const { return n_->op; }
bool Formula::is_atom() const { return !is_binary(n_->op) && !is_quant(n_->op); }
const Term& Formula::lhs() const { return n_->t0; }
const Term& Formula::rhs() const { return n_->t1; }
const std::string& Formula::var() const { return n_->var; }
const Term& Formula::bound() const { return n_->t0; }
Formula Formula::body() const { return n_->a; }
Formula Formula::left() const { return n_->a; }
Formula Formula::right() const { return n_->b; }
std::uint64_t Formula::serial() const { return n_->serial; }
const Level& Formula::level() const { return n_->level; }
int Formula::depth() const { return n_->depth; }
const std::vector<std::string>& Formula::free_vars() const { return n_->free_vars; }
const std::vector<DeskSet>& Formula::support() const { return n_->support; }

std::string Formula::render() const {
  switch (op()) {
    case Op::In: return "(in " + lhs().render() + " " + rhs().render() + ")";
    case Op::NotIn: return "(nin " + lhs().render() + " " + rhs().render() + ")";
    case Op::Ad: return "(ad " + lhs().render() + ")";
    case Op::NotAd: return "(nad " + lhs().render() + ")";
    case Op::Or: return "(or " + left().render() + " " + right().render() + ")";
    case Op::And: return "(and " + left().render() + " " + right().render() + ")";
    case Op::BEx: return "(bex " + var() + " " + bound().render() + " " + body().render() + ")";
    case Op::BAll: return "(ball " + var() + " " + bound().render() + " " + body().render() + ")";
    case Op::Ex: return "(ex " + var() + " " + body().render() + ")";
    case Op::All: return "(all " + var() + " " + body().render() + ")";
  }
  return "?";
}

Formula negate(const Formula& a) {
  switch (a.op()) {
    case Op::In: return Formula::not_in(a.lhs(), a.rhs());
    case Op::NotIn: return Formula::in(a.lhs(), a.rhs());
    case Op::Ad: return Formula::not_ad(a.lhs());
    case Op::NotAd: return Formula::ad(a.lhs());
    case Op::Or: return Formula::conj(negate(a.left()), negate(a.right()));
    case Op::And: return Formula::disj(negate(a.left()), negate(a.right()));
    case Op::BEx: return Formula::ball(a.var(), a.bound(), negate(a.body()));
    case Op::BAll: return Formula::bex(a.var(), a.bound(), negate(a.body()));
    case Op::Ex: return Formula::all(a.var(), negate(a.body()));
    case Op::All: return Formula::ex(a.var(), negate(a.body()));
  }
  return a;
}

Level classify(const Formula& a) { return a.level(); }
int depth(const Formula& a) { return a.depth(); }
std::vector<DeskSet> support(const Formula& a) { return a.support(); }

namespace {

Term subst_term(const Term& u, const std::string& x, const Term& t) {
  return u.is_var() && u.var_name() == x ? t : u;
}

bool free_in(const Formula& a, const std::string& x) {
  const auto& fv = a.free_vars();
  return std::binary_search(fv.begin(), fv.end(), x);
}

}  // namespace

Formula subst(const Formula& a, const std::string& x, const Term& t) {
  if (!free_in(a, x)) return a;
  switch (a.op()) {
    case Op::In: return Formula::in(subst_term(a.lhs(), x, t), subst_term(a.rhs(), x, t));
    case Op::NotIn: return Formula::not_in(subst_term(a.lhs(), x, t), subst_term(a.rhs(), x, t));
    case Op::Ad: return Formula::ad(subst_term(a.lhs(), x, t));
    case Op::NotAd: return Formula::not_ad(subst_term(a.lhs(), x, t));
    case Op::Or: return Formula::disj(subst(a.left(), x, t), subst(a.right(), x, t));
    case Op::And: return Formula::conj(subst(a.left(), x, t), subst(a.right(), x, t));
    default: break;
  }
  Term bound = is_bounded(a.op()) ? subst_term(a.bound(), x, t) : a.bound();
  Formula body = a.body();
  if (a.var() != x && free_in(body, x)) {
    if (t.is_var() && t.var_name() == a.var())
      throw ValidationError("substituting " + t.var_name() + " for " + x + " would be captured in " + a.render());
    body = subst(body, x, t);
  }
  switch (a.op()) {
    case Op::BEx: return Formula::bex(a.var(), bound, body);
    case Op::BAll: return Formula::ball(a.var(), bound, body);
    case Op::Ex: return Formula::ex(a.var(), body);
    default: return Formula::all(a.var(), body);
  }
}

Formula relativize(const Formula& a, const Term& c) {
  switch (a.op()) {
    case Op::Or: return Formula::disj(relativize(a.left(), c), relativize(a.right(), c));
    case Op::And: return Formula::conj(relativize(a.left(), c), relativize(a.right(), c));
    case Op::BEx: return Formula::bex(a.var(), a.bound(), relativize(a.body(), c));
    case Op::BAll: return Formula::ball(a.var(), a.bound(), relativize(a.body(), c));
    case Op::Ex:
    case Op::All:
      if (c.is_var() && c.var_name() == a.var())
        throw ValidationError("relativizing to " + c.var_name() + " would be captured in " + a.render());
      return a.op() == Op::Ex ? Formula::bex(a.var(), c, relativize(a.body(), c))
                              : Formula::ball(a.var(), c, relativize(a.body(), c));
    default: return a;
  }
}

bool binds(const Formula& a, const std::string& x) {
  if (is_quant(a.op())) return a.var() == x || binds(a.body(), x);
  if (is_binary(a.op())) return binds(a.left(), x) || binds(a.right(), x);
  return false;
}

namespace {

void collect_vars(const Formula& a, std::set<std::string>& out) {
  auto term = [&](const Term& t) {
    if (t.is_var()) out.insert(t.var_name());
  };
  if (is_quant(a.op())) {
    out.insert(a.var());
    if (is_bounded(a.op())) term(a.bound());
    collect_vars(a.body(), out);
  } else if (is_binary(a.op())) {
    collect_vars(a.left(), out);
    collect_vars(a.right(), out);
  } else {
    term(a.lhs());
    if (a.op() == Op::In || a.op() == Op::NotIn) term(a.rhs());
  }
}

}  // namespace

std::vector<std::string> variables(const Formula& a) {
  std::set<std::string> out;
  collect_vars(a, out);
  return {out.begin(), out.end()};
}

std::string fresh_var(const std::vector<std::string>& avoid, const std::string& stem) {
  auto taken = [&](const std::string& v) { return std::find(avoid.begin(), avoid.end(), v) != avoid.end(); };
  if (!taken(stem)) return stem;
  for (int i = 1;; ++i) {
    std::string v = stem + std::to_string(i);
    if (!taken(v)) return v;
  }
}

// ---------------------------------------------------------------------------
// Sequents

Sequent::Sequent(std::initializer_list<Formula> fs) : Sequent(std::vector<Formula>(fs)) {}

Sequent::Sequent(std::vector<Formula> fs) : items_(std::move(fs)) {
  for (const auto& f : items_)
    if (!f.valid()) throw ValidationError("sequent contains an invalid formula");
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

bool Sequent::contains(const Formula& f) const { return std::binary_search(items_.begin(), items_.end(), f); }

Sequent Sequent::with(const Formula& f) const {
  if (contains(f)) return *this;
  Sequent s = *this;
  s.items_.insert(std::lower_bound(s.items_.begin(), s.items_.end(), f), f);
  return s;
}

Sequent Sequent::without(const Formula& f) const {
  Sequent s = *this;
  auto it = std::lower_bound(s.items_.begin(), s.items_.end(), f);
  if (it != s.items_.end() && *it == f) s.items_.erase(it);
  return s;
}

Sequent Sequent::unite(const Sequent& other) const {
  Sequent s;
  std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(), std::back_inserter(s.items_));
  return s;
}

bool Sequent::subset_of(const Sequent& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

std::vector<DeskSet> Sequent::support() const {
  std::vector<DeskSet> out;
  for (const auto& f : items_) out = merged(std::move(out), f.support());
  return out;
}

std::vector<std::string> Sequent::free_vars() const {
  std::vector<std::string> out;
  for (const auto& f : items_) out = merged(std::move(out), f.free_vars());
  return out;
}

std::string Sequent::render() const {
  std::string out = "(seq";
  for (const auto& f : items_) out += " " + f.render();
  return out + ")";
}

// ---------------------------------------------------------------------------
// Decomposition

std::optional<bool> IndexSet::contains(const DeskSet& i) const {
  switch (kind) {
    case Kind::Empty: return false;
    case Kind::Two: return i == DeskSet::nat(0) || i == DeskSet::nat(1);
    case Kind::BoundedBy: return member(i, bound);
    case Kind::Universe: return true;
  }
  return false;
}

std::string IndexSet::render() const {
  switch (kind) {
    case Kind::Empty: return "0";
    case Kind::Two: return "2";
    case Kind::BoundedBy: return bound.render();
    case Kind::Universe: return "V";
  }
  return "?";
}

Formula Decomposition::instance(const DeskSet& iota) const {
  auto in = index_.contains(iota);
  if (!in || !*in)
    throw IndexError("index " + iota.render() + (in ? " is not in " : " is not known to be in ") + index_.render() +
                     " for " + source_.render());
  if (index_.kind == IndexSet::Kind::Two) return iota == DeskSet::nat(0) ? source_.left() : source_.right();
  return subst(source_.body(), source_.var(), Term::name(iota));
}

Decomposition decompose(const Formula& a) {
  if (!a.closed()) throw ValidationError("decompose: not a sentence: " + a.render());
  using K = IndexSet::Kind;
  if (a.delta0()) {
    bool truth = eval_delta0(a);
    return {a, truth ? Polarity::Conjunctive : Polarity::Disjunctive, IndexSet{K::Empty, {}}};
  }
  switch (a.op()) {
    case Op::Or: return {a, Polarity::Disjunctive, IndexSet{K::Two, {}}};
    case Op::And: return {a, Polarity::Conjunctive, IndexSet{K::Two, {}}};
    case Op::BEx: return {a, Polarity::Disjunctive, IndexSet{K::BoundedBy, a.bound().set()}};
    case Op::BAll: return {a, Polarity::Conjunctive, IndexSet{K::BoundedBy, a.bound().set()}};
    case Op::Ex: return {a, Polarity::Disjunctive, IndexSet{K::Universe, {}}};
    case Op::All: return {a, Polarity::Conjunctive, IndexSet{K::Universe, {}}};
    default: throw EvalError("decompose: ad is opaque: " + a.render());
  }
}

}  // namespace kpr
