#include <functional>
#include <set>
#include <sstream>

#include "kpr/errors.hpp"
#include "kpr/finitary.hpp"
#include "kpr/sexpr.hpp"

namespace kpr {

namespace {

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find(';');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

void parse_param(const std::vector<std::string>& w, int lineno) {
  auto err = [&](const std::string& m) { throw ParseError("line " + std::to_string(lineno) + ": param: " + m); };
  if (w.size() < 4 || w[2] != "rank") err("expected 'param NAME rank ORD [member SET]...'");
  std::vector<DeskSet> members;
  for (std::size_t i = 4; i < w.size(); i += 2) {
    if (w[i] != "member" || i + 1 >= w.size()) err("expected 'member SET'");
    members.push_back(parse_set(w[i + 1]));
  }
  try {
    DeskSet::param(w[1], ord::parse(w[3]), members);
  } catch (const ValidationError& e) {
    err(e.what());
  }
}

std::string atom_of(const SExpr& e, const std::string& what) {
  if (e.is_list) throw ParseError("expected " + what + ", got " + e.render());
  return e.atom;
}

void parse_witness(const SExpr& w, ProofNode& node) {
  const std::string head(w.head());
  auto args = [&](std::size_t n) {
    if (w.items.size() != n + 1) throw ParseError("witness (" + head + " ...) takes " + std::to_string(n) + " arguments");
  };
  if (head == "main") {
    args(1);
    node.main = parse_formula(w.items[1]);
  } else if (head == "cut") {
    args(1);
    node.cut = parse_formula(w.items[1]);
  } else if (head == "formula") {
    args(1);
    node.formula = parse_formula(w.items[1]);
  } else if (head == "term") {
    args(1);
    node.term = parse_term(w.items[1]);
  } else if (head == "eigen") {
    args(1);
    node.eigen = atom_of(w.items[1], "a variable");
  } else if (head == "var" || head == "vars") {
    for (std::size_t i = 1; i < w.items.size(); ++i) node.vars.push_back(atom_of(w.items[i], "a variable"));
  } else if (head == "terms") {
    for (std::size_t i = 1; i < w.items.size(); ++i) node.terms.push_back(parse_term(w.items[i]));
  } else {
    throw ParseError("unknown witness " + w.render());
  }
}

}  // namespace

FinitaryProof parse_proof(std::string_view script) {
  FinitaryProof p;
  std::istringstream in{std::string(script)};
  int lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string line = strip_comment(raw);
    auto w = words(line);
    if (w.empty()) continue;
    if (w[0] == "param") {
      parse_param(w, lineno);
      continue;
    }
    if (w[0] == "vars") {
      p.vars.insert(p.vars.end(), w.begin() + 1, w.end());
      continue;
    }
    try {
      auto items = parse_sexprs(line);
      if (items.size() < 3) throw ParseError("expected 'ID RULE [PREMISES] (seq ...) [WITNESSES]'");
      ProofNode node;
      node.id = atom_of(items[0], "a node id");
      if (p.find(node.id)) throw ParseError("duplicate node id " + node.id);
      auto rule = rule_from_name(atom_of(items[1], "a rule name"));
      if (!rule) throw ParseError("unknown rule " + items[1].render());
      node.rule = *rule;
      std::size_t i = 2;
      for (; i < items.size() && !items[i].is_list; ++i) {
        auto k = p.find(items[i].atom);
        if (!k) throw ParseError("unknown premise id " + items[i].atom);
        node.premises.push_back(*k);
      }
      if (i >= items.size()) throw ParseError("missing conclusion (seq ...)");
      node.conclusion = parse_sequent(items[i++]);
      for (; i < items.size(); ++i) parse_witness(items[i], node);
      p.add(std::move(node));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (p.nodes.empty()) throw ParseError("proof script has no nodes");
  return p;
}

std::string render_proof(const FinitaryProof& p) {
  std::ostringstream out;
  // Parameters first, members before the sets that list them.
  std::set<DeskSet> done;
  std::function<void(const DeskSet&)> declare = [&](const DeskSet& s) {
    if (s.is_concrete() || done.count(s)) return;
    done.insert(s);
    for (const auto& m : s.members()) declare(m);
    if (!s.is_param()) return;
    out << "param " << s.render().substr(1) << " rank " << ord::render(s.rank());
    for (const auto& m : s.members()) out << " member " << m.render();
    out << "\n";
  };
  for (const auto& n : p.nodes) {
    for (const auto& s : n.conclusion.support()) declare(s);
    for (const auto& t : n.terms)
      if (!t.is_var()) declare(t.set());
    if (n.term && !n.term->is_var()) declare(n.term->set());
    for (const auto& f : {n.main, n.cut, n.formula})
      if (f)
        for (const auto& s : f->support()) declare(s);
  }
  if (!p.vars.empty()) {
    out << "vars";
    for (const auto& v : p.vars) out << " " << v;
    out << "\n";
  }
  for (const auto& n : p.nodes) {
    out << n.id << " " << rule_name(n.rule);
    for (auto k : n.premises) out << " " << p.nodes[k].id;
    out << " " << n.conclusion.render();
    if (n.main) out << " (main " << n.main->render() << ")";
    if (n.term) out << " (term " << n.term->render() << ")";
    if (n.eigen) out << " (eigen " << *n.eigen << ")";
    if (n.cut) out << " (cut " << n.cut->render() << ")";
    if (n.formula) out << " (formula " << n.formula->render() << ")";
    if (!n.vars.empty()) {
      out << " (vars";
      for (const auto& v : n.vars) out << " " << v;
      out << ")";
    }
    if (!n.terms.empty()) {
      out << " (terms";
      for (const auto& t : n.terms) out << " " << t.render();
      out << ")";
    }
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Builders

FinitaryProof identity_proof(const Formula& a) {
  FinitaryProof p;
  p.vars = a.free_vars();
  ProofNode n;
  n.rule = Rule::Ax;
  n.conclusion = Sequent{negate(a), a};
  n.main = a;
  p.add(std::move(n));
  return p;
}

namespace {

ProofNode node(Rule r, Sequent concl, std::vector<std::size_t> prem, Formula main) {
  ProofNode n;
  n.rule = r;
  n.conclusion = std::move(concl);
  n.premises = std::move(prem);
  n.main = main;
  return n;
}

std::size_t expand(FinitaryProof& p, Formula a) {
  if (a.op() == Op::And || a.op() == Op::BAll || a.op() == Op::All) a = negate(a);
  const Formula na = negate(a);
  switch (a.op()) {
    case Op::Or: {
      auto p0 = expand(p, a.left());
      auto p1 = expand(p, a.right());
      auto n_and = p.add(node(Rule::And, Sequent{na, a.left(), a.right()}, {p0, p1}, na));
      return p.add(node(Rule::Or, Sequent{na, a}, {n_and}, a));
    }
    case Op::BEx:
    case Op::Ex: {
      Term v = Term::var(fresh_var(variables(a), "v"));
      Formula bv = subst(a.body(), a.var(), v);
      std::vector<std::size_t> prem;
      if (a.op() == Op::BEx) {
        Formula vin = Formula::in(v, a.bound());
        prem.push_back(p.add(node(Rule::Ax, Sequent{negate(vin), vin}, {}, vin)));
      }
      prem.push_back(expand(p, bv));
      Sequent mid = a.op() == Op::BEx ? Sequent{a, Formula::not_in(v, a.bound()), negate(bv)} : Sequent{a, negate(bv)};
      ProofNode ex = node(a.op() == Op::BEx ? Rule::BEx : Rule::Ex, mid, prem, a);
      ex.term = v;
      auto n_ex = p.add(std::move(ex));
      ProofNode all = node(a.op() == Op::BEx ? Rule::BAll : Rule::All, Sequent{na, a}, {n_ex}, na);
      all.eigen = v.var_name();
      return p.add(std::move(all));
    }
    default:
      return p.add(node(Rule::Ax, Sequent{na, a}, {}, a));
  }
}

}  // namespace

FinitaryProof expanded_identity_proof(const Formula& a) {
  FinitaryProof p;
  p.vars = a.free_vars();
  expand(p, a);
  return p;
}

FinitaryProof axiom_proof(Rule r, ProofNode witnesses, std::vector<std::string> vars) {
  if (!is_theory_axiom(r)) throw ValidationError("axiom_proof: not a theory axiom");
  witnesses.rule = r;
  witnesses.premises.clear();
  Formula f = axiom_instance(witnesses, 1 << 20);
  witnesses.conclusion = Sequent{f};
  FinitaryProof p;
  p.vars = vars.empty() ? f.free_vars() : std::move(vars);
  p.add(std::move(witnesses));
  return p;
}

FinitaryProof one_cut_proof() {
  const Term zero = Term::zero(), v = Term::var("v"), z = Term::var("z");
  const Formula c = axioms::pair(zero, zero);
  const Formula goal = Formula::ex("z", Formula::in(zero, z));
  const Formula in0v = Formula::in(zero, v);
  const Formula out0v = Formula::disj(negate(in0v), negate(in0v));
  FinitaryProof p;
  auto a1 = p.add(node(Rule::Ax, Sequent{negate(in0v), in0v}, {}, in0v));
  auto a2 = p.add(node(Rule::Or, Sequent{out0v, in0v}, {a1}, out0v));
  ProofNode ex = node(Rule::Ex, Sequent{out0v, goal}, {a2}, goal);
  ex.term = v;
  auto a3 = p.add(std::move(ex));
  ProofNode all = node(Rule::All, Sequent{negate(c), goal}, {a3}, negate(c));
  all.eigen = "v";
  auto a4 = p.add(std::move(all));
  ProofNode pair;
  pair.rule = Rule::Pair;
  pair.conclusion = Sequent{c};
  pair.terms = {zero, zero};
  auto a5 = p.add(std::move(pair));
  ProofNode cut;
  cut.rule = Rule::Cut;
  cut.conclusion = Sequent{goal};
  cut.premises = {a4, a5};
  cut.cut = c;
  p.add(std::move(cut));
  return p;
}

}  // namespace kpr
