// Command-line front end: ordinal arithmetic, proof checking, and cut
// elimination with trace export.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kpr/errors.hpp"
#include "kpr/finitary.hpp"
#include "kpr/infinitary.hpp"
#include "kpr/ord.hpp"

namespace {

using namespace kpr;

struct Config {
  std::string expr;
  std::string file;
  int n = 2;
  int depth = 3;
  int rounds = -1;  // all rounds down to rank 0
  std::optional<std::uint64_t> seed;
  std::string format = "text";
  std::string out_dir;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void emit(const Config& c, const std::vector<std::pair<std::string, std::string>>& fields) {
  if (c.format == "record") {
    for (std::size_t i = 0; i < fields.size(); ++i)
      std::cout << (i ? "\t" : "") << fields[i].first << "=" << fields[i].second;
    std::cout << "\n";
  } else {
    for (const auto& [k, v] : fields) std::cout << k << ": " << v << "\n";
  }
}

int cmd_ord(const Config& c) {
  const auto q = c.expr.find('?');
  if (q == std::string::npos) {
    std::cout << ord::render(ord::parse(c.expr)) << "\n";
    return 0;
  }
  const auto a = ord::parse(c.expr.substr(0, q)), b = ord::parse(c.expr.substr(q + 1));
  switch (ord::cmp(a, b)) {
    case ord::Cmp::Less: std::cout << "less\n"; break;
    case ord::Cmp::Equal: std::cout << "equal\n"; break;
    case ord::Cmp::Greater: std::cout << "greater\n"; break;
  }
  return 0;
}

/// Parses and checks; prints the failing node and returns nullptr on failure.
std::shared_ptr<const FinitaryProof> load_checked(const Config& c) {
  auto proof = std::make_shared<const FinitaryProof>(parse_proof(read_file(c.file)));
  auto rep = check_proof(*proof, c.n);
  if (!rep.ok) {
    emit(c, {{"file", c.file}, {"status", "rejected"}, {"node", rep.node}, {"diagnostic", rep.message}});
    return nullptr;
  }
  return proof;
}

int cmd_check(const Config& c) {
  auto proof = load_checked(c);
  if (!proof) return 1;
  const int m = embedding_rank(*proof);
  emit(c, {{"file", c.file},
           {"status", "ok"},
           {"end-sequent", end_sequent(*proof).render()},
           {"embedding-rank", std::to_string(m)},
           {"embedding-bound", ord::render(embedding_bound(m, {}))}});
  return 0;
}

std::string output_dir(const Config& c) {
  if (!c.out_dir.empty()) return c.out_dir;
  if (const char* env = std::getenv("KPR_OUT_DIR")) return env;
  return ".";
}

int cmd_elim(const Config& c) {
  auto proof = load_checked(c);
  if (!proof) return 1;
  const int m = embedding_rank(*proof);
  const int rounds = c.rounds < 0 ? m : c.rounds;
  DerivTerm d = emb(proof);
  const ord::OrdCode start = d.sig().bound;
  std::vector<std::string> warnings;
  for (int i = 0; i < rounds; ++i) {
    std::string w;
    d = elim_cuts(d, &w);
    if (!w.empty()) warnings.push_back("round " + std::to_string(i + 1) + ": " + w);
  }
  LocalOptions opt;
  opt.depth = c.depth;
  opt.n = c.n;
  opt.keep_trace = true;
  if (c.seed) opt.sampler = seeded_sampler(*c.seed);
  LocalReport rep = check_local(d, opt);

  namespace fs = std::filesystem;
  const fs::path dir = output_dir(c);
  fs::create_directories(dir);
  const fs::path trace = dir / (fs::path(c.file).stem().string() + ".r" + std::to_string(rounds) + ".trace");
  std::ofstream(trace) << render_trace(rep.trace);

  std::vector<std::pair<std::string, std::string>> fields{
      {"file", c.file},
      {"embedding-rank", std::to_string(m)},
      {"rounds", std::to_string(rounds)},
      {"bound", ord::render(d.sig().bound)},
      {"rank", std::to_string(d.sig().rank)},
  };
  if (rounds == m) {
    // The tower w_m(W*m) of the final bookkeeping; n0 is read off from m.
    const bool tower = ord::cmp(d.sig().bound, ord::omega_tower(m, start)) == ord::Cmp::Equal;
    fields.emplace_back("tower", tower && d.sig().rank == 0 ? "yes" : "no");
    fields.emplace_back("n0", std::to_string(m));
  }
  for (const auto& w : warnings) fields.emplace_back("warning", w);
  fields.emplace_back("check", rep.render());
  fields.emplace_back("trace", trace.string());
  emit(c, fields);
  return rep.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kpr: ordinal codes, KP proofs with reflection, and predicative cut elimination"};
  app.require_subcommand(1);
  Config c;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--N", c.n, "Reflection class Pi_{N+1}")->check(CLI::Range(2, 1 << 20));
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "record"}));
  };

  auto* ord_cmd = app.add_subcommand("ord", "Normal form of an ordinal expression, or compare with `a ? b`");
  ord_cmd->add_option("expr", c.expr, "Expression")->required();

  auto* check_cmd = app.add_subcommand("check", "Check a finitary proof script");
  check_cmd->add_option("file", c.file, "Proof script")->required();
  common(check_cmd);

  auto* elim_cmd = app.add_subcommand("elim", "Embed, eliminate cuts, check locally and export a trace");
  elim_cmd->add_option("file", c.file, "Proof script")->required();
  common(elim_cmd);
  elim_cmd->add_option("--rounds", c.rounds, "Rounds of cut elimination (default: down to rank 0)")
      ->check(CLI::NonNegativeNumber);
  elim_cmd->add_option("--depth", c.depth, "Expansion depth for local checking")->check(CLI::NonNegativeNumber);
  elim_cmd->add_option("--seed", c.seed, "Seed for sampling universe-indexed premises");
  elim_cmd->add_option("--out", c.out_dir, "Trace directory (default: $KPR_OUT_DIR or .)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*ord_cmd) return cmd_ord(c);
    if (*check_cmd) return cmd_check(c);
    return cmd_elim(c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
