// covlim: command-line front end.
//
// Exit codes: 0 success (check: Connected), 1 input error,
// 2 Disconnected, 3 Unknown.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "covlim/covlim.hpp"

using namespace covlim;

namespace {

constexpr int kInputError = 1;

int exit_code(Connectivity c) {
  switch (c) {
    case Connectivity::Connected: return 0;
    case Connectivity::Disconnected: return 2;
    case Connectivity::Unknown: return 3;
  }
  return kInputError;
}

struct CheckOptions {
  std::string tower;
  std::optional<std::size_t> horizon;
  bool no_cache = false;
  std::string cache_dir;
  bool pi1 = false;
};

int cmd_check(const CheckOptions& o) {
  CoveringTower t;
  if (const BuiltinTower* b = find_builtin(o.tower); b && !std::filesystem::exists(o.tower))
    t = parse_tower(b->make(o.horizon.value_or(8)));
  else
    t = load_tower_file(o.tower);
  if (o.horizon) t.horizon = *o.horizon;

  ValidationReport rep = validate_tower(t);
  if (!rep.ok()) {
    for (const auto& v : rep.violations)
      std::cerr << "violation at level " << v.level << " (" << v.kind << "): " << v.message << '\n';
    return kInputError;
  }

  std::unique_ptr<FileCache> cache;
  if (!o.no_cache) {
    std::optional<std::filesystem::path> dir;
    if (!o.cache_dir.empty())
      dir = o.cache_dir;
    else
      dir = default_cache_dir();
    if (dir) cache = std::make_unique<FileCache>(*dir);
  }

  TowerAnalysis a(t, t.horizon, cache.get());
  Verdict v = a.connectivity_verdict();
  std::cout << format_report(t, v);
  if (o.pi1) {
    Pi1Report p = a.pi1_of_limit();
    std::cout << "PI1: " << p.summary << '\n';
    for (const auto& d : p.details) std::cout << "PI1-LEVEL: " << d << '\n';
  }
  return exit_code(v.status);
}

int cmd_examples(const std::string& dump_dir) {
  for (const auto& b : builtin_towers())
    std::cout << b.name << "\t" << to_string(b.expected) << "\t" << b.anchor << '\n';
  if (dump_dir.empty()) return 0;
  std::filesystem::create_directories(dump_dir);
  for (const auto& b : builtin_towers()) {
    const auto path = std::filesystem::path(dump_dir) / (b.name + ".json");
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path.string());
    out << b.make(8).dump(2) << '\n';
  }
  return 0;
}

int cmd_core(const std::vector<std::string>& words, int rank) {
  if (rank <= 0) {
    rank = 1;
    for (const auto& w : words) rank = std::max(rank, max_generator_index(w));
  }
  std::vector<Word> gens;
  for (const auto& w : words) gens.push_back(parse_word(w, rank));
  CoreGraph core = core_from_generators(gens, rank);
  std::cout << "vertices: " << core.vertex_count() << '\n';
  std::cout << "edges: " << core.edge_count() << '\n';
  for (const auto& e : core.as_labeled().edges)
    std::cout << "  " << e.source << " --x" << e.label << "--> " << e.target << '\n';
  std::cout << "rank: " << core.subgroup_rank() << '\n';
  auto cov = complete_to_covering(core);
  std::cout << "index: " << (cov ? std::to_string(cov->index()) : std::string("infinite")) << '\n';
  if (cov) std::cout << "normal: " << (is_normal(*cov) ? "yes" : "no") << '\n';
  std::cout << "basis:";
  for (const auto& g : core.generators()) std::cout << " [" << to_string(g) << "]";
  std::cout << '\n' << "encoding: " << core.encoding() << '\n';
  return 0;
}

int cmd_factor(const std::string& path) {
  CoherentWordSeq s = load_coherent_file(path);
  if (auto bad = validate_coherent(s)) {
    std::cerr << "incoherent at level " << bad->level << ": " << bad->message << '\n';
    return kInputError;
  }
  Factorization f = factor_tail_kernel(s);
  std::cout << "horizon: " << s.horizon() << '\n';
  std::cout << "profile:";
  for (auto e : f.g.exponents) std::cout << ' ' << e;
  std::cout << '\n';
  std::cout << "g: " << to_string(f.g.truncation(s.horizon())) << '\n';
  for (std::size_t i = 1; i <= s.horizon(); ++i) std::cout << "k" << i << ": " << to_string(f.k.at(i)) << '\n';
  auto failures = factorization_failures(s, f);
  if (failures.empty())
    std::cout << "certificate: w_i = g_i k_i and k_i has zero exponent sums for every i <= " << s.horizon() << '\n';
  else
    std::cout << "certificate: FAILED at level " << failures.front() << '\n';
  OccurrenceReport occ = letter_occurrence_report(s);
  std::cout << "occurrences:";
  for (auto c : occ.counts) std::cout << ' ' << c;
  std::cout << '\n';
  for (auto g : occ.growing) std::cout << "growing: x" << g << " (tail-word membership doubtful)\n";
  return failures.empty() ? 0 : kInputError;
}

int cmd_member(const std::string& word, const std::string& spec) {
  if (spec == "derived" || spec == "derived2") {
    const int rank = std::max(1, max_generator_index(word));
    Word w = parse_word(word, rank);
    bool in = spec == "derived" ? is_in_first_derived(w) : is_in_second_derived(w);
    std::cout << (in ? "true" : "false") << '\n';
    return 0;
  }
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ';');)
    if (p.find_first_not_of(" \t") != std::string::npos) parts.push_back(p);
  int rank = std::max(1, max_generator_index(word));
  for (const auto& p : parts) rank = std::max(rank, max_generator_index(p));
  std::vector<Word> gens;
  for (const auto& p : parts) gens.push_back(parse_word(p, rank));
  bool in = core_from_generators(gens, rank).member(parse_word(word, rank));
  std::cout << (in ? "true" : "false") << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Path-connectivity of inverse limits of covering towers"};
  app.require_subcommand(1);

  CheckOptions check;
  auto* c = app.add_subcommand("check", "verdict report for a tower file or built-in tower");
  c->add_option("tower", check.tower, "tower file, or the name of a built-in tower")->required();
  c->add_option("--horizon", check.horizon, "number of levels to examine")->check(CLI::PositiveNumber);
  c->add_flag("--no-cache", check.no_cache, "do not read or write the image cache");
  c->add_option("--cache-dir", check.cache_dir, "cache directory (default: $COVLIM_CACHE_DIR)");
  c->add_flag("--pi1", check.pi1, "also describe the fundamental group of the limit");

  std::string dump_dir;
  auto* e = app.add_subcommand("examples", "list the built-in towers");
  e->add_option("--dump", dump_dir, "write each built-in tower as a JSON file into this directory");

  std::vector<std::string> core_words;
  int core_rank = 0;
  auto* k = app.add_subcommand("core", "Stallings core graph of a finitely generated subgroup");
  k->add_option("words", core_words, "generating words")->required();
  k->add_option("--rank", core_rank, "rank of the ambient free group (default: largest generator used)");

  std::string factor_path;
  auto* f = app.add_subcommand("factor", "split a coherent word sequence as tail word times commutator part");
  f->add_option("file", factor_path, "one word per line, line i in F_i")->required();

  std::string member_word, member_spec;
  auto* m = app.add_subcommand("member", "subgroup membership of a word");
  m->add_option("word", member_word)->required();
  m->add_option("--subgroup", member_spec, "derived, derived2, or generators separated by ';'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int code = app.exit(err);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*c) return cmd_check(check);
    if (*e) return cmd_examples(dump_dir);
    if (*k) return cmd_core(core_words, core_rank);
    if (*f) return cmd_factor(factor_path);
    if (*m) return cmd_member(member_word, member_spec);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
