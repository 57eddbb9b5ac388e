// Command-line front end: group/G-set computations with deterministic JSON
// or plain-text output.
#include <tambara/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace tambara;

struct Options {
  std::string group_spec = "cyclic:2";
  std::uint64_t cap = kDefaultCap;
  std::uint64_t seed = 0;
  bool plain = false;
};

std::vector<Int> parse_int_vector(const std::string& text) {
  std::vector<Int> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ','))
    if (!tok.empty()) out.emplace_back(tok);
  return out;
}

// Map literal N>M:i0,i1,...  (sets carry the trivial action of the ambient
// group; omit the image list only for M = 1).
GMap parse_map_literal(const GroupPtr& g, const std::string& text) {
  auto gt = text.find('>');
  if (gt == std::string::npos) throw ValidationError("map literal: expected 'N>M[:images]'");
  int n = std::stoi(text.substr(0, gt));
  auto colon = text.find(':', gt);
  int m = std::stoi(text.substr(gt + 1, colon == std::string::npos ? std::string::npos : colon - gt - 1));
  std::vector<int> imgs;
  if (colon != std::string::npos) {
    std::istringstream is(text.substr(colon + 1));
    std::string tok;
    while (std::getline(is, tok, ','))
      if (!tok.empty()) imgs.push_back(std::stoi(tok));
  } else {
    if (m != 1) throw ValidationError("map literal: image list required unless target is a point");
    imgs.assign(n, 0);
  }
  if (static_cast<int>(imgs.size()) != n)
    throw ValidationError("map literal: expected " + std::to_string(n) + " images");
  auto trivial = [&](int size) {
    GSet x{g, size, {}};
    x.act_table.assign(g->order * size, 0);
    for (int a = 0; a < g->order; ++a)
      for (int p = 0; p < size; ++p) x.act_table[a * size + p] = p;
    return x;
  };
  GMap f{trivial(n), trivial(m), imgs};
  for (int v : imgs)
    if (v < 0 || v >= m) throw ValidationError("map literal: image out of range");
  return f;
}

// word syntax: generators separated by ';', each 'T:maplit' etc., listed in
// composition order (leftmost applied last).
TNRWord parse_word(const GroupPtr& g, const std::string& text) {
  TNRWord w;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ';')) {
    if (tok.empty()) continue;
    if (tok.size() < 2 || tok[1] != ':') throw ValidationError("word: expected 'T:', 'N:' or 'R:' prefix");
    Gen tag;
    switch (tok[0]) {
      case 'T': tag = Gen::T; break;
      case 'N': tag = Gen::N; break;
      case 'R': tag = Gen::R; break;
      default: throw ValidationError("word: unknown generator tag");
    }
    w.gens.emplace_back(tag, parse_map_literal(g, tok.substr(2)));
  }
  if (w.gens.empty()) throw ValidationError("word: empty");
  return w;
}

void emit(const Options& opt, const json& doc, const std::string& plain) {
  if (opt.plain)
    std::cout << plain << "\n";
  else
    std::cout << doc.dump(2) << "\n";
}

json classes_json(const SubgroupSystem& sys) {
  json arr = json::array();
  for (int i = 0; i < sys.size(); ++i)
    arr.push_back({{"elements", sys.reps[i].elements},
                   {"order", sys.reps[i].order()},
                   {"weyl_order", sys.weyl_order[i]}});
  return arr;
}

int cmd_marks(const Options& opt) {
  auto g = make_group(opt.group_spec);
  auto sys = subgroup_system(g);
  auto marks = table_of_marks(sys);
  json rows = json::array();
  std::ostringstream plain;
  for (int i = 0; i < sys.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < sys.size(); ++j) {
      row.push_back(marks[i][j].str());
      plain << marks[i][j].str() << (j + 1 == sys.size() ? "" : " ");
    }
    plain << "\n";
    rows.push_back(row);
  }
  emit(opt, {{"classes", classes_json(sys)}, {"group", opt.group_spec}, {"marks", rows}}, plain.str());
  return 0;
}

int cmd_burnside_mul(const Options& opt) {
  auto g = make_group(opt.group_spec);
  auto sys = subgroup_system(g);
  json table = json::array();
  std::ostringstream plain;
  for (int i = 0; i < sys.size(); ++i) {
    json row = json::array();
    for (int j = 0; j < sys.size(); ++j) {
      auto prod = burnside_basis_product(sys, i, j);
      row.push_back(prod);
      plain << "[" << i << "]*[" << j << "] =";
      for (int k = 0; k < sys.size(); ++k)
        if (prod[k]) plain << " " << prod[k] << "*[" << k << "]";
      plain << "\n";
    }
    table.push_back(row);
  }
  emit(opt, {{"group", opt.group_spec}, {"table", table}}, plain.str());
  return 0;
}

int cmd_witt(const Options& opt, const std::string& xs, const std::string& ys, bool multiply) {
  WittContext ctx(make_group(opt.group_spec));
  WittVector<Int> x{parse_int_vector(xs)}, y{parse_int_vector(ys)};
  if (static_cast<int>(x.coeffs.size()) != ctx.size() ||
      static_cast<int>(y.coeffs.size()) != ctx.size())
    throw ValidationError("witt: vectors must have one entry per subgroup class (" +
                          std::to_string(ctx.size()) + ")");
  auto z = multiply ? witt_mul(ctx, x, y) : witt_add(ctx, x, y);
  json coeffs = json::array();
  std::ostringstream plain;
  for (int i = 0; i < ctx.size(); ++i) {
    coeffs.push_back(z.coeffs[i].str());
    plain << z.coeffs[i].str() << (i + 1 == ctx.size() ? "" : ",");
  }
  emit(opt, {{"group", opt.group_spec}, {"op", multiply ? "mul" : "add"}, {"result", coeffs}},
       plain.str());
  return 0;
}

int cmd_ghost(const Options& opt, const std::string& xs) {
  WittContext ctx(make_group(opt.group_spec));
  WittVector<Int> x{parse_int_vector(xs)};
  if (static_cast<int>(x.coeffs.size()) != ctx.size())
    throw ValidationError("ghost: vector must have one entry per subgroup class");
  auto g = ghost(ctx, x);
  json coeffs = json::array();
  std::ostringstream plain;
  for (int i = 0; i < ctx.size(); ++i) {
    coeffs.push_back(g[i].str());
    plain << g[i].str() << (i + 1 == ctx.size() ? "" : ",");
  }
  emit(opt, {{"ghost", coeffs}, {"group", opt.group_spec}}, plain.str());
  return 0;
}

int cmd_witt_universal(const Options& opt) {
  WittContext ctx(make_group(opt.group_spec));
  const auto& up = witt_universal(ctx);
  auto namer = [r = ctx.size()](unsigned v) {
    return (v < static_cast<unsigned>(r) ? "x" + std::to_string(v + 1)
                                         : "y" + std::to_string(v - r + 1));
  };
  json sums = json::array(), prods = json::array();
  std::ostringstream plain;
  for (int i = 0; i < ctx.size(); ++i) {
    sums.push_back(up.sum[i].str(namer));
    prods.push_back(up.prod[i].str(namer));
    plain << "s" << i + 1 << " = " << up.sum[i].str(namer) << "\n";
  }
  for (int i = 0; i < ctx.size(); ++i) plain << "p" << i + 1 << " = " << up.prod[i].str(namer) << "\n";
  emit(opt, {{"group", opt.group_spec}, {"prod", prods}, {"sum", sums}}, plain.str());
  return 0;
}

json bispan_json(const Bispan& w, const SubgroupSystem& sys, std::uint64_t cap) {
  return {{"a_size", w.carrier_a().size},
          {"b_size", w.carrier_b().size},
          {"key", bispan_canonical_key(w, sys, cap)},
          {"source_size", w.source().size},
          {"target_size", w.target().size}};
}

int cmd_distributor(const Options& opt, const std::string& fs, const std::string& gs) {
  auto g = make_group(opt.group_spec);
  GMap f = parse_map_literal(g, fs);
  GMap gg = parse_map_literal(g, gs);
  if (!(f.cod == gg.dom)) throw ValidationError("distributor: maps are not composable");
  Bispan d = distributor(f, gg, opt.cap);
  auto sys = subgroup_system(g);
  std::ostringstream plain;
  plain << "A=" << d.carrier_a().size << " B=" << d.carrier_b().size;
  emit(opt, bispan_json(d, sys, opt.cap), plain.str());
  return 0;
}

int cmd_bispan_compose(const Options& opt, const std::string& first, const std::string& second) {
  auto g = make_group(opt.group_spec);
  Bispan w0 = word_to_bispan(parse_word(g, first), opt.cap);
  Bispan w1 = word_to_bispan(parse_word(g, second), opt.cap);
  Bispan c = compose_bispans(w1, w0, opt.cap);
  auto sys = subgroup_system(g);
  std::ostringstream plain;
  plain << "A=" << c.carrier_a().size << " B=" << c.carrier_b().size;
  emit(opt, bispan_json(c, sys, opt.cap), plain.str());
  return 0;
}

int cmd_normalize(const Options& opt, const std::string& word) {
  auto g = make_group(opt.group_spec);
  Bispan w = word_to_bispan(parse_word(g, word), opt.cap);
  auto sys = subgroup_system(g);
  std::ostringstream plain;
  plain << bispan_canonical_key(w, sys, opt.cap);
  emit(opt, bispan_json(w, sys, opt.cap), plain.str());
  return 0;
}

int cmd_c2_pair(const Options& opt, const std::string& which) {
  auto c2 = make_group("cyclic:2");
  std::optional<std::string> bad;
  json doc;
  if (which == "egtp") {
    EgTpPair p;
    bad = check_pair_axioms(p, p.samples_a(10, opt.seed), p.samples_b(10, opt.seed));
    doc["pair"] = "egtp";
  } else if (which == "trivint") {
    TrivIntPair p;
    bad = check_pair_axioms(p, p.samples_a(10, opt.seed), p.samples_b(10, opt.seed));
    doc["pair"] = "trivint";
  } else if (which == "burnside") {
    BurnsideCarrier burn(c2, opt.cap);
    FunctorPair<BurnsideCarrier> p(burn, c2);
    bad = check_pair_axioms(p, p.samples_a(6, opt.seed), p.samples_b(6, opt.seed));
    doc["pair"] = "burnside";
    GSet g{c2, 2, {0, 1, 1, 0}};
    GSet pt = point_gset(c2);
    GMap eps = terminal_map(g);
    doc["trc_1"] = burn.transfer(eps, burn.one(g)).str();
    doc["nrm_2"] = burn.norm(eps, burn.add(g, burn.one(g), burn.one(g))).str();
  } else {
    throw ValidationError("c2-pair: expected egtp, trivint or burnside");
  }
  doc["valid"] = !bad.has_value();
  if (bad) doc["failed_axiom"] = *bad;
  std::ostringstream plain;
  plain << (bad ? "INVALID: " + *bad : std::string("valid"));
  emit(opt, doc, plain.str());
  return bad ? 3 : 0;
}

int cmd_verify(const Options& opt, const std::string& suite) {
  std::vector<std::string> names;
  if (suite == "all")
    for (const auto& [n, fn] : verify::suites()) names.push_back(n);
  else
    names.push_back(suite);
  bool all_pass = true;
  json results = json::array();
  for (const auto& n : names) {
    auto r = verify::run_suite(n, opt.seed, opt.cap);
    all_pass = all_pass && r.pass;
    results.push_back({{"detail", r.detail}, {"pass", r.pass}, {"seconds", r.seconds}, {"suite", r.name}});
    std::ostringstream line;
    line << (r.pass ? "PASS" : "FAIL") << "  " << n << "  (" << r.detail << ")";
    if (opt.plain) std::cout << line.str() << "\n";
  }
  if (!opt.plain) std::cout << json{{"results", results}}.dump(2) << "\n";
  return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equivariant algebra engine: Burnside/Mackey/Tambara computations"};
  app.require_subcommand(1);

  Options opt;
  if (const char* env = std::getenv("TAMBARA_CAP")) opt.cap = std::strtoull(env, nullptr, 10);
  app.add_option("--group", opt.group_spec, "group spec: cyclic:N, symmetric:N, dihedral:N, table:...");
  app.add_option("--cap", opt.cap, "enumeration cap");
  app.add_option("--seed", opt.seed, "seed for randomized suites");
  bool json_flag = false;
  auto* plain_flag = app.add_flag("--plain", opt.plain, "plain text output");
  app.add_flag("--json", json_flag, "JSON output (default)")->excludes(plain_flag);

  std::string xs, ys, fs, gs, word, word2, pair_name = "egtp", suite = "all";
  auto* marks = app.add_subcommand("marks", "table of fixed-point counts |(G/H_i)^{H_j}|");
  auto* bmul = app.add_subcommand("burnside-mul", "multiplication table of orbit classes");
  auto* wadd = app.add_subcommand("witt-add", "Witt vector sum");
  wadd->add_option("--x", xs)->required();
  wadd->add_option("--y", ys)->required();
  auto* wmul = app.add_subcommand("witt-mul", "Witt vector product");
  wmul->add_option("--x", xs)->required();
  wmul->add_option("--y", ys)->required();
  auto* wuni = app.add_subcommand("witt-universal", "universal sum/product polynomials");
  auto* gho = app.add_subcommand("ghost", "ghost vector of a Witt vector");
  gho->add_option("--x", xs)->required();
  auto* dist = app.add_subcommand("distributor", "distributor bispan of two maps");
  dist->add_option("--f", fs)->required();
  dist->add_option("--g", gs)->required();
  auto* bcomp = app.add_subcommand("bispan-compose", "compose two TNR words as bispans");
  bcomp->add_option("--first", word)->required();
  bcomp->add_option("--second", word2)->required();
  auto* norm = app.add_subcommand("normalize", "canonical bispan of a TNR word");
  norm->add_option("--word", word)->required();
  auto* pair = app.add_subcommand("c2-pair", "extract/validate a Tambara pair");
  pair->add_option("--pair", pair_name, "egtp, trivint or burnside");
  auto* ver = app.add_subcommand("verify", "run a named invariant suite (or 'all')");
  ver->add_option("suite", suite, "suite name");

  try {
    app.parse(argc, argv);
    if (marks->parsed()) return cmd_marks(opt);
    if (bmul->parsed()) return cmd_burnside_mul(opt);
    if (wadd->parsed()) return cmd_witt(opt, xs, ys, false);
    if (wmul->parsed()) return cmd_witt(opt, xs, ys, true);
    if (wuni->parsed()) return cmd_witt_universal(opt);
    if (gho->parsed()) return cmd_ghost(opt, xs);
    if (dist->parsed()) return cmd_distributor(opt, fs, gs);
    if (bcomp->parsed()) return cmd_bispan_compose(opt, word, word2);
    if (norm->parsed()) return cmd_normalize(opt, word);
    if (pair->parsed()) return cmd_c2_pair(opt, pair_name);
    if (ver->parsed()) return cmd_verify(opt, suite);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const SizeCapError& e) {
    std::cerr << "size cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
