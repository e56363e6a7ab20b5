#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "fintop/bundles.hpp"
#include "fintop/document.hpp"
#include "fintop/examples.hpp"

namespace {

using namespace fintop;

struct JobConfig {
  std::vector<std::string> inputs;
  std::string out;
  std::string format;  // "table" | "document" | "" (command default)
  std::uint64_t budget = 10'000'000;
  std::int64_t seed = 0;  // reserved for randomized commands; outputs are deterministic
  std::string example;
  bool dump_opens = false;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot read input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load(const std::string& path) { return parse_text(slurp(path)); }

std::string doc_kind(const json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc.at("kind").is_string())
    throw parse_error("document has no kind");
  return doc.at("kind").get<std::string>();
}

json load_kind(const std::string& path, const std::string& kind) {
  json doc = load(path);
  if (doc_kind(doc) != kind)
    throw parse_error(path + ": expected a " + kind + " document, got " + doc_kind(doc));
  return doc;
}

void write_out(const JobConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw std::runtime_error("cannot write output file: " + cfg.out);
  f << text;
}

std::string format_or(const JobConfig& cfg, const char* fallback) {
  if (cfg.format.empty()) return fallback;
  return cfg.format;
}

std::string arrow_text(const FinSpace& fiber_from, const FinSpace& fiber_to,
                       const std::vector<int>& img) {
  bool ident = true;
  for (std::size_t x = 0; x < img.size(); ++x)
    if (img[x] != static_cast<int>(x) || !(fiber_from.label(x) == fiber_to.label(img[x])))
      ident = false;
  if (ident) return "id";
  std::string s;
  for (std::size_t x = 0; x < img.size(); ++x) {
    if (fiber_from.label(x) == fiber_to.label(img[x])) continue;
    if (!s.empty()) s += " ";
    s += fiber_from.label(x) + "->" + fiber_to.label(img[x]);
  }
  return s.empty() ? "id" : s;
}

int cmd_check(const JobConfig& cfg) {
  json doc = cfg.example.empty() ? load(cfg.inputs.at(0)) : examples::registry_document(cfg.example);
  ValidationReport report = validate_document(doc);
  std::ostringstream out;
  if (report.issues.empty()) {
    out << "ok (" << report.kind << ")\n";
    write_out(cfg, out.str());
    return 0;
  }
  out << report.kind << ": " << report.issues.size() << " issue(s)\n";
  for (const auto& i : report.issues) out << "  " << i << "\n";
  write_out(cfg, out.str());
  return 1;
}

int cmd_groth(const JobConfig& cfg) {
  json doc =
      cfg.example.empty() ? load_kind(cfg.inputs.at(0), "functor") : examples::registry_document(cfg.example);
  TopFunctor d = parse_functor(doc);
  GrothSpace g = groth(d);
  if (format_or(cfg, "document") == "table") {
    std::ostringstream out;
    out << "points: " << g.space.size() << "\n";
    for (std::size_t e = 0; e < g.space.size(); ++e)
      out << "  " << g.space.label(e) << " -> " << g.functor.base().label(g.projection(e)) << "\n";
    write_out(cfg, out.str());
    return 0;
  }
  json emitted = emit_groth(g);
  if (cfg.dump_opens) attach_opens(emitted["space"], g.space);
  write_out(cfg, to_document_string(emitted));
  return 0;
}

int cmd_classify(const JobConfig& cfg) {
  FinSpace base, fiber;
  if (!cfg.example.empty()) {
    if (cfg.example == "ss0") {
      base = examples::ss0();
      fiber = examples::ss0();
    } else if (cfg.example == "indiscrete-fiber") {
      base = examples::ss0();
      fiber = examples::indiscrete2();
    } else {
      throw std::invalid_argument("classify supports --example ss0 or indiscrete-fiber");
    }
  } else {
    base = parse_space(load_kind(cfg.inputs.at(0), "space"));
    fiber = parse_space(load_kind(cfg.inputs.at(1), "space"));
  }
  SearchBudget budget{cfg.budget, 0};
  ClassTable table = classify(base, fiber, &budget);

  if (format_or(cfg, "table") == "document") {
    write_out(cfg, to_document_string(emit_classtable(table)));
  } else {
    std::ostringstream out;
    out << "classes: " << table.classes.size() << " (functors enumerated: " << table.functor_count
        << ")\n";
    if (table.inconclusive) out << "inconclusive: search budget exhausted; partial report\n";
    auto cover = base.covering_pairs();
    for (std::size_t c = 0; c < table.classes.size(); ++c) {
      const auto& entry = table.classes[c];
      out << "class " << (c + 1) << ": size " << entry.size << ", total "
          << entry.bundle.total().size() << " points\n";
      for (auto [i, j] : cover)
        out << "  " << base.label(i) << "<=" << base.label(j) << ": "
            << arrow_text(entry.representative.object_at(i), entry.representative.object_at(j),
                          entry.representative.arrow_image(i, j))
            << "\n";
    }
    write_out(cfg, out.str());
  }
  return table.inconclusive ? 3 : 0;
}

FiberBundle load_verified_bundle(const std::string& path, SearchBudget* budget) {
  ParsedBundle pb = parse_bundle(load_kind(path, "bundle"));
  auto verified = verify_bundle(pb.map, pb.fiber, budget);
  if (!verified)
    throw std::invalid_argument(path + ": not a fiber bundle with the given fiber");
  return *verified;
}

int cmd_canrep(const JobConfig& cfg) {
  SearchBudget budget{cfg.budget, 0};
  FiberBundle p = load_verified_bundle(cfg.inputs.at(0), &budget);
  CanonicalRep rep = canonical_representation(p);
  write_out(cfg, to_document_string(emit_functor(rep.functor)));
  return 0;
}

int cmd_iso(const JobConfig& cfg) {
  SearchBudget budget{cfg.budget, 0};
  FiberBundle p = load_verified_bundle(cfg.inputs.at(0), &budget);
  FiberBundle q = load_verified_bundle(cfg.inputs.at(1), &budget);
  auto h = bundle_iso(p, q, &budget);
  if (!h) {
    write_out(cfg, "not isomorphic\n");
    return 1;
  }
  if (format_or(cfg, "document") == "table") {
    std::ostringstream out;
    out << "isomorphic\n";
    for (std::size_t e = 0; e < h->dom().size(); ++e)
      out << "  " << h->dom().label(e) << " -> " << h->cod().label((*h)(e)) << "\n";
    write_out(cfg, out.str());
  } else {
    write_out(cfg, to_document_string(emit_map(*h)));
  }
  return 0;
}

int cmd_pullback(const JobConfig& cfg) {
  SearchBudget budget{cfg.budget, 0};
  FiberBundle p = load_verified_bundle(cfg.inputs.at(0), &budget);
  ContinuousMap f = parse_map(load_kind(cfg.inputs.at(1), "map"));
  FiberBundle pulled = pullback_bundle(p, f);
  write_out(cfg, to_document_string(emit_bundle(pulled)));
  return 0;
}

int cmd_verify(const JobConfig& cfg) {
  SearchBudget budget{cfg.budget, 0};
  ContinuousMap p = parse_map(load_kind(cfg.inputs.at(0), "map"));
  FinSpace fiber = parse_space(load_kind(cfg.inputs.at(1), "space"));
  auto verified = verify_bundle(p, fiber, &budget);

  if (format_or(cfg, "document") == "table") {
    std::ostringstream out;
    out << (verified ? "verified" : "not a fiber bundle") << "\n";
    if (verified)
      for (std::size_t b = 0; b < p.cod().size(); ++b) {
        out << "U_" << p.cod().label(b) << ":\n";
        const auto& w = (*verified->witnesses)[b];
        for (std::size_t e = 0; e < w.size(); ++e)
          if (w[e] >= 0)
            out << "  " << p.dom().label(e) << " -> (" << p.cod().label(p(e)) << ","
                << fiber.label(w[e]) << ")\n";
      }
    write_out(cfg, out.str());
    return verified ? 0 : 1;
  }

  json doc;
  doc["kind"] = "verification";
  doc["map"] = emit_map(p);
  doc["fiber"] = emit_space(fiber);
  doc["verified"] = verified.has_value();
  if (verified) {
    json wits = json::object();
    for (std::size_t b = 0; b < p.cod().size(); ++b) {
      json one = json::object();
      const auto& w = (*verified->witnesses)[b];
      for (std::size_t e = 0; e < w.size(); ++e)
        if (w[e] >= 0) one[p.dom().label(e)] = fiber.label(w[e]);
      wits[p.cod().label(b)] = std::move(one);
    }
    doc["witnesses"] = std::move(wits);
  }
  write_out(cfg, to_document_string(doc));
  return verified ? 0 : 1;
}

int cmd_examples(const JobConfig& cfg) {
  if (cfg.inputs.empty() && cfg.example.empty()) {
    std::ostringstream out;
    for (const auto& n : examples::registry_names()) out << n << "\n";
    write_out(cfg, out.str());
    return 0;
  }
  std::string name = cfg.example.empty() ? cfg.inputs.at(0) : cfg.example;
  json doc = examples::registry_document(name);
  if (cfg.dump_opens && doc.at("kind") == "space") attach_opens(doc, parse_space(doc));
  write_out(cfg, to_document_string(doc));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fiber bundles over finite Alexandroff spaces"};
  app.require_subcommand(1);

  JobConfig cfg;
  std::string command;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "output path (default: stdout)");
    sub->add_option("--format", cfg.format, "table | document")
        ->check(CLI::IsMember({"table", "document"}));
    sub->add_option("--budget", cfg.budget, "search node budget")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed for randomized commands");
    sub->add_option("--example", cfg.example, "use a built-in example as input");
    sub->add_flag("--dump-opens", cfg.dump_opens,
                  "emit the full open-set lattice (spaces up to 12 points)");
    sub->callback([&, sub] { command = sub->get_name(); });
  };

  auto* check = app.add_subcommand("check", "validate a document");
  check->add_option("input", cfg.inputs, "document path")->expected(0, 1);
  add_common(check);

  auto* grothcmd = app.add_subcommand("groth", "Grothendieck construction of a functor");
  grothcmd->add_option("input", cfg.inputs, "functor document")->expected(0, 1);
  add_common(grothcmd);

  auto* classifycmd = app.add_subcommand("classify", "classify bundles over a base with a fiber");
  classifycmd->add_option("input", cfg.inputs, "base and fiber space documents")->expected(0, 2);
  add_common(classifycmd);

  auto* canrepcmd = app.add_subcommand("canrep", "canonical representation of a bundle");
  canrepcmd->add_option("input", cfg.inputs, "bundle document")->expected(1);
  add_common(canrepcmd);

  auto* isocmd = app.add_subcommand("iso", "over-base isomorphism of two bundles");
  isocmd->add_option("input", cfg.inputs, "two bundle documents")->expected(2);
  add_common(isocmd);

  auto* pullbackcmd = app.add_subcommand("pullback", "pullback of a bundle along a map");
  pullbackcmd->add_option("input", cfg.inputs, "bundle and map documents")->expected(2);
  add_common(pullbackcmd);

  auto* verifycmd = app.add_subcommand("verify", "search trivializations for a map");
  verifycmd->add_option("input", cfg.inputs, "map and fiber documents")->expected(2);
  add_common(verifycmd);

  auto* examplescmd = app.add_subcommand("examples", "list or emit built-in examples");
  examplescmd->add_option("input", cfg.inputs, "example name")->expected(0, 1);
  add_common(examplescmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (command == "check") return cmd_check(cfg);
    if (command == "groth") return cmd_groth(cfg);
    if (command == "classify") return cmd_classify(cfg);
    if (command == "canrep") return cmd_canrep(cfg);
    if (command == "iso") return cmd_iso(cfg);
    if (command == "pullback") return cmd_pullback(cfg);
    if (command == "verify") return cmd_verify(cfg);
    if (command == "examples") return cmd_examples(cfg);
    std::cerr << "unknown command\n";
    return 1;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const budget_exhausted& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
