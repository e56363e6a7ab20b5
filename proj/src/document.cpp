#include "fintop/document.hpp"

#include <algorithm>

namespace fintop {

namespace {

const json& need(const json& doc, const char* field) {
  if (!doc.is_object()) throw parse_error("document is not an object");
  auto it = doc.find(field);
  if (it == doc.end()) throw parse_error(std::string("missing field: ") + field);
  return *it;
}

std::string need_string(const json& v, const char* what) {
  if (!v.is_string()) throw parse_error(std::string(what) + " must be a string");
  return v.get<std::string>();
}

std::vector<std::pair<std::string, std::string>> parse_label_pairs(const json& v,
                                                                   const char* what) {
  if (!v.is_array()) throw parse_error(std::string(what) + " must be an array");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& item : v) {
    if (!item.is_array() || item.size() != 2)
      throw parse_error(std::string(what) + " entries must be 2-element arrays");
    out.emplace_back(need_string(item[0], what), need_string(item[1], what));
  }
  return out;
}

// Label-keyed point map onto the domain's points; must be total.
std::vector<int> parse_point_map(const json& v, const FinSpace& dom, const FinSpace& cod,
                                 const char* what) {
  if (!v.is_object()) throw parse_error(std::string(what) + " must be an object");
  std::vector<int> img(dom.size(), -1);
  for (const auto& [key, val] : v.items()) {
    auto di = dom.index_of(key);
    if (!di) throw std::invalid_argument(std::string(what) + ": unknown domain point " + key);
    auto ci = cod.index_of(need_string(val, what));
    if (!ci)
      throw std::invalid_argument(std::string(what) + ": unknown codomain point " +
                                  val.get<std::string>());
    img[*di] = static_cast<int>(*ci);
  }
  for (std::size_t i = 0; i < dom.size(); ++i)
    if (img[i] < 0)
      throw std::invalid_argument(std::string(what) + ": no image for point " + dom.label(i));
  return img;
}

json point_map_doc(const FinSpace& dom, const FinSpace& cod, const std::vector<int>& img) {
  json m = json::object();
  for (std::size_t i = 0; i < dom.size(); ++i) m[dom.label(i)] = cod.label(img[i]);
  return m;
}

}  // namespace

json emit_space(const FinSpace& x) {
  json doc;
  doc["kind"] = "space";
  doc["points"] = x.labels();
  json gens = json::array();
  for (auto [i, j] : x.generators()) gens.push_back(json::array({x.label(i), x.label(j)}));
  doc["leq"] = std::move(gens);
  json closure = json::array();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x.leq(i, j)) closure.push_back(json::array({x.label(i), x.label(j)}));
  doc["leq_closure"] = std::move(closure);
  return doc;
}

void attach_opens(json& space_doc, const FinSpace& x) {
  if (x.size() > 12) throw std::invalid_argument("open-set dump limited to 12 points");
  json opens = json::array();
  for (const auto& s : x.open_sets()) {
    json one = json::array();
    s.for_each([&](std::size_t i) { one.push_back(x.label(i)); });
    opens.push_back(std::move(one));
  }
  space_doc["opens"] = std::move(opens);
}

FinSpace parse_space(const json& doc) {
  const json& pts = need(doc, "points");
  if (!pts.is_array()) throw parse_error("points must be an array");
  std::vector<std::string> labels;
  for (const auto& p : pts) labels.push_back(need_string(p, "point"));

  std::vector<std::pair<std::string, std::string>> gens;
  if (doc.contains("leq")) gens = parse_label_pairs(doc.at("leq"), "leq");
  FinSpace x = FinSpace::from_relations(std::move(labels), gens);

  if (doc.contains("leq_closure")) {
    auto closure = parse_label_pairs(doc.at("leq_closure"), "leq_closure");
    std::vector<std::pair<int, int>> given;
    for (const auto& [a, b] : closure) {
      auto ia = x.index_of(a), ib = x.index_of(b);
      if (!ia || !ib) throw std::invalid_argument("leq_closure mentions an unknown point");
      given.emplace_back(static_cast<int>(*ia), static_cast<int>(*ib));
    }
    std::sort(given.begin(), given.end());
    given.erase(std::unique(given.begin(), given.end()), given.end());
    std::vector<std::pair<int, int>> actual;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j)
        if (x.leq(i, j)) actual.emplace_back(static_cast<int>(i), static_cast<int>(j));
    if (given != actual)
      throw std::invalid_argument(
          "leq_closure does not match the closure of the leq generators");
  }
  return x;
}

json emit_map(const ContinuousMap& f) {
  json doc;
  doc["kind"] = "map";
  doc["dom"] = emit_space(f.dom());
  doc["cod"] = emit_space(f.cod());
  doc["map"] = point_map_doc(f.dom(), f.cod(), f.image());
  return doc;
}

ContinuousMap parse_map(const json& doc) {
  FinSpace dom = parse_space(need(doc, "dom"));
  FinSpace cod = parse_space(need(doc, "cod"));
  auto img = parse_point_map(need(doc, "map"), dom, cod, "map");
  return ContinuousMap(std::move(dom), std::move(cod), std::move(img));
}

json emit_functor(const TopFunctor& d) {
  json doc;
  doc["kind"] = "functor";
  doc["base"] = emit_space(d.base());
  json objects = json::object();
  for (std::size_t b = 0; b < d.base().size(); ++b)
    objects[d.base().label(b)] = emit_space(d.object_at(b));
  doc["objects"] = std::move(objects);
  json arrows = json::array();
  for (auto [i, j] : d.pairs()) {
    if (i == j) continue;
    json arrow;
    arrow["from"] = d.base().label(i);
    arrow["to"] = d.base().label(j);
    arrow["map"] = point_map_doc(d.object_at(i), d.object_at(j), d.arrow_image(i, j));
    arrows.push_back(std::move(arrow));
  }
  doc["arrows"] = std::move(arrows);
  return doc;
}

namespace {

struct FunctorParts {
  FinSpace base;
  std::vector<FinSpace> objects;
  std::map<std::pair<int, int>, std::vector<int>> arrows;
};

FunctorParts parse_functor_parts(const json& doc) {
  FunctorParts parts{parse_space(need(doc, "base")), {}, {}};
  const json& objects = need(doc, "objects");
  if (!objects.is_object()) throw parse_error("objects must be an object");
  for (std::size_t b = 0; b < parts.base.size(); ++b) {
    auto it = objects.find(parts.base.label(b));
    if (it == objects.end())
      throw std::invalid_argument("no object for base point " + parts.base.label(b));
    parts.objects.push_back(parse_space(*it));
  }
  const json& arrows = need(doc, "arrows");
  if (!arrows.is_array()) throw parse_error("arrows must be an array");
  for (const auto& a : arrows) {
    auto from = need_string(need(a, "from"), "arrow from");
    auto to = need_string(need(a, "to"), "arrow to");
    auto bi = parts.base.index_of(from);
    auto bj = parts.base.index_of(to);
    if (!bi || !bj) throw std::invalid_argument("arrow endpoint is not a base point");
    if (!parts.base.leq(*bi, *bj))
      throw std::invalid_argument("arrow given for non-comparable pair " + from + " -> " + to);
    parts.arrows[{static_cast<int>(*bi), static_cast<int>(*bj)}] = parse_point_map(
        need(a, "map"), parts.objects[*bi], parts.objects[*bj], "arrow map");
  }
  return parts;
}

}  // namespace

TopFunctor parse_functor(const json& doc) {
  FunctorParts parts = parse_functor_parts(doc);
  return TopFunctor::from_cover(std::move(parts.base), std::move(parts.objects),
                                std::move(parts.arrows));
}

json emit_bundle(const FiberBundle& p) {
  json doc;
  doc["kind"] = "bundle";
  doc["total"] = emit_space(p.total());
  doc["base"] = emit_space(p.base());
  doc["map"] = point_map_doc(p.total(), p.base(), p.map.image());
  doc["fiber"] = emit_space(p.fiber);
  return doc;
}

ParsedBundle parse_bundle(const json& doc) {
  FinSpace total = parse_space(need(doc, "total"));
  FinSpace base = parse_space(need(doc, "base"));
  auto img = parse_point_map(need(doc, "map"), total, base, "map");
  FinSpace fiber = parse_space(need(doc, "fiber"));
  return ParsedBundle{ContinuousMap(std::move(total), std::move(base), std::move(img)),
                      std::move(fiber)};
}

json emit_groth(const GrothSpace& g) {
  json doc;
  doc["kind"] = "groth";
  doc["space"] = emit_space(g.space);
  doc["base"] = emit_space(g.functor.base());
  doc["projection"] = point_map_doc(g.space, g.functor.base(), g.projection.image());
  json tags = json::object();
  for (std::size_t e = 0; e < g.space.size(); ++e) {
    auto [b, x] = g.tags[e];
    tags[g.space.label(e)] =
        json::array({g.functor.base().label(b), g.functor.object_at(b).label(x)});
  }
  doc["tags"] = std::move(tags);
  return doc;
}

json emit_classtable(const ClassTable& t) {
  json doc;
  doc["kind"] = "classtable";
  doc["base"] = emit_space(t.base);
  doc["fiber"] = emit_space(t.fiber);
  json classes = json::array();
  for (const auto& c : t.classes) {
    json entry;
    entry["representative_functor"] = emit_functor(c.representative);
    entry["total_space"] = emit_space(c.bundle.total());
    entry["class_size"] = c.size;
    classes.push_back(std::move(entry));
  }
  doc["classes"] = std::move(classes);
  doc["functor_count"] = t.functor_count;
  doc["inconclusive"] = t.inconclusive;
  return doc;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(e.what());
  }
}

ValidationReport validate_document(const json& doc) {
  ValidationReport report;
  report.kind = need_string(need(doc, "kind"), "kind");
  try {
    if (report.kind == "space") {
      parse_space(doc);
    } else if (report.kind == "map") {
      parse_map(doc);
    } else if (report.kind == "functor") {
      FunctorParts parts = parse_functor_parts(doc);
      auto closed = derive_arrow_closure(parts.base, parts.objects, std::move(parts.arrows));
      TopFunctor d =
          TopFunctor::unchecked(std::move(parts.base), std::move(parts.objects), std::move(closed));
      report.issues = functor_violations(d);
    } else if (report.kind == "bundle") {
      parse_bundle(doc);
    } else if (report.kind == "groth") {
      FinSpace space = parse_space(need(doc, "space"));
      FinSpace base = parse_space(need(doc, "base"));
      auto img = parse_point_map(need(doc, "projection"), space, base, "projection");
      ContinuousMap(space, base, std::move(img));
    } else if (report.kind == "classtable") {
      parse_space(need(doc, "base"));
      parse_space(need(doc, "fiber"));
      const json& classes = need(doc, "classes");
      if (!classes.is_array()) throw parse_error("classes must be an array");
      for (const auto& entry : classes) {
        FunctorParts parts = parse_functor_parts(need(entry, "representative_functor"));
        auto closed = derive_arrow_closure(parts.base, parts.objects, std::move(parts.arrows));
        TopFunctor d = TopFunctor::unchecked(std::move(parts.base), std::move(parts.objects),
                                             std::move(closed));
        auto issues = functor_violations(d);
        report.issues.insert(report.issues.end(), issues.begin(), issues.end());
        parse_space(need(entry, "total_space"));
      }
    } else if (report.kind == "verification") {
      ContinuousMap p = parse_map(need(doc, "map"));
      FinSpace fiber = parse_space(need(doc, "fiber"));
      if (doc.value("verified", false)) {
        const json& wits = need(doc, "witnesses");
        const FinSpace& e = p.dom();
        const FinSpace& b = p.cod();
        for (std::size_t bt = 0; bt < b.size(); ++bt) {
          auto it = wits.find(b.label(bt));
          if (it == wits.end())
            throw std::invalid_argument("missing witness for base point " + b.label(bt));
          std::vector<int> w(e.size(), -1);
          for (const auto& [el, fl] : it->items()) {
            auto ei = e.index_of(el);
            auto fi = fiber.index_of(need_string(fl, "witness"));
            if (!ei || !fi) throw std::invalid_argument("witness mentions an unknown point");
            w[*ei] = static_cast<int>(*fi);
          }
          // The witness must be an over-U_b order isomorphism onto U_b x F.
          for (std::size_t x = 0; x < e.size(); ++x)
            if ((w[x] >= 0) != b.leq(p(x), bt))
              throw std::invalid_argument("witness domain must be the preimage of U_" +
                                          b.label(bt));
          for (std::size_t x = 0; x < e.size(); ++x) {
            if (w[x] < 0) continue;
            for (std::size_t y = 0; y < e.size(); ++y) {
              if (w[y] < 0) continue;
              if (x != y && p(x) == p(y) && w[x] == w[y])
                throw std::invalid_argument("witness is not fiberwise injective over U_" +
                                            b.label(bt));
              if (e.leq(x, y) != (b.leq(p(x), p(y)) && fiber.leq(w[x], w[y])))
                throw std::invalid_argument("witness is not an order isomorphism over U_" +
                                            b.label(bt));
            }
          }
        }
      }
    } else {
      throw parse_error("unknown kind: " + report.kind);
    }
  } catch (const std::invalid_argument& e) {
    report.issues.push_back(e.what());
  }
  return report;
}

std::string to_document_string(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace fintop
