#include "propcalc/json_io.hpp"

#include "propcalc/error.hpp"
#include "propcalc/print.hpp"

namespace propcalc {

namespace {

Json cards(const std::vector<Cardinal>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(to_json(c));
  return out;
}

std::vector<Cardinal> cards_from(const Json& j) {
  std::vector<Cardinal> out;
  for (const auto& c : j) out.push_back(cardinal_from_json(c));
  return out;
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw Error(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

const char* family_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::CyclicTop:
      return "cyclic_top";
    case FamilyKind::LimitCofinal:
      return "limit_cofinal";
    case FamilyKind::LimitCyclicTop:
      return "limit_cyclic_top";
  }
  return "?";
}

FamilyKind family_from(const std::string& s) {
  if (s == "cyclic_top") return FamilyKind::CyclicTop;
  if (s == "limit_cofinal") return FamilyKind::LimitCofinal;
  if (s == "limit_cyclic_top") return FamilyKind::LimitCyclicTop;
  throw Error("unknown family kind \"" + s + "\"");
}

std::uint64_t prime_from(const Json& j) {
  const auto p = field(j, "prime").get<std::uint64_t>();
  if (!is_prime(p)) throw Error(std::to_string(p) + " is not prime");
  return p;
}

}  // namespace

Json to_json(const Cardinal& c) {
  if (c.is_aleph0()) return "aleph0";
  return Json{{"fin", c.value()}};
}

Json to_json(const MultiplicitySeq& m) {
  Json out;
  out["prefix"] = cards(m.prefix());
  switch (m.tail()) {
    case TailKind::Zero:
      out["tail"] = "zero";
      break;
    case TailKind::AllAleph0:
      out["tail"] = "all_aleph0";
      break;
    case TailKind::Periodic:
      out["tail"] = Json{{"periodic", cards(m.pattern())}};
      break;
  }
  return out;
}

Json to_json(const CartesianDescriptor& layer) {
  return Json{{"prime", layer.prime}, {"mults", to_json(layer.mults)}, {"text", format_layer(layer)}};
}

Json to_json(const TorsionSequence& seq) {
  Json out = Json::array();
  for (const auto& seg : seq.segments()) {
    if (const auto* run = std::get_if<FiniteRun>(&seg)) {
      Json entries = Json::array();
      for (const auto& e : run->entries) entries.push_back(to_json(e));
      out.push_back(Json{{"finite_run", entries}});
    } else {
      const auto& om = std::get<OmegaRun>(seg);
      Json prefix = Json::array();
      for (const auto& e : om.prefix) prefix.push_back(to_json(e));
      out.push_back(Json{{"omega_run", Json{{"prefix", prefix}, {"repeat", to_json(om.repeat)}}}});
    }
  }
  return out;
}

Json to_json(const ProPDescriptor& d) {
  return Json{{"prime", d.prime},
              {"torsion", to_json(d.torsion)},
              {"free_rank", to_json(d.free_rank)},
              {"torsion_type", d.torsion.order_type().to_string()},
              {"text", format_descriptor(d)}};
}

Json to_json(const DiscreteDescriptor& e) {
  return Json{{"prime", e.prime},
              {"ulm", to_json(e.ulm)},
              {"divisible_rank", to_json(e.divisible_rank)},
              {"text", format_discrete(e)}};
}

Json to_json(const ValidityReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations)
    v.push_back(Json{{"position", x.position.to_string()},
                     {"repeating", x.repeating},
                     {"kind", to_string(x.kind)}});
  return Json{{"valid", r.valid()}, {"violations", v}};
}

Json to_json(const IsoCertificate& c) {
  Json ev = Json::array();
  for (const auto& e : c.evidence)
    ev.push_back(Json{{"invariant", e.name}, {"left", e.left}, {"right", e.right}});
  return Json{{"verdict", c.verdict}, {"rule", c.rule}, {"evidence", ev}};
}

Json to_json(const EmbeddingResult& e) {
  auto slot = [](const FactorSlot& s) { return Json{{"exponent", s.exponent}, {"copy", s.copy}}; };
  Json out{{"result", e.supported ? "embeds" : "not_supported"}};
  if (!e.supported) return out;
  Json assigns = Json::array();
  for (const auto& a : e.witness.assignments)
    assigns.push_back(Json{{"source", a.demand.source},
                           {"exponent", a.demand.exponent},
                           {"copy", a.demand.copy},
                           {"target", slot(a.target)}});
  Json chains = Json::array();
  for (const auto& chain : e.witness.free_chains) {
    Json c = Json::array();
    for (const auto& s : chain) c.push_back(slot(s));
    chains.push_back(c);
  }
  out["assignments"] = assigns;
  out["free_chains"] = chains;
  out["complete"] = e.witness.complete;
  return out;
}

Json to_json(const FiniteAbelianPGroup& g) {
  return Json{{"prime", g.prime()}, {"exponents", g.exponents()}, {"log_order", g.log_order()},
              {"text", g.to_string()}};
}

Json to_json(const PresentationTree& t) {
  if (const auto* leaf = std::get_if<LeafNode>(&t.node))
    return Json{{"tag", "leaf"}, {"layer", to_json(leaf->layer)}};
  if (const auto* ext = std::get_if<ExtensionNode>(&t.node)) {
    Json overrides = Json::array();
    for (const auto& [k, u] : ext->diagonal.overrides) overrides.push_back(Json::array({k, u}));
    return Json{{"tag", "extension"},
                {"prime", ext->prime},
                {"r", ext->r},
                {"diagonal", Json{{"default_unit", ext->diagonal.default_unit}, {"overrides", overrides}}},
                {"child", to_json(*ext->child)}};
  }
  const auto& prod = std::get<ProductNode>(t.node);
  Json out{{"tag", "product"}, {"prime", prod.prime}};
  if (prod.family) {
    const auto n = prod.family->count();
    out["family"] = Json{{"kind", family_name(prod.family->kind)},
                         {"count", n ? Json(*n) : Json("omega")},
                         {"source", to_json(prod.family->source)}};
  } else {
    Json children = Json::array();
    for (const auto& c : prod.children) children.push_back(to_json(*c));
    out["children"] = children;
  }
  return out;
}

Cardinal cardinal_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "aleph0") return Cardinal::aleph0();
  if (j.is_object() && j.contains("fin")) return Cardinal(j.at("fin").get<std::uint64_t>());
  throw Error("cardinal must be {\"fin\": n} or \"aleph0\"");
}

MultiplicitySeq mults_from_json(const Json& j) {
  const auto prefix = cards_from(field(j, "prefix"));
  const Json& tail = field(j, "tail");
  if (tail.is_string()) {
    const auto s = tail.get<std::string>();
    if (s == "zero") return MultiplicitySeq::finite(prefix);
    if (s == "all_aleph0") return MultiplicitySeq::all_aleph0(prefix);
    throw Error("unknown tail \"" + s + "\"");
  }
  return MultiplicitySeq::periodic(prefix, cards_from(field(tail, "periodic")));
}

CartesianDescriptor layer_from_json(const Json& j) { return {prime_from(j), mults_from_json(field(j, "mults"))}; }

TorsionSequence sequence_from_json(const Json& j) {
  if (!j.is_array()) throw Error("torsion sequence must be an array of segments");
  std::vector<Segment> segs;
  for (const auto& s : j) {
    if (s.contains("finite_run")) {
      FiniteRun run;
      for (const auto& e : s.at("finite_run")) run.entries.push_back(layer_from_json(e));
      segs.emplace_back(std::move(run));
    } else {
      const Json& om = field(s, "omega_run");
      OmegaRun run;
      for (const auto& e : field(om, "prefix")) run.prefix.push_back(layer_from_json(e));
      run.repeat = layer_from_json(field(om, "repeat"));
      segs.emplace_back(std::move(run));
    }
  }
  return TorsionSequence(std::move(segs));
}

ProPDescriptor descriptor_from_json(const Json& j) {
  return ProPDescriptor{prime_from(j), sequence_from_json(field(j, "torsion")),
                        cardinal_from_json(field(j, "free_rank"))}
      .normalized();
}

TreePtr tree_from_json(const Json& j) {
  const auto tag = field(j, "tag").get<std::string>();
  if (tag == "leaf") return make_leaf(layer_from_json(field(j, "layer")));
  const std::uint64_t p = prime_from(j);
  if (tag == "extension") {
    DiagonalSpec spec;
    const Json& d = field(j, "diagonal");
    spec.default_unit = field(d, "default_unit").get<std::int64_t>();
    for (const auto& o : field(d, "overrides")) spec.overrides[o.at(0).get<std::uint64_t>()] = o.at(1).get<std::int64_t>();
    return make_extension(p, tree_from_json(field(j, "child")), field(j, "r").get<unsigned>(), spec);
  }
  if (tag == "product") {
    if (j.contains("family")) {
      const Json& f = j.at("family");
      return make_family({family_from(field(f, "kind").get<std::string>()), p,
                          sequence_from_json(field(f, "source")).normalized()});
    }
    std::vector<TreePtr> children;
    for (const auto& c : field(j, "children")) children.push_back(tree_from_json(c));
    return make_product(p, std::move(children));
  }
  throw Error("unknown tree tag \"" + tag + "\"");
}

}  // namespace propcalc
