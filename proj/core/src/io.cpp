#include "prelie/io.hpp"

#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace prelie {

namespace {

using nlohmann::json;
// nlohmann keeps object keys sorted (std::map), which the byte-identical
// report contract relies on.

[[noreturn]] void fail(const std::string& origin, const std::string& msg) {
  throw std::invalid_argument(origin + ": " + msg);
}

BasisId need_basis(const GradedGraph& g, const std::string& id, const std::string& origin) {
  auto b = g.find_basis(id);
  if (!b) fail(origin, "unknown basis id '" + id + "'");
  return *b;
}

ObjId need_object(const GradedGraph& g, const std::string& id, const std::string& origin) {
  auto o = g.find_object(id);
  if (!o) fail(origin, "unknown object id '" + id + "'");
  return *o;
}

TermList parse_terms(const GradedGraph& g, const json& arr, const std::string& origin) {
  TermList out;
  for (const auto& t : arr) {
    Rational coef = parse_rational(t.at("coef").get<std::string>());
    term_add(out, need_basis(g, t.at("basis").get<std::string>(), origin), coef);
  }
  return out;
}

/// Components: {"inputs": [ids], "output": [terms]} with an "at" object for
/// weight-0 entries. The object sequence is recovered from the basis data.
void parse_component_into(Cochain& c, const GradedGraph& g, const json& comp,
                          const std::string& origin) {
  ComponentKey key;
  const auto& inputs = comp.at("inputs");
  if (inputs.empty()) {
    key.objects.push_back(need_object(g, comp.at("at").get<std::string>(), origin));
  } else {
    for (const auto& id : inputs) {
      BasisId b = need_basis(g, id.get<std::string>(), origin);
      if (key.objects.empty()) key.objects.push_back(g.basis(b).source);
      key.objects.push_back(g.basis(b).target);
      key.inputs.push_back(b);
    }
  }
  for (const auto& t : parse_terms(g, comp.at("output"), origin))
    c.add_term(key, t.basis, t.coefficient);
}

Cochain parse_cochain(const GradedGraph& g, const json& spec, const std::string& origin) {
  Cochain c(g, spec.at("shifted_degree").get<int>());
  if (spec.contains("cutoff")) c.set_cutoff(spec.at("cutoff").get<int>());
  for (const auto& comp : spec.at("components")) parse_component_into(c, g, comp, origin);
  return c;
}

json terms_json(const GradedGraph& g, const TermList& terms) {
  json arr = json::array();
  for (const auto& t : terms)
    arr.push_back({{"basis", g.basis(t.basis).id}, {"coef", rational_str(t.coefficient)}});
  return arr;
}

json components_json(const GradedGraph& g_in, const GradedGraph& g_out, const Cochain& c) {
  json arr = json::array();
  for (const auto& [key, terms] : c.components()) {
    json comp;
    json inputs = json::array();
    for (BasisId b : key.inputs) inputs.push_back(g_in.basis(b).id);
    comp["inputs"] = std::move(inputs);
    if (key.inputs.empty()) comp["at"] = g_in.object_name(key.objects[0]);
    comp["output"] = terms_json(g_out, terms);
    arr.push_back(std::move(comp));
  }
  return arr;
}

}  // namespace

InputDocument parse_document(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin, std::string("parse error at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
  InputDocument out;
  out.format_version = doc.value("format_version", 1);
  out.convention = doc.value("convention", "m");
  if (out.convention != "m" && out.convention != "mu")
    fail(origin, "convention must be 'm' or 'mu'");

  out.graph = std::make_unique<GradedGraph>();
  for (const auto& name : doc.at("objects")) out.graph->add_object(name.get<std::string>());
  for (const auto& b : doc.at("basis"))
    out.graph->add_basis(b.at("id").get<std::string>(), b.at("src").get<std::string>(),
                         b.at("tgt").get<std::string>(), b.at("degree").get<int>(),
                         b.value("unit", false));
  {
    auto diags = validate_graph(*out.graph);
    if (!diags.empty()) fail(origin, "invalid graph: " + diags.front());
  }

  Cochain table(*out.graph, 1);
  for (const auto& op : doc.value("operations", json::array()))
    parse_component_into(table, *out.graph, op, origin);
  out.structure = make_astructure(out.convention == "m" ? convert_convention(table) : table);

  const json cochains = doc.value("cochains", json::object());
  for (const auto& [name, spec] : cochains.items())
    out.cochains.emplace(name, parse_cochain(*out.graph, spec, origin + ":cochain " + name));

  const json functors = doc.value("functors", json::object());
  for (const auto& [name, spec] : functors.items()) {
    AFunctor f;
    f.source = &out.structure;
    f.target = &out.structure;
    f.object_map.resize(out.graph->object_count());
    if (spec.contains("object_map")) {
      for (ObjId o = 0; o < out.graph->object_count(); ++o) {
        const std::string& from = out.graph->object_name(o);
        f.object_map[o] =
            need_object(*out.graph, spec.at("object_map").at(from).get<std::string>(), origin);
      }
    } else {
      std::iota(f.object_map.begin(), f.object_map.end(), 0);
    }
    f.taylor = Cochain(*out.graph, 0);
    if (spec.value("identity_part", true)) f.taylor.add_scaled(1, brace_unit(*out.graph));
    for (const auto& comp : spec.value("taylor", json::array()))
      parse_component_into(f.taylor, *out.graph, comp, origin + ":functor " + name);
    check_functor_blocks(f);
    out.functors.emplace(name, std::move(f));
  }

  const json transformations = doc.value("transformations", json::object());
  for (const auto& [name, spec] : transformations.items()) {
    InputDocument::Transformation tr;
    tr.from = spec.value("from", "id");
    tr.to = spec.value("to", "id");
    tr.degree = spec.at("degree").get<int>();
    tr.components = parse_cochain(*out.graph, spec, origin + ":transformation " + name);
    out.transformations.emplace(name, std::move(tr));
  }

  const json paths = doc.value("paths", json::object());
  for (const auto& [name, spec] : paths.items()) {
    PolynomialPath p;
    p.t_cutoff = spec.value("t_cutoff", 0);
    for (const auto& term : spec.value("terms", json::array())) {
      Cochain c(*out.graph, term.at("shifted_degree").get<int>());
      for (const auto& comp : term.at("components"))
        parse_component_into(c, *out.graph, comp, origin + ":path " + name);
      int power = term.at("power").get<int>();
      if (term.value("dt", false))
        p.dt_part.emplace(power, std::move(c));
      else
        p.t_part.emplace(power, std::move(c));
    }
    out.paths.emplace(name, std::move(p));
  }
  return out;
}

InputDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str(), path);
}

namespace {

json structure_json(const GradedGraph& g, const Cochain& mu_convention_table) {
  json doc;
  doc["format_version"] = 1;
  doc["convention"] = "mu";
  json objects = json::array();
  for (ObjId o = 0; o < g.object_count(); ++o) objects.push_back(g.object_name(o));
  doc["objects"] = std::move(objects);
  json basis = json::array();
  for (BasisId b = 0; b < g.basis_count(); ++b) {
    const auto& e = g.basis(b);
    json entry{{"id", e.id},
               {"src", g.object_name(e.source)},
               {"tgt", g.object_name(e.target)},
               {"degree", e.degree}};
    if (e.unit) entry["unit"] = true;
    basis.push_back(std::move(entry));
  }
  doc["basis"] = std::move(basis);
  doc["operations"] = components_json(g, g, mu_convention_table);
  return doc;
}

}  // namespace

std::string serialize_structure(const GradedGraph& g, const Cochain& mu) {
  return structure_json(g, mu).dump(2) + "\n";
}

std::string serialize_document(const InputDocument& doc) {
  json j = structure_json(*doc.graph,
                          doc.convention == "m" ? convert_convention(doc.structure.mu)
                                                : doc.structure.mu);
  j["convention"] = doc.convention;
  if (doc.convention == "m") {
    // re-emit the original m table
    j["operations"] = components_json(*doc.graph, *doc.graph,
                                      convert_convention(doc.structure.mu));
  } else {
    j["operations"] = components_json(*doc.graph, *doc.graph, doc.structure.mu);
  }
  if (!doc.cochains.empty()) {
    json cs;
    for (const auto& [name, c] : doc.cochains) {
      json spec;
      spec["shifted_degree"] = c.shifted_degree();
      if (!c.complete()) spec["cutoff"] = c.cutoff();
      spec["components"] = components_json(*doc.graph, *doc.graph, c);
      cs[name] = std::move(spec);
    }
    j["cochains"] = std::move(cs);
  }
  return j.dump(2) + "\n";
}

}  // namespace prelie
