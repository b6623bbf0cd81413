#include "prelie/cli.hpp"

#include <fstream>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"
#include "prelie/cohomology.hpp"
#include "prelie/integration.hpp"
#include "prelie/io.hpp"
#include "prelie/maurer_cartan.hpp"

namespace prelie {

namespace {

using nlohmann::json;

json terms_json(const GradedGraph& g, const TermList& terms) {
  json arr = json::array();
  for (const auto& t : terms)
    arr.push_back({{"basis", g.basis(t.basis).id}, {"coef", rational_str(t.coefficient)}});
  return arr;
}

/// Cochain payload; states the shifted degree and, per occurring weight, the
/// unshifted map degree w -> sdeg + 1 - w of the m-convention reading.
json cochain_json(const GradedGraph& g, const Cochain& c) {
  json out;
  out["shifted_degree"] = c.shifted_degree();
  json map_degrees;
  std::set<int> weights;
  for (const auto& [key, terms] : c.components()) weights.insert(key.weight());
  for (int w : weights)
    map_degrees["weight " + std::to_string(w)] = c.shifted_degree() + 1 - w;
  out["unshifted_map_degree"] = std::move(map_degrees);
  if (!c.complete()) out["cutoff"] = c.cutoff();
  json comps = json::array();
  for (const auto& [key, terms] : c.components()) {
    json comp;
    json inputs = json::array();
    for (BasisId b : key.inputs) inputs.push_back(g.basis(b).id);
    comp["inputs"] = std::move(inputs);
    if (key.inputs.empty()) comp["at"] = g.object_name(key.objects[0]);
    comp["output"] = terms_json(g, terms);
    comps.push_back(std::move(comp));
  }
  out["components"] = std::move(comps);
  return out;
}

json taylor_json(const GradedGraph& g, const Cochain& plus) {
  json out;
  std::map<int, json> by_weight;
  for (const auto& [key, terms] : plus.components()) {
    json comp;
    json inputs = json::array();
    for (BasisId b : key.inputs) inputs.push_back(g.basis(b).id);
    comp["inputs"] = std::move(inputs);
    comp["output"] = terms_json(g, terms);
    by_weight[key.weight()].push_back(std::move(comp));
  }
  for (const auto& [w, comps] : by_weight) out["F" + std::to_string(w)] = comps;
  return out;
}

const Cochain& need_cochain(const InputDocument& doc, const std::string& name) {
  auto it = doc.cochains.find(name);
  if (it == doc.cochains.end())
    throw std::invalid_argument("no cochain named '" + name + "' in the input");
  return it->second;
}

AFunctor resolve_functor(const InputDocument& doc, const std::string& name,
                         const WeightWindow& win) {
  if (name == "id") return identity_functor(doc.structure);
  auto it = doc.functors.find(name);
  if (it != doc.functors.end()) return it->second;
  auto c = doc.cochains.find(name);
  if (c != doc.cochains.end()) {
    Cochain plus = c->second;
    plus.truncate(win.cutoff);
    return make_isotopy(doc.structure, std::move(plus)).pack();
  }
  throw std::invalid_argument("no functor or cochain named '" + name + "'");
}

struct Ctx {
  std::string input;
  std::string output;
  int cutoff = 6;
  bool cutoff_given = false;
  int t_cutoff = 6;
  int degree = 1;
  bool plus = false;
  std::string convention;

  InputDocument doc;
  json report;
  int status = 0;

  WeightWindow window() const { return WeightWindow{plus ? 2 : 0, cutoff}; }

  void load() {
    doc = load_document(input);
    if (!convention.empty() && convention != doc.convention) {
      // Re-read with the overridden convention.
      std::ifstream in(input);
      std::stringstream buf;
      buf << in.rdbuf();
      std::string text = buf.str();
      InputDocument again = parse_document(text, input);
      if (convention == "mu" && again.convention == "m") {
        again.structure = make_astructure(convert_convention(again.structure.mu));
      } else if (convention == "m" && again.convention == "mu") {
        again.structure = make_astructure(convert_convention(again.structure.mu));
      }
      doc = std::move(again);
      doc.convention = convention;
    }
  }
};

void cmd_validate(Ctx& c) {
  auto diags = validate_graph(*c.doc.graph);
  Cochain residual = validate_astructure(c.doc.structure.mu, c.window());
  c.report["graph_diagnostics"] = diags;
  c.report["residual_zero"] = residual.zero();
  c.report["residual_exact"] = residual.complete();
  if (!residual.zero())
    c.report["residual"] = cochain_json(*c.doc.graph, residual);
  c.report["strictly_unital"] = strictly_unital(c.doc.structure);
  c.report["minimal"] = c.doc.structure.minimal();
  c.status = (diags.empty() && residual.zero()) ? 0 : 1;
}

void cmd_hochschild(Ctx& c) {
  if (c.plus && c.cutoff < 2) {
    c.report["diagnostic"] = "window cutoff below the weight-2 filtration step";
    c.status = 2;
    return;
  }
  CohomologyReport r = hochschild_cohomology(c.doc.structure, c.degree, c.window());
  json lines = json::array();
  for (const auto& line : r.lines) {
    json l;
    l["weight"] = line.weight;
    l["cocycle_dim"] = line.cocycle_dim;
    l["boundary_dim"] = line.boundary_dim;
    l["class_dim"] = line.class_dim;
    l["exact"] = line.exact;
    json reps = json::array();
    for (const auto& rep : line.representatives) reps.push_back(cochain_json(*c.doc.graph, rep));
    l["representatives"] = std::move(reps);
    lines.push_back(std::move(l));
  }
  c.report["degree"] = c.degree;
  c.report["per_weight_lines"] = r.per_weight_lines;
  c.report["lines"] = std::move(lines);
  c.report["total_dimension"] = r.total_classes;
  c.report["tail_vanishes_beyond_cutoff"] = r.tail_vanishes;
}

void cmd_exp(Ctx& c, const std::string& name) {
  if (c.cutoff < 2) {
    c.report["diagnostic"] = "series command needs a cutoff of at least 2";
    c.status = 2;
    return;
  }
  const Cochain& v = need_cochain(c.doc, name);
  Cochain residual = differential(v, c.doc.structure, {0, kNoCutoff});
  if (!residual.zero()) {
    c.report["error"] = "input is not a cocycle";
    c.report["differential"] = cochain_json(*c.doc.graph, residual);
    c.status = 1;
    return;
  }
  Isotopy iso = integrate_class(c.doc.structure, v, c.window());
  c.report["taylor"] = taylor_json(*c.doc.graph, iso.plus);
  c.report["functor_residual_zero"] = isotopy_residual(iso, c.window()).zero();
}

void cmd_log(Ctx& c, const std::string& name) {
  Cochain plus = need_cochain(c.doc, name);
  plus.truncate(c.cutoff);
  Cochain v = log_prelie(make_group_like(std::move(plus)), c.window());
  c.report["log"] = cochain_json(*c.doc.graph, v);
}

void cmd_bch(Ctx& c, const std::string& uname, const std::string& vname) {
  Cochain u = need_cochain(c.doc, uname);
  Cochain v = need_cochain(c.doc, vname);
  u.truncate(c.cutoff);
  v.truncate(c.cutoff);
  Cochain w = bch(u, v, c.window());
  Cochain via_log = log_prelie(
      odot_group(exp_prelie(u, c.window()), exp_prelie(v, c.window()), c.window()), c.window());
  c.report["bch"] = cochain_json(*c.doc.graph, w);
  c.report["consistent_with_log_of_product"] = (w == via_log);
}

void cmd_compose(Ctx& c, const std::string& outer, const std::string& inner) {
  AFunctor f = resolve_functor(c.doc, outer, c.window());
  AFunctor g = resolve_functor(c.doc, inner, c.window());
  AFunctor fg = compose_functors(f, g, c.window());
  Cochain table = fg.taylor;
  table.add_scaled(-1, brace_unit(*c.doc.graph));
  table.truncate(c.cutoff);
  json om;
  for (ObjId o = 0; o < c.doc.graph->object_count(); ++o)
    om[c.doc.graph->object_name(o)] = c.doc.graph->object_name(fg.object_map[o]);
  c.report["object_map"] = std::move(om);
  c.report["taylor_minus_identity"] = taylor_json(*c.doc.graph, table);
  c.report["functor_residual_zero"] = functor_residual(fg, c.window()).zero();
}

void cmd_isotopy_check(Ctx& c, const std::string& name) {
  Cochain plus = need_cochain(c.doc, name);
  plus.truncate(c.cutoff);
  Isotopy iso = make_isotopy(c.doc.structure, std::move(plus));
  Cochain residual = isotopy_residual(iso, c.window());
  c.report["residual_zero"] = residual.zero();
  if (!residual.zero()) {
    c.report["residual"] = cochain_json(*c.doc.graph, residual);
    c.status = 1;
  }
}

void cmd_homotopy_check(Ctx& c, const std::string& fname, const std::string& gname) {
  Cochain fplus = need_cochain(c.doc, fname);
  Cochain gplus = (gname == "id") ? Cochain(*c.doc.graph, 0) : need_cochain(c.doc, gname);
  fplus.truncate(c.cutoff);
  gplus.truncate(c.cutoff);
  Isotopy f = make_isotopy(c.doc.structure, std::move(fplus));
  Isotopy g = make_isotopy(c.doc.structure, std::move(gplus));
  auto witness = homotopy_solve(f, g, c.window());
  c.report["feasible_within_window"] = witness.has_value();
  if (witness) c.report["witness"] = cochain_json(*c.doc.graph, witness->h.components);
}

void cmd_gauge_check(Ctx& c, const std::string& zname, const std::string& xname,
                     const std::string& cname, const std::string& dname, const std::string& uname,
                     const std::string& vname) {
  Cochain zeta = need_cochain(c.doc, zname);
  Cochain xi = need_cochain(c.doc, xname);
  GaugeWitness w{cname == "1" ? cup_unit(*c.doc.graph) : need_cochain(c.doc, cname),
                 dname == "1" ? cup_unit(*c.doc.graph) : need_cochain(c.doc, dname),
                 uname.empty() ? Cochain(*c.doc.graph, -2) : need_cochain(c.doc, uname),
                 vname.empty() ? Cochain(*c.doc.graph, -2) : need_cochain(c.doc, vname)};
  GaugeResiduals res = gauge_check_dg(c.doc.structure, zeta, xi, w, c.window());
  c.report["residual_zero"] = res.zero();
  json eqs;
  eqs["c"] = res.eq_c.zero();
  eqs["d"] = res.eq_d.zero();
  eqs["u"] = res.eq_u.zero();
  eqs["v"] = res.eq_v.zero();
  c.report["equations_zero"] = std::move(eqs);
  if (!res.zero()) c.status = 1;
}

void cmd_quillen_check(Ctx& c, const std::string& gname, const std::string& xname,
                       const std::string& lname) {
  QuillenPair pair;
  if (!gname.empty()) {
    auto it = c.doc.paths.find(gname);
    if (it == c.doc.paths.end()) throw std::invalid_argument("no path named '" + gname + "'");
    pair = quillen_homotopy_build(c.doc.structure, it->second, c.window());
    json built;
    built["x_powers"] = static_cast<int>(pair.x.t_part.size());
    built["lambda_powers"] = static_cast<int>(pair.lambda.t_part.size());
    c.report["built"] = std::move(built);
  } else {
    auto xit = c.doc.paths.find(xname);
    auto lit = c.doc.paths.find(lname);
    if (xit == c.doc.paths.end() || lit == c.doc.paths.end())
      throw std::invalid_argument("quillen-check needs named x and lambda paths");
    pair.x = xit->second;
    pair.lambda = lit->second;
  }
  QuillenResiduals res = quillen_verify(c.doc.structure, pair, c.window());
  c.report["ode_residual_zero"] = res.zero();
  c.report["mc_at_0_zero"] = res.mc_at_0.zero();
  c.report["mc_at_1_zero"] = res.mc_at_1.zero();
  if (!res.zero()) c.status = 1;
}

void cmd_center(Ctx& c) {
  CenterReport center = graded_center(c.doc.structure, c.window());
  CohomologyReport hh0 = hochschild_cohomology(c.doc.structure, 0, {0, c.cutoff});
  std::vector<Cochain> classes;
  for (const auto& line : hh0.lines)
    for (const auto& rep : line.representatives) classes.push_back(rep);
  CharacteristicResult chi = characteristic_morphism(c.doc.structure, classes, center, c.window());

  c.report["center_dimension"] = center.center_basis.size();
  json comps = json::array();
  for (const auto& objs : center.idempotent_components) {
    json names = json::array();
    for (ObjId o : objs) names.push_back(c.doc.graph->object_name(o));
    comps.push_back(std::move(names));
  }
  c.report["idempotent_components"] = std::move(comps);
  c.report["center_spanned_by_idempotents"] = center.center_spanned_by_idempotents;
  c.report["hh0_dimension"] = hh0.total_classes;
  c.report["hh0_window_certified"] = hh0.tail_vanishes;
  c.report["units_in_image_of_pi0"] = center.units_in_image;
  c.report["graded_split_holds"] = chi.graded_split_holds;
}

void cmd_glue(Ctx& c, const std::string& functor) {
  AFunctor f = resolve_functor(c.doc, functor, c.window());
  GlueResult d = glue(f, c.window());
  c.report = json::parse(serialize_structure(*d.graph, d.structure.mu));
}

void cmd_restrict(Ctx& c, const std::string& objects) {
  std::vector<ObjId> keep;
  std::stringstream ss(objects);
  std::string name;
  while (std::getline(ss, name, ',')) {
    auto o = c.doc.graph->find_object(name);
    if (!o) throw std::invalid_argument("unknown object '" + name + "'");
    keep.push_back(*o);
  }
  auto idx = include_full_subgraph(*c.doc.graph, keep);
  Cochain mu = restrict_cochain(c.doc.structure.mu, idx);
  c.report = json::parse(serialize_structure(idx.sub(), mu));
}

void cmd_twist(Ctx& c, const std::string& zeta_name, bool module) {
  Cochain zeta = need_cochain(c.doc, zeta_name);
  zeta.truncate(c.cutoff);
  HochschildAlgebra algebra = hochschild_algebra(c.doc.structure, c.cutoff);
  TwistResult tw = module ? twist_module(algebra, zeta, c.window())
                          : twist_algebra(algebra, zeta, c.window());
  c.report = json::parse(serialize_structure(*tw.graph, tw.structure.mu));
}

}  // namespace

CliResult cli_run(const std::vector<std::string>& args) {
  CLI::App app{"exact pre-Lie / Hochschild calculus for finite A-infinity categories"};
  app.require_subcommand(1);

  Ctx ctx;
  std::string name_a, name_b, name_c, name_d, name_u, name_v, objects;
  bool module = false;

  auto add_common = [&](CLI::App* cmd, bool needs_cutoff) {
    cmd->add_option("input", ctx.input, "input document (JSON)")->required();
    auto* opt = cmd->add_option("--cutoff", ctx.cutoff, "weight window cutoff");
    if (needs_cutoff) opt->required();
    cmd->add_option("--output", ctx.output, "write the report to this file");
    cmd->add_option("--convention", ctx.convention, "operations table convention (m|mu)");
    return cmd;
  };

  auto* validate = add_common(app.add_subcommand("validate", "check graph and structure"), false);
  auto* hochschild =
      add_common(app.add_subcommand("hochschild", "weight-filtered cohomology"), true);
  hochschild->add_option("--degree", ctx.degree, "HH degree");
  hochschild->add_flag("--plus", ctx.plus, "restrict to weight >= 2");
  auto* exp_cmd = add_common(app.add_subcommand("exp", "integrate a cocycle"), true);
  exp_cmd->add_option("--cocycle", name_a, "cochain name")->required();
  auto* log_cmd = add_common(app.add_subcommand("log", "pre-Lie logarithm"), true);
  log_cmd->add_option("--group-like", name_a, "plus part cochain name")->required();
  auto* bch_cmd = add_common(app.add_subcommand("bch", "Baker-Campbell-Hausdorff"), true);
  bch_cmd->add_option("--u", name_a)->required();
  bch_cmd->add_option("--v", name_b)->required();
  auto* compose = add_common(app.add_subcommand("compose", "compose functors"), true);
  compose->add_option("--outer", name_a)->required();
  compose->add_option("--inner", name_b)->required();
  auto* iso = add_common(app.add_subcommand("isotopy-check", "isotopy equation residual"), true);
  iso->add_option("--cochain", name_a)->required();
  auto* hom = add_common(app.add_subcommand("homotopy-check", "solve for a homotopy"), true);
  hom->add_option("--f", name_a)->required();
  hom->add_option("--g", name_b)->required();
  auto* gauge = add_common(app.add_subcommand("gauge-check", "dg gauge equations"), true);
  gauge->add_option("--zeta", name_a)->required();
  gauge->add_option("--xi", name_b)->required();
  gauge->add_option("--c", name_c)->required();
  gauge->add_option("--d", name_d)->required();
  gauge->add_option("--u", name_u);
  gauge->add_option("--v", name_v);
  auto* quillen = add_common(app.add_subcommand("quillen-check", "verify a Quillen homotopy"), true);
  quillen->add_option("--g", name_a, "build the pair from this path");
  quillen->add_option("--x", name_b);
  quillen->add_option("--lambda", name_c);
  quillen->add_option("--t-cutoff", ctx.t_cutoff);
  auto* center = add_common(app.add_subcommand("center", "graded center and Pi^0"), false);
  auto* glue_cmd = add_common(app.add_subcommand("glue", "glue along a functor"), true);
  glue_cmd->add_option("--functor", name_a, "functor name or 'id'")->default_val("id");
  auto* restrict_cmd =
      add_common(app.add_subcommand("restrict", "full subcategory restriction"), false);
  restrict_cmd->add_option("--objects", objects, "comma-separated object names")->required();
  auto* twist = add_common(app.add_subcommand("twist", "twist the Hochschild algebra"), true);
  twist->add_option("--zeta", name_a)->required();
  twist->add_flag("--module", module, "twist as a right module instead");

  std::vector<std::string> argv = args;
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    return CliResult{1, std::string("{\n  \"error\": \"") + e.what() + "\"\n}\n"};
  }

  CliResult result;
  try {
    ctx.load();
    ctx.report["command"] = app.get_subcommands().front()->get_name();
    ctx.report["input"] = ctx.input;
    ctx.report["window_cutoff"] = ctx.cutoff;
    if (validate->parsed()) cmd_validate(ctx);
    if (hochschild->parsed()) cmd_hochschild(ctx);
    if (exp_cmd->parsed()) cmd_exp(ctx, name_a);
    if (log_cmd->parsed()) cmd_log(ctx, name_a);
    if (bch_cmd->parsed()) cmd_bch(ctx, name_a, name_b);
    if (compose->parsed()) cmd_compose(ctx, name_a, name_b);
    if (iso->parsed()) cmd_isotopy_check(ctx, name_a);
    if (hom->parsed()) cmd_homotopy_check(ctx, name_a, name_b);
    if (gauge->parsed()) cmd_gauge_check(ctx, name_a, name_b, name_c, name_d, name_u, name_v);
    if (quillen->parsed()) cmd_quillen_check(ctx, name_a, name_b, name_c);
    if (center->parsed()) cmd_center(ctx);
    if (glue_cmd->parsed()) cmd_glue(ctx, name_a);
    if (restrict_cmd->parsed()) cmd_restrict(ctx, objects);
    if (twist->parsed()) cmd_twist(ctx, name_a, module);
    result.status = ctx.status;
    result.report = ctx.report.dump(2) + "\n";
  } catch (const std::exception& e) {
    json err;
    err["error"] = e.what();
    return CliResult{1, err.dump(2) + "\n"};
  }

  if (!ctx.output.empty()) {
    std::ofstream out(ctx.output, std::ios::binary);
    out << result.report;
  }
  return result;
}

}  // namespace prelie
