// Command-line front end.  Reports are JSON on stdout.
// Exit codes: 0 success, 1 verdict false/diverging, 2 input error,
// 3 precision exhausted.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dagger/dagger.hpp"

namespace {

using namespace dagger;

struct Options {
  std::uint64_t p = 5;
  std::optional<std::uint64_t> q;
  int precision = 20;
  std::int64_t D = 6;
  std::int64_t Dz = 4;
  unsigned nmax = 16;
  unsigned depth = 16;
  bool pretty = false;
  std::uint64_t seed = 1;
  std::string input;
  std::string expr;
  std::string matrix;
  std::string relations;
  std::string lambda = "2";
  std::string c;
  std::int64_t m = 1;
  std::vector<unsigned> j_list{1, 2, 3};
  std::string gallery_name;
};

struct Outcome {
  Json report;
  std::string summary;
  int code = 0;
};

Json load_input(const std::string& text) {
  if (text.empty()) return Json::object();
  std::string body = text;
  auto first = text.find_first_not_of(" \t\n");
  if (first == std::string::npos || (text[first] != '{' && text[first] != '[')) {
    std::ifstream in(text);
    if (!in) throw InvalidInput("cannot open input file '" + text + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

template <class B>
std::vector<Matrix<B>> matrices_from(const RingPtr<B>& ring, const Options& o, const Json& in) {
  std::vector<Matrix<B>> out;
  if (!o.matrix.empty()) out.push_back(parse_matrix(ring, o.matrix));
  if (in.contains("matrix")) out.push_back(matrix_from_json(ring, in.at("matrix")));
  if (in.contains("generators"))
    for (const auto& g : in.at("generators")) out.push_back(matrix_from_json(ring, g));
  return out;
}

/// The algebra and the lattice S for specrad / closure / probe: either
/// d x d matrices, or series given under "series" (with optional "cocycle").
template <class B>
std::pair<AlgebraContext<B>, Lattice<B>> lattice_input(const RingPtr<B>& ring, const Options& o, const Json& in) {
  if (in.contains("series")) {
    std::vector<DaggerSeries<B>> gens;
    for (const auto& s : in.at("series")) gens.push_back(series_from_json(ring, s));
    if (gens.empty()) throw InvalidInput("no series generators");
    std::optional<Cocycle<B>> c;
    if (in.contains("cocycle")) c = cocycle_from_json(ring, gens.front().monoid(), in.at("cocycle"));
    auto ctx = AlgebraContext<B>::series(ring, gens.front().monoid(), gens.front().cap(), c);
    auto l = ctx.span_of(gens);
    return {std::move(ctx), std::move(l)};
  }
  auto mats = matrices_from(ring, o, in);
  if (mats.empty()) throw InvalidInput("give --matrix or an input with \"generators\"");
  auto ctx = AlgebraContext<B>::matrix(ring, mats.front().rows());
  for (const auto& a : mats)
    if (!a.is_square() || a.rows() != ctx.matrix_size()) throw InvalidInput("generators must be square of one size");
  auto l = ctx.span_of(mats);
  return {std::move(ctx), std::move(l)};
}

template <class B>
Outcome cmd_scalar(const RingPtr<B>& ring, const Options& o, const Json& in) {
  std::string text = !o.expr.empty() ? o.expr : in.value("expr", std::string());
  if (text.empty()) throw InvalidInput("give --expr");
  auto x = parse_scalar(ring, text);
  Json r{{"ring", ring_to_json(ring->descriptor())},
         {"value", scalar_to_json(x)},
         {"valuation", exponent_to_json(x.val())},
         {"text", x.to_string()},
         {"integral", x.is_integral()},
         {"negligible", x.is_negligible()}};
  return {r, text + " = " + x.to_string(), 0};
}

template <class B>
Outcome cmd_snf(const RingPtr<B>& ring, const Options& o, const Json& in) {
  auto mats = matrices_from(ring, o, in);
  if (mats.size() != 1) throw InvalidInput("snf needs exactly one matrix");
  auto f = smith_normal_form(mats.front());
  Json r{{"exponents", f.exponents()},
         {"rank", f.rank},
         {"U", matrix_to_json(f.U)},
         {"D", matrix_to_json(f.D)},
         {"W", matrix_to_json(f.W)},
         {"verified", f.U * mats.front() * f.W == f.D}};
  std::string s = "rank " + std::to_string(f.rank) + ", exponents";
  for (auto e : f.exponents()) s += " " + std::to_string(e);
  return {r, s, 0};
}

template <class B>
Outcome cmd_torsion(const RingPtr<B>& ring, const Options& o, const Json& in) {
  std::optional<Matrix<B>> rel;
  if (!o.relations.empty()) rel = parse_matrix(ring, o.relations);
  if (in.contains("relations")) rel = matrix_from_json(ring, in.at("relations"));
  if (!rel) throw InvalidInput("give --relations");
  auto inv = cokernel_invariants(ModulePresentation<B>(*rel));
  const bool free = inv.torsion.empty();
  Json r{{"torsion_free", free}, {"torsion", inv.torsion}, {"free_rank", inv.free_rank}};
  return {r, free ? "torsion-free" : "has torsion", free ? 0 : 1};
}

template <class B>
Outcome cmd_series_mul(const RingPtr<B>& ring, const Options&, const Json& in) {
  auto a = series_from_json(ring, detail::field(in, "a"));
  auto b = series_from_json(ring, detail::field(in, "b"));
  auto c = cocycle_from_json(ring, a.monoid(), in.value("cocycle", Json(nullptr)));
  auto prod = mul(a, b, c);
  Json r{{"product", series_to_json(prod)}};
  if (prod.certificate()) r["certificate_holds"] = prod.holds(*prod.certificate());
  return {r, std::to_string(prod.terms().size()) + " terms" + (prod.truncated() ? " (truncated)" : ""), 0};
}

template <class B>
Outcome cmd_certify(const RingPtr<B>& ring, const Options& o, const Json& in) {
  auto f = series_from_json(ring, in.contains("series") ? in.at("series") : in);
  Rational c = !o.c.empty() ? parse_rational(o.c) : in.contains("c") ? rational_from_json(in.at("c")) : Rational(1);
  auto res = certify(f, c);
  Json r{{"c", to_string(c)}, {"ok", res.ok}, {"k", res.k}, {"truncated", f.truncated()}};
  if (!f.is_zero()) {
    auto env = best_certificate(f);
    Json verts = Json::array(), slopes = Json::array();
    for (const auto& [l, y] : env.vertices()) verts.push_back({l, y});
    for (const auto& s : env.slopes()) slopes.push_back(to_string(s));
    r["envelope"] = {{"vertices", verts}, {"slopes", slopes}};
  }
  return {r, "certificate (" + to_string(c) + ", " + std::to_string(res.k) + ")", res.ok ? 0 : 1};
}

template <class B>
Outcome cmd_nctorus(const RingPtr<B>& ring, const Options& o, const Json&) {
  auto z2 = MonoidDescriptor::Z(2);
  auto lambda = parse_scalar(ring, o.lambda);
  if (lambda.val() != 0) throw InvalidInput("lambda must be a unit");
  // c(s, t) = lambda^(s_2 t_1): U2 U1 = lambda U1 U2.
  auto c = Cocycle<B>::bicharacter(z2, lambda, {{0, 0}, {1, 0}});
  const std::int64_t D = o.D;
  auto mono = [&](std::int64_t a, std::int64_t b) {
    return DaggerSeries<B>::monomial(ring, z2, D, MonoidElem::exponents(z2, {a, b}));
  };
  const std::vector<std::pair<std::string, DaggerSeries<B>>> gens{
      {"U1", mono(1, 0)}, {"U2", mono(0, 1)}, {"U1^-1", mono(-1, 0)}, {"U2^-1", mono(0, -1)}};
  Json table = Json::array();
  for (const auto& [ln, l] : gens)
    for (const auto& [rn, r] : gens) {
      auto prod = mul(l, r, c);
      Json terms = Json::array();
      for (const auto& [s, x] : prod.terms()) terms.push_back({{"s", elem_to_json(s)}, {"x", scalar_to_json(x)}});
      table.push_back({{"left", ln}, {"right", rn}, {"product", terms}});
    }
  const bool relation = mul(gens[1].second, gens[0].second, c) == add_scale(DaggerSeries<B>(ring, z2, D), mul(gens[0].second, gens[1].second, c), lambda);
  // delta_(a,b) = U1^a U2^b on the ball of radius D.
  bool normal_form = true;
  for (const auto& s : ball(z2, D)) {
    auto lhs = mono(s.data()[0], 0), rhs = mono(0, s.data()[1]);
    normal_form = normal_form && mul(lhs, rhs, c) == mono(s.data()[0], s.data()[1]);
  }
  Json r{{"lambda", scalar_to_json(lambda)},
         {"D", D},
         {"relation_U2U1_eq_lambda_U1U2", relation},
         {"monomials_are_ordered_products", normal_form},
         {"table", table}};
  const bool ok = relation && normal_form;
  return {r, ok ? "U2 U1 = lambda U1 U2 verified" : "relation FAILED", ok ? 0 : 1};
}

template <class B>
Outcome cmd_specrad(const RingPtr<B>& ring, const Options& o, const Json& in) {
  auto [ctx, s] = lattice_input(ring, o, in);
  auto rep = rho1_estimate(s, ctx, o.nmax);
  Json r = radius_report_to_json(rep);
  auto mats = in.contains("series") ? std::vector<Matrix<B>>{} : matrices_from(ring, o, in);
  if (mats.size() == 1) {
    auto slope = newton_polygon_rho(mats.front());
    r["newton_slope"] = slope ? Json(to_string(*slope)) : Json("inf");
  }
  std::string summary = "exponent " + std::string(rep.exponent ? to_string(*rep.exponent) : "inf") +
                        ", rho1 exponent " + to_string(rep.rho1_exponent) + " (" + to_string(rep.verdict) + ")";
  return {r, summary, 0};
}

template <class B>
Outcome cmd_closure(const RingPtr<B>& ring, const Options& o, const Json& in) {
  auto [ctx, s] = lattice_input(ring, o, in);
  auto cl = lgb_closure(s, ctx, o.depth);
  Json gauges = Json::array();
  for (const auto& l : cl.chain) gauges.push_back(exponent_to_json(gauge_exponent(l)));
  Json r{{"stabilized_at", cl.stabilized_at ? Json(*cl.stabilized_at) : Json(nullptr)}, {"gauges", gauges}};
  if (cl.stabilized_at) {
    r["closed_under_pi_product"] = closed_under_pi_product(cl.chain.back(), ctx);
    r["lattice"] = lattice_to_json(cl.chain.back());
  }
  return {r, cl.stabilized_at ? "stabilized at " + std::to_string(*cl.stabilized_at) : "no stabilization",
          cl.stabilized_at ? 0 : 1};
}

template <class B>
Outcome cmd_probe(const RingPtr<B>& ring, const Options& o, const Json& in) {
  auto [ctx, s] = lattice_input(ring, o, in);
  auto res = semi_dagger_probe(s, ctx, ProbeParams{o.m, o.j_list, o.depth});
  Json arr = Json::array();
  bool diverging = false;
  std::string summary;
  for (const auto& x : res) {
    arr.push_back(probe_result_to_json(x));
    diverging = diverging || x.verdict == ProbeVerdict::diverging;
    summary += "j=" + std::to_string(x.j) + ": " + to_string(x.verdict) + "  ";
  }
  return {Json{{"m", o.m}, {"results", arr}}, summary, diverging ? 1 : 0};
}

template <class B>
Outcome cmd_crossed(const RingPtr<B>& ring, const Options& o, const Json& in) {
  auto alpha = action_from_json(ring, detail::field(in, "action"));
  Json r{{"action", action_to_json(alpha)}};
  std::string summary;
  if (in.contains("u") && in.contains("v")) {
    auto u = crossed_from_json(ring, in.at("u"));
    auto v = crossed_from_json(ring, in.at("v"));
    auto prod = crossed_mul(u, v, alpha);
    r["product"] = crossed_to_json(prod);
    Rational c = !o.c.empty() ? parse_rational(o.c) : in.contains("c") ? rational_from_json(in.at("c")) : Rational(1);
    auto cert = crossed_certify(prod, c);
    r["certify"] = {{"c", to_string(c)}, {"ok", cert.ok}, {"k", cert.k}};
    if (prod.certificate()) r["certificate_holds"] = prod.holds(*prod.certificate());
    summary += "product has " + std::to_string(prod.terms().size()) + " terms; ";
  }
  const auto nk = MonoidDescriptor::N(alpha.rank());
  auto ctx = AlgebraContext<B>::series(ring, nk, o.D);
  // Start from V + V x_1 + ... + V x_k; the probe grows it to an invariant lattice.
  std::vector<DaggerSeries<B>> gens{DaggerSeries<B>::monomial(ring, nk, o.D, MonoidElem::identity(nk))};
  for (std::size_t i = 0; i < alpha.rank(); ++i)
    gens.push_back(DaggerSeries<B>::monomial(ring, nk, o.D, MonoidElem::generator(nk, i)));
  auto rep = uniform_boundedness_probe(alpha, ctx, ctx.span_of(gens), o.depth);
  Json gauges = Json::array();
  for (auto g : rep.gauges) gauges.push_back(exponent_to_json(g));
  r["boundedness"] = {{"verdict", to_string(rep.verdict)},
                      {"stabilized_at", rep.stabilized_at ? Json(*rep.stabilized_at) : Json(nullptr)},
                      {"gauges", gauges},
                      {"forward_invariant", rep.forward_invariant},
                      {"backward_invariant", rep.backward_invariant},
                      {"lattice", lattice_to_json(rep.lattice)}};
  summary += std::string("uniform boundedness: ") + to_string(rep.verdict);
  return {r, summary, rep.verdict == BoundednessVerdict::stabilized ? 0 : 1};
}

template <class B>
Outcome cmd_gallery(const RingPtr<B>& ring, const Options& o, const Json&) {
  GalleryReport rep;
  if (o.gallery_name == "nonseparated")
    rep = gallery_nonseparated(ring, o.D);
  else if (o.gallery_name == "nonclosed-image")
    rep = gallery_nonclosed_image(ring, o.D);
  else
    throw InvalidInput("unknown gallery entry '" + o.gallery_name + "'");
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back({{"check", c.what}, {"ok", c.ok}});
  Json r{{"name", rep.name}, {"D", o.D}, {"pass", rep.pass()}, {"checks", checks}};
  return {r, rep.name + (rep.pass() ? ": pass" : ": FAIL"), rep.pass() ? 0 : 1};
}

template <class B>
Outcome dispatch(const std::string& cmd, const RingPtr<B>& ring, const Options& o, const Json& in) {
  if (cmd == "scalar") return cmd_scalar(ring, o, in);
  if (cmd == "snf") return cmd_snf(ring, o, in);
  if (cmd == "torsion") return cmd_torsion(ring, o, in);
  if (cmd == "series-mul") return cmd_series_mul(ring, o, in);
  if (cmd == "certify") return cmd_certify(ring, o, in);
  if (cmd == "nctorus") return cmd_nctorus(ring, o, in);
  if (cmd == "specrad") return cmd_specrad(ring, o, in);
  if (cmd == "closure") return cmd_closure(ring, o, in);
  if (cmd == "probe") return cmd_probe(ring, o, in);
  if (cmd == "crossed") return cmd_crossed(ring, o, in);
  if (cmd == "gallery") return cmd_gallery(ring, o, in);
  throw InvalidInput("unknown subcommand '" + cmd + "'");
}

/// Ring from the input's "ring" field (or the first series' ring), else flags.
RingDescriptor pick_ring(const Options& o, const Json& in) {
  auto from = [](const Json& j) -> std::optional<RingDescriptor> {
    if (j.is_object() && j.contains("ring")) return ring_from_json(j.at("ring"));
    return std::nullopt;
  };
  if (auto d = from(in)) return *d;
  for (const char* key : {"a", "series", "u"}) {
    if (!in.is_object() || !in.contains(key)) continue;
    const Json& j = in.at(key);
    if (auto d = from(j)) return *d;
    if (j.is_array() && !j.empty())
      if (auto d = from(j.front())) return *d;
    if (j.contains("terms") && j.at("terms").is_array() && !j.at("terms").empty())
      if (auto d = from(j.at("terms").front().value("series", Json()))) return *d;
  }
  if (o.q) return {BackendKind::eqchar, *o.q, o.precision};
  return {BackendKind::padic, o.p, o.precision};
}

int run(const std::string& cmd, const Options& o) {
  Json in = load_input(o.input);
  auto d = pick_ring(o, in);
  Outcome out;
  if (d.backend == BackendKind::padic)
    out = dispatch(cmd, Ring<Padic>::make(d.modulus, d.precision), o, in);
  else
    out = dispatch(cmd, Ring<EqChar>::make(d.modulus, d.precision), o, in);
  if (o.pretty) {
    std::cout << out.summary << "\n" << out.report.dump(2) << "\n";
  } else {
    std::cout << out.report.dump() << "\n";
  }
  return out.code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dagger algebras over discrete valuation rings at finite precision"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", o.p, "residue characteristic for the p-adic backend");
    sub->add_option("--q", o.q, "residue field order for the equal-characteristic backend F_q[[t]]");
    sub->add_option("--precision", o.precision, "absolute precision N");
    sub->add_option("--D", o.D, "degree cap");
    sub->add_option("--Dz", o.Dz, "support cap for crossed products");
    sub->add_option("--nmax", o.nmax, "number of powers for spectral estimates");
    sub->add_option("--depth", o.depth, "iteration depth for closures and probes");
    sub->add_flag("--pretty", o.pretty, "human-readable summary and indented JSON");
    sub->add_option("--seed", o.seed, "seed for sampled checks");
    sub->add_option("--input", o.input, "JSON input file or inline JSON");
  };

  struct Spec {
    const char* name;
    const char* help;
  };
  const std::vector<Spec> specs{{"scalar", "evaluate a scalar expression"},
                                {"snf", "Smith normal form of a matrix"},
                                {"torsion", "torsion of a finitely presented module"},
                                {"series-mul", "twisted product of two series"},
                                {"certify", "growth certificate of a series"},
                                {"nctorus", "noncommutative torus relations"},
                                {"specrad", "spectral radius estimate"},
                                {"closure", "closure sum pi^i S^(i+1)"},
                                {"probe", "semi-dagger probe"},
                                {"crossed", "crossed product by an affine action"},
                                {"gallery", "counterexample regressions"}};
  for (const auto& s : specs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    common(sub);
    std::string name = s.name;
    if (name == "scalar") sub->add_option("--expr", o.expr, "expression such as '3*pi^-2 + 1'");
    if (name == "snf" || name == "specrad" || name == "closure" || name == "probe")
      sub->add_option("--matrix", o.matrix, "matrix literal such as '[[0,1],[pi,0]]'");
    if (name == "torsion") sub->add_option("--relations", o.relations, "relation matrix literal");
    if (name == "nctorus") sub->add_option("--lambda", o.lambda, "unit lambda");
    if (name == "certify" || name == "crossed") sub->add_option("--c", o.c, "growth rate, e.g. 1/2");
    if (name == "probe") {
      sub->add_option("--m", o.m, "exponent m in pi^m S^j");
      sub->add_option("--j", o.j_list, "powers j to probe");
    }
    if (name == "gallery")
      sub->add_option("name", o.gallery_name, "nonseparated | nonclosed-image")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run(cmd, o);
  } catch (const PrecisionExhausted& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  }
}
