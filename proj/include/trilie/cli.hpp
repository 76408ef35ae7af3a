#ifndef TRILIE_CLI_HPP
#define TRILIE_CLI_HPP

// Command-line front end. Exit codes: 0 verdict true, 1 verdict false, 2 error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "io.hpp"
#include "selftest.hpp"

namespace trilie::cli {

using io::Json;

struct Options {
  std::string verb;
  std::vector<std::string> inputs;
  std::optional<std::size_t> degree;
  bool adjoint = false;
  std::string coeffs;
  bool raw_complex = false;
  std::uint64_t seed = 1;
  std::string grid = "fixed";
  bool json = false;
  unsigned threads = 0;
  bool mc = false;
  std::string section;
};

struct Outcome {
  Json report;
  int code = 0;
};

namespace detail {

inline Json args_json(const Index* a, std::size_t n) { return io::detail::index_list(a, n); }

inline Json fi_json(const FiReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations)
    v.push_back({{"args", args_json(x.args.data(), 5)}, {"lhs", io::to_json(x.lhs)}, {"rhs", io::to_json(x.rhs)}});
  return {{"holds", r.holds}, {"violations", std::move(v)}};
}

inline Json rep_json(const RepReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations)
    v.push_back({{"identity", x.identity},
                 {"args", args_json(x.args.data(), 4)},
                 {"lhs", io::to_json(x.lhs)},
                 {"rhs", io::to_json(x.rhs)}});
  return {{"holds", r.holds}, {"violations", std::move(v)}};
}

inline Json samples_json(const std::vector<std::pair<int, int>>& s) {
  Json out = Json::array();
  for (auto [a, b] : s) out.push_back(Json::array({a, b}));
  return out;
}

inline Json compatibility_json(const CompatibilityReport& r, const std::vector<std::pair<int, int>>& samples) {
  Json mixed = Json::array();
  for (const auto& x : r.mixed)
    mixed.push_back({{"args", args_json(x.args.data(), 5)}, {"lhs", io::to_json(x.lhs)}, {"rhs", io::to_json(x.rhs)}});
  return {{"fi1", fi_json(r.fi1)},
          {"fi2", fi_json(r.fi2)},
          {"mixed_identity", {{"holds", r.mixed_holds}, {"violations", std::move(mixed)}}},
          {"bracket_vanishes", r.bracket_zero},
          {"pencil", {{"samples", samples_json(samples)}, {"holds", r.pencil.holds}, {"failing", samples_json(r.pencil.failing)}}},
          {"compatible", r.compatible}};
}

inline Json complex_json(const CochainComplexReport& r) {
  Json degrees = Json::array();
  for (const auto& d : r.degrees)
    degrees.push_back({{"degree", d.degree},
                       {"cochain_dim", d.cochain_dim},
                       {"kernel_dim", d.kernel_dim},
                       {"image_rank", d.image_rank},
                       {"complex_law", d.complex_law},
                       {"cohomology_dim", d.cohomology_dim ? Json(*d.cohomology_dim) : Json(nullptr)}});
  return {{"complex", r.admissible ? "admissible" : "raw"}, {"degrees", std::move(degrees)}};
}

inline Json matrices_json(const std::vector<Matrix>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(io::to_json(m));
  return out;
}

inline Json bools(std::initializer_list<bool> bs) {
  Json out = Json::array();
  for (bool b : bs) out.push_back(b);
  return out;
}

template <std::size_t N>
inline Json bools(const std::array<bool, N>& bs) {
  Json out = Json::array();
  for (bool b : bs) out.push_back(b);
  return out;
}

/// Loaded inputs with their combined digest.
struct Inputs {
  std::vector<io::Document> docs;
  std::string digest;
};

inline Inputs load(const std::vector<std::string>& paths) {
  Inputs in;
  std::string all;
  for (const auto& p : paths) {
    in.docs.push_back(io::read_document(p));
    all += in.docs.back().bytes;
    all.push_back('\0');
  }
  in.digest = io::digest(all);
  return in;
}

inline void expect_inputs(const Options& o, std::size_t n) {
  if (o.inputs.size() != n)
    throw PreconditionError(o.verb + " expects " + std::to_string(n) + " input file" + (n == 1 ? "" : "s"));
}

inline bool is_pair_file(const Json& j) { return j.is_object() && j.contains("bracket1"); }

inline std::vector<std::pair<int, int>> samples(const Options& o) {
  if (o.grid == "fuzz") return pencil_fuzz(o.seed, 16);
  if (o.grid != "fixed") throw PreconditionError("--grid must be \"fixed\" or \"fuzz\"");
  return pencil_grid();
}

inline Coefficients pair_coefficients(const Options& o, const CompatiblePair& p) {
  if (!o.coeffs.empty()) {
    auto doc = io::read_document(o.coeffs);
    auto r = io::parse_compatible_rep(doc.json, p.dim());
    if (!validate_compatible_representation(p, r).holds)
      throw PreconditionError("coefficients are not a compatible representation of the pair");
    return r;
  }
  if (o.adjoint) return CompatibleRepresentation::adjoint(p);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Verbs

inline Outcome verb_validate(const Options& o, const Inputs& in) {
  expect_inputs(o, 1);
  const Json& j = in.docs[0].json;
  Outcome out;
  if (is_pair_file(j)) {
    const CompatiblePair p = io::parse_pair(j);
    const auto s = samples(o);
    const auto r = validate_compatible(p, s);
    out.report["kind"] = "compatible_pair";
    out.report.update(compatibility_json(r, s));
    bool ok = r.compatible;
    if (!o.coeffs.empty()) {
      auto rep = io::parse_compatible_rep(io::read_document(o.coeffs).json, p.dim());
      auto rr = validate_compatible_representation(p, rep);
      Json mixed = Json::array();
      for (const auto& x : rr.mixed)
        mixed.push_back({{"identity", x.identity - 2},
                         {"args", args_json(x.args.data(), 4)},
                         {"lhs", io::to_json(x.lhs)},
                         {"rhs", io::to_json(x.rhs)}});
      out.report["representation"] = {{"rho", rep_json(rr.rho)},
                                      {"mu", rep_json(rr.mu)},
                                      {"mixed", std::move(mixed)},
                                      {"semidirect_compatible", rr.semidirect_compatible},
                                      {"valid", rr.holds}};
      ok = ok && rr.holds;
    }
    out.code = ok ? 0 : 1;
    return out;
  }
  const PreCochain pi = io::parse_algebra(j);
  const auto fi = validate_fi(pi);
  const bool mc = validate_fi_via_mc(pi);
  if (fi.holds != mc) throw ConsistencyError("FI check disagrees with [π,π] = 0");
  out.report["kind"] = "algebra";
  out.report["fi"] = fi_json(fi);
  out.report["mc"] = mc;
  bool ok = fi.holds;
  if (!o.coeffs.empty()) {
    auto rep = io::parse_rep(io::read_document(o.coeffs).json, pi.dim());
    auto rr = validate_representation(pi, rep);
    out.report["representation"] = rep_json(rr);
    ok = ok && rr.holds;
  }
  out.code = ok ? 0 : 1;
  return out;
}

inline Outcome verb_cohomology(const Options& o, const Inputs& in) {
  expect_inputs(o, 1);
  const Json& j = in.docs[0].json;
  const std::size_t degree = o.degree.value_or(2);
  check_degree(degree);
  Outcome out;
  if (is_pair_file(j)) {
    const CompatiblePair p = io::parse_pair(j);
    if (!validate_compatible(p).compatible) throw PreconditionError("input is not a compatible pair");
    const Coefficients c = pair_coefficients(o, p);
    out.report["kind"] = "compatible_pair";
    out.report["coefficients"] = !o.coeffs.empty() ? "file" : (o.adjoint ? "adjoint" : "self");
    out.report.update(complex_json(compatible_cohomology(p, c, degree, !o.raw_complex)));
    return out;
  }
  const PreCochain pi = io::parse_algebra(j);
  if (!validate_fi(pi).holds) throw PreconditionError("input bracket fails the fundamental identity");
  Representation r = Representation::adjoint(pi);
  if (!o.coeffs.empty()) {
    r = io::parse_rep(io::read_document(o.coeffs).json, pi.dim());
    if (!validate_representation(pi, r).holds) throw PreconditionError("coefficients are not a representation");
  }
  out.report["kind"] = "algebra";
  out.report["coefficients"] = o.coeffs.empty() ? "adjoint" : "file";
  out.report.update(complex_json(cohomology(pi, r, degree, !o.raw_complex)));
  return out;
}

inline Outcome verb_derivations(const Options& o, const Inputs& in) {
  expect_inputs(o, 1);
  const Json& j = in.docs[0].json;
  std::vector<Matrix> basis;
  Outcome out;
  if (is_pair_file(j)) {
    basis = compatible_derivations(io::parse_pair(j));
    out.report["kind"] = "compatible_pair";
  } else {
    basis = derivation_space(ThreeLieAlgebra(io::parse_algebra(j)));
    out.report["kind"] = "algebra";
  }
  out.report["dimension"] = basis.size();
  out.report["basis"] = matrices_json(basis);
  return out;
}

inline Outcome verb_mc_check(const Options& o, const Inputs& in) {
  expect_inputs(o, 1);
  const CompatiblePair p = io::parse_pair(in.docs[0].json);
  const McTriple m = compatible_mc_check(p.pi1, p.pi2);
  Outcome out;
  out.report = {{"pi1_pi1", m.pi1_pi1}, {"pi1_pi2", m.pi1_pi2}, {"pi2_pi2", m.pi2_pi2}, {"holds", m.all()}};
  out.code = m.all() ? 0 : 1;
  return out;
}

inline void check_deformation_shape(const CompatiblePair& p, const DeformationData& d) {
  for (const PreCochain* c : {&d.omega1, &d.omega2})
    if (c->weight() != 1 || c->dim() != p.dim() || c->target_dim() != p.dim())
      throw DimensionError("deformation cochains must be weight-1 maps g → g");
}

inline Outcome verb_deform_check(const Options& o, const Inputs& in) {
  expect_inputs(o, 2);
  const CompatiblePair p = io::parse_pair(in.docs[0].json);
  const DeformationData d = io::parse_deformation(in.docs[1].json);
  check_deformation_shape(p, d);
  Outcome out;
  if (o.mc) {
    if (!validate_compatible(p).compatible) throw PreconditionError("base is not a compatible pair");
    const auto r = deformation_mc_check(p, d.omega1, d.omega2);
    out.report = {{"mode", "maurer_cartan"}, {"equations", bools(r.equations)}, {"holds", r.holds}};
    out.code = r.holds ? 0 : 1;
    return out;
  }
  const auto r = infinitesimal_check(p, d);
  out.report = {{"mode", "infinitesimal"}, {"equations", bools(r.equations)}, {"cocycle", r.cocycle}};
  out.code = r.cocycle ? 0 : 1;
  return out;
}

inline Outcome verb_deform_equivalent(const Options& o, const Inputs& in) {
  expect_inputs(o, 3);
  const CompatiblePair p = io::parse_pair(in.docs[0].json);
  const DeformationData a = io::parse_deformation(in.docs[1].json), b = io::parse_deformation(in.docs[2].json);
  check_deformation_shape(p, a);
  check_deformation_shape(p, b);
  if (!infinitesimal_check(p, a).cocycle || !infinitesimal_check(p, b).cocycle)
    throw PreconditionError("both inputs must be infinitesimal deformations (2-cocycles)");
  const auto s = infinitesimal_equivalent(p, a, b);
  Outcome out;
  out.report = {{"equivalent", s.witness.has_value()},
                {"witness", s.witness ? io::to_json(*s.witness) : Json(nullptr)},
                {"certificate", s.certificate ? io::to_json(*s.certificate) : Json(nullptr)}};
  out.code = s.witness ? 0 : 1;
  return out;
}

inline Outcome verb_nijenhuis(const Options& o, const Inputs& in) {
  expect_inputs(o, 2);
  const Json& j = in.docs[0].json;
  const Matrix n = io::parse_operator(in.docs[1].json);
  Outcome out;
  if (!is_pair_file(j)) {
    const PreCochain pi = io::parse_algebra(j);
    if (n.rows() != pi.dim() || n.cols() != pi.dim()) throw DimensionError("operator size does not match the algebra");
    const auto db = deformed_bracket(pi, n);
    const auto pc = nijenhuis_pair_compatibility(pi, n);
    out.report = {{"kind", "algebra"},
                  {"nijenhuis", db.torsion_zero},
                  {"torsion", io::cochain_to_json(nijenhuis_torsion(pi, n))},
                  {"deformed_bracket", io::algebra_to_json(db.bracket)},
                  {"deformed_is_3lie", db.validated},
                  {"homomorphism", db.homomorphism},
                  {"pair_with_deformed_compatible", pc.compatible},
                  {"proof_identity", pc.proof_identity}};
    out.code = db.torsion_zero ? 0 : 1;
    return out;
  }
  const CompatiblePair p = io::parse_pair(j);
  if (n.rows() != p.dim() || n.cols() != p.dim()) throw DimensionError("operator size does not match the pair");
  const auto s = samples(o);
  const auto r = compatible_nijenhuis_check(p, n, s);
  out.report = {{"kind", "compatible_pair"},
                {"nijenhuis1", r.nijenhuis1},
                {"nijenhuis2", r.nijenhuis2},
                {"pencil_samples", samples_json(s)},
                {"pencil_consistent", r.pencil_consistent},
                {"deformed_bracket_linear", r.deformed_linear},
                {"proof_identity", r.defect_linear},
                {"nijenhuis", r.nijenhuis()}};
  if (r.nijenhuis()) {
    const auto dp = deformed_compatible_pair(p, n);
    const auto data = trivial_deformation_from_nijenhuis(p, n);
    const auto o2 = order2_check(p, data);
    const auto tr = triviality_check(p, data, n);
    Json blocks = Json::array();
    for (const auto& b : o2.blocks) blocks.push_back(bools(b));
    out.report["deformed_pair"] = io::pair_to_json(dp.pair);
    out.report["deformed_compatible"] = dp.compatible;
    out.report["homomorphism"] = dp.homomorphism;
    out.report["trivial_deformation"] = io::deformation_to_json(data);
    out.report["order2_blocks"] = std::move(blocks);
    out.report["triviality_equations"] = bools(tr.equations);
  }
  out.code = r.nijenhuis() ? 0 : 1;
  return out;
}

inline Outcome verb_deform_order2(const Options& o, const Inputs& in) {
  expect_inputs(o, 2);
  const CompatiblePair p = io::parse_pair(in.docs[0].json);
  const DeformationData d = io::parse_deformation(in.docs[1].json);
  check_deformation_shape(p, d);
  const auto r = order2_check(p, d);
  Json blocks = Json::array();
  for (const auto& b : r.blocks) blocks.push_back(bools(b));
  Outcome out;
  out.report = {{"blocks", std::move(blocks)}, {"holds", r.holds()}};
  out.code = r.holds() ? 0 : 1;
  return out;
}

inline ExtensionBuild build_from(const io::ExtensionData& e) {
  return build_extension(e.base, e.rep, e.omega1, e.omega2);
}

inline Outcome verb_extension_build(const Options& o, const Inputs& in) {
  expect_inputs(o, 1);
  const auto e = io::parse_extension(in.docs[0].json);
  const auto b = build_from(e);
  Outcome out;
  out.report = {{"cocycle_equations", bools(b.cocycle_equations)},
                {"cocycle", b.cocycle},
                {"total_compatible", b.total_compatible},
                {"total", b.extension ? io::pair_to_json(b.extension->total) : Json(nullptr)}};
  out.code = b.cocycle ? 0 : 1;
  return out;
}

inline Outcome verb_extension_extract(const Options& o, const Inputs& in) {
  expect_inputs(o, 1);
  const auto e = io::parse_extension(in.docs[0].json);
  const auto b = build_from(e);
  if (!b.extension) throw PreconditionError("extension data is not a 2-cocycle");
  const std::size_t d = e.base.dim(), m = e.rep.module_dim();
  Matrix tau(m, d);
  if (!o.section.empty()) tau = io::parse_operator(io::read_document(o.section).json, "section");
  if (tau.rows() != m || tau.cols() != d) throw DimensionError("section shift τ must be a module_dim × dim matrix");
  const Matrix sigma = shifted_section(tau);
  const auto rep = induced_representation(b.extension->total, d, sigma);
  const auto [w1, w2] = extract_cocycle(*b.extension, sigma);
  const auto [t1, t2] = delta1(e.base, e.rep, tau);
  const bool rep_ok = rep == e.rep;
  const bool shift_ok = (w1 - e.omega1 == t1) && (w2 - e.omega2 == t2);
  Outcome out;
  out.report = {{"section", io::to_json(sigma)},
                {"rep", io::compatible_rep_to_json(rep)},
                {"omega1", io::cochain_to_json(w1)},
                {"omega2", io::cochain_to_json(w2)},
                {"rep_matches", rep_ok},
                {"difference_is_delta_tau", shift_ok}};
  out.code = rep_ok && shift_ok ? 0 : 1;
  return out;
}

inline Outcome verb_extension_classify(const Options& o, const Inputs& in) {
  expect_inputs(o, 2);
  const auto a = io::parse_extension(in.docs[0].json), b = io::parse_extension(in.docs[1].json);
  const auto ba = build_from(a), bb = build_from(b);
  if (!ba.extension || !bb.extension) throw PreconditionError("both extensions must come from 2-cocycles");
  const auto r = classify(*ba.extension, *bb.extension);
  Outcome out;
  out.report = io::classification_to_json(r);
  out.code = r.isomorphic ? 0 : 1;
  return out;
}

inline Outcome verb_selftest(const Options& o) {
  const auto results = run_selftest(o.seed);
  Json props = Json::array();
  bool ok = true;
  for (const auto& r : results) {
    props.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    ok = ok && r.passed;
  }
  Outcome out;
  out.report = {{"seed", o.seed}, {"properties", std::move(props)}, {"passed", ok}};
  out.code = ok ? 0 : 1;
  return out;
}

/// "key: value" lines; nested values are printed as compact JSON.
inline std::string human(const Json& report) {
  std::string s;
  for (auto it = report.begin(); it != report.end(); ++it) {
    s += it.key();
    s += ": ";
    s += it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
    s += '\n';
  }
  return s;
}

}  // namespace detail

inline Outcome dispatch(const Options& o) {
  using namespace detail;
  Outcome body;
  std::string digest;
  if (o.verb == "selftest") {
    body = verb_selftest(o);
    digest = io::digest("");
  } else {
    const Inputs in = load(o.inputs);
    digest = in.digest;
    if (o.verb == "validate") body = verb_validate(o, in);
    else if (o.verb == "cohomology") body = verb_cohomology(o, in);
    else if (o.verb == "derivations") body = verb_derivations(o, in);
    else if (o.verb == "mc-check") body = verb_mc_check(o, in);
    else if (o.verb == "deform-check") body = verb_deform_check(o, in);
    else if (o.verb == "deform-equivalent") body = verb_deform_equivalent(o, in);
    else if (o.verb == "nijenhuis") body = verb_nijenhuis(o, in);
    else if (o.verb == "deform-order2") body = verb_deform_order2(o, in);
    else if (o.verb == "extension-build") body = verb_extension_build(o, in);
    else if (o.verb == "extension-extract") body = verb_extension_extract(o, in);
    else if (o.verb == "extension-classify") body = verb_extension_classify(o, in);
    else throw PreconditionError("unknown verb " + o.verb);
  }
  Outcome out;
  out.report = {{"verb", o.verb}, {"input_digest", digest}};
  out.report.update(body.report);
  out.code = body.code;
  return out;
}

/// Parses argv, runs the verb and writes the report. Returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations for 3-Lie algebras and compatible 3-Lie algebras", "trilie"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  std::size_t degree = 0;
  auto* degree_opt = app.add_option("--degree", degree, "highest CE-degree for cohomology");
  app.add_flag("--adjoint", o.adjoint, "use adjoint coefficients (lift route)");
  app.add_option("--coeffs", o.coeffs, "representation file used as coefficients");
  app.add_flag("--raw-complex", o.raw_complex, "use the raw (non-admissible) cochain spaces");
  app.add_option("--seed", o.seed, "seed for randomized checks");
  app.add_option("--grid", o.grid, "pencil samples: fixed or fuzz");
  app.add_flag("--json", o.json, "print the report as JSON");
  app.add_option("--threads", o.threads, "worker threads (default: TRILIE_THREADS or 1)");
  app.add_flag("--mc", o.mc, "deform-check: treat omega1/omega2 as finite deformations");
  app.add_option("--section", o.section, "extension-extract: file with τ, section σ(x) = x + τx");

  const std::vector<std::pair<const char*, const char*>> verbs = {
      {"validate", "validate an algebra or compatible pair (and optional coefficients)"},
      {"cohomology", "cohomology dimensions"},
      {"derivations", "basis of derivations"},
      {"mc-check", "the three Maurer–Cartan brackets of a pair"},
      {"deform-check", "infinitesimal deformation (2-cocycle) check"},
      {"deform-equivalent", "equivalence of two infinitesimal deformations"},
      {"nijenhuis", "Nijenhuis operator checks and the induced deformations"},
      {"deform-order2", "order-2 deformation equations"},
      {"extension-build", "abelian extension from 2-cocycle data"},
      {"extension-extract", "representation and cocycle read off from a section"},
      {"extension-classify", "isomorphism test for two abelian extensions"},
      {"selftest", "seeded property suite"}};
  for (const auto& [name, help] : verbs) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("inputs", o.inputs, "input files");
    sub->fallthrough();
    sub->callback([&o, name = std::string(name)] { o.verb = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (degree_opt->count()) o.degree = degree;
  if (o.threads == 0) {
    o.threads = 1;
    if (const char* env = std::getenv("TRILIE_THREADS")) o.threads = static_cast<unsigned>(std::max(1, std::atoi(env)));
  }
  thread_count() = o.threads;
  try {
    const Outcome r = dispatch(o);
    out << (o.json ? r.report.dump(2) + "\n" : detail::human(r.report));
    return r.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace trilie::cli

#endif  // TRILIE_CLI_HPP
