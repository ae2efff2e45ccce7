#include "twoproj/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>

#include <CLI11.hpp>

#include "twoproj/algebras.hpp"
#include "twoproj/halmos.hpp"
#include "twoproj/intertwine.hpp"
#include "twoproj/matrix_io.hpp"
#include "twoproj/projpair.hpp"
#include "twoproj/random.hpp"
#include "twoproj/report.hpp"
#include "twoproj/skew.hpp"

namespace twoproj::cli {

namespace {

struct Common {
  std::optional<double> atol;
  std::optional<double> rank_tol;
};

struct Loaded {
  CMatrix matrix;
  Json digest;
};

Loaded load(const std::string& path) {
  const std::string text = read_text_file(path);
  CMatrix m;
  try {
    m = parse_matrix_text(text);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
  Json digest;
  digest["name"] = std::filesystem::path(path).filename().string();
  digest["sha256"] = sha256_hex(text);
  return {std::move(m), std::move(digest)};
}

Tolerance resolve(const Common& c, Tolerance base) {
  if (c.atol) base.atol = *c.atol;
  if (c.rank_tol) base.rank_tol = *c.rank_tol;
  base.validate();
  return base;
}

Json skeleton(const std::string& command, const std::vector<const Loaded*>& inputs, const Tolerance& tol,
              std::optional<std::uint64_t> seed) {
  Json doc;
  doc["command"] = command;
  Json in = Json::array();
  for (const Loaded* l : inputs) in.push_back(l->digest);
  doc["inputs"] = std::move(in);
  doc["tolerance"] = tolerance_json(tol);
  doc["seed"] = seed ? Json(*seed) : Json(nullptr);
  return doc;
}

int finish(Json& doc, Json results, bool verdict, std::ostream& out) {
  doc["results"] = std::move(results);
  doc["verdict"] = verdict;
  out << dump_report(doc);
  return verdict ? kExitOk : kExitNegative;
}

Json dims_json(const SubspaceDims& d) {
  Json j;
  j["d00"] = d.d00;
  j["d01"] = d.d01;
  j["d10"] = d.d10;
  j["d11"] = d.d11;
  j["dM"] = d.dM;
  return j;
}

Json real_array(const RVector& v) {
  Json a = Json::array();
  for (Index k = 0; k < v.size(); ++k) a.push_back(v(k));
  return a;
}

// ---- parameter files -------------------------------------------------------

Json read_param_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    Json j = Json::parse(text);
    if (!j.is_object()) throw Error(ErrorKind::ParseError, path + ": parameter file must be a JSON object");
    return j;
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

std::optional<CMatrix> param_matrix(const Json& params, const char* key) {
  if (!params.contains(key)) return std::nullopt;
  return parse_matrix_text(params.at(key).dump());
}

Complex param_complex(const Json& v, const char* what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw Error(ErrorKind::ParseError, std::string(what) + " must be a [re, im] pair");
  return {v[0].get<double>(), v[1].get<double>()};
}

// ---- commands --------------------------------------------------------------

struct PairArgs {
  std::string p, q;
};

int cmd_validate(const PairArgs& a, const std::string& kind, const Common& c, std::ostream& out) {
  const Loaded p = load(a.p), q = load(a.q);
  const Tolerance tol = resolve(c, default_tolerance(p.matrix, q.matrix));
  Json doc = skeleton("validate", {&p, &q}, tol, std::nullopt);
  if (p.matrix.rows() != q.matrix.rows() || p.matrix.cols() != q.matrix.cols() ||
      p.matrix.rows() != p.matrix.cols())
    throw Error(ErrorKind::DimMismatch, "P and Q must be square of equal dimension");
  const bool orth = kind == "orth";
  const VerificationReport rep = projection_residuals(p.matrix, q.matrix, orth, tol);
  Json results;
  results["kind"] = kind;
  results["dim"] = p.matrix.rows();
  results["projection"] = verification_json(rep);
  bool verdict = rep.verdict;
  if (orth) {
    const VerificationReport susy = verify_supersymmetry(p.matrix, q.matrix, tol);
    results["supersymmetry"] = verification_json(susy);
    verdict = verdict && susy.verdict;
  }
  return finish(doc, std::move(results), verdict, out);
}

int cmd_decompose(const PairArgs& a, const Common& c, std::ostream& out) {
  const Loaded p = load(a.p), q = load(a.q);
  const Tolerance tol = resolve(c, default_tolerance(p.matrix, q.matrix));
  const OrthProjPair pair = make_orth_pair(p.matrix, q.matrix, tol);
  const HalmosDecomposition dec = halmos_decompose(pair, tol);
  const auto [rp, rq] = reconstruct(dec);
  Json doc = skeleton("decompose", {&p, &q}, tol, std::nullopt);
  Json results;
  results["dims"] = dims_json(dec.dims);
  results["H_eigenvalues"] = real_array(dec.h);
  Json mult = Json::array();
  for (const auto& cl : dec.clusters) mult.push_back(cl.size);
  results["H_cluster_multiplicities"] = std::move(mult);
  results["commutant_dim"] = commutant_dim(dec, tol);
  results["exists_symmetric_unitary"] = exists_symmetric_unitary(dec);
  results["reconstruction_residual"] = {{"P", spectral_norm(rp - pair.P())}, {"Q", spectral_norm(rq - pair.Q())}};
  Json bases;
  bases["M00"] = matrix_json(dec.basis00);
  bases["M01"] = matrix_json(dec.basis01);
  bases["M10"] = matrix_json(dec.basis10);
  bases["M11"] = matrix_json(dec.basis11);
  bases["M"] = matrix_json(dec.basisM);
  bases["Mprime"] = matrix_json(dec.basisMprime);
  results["bases"] = std::move(bases);
  results["W"] = matrix_json(dec.W);
  results["H"] = matrix_json(dec.H);
  return finish(doc, std::move(results), true, out);
}

int cmd_intertwine(const PairArgs& a, const std::string& method, const std::string& param_file,
                   std::optional<std::uint64_t> seed, const Common& c, std::ostream& out) {
  const Loaded p = load(a.p), q = load(a.q);
  const Tolerance tol = resolve(c, default_tolerance(p.matrix, q.matrix));
  const OrthProjPair pair = make_orth_pair(p.matrix, q.matrix, tol);
  const HalmosDecomposition dec = halmos_decompose(pair, tol);
  const Json params = param_file.empty() ? Json::object() : read_param_file(param_file);
  Json doc = skeleton("intertwine", {&p, &q}, tol, seed);
  Json results;
  results["method"] = method;
  results["dims"] = dims_json(dec.dims);

  auto unavailable = [&](const std::string& reason) {
    results["available"] = false;
    results["reason"] = reason;
    return finish(doc, std::move(results), false, out);
  };

  CMatrix u;
  if (method == "kato") {
    try {
      u = kato_unitary(pair, tol);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NormTooLarge) throw;
      return unavailable(e.what());
    }
  } else if (method == "sgn") {
    try {
      u = sgn_b(pair, dec, tol);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotInjective) throw;
      return unavailable(e.what());
    }
  } else if (method == "wdd" || method == "general") {
    if (!exists_symmetric_unitary(dec)) return unavailable("dim M01 differs from dim M10");
    IntertwinerParams ip = seed ? random_params(dec, *seed) : identity_params(dec);
    if (method == "wdd") {
      const CMatrix s = param_matrix(params, "S").value_or(ip.U10);
      u = wdd_unitary(dec, s, tol);
    } else {
      if (auto m = param_matrix(params, "U0")) ip.U0 = *m;
      if (auto m = param_matrix(params, "U1")) ip.U1 = *m;
      if (auto m = param_matrix(params, "U10")) ip.U10 = *m;
      if (auto m = param_matrix(params, "U01")) ip.U01 = *m;
      if (auto m = param_matrix(params, "V")) ip.V = *m;
      u = general_unitary_halmos(dec, ip, tol);
    }
  } else {  // wstar
    if (!exists_unitary_in_wstar(dec)) return unavailable("M01 or M10 is nonzero");
    UnimodularParams up;
    std::optional<Rng> rng;
    if (seed) rng.emplace(*seed);
    if (dec.dims.d00 > 0) up.a0 = rng ? random_phase(*rng) : Complex(1.0, 0.0);
    if (dec.dims.d11 > 0) up.a1 = rng ? random_phase(*rng) : Complex(1.0, 0.0);
    up.phi.assign(dec.clusters.size(), Complex(1.0, 0.0));
    if (rng)
      for (auto& z : up.phi) z = random_phase(*rng);
    if (params.contains("a0")) up.a0 = param_complex(params.at("a0"), "a0");
    if (params.contains("a1")) up.a1 = param_complex(params.at("a1"), "a1");
    if (params.contains("phi")) {
      const Json& arr = params.at("phi");
      if (!arr.is_array()) throw Error(ErrorKind::ParseError, "phi must be an array of [re, im] pairs");
      up.phi.clear();
      for (const auto& z : arr) up.phi.push_back(param_complex(z, "phi sample"));
    }
    u = wstar_unitary(dec, up, tol);
  }
  const VerificationReport rep = verify_symmetric_intertwiner(pair, u, tol);
  results["available"] = true;
  results["U"] = matrix_json(u);
  results["verification"] = verification_json(rep);
  return finish(doc, std::move(results), rep.verdict, out);
}

int cmd_classify(const PairArgs& a, const Common& c, std::ostream& out) {
  const Loaded p = load(a.p), q = load(a.q);
  const Tolerance tol = resolve(c, default_tolerance(p.matrix, q.matrix));
  const IdempotentPair pair = make_idempotent_pair(p.matrix, q.matrix, tol);
  const InvertibilityReport rep = invertibility_conditions(pair, tol);
  Json doc = skeleton("classify", {&p, &q}, tol, std::nullopt);
  Json results;
  results["B_invertible"] = rep.b_invertible;
  results["one_not_in_spectrum_of_A2"] = rep.one_not_in_spec_a2;
  results["P+2Q-I_invertible"] = rep.p2q_minus_i_invertible;
  results["P+2Q-2I_invertible"] = rep.p2q_minus_2i_invertible;
  results["consistent"] = rep.consistent;
  Json margins;
  margins["sigma_min_B"] = rep.margins.sigma_min_b;
  margins["sigma_min_I-A2"] = rep.margins.sigma_min_one_minus_a2;
  margins["sigma_min_P+2Q-I"] = rep.margins.sigma_min_p2q_minus_i;
  margins["sigma_min_P+2Q-2I"] = rep.margins.sigma_min_p2q_minus_2i;
  margins["eig_distance_A2_to_1"] = rep.margins.eig_distance_a2_to_one;
  results["margins"] = std::move(margins);
  return finish(doc, std::move(results), rep.all_true(), out);
}

int cmd_algebra(const PairArgs& a, const std::string& check, const Common& c, std::ostream& out) {
  const Loaded p = load(a.p), q = load(a.q);
  const Tolerance tol = resolve(c, default_tolerance(p.matrix, q.matrix));
  const OrthProjPair pair = make_orth_pair(p.matrix, q.matrix, tol);
  const HalmosDecomposition dec = halmos_decompose(pair, tol);
  Json doc = skeleton("algebra", {&p, &q}, tol, std::nullopt);
  bool verdict = false;
  if (check == "wstar") verdict = exists_unitary_in_wstar(dec);
  else if (check == "cstar") verdict = exists_unitary_in_cstar(pair, dec, tol);
  else verdict = simple_spectrum_all_in(dec, tol);
  Json results;
  results["check"] = check;
  results["dims"] = dims_json(dec.dims);
  results["holds"] = verdict;
  return finish(doc, std::move(results), verdict, out);
}

int cmd_verify(const PairArgs& a, const std::string& u_path, const Common& c, std::ostream& out) {
  const Loaded p = load(a.p), q = load(a.q), u = load(u_path);
  const Tolerance tol = resolve(c, default_tolerance(p.matrix, q.matrix));
  const OrthProjPair pair = make_orth_pair(p.matrix, q.matrix, tol);
  const VerificationReport rep = verify_symmetric_intertwiner(pair, u.matrix, tol);
  Json doc = skeleton("verify", {&p, &q, &u}, tol, std::nullopt);
  return finish(doc, verification_json(rep), rep.verdict, out);
}

struct RandomArgs {
  std::string kind = "orth_pair";
  Index dim = 2;
  Index rank = 1;
  std::optional<Index> rank_q;
  std::uint64_t seed = 0;
  std::string out_p, out_q;
};

int cmd_random(const RandomArgs& r, const Common& c, std::ostream& out) {
  const Tolerance tol = resolve(c, Tolerance{});
  InstanceSpec spec;
  spec.kind = parse_instance_kind(r.kind);
  spec.dim = r.dim;
  spec.rank_p = r.rank;
  spec.rank_q = r.rank_q.value_or(r.rank);
  const RandomInstance inst = random_instance(spec, r.seed);
  Json doc = skeleton("random", {}, tol, r.seed);
  Json results;
  results["kind"] = r.kind;
  results["dim"] = r.dim;
  results["first"] = matrix_json(inst.first);
  if (inst.second) results["second"] = matrix_json(*inst.second);
  if (!r.out_p.empty()) write_matrix_file(r.out_p, inst.first);
  if (!r.out_q.empty() && inst.second) write_matrix_file(r.out_q, *inst.second);
  return finish(doc, std::move(results), true, out);
}

int cmd_oracle(const PairArgs& a, const std::string& relation, const Common& c, std::ostream& out) {
  const Loaded p = load(a.p), q = load(a.q);
  const Tolerance tol = resolve(c, default_tolerance(p.matrix, q.matrix));
  const auto basis = oracle_intertwiner_space(p.matrix, q.matrix, tol,
                                              relation == "one_sided" ? Relation::one_sided : Relation::symmetric);
  Json doc = skeleton("oracle", {&p, &q}, tol, std::nullopt);
  Json results;
  results["relation"] = relation;
  results["dimension"] = basis.size();
  Json list = Json::array();
  for (const auto& z : basis) list.push_back(matrix_json(z));
  results["basis"] = std::move(list);
  return finish(doc, std::move(results), true, out);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Analysis of pairs of projections and the unitaries that swap them", "twoproj"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&common](CLI::App* sub) {
    sub->add_option("--atol", common.atol, "absolute residual bound");
    sub->add_option("--rank-tol", common.rank_tol, "rank and eigenvalue-cluster threshold");
  };
  PairArgs pair;
  auto add_pair = [&pair](CLI::App* sub) {
    sub->add_option("--p", pair.p, "matrix file for P")->required();
    sub->add_option("--q", pair.q, "matrix file for Q")->required();
  };

  std::string kind = "orth";
  auto* validate = app.add_subcommand("validate", "check that P and Q are projections");
  add_pair(validate);
  add_common(validate);
  validate->add_option("--kind", kind, "orth or idempotent")->check(CLI::IsMember({"orth", "idempotent"}));

  auto* decompose = app.add_subcommand("decompose", "Halmos decomposition of an orthogonal pair");
  add_pair(decompose);
  add_common(decompose);

  std::string method;
  std::string param_file;
  std::optional<std::uint64_t> seed;
  auto* intertwine = app.add_subcommand("intertwine", "construct a unitary U with UPU* = Q, UQU* = P");
  add_pair(intertwine);
  add_common(intertwine);
  intertwine->add_option("--method", method)
      ->required()
      ->check(CLI::IsMember({"kato", "sgn", "wdd", "general", "wstar"}));
  intertwine->add_option("--param-file", param_file, "JSON file with explicit parameters");
  intertwine->add_option("--seed", seed, "draw random parameters");

  auto* classify = app.add_subcommand("classify", "invertibility conditions for an idempotent pair");
  add_pair(classify);
  add_common(classify);

  std::string check;
  auto* algebra = app.add_subcommand("algebra", "existence of intertwiners inside the generated algebras");
  add_pair(algebra);
  add_common(algebra);
  algebra->add_option("--check", check)->required()->check(CLI::IsMember({"wstar", "cstar", "simple"}));

  std::string u_path;
  auto* verify = app.add_subcommand("verify", "verify a candidate unitary");
  add_pair(verify);
  add_common(verify);
  verify->add_option("--u", u_path, "matrix file for U")->required();

  RandomArgs rnd;
  auto* random = app.add_subcommand("random", "seeded random instance");
  add_common(random);
  random->add_option("--kind", rnd.kind)
      ->check(CLI::IsMember({"unitary", "orth_projection", "orth_pair", "generic_orth_pair", "idempotent_pair"}));
  random->add_option("--dim", rnd.dim)->required();
  random->add_option("--rank", rnd.rank, "rank of the (first) projection");
  random->add_option("--rank-q", rnd.rank_q, "rank of the second projection (defaults to --rank)");
  random->add_option("--seed", rnd.seed)->required();
  random->add_option("--out-p", rnd.out_p, "also write the first matrix to this file");
  random->add_option("--out-q", rnd.out_q, "also write the second matrix to this file");

  std::string relation = "symmetric";
  auto* oracle = app.add_subcommand("oracle", "brute-force basis of the intertwiner space");
  add_pair(oracle);
  add_common(oracle);
  oracle->add_option("--relation", relation)->check(CLI::IsMember({"symmetric", "one_sided"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(pair, kind, common, out);
    if (*decompose) return cmd_decompose(pair, common, out);
    if (*intertwine) return cmd_intertwine(pair, method, param_file, seed, common, out);
    if (*classify) return cmd_classify(pair, common, out);
    if (*algebra) return cmd_algebra(pair, check, common, out);
    if (*verify) return cmd_verify(pair, u_path, common, out);
    if (*random) return cmd_random(rnd, common, out);
    if (*oracle) return cmd_oracle(pair, relation, common, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitUsage;
}

}  // namespace twoproj::cli
