#include "rt/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rt/asymptotics.hpp"
#include "rt/errors.hpp"
#include "rt/gauss.hpp"
#include "rt/parallel.hpp"

namespace rt {

namespace {

using nlohmann::json;
using cplx = std::complex<double>;

// Round to 15 significant digits so emitted documents are stable across
// runs and re-parse to the value that was printed.
double sig15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

json complex_json(const cplx& v) {
  return json{{"re", sig15(v.real())}, {"im", sig15(v.imag())}};
}

json inner_result_json(const InvariantResult& res, bool deterministic) {
  return json{{"method", res.method},
              {"value", complex_json(res.value)},
              {"terms", res.term_count},
              {"runtime_ms", deterministic ? 0.0 : sig15(res.runtime_ms)}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

double max_pairwise_residual(const std::vector<InvariantResult>& rs) {
  double worst = 0.0;
  for (size_t i = 0; i < rs.size(); ++i)
    for (size_t k = i + 1; k < rs.size(); ++k)
      worst = std::max(worst, std::abs(rs[i].value - rs[k].value));
  return worst;
}

Rational parse_rational(const std::string& s) {
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)),
                    std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw InputError("cannot parse rational \"" + s + "\"");
  }
}

char parse_family(const std::string& s) {
  if (s.size() != 1) throw InputError("family must be one letter A..G");
  return s[0];
}

long long int_field(const json& j, const std::string& name) {
  if (!j.contains(name)) throw InputError("missing field \"" + name + "\"");
  if (!j[name].is_number_integer())
    throw InputError("field \"" + name + "\" must be an integer");
  return j[name].get<long long>();
}

// --- subcommand bodies -----------------------------------------------------

int run_algebra_info(const RunConfig& cfg) {
  const AlgebraData alg = build_algebra(cfg.family, cfg.rank);
  json j;
  j["family"] = std::string(1, alg.family);
  j["rank"] = alg.rank;
  j["dimension"] = alg.dim_g;
  j["positive_roots"] = alg.num_positive_roots;
  j["dual_coxeter"] = alg.dual_coxeter;
  j["lacing"] = alg.lacing;
  j["weyl_order"] = alg.weyl.size();
  j["rho_norm_sq"] = alg.rho_sq.str();
  j["coroot_gram_det"] = alg.det_gram_coroot;
  j["comarks"] = alg.comarks;
  if (cfg.kappa > 0) {
    const RepContext ctx = make_rep_context(alg, cfg.kappa);
    const TqftConstants c = tqft_constants(ctx);
    j["kappa"] = ctx.kappa;
    j["r"] = ctx.r;
    j["alcove_weights"] = ctx.index_set.size();
    j["rank_D"] = sig15(c.rank_D);
    j["omega"] = complex_json(c.omega);
  }
  emit(j);
  return 0;
}

int run_rep_entry(const RunConfig& cfg, const std::vector<long long>& mat,
                  const std::vector<long long>& row,
                  const std::vector<long long>& col) {
  const AlgebraData alg = build_algebra(cfg.family, cfg.rank);
  const RepContext ctx = make_rep_context(alg, cfg.kappa);
  auto weight = [&](const std::vector<long long>& coords,
                    const char* which) -> LatticeVector {
    if (coords.empty()) return alg.rho;
    if (static_cast<int>(coords.size()) != alg.rank)
      throw InputError(std::string(which) +
                       " needs one weight coordinate per rank");
    return LatticeVector{coords, Basis::Weight};
  };
  const LatticeVector lambda = weight(row, "--row");
  const LatticeVector mu = weight(col, "--col");
  const SL2Matrix u = sl2(mat[0], mat[1], mat[2], mat[3]);

  const auto t0 = std::chrono::steady_clock::now();
  const cplx value = rep_entry(ctx, u, lambda, mu);
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  std::cout << format_result(
      InvariantResult{value, "rep-entry", ctx.kappa, ctx.r,
                      static_cast<long long>(ctx.index_set.size()), ms},
      cfg);
  return 0;
}

InvariantResult eval_lens(const RepContext& ctx, const std::string& method,
                          long long p, long long q) {
  if (method == "sine") return tau_lens(ctx, p, q);
  if (method == "rep") return tau_lens_rep(ctx, p, q);
  if (method == "coprime") return tau_lens_coprime(ctx, p, q);
  if (method == "seifert")
    return tau_seifert_general(ctx, lens_presentation(p, q));
  throw InputError("unknown method \"" + method + "\"");
}

std::vector<InvariantResult> lens_all(const RepContext& ctx, long long p,
                                      long long q) {
  std::vector<InvariantResult> rs;
  rs.push_back(tau_lens(ctx, p, q));
  rs.push_back(tau_lens_rep(ctx, p, q));
  rs.push_back(tau_seifert_general(ctx, lens_presentation(p, q)));
  if (p != 0 && std::gcd(ctx.r, std::abs(p)) == 1)
    rs.push_back(tau_lens_coprime(ctx, p, q));
  return rs;
}

int run_lens(const RunConfig& cfg, long long p, long long q,
             long long kappa_max) {
  const AlgebraData alg = build_algebra(cfg.family, cfg.rank);
  if (kappa_max > 0) {
    if (cfg.method == "all")
      throw InputError(
          "kappa sweep needs a single method (sine, rep, coprime or "
          "seifert)");
    std::string out = "kappa,re,im,method\n";
    for (long long k = cfg.kappa; k <= kappa_max; ++k) {
      const RepContext ctx = make_rep_context(alg, k);
      const InvariantResult r = eval_lens(ctx, cfg.method, p, q);
      char buf[192];
      std::snprintf(buf, sizeof buf, "%lld,%.15g,%.15g,%s\n", r.kappa,
                    r.value.real(), r.value.imag(), r.method.c_str());
      out += buf;
    }
    std::cout << out;
    return 0;
  }

  const RepContext ctx = make_rep_context(alg, cfg.kappa);
  if (cfg.method != "all") {
    std::cout << format_result(eval_lens(ctx, cfg.method, p, q), cfg);
    return 0;
  }
  const std::vector<InvariantResult> rs = lens_all(ctx, p, q);
  json j;
  j["p"] = p;
  j["q"] = q;
  j["kappa"] = ctx.kappa;
  j["r"] = ctx.r;
  j["results"] = json::array();
  for (const auto& r : rs)
    j["results"].push_back(inner_result_json(r, cfg.deterministic));
  j["max_residual"] = sig15(max_pairwise_residual(rs));
  emit(j);
  return 0;
}

int run_seifert(const RunConfig& cfg, const ManifoldSpec& spec) {
  const AlgebraData alg = build_algebra(cfg.family, cfg.rank);
  const RepContext ctx = make_rep_context(alg, cfg.kappa);
  const IndicatorTable* table =
      spec.indicators ? &*spec.indicators : nullptr;

  if (cfg.method == "general") {
    std::cout << format_result(tau_seifert_general(ctx, spec.seifert, table),
                               cfg);
    return 0;
  }
  if (cfg.method == "compact") {
    std::cout << format_result(tau_seifert_compact(ctx, spec.seifert, table),
                               cfg);
    return 0;
  }
  if (cfg.method == "coprime") {
    std::cout << format_result(tau_seifert_coprime(ctx, spec.seifert, table),
                               cfg);
    return 0;
  }

  std::vector<InvariantResult> rs;
  rs.push_back(tau_seifert_general(ctx, spec.seifert, table));
  rs.push_back(tau_seifert_compact(ctx, spec.seifert, table));
  json skipped = json::array();
  try {
    rs.push_back(tau_seifert_coprime(ctx, spec.seifert, table));
  } catch (const InputError& e) {
    skipped.push_back(
        json{{"method", "seifert-coprime"}, {"reason", e.what()}});
  }
  json j;
  j["kappa"] = ctx.kappa;
  j["r"] = ctx.r;
  j["results"] = json::array();
  for (const auto& r : rs)
    j["results"].push_back(inner_result_json(r, cfg.deterministic));
  j["max_residual"] = sig15(max_pairwise_residual(rs));
  if (!skipped.empty()) j["skipped"] = skipped;
  emit(j);
  return 0;
}

int run_gauss_check(const RunConfig& cfg, long long r, long long f,
                    const std::vector<std::string>& psi_strs) {
  const AlgebraData alg = build_algebra(cfg.family, cfg.rank);
  std::vector<Rational> psi(static_cast<size_t>(alg.rank), Rational(0));
  if (!psi_strs.empty()) {
    if (static_cast<int>(psi_strs.size()) != alg.rank)
      throw InputError("--psi needs one rational per rank");
    for (size_t i = 0; i < psi_strs.size(); ++i)
      psi[i] = parse_rational(psi_strs[i]);
  }
  const GaussInstance inst = make_gauss_instance(alg, r, f, psi);
  const double residual = reciprocity_residual(inst);
  json j;
  j["family"] = std::string(1, alg.family);
  j["rank"] = alg.rank;
  j["r"] = r;
  j["f"] = f;
  json psi_json = json::array();
  for (const auto& x : psi) psi_json.push_back(x.str());
  j["psi"] = psi_json;
  j["lhs"] = complex_json(gauss_lhs(inst));
  j["rhs"] = complex_json(gauss_rhs(inst));
  j["residual"] = sig15(residual);
  j["tolerance"] = sig15(cfg.tolerance);
  emit(j);
  return residual <= cfg.tolerance ? 0 : 5;
}

int run_asymp(const RunConfig& cfg, long long p, long long q,
              long long kappa_max, long long kappa_step, bool do_cs,
              bool do_resum) {
  const AlgebraData alg = build_algebra(cfg.family, cfg.rank);

  if (do_cs) {
    const CsValueSet cs = cs_values(alg, p, q);
    json j;
    j["p"] = p;
    j["q"] = q;
    json vals = json::array();
    for (const auto& v : cs.values) vals.push_back(v.str());
    j["values"] = vals;
    j["sign_ambiguous"] = cs.sign_ambiguous;
    emit(j);
    return 0;
  }
  if (do_resum) {
    const RepContext ctx = make_rep_context(alg, cfg.kappa);
    const double residual = resum_check(ctx, p, q);
    json j;
    j["p"] = p;
    j["q"] = q;
    j["kappa"] = cfg.kappa;
    j["residual"] = sig15(residual);
    j["tolerance"] = sig15(cfg.tolerance);
    emit(j);
    return residual <= cfg.tolerance ? 0 : 5;
  }

  if (kappa_max <= 0) kappa_max = cfg.kappa;
  std::string out = "kappa,tau_re,tau_im,leading_re,leading_im,ratio\n";
  for (long long k = cfg.kappa; k <= kappa_max; k += kappa_step) {
    const RepContext ctx = make_rep_context(alg, k);
    const cplx tau = tau_lens(ctx, p, q).value;
    const cplx lead = leading_term(alg, k, p, q);
    const double ratio = std::abs(lead) == 0.0
                             ? std::numeric_limits<double>::infinity()
                             : std::abs(tau / lead - 1.0);
    char buf[224];
    std::snprintf(buf, sizeof buf, "%lld,%.15g,%.15g,%.15g,%.15g,%.15g\n", k,
                  tau.real(), tau.imag(), lead.real(), lead.imag(), ratio);
    out += buf;
  }
  std::cout << out;
  return 0;
}

int run_selftest(const RunConfig& cfg) {
  json report;
  double worst = 0.0;

  {  // Lens cross-method agreement.
    double max_res = 0.0;
    long long cases = 0;
    auto sweep = [&](const AlgebraData& alg, long long kap_lo,
                     long long kap_hi, long long pmax) {
      for (long long kap = kap_lo; kap <= kap_hi; ++kap) {
        const RepContext ctx = make_rep_context(alg, kap);
        for (long long p = 1; p <= pmax; ++p)
          for (long long q = 0; q < std::max(1LL, p); ++q) {
            if (std::gcd(p, q) != 1) continue;
            max_res = std::max(max_res,
                               max_pairwise_residual(lens_all(ctx, p, q)));
            max_res = std::max(max_res,
                               max_pairwise_residual(lens_all(ctx, -p, q)));
            cases += 2;
          }
      }
    };
    sweep(build_algebra('A', 1), 2, 5, 7);
    sweep(build_algebra('A', 2), 3, 4, 5);
    report["lens"] = json{{"cases", cases}, {"max_residual", sig15(max_res)}};
    worst = std::max(worst, max_res);
  }

  {  // Seifert evaluator agreement.
    const std::vector<SeifertPresentation> presentations = {
        SeifertPresentation{'o', 0, true, -1, {{2, 1}, {3, 1}, {5, 1}}},
        SeifertPresentation{'o', 1, true, 1, {{2, 1}, {3, 1}}},
        SeifertPresentation{'o', 0, true, 2, {{3, 2}, {5, 3}}},
        SeifertPresentation{'n', 2, true, 1, {{3, 1}, {4, 1}}},
    };
    double max_res = 0.0;
    long long cases = 0;
    auto sweep = [&](const AlgebraData& alg, long long kap_lo,
                     long long kap_hi) {
      for (long long kap = kap_lo; kap <= kap_hi; ++kap) {
        const RepContext ctx = make_rep_context(alg, kap);
        for (const auto& m : presentations) {
          std::vector<InvariantResult> rs;
          rs.push_back(tau_seifert_general(ctx, m));
          rs.push_back(tau_seifert_compact(ctx, m));
          try {
            rs.push_back(tau_seifert_coprime(ctx, m));
          } catch (const InputError&) {
          }
          max_res = std::max(max_res, max_pairwise_residual(rs));
          ++cases;
        }
      }
    };
    sweep(build_algebra('A', 1), 2, 5);
    sweep(build_algebra('A', 2), 3, 4);
    report["seifert"] =
        json{{"cases", cases}, {"max_residual", sig15(max_res)}};
    worst = std::max(worst, max_res);
  }

  {  // Exact resummation of the expansion.
    double max_res = 0.0;
    long long cases = 0;
    const AlgebraData a1 = build_algebra('A', 1);
    for (long long kap = 2; kap <= 6; ++kap) {
      const RepContext ctx = make_rep_context(a1, kap);
      for (long long p = 1; p <= 6; ++p) {
        const long long q = p == 1 ? 0 : p - 1;
        max_res = std::max(max_res, resum_check(ctx, p, q));
        max_res = std::max(max_res, resum_check(ctx, -p, q));
        cases += 2;
      }
    }
    const AlgebraData a2 = build_algebra('A', 2);
    for (long long kap = 3; kap <= 4; ++kap) {
      const RepContext ctx = make_rep_context(a2, kap);
      for (long long p = 1; p <= 4; ++p) {
        const long long q = p == 1 ? 0 : p - 1;
        max_res = std::max(max_res, resum_check(ctx, p, q));
        ++cases;
      }
    }
    report["resum"] = json{{"cases", cases}, {"max_residual", sig15(max_res)}};
    worst = std::max(worst, max_res);
  }

  {  // Gauss-sum reciprocity.
    double max_res = 0.0;
    long long cases = 0;
    for (const auto& [fam, rank] :
         {std::pair<char, int>{'A', 1}, {'A', 2}}) {
      const AlgebraData alg = build_algebra(fam, rank);
      const std::vector<Rational> psi(static_cast<size_t>(rank), Rational(0));
      for (long long r = 1; r <= 4; ++r)
        for (long long f : {2LL, -2LL, 3LL, -3LL, 4LL, -4LL, 6LL, -6LL}) {
          if (!gauss_admissible(alg, r, f, psi)) continue;
          max_res = std::max(
              max_res,
              reciprocity_residual(make_gauss_instance(alg, r, f, psi)));
          ++cases;
        }
    }
    report["gauss"] = json{{"cases", cases}, {"max_residual", sig15(max_res)}};
    worst = std::max(worst, max_res);
  }

  report["tolerance"] = sig15(cfg.tolerance);
  report["pass"] = worst <= cfg.tolerance;
  emit(report);
  return worst <= cfg.tolerance ? 0 : 5;
}

}  // namespace

ManifoldSpec parse_manifold(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("manifold JSON: ") + e.what());
  }
  if (!j.is_object())
    throw InputError("manifold description must be a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw InputError("missing field \"kind\" (\"lens\" or \"seifert\")");
  const std::string kind = j["kind"].get<std::string>();

  ManifoldSpec spec;
  if (kind == "lens") {
    static const std::set<std::string> allowed{"kind", "p", "q"};
    for (const auto& item : j.items())
      if (!allowed.count(item.key()))
        throw InputError("unknown field \"" + item.key() +
                         "\" in lens description");
    spec.kind = ManifoldSpec::Kind::Lens;
    spec.p = int_field(j, "p");
    spec.q = int_field(j, "q");
    return spec;
  }
  if (kind != "seifert")
    throw InputError("field \"kind\" must be \"lens\" or \"seifert\"");

  static const std::set<std::string> allowed{
      "kind", "epsilon", "genus", "b", "fibers", "normalized",
      "indicator_table"};
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      throw InputError("unknown field \"" + item.key() +
                       "\" in seifert description");

  spec.kind = ManifoldSpec::Kind::Seifert;
  SeifertPresentation& m = spec.seifert;

  if (!j.contains("epsilon") || !j["epsilon"].is_string() ||
      j["epsilon"].get<std::string>().size() != 1)
    throw InputError("field \"epsilon\" must be \"o\" or \"n\"");
  m.epsilon = j["epsilon"].get<std::string>()[0];
  m.genus = int_field(j, "genus");
  m.normalized = true;
  if (j.contains("normalized")) {
    if (!j["normalized"].is_boolean())
      throw InputError("field \"normalized\" must be a boolean");
    m.normalized = j["normalized"].get<bool>();
  }
  if (j.contains("b")) {
    if (!m.normalized)
      throw InputError(
          "field \"b\" applies only to normalized presentations");
    m.b = int_field(j, "b");
  }
  if (j.contains("fibers")) {
    if (!j["fibers"].is_array())
      throw InputError("field \"fibers\" must be an array of [alpha, beta]");
    for (const auto& f : j["fibers"]) {
      if (!f.is_array() || f.size() != 2 || !f[0].is_number_integer() ||
          !f[1].is_number_integer())
        throw InputError(
            "field \"fibers\" must hold integer pairs [alpha, beta]");
      m.fibers.emplace_back(f[0].get<long long>(), f[1].get<long long>());
    }
  }
  if (j.contains("indicator_table")) {
    if (!j["indicator_table"].is_array())
      throw InputError(
          "field \"indicator_table\" must be an array of "
          "[[coordinates], sign] pairs");
    IndicatorTable table;
    for (const auto& entry : j["indicator_table"]) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_array() ||
          !entry[1].is_number_integer())
        throw InputError(
            "field \"indicator_table\" must hold [[coordinates], sign] "
            "pairs");
      std::vector<long long> coords;
      for (const auto& c : entry[0]) {
        if (!c.is_number_integer())
          throw InputError("indicator coordinates must be integers");
        coords.push_back(c.get<long long>());
      }
      const long long sign = entry[1].get<long long>();
      if (sign != 1 && sign != -1)
        throw InputError("indicator values must be +1 or -1");
      if (!table.emplace(std::move(coords), static_cast<int>(sign)).second)
        throw InputError("duplicate weight in \"indicator_table\"");
    }
    spec.indicators = std::move(table);
  }
  validate_seifert(m);
  return spec;
}

std::string format_result(const InvariantResult& res, const RunConfig& cfg) {
  if (cfg.output == "csv") {
    char buf[192];
    std::snprintf(buf, sizeof buf, "kappa,re,im,method\n%lld,%.15g,%.15g,%s\n",
                  res.kappa, res.value.real(), res.value.imag(),
                  res.method.c_str());
    return buf;
  }
  json j = inner_result_json(res, cfg.deterministic);
  j["kappa"] = res.kappa;
  j["r"] = res.r;
  return j.dump(2) + "\n";
}

int run_command(int argc, const char* const* argv) {
  CLI::App app{
      "Quantum invariants of Seifert fibered spaces and lens spaces"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string family = "A";
  std::vector<CLI::Option*> thread_opts;

  auto add_common = [&](CLI::App* sub, bool with_level) {
    sub->add_option("--family", family, "simple family letter A..G")
        ->required();
    sub->add_option("--rank", cfg.rank, "rank of the algebra")->required();
    if (with_level)
      sub->add_option("--kappa", cfg.kappa,
                      "level (at least the dual Coxeter number)")
          ->required();
    sub->add_option("--tolerance", cfg.tolerance,
                    "residual tolerance for checks (default 1e-9)");
    sub->add_flag("--deterministic", cfg.deterministic,
                  "zero timing fields for byte-stable output");
    thread_opts.push_back(sub->add_option(
        "--threads", cfg.threads,
        "worker threads (default: RTINV_THREADS or single-threaded)"));
    sub->add_option("--output", cfg.output, "json or csv (default json)")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  // algebra info
  CLI::App* algebra = app.add_subcommand("algebra", "root-system data");
  algebra->require_subcommand(1);
  CLI::App* info =
      algebra->add_subcommand("info", "print algebra constants as JSON");
  info->add_option("--family", family, "simple family letter A..G")
      ->required();
  info->add_option("--rank", cfg.rank, "rank of the algebra")->required();
  info->add_option("--kappa", cfg.kappa,
                   "optional level; adds category constants");

  // rep entry
  CLI::App* rep = app.add_subcommand(
      "rep", "level-kappa representation of the modular group");
  rep->require_subcommand(1);
  CLI::App* entry = rep->add_subcommand(
      "entry", "closed-form matrix entry for one SL(2,Z) element");
  std::vector<long long> mat, row, col;
  entry->add_option("--matrix", mat, "entries a,b,c,d with ad - bc = 1")
      ->required()
      ->delimiter(',')
      ->expected(4);
  entry->add_option("--row", row, "weight coordinates (default rho)")
      ->delimiter(',');
  entry->add_option("--col", col, "weight coordinates (default rho)")
      ->delimiter(',');
  add_common(entry, true);

  // lens
  CLI::App* lens =
      app.add_subcommand("lens", "invariant of the lens space L(p,q)");
  long long lens_p = 0, lens_q = 0, lens_kmax = 0;
  lens->add_option("-p,--p", lens_p, "order of the cyclic fundamental group")
      ->required();
  lens->add_option("-q,--q", lens_q, "framing parameter, coprime to p")
      ->required();
  lens->add_option("--kappa-max", lens_kmax,
                   "sweep kappa up to this level (CSV output)");
  lens->add_option("--method", cfg.method,
                   "sine, rep, coprime, seifert or all (default all)")
      ->check(CLI::IsMember({"sine", "rep", "coprime", "seifert", "all"}));
  add_common(lens, true);

  // seifert
  CLI::App* seifert =
      app.add_subcommand("seifert", "invariant of a Seifert fibered space");
  std::string sf_file, sf_json, sf_eps = "o";
  long long sf_genus = 0, sf_b = 0;
  bool sf_nonnorm = false;
  std::vector<long long> sf_fibers;
  CLI::Option* sf_file_opt = seifert->add_option(
      "--file", sf_file, "path to a manifold JSON document");
  CLI::Option* sf_json_opt = seifert->add_option(
      "--json", sf_json, "inline manifold JSON document");
  sf_file_opt->excludes(sf_json_opt);
  sf_json_opt->excludes(sf_file_opt);
  seifert->add_option("--epsilon", sf_eps,
                      "base orientability: o or n (default o)");
  seifert->add_option("--genus", sf_genus, "genus of the base orbifold");
  seifert->add_option("--b", sf_b, "integer framing of a normalized form");
  seifert->add_flag("--non-normalized", sf_nonnorm,
                    "fibers carry arbitrary coprime (alpha, beta)");
  seifert
      ->add_option("--fiber", sf_fibers,
                   "exceptional fiber alpha,beta (repeatable)")
      ->delimiter(',');
  seifert->add_option("--method", cfg.method,
                      "general, compact, coprime or all (default all)")
      ->check(CLI::IsMember({"general", "compact", "coprime", "all"}));
  add_common(seifert, true);

  // gauss-check
  CLI::App* gauss = app.add_subcommand(
      "gauss-check", "lattice Gauss-sum reciprocity residual");
  long long gauss_r = 0, gauss_f = 0;
  std::vector<std::string> gauss_psi;
  gauss->add_option("--r", gauss_r, "positive modulus")->required();
  gauss->add_option("--f", gauss_f, "nonzero scalar form multiplier")
      ->required();
  gauss->add_option("--psi", gauss_psi,
                    "shift vector of rationals num/den, one per rank")
      ->delimiter(',');
  add_common(gauss, false);

  // asymp
  CLI::App* asymp = app.add_subcommand(
      "asymp", "large-level asymptotics of lens invariants");
  long long as_p = 0, as_q = 0, as_kmax = 0, as_kstep = 1;
  bool as_cs = false, as_resum = false;
  asymp->add_option("-p,--p", as_p, "order of the cyclic fundamental group")
      ->required();
  asymp->add_option("-q,--q", as_q, "framing parameter, coprime to p")
      ->required();
  asymp->add_option("--kappa-max", as_kmax, "sweep end (default: kappa)");
  asymp->add_option("--kappa-step", as_kstep, "sweep step (default 1)");
  asymp->add_flag("--cs", as_cs,
                  "emit conjectural Chern-Simons values instead of a sweep");
  asymp->add_flag("--resum", as_resum,
                  "emit the exact resummation residual instead of a sweep");
  add_common(asymp, true);

  // selftest
  CLI::App* selftest = app.add_subcommand(
      "selftest", "cross-method agreement grids with max residuals");
  selftest->add_option("--tolerance", cfg.tolerance,
                       "residual tolerance (default 1e-9)");
  thread_opts.push_back(selftest->add_option("--threads", cfg.threads,
                                             "worker threads"));
  selftest->add_flag("--deterministic", cfg.deterministic,
                     "zero timing fields for byte-stable output");

  try {
    app.parse(argc, argv);

    bool threads_given = false;
    for (const CLI::Option* opt : thread_opts)
      if (opt->count() > 0) threads_given = true;
    if (!threads_given) {
      if (const char* env = std::getenv("RTINV_THREADS")) {
        try {
          cfg.threads = std::stoi(env);
        } catch (const std::exception&) {
          throw InputError("RTINV_THREADS must be an integer");
        }
      }
    }
    if (cfg.threads > 0) set_thread_count(cfg.threads);
    cfg.family = parse_family(family);

    if (*info) return run_algebra_info(cfg);
    if (*entry) return run_rep_entry(cfg, mat, row, col);
    if (*lens) return run_lens(cfg, lens_p, lens_q, lens_kmax);
    if (*seifert) {
      ManifoldSpec spec;
      if (!sf_file.empty()) {
        std::ifstream in(sf_file);
        if (!in) throw InputError("cannot read file \"" + sf_file + "\"");
        std::ostringstream text;
        text << in.rdbuf();
        spec = parse_manifold(text.str());
      } else if (!sf_json.empty()) {
        spec = parse_manifold(sf_json);
      } else {
        if (sf_eps.size() != 1)
          throw InputError("--epsilon must be o or n");
        if (sf_fibers.size() % 2 != 0)
          throw InputError("--fiber needs alpha,beta pairs");
        spec.kind = ManifoldSpec::Kind::Seifert;
        spec.seifert.epsilon = sf_eps[0];
        spec.seifert.genus = sf_genus;
        spec.seifert.normalized = !sf_nonnorm;
        spec.seifert.b = sf_b;
        for (size_t i = 0; i < sf_fibers.size(); i += 2)
          spec.seifert.fibers.emplace_back(sf_fibers[i], sf_fibers[i + 1]);
        validate_seifert(spec.seifert);
      }
      if (spec.kind != ManifoldSpec::Kind::Seifert)
        throw InputError(
            "manifold kind is \"lens\"; use the lens subcommand");
      return run_seifert(cfg, spec);
    }
    if (*gauss) return run_gauss_check(cfg, gauss_r, gauss_f, gauss_psi);
    if (*asymp)
      return run_asymp(cfg, as_p, as_q, as_kmax, as_kstep, as_cs, as_resum);
    if (*selftest) return run_selftest(cfg);
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 3;
  } catch (const CostGuardError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace rt
