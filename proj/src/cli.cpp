#include "zfree/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "zfree/bounds.hpp"
#include "zfree/discs.hpp"
#include "zfree/linalg.hpp"
#include "zfree/model.hpp"
#include "zfree/specfun.hpp"

namespace zfree {

namespace {

using nlohmann::json;

json disc_to_json(const EuclideanDisc& d, const std::map<std::string, double>& extra_inputs,
                  const std::map<std::string, double>& errors) {
  json inputs = json::object();
  for (const auto& [k, v] : d.inputs) inputs[k] = v;
  for (const auto& [k, v] : extra_inputs) inputs[k] = v;
  json errs = json::object();
  for (const auto& [k, v] : errors) errs[k] = v;
  return json{{"center_re", d.center.real()}, {"center_im", d.center.imag()},
              {"radius", d.radius},           {"R", d.R},
              {"certified_by", to_string(d.certified_by)},
              {"inputs", inputs},             {"errors", errs}};
}

void print_disc_text(std::ostream& out, const json& j) {
  out << "center   = " << j["center_re"].get<double>() << " + " << j["center_im"].get<double>()
      << "i\n"
      << "radius   = " << j["radius"].get<double>() << "\n"
      << "R        = " << j["R"].get<double>() << "\n"
      << "certified_by = " << j["certified_by"].get<std::string>() << "\n";
  out << "inputs:\n";
  for (const auto& [k, v] : j["inputs"].items()) out << "  " << k << " = " << v.get<double>() << "\n";
  out << "errors:\n";
  for (const auto& [k, v] : j["errors"].items()) out << "  " << k << " = " << v.get<double>() << "\n";
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  if (text.rfind("geometric:", 0) == 0) {
    const int n = std::stoi(text.substr(10));
    if (n < 1) throw DomainError("grid: geometric:n requires n >= 1");
    for (int j = 1; j <= n; ++j) grid.push_back(std::pow(2.0, -(j - 1) / 2.0));
    return grid;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    grid.push_back(std::stod(item));
  }
  if (grid.empty()) throw DomainError("grid: no values parsed");
  return grid;
}

struct CertifyOptions {
  cplx lambda{0.01, 50.0};
  double r = 0.49;
  double sigma1 = 0.4;
  std::string mode = "paper_bound";
  std::string out_format = "json";
  double tol = 1e-10;
  std::string batch;  // "im_lo:im_hi:count", varies Im lambda
};

json certify_one(const CertifyOptions& o) {
  QuadratureSpec spec;
  spec.rel_tol = o.tol;
  std::map<std::string, double> extra{{"r", o.r}, {"sigma1", o.sigma1}, {"tol", o.tol}};
  std::map<std::string, double> errors;
  EuclideanDisc e;
  if (o.mode == "paper_bound") {
    ZetaFBreakdown bd;
    const PseudoDisc d = zeta_F(o.lambda, o.r, o.sigma1, &bd);
    e = pseudo_to_euclidean(d, DiscCertificate::zeta_F);
    const cplx s = o.lambda + o.r;
    const CertifiedValue z = zeta(s);
    const CertifiedValue g1 = gamma(s);
    const CertifiedValue g2 = gamma(cplx(1.0 - o.sigma1, 0.0));
    const CertifiedValue g3 = gamma(s + (1.0 - o.sigma1));
    extra["zeta_lambda_plus_r_re"] = z.real();
    extra["zeta_lambda_plus_r_im"] = z.imag();
    extra["gamma_lambda_plus_r_abs"] = g1.abs();
    extra["gamma_1_minus_sigma1"] = g2.real();
    extra["gamma_lambda_plus_r_plus_1_minus_sigma1_abs"] = g3.abs();
    extra["C_r_sigma1"] = bd.C_r_sigma1;
    extra["psi1_norm"] = bd.psi1_norm;
    extra["psi_norm_r_bound"] = psi_norm_r_bound(zeta_model(o.sigma1), o.r);
    extra["F_numerator"] = bd.numerator;
    extra["F_denominator"] = bd.denominator;
    errors["zeta_err"] = z.err;
    errors["gamma_err"] = g1.err + g2.err + g3.err;
    errors["R_eval_err"] = bd.eval_err;
    if (d.clipped) errors["R_clipped"] = 1.0;
  } else if (o.mode == "quadrature") {
    const SeriesModel model = zeta_model(o.sigma1);
    const Sequence A{{1.0}, {cplx(1.0, 0.0)}};
    const PseudoDisc d = prop61_radius(model, A, o.r, o.lambda, HNormMode::quadrature, spec);
    e = pseudo_to_euclidean(d, DiscCertificate::prop61);
    const CertifiedValue nrm = f_A_norm(model, A, o.r, spec);
    extra["f_A_norm"] = nrm.real();
    errors["f_A_norm_err"] = nrm.err;
    if (d.clipped) errors["R_clipped"] = 1.0;
  } else {
    throw DomainError("certify-zeta: --mode must be paper_bound or quadrature");
  }
  return disc_to_json(e, extra, errors);
}

int cmd_certify(const CertifyOptions& o, std::ostream& out) {
  std::vector<CertifyOptions> runs;
  if (o.batch.empty()) {
    runs.push_back(o);
  } else {
    double lo = 0.0, hi = 0.0;
    int count = 0;
    char c1 = 0, c2 = 0;
    std::stringstream ss(o.batch);
    if (!(ss >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count < 1)
      throw DomainError("certify-zeta: --batch expects im_lo:im_hi:count");
    for (int i = 0; i < count; ++i) {
      CertifyOptions oi = o;
      const double t = (count == 1) ? lo : lo + (hi - lo) * i / (count - 1);
      oi.lambda = cplx(o.lambda.real(), t);
      runs.push_back(oi);
    }
  }

  if (o.out_format == "csv") {
    out << "lambda_re,lambda_im,r,sigma1,R,center_re,center_im,radius,certified_by\n";
    for (const CertifyOptions& run : runs) {
      const json j = certify_one(run);
      out.precision(17);
      out << run.lambda.real() << ',' << run.lambda.imag() << ',' << run.r << ',' << run.sigma1
          << ',' << j["R"].get<double>() << ',' << j["center_re"].get<double>() << ','
          << j["center_im"].get<double>() << ',' << j["radius"].get<double>() << ','
          << j["certified_by"].get<std::string>() << '\n';
    }
    return kExitOk;
  }

  json docs = json::array();
  for (const CertifyOptions& run : runs) {
    json j = certify_one(run);
    j["inputs"]["lambda_re"] = run.lambda.real();
    j["inputs"]["lambda_im"] = run.lambda.imag();
    docs.push_back(j);
  }
  const json& result = docs.size() == 1 ? docs[0] : docs;
  if (o.out_format == "json") {
    out << result.dump(2) << '\n';
  } else if (o.out_format == "text") {
    out.precision(17);
    for (const json& j : docs) print_disc_text(out, j);
  } else {
    throw DomainError("certify-zeta: --out must be json, text or csv");
  }
  return kExitOk;
}

struct Check {
  std::string name;
  double residual;
  double tol;
  bool pass;
};

void add_check(std::vector<Check>& v, const std::string& name, double residual, double tol) {
  v.push_back({name, residual, tol, residual <= tol});
}

void suite_pascal(std::vector<Check>& checks) {
  const double oracle[] = {1.0, (3.0 - std::sqrt(5.0)) / 2.0, 4.0 - std::sqrt(15.0)};
  for (int m = 1; m <= 3; ++m)
    add_check(checks, "pascal_mu_min_m" + std::to_string(m),
              std::abs(pascal_min_eigenvalue(m).real() - oracle[m - 1]), 1e-12);
  for (int m = 1; m <= 12; ++m) {
    const CertifiedValue mu = pascal_min_eigenvalue(m);
    const double bound = 3.0 / (std::pow(4.0, m) - 1.0);
    add_check(checks, "pascal_lower_bound_m" + std::to_string(m),
              std::max(0.0, bound - (mu.real() - mu.err)), 1e-12);
  }
  for (int m = 1; m <= 8; ++m) {
    const std::vector<__int128> cp = pascal_char_poly(m);
    bool ok = true;
    for (int k = 0; k <= m; ++k) {
      const __int128 mirror = (m % 2 == 0) ? cp[static_cast<std::size_t>(m - k)]
                                           : -cp[static_cast<std::size_t>(m - k)];
      if (cp[static_cast<std::size_t>(k)] != mirror) ok = false;
    }
    add_check(checks, "pascal_palindrome_m" + std::to_string(m), ok ? 0.0 : 1.0, 0.0);
  }
}

void suite_vandermonde(std::vector<Check>& checks) {
  for (int m = 1; m <= 8; ++m) {
    const VandermondeInverse W = vandermonde_inverse(m);
    double sum = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) sum += std::abs(W.entry(i, j));
    const double expected = (m - 1) * std::pow(2.0, m) + 1.0;
    add_check(checks, "vandermonde_abs_sum_m" + std::to_string(m), std::abs(sum - expected), 1e-9);
  }
  std::mt19937 rng(20260826);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 6);
    std::vector<cplx> y(static_cast<std::size_t>(m));
    double ymax = 0.0;
    for (cplx& v : y) {
      v = cplx(dist(rng), dist(rng));
      ymax = std::max(ymax, std::abs(v));
    }
    const VandermondeSolution sol = solve_vandermonde(y);
    double xsum = 0.0;
    for (const cplx& v : sol.x) xsum += std::abs(v);
    worst = std::max(worst, xsum - ((m - 1) * std::pow(2.0, m) + 1.0) * ymax);
  }
  add_check(checks, "vandermonde_solution_bound", std::max(0.0, worst), 1e-9);
}

void suite_triangular(std::vector<Check>& checks) {
  std::mt19937 rng(20260826);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 6);
    PolyP P;
    P.p.resize(static_cast<std::size_t>(m));
    for (cplx& v : P.p) v = cplx(dist(rng), dist(rng));
    if (std::abs(P.p.back()) < 0.1) P.p.back() += cplx(0.5, 0.5);
    std::vector<cplx> beta(static_cast<std::size_t>(m));
    double bsum = 0.0;
    for (cplx& v : beta) {
      v = cplx(dist(rng), dist(rng));
      bsum += std::abs(v);
    }
    const TriangularSolution sol = solve_triangular(P, beta);
    double ymax = 0.0;
    for (const cplx& v : sol.y) ymax = std::max(ymax, std::abs(v));
    worst = std::max(worst, ymax - sol.xi.value() * bsum);
  }
  add_check(checks, "triangular_xi_bound", std::max(0.0, worst), 1e-9);
}

void suite_mellin(std::vector<Check>& checks) {
  const SeriesModel model = zeta_model(-2.0);
  QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  for (double sr : {0.6, 0.75})
    add_check(checks, "mellin_psi_s" + std::to_string(sr).substr(0, 4),
              mellin_psi_check(model, cplx(sr, 0.0), spec), 1e-6);
  const double r = 0.6;
  const cplx lambda(1.0, 2.0);
  int i = 0;
  for (const cplx s : {cplx(0.1, 0.3), cplx(0.1, -0.3), cplx(-0.2, 0.0)})
    add_check(checks, "mellin_u_s" + std::to_string(i++), mellin_u_check(model, r, lambda, s), 1e-8);
}

void suite_completion(std::vector<Check>& checks) {
  std::mt19937 rng(20260826);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::uniform_real_distribution<double> adist(0.05, 1.0);
  double worst_moment = 0.0;
  double worst_bound = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 4);
    const int n = 1 + static_cast<int>(rng() % 4);
    Sequence A;
    for (int j = 0; j < n; ++j) {
      A.alpha.push_back(adist(rng));
      A.c.push_back(cplx(dist(rng), dist(rng)));
    }
    const Sequence Ap = complete_to_admissible(A, m);
    const AdmissibilityReport rep = admissibility(concat(A, Ap), m, 1e-10);
    for (const cplx& mom : rep.moments) worst_moment = std::max(worst_moment, std::abs(mom));
    // sum |c'_j alpha'_j| <= ((m-1)2^m+1) max_k |moment_k(A)|
    const AdmissibilityReport base = admissibility(A, m, 1e300);
    double ymax = 0.0;
    for (const cplx& mom : base.moments) ymax = std::max(ymax, std::abs(mom));
    double csum = 0.0;
    for (int j = 0; j < Ap.length(); ++j)
      csum += std::abs(Ap.c[static_cast<std::size_t>(j)]) * Ap.alpha[static_cast<std::size_t>(j)];
    worst_bound = std::max(worst_bound, csum - ((m - 1) * std::pow(2.0, m) + 1.0) * ymax);
  }
  add_check(checks, "completion_moments", worst_moment, 1e-10);
  add_check(checks, "completion_coefficient_bound", std::max(0.0, worst_bound), 1e-9);
}

int cmd_verify(const std::string& suite, const std::string& out_format, std::ostream& out) {
  std::vector<Check> checks;
  bool known = false;
  if (suite == "pascal" || suite == "all") { suite_pascal(checks); known = true; }
  if (suite == "vandermonde" || suite == "all") { suite_vandermonde(checks); known = true; }
  if (suite == "triangular" || suite == "all") { suite_triangular(checks); known = true; }
  if (suite == "mellin" || suite == "all") { suite_mellin(checks); known = true; }
  if (suite == "completion" || suite == "all") { suite_completion(checks); known = true; }
  if (!known) throw DomainError("verify: unknown suite '" + suite + "'");

  bool all_pass = true;
  json arr = json::array();
  for (const Check& c : checks) {
    arr.push_back(json{{"name", c.name}, {"residual", c.residual}, {"tol", c.tol}, {"pass", c.pass}});
    all_pass = all_pass && c.pass;
  }
  const json report{{"suite", suite}, {"pass", all_pass}, {"checks", arr}};
  if (out_format == "text") {
    for (const Check& c : checks)
      out << (c.pass ? "PASS " : "FAIL ") << c.name << "  residual=" << c.residual
          << " tol=" << c.tol << "\n";
    out << (all_pass ? "PASS" : "FAIL") << " " << suite << "\n";
  } else {
    out << report.dump(2) << '\n';
  }
  return all_pass ? kExitOk : kExitVerifyFail;
}

int cmd_distance(const std::string& lambda_str, double r, double sigma1, const std::string& grid_str,
                 const std::string& target_str, const std::string& constraint_str, double tol,
                 const std::string& out_format, std::ostream& out) {
  const cplx lambda = parse_complex(lambda_str);
  const std::vector<double> grid = parse_grid(grid_str);
  const SeriesModel model = zeta_model(sigma1);
  QuadratureSpec spec;
  spec.rel_tol = tol;
  const DistanceTarget target = (target_str == "w") ? DistanceTarget::w(lambda)
                              : (target_str == "u") ? DistanceTarget::u(lambda)
                              : throw DomainError("distance: --target must be w or u");
  const DistanceConstraint constraint =
      (constraint_str == "none") ? DistanceConstraint::none
      : (constraint_str == "admissible")
          ? DistanceConstraint::admissible
          : throw DomainError("distance: --constraint must be none or admissible");

  const DistanceResult res = distance_upper_bound(model, r, target, grid, constraint, spec);
  json cj = json::array();
  for (const cplx& v : res.c) cj.push_back(json{{"re", v.real()}, {"im", v.imag()}});

  const PseudoDisc d62 = thm62_disc(res.value, r, lambda, model.sigma0);
  const EuclideanDisc e62 = pseudo_to_euclidean(d62, DiscCertificate::thm62);
  json report{{"value", res.value},
              {"c", cj},
              {"gram_condition", res.gram_condition},
              {"regularized", res.regularized},
              {"quadrature_err", res.quadrature_err},
              {"thm62", disc_to_json(e62, {}, {})}};
  if (constraint == DistanceConstraint::admissible) {
    const PseudoDisc ds = thm21_sharp_disc(res.value, r, lambda, model.sigma0);
    report["thm21sharp"] = disc_to_json(pseudo_to_euclidean(ds, DiscCertificate::thm21sharp), {}, {});
  }
  if (out_format == "text") {
    out.precision(17);
    out << "value = " << res.value << "\ngram_condition = " << res.gram_condition
        << "\nregularized = " << (res.regularized ? "true" : "false") << "\n";
    for (std::size_t i = 0; i < res.c.size(); ++i)
      out << "c[" << i << "] = " << res.c[i].real() << " + " << res.c[i].imag() << "i\n";
    out << "thm62 R = " << d62.R << " radius = " << e62.radius << "\n";
  } else {
    out << report.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_disc_geometry(const std::string& lambda_str, double R, double sigma0, double shift,
                      const std::string& out_format, std::ostream& out) {
  PseudoDisc d;
  d.lambda = parse_complex(lambda_str);
  d.R = R;
  d.sigma0 = sigma0;
  d.shift = shift;
  const EuclideanDisc e = pseudo_to_euclidean(d, DiscCertificate::zeta_F);
  const json j = disc_to_json(e, {{"halfplane", e.halfplane ? 1.0 : 0.0}}, {});
  if (out_format == "text") {
    out.precision(17);
    print_disc_text(out, j);
  } else {
    out << j.dump(2) << '\n';
  }
  return kExitOk;
}

void apply_config(const std::string& path, CLI::App* sub, CertifyOptions& o) {
  std::ifstream in(path);
  if (!in) throw DomainError("config: cannot open " + path);
  json cfg = json::parse(in);
  if (cfg.contains("model") && cfg["model"].get<std::string>() != "zeta")
    throw DomainError("config: only the zeta model ships with certified special functions");
  auto unset = [&](const std::string& flag) { return sub->count(flag) == 0; };
  if (cfg.contains("sigma1") && unset("--sigma1")) o.sigma1 = cfg["sigma1"].get<double>();
  if (cfg.contains("r") && unset("--r")) o.r = cfg["r"].get<double>();
  if (cfg.contains("lambda") && unset("--lambda")) o.lambda = parse_complex(cfg["lambda"].get<std::string>());
  if (cfg.contains("mode") && unset("--mode")) o.mode = cfg["mode"].get<std::string>();
  if (cfg.contains("tol") && unset("--tol")) o.tol = cfg["tol"].get<double>();
}

}  // namespace

cplx parse_complex(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
  if (s.empty()) throw DomainError("complex: empty string");
  // Split at the last top-level +/- that is not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  try {
    if (s.back() == 'i') {
      std::string im = (split == std::string::npos) ? s.substr(0, s.size() - 1)
                                                    : s.substr(split, s.size() - split - 1);
      if (im.empty() || im == "+") im = "1";
      if (im == "-") im = "-1";
      const double re = (split == std::string::npos) ? 0.0 : std::stod(s.substr(0, split));
      return {re, std::stod(im)};
    }
    return {std::stod(s), 0.0};
  } catch (const std::exception&) {
    throw DomainError("complex: cannot parse '" + text + "' (expected a+bi)");
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified zero-free discs for Dirichlet series"};
  app.require_subcommand(1);

  CertifyOptions co;
  std::string lambda_str = "0.01+50i";
  std::string config_path;
  CLI::App* certify = app.add_subcommand("certify-zeta", "Certify a zero-free disc for zeta");
  certify->add_option("--lambda", lambda_str, "Evaluation point a+bi, Re > 0");
  certify->add_option("--r", co.r, "Half-plane shift parameter, max(0,sigma1) < r < 1");
  certify->add_option("--sigma1", co.sigma1, "Test-function exponent, sigma1 < 1/2");
  certify->add_option("--mode", co.mode, "paper_bound | quadrature");
  certify->add_option("--out", co.out_format, "json | text | csv");
  certify->add_option("--tol", co.tol, "Quadrature relative tolerance");
  certify->add_option("--batch", co.batch, "im_lo:im_hi:count sweep over Im lambda");
  certify->add_option("--config", config_path, "JSON config file");

  std::string suite = "all";
  std::string verify_out = "json";
  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "pascal|vandermonde|triangular|mellin|completion|all");
  verify->add_option("--out", verify_out, "json | text");

  std::string d_lambda = "0.01+50i", d_grid = "geometric:6", d_target = "u", d_constraint = "none",
              d_out = "json";
  double d_r = 0.49, d_sigma1 = 0.4, d_tol = 1e-8;
  CLI::App* distance = app.add_subcommand("distance", "Finite-span distance upper bound");
  distance->add_option("--lambda", d_lambda, "Target point a+bi");
  distance->add_option("--r", d_r, "Shift parameter");
  distance->add_option("--sigma1", d_sigma1, "Test-function exponent");
  distance->add_option("--grid", d_grid, "Comma list of alpha in (0,1], or geometric:n");
  distance->add_option("--target", d_target, "w | u");
  distance->add_option("--constraint", d_constraint, "none | admissible");
  distance->add_option("--tol", d_tol, "Quadrature relative tolerance");
  distance->add_option("--out", d_out, "json | text");

  std::string g_lambda = "0.01+50i", g_out = "json";
  double g_R = 0.5, g_sigma0 = 0.0, g_shift = 0.0;
  CLI::App* geom = app.add_subcommand("disc-geometry", "Pseudo-disc to Euclidean disc");
  geom->add_option("--lambda", g_lambda, "Disc parameter a+bi");
  geom->add_option("--R", g_R, "Pseudo-hyperbolic radius in [0,1]");
  geom->add_option("--sigma0", g_sigma0, "Half-plane abscissa");
  geom->add_option("--shift", g_shift, "Translation r - sigma0");
  geom->add_option("--out", g_out, "json | text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << e.what() << '\n';
    return kExitDomain;
  }

  try {
    if (certify->parsed()) {
      if (!config_path.empty()) apply_config(config_path, certify, co);
      if (certify->count("--lambda") > 0 || config_path.empty()) co.lambda = parse_complex(lambda_str);
      return cmd_certify(co, out);
    }
    if (verify->parsed()) return cmd_verify(suite, verify_out, out);
    if (distance->parsed())
      return cmd_distance(d_lambda, d_r, d_sigma1, d_grid, d_target, d_constraint, d_tol, d_out, out);
    if (geom->parsed()) return cmd_disc_geometry(g_lambda, g_R, g_sigma0, g_shift, g_out, out);
    err << "no subcommand\n";
    return kExitDomain;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace zfree
