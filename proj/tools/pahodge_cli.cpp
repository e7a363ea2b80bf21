// pahodge: command-line driver.
//
//   pahodge --prime 5 --input module.json refine
//   pahodge --prime 3 --level 1 --trunc-t 4 --trunc-u 6 uadj invariants
//
// Exit codes: 0 ok, 1 parse or configuration error, 2 mathematical
// precondition failure, 3 precision exhausted.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "cli_io.hpp"

using namespace pahodge;
using namespace pahodge::cli;

namespace {

struct JobConfig {
  long prime = 0;
  int residue_degree = 1;
  int precision = 20;
  int trunc_t = 8;
  int trunc_x = 6;
  int trunc_u = 8;
  int level = 1;
  std::string input, output, format = "text";
  json payload = json::object();

  const PadicField* field() const { return PadicField::get(prime, precision); }
  bool has_payload() const { return !input.empty(); }

  json to_json() const {
    return {{"prime", prime},     {"residue_degree", residue_degree}, {"precision", precision},
            {"trunc_t", trunc_t}, {"trunc_x", trunc_x},               {"trunc_u", trunc_u},
            {"level", level}};
  }
};

struct Report {
  std::ostringstream text;
  json result = json::object();
};

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

const json& payload_field(const JobConfig& cfg, const char* key) {
  if (!cfg.has_payload()) throw ParseError(std::string("this command needs --input with field \"") + key + "\"");
  return require(cfg.payload, key);
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s;
}

std::string join_padics(const std::vector<Padic>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + show(v[i]);
  return s;
}

json padic_list(const std::vector<Padic>& v) {
  json j = json::array();
  for (const auto& a : v) j.push_back(write_padic(a));
  return j;
}

// ---- refine ----

void cmd_refine(const JobConfig& cfg, Report& r) {
  const PadicField* F = cfg.field();
  const auto dm = read_filtered(cfg.payload, F);
  const auto refs = enumerate_refinements(dm);
  const auto sp = sen_polynomial(F, refs.front().weights);
  r.text << "filtered phi-module of rank " << dm.dimension() << ", weights {" << join_ints(dm.weights) << "}\n";
  r.text << "refinements: " << refs.size() << "\n";
  json list = json::array();
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const auto& ref = refs[i];
    std::vector<int> gamma;
    for (int s : ref.weights) gamma.push_back(-s);
    if (sen_polynomial(F, ref.weights) != sp) throw PrecisionError("Sen polynomials of two refinements differ");
    r.text << "  #" << i + 1 << " phi ordering (" << join_padics(ref.eigenvalues) << ")  weights (" << join_ints(ref.weights)
           << ")  delta(p) (" << join_padics(ref.delta_p) << ")  delta|Gamma = chi^(" << join_ints(gamma) << ")\n";
    list.push_back({{"eigenvalues", padic_list(ref.eigenvalues)},
                    {"weights", ref.weights},
                    {"delta_p", padic_list(ref.delta_p)},
                    {"gamma_exponents", gamma},
                    {"flag_basis", write_matrix(ref.basis)}});
  }
  r.text << "Sen polynomial: " << show_poly(sp, "T") << " (same for every refinement)\n";
  r.result = {{"count", refs.size()}, {"refinements", list}, {"sen_polynomial", padic_list(sp)}};
}

// ---- normal-form ----

void cmd_normal_form(const JobConfig& cfg, Report& r) {
  const PadicField* F = cfg.field();
  const int n = cfg.trunc_x;
  const Padic pi = cfg.payload.contains("pi") ? read_padic(cfg.payload.at("pi"), F) : Padic::from_int(F, cfg.prime);
  PhiModuleX m{read_xmatrix(payload_field(cfg, "phi"), F, n), std::nullopt, pi};
  if (cfg.payload.contains("nabla")) m.nabla = read_xmatrix(cfg.payload.at("nabla"), F, n);
  m.validate();
  const auto nf = normal_form(m);
  const XMatrix residual = nf.base_change.inverse() * m.phi * nf.base_change.twisted(pi) - nf.form();
  r.text << "phi-module of rank " << m.rank() << " over E<<x>>/x^" << n + 1 << ", pi = " << show(pi) << "\n";
  r.text << "B = " << show_xmatrix(nf.base_change) << "\n";
  r.text << "A = " << show_matrix(nf.semisimple) << "\n";
  json graded = json::array();
  for (std::size_t k = 1; k < nf.graded.size(); ++k) {
    if (nf.graded[k].is_zero()) continue;
    r.text << "N_" << k << " = " << show_matrix(nf.graded[k]) << "\n";
    graded.push_back({{"degree", k}, {"matrix", write_matrix(nf.graded[k])}});
  }
  r.text << "resonances: " << nf.resonances.size() << "\n";
  json res = json::array();
  for (const auto& z : nf.resonances) {
    r.text << "  degree " << z.degree << " entry (" << z.row + 1 << ", " << z.col + 1 << "): lambda_" << z.row + 1
           << " pi^" << z.degree << " = lambda_" << z.col + 1 << "\n";
    res.push_back({{"degree", z.degree}, {"row", z.row + 1}, {"col", z.col + 1}});
  }
  r.text << "residual: " << (residual.is_zero() ? "0" : "nonzero") << "\n";
  r.result = {{"base_change", write_xmatrix(nf.base_change)},
              {"semisimple", write_matrix(nf.semisimple)},
              {"eigenvalues", padic_list(nf.eigenvalues)},
              {"graded", graded},
              {"resonances", res},
              {"residual_zero", residual.is_zero()}};
  if (!residual.is_zero()) throw PrecisionError("normal form residual is nonzero");
}

// ---- uadj ----

json write_uadj(const UAdjElement<BdRElement>& z, std::ostream& text) {
  json coeffs = json::array();
  for (int k = 0; k <= z.truncation(); ++k) {
    text << "  u^" << k << ": " << show_bdr(z[k]) << "\n";
    coeffs.push_back(write_bdr(z[k]));
  }
  json j = {{"level", z.level()}, {"truncation", z.truncation()}, {"guard", z.guard()}, {"coefficients", coeffs}};
  j["tail"] = z.tail() ? json(z.tail()->to_string()) : json(nullptr);
  return j;
}

void cmd_uadj_section(const JobConfig& cfg, Report& r) {
  const PadicField* F = cfg.field();
  const int n = cfg.level;
  const BdRCoefficients ring{F, n, cfg.trunc_t};
  const auto x = read_bdr(payload_field(cfg, "element"), F, n, cfg.trunc_t);
  const auto z = uadj_section(ring, x, n, cfg.trunc_u);
  r.text << "section of " << show_bdr(x) << " in B_dR{{u}}_" << n << " (t^" << cfg.trunc_t << ", u^" << cfg.trunc_u + 1 << ")\n";
  r.result["section"] = write_uadj(z, r.text);
  r.text << "guard terms: " << z.guard() << ", tail bound: " << (z.tail() ? z.tail()->to_string() : "none") << "\n";
  const bool projects = uadj_project0(z) == x;
  r.text << "project0(section) = input: " << (projects ? "yes" : "no") << "\n";
  r.result["project0_ok"] = projects;
  try {
    const bool inv = uadj_is_invariant(ring, z, standard_sample(F, n));
    r.text << "invariance under sample characters: " << (inv ? "yes" : "no") << "\n";
    r.result["invariant"] = inv;
  } catch (const PrecisionError& e) {
    r.text << "invariance under sample characters: not checked (" << e.what() << ")\n";
    r.result["invariant"] = nullptr;
    precision_log().note(e.what());
  }
}

void cmd_uadj_invariants(const JobConfig& cfg, Report& r) {
  const PadicField* F = cfg.field();
  const auto basis = bdr_uadj_invariants(F, cfg.level, cfg.trunc_t, cfg.trunc_u);
  r.text << "invariants of B_dR{{u}}_" << cfg.level << " (t^" << cfg.trunc_t << ", u^" << cfg.trunc_u + 1 << ")\n";
  r.text << "basis: {";
  for (std::size_t k = 0; k < basis.size(); ++k) r.text << (k ? ", " : "") << "x^" << k;
  r.text << "}  with x = t e^{-u}\n";
  json list = json::array();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    r.text << "x^" << k << ":\n";
    list.push_back(write_uadj(basis[k], r.text));
  }
  r.text << "dimension: " << basis.size() << ", each verified invariant under " << standard_sample(F, cfg.level).size()
         << " sample characters\n";
  r.result = {{"dimension", basis.size()}, {"basis", list}, {"verified", true}};
}

void cmd_uadj_analytic(const JobConfig& cfg, Report& r) {
  const PadicField* F = cfg.field();
  const int n = cfg.level;
  const BdRCoefficients ring{F, n, cfg.trunc_t};
  BdRElement x;
  if (cfg.has_payload() && cfg.payload.contains("zeta_level")) {
    const int m = static_cast<int>(as_long(cfg.payload.at("zeta_level"), "zeta_level"));
    if (m < 0) throw ParseError("zeta_level must be >= 0");
    if (m > n) throw DomainError("zeta_{p^" + std::to_string(m) + "} does not lie in K_" + std::to_string(n));
    x = BdRElement::constant(CycloElement::zeta(F, m).embed(n), cfg.trunc_t);
  } else {
    x = read_bdr(payload_field(cfg, "element"), F, n, cfg.trunc_t);
  }
  const auto res = gamma_n_analytic_test(ring, x, n, cfg.trunc_u);
  r.text << "Gamma_" << n << "-analyticity of " << show_bdr(x) << " up to i = " << cfg.trunc_u << "\n";
  json table = json::array();
  for (std::size_t i = 0; i < res.table.size(); ++i) {
    r.text << "  i = " << i << ": " << res.table[i] << "\n";
    table.push_back(res.table[i].to_string());
  }
  r.text << "slack: " << res.slack << "\nresult: " << (res.analytic ? "pass" : "fail") << "\n";
  r.result = {{"analytic", res.analytic}, {"slack", res.slack.to_string()}, {"table", table}};
}

// ---- sen ----

void cmd_sen(const JobConfig& cfg, Report& r) {
  const PadicField* F = cfg.field();
  const Padic c = read_padic(payload_field(cfg, "c"), F);
  Matrix<CycloElement> m;
  if (cfg.payload.contains("theta")) {
    const auto theta = read_matrix(cfg.payload.at("theta"), F);
    if (theta.rows() != theta.cols()) throw ParseError("theta must be square");
    const Padic lc = log(c, AnalyticOptions{true});
    const auto e = matrix_exp(theta.map([&](const Padic& a) { return a * lc; }));
    m = Matrix<CycloElement>(e.rows(), e.cols(), CycloElement::zero(F, 0));
    for (int i = 0; i < e.rows(); ++i)
      for (int j = 0; j < e.cols(); ++j) m(i, j) = CycloElement::from_padic(e(i, j), 0);
    r.text << "M = exp(log(c) Theta) for Theta = " << show_matrix(theta) << "\n";
  } else {
    const json& rows = payload_field(cfg, "matrix");
    if (!rows.is_array() || rows.empty() || !rows[0].is_array()) throw ParseError("matrix must be a nonempty list of rows");
    const int d = static_cast<int>(rows.size());
    m = Matrix<CycloElement>(d, d, CycloElement::zero(F, cfg.level));
    for (int i = 0; i < d; ++i) {
      if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != d) throw ParseError("matrix must be square");
      for (int j = 0; j < d; ++j) m(i, j) = read_cyclo(rows[i][j], F, cfg.level);
    }
  }
  const auto sd = sen_operator(m, c);
  json theta = json::array();
  r.text << "Theta_Sen = [";
  for (int i = 0; i < sd.dimension; ++i) {
    json row = json::array();
    r.text << (i ? ", [" : "[");
    for (int j = 0; j < sd.dimension; ++j) {
      r.text << (j ? ", " : "") << show_cyclo(sd.theta(i, j));
      row.push_back(write_cyclo(sd.theta(i, j)));
    }
    r.text << "]";
    theta.push_back(row);
  }
  r.text << "]\n";
  json cp = json::array();
  for (const auto& a : sd.charpoly) cp.push_back(write_cyclo(a));
  r.text << "charpoly: " << show_terms(sd.charpoly, "T", show_cyclo) << "\n";
  const auto roots = sen_weights(sd);
  json weights = json::array();
  r.text << "weights: {";
  bool first = true;
  for (const auto& root : roots)
    for (int k = 0; k < root.multiplicity; ++k) {
      r.text << (first ? "" : ", ") << show(root.value);
      first = false;
      weights.push_back(write_padic(root.value));
    }
  r.text << "}\nlog series terms: " << sd.series_terms << ", precision of Theta: " << sd.precision << "\n";
  r.result = {{"theta", theta}, {"charpoly", cp}, {"weights", weights}, {"series_terms", sd.series_terms},
              {"theta_precision", sd.precision}};
}

// ---- newton ----

void cmd_newton(const JobConfig& cfg, Report& r) {
  const PadicField* F = cfg.field();
  const json& js = payload_field(cfg, "series");
  int n = cfg.trunc_x;
  if (is_pair_list(js))
    for (const auto& e : js) n = std::max(n, static_cast<int>(as_long(e[0], "exponent")));
  const auto f = read_series(js, F, n);
  const auto np = newton_polygon(f);
  r.text << "f = " << show_poly(f.coeffs(), "x") << "\n";
  json segs = json::array();
  for (const auto& s : np.segments) {
    r.text << "  slope " << s.slope << ", length " << s.length << "\n";
    segs.push_back({{"slope", s.slope.to_string()}, {"length", s.length}});
  }
  if (np.zeros_at_origin > 0) r.text << "  zeros at the origin: " << np.zeros_at_origin << "\n";
  const bool unit = is_global_unit(f);
  r.text << "finite slopes: " << (np.has_finite_slopes() ? "yes" : "no") << ", unit of E<<x>>: " << (unit ? "yes" : "no") << "\n";
  r.result = {{"segments", segs}, {"zeros_at_origin", np.zeros_at_origin}, {"global_unit", unit}};
}

// ---- anticyclo ----

std::string show_biseries(const BiSeries<Padic>& b) {
  std::string s;
  for (int d = 0; d <= b.truncation(); ++d)
    for (int j = 0; j <= d; ++j) {
      const Padic& a = b(d - j, j);
      if (a.is_zero()) continue;
      std::string mono;
      if (d - j > 0) mono += "T1" + (d - j > 1 ? "^" + std::to_string(d - j) : std::string());
      if (j > 0) mono += (mono.empty() ? "" : "*") + std::string("T2") + (j > 1 ? "^" + std::to_string(j) : "");
      const std::string v = show(a);
      if (!s.empty()) s += " + ";
      s += mono.empty() ? v : (v == "1" ? mono : "(" + v + ")*" + mono);
    }
  return s.empty() ? "0" : s;
}

void cmd_anticyclo(const JobConfig& cfg, Report& r) {
  const int n = cfg.has_payload() && cfg.payload.contains("N") ? static_cast<int>(as_long(cfg.payload.at("N"), "N")) : cfg.trunc_x;
  const auto ker = anticyclo_kernel(cfg.field(), n);
  json basis = json::array();
  r.text << "kernel of T1 d/dT1 + T2 d/dT2 up to total degree " << n << "\n";
  r.text << "kernel basis: {";
  for (std::size_t i = 0; i < ker.size(); ++i) {
    r.text << (i ? ", " : "") << show_biseries(ker[i]);
    json terms = json::array();
    for (int d = 0; d <= n; ++d)
      for (int j = 0; j <= d; ++j)
        if (!ker[i](d - j, j).is_zero()) terms.push_back(json::array({d - j, j, write_padic(ker[i](d - j, j))}));
    basis.push_back(terms);
  }
  r.text << "}\n";
  r.result = {{"N", n}, {"dimension", ker.size()}, {"basis", basis}};
}

// ---- dtri ----

void cmd_dtri(const JobConfig& cfg, Report& r) {
  const PadicField* F = cfg.field();
  const auto dm = read_filtered(cfg.payload, F);
  const int smax = std::max(std::abs(dm.weights.front()), std::abs(dm.weights.back()));
  int a = -smax, b = smax;
  if (cfg.payload.contains("window")) {
    const auto w = read_ints(cfg.payload.at("window"), "window");
    if (w.size() != 2) throw ParseError("window must be [a, b]");
    a = w[0];
    b = w[1];
  }
  const auto lat = dtri_lattice(dm, a, b);
  r.text << "D_tri lattice = Fil^0(D<<x>>[1/x]), window x^" << a << "..x^" << b << "\n";
  r.text << "basis: {";
  json basis = json::array();
  for (int l = 0; l < dm.dimension(); ++l) {
    const auto w = dm.adapted.column(l);
    r.text << (l ? ", " : "") << "x^" << lat.exponents[l] << " * " << show_matrix(w.map([](const Padic& v) { return v; }));
    basis.push_back({{"x_exponent", lat.exponents[l]}, {"vector", write_matrix(w)}});
  }
  r.text << "}\n";
  r.text << "dimension of the window piece: " << lat.window.basis.cols() << "\n";
  json fil = json::array();
  for (int k = dm.weights.front() + a; k <= dm.weights.back() + b + 1; ++k) {
    const int dim = fil_k(dm, k, a, b).basis.cols();
    r.text << "  dim Fil^" << k << " = " << dim << "\n";
    fil.push_back({{"k", k}, {"dimension", dim}});
  }
  const int top = dm.weights.back();
  const bool lower = span_contains(lat.window, shifted_module(dm, std::max(top, a), a, b));
  const bool upper = span_contains(shifted_module(dm, -top, a, b), lat.window);
  r.text << "x^" << top << " D in lattice: " << (lower ? "yes" : "no") << ", lattice in x^" << -top
         << " D: " << (upper ? "yes" : "no") << "\n";
  r.result = {{"window", {a, b}}, {"basis", basis}, {"window_dimension", lat.window.basis.cols()},
              {"filtration", fil}, {"contains_lower", lower}, {"inside_upper", upper}};
}

// ---- driver ----

void load_payload(JobConfig& cfg) {
  if (cfg.input.empty()) return;
  std::ifstream in(cfg.input);
  if (!in) throw ParseError("cannot open " + cfg.input);
  try {
    cfg.payload = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!cfg.payload.is_object()) throw ParseError("input must be a JSON object");
  if (!cfg.payload.contains("schema") || cfg.payload.at("schema") != kSchema)
    throw ParseError(std::string("input must declare \"schema\": \"") + kSchema + "\"");
}

// File values fill in whatever was not given on the command line.
void resolve(JobConfig& cfg, const CLI::App& app) {
  auto take = [&](const char* flag, const char* key, auto& field) {
    if (app.count(flag) == 0 && cfg.payload.contains(key))
      field = static_cast<std::remove_reference_t<decltype(field)>>(as_long(cfg.payload.at(key), key));
  };
  take("--prime", "prime", cfg.prime);
  take("--precision", "precision", cfg.precision);
  take("--trunc-t", "trunc_t", cfg.trunc_t);
  take("--trunc-x", "trunc_x", cfg.trunc_x);
  take("--trunc-u", "trunc_u", cfg.trunc_u);
  take("--level", "level", cfg.level);
  if (cfg.payload.contains("residue_degree")) cfg.residue_degree = static_cast<int>(as_long(cfg.payload.at("residue_degree"), "residue_degree"));
  if (cfg.prime == 0) throw ParseError("--prime is required");
  if (!is_prime(cfg.prime)) throw ParseError(std::to_string(cfg.prime) + " is not prime");
  if (cfg.residue_degree != 1) throw ParseError("only residue degree 1 is supported by file input");
  if (cfg.precision < 1 || cfg.trunc_t < 1 || cfg.trunc_x < 1 || cfg.trunc_u < 1)
    throw ParseError("precision and truncations must be at least 1");
  if (cfg.level < 0) throw ParseError("level must be >= 0");
}

void emit(const JobConfig& cfg, const std::string& command, const Report& r) {
  const auto& log = precision_log();
  json footer = {{"requested", log.requested}, {"smallest_reported", log.smallest}, {"loss", log.requested - log.smallest}};
  footer["notes"] = log.notes;
  json doc = {{"schema", kSchema}, {"command", command}, {"config", cfg.to_json()}, {"result", r.result}, {"precision", footer}};
  std::ostringstream out;
  if (cfg.format == "json") {
    out << doc.dump(2) << "\n";
  } else {
    out << r.text.str();
    out << "-- json --\n" << doc.dump(2) << "\n";
    out << "-- precision --\nrequested " << log.requested << ", smallest reported " << log.smallest << ", loss "
        << log.requested - log.smallest << "\n";
    for (const auto& n : log.notes) out << "note: " << n << "\n";
  }
  if (cfg.output.empty()) {
    std::cout << out.str();
    return;
  }
  std::ofstream f(cfg.output);
  if (!f) throw ParseError("cannot write " + cfg.output);
  f << out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic period rings, Sen operators, phi-modules over E<<x>> and refinements"};
  JobConfig cfg;
  app.add_option("--prime,-p", cfg.prime, "the prime p");
  app.add_option("--precision,-P", cfg.precision, "absolute precision cap P");
  app.add_option("--trunc-t", cfg.trunc_t, "t-adic truncation N_t");
  app.add_option("--trunc-x", cfg.trunc_x, "x-adic truncation N_x");
  app.add_option("--trunc-u", cfg.trunc_u, "u-adic truncation M_u");
  app.add_option("--level,-n", cfg.level, "cyclotomic level n");
  app.add_option("--input,-i", cfg.input, "JSON input file");
  app.add_option("--output,-o", cfg.output, "write the report here instead of stdout");
  app.add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.require_subcommand(1);

  std::string command;
  std::function<void(const JobConfig&, Report&)> run;
  auto sub = [&](CLI::App* parent, const std::string& name, const std::string& help, auto fn) {
    auto* s = parent->add_subcommand(name, help);
    s->fallthrough();
    s->callback([&, name, fn, parent] {
      command = parent == &app ? name : parent->get_name() + " " + name;
      run = fn;
    });
    return s;
  };
  sub(&app, "refine", "refinements of a filtered phi-module", cmd_refine);
  sub(&app, "normal-form", "normal form of a phi-module over E<<x>>", cmd_normal_form);
  auto* uadj = app.add_subcommand("uadj", "u-adjunction over truncated B_dR^+");
  uadj->fallthrough();
  uadj->require_subcommand(1);
  sub(uadj, "section", "invariant lift of an element", cmd_uadj_section);
  sub(uadj, "invariants", "basis of the invariants", cmd_uadj_invariants);
  sub(uadj, "analytic-test", "finite Gamma_n-analyticity test", cmd_uadj_analytic);
  sub(&app, "sen", "Sen operator of a Galois action matrix", cmd_sen);
  sub(&app, "newton", "Newton polygon of a truncated series", cmd_newton);
  sub(&app, "anticyclo", "kernel of T1 d/dT1 + T2 d/dT2", cmd_anticyclo);
  sub(&app, "dtri", "the lattice Fil^0 of D<<x>>[1/x]", cmd_dtri);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    load_payload(cfg);
    resolve(cfg, app);
    precision_log().requested = cfg.precision;
    precision_log().smallest = cfg.precision;
    Report report;
    run(cfg, report);
    emit(cfg, command, report);
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PrecisionError& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
