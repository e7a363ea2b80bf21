#pragma once

// JSON <-> library values for the command-line driver.
//
// p-adic values: an integer, a rational string "a/b", or
// {"digits": [d0, d1, ...], "valuation": v, "precision": P} meaning
// p^v (d0 + d1 p + ...) + O(p^P).  Series: a p-adic constant or a list of
// [exponent, coefficient] pairs.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "pahodge/pahodge.hpp"

namespace pahodge::cli {

using nlohmann::json;

inline constexpr const char* kSchema = "pahodge/1";

/// Smallest precision among values written out, for the footer.
struct PrecisionLog {
  int requested = 0;
  int smallest = 0;
  std::vector<std::string> notes;

  void see(int prec) { smallest = std::min(smallest, prec); }
  void note(std::string s) { notes.push_back(std::move(s)); }
};

inline PrecisionLog& precision_log() {
  static PrecisionLog log;
  return log;
}

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline long as_long(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<long>();
}

// ---- reading ----

inline Padic read_padic(const json& j, const PadicField* F) {
  if (j.is_number_integer()) return Padic::from_int(F, mpz_class(j.get<long>()));
  if (j.is_string()) {
    mpq_class q;
    if (q.set_str(j.get<std::string>(), 10) != 0) throw ParseError("bad rational \"" + j.get<std::string>() + "\"");
    q.canonicalize();
    if (q.get_den() == 0) throw ParseError("zero denominator");
    return Padic::from_rational(F, q);
  }
  if (j.is_object()) {
    const long p = F->prime();
    mpz_class n = 0, pk = 1;
    for (const auto& d : require(j, "digits")) {
      const long v = as_long(d, "digit");
      if (v < 0 || v >= p) throw ParseError("digit " + std::to_string(v) + " is not in [0, p)");
      n += pk * v;
      pk *= p;
    }
    const int val = j.contains("valuation") ? static_cast<int>(as_long(j.at("valuation"), "valuation")) : 0;
    Padic a = Padic::from_int(F, n) * Padic::power_of_p(F, val);
    if (j.contains("precision")) {
      const long prec = as_long(j.at("precision"), "precision");
      if (prec < val) throw ParseError("precision below valuation");
      a = a.with_precision(static_cast<int>(prec));
    }
    return a;
  }
  throw ParseError("p-adic value must be an integer, a rational string or a digit object");
}

inline Matrix<Padic> read_matrix(const json& j, const PadicField* F) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) throw ParseError("matrix must be a nonempty list of rows");
  const int r = static_cast<int>(j.size()), c = static_cast<int>(j[0].size());
  Matrix<Padic> m(r, c, Padic::zero(F));
  for (int i = 0; i < r; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != c) throw ParseError("matrix rows have different lengths");
    for (int k = 0; k < c; ++k) m(i, k) = read_padic(j[i][k], F);
  }
  return m;
}

inline std::vector<int> read_ints(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be a list");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(static_cast<int>(as_long(x, what)));
  return out;
}

inline bool is_pair_list(const json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_array() && e.size() == 2; });
}

/// Coefficients indexed by exponent 0..max; negative exponents are rejected.
template <class T, class Read>
std::map<int, T> read_terms(const json& j, Read read) {
  std::map<int, T> terms;
  if (!is_pair_list(j)) {
    terms.emplace(0, read(j));
    return terms;
  }
  for (const auto& e : j) {
    const long k = as_long(e[0], "exponent");
    if (k < 0) throw ParseError("negative exponent in series");
    if (terms.count(static_cast<int>(k))) throw ParseError("repeated exponent " + std::to_string(k));
    terms.emplace(static_cast<int>(k), read(e[1]));
  }
  return terms;
}

inline Series<Padic> read_series(const json& j, const PadicField* F, int n) {
  const auto terms = read_terms<Padic>(j, [&](const json& x) { return read_padic(x, F); });
  Series<Padic> s(n, Padic::zero(F));
  for (const auto& [k, a] : terms) {
    if (k > n) throw ParseError("exponent " + std::to_string(k) + " exceeds the truncation " + std::to_string(n));
    s.coeff(k) = a;
  }
  return s;
}

inline XMatrix read_xmatrix(const json& j, const PadicField* F, int n) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ParseError("matrix must be a nonempty list of rows");
  std::vector<std::vector<TruncEx>> rows;
  for (const auto& r : j) {
    if (!r.is_array() || r.size() != j[0].size()) throw ParseError("matrix rows have different lengths");
    rows.emplace_back();
    for (const auto& e : r) rows.back().push_back(read_series(e, F, n));
  }
  return XMatrix::from_entries(rows);
}

/// A coefficient of K_n: a p-adic value, or {"zeta": [c0, c1, ...]} for
/// sum c_i zeta_{p^n}^i.
inline CycloElement read_cyclo(const json& j, const PadicField* F, int n) {
  if (j.is_object() && j.contains("zeta")) {
    CycloElement r = CycloElement::zero(F, n);
    const auto& c = j.at("zeta");
    if (!c.is_array()) throw ParseError("\"zeta\" must be a list of coefficients");
    for (std::size_t i = 0; i < c.size(); ++i)
      r += CycloElement::zeta(F, n, static_cast<long>(i)).scaled(read_padic(c[i], F));
    return r;
  }
  return CycloElement::from_padic(read_padic(j, F), n);
}

/// sum a_k t^k in B_dR^+ / t^N over K_n.
inline BdRElement read_bdr(const json& j, const PadicField* F, int n, int big_n) {
  const auto terms = read_terms<CycloElement>(j, [&](const json& x) { return read_cyclo(x, F, n); });
  std::vector<CycloElement> a(big_n, CycloElement::zero(F, n));
  for (const auto& [k, c] : terms) {
    if (k >= big_n) throw ParseError("t-exponent " + std::to_string(k) + " is not below the truncation " + std::to_string(big_n));
    a[k] = c;
  }
  return BdRElement::from_coeffs(a);
}

inline FilteredPhiModule read_filtered(const json& j, const PadicField* F) {
  FilteredPhiModule dm;
  dm.phi = read_matrix(require(j, "phi"), F);
  dm.weights = read_ints(require(j, "weights"), "weights");
  dm.adapted = j.contains("adapted") ? read_matrix(j.at("adapted"), F) : Matrix<Padic>::identity(dm.phi.rows(), Padic::zero(F));
  if (dm.adapted.rows() != dm.phi.rows() || static_cast<int>(dm.weights.size()) != dm.phi.rows())
    throw ParseError("phi, weights and adapted basis have inconsistent sizes");
  return dm;
}

// ---- writing ----

inline std::vector<long> base_p_digits(mpz_class n, long p) {
  std::vector<long> d;
  while (n > 0) {
    d.push_back(mpz_class(n % p).get_si());
    n /= p;
  }
  return d;
}

inline json write_padic(const Padic& a) {
  precision_log().see(a.precision());
  json j;
  if (a.is_zero()) {
    j["digits"] = json::array();
    j["valuation"] = a.precision();
  } else {
    j["digits"] = base_p_digits(a.unit_coords()[0], a.prime());
    j["valuation"] = a.ord();
  }
  j["precision"] = a.precision();
  return j;
}

/// a/b with a = u b mod m and |a|, |b| <= sqrt(m/2), when it exists.
inline bool rational_reconstruction(const mpz_class& u, const mpz_class& m, mpq_class& out) {
  mpz_class bound;
  mpz_sqrt(bound.get_mpz_t(), mpz_class(m / 2).get_mpz_t());
  mpz_class r0 = m, r1 = u % m, t0 = 0, t1 = 1;
  if (r1 < 0) r1 += m;
  while (r1 > bound) {
    const mpz_class q = r0 / r1;
    mpz_class tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return false;
  out = mpq_class(r1, t1);
  out.canonicalize();
  return true;
}

/// Short form: a small rational times p^v when one matches every known
/// digit, otherwise the balanced representative.
inline std::string show(const Padic& a) {
  precision_log().see(a.precision());
  if (a.is_zero()) return "0";
  mpz_class u = a.unit_coords()[0];
  const mpz_class mod = a.field()->power(a.relative_precision());
  mpq_class q;
  if (!rational_reconstruction(u, mod, q)) {
    if (2 * u > mod) u -= mod;
    q = mpq_class(u);
  }
  if (a.ord() >= 0) q *= mpq_class(a.field()->power(a.ord()));
  else q /= mpq_class(a.field()->power(-a.ord()));
  q.canonicalize();
  return q.get_str();
}

inline json write_matrix(const Matrix<Padic>& m) {
  json j = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(write_padic(m(r, c)));
    j.push_back(row);
  }
  return j;
}

inline std::string show_matrix(const Matrix<Padic>& m) {
  std::string s = "[";
  for (int r = 0; r < m.rows(); ++r) {
    s += r ? ", [" : "[";
    for (int c = 0; c < m.cols(); ++c) s += (c ? ", " : "") + show(m(r, c));
    s += "]";
  }
  return s + "]";
}

inline json write_cyclo(const CycloElement& c) {
  json coords = json::array();
  for (const auto& a : c.coords()) coords.push_back(write_padic(a));
  return {{"level", c.level()}, {"coords", coords}};
}

inline std::string show_cyclo(const CycloElement& c) {
  std::string s;
  for (std::size_t i = 0; i < c.coords().size(); ++i) {
    if (c.coords()[i].is_zero()) {
      precision_log().see(c.coords()[i].precision());
      continue;
    }
    if (!s.empty()) s += " + ";
    const std::string v = show(c.coords()[i]);
    if (i == 0) s += v;
    else s += (v == "1" ? "" : "(" + v + ")*") + std::string("z") + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return s.empty() ? "0" : s;
}

/// Nonzero terms as [exponent, value] pairs.
template <class T, class Write>
json write_terms(const std::vector<T>& a, Write write) {
  json j = json::array();
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!a[k].is_zero()) j.push_back(json::array({static_cast<int>(k), write(a[k])}));
  return j;
}

template <class T, class Show>
std::string show_terms(const std::vector<T>& a, const std::string& var, Show sh) {
  std::string s;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].is_zero()) continue;
    if (!s.empty()) s += " + ";
    const std::string v = sh(a[k]);
    if (k == 0) {
      s += v;
      continue;
    }
    if (v != "1") s += "(" + v + ")*";
    s += var + (k > 1 ? "^" + std::to_string(k) : "");
  }
  return s.empty() ? "0" : s;
}

inline json write_bdr(const BdRElement& x) {
  json j = {{"level", x.level()}, {"truncation", x.truncation()}};
  j["terms"] = write_terms(x.coeffs(), write_cyclo);
  return j;
}

inline std::string show_bdr(const BdRElement& x) { return show_terms(x.coeffs(), "t", show_cyclo); }

inline json write_series(const Series<Padic>& s) {
  return {{"truncation", s.truncation()}, {"terms", write_terms(s.coeffs(), write_padic)}};
}

inline json write_xmatrix(const XMatrix& m) {
  json j = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(write_terms(m.entry(r, c).coeffs(), write_padic));
    j.push_back(row);
  }
  return j;
}

inline std::string show_xmatrix(const XMatrix& m) {
  std::string s = "[";
  for (int r = 0; r < m.rows(); ++r) {
    s += r ? ", [" : "[";
    for (int c = 0; c < m.cols(); ++c) s += (c ? ", " : "") + show_terms(m.entry(r, c).coeffs(), "x", show);
    s += "]";
  }
  return s + "]";
}

inline std::string show_poly(const std::vector<Padic>& f, const std::string& var) { return show_terms(f, var, show); }

}  // namespace pahodge::cli
