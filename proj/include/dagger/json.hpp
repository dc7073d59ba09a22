#pragma once

// JSON encodings of the library types (nlohmann::json).

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dagger/crossed.hpp"
#include "dagger/parse.hpp"
#include "dagger/spectral.hpp"

namespace dagger {

using Json = nlohmann::json;

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const Json::exception&) {
    throw InvalidInput(std::string("bad value for ") + what);
  }
}

}  // namespace detail

// ---- rings and scalars ----

inline Json ring_to_json(const RingDescriptor& d) {
  if (d.backend == BackendKind::padic) return {{"backend", "padic"}, {"p", d.modulus}, {"precision", d.precision}};
  return {{"backend", "eqchar"}, {"q", d.modulus}, {"precision", d.precision}};
}

inline RingDescriptor ring_from_json(const Json& j) {
  RingDescriptor d;
  auto backend = detail::get_as<std::string>(detail::field(j, "backend"), "backend");
  if (backend == "padic") {
    d.backend = BackendKind::padic;
    d.modulus = detail::get_as<std::uint64_t>(detail::field(j, "p"), "p");
  } else if (backend == "eqchar") {
    d.backend = BackendKind::eqchar;
    d.modulus = detail::get_as<std::uint64_t>(detail::field(j, "q"), "q");
  } else {
    throw InvalidInput("unknown backend '" + backend + "'");
  }
  d.precision = detail::get_as<int>(detail::field(j, "precision"), "precision");
  return d;
}

template <class B>
Json scalar_to_json(const Scalar<B>& x) {
  if (x.is_zero()) return {{"v", "inf"}, {"u", "0"}};
  Json out{{"v", x.val()}, {"u", x.unit_digits()}};
  if (x.loss() > 0) out["loss"] = x.loss();
  return out;
}

/// Accepts {"v": .., "u": ..}, a JSON integer, or a literal string.
template <class B>
Scalar<B> scalar_from_json(const RingPtr<B>& ring, const Json& j) {
  if (j.is_number_integer()) return Scalar<B>::from_int(ring, j.get<std::int64_t>());
  if (j.is_string()) return parse_scalar(ring, j.get<std::string>());
  const Json& v = detail::field(j, "v");
  if (v.is_string()) {
    if (v.get<std::string>() != "inf") throw InvalidInput("scalar valuation must be an integer or \"inf\"");
    return Scalar<B>::zero(ring);
  }
  auto e = detail::get_as<std::int64_t>(v, "v");
  auto u = detail::get_as<std::string>(detail::field(j, "u"), "u");
  const std::int64_t N = ring->precision();
  if (e >= N) return Scalar<B>::zero(ring);
  if (N - e > 64 * N + 4096) throw PrecisionExhausted("scalar valuation too negative");
  auto residue = ring->from_decimal(u, static_cast<int>(N - e));
  if (ring->is_zero(residue)) return Scalar<B>::zero(ring);
  int loss = j.contains("loss") ? detail::get_as<int>(j.at("loss"), "loss") : 0;
  return Scalar<B>::from_shifted(ring, e, residue, loss);
}

template <class B>
Json vector_to_json(const Vector<B>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar_to_json(x));
  return out;
}

template <class B>
Vector<B> vector_from_json(const RingPtr<B>& ring, const Json& j) {
  if (j.is_string()) return parse_vector(ring, j.get<std::string>());
  if (!j.is_array()) throw InvalidInput("vector must be an array");
  Vector<B> out;
  for (const auto& x : j) out.push_back(scalar_from_json(ring, x));
  return out;
}

template <class B>
Json matrix_to_json(const Matrix<B>& a) {
  Json out = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < a.cols(); ++k) row.push_back(scalar_to_json(a(i, k)));
    out.push_back(row);
  }
  return out;
}

/// Nested arrays of scalars, or a literal string such as "[[0,1],[pi,0]]".
template <class B>
Matrix<B> matrix_from_json(const RingPtr<B>& ring, const Json& j) {
  if (j.is_string()) return parse_matrix(ring, j.get<std::string>());
  if (!j.is_array() || j.empty()) throw InvalidInput("matrix must be a non-empty array of rows");
  std::vector<Vector<B>> rows;
  for (const auto& r : j) {
    rows.push_back(vector_from_json(ring, r));
    if (rows.back().size() != rows.front().size()) throw InvalidInput("ragged matrix");
  }
  return Matrix<B>::from_rows(ring, rows);
}

/// Relative basis vectors plus the common factor pi^pi_exponent.
template <class B>
Json lattice_to_json(const Lattice<B>& l) {
  Json basis = Json::array();
  for (const auto& b : l.basis()) basis.push_back(vector_to_json(b));
  Json out{{"ambient_rank", l.rank()}, {"basis", basis}};
  if (l.is_zero()) {
    out["pi_exponent"] = "inf";
  } else {
    out["pi_exponent"] = l.scale();
    out["precision"] = l.precision();
  }
  return out;
}

inline Json rational_to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  return parse_rational(detail::get_as<std::string>(j, "rational"));
}

inline Json exponent_to_json(std::int64_t e) { return e == kInfinity ? Json("inf") : Json(e); }

// ---- monoids ----

inline Json monoid_to_json(const MonoidDescriptor& m) {
  const char* kind = m.kind == MonoidKind::Nk ? "N" : m.kind == MonoidKind::Zk ? "Z" : "free";
  return {{"kind", kind}, {"rank", m.rank}};
}

/// {"kind": "N"|"Z"|"free", "rank": k} or the short forms "N^k", "Z^k", "free(k)".
inline MonoidDescriptor monoid_from_json(const Json& j) {
  std::string kind;
  std::size_t rank = 0;
  if (j.is_string()) {
    auto s = j.get<std::string>();
    try {
      if (s.size() > 2 && (s[0] == 'N' || s[0] == 'Z') && s[1] == '^') {
        kind = s.substr(0, 1);
        rank = std::stoul(s.substr(2));
      } else if (s.rfind("free(", 0) == 0 || s.rfind("Free(", 0) == 0) {
        kind = "free";
        rank = std::stoul(s.substr(5));
      } else {
        throw InvalidInput("monoid '" + s + "'");
      }
    } catch (const std::logic_error&) {
      throw InvalidInput("monoid '" + s + "'");
    }
  } else {
    kind = detail::get_as<std::string>(detail::field(j, "kind"), "monoid kind");
    rank = detail::get_as<std::size_t>(detail::field(j, "rank"), "monoid rank");
  }
  if (kind == "N") return MonoidDescriptor::N(rank);
  if (kind == "Z") return MonoidDescriptor::Z(rank);
  if (kind == "free") return MonoidDescriptor::free(rank);
  throw InvalidInput("unknown monoid kind '" + kind + "'");
}

inline Json elem_to_json(const MonoidElem& s) {
  if (s.descriptor().kind == MonoidKind::Free) return s.to_string() == "1" ? Json("") : Json(s.to_string());
  return s.data();
}

inline MonoidElem elem_from_json(const MonoidDescriptor& m, const Json& j) {
  if (j.is_string()) return MonoidElem::word(m, j.get<std::string>());
  return MonoidElem::exponents(m, detail::get_as<std::vector<std::int64_t>>(j, "monoid element"));
}

template <class B>
Cocycle<B> cocycle_from_json(const RingPtr<B>& ring, const MonoidDescriptor& m, const Json& j) {
  if (j.is_null()) return Cocycle<B>::trivial(ring, m);
  auto lambda = scalar_from_json(ring, detail::field(j, "lambda"));
  auto q = detail::get_as<std::vector<std::vector<std::int64_t>>>(detail::field(j, "Q"), "Q");
  return Cocycle<B>::bicharacter(m, lambda, q);
}

// ---- series ----

inline Json certificate_to_json(const std::optional<GrowthCertificate>& c) {
  if (!c) return nullptr;
  return {{"c", to_string(c->c)}, {"k", c->k}};
}

inline std::optional<GrowthCertificate> certificate_from_json(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return GrowthCertificate{rational_from_json(detail::field(j, "c")),
                           detail::get_as<std::int64_t>(detail::field(j, "k"), "k")};
}

template <class B>
Json series_to_json(const DaggerSeries<B>& f) {
  Json terms = Json::array();
  for (const auto& [s, x] : f.terms()) terms.push_back({{"s", elem_to_json(s)}, {"x", scalar_to_json(x)}});
  return {{"monoid", monoid_to_json(f.monoid())},
          {"ring", ring_to_json(f.ring()->descriptor())},
          {"D", f.cap()},
          {"terms", terms},
          {"certificate", certificate_to_json(f.certificate())},
          {"truncated", f.truncated()}};
}

/// The ring field is checked against `ring` when present.
template <class B>
DaggerSeries<B> series_from_json(const RingPtr<B>& ring, const Json& j) {
  if (j.contains("ring") && ring_from_json(j.at("ring")) != ring->descriptor())
    throw DescriptorMismatch("series ring differs from the working ring");
  auto m = monoid_from_json(detail::field(j, "monoid"));
  DaggerSeries<B> f(ring, m, detail::get_as<std::int64_t>(detail::field(j, "D"), "D"));
  const Json& terms = detail::field(j, "terms");
  if (!terms.is_array()) throw InvalidInput("series terms must be an array");
  for (const auto& t : terms) f.add_term(elem_from_json(m, detail::field(t, "s")), scalar_from_json(ring, detail::field(t, "x")));
  if (j.contains("truncated") && j.at("truncated").is_boolean()) f.mark_truncated(j.at("truncated").get<bool>());
  if (j.contains("certificate")) f.set_certificate(certificate_from_json(j.at("certificate")));
  return f;
}

// ---- crossed products ----

template <class B>
AffineAction<B> action_from_json(const RingPtr<B>& ring, const Json& j) {
  return AffineAction<B>(matrix_from_json(ring, detail::field(j, "a")), vector_from_json(ring, detail::field(j, "b")));
}

template <class B>
Json action_to_json(const AffineAction<B>& alpha) {
  return {{"a", matrix_to_json(alpha.a())}, {"b", vector_to_json(alpha.b())}};
}

template <class B>
Json crossed_to_json(const CrossedElem<B>& u) {
  Json terms = Json::array();
  for (const auto& [n, f] : u.terms()) terms.push_back({{"n", n}, {"series", series_to_json(f)}});
  return {{"Dz", u.dz()}, {"terms", terms}, {"certificate", certificate_to_json(u.certificate())},
          {"truncated", u.truncated()}};
}

/// Inner series must share one monoid and cap, taken from the first term
/// or from `monoid`/`D` at the top level.
template <class B>
CrossedElem<B> crossed_from_json(const RingPtr<B>& ring, const Json& j) {
  const auto dz = detail::get_as<std::int64_t>(detail::field(j, "Dz"), "Dz");
  const Json& terms = detail::field(j, "terms");
  if (!terms.is_array()) throw InvalidInput("crossed terms must be an array");
  std::vector<std::pair<std::int64_t, DaggerSeries<B>>> parsed;
  for (const auto& t : terms)
    parsed.emplace_back(detail::get_as<std::int64_t>(detail::field(t, "n"), "n"),
                        series_from_json(ring, detail::field(t, "series")));
  MonoidDescriptor m;
  std::int64_t cap = 0;
  if (!parsed.empty()) {
    m = parsed.front().second.monoid();
    cap = parsed.front().second.cap();
  } else {
    m = monoid_from_json(detail::field(j, "monoid"));
    cap = detail::get_as<std::int64_t>(detail::field(j, "D"), "D");
  }
  CrossedElem<B> u(ring, m, cap, dz);
  for (const auto& [n, f] : parsed) u.add(n, f);
  if (j.contains("certificate")) u.set_certificate(certificate_from_json(j.at("certificate")));
  return u;
}

// ---- reports ----

inline Json radius_report_to_json(const RadiusReport& rep) {
  Json est = Json::array();
  for (const auto& e : rep.estimates)
    est.push_back({{"n", e.n}, {"nu_over_n", e.nu_over_n ? Json(to_string(*e.nu_over_n)) : Json("inf")}});
  Json gauges = Json::array();
  for (auto g : rep.gauges) gauges.push_back(exponent_to_json(g));
  return {{"estimates", est},
          {"gauges", gauges},
          {"exponent", rep.exponent ? Json(to_string(*rep.exponent)) : Json("inf")},
          {"rho1_exponent", to_string(rep.rho1_exponent)},
          {"verdict", to_string(rep.verdict)},
          {"superadditive", rep.superadditive}};
}

inline Json probe_result_to_json(const ProbeResult& r) {
  Json gauges = Json::array();
  for (auto g : r.gauges) gauges.push_back(exponent_to_json(g));
  Json out{{"j", r.j}, {"verdict", to_string(r.verdict)}, {"gauges", gauges}};
  out["stabilized_at"] = r.stabilized_at ? Json(*r.stabilized_at) : Json(nullptr);
  return out;
}

}  // namespace dagger
