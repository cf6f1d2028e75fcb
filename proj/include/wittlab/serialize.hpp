#pragma once
// JSON forms of the library values (nlohmann::json).

#include "wittlab/padic.hpp"
#include "wittlab/sparse_poly.hpp"
#include "wittlab/witt.hpp"

#include <json.hpp>

namespace wl {

using json = nlohmann::json;

template <class C>
json poly_to_json(const SparsePoly<C>& f) {
  json terms = json::array();
  for (auto& [e, c] : f.terms()) terms.push_back(json::array({e, CoeffTraits<C>::str(c)}));
  return json{{"vars", f.vars()}, {"terms", terms}};
}

template <class C, class F>
SparsePoly<C> poly_from_json(const json& j, F coeff) {
  std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
  std::vector<typename SparsePoly<C>::Term> ts;
  for (auto& t : j.at("terms")) ts.push_back({t.at(0).get<Exps>(), coeff(t.at(1).get<std::string>())});
  return SparsePoly<C>::from_terms(std::move(vars), std::move(ts));
}

template <class R>
json witt_to_json(const WittVector<R>& x) {
  json comps = json::object();
  for (u64 n : x.trunc().elements()) comps[std::to_string(n)] = x.ring().str(x.at(n));
  return json{{"trunc", x.trunc().elements()}, {"ring", x.ring().name()}, {"comps", comps}};
}

template <class R>
WittVector<R> witt_from_json(const R& ring, const json& j) {
  TruncationSet t(j.at("trunc").get<std::vector<u64>>());
  if (j.contains("ring") && j.at("ring").get<std::string>() != ring.name())
    throw MathError("witt json: ring tag " + j.at("ring").get<std::string>() + " does not match " + ring.name());
  std::vector<typename R::Elem> c;
  for (u64 n : t.elements()) c.push_back(ring.parse(j.at("comps").at(std::to_string(n)).get<std::string>()));
  return WittVector<R>(ring, t, std::move(c));
}

template <class R>
json lambda_to_json(const LambdaSeries<R>& f) {
  json a = json::array();
  for (auto& c : f.coeffs()) a.push_back(f.ring().str(c));
  return json{{"ring", f.ring().name()}, {"degree", f.degree()}, {"coeffs", a}};
}

// val is null for an exact zero; unit digits are base p, little endian
inline json padic_to_json(const PadicNumber& x) {
  json v = x.is_exact_zero() ? json(nullptr) : json(x.val());
  return json{{"p", x.p()}, {"val", v}, {"unit", x.digits()}, {"prec", x.prec()}};
}

inline PadicNumber padic_from_json(const json& j) {
  u64 p = j.at("p").get<u64>();
  if (j.at("val").is_null()) return PadicNumber::zero(p, j.at("prec").get<int>());
  Int unit = 0, scale = 1;
  std::string digits = j.at("unit").get<std::string>();
  size_t pos = 0;
  while (pos < digits.size()) {
    size_t end = digits.find(',', pos);
    if (end == std::string::npos) end = digits.size();
    unit += scale * Int(digits.substr(pos, end - pos));
    scale *= static_cast<unsigned long>(p);
    pos = end + 1;
  }
  long v = j.at("val").get<long>();
  int K = j.at("prec").get<int>();
  if (K == 0) return PadicNumber::approx_zero(p, v);
  return PadicNumber::make(p, v, unit, K);
}

}  // namespace wl
