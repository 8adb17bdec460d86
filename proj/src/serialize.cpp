#include "ws/serialize.hpp"

#include "ws/error.hpp"

namespace ws {

json to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_object() || !j.contains("re")) throw Error(ErrorCode::Parse, "complex value must be {re, im}");
  return {j.at("re").get<double>(), j.value("im", 0.0)};
}

namespace {

const char* factor_name(Factor::Kind k) {
  switch (k) {
    case Factor::Kind::Pow: return "pow";
    case Factor::Kind::ShiftPow: return "shift_pow";
    case Factor::Kind::Hyp: return "hyp2f1_reg_w";
    case Factor::Kind::Poly: return "poly_w";
    case Factor::Kind::LogSmooth: return "log_smooth";
    case Factor::Kind::ScaledT: return "t_block";
    case Factor::Kind::Derivative: return "derivative";
    case Factor::Kind::Lambda: return "opaque";
  }
  return "?";
}

json factor_json(const Factor& f) {
  json j{{"kind", factor_name(f.kind)}};
  switch (f.kind) {
    case Factor::Kind::Pow: j["alpha"] = to_json(f.p[0]); break;
    case Factor::Kind::ShiftPow: j["beta"] = to_json(f.p[0]); break;
    case Factor::Kind::Hyp:
      j["a"] = to_json(f.p[0]);
      j["b"] = to_json(f.p[1]);
      j["c"] = to_json(f.p[2]);
      break;
    case Factor::Kind::Poly: {
      json arr = json::array();
      for (cplx c : f.poly) arr.push_back(to_json(c));
      j["coeffs"] = arr;
      break;
    }
    case Factor::Kind::LogSmooth: break;
    case Factor::Kind::ScaledT:
      j["mu"] = to_json(f.p[0]);
      j["nu"] = to_json(f.p[1]);
      j["n"] = f.n;
      break;
    case Factor::Kind::Derivative:
      j["n"] = f.n;
      j["inner"] = to_json(*f.inner);
      break;
    case Factor::Kind::Lambda:
      throw Error(ErrorCode::InvalidArgument, "opaque coefficient factor cannot be serialized");
  }
  return j;
}

Factor factor_from_json(const json& j) {
  const std::string k = j.at("kind").get<std::string>();
  if (k == "pow") return Factor::power(complex_from_json(j.at("alpha")));
  if (k == "shift_pow") return Factor::shift_power(complex_from_json(j.at("beta")));
  if (k == "hyp2f1_reg_w") {
    return Factor::hyp(complex_from_json(j.at("a")), complex_from_json(j.at("b")), complex_from_json(j.at("c")));
  }
  if (k == "poly_w") {
    std::vector<cplx> c;
    for (const json& e : j.at("coeffs")) c.push_back(complex_from_json(e));
    return Factor::polynomial(std::move(c));
  }
  if (k == "log_smooth") return Factor::log_smooth();
  if (k == "t_block") {
    return Factor::scaled_t(complex_from_json(j.at("mu")), complex_from_json(j.at("nu")), j.at("n").get<int>());
  }
  if (k == "derivative") return Factor::derivative(coefficient_from_json(j.at("inner")), j.at("n").get<int>());
  throw Error(ErrorCode::Parse, "unknown coefficient factor kind: " + k);
}

}  // namespace

json to_json(const Coefficient& c) {
  json f = json::array();
  for (const Factor& x : c.factors) f.push_back(factor_json(x));
  return json{{"scale", to_json(c.scale)}, {"factors", f}};
}

Coefficient coefficient_from_json(const json& j) {
  Coefficient c(complex_from_json(j.at("scale")));
  for (const json& f : j.at("factors")) c.factors.push_back(factor_from_json(f));
  return c;
}

json to_json(const SingularBasis& b) {
  json j{{"tag", to_string(b.kind)}};
  switch (b.kind) {
    case SingularBasis::Kind::PowMinus:
    case SingularBasis::Kind::PowPlus:
      j["lambda"] = to_json(b.lambda);
      break;
    case SingularBasis::Kind::BoundaryPower:
      j["lambda"] = to_json(b.lambda);
      j["side"] = b.side == Side::Plus ? "+" : "-";
      break;
    case SingularBasis::Kind::DeltaDeriv:
      j["m"] = b.m;
      break;
    default:
      break;
  }
  if (b.depth >= 0) j["depth"] = b.depth;
  return j;
}

SingularBasis basis_from_json(const json& j) {
  const std::string tag = j.at("tag").get<std::string>();
  SingularBasis b;
  if (tag == "Regular") b = SingularBasis::regular();
  else if (tag == "PowMinus") b = SingularBasis::pow_minus(complex_from_json(j.at("lambda")));
  else if (tag == "PowPlus") b = SingularBasis::pow_plus(complex_from_json(j.at("lambda")));
  else if (tag == "BoundaryPower")
    b = SingularBasis::boundary_power(complex_from_json(j.at("lambda")),
                                      j.at("side").get<std::string>() == "-" ? Side::Minus : Side::Plus);
  else if (tag == "DeltaDeriv") b = SingularBasis::delta(j.at("m").get<int>());
  else if (tag == "PrincipalValue") b = SingularBasis::principal_value();
  else if (tag == "LogAbs") b = SingularBasis::log_abs();
  else if (tag == "HeavisideStep") b = SingularBasis::heaviside();
  else throw Error(ErrorCode::Parse, "unknown basis tag: " + tag);
  if (j.contains("depth")) b.depth = j.at("depth").get<int>();
  return b;
}

json to_json(const GeneralizedFunction& d) {
  json terms = json::array();
  for (const Term& t : d.terms) terms.push_back(json{{"basis", to_json(t.basis)}, {"coeff", to_json(t.coeff)}});
  return json{{"terms", terms}};
}

GeneralizedFunction generalized_function_from_json(const json& j) {
  GeneralizedFunction d;
  for (const json& t : j.at("terms")) d.add(coefficient_from_json(t.at("coeff")), basis_from_json(t.at("basis")));
  return d;
}

}  // namespace ws
