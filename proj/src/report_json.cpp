#include "lambdacf/report_json.hpp"

#include "lambdacf/numutil.hpp"

namespace lambdacf {

using nlohmann::json;

json cyclo_to_json(const CycloNumber& x) {
  return json{{"p", x.p()}, {"n", x.n()}, {"coeffs", x.serialize()}};
}

CycloNumber cyclo_from_json(const json& j) {
  return CycloNumber::deserialize(j.at("p").get<long>(), j.at("n").get<int>(),
                                  j.at("coeffs").get<std::vector<std::string>>());
}

namespace {

json verdict_to_json(const Verdict& v) {
  return json{{"kind", v.kind == VerdictKind::Exact ? "exact" : "lower_bound"},
              {"amount", v.amount}};
}

Verdict verdict_from_json(const json& j) {
  Verdict v;
  v.kind = j.at("kind").get<std::string>() == "exact" ? VerdictKind::Exact
                                                      : VerdictKind::LowerBound;
  v.amount = j.at("amount").get<long>();
  return v;
}

json constraint_to_json(const FactorConstraint& c) {
  json j{{"lower", c.lower}, {"reason", c.reason}};
  if (c.exact) j["exact"] = *c.exact;
  return j;
}

FactorConstraint constraint_from_json(const json& j) {
  FactorConstraint c;
  c.lower = j.at("lower").get<long>();
  c.reason = j.at("reason").get<std::string>();
  if (j.contains("exact")) c.exact = j.at("exact").get<long>();
  return c;
}

}  // namespace

json report_to_json(const LambdaReport& r) {
  json params{{"g", r.params.g},
              {"r0", r.params.r0},
              {"rn", r.params.rn},
              {"u", r.params.u},
              {"v", r.params.v},
              {"split_type", r.params.inert ? "inert" : "split"},
              {"eps", {{"a", r.params.eps.a.get_str()}, {"b", r.params.eps.b.get_str()}}},
              {"eta",
               {{"x", r.params.eta.cls.x},
                {"y", r.params.eta.cls.y},
                {"lift_x", r.params.eta.lift_x.get_str()},
                {"lift_y", r.params.eta.lift_y.get_str()},
                {"via_hensel", r.params.eta.via_hensel}}},
              {"psi", "psi(g) = zeta^" + std::to_string(r.psi_twist)}};
  if (r.params.e1) params["e1"] = *r.params.e1;
  if (r.params.e2) params["e2"] = *r.params.e2;

  json j{{"schema", "lambdacf.report.v1"},
         {"D", r.D.get_str()},
         {"D1", r.D1.get_str()},
         {"D2", r.D2.get_str()},
         {"p", r.p},
         {"n", r.n},
         {"value", cyclo_to_json(r.value)},
         {"phi_pn", r.phi_pn},
         {"verdict", verdict_to_json(r.verdict)},
         {"fast_path", r.fast_path},
         {"params", params},
         {"millis", r.millis}};
  if (r.valuation)
    j["valuation"] = *r.valuation;
  else
    j["valuation"] = nullptr;
  if (r.split) {
    j["split"] = json{{"first", constraint_to_json(r.split->first)},
                      {"second", constraint_to_json(r.split->second)}};
  }
  return j;
}

LambdaReport report_from_json(const json& j) {
  LambdaReport r;
  r.D = mpz_class(j.at("D").get<std::string>());
  r.D1 = mpz_class(j.at("D1").get<std::string>());
  r.D2 = mpz_class(j.at("D2").get<std::string>());
  r.p = j.at("p").get<long>();
  r.n = j.at("n").get<int>();
  r.value = cyclo_from_json(j.at("value"));
  r.phi_pn = j.at("phi_pn").get<long>();
  r.verdict = verdict_from_json(j.at("verdict"));
  r.fast_path = j.at("fast_path").get<bool>();
  if (!j.at("valuation").is_null()) r.valuation = j.at("valuation").get<long>();
  if (j.contains("split")) {
    SplitResult s;
    s.first = constraint_from_json(j.at("split").at("first"));
    s.second = constraint_from_json(j.at("split").at("second"));
    r.split = s;
  }
  const json& pj = j.at("params");
  r.params.D = r.D;
  r.params.p = r.p;
  r.params.n = r.n;
  r.params.g = pj.at("g").get<long>();
  r.params.r0 = pj.at("r0").get<long>();
  r.params.rn = pj.at("rn").get<long>();
  r.params.u = pj.at("u").get<int>();
  r.params.v = pj.at("v").get<long>();
  r.params.inert = pj.at("split_type").get<std::string>() == "inert";
  r.params.eps.a = mpz_class(pj.at("eps").at("a").get<std::string>());
  r.params.eps.b = mpz_class(pj.at("eps").at("b").get<std::string>());
  r.params.eps.D = r.D;
  r.params.eps.delta = mpz_class(r.D % 4).get_si();
  r.params.delta = r.params.eps.delta;
  r.params.eta.cls.x = pj.at("eta").at("x").get<long>();
  r.params.eta.cls.y = pj.at("eta").at("y").get<long>();
  r.params.eta.cls.modulus = checked_pow_long(r.p, r.n + 1);
  r.params.eta.lift_x = mpz_class(pj.at("eta").at("lift_x").get<std::string>());
  r.params.eta.lift_y = mpz_class(pj.at("eta").at("lift_y").get<std::string>());
  r.params.eta.via_hensel = pj.at("eta").at("via_hensel").get<bool>();
  if (pj.contains("e1")) r.params.e1 = pj.at("e1").get<long>();
  if (pj.contains("e2")) r.params.e2 = pj.at("e2").get<long>();
  std::string psi = pj.at("psi").get<std::string>();
  r.psi_twist = std::stol(psi.substr(psi.rfind('^') + 1));
  r.millis = j.at("millis").get<double>();
  return r;
}

}  // namespace lambdacf
