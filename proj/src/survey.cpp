#include "lambdacf/survey.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "lambdacf/numutil.hpp"
#include "lambdacf/oracles.hpp"
#include "lambdacf/report_json.hpp"
#include "lambdacf/version.hpp"

namespace lambdacf {

using nlohmann::json;

std::string default_cache_path() {
  if (const char* env = std::getenv("LAMBDACF_CACHE")) return env;
  return "survey.jsonl";
}

namespace {

using Key = std::tuple<std::string, long, std::string>;  // D, p, version

std::set<Key> load_keys(const std::string& path) {
  std::set<Key> keys;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("key")) continue;
    const json& k = j["key"];
    keys.emplace(k.at("D").get<std::string>(), k.at("p").get<long>(),
                 k.at("version").get<std::string>());
  }
  return keys;
}

json make_key(const mpz_class& D, long p) {
  return json{{"D", D.get_str()}, {"p", p}, {"version", kVersion}};
}

std::string csv_escape(const std::string& s) {
  if (s.find(',') == std::string::npos) return s;
  return "\"" + s + "\"";
}

}  // namespace

SurveyStats run_survey(const SurveyOptions& opts, std::ostream& log) {
  if (opts.out_path.empty()) throw precondition_error("survey needs an output path");
  SurveyStats stats;
  std::set<Key> seen = load_keys(opts.out_path);
  std::ofstream out(opts.out_path, std::ios::app);
  if (!out) throw precondition_error("cannot open cache file " + opts.out_path);

  std::ofstream csv;
  if (opts.csv_path) {
    csv.open(*opts.csv_path);
    csv << "ell,D,p,status,detail,n_final,valuation,verdict,lambda_sum,split\n";
  }

  for (long ell = std::max(3L, opts.from); ell <= opts.to; ++ell) {
    if (ell % 4 != 3 || !is_prime(ell)) continue;
    mpz_class D = 4 * mpz_class(ell);
    Key key{D.get_str(), opts.p, kVersion};
    if (seen.count(key)) {
      ++stats.cached;
      continue;
    }

    json rec{{"key", make_key(D, opts.p)}, {"ell", ell}};
    std::string csv_status, csv_detail, csv_verdict, csv_split;
    long csv_n = 0;
    std::optional<long> csv_val;
    std::optional<long> csv_sum;
    try {
      if (opts.p == ell) throw precondition_error("p equals ell");
      LambdaOptions lopts;
      lopts.threads = opts.threads;
      IterateResult res = iterate_n(D, opts.p, opts.n_max, lopts);
      json trace = json::array();
      for (const auto& r : res.trace) trace.push_back(report_to_json(r));
      rec["status"] = "ok";
      rec["trace"] = trace;
      const LambdaReport* fin = res.final_report();
      rec["final"] = fin ? report_to_json(*fin) : json(nullptr);
      ++stats.computed;
      csv_status = "ok";
      if (fin) {
        csv_n = fin->n;
        csv_val = fin->valuation;
        csv_verdict = fin->verdict.kind == VerdictKind::Exact ? "exact" : "lower_bound";
        if (fin->verdict.kind == VerdictKind::Exact) csv_sum = fin->verdict.amount;
        if (fin->split && fin->split->resolved()) {
          csv_split = std::to_string(*fin->split->first.exact) + "+" +
                      std::to_string(*fin->split->second.exact);
        }
      } else {
        csv_verdict = "inconclusive";
      }
    } catch (const precondition_error& e) {
      rec["status"] = "skipped";
      rec["reason"] = e.what();
      ++stats.skipped;
      csv_status = "skipped";
      csv_detail = e.what();
    }
    out << rec.dump() << "\n";
    if (csv.is_open()) {
      csv << ell << "," << D.get_str() << "," << opts.p << "," << csv_status << ","
          << csv_escape(csv_detail) << "," << csv_n << ","
          << (csv_val ? std::to_string(*csv_val) : "") << "," << csv_verdict << ","
          << (csv_sum ? std::to_string(*csv_sum) : "") << "," << csv_split << "\n";
    }
  }
  out.flush();

  log << "survey: " << stats.computed << " computed, " << stats.skipped
      << " skipped, " << stats.cached << " cached\n";
  return stats;
}

}  // namespace lambdacf
