#include "binrow/io.hpp"

#include <cstdio>
#include <limits>

#include <json.hpp>

namespace binrow {

using ordered_json = nlohmann::ordered_json;

std::string to_fraction_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

namespace {

// counts fit JSON numbers at desk scale; fall back to strings beyond 2^64
ordered_json count_json(const BigInt& v) {
  if (v <= std::numeric_limits<uint64_t>::max())
    return ordered_json(v.convert_to<uint64_t>());
  return ordered_json(v.str());
}

}  // namespace

std::string row_to_json(const SparseRow& row) {
  ordered_json j;
  j["n"] = row.n();
  j["p"] = row.prime();
  ordered_json entries = ordered_json::object();
  for (const auto& [k, c] : row.entries()) entries[std::to_string(k)] = count_json(c);
  j["entries"] = entries;
  return j.dump();
}

std::string row_to_csv(const SparseRow& row) {
  std::string out = "n,k,count\n";
  for (const auto& [k, c] : row.entries())
    out += std::to_string(row.n()) + "," + std::to_string(k) + "," + c.str() + "\n";
  return out;
}

std::string moment_table_to_csv(const MomentTable& t) {
  std::string out = "family,lambda,k,l,value\n";
  auto emit = [&](const char* family, const std::vector<Rational>& v) {
    for (int k = 0; k <= t.kmax; ++k)
      out += std::string(family) + "," + std::to_string(t.lambda) + "," +
             std::to_string(k) + ",," + to_fraction_string(v[static_cast<size_t>(k)]) +
             "\n";
  };
  emit("m", t.m);
  emit("frak_m", t.frak_m);
  emit("m_prime", t.m_prime);
  emit("frak_m_prime", t.frak_m_prime);
  emit("m2", t.m2);
  emit("frak_m2", t.frak_m2);
  if (t.has_trivariate) {
    auto emit3 = [&](const char* family, const std::vector<std::vector<BigInt>>& g) {
      for (int k = 0; k <= t.kmax; ++k)
        for (int l = 0; l <= t.kmax; ++l)
          out += std::string(family) + "," + std::to_string(t.lambda) + "," +
                 std::to_string(k) + "," + std::to_string(l) + "," +
                 g[static_cast<size_t>(k)][static_cast<size_t>(l)].str() + "\n";
    };
    emit3("a", t.a);
    emit3("b", t.b);
    emit3("c", t.c);
  }
  return out;
}

std::string moment_table_to_json(const MomentTable& t) {
  ordered_json rows = ordered_json::array();
  auto emit = [&](const char* family, const std::vector<Rational>& v) {
    for (int k = 0; k <= t.kmax; ++k) {
      ordered_json r;
      r["family"] = family;
      r["lambda"] = t.lambda;
      r["k"] = k;
      r["l"] = nullptr;
      r["value"] = to_fraction_string(v[static_cast<size_t>(k)]);
      rows.push_back(r);
    }
  };
  emit("m", t.m);
  emit("frak_m", t.frak_m);
  emit("m_prime", t.m_prime);
  emit("frak_m_prime", t.frak_m_prime);
  emit("m2", t.m2);
  emit("frak_m2", t.frak_m2);
  if (t.has_trivariate) {
    auto emit3 = [&](const char* family, const std::vector<std::vector<BigInt>>& g) {
      for (int k = 0; k <= t.kmax; ++k)
        for (int l = 0; l <= t.kmax; ++l) {
          ordered_json r;
          r["family"] = family;
          r["lambda"] = t.lambda;
          r["k"] = k;
          r["l"] = l;
          r["value"] = g[static_cast<size_t>(k)][static_cast<size_t>(l)].str();
          rows.push_back(r);
        }
    };
    emit3("a", t.a);
    emit3("b", t.b);
    emit3("c", t.c);
  }
  return rows.dump();
}

std::string discrepancies_to_csv(const std::vector<Discrepancy>& ds) {
  std::string out = "family,lambda,k,l,expected,got\n";
  for (const auto& d : ds)
    out += d.family + "," + std::to_string(d.lambda) + "," + std::to_string(d.k) + "," +
           (d.l >= 0 ? std::to_string(d.l) : std::string()) + "," +
           to_fraction_string(d.expected) + "," + to_fraction_string(d.got) + "\n";
  return out;
}

std::string discrepancies_to_json(const std::vector<Discrepancy>& ds) {
  ordered_json arr = ordered_json::array();
  for (const auto& d : ds) {
    ordered_json r;
    r["family"] = d.family;
    r["lambda"] = d.lambda;
    r["k"] = d.k;
    if (d.l >= 0)
      r["l"] = d.l;
    else
      r["l"] = nullptr;
    r["expected"] = to_fraction_string(d.expected);
    r["got"] = to_fraction_string(d.got);
    arr.push_back(r);
  }
  return arr.dump();
}

namespace {

const char* mode_name(const CltReport& r) { return r.sampled ? "sample" : "full"; }

}  // namespace

std::string clt_report_to_csv(const CltReport& r) {
  std::string out = "lambda,epsilon,mode,size,bad_count,fraction,fraction_sqrtlambda\n";
  out += std::to_string(r.lambda) + "," + format_double(r.epsilon) + "," + mode_name(r) +
         "," + std::to_string(r.population) + "," + std::to_string(r.bad_count) + "," +
         to_fraction_string(r.fraction) + "," + format_double(r.normalized) + "\n";
  return out;
}

std::string clt_report_to_json(const CltReport& r) {
  ordered_json j;
  j["lambda"] = r.lambda;
  j["epsilon"] = r.epsilon;
  j["mode"] = mode_name(r);
  j["size"] = r.population;
  j["bad_count"] = r.bad_count;
  j["fraction"] = to_fraction_string(r.fraction);
  j["fraction_sqrtlambda"] = r.normalized;
  return j.dump();
}

std::string second_moments_to_csv(const std::vector<SecondMomentReport>& rs) {
  std::string out = "lambda,u,v,w,E,normalized\n";
  for (const auto& r : rs)
    out += std::to_string(r.lambda) + "," + std::to_string(r.u) + "," +
           format_double(r.v) + "," + format_double(r.w) + "," +
           to_fraction_string(r.second_moment) + "," + format_double(r.normalized) +
           "\n";
  return out;
}

std::string second_moments_to_json(const std::vector<SecondMomentReport>& rs) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rs) {
    ordered_json j;
    j["lambda"] = r.lambda;
    j["u"] = r.u;
    j["v"] = r.v;
    j["w"] = r.w;
    j["E"] = to_fraction_string(r.second_moment);
    j["normalized"] = r.normalized;
    arr.push_back(j);
  }
  return arr.dump();
}

std::string lemma_ratios_to_csv(const std::vector<LemmaRatioRow>& rs) {
  std::string out = "family,lambda,u,ratio,deviation\n";
  for (const auto& r : rs)
    out += r.family + "," + std::to_string(r.lambda) + "," + std::to_string(r.u) + "," +
           format_double(r.ratio) + "," + format_double(r.deviation) + "\n";
  return out;
}

std::string lemma_ratios_to_json(const std::vector<LemmaRatioRow>& rs) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rs) {
    ordered_json j;
    j["family"] = r.family;
    j["lambda"] = r.lambda;
    j["u"] = r.u;
    j["ratio"] = r.ratio;
    j["deviation"] = r.deviation;
    arr.push_back(j);
  }
  return arr.dump();
}

}  // namespace binrow
