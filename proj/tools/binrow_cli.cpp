// Command-line front end: exact divisibility statistics of Pascal's
// triangle rows. Every subcommand writes byte-stable CSV or JSON for a
// fixed configuration (including the seed in sample mode).
//
// Exit codes: 0 success, 1 guard/domain violation, 2 flag error,
// 3 gf-verify found discrepancies.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "binrow/clt.hpp"
#include "binrow/io.hpp"
#include "binrow/moments.hpp"
#include "binrow/normal.hpp"
#include "binrow/rows.hpp"
#include "binrow/valuation.hpp"

namespace {

using namespace binrow;

struct OutputConfig {
  std::string format = "csv";
  std::string path;  // empty -> stdout
};

void add_output_flags(CLI::App* cmd, OutputConfig& out) {
  cmd->add_option("--format", out.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output", out.path, "output file (default: stdout)");
}

void write_out(const OutputConfig& out, const std::string& text) {
  std::string path = out.path;
  if (!path.empty()) {
    if (const char* dir = std::getenv("BINROW_OUTPUT_DIR"); dir && path[0] != '/')
      path = std::string(dir) + "/" + path;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << text;
    return;
  }
  std::cout << text;
}

unsigned resolve_threads(unsigned requested) {
  unsigned cap = 0;
  if (const char* env = std::getenv("BINROW_THREADS")) cap = static_cast<unsigned>(std::atoi(env));
  if (requested == 0) requested = 1;
  if (cap > 0 && requested > cap) requested = cap;
  return requested;
}

std::vector<int64_t> parse_int_list(const std::string& text) {
  std::vector<int64_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stoll(tok));
  }
  return out;
}

// "a:b" inclusive range or comma list
std::vector<int> parse_lambda_grid(const std::string& text) {
  std::vector<int> out;
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    int lo = std::stoi(text.substr(0, colon));
    int hi = std::stoi(text.substr(colon + 1));
    for (int l = lo; l <= hi; ++l) out.push_back(l);
  } else {
    for (int64_t v : parse_int_list(text)) out.push_back(static_cast<int>(v));
  }
  return out;
}

// tokens: plain integers, or c*isq with integer c ("isq", "-isq", "2isq")
std::vector<OffsetRule> parse_u_rules(const std::string& text) {
  std::vector<OffsetRule> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    auto pos = tok.find("isq");
    if (pos == std::string::npos) {
      out.push_back({std::stoll(tok), 0});
    } else {
      std::string head = tok.substr(0, pos);
      int64_t mult = head.empty() ? 1 : (head == "-" ? -1 : std::stoll(head));
      out.push_back({0, mult});
    }
  }
  return out;
}

int run_row(uint64_t n, uint64_t p, bool bruteforce, bool howard, bool mu,
            const OutputConfig& out) {
  if (howard) {
    std::string text;
    if (out.format == "csv") {
      text = "n,j,formula,ratio\n";
      for (int j = 1; j <= 3; ++j) {
        HowardCheck h = howard_check(n, j);
        text += std::to_string(n) + "," + std::to_string(j) + "," +
                to_fraction_string(h.formula) + "," + to_fraction_string(h.ratio) + "\n";
      }
    } else {
      text = "[";
      for (int j = 1; j <= 3; ++j) {
        HowardCheck h = howard_check(n, j);
        text += std::string(j > 1 ? "," : "") + "{\"n\":" + std::to_string(n) +
                ",\"j\":" + std::to_string(j) + ",\"formula\":\"" +
                to_fraction_string(h.formula) + "\",\"ratio\":\"" +
                to_fraction_string(h.ratio) + "\"}";
      }
      text += "]";
    }
    write_out(out, text);
    return 0;
  }
  if (mu) {
    MuReport r = mu_n(n);
    std::string text;
    if (out.format == "csv") {
      text = "n,mu_via_row,mu_via_digit_sums,fluctuation\n" + std::to_string(n) + "," +
             to_fraction_string(r.via_row) + "," + to_fraction_string(r.via_digit_sums) +
             "," + format_double(r.fluctuation) + "\n";
    } else {
      text = "{\"n\":" + std::to_string(n) + ",\"mu_via_row\":\"" +
             to_fraction_string(r.via_row) + "\",\"mu_via_digit_sums\":\"" +
             to_fraction_string(r.via_digit_sums) + "\",\"fluctuation\":" +
             format_double(r.fluctuation) + "}";
    }
    write_out(out, text);
    return 0;
  }
  SparseRow row = bruteforce ? row_bruteforce(n, p)
                             : (p == 2 ? tilde_row(n) : tilde_row_general(n, p));
  write_out(out, out.format == "csv" ? row_to_csv(row) : row_to_json(row));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact divisibility statistics of binomial coefficients"};
  app.require_subcommand(1);

  // row
  auto* row_cmd = app.add_subcommand("row", "rarefied valuation profile of one row");
  uint64_t row_n = 0, row_p = 2;
  bool row_brute = false, row_howard = false, row_mu = false;
  OutputConfig row_out;
  row_cmd->add_option("--n", row_n, "row number")->required();
  row_cmd->add_option("--p", row_p, "prime base")->capture_default_str();
  row_cmd->add_flag("--bruteforce", row_brute, "scan all entries instead of the digit DP");
  row_cmd->add_flag("--howard", row_howard, "evaluate the block-count formulas j=1,2,3");
  row_cmd->add_flag("--mu", row_mu, "expected valuation and fluctuation sample");
  add_output_flags(row_cmd, row_out);

  // valuation
  auto* val_cmd = app.add_subcommand("valuation", "valuation and Lucas residue of one entry");
  uint64_t val_n = 0, val_t = 0, val_p = 2;
  OutputConfig val_out;
  val_cmd->add_option("--n", val_n, "row number")->required();
  val_cmd->add_option("--t", val_t, "column")->required();
  val_cmd->add_option("--p", val_p, "prime base")->capture_default_str();
  add_output_flags(val_cmd, val_out);

  // moments
  auto* mom_cmd = app.add_subcommand("moments", "exact interval moment tables");
  int mom_lambda = 0;
  bool mom_tri = false;
  OutputConfig mom_out;
  mom_cmd->add_option("--lambda", mom_lambda, "interval index")->required();
  mom_cmd->add_flag("--trivariate", mom_tri, "include the cross tables a, b, c");
  add_output_flags(mom_cmd, mom_out);

  // gf-verify
  auto* gf_cmd = app.add_subcommand("gf-verify", "verify generating-function identities");
  int gf_lb = 8, gf_lt = -2;
  OutputConfig gf_out;
  gf_cmd->add_option("--lambda-max", gf_lb, "bivariate families up to this lambda")
      ->capture_default_str();
  gf_cmd->add_option("--trivariate-max", gf_lt,
                     "cross system up to this lambda (default min(lambda-max, 8))");
  add_output_flags(gf_cmd, gf_out);

  // clt-scan
  auto* clt_cmd = app.add_subcommand("clt-scan", "bad-set count for the normal approximation");
  int clt_lambda = 0;
  double clt_eps = 0.05;
  std::string clt_mode = "full";
  uint64_t clt_count = 0, clt_seed = 0;
  unsigned clt_threads = 1;
  OutputConfig clt_out;
  clt_cmd->add_option("--lambda", clt_lambda, "interval index")->required();
  clt_cmd->add_option("--epsilon", clt_eps, "distance threshold")->capture_default_str();
  clt_cmd->add_option("--mode", clt_mode, "full or sample")
      ->check(CLI::IsMember({"full", "sample"}))
      ->capture_default_str();
  auto* clt_count_opt = clt_cmd->add_option("--count", clt_count, "sample size (sample mode)");
  auto* clt_seed_opt = clt_cmd->add_option("--seed", clt_seed, "generator seed (sample mode)");
  clt_cmd->add_option("--threads", clt_threads, "worker cap")->capture_default_str();
  add_output_flags(clt_cmd, clt_out);

  // second-moment
  auto* sm_cmd = app.add_subcommand("second-moment", "exact centered second moments");
  int sm_lambda = 0;
  std::string sm_grid = "0";
  double sm_vshift = 0.0, sm_w = 0.0;
  std::optional<double> sm_vconst;
  double sm_vconst_raw = 0.0;
  unsigned sm_threads = 1;
  OutputConfig sm_out;
  sm_cmd->add_option("--lambda", sm_lambda, "interval index")->required();
  sm_cmd->add_option("--u-grid", sm_grid, "comma list of integer offsets")
      ->capture_default_str();
  sm_cmd->add_option("--v-shift", sm_vshift, "add to the default v = Phi(u/sqrt(lambda))")
      ->capture_default_str();
  auto* vconst_opt = sm_cmd->add_option("--v-const", sm_vconst_raw, "fixed v for all u");
  sm_cmd->add_option("--w", sm_w, "constant centering term")->capture_default_str();
  sm_cmd->add_option("--threads", sm_threads, "worker cap")->capture_default_str();
  add_output_flags(sm_cmd, sm_out);

  // lemma-ratios
  auto* lr_cmd = app.add_subcommand("lemma-ratios", "moment ratios against their main terms");
  std::string lr_grid = "8:14", lr_urules = "0,isq";
  unsigned lr_threads = 1;
  OutputConfig lr_out;
  lr_cmd->add_option("--lambda-grid", lr_grid, "a:b range or comma list")
      ->capture_default_str();
  lr_cmd->add_option("--u-rules", lr_urules,
                     "comma list: integers or multiples of isq = floor(sqrt(lambda))")
      ->capture_default_str();
  lr_cmd->add_option("--threads", lr_threads, "worker cap")->capture_default_str();
  add_output_flags(lr_cmd, lr_out);

  // singmaster
  auto* sg_cmd = app.add_subcommand("singmaster", "average divisibility along [0, N)");
  uint64_t sg_n = 0, sg_p = 2;
  int64_t sg_j = 0;
  std::string sg_powers;
  OutputConfig sg_out;
  sg_cmd->add_option("--N", sg_n, "range limit");
  sg_cmd->add_option("--j", sg_j, "valuation threshold")->capture_default_str();
  sg_cmd->add_option("--p", sg_p, "prime base")->capture_default_str();
  sg_cmd->add_option("--powers", sg_powers, "comma list of exponents: N = 2^e scan");
  add_output_flags(sg_cmd, sg_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // flag errors are exit 2
  }

  try {
    if (*row_cmd) return run_row(row_n, row_p, row_brute, row_howard, row_mu, row_out);

    if (*val_cmd) {
      uint64_t nu = nu_binomial(val_n, val_t, val_p);
      uint64_t lucas = lucas_residue(val_n, val_t, val_p);
      std::string text;
      if (val_out.format == "csv") {
        text = "n,t,p,nu,lucas\n" + std::to_string(val_n) + "," + std::to_string(val_t) +
               "," + std::to_string(val_p) + "," + std::to_string(nu) + "," +
               std::to_string(lucas) + "\n";
      } else {
        text = "{\"n\":" + std::to_string(val_n) + ",\"t\":" + std::to_string(val_t) +
               ",\"p\":" + std::to_string(val_p) + ",\"nu\":" + std::to_string(nu) +
               ",\"lucas\":" + std::to_string(lucas) + "}";
      }
      write_out(val_out, text);
      return 0;
    }

    if (*mom_cmd) {
      MomentTable t = moments_direct(mom_lambda, mom_tri);
      write_out(mom_out,
                mom_out.format == "csv" ? moment_table_to_csv(t) : moment_table_to_json(t));
      return 0;
    }

    if (*gf_cmd) {
      int lt = gf_lt == -2 ? std::min(gf_lb, 8) : gf_lt;
      auto ds = verify_gf_identities(gf_lb, lt);
      write_out(gf_out, gf_out.format == "csv" ? discrepancies_to_csv(ds)
                                               : discrepancies_to_json(ds));
      return ds.empty() ? 0 : 3;
    }

    if (*clt_cmd) {
      CltReport rep;
      if (clt_mode == "sample") {
        if (clt_count_opt->count() == 0 || clt_seed_opt->count() == 0)
          throw CLI::ValidationError("--count and --seed are required in sample mode");
        rep = clt_scan_sampled(clt_lambda, clt_eps, clt_count, clt_seed);
      } else {
        rep = clt_scan(clt_lambda, clt_eps, resolve_threads(clt_threads));
      }
      write_out(clt_out, clt_out.format == "csv" ? clt_report_to_csv(rep)
                                                 : clt_report_to_json(rep));
      return 0;
    }

    if (*sm_cmd) {
      if (vconst_opt->count() > 0) sm_vconst = sm_vconst_raw;
      CenteringRule rule{sm_vshift, sm_vconst, sm_w};
      auto reps = second_moment_scan(sm_lambda, parse_int_list(sm_grid), rule,
                                     resolve_threads(sm_threads));
      write_out(sm_out, sm_out.format == "csv" ? second_moments_to_csv(reps)
                                               : second_moments_to_json(reps));
      return 0;
    }

    if (*lr_cmd) {
      auto rows = lemma_ratio_checks(parse_lambda_grid(lr_grid), parse_u_rules(lr_urules),
                                     resolve_threads(lr_threads));
      write_out(lr_out, lr_out.format == "csv" ? lemma_ratios_to_csv(rows)
                                               : lemma_ratios_to_json(rows));
      return 0;
    }

    if (*sg_cmd) {
      std::string text;
      bool csv = sg_out.format == "csv";
      text = csv ? "N,j,p,average\n" : "[";
      auto emit = [&](uint64_t N) {
        Rational avg = singmaster_average(N, sg_j, sg_p);
        if (csv) {
          text += std::to_string(N) + "," + std::to_string(sg_j) + "," +
                  std::to_string(sg_p) + "," + to_fraction_string(avg) + "\n";
        } else {
          if (text.size() > 1) text += ",";
          text += "{\"N\":" + std::to_string(N) + ",\"j\":" + std::to_string(sg_j) +
                  ",\"p\":" + std::to_string(sg_p) + ",\"average\":\"" +
                  to_fraction_string(avg) + "\"}";
        }
      };
      if (!sg_powers.empty()) {
        for (int64_t e : parse_int_list(sg_powers)) emit(uint64_t(1) << e);
      } else {
        if (sg_n == 0) throw CLI::ValidationError("--N or --powers is required");
        emit(sg_n);
      }
      if (!csv) text += "]";
      write_out(sg_out, text);
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
