#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sqcodes/codes.hpp"
#include "sqcodes/errors.hpp"
#include "sqcodes/experiments.hpp"
#include "sqcodes/quadforms.hpp"

using json = nlohmann::ordered_json;
using namespace sqcodes;

namespace {

// Form file: line 1 = "q k"; line 2 = the k(k+1)/2 upper-triangle
// coefficients a_11 a_12 .. a_1k a_22 .. a_kk, space separated.
QuadraticForm read_form_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing header line");
  std::istringstream hdr(line);
  long long q = -1, k = -1;
  if (!(hdr >> q >> k)) throw ParseError("header must be 'q k'");
  std::string extra;
  if (hdr >> extra) throw ParseError("trailing tokens in header");
  if (q < 2 || q > 65536) throw OutOfRange("q out of range");
  if (k < 0) throw OutOfRange("k must be >= 0");
  FieldPtr ctx = FieldCtx::make(static_cast<std::uint32_t>(q));
  std::size_t m = static_cast<std::size_t>(k) * (k + 1) / 2;
  VecFq coeffs(m, 0);
  if (!std::getline(in, line)) {
    if (m != 0) throw ParseError("missing coefficient line");
    line.clear();
  }
  std::istringstream cs(line);
  for (std::size_t i = 0; i < m; ++i) {
    long long v = -1;
    if (!(cs >> v)) throw ParseError("expected k(k+1)/2 coefficients");
    if (v < 0 || v >= q) throw FieldError("coefficient outside [0, q)");
    coeffs[i] = static_cast<Fe>(v);
  }
  if (cs >> extra) throw ParseError("trailing tokens after coefficients");
  while (std::getline(in, line)) {
    std::istringstream rest(line);
    if (rest >> extra) throw ParseError("trailing content after form");
  }
  return QuadraticForm(ctx, static_cast<std::size_t>(k), coeffs);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ParseError("cannot open '" + out_path + "' for writing");
  out << text;
}

std::string render_simple(const json& params, const json& results,
                          const std::string& format) {
  if (format == "json") {
    json j;
    j["params"] = params;
    j["results"] = results;
    j["version"] = kVersion;
    return j.dump(2) + "\n";
  }
  auto scalar = [](const json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  std::ostringstream os;
  if (format == "csv") {
    os << "key,value\n";
    for (const auto& [key, v] : params.items())
      if (v.is_primitive()) os << "param:" << key << "," << scalar(v) << "\n";
    for (const auto& [key, v] : results.items())
      if (v.is_primitive()) os << key << "," << scalar(v) << "\n";
    os << "version," << kVersion << "\n";
    return os.str();
  }
  // text
  os << "params:";
  for (const auto& [key, v] : params.items())
    if (v.is_primitive()) os << " " << key << "=" << scalar(v);
  os << "\n";
  for (const auto& [key, v] : results.items())
    os << key << " = " << v.dump() << "\n";
  return os.str();
}

void emit_report(const ExperimentReport& rep, const std::string& format,
                 const std::string& out_path, bool timing) {
  if (format == "json")
    emit(rep.to_json(timing).dump(2) + "\n", out_path);
  else if (format == "csv")
    emit(rep.to_csv(timing), out_path);
  else
    emit(rep.to_text(timing), out_path);
}

json code_params(const LinearCode& c, const char* experiment) {
  return {{"experiment", experiment},
          {"q", c.ctx()->q()},
          {"n", c.n()},
          {"k", c.k()}};
}

struct CommonOut {
  std::string format = "text";
  std::string out_path;
  bool timing = false;
};

void add_output_flags(CLI::App* cmd, CommonOut& out,
                      const std::string& default_format = "text") {
  out.format = default_format;
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  cmd->add_option("--out", out.out_path, "Write output to a file");
  cmd->add_flag("--timing", out.timing,
                "Include wall-clock time (breaks byte-reproducibility)");
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Finite-field linear codes, their Schur squares, and the "
               "quadratic-form machinery behind square-dimension statistics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  // square
  auto* c_square = app.add_subcommand("square", "Dimension of the Schur square of a code");
  std::string square_in;
  CommonOut square_out;
  c_square->add_option("--in", square_in, "Code file")->required();
  add_output_flags(c_square, square_out);

  // power
  auto* c_power = app.add_subcommand("power", "Dimensions of Schur powers C^{*1..d}");
  std::string power_in;
  std::size_t power_d = 2;
  CommonOut power_out;
  c_power->add_option("--in", power_in, "Code file")->required();
  c_power->add_option("--d", power_d, "Highest power")->check(CLI::PositiveNumber);
  add_output_flags(c_power, power_out);

  // zeros
  auto* c_zeros = app.add_subcommand("zeros", "Zero count of a quadratic form: closed form vs enumeration");
  std::string zeros_in;
  std::uint64_t zeros_budget = kZeroBruteBudget;
  CommonOut zeros_out;
  c_zeros->add_option("--form", zeros_in, "Form file")->required();
  c_zeros->add_option("--max-enum", zeros_budget, "Enumeration cap for the brute count")
      ->capture_default_str();
  add_output_flags(c_zeros, zeros_out);

  // census
  auto* c_census = app.add_subcommand("census", "Count quadratic forms by rank: formula vs enumeration");
  std::uint32_t census_q = 2;
  std::size_t census_k = 1;
  std::uint64_t census_budget = kCensusBudget;
  CommonOut census_out;
  c_census->add_option("--q", census_q, "Field size")->required();
  c_census->add_option("--k", census_k, "Number of variables")->required();
  c_census->add_option("--max-enum", census_budget, "Enumeration cap")
      ->capture_default_str();
  add_output_flags(c_census, census_out, "csv");

  // decompose
  auto* c_decomp = app.add_subcommand("decompose", "Witt/symplectic decomposition of a quadratic form");
  std::string decomp_in;
  CommonOut decomp_out;
  c_decomp->add_option("--form", decomp_in, "Form file")->required();
  add_output_flags(c_decomp, decomp_out);

  // expect
  auto* c_expect = app.add_subcommand("expect", "Exact expected kernel size of the evaluation map");
  std::uint32_t expect_q = 2;
  std::size_t expect_k = 2;
  std::string expect_mode = "closed";
  std::uint64_t expect_budget = kExpectBudget;
  CommonOut expect_out;
  c_expect->add_option("--q", expect_q, "Field size")->required();
  c_expect->add_option("--k", expect_k, "Code dimension")->required();
  c_expect->add_option("--mode", expect_mode, "Zero-count route")
      ->check(CLI::IsMember({"closed", "brute"}))
      ->capture_default_str();
  c_expect->add_option("--max-enum", expect_budget, "Cap on the number of enumerated forms")
      ->capture_default_str();
  add_output_flags(c_expect, expect_out);

  // shared monte-carlo flags
  struct McFlags {
    std::uint32_t q = 2;
    std::size_t k = 4;
    std::size_t n = 0, s = 0, t = 0;
    std::string model = "systematic";
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
  };

  // mc-square
  auto* c_mcsq = app.add_subcommand("mc-square", "Fraction of sampled codes whose square fills its cap");
  McFlags mcsq;
  CommonOut mcsq_out;
  c_mcsq->add_option("--q", mcsq.q, "Field size")->required();
  c_mcsq->add_option("--k", mcsq.k, "Code dimension")->required();
  auto* mcsq_n = c_mcsq->add_option("--n", mcsq.n, "Code length");
  auto* mcsq_s = c_mcsq->add_option("--s", mcsq.s, "Length = k(k+1)/2 + s (adds the failure bound)");
  auto* mcsq_t = c_mcsq->add_option("--t", mcsq.t, "Length = k(k+1)/2 - t");
  mcsq_n->excludes(mcsq_s)->excludes(mcsq_t);
  mcsq_s->excludes(mcsq_t);
  c_mcsq->add_option("--model", mcsq.model, "Sampling model")
      ->check(CLI::IsMember({"systematic", "matrix", "uniform"}))
      ->capture_default_str();
  c_mcsq->add_option("--trials", mcsq.trials, "Trials")->capture_default_str();
  c_mcsq->add_option("--seed", mcsq.seed, "Seed")->capture_default_str();
  add_output_flags(c_mcsq, mcsq_out);

  // mc-kernel
  auto* c_mck = app.add_subcommand("mc-kernel", "Kernel-size statistics of the monomial evaluation map");
  McFlags mck;
  CommonOut mck_out;
  c_mck->add_option("--q", mck.q, "Field size")->required();
  c_mck->add_option("--k", mck.k, "Code dimension")->required();
  c_mck->add_option("--n", mck.n, "Code length")->required();
  c_mck->add_option("--model", mck.model, "Sampling model")
      ->check(CLI::IsMember({"systematic", "matrix", "uniform"}))
      ->capture_default_str();
  c_mck->add_option("--trials", mck.trials, "Trials")->capture_default_str();
  c_mck->add_option("--seed", mck.seed, "Seed")->capture_default_str();
  add_output_flags(c_mck, mck_out);

  // mc-dual
  auto* c_mcd = app.add_subcommand("mc-dual", "Dual distance of the square at the saturated length");
  McFlags mcd;
  double mcd_delta = 0.1;
  std::uint64_t mcd_budget = kMinDistBudget;
  CommonOut mcd_out;
  c_mcd->add_option("--q", mcd.q, "Field size")->required();
  c_mcd->add_option("--k", mcd.k, "Code dimension")->required();
  c_mcd->add_option("--trials", mcd.trials, "Trials")->capture_default_str();
  c_mcd->add_option("--seed", mcd.seed, "Seed")->capture_default_str();
  c_mcd->add_option("--delta", mcd_delta, "Report the fraction with distance <= delta*n")
      ->capture_default_str();
  c_mcd->add_option("--max-enum", mcd_budget, "Enumeration cap for minimum distance")
      ->capture_default_str();
  add_output_flags(c_mcd, mcd_out);

  // mc-models
  auto* c_mcm = app.add_subcommand("mc-models", "Compare the three sampling models");
  McFlags mcm;
  CommonOut mcm_out;
  c_mcm->add_option("--q", mcm.q, "Field size")->required();
  c_mcm->add_option("--k", mcm.k, "Code dimension")->required();
  c_mcm->add_option("--n", mcm.n, "Code length")->required();
  c_mcm->add_option("--trials", mcm.trials, "Trials")->capture_default_str();
  c_mcm->add_option("--seed", mcm.seed, "Seed")->capture_default_str();
  add_output_flags(c_mcm, mcm_out);

  // distinguish
  auto* c_dist = app.add_subcommand("distinguish", "Flag a code whose square dimension falls short of its cap");
  std::string dist_in;
  std::size_t dist_threshold = 1;
  CommonOut dist_out;
  c_dist->add_option("--in", dist_in, "Code file")->required();
  c_dist->add_option("--threshold", dist_threshold, "Deficiency needed to flag structure")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_output_flags(c_dist, dist_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // help/version exit 0; any usage error exits 1
    return code == 0 ? 0 : 1;
  }

  if (c_square->parsed()) {
    LinearCode c = read_code_file(square_in);
    std::size_t m = c.k() * (c.k() + 1) / 2;
    std::size_t cap = std::min(c.n(), m);
    std::size_t dim = schur_square_dim(c);
    json results = {{"dim_square", dim},
                    {"cap", cap},
                    {"deficiency", cap - dim}};
    emit(render_simple(code_params(c, "square"), results, square_out.format),
         square_out.out_path);
  } else if (c_power->parsed()) {
    LinearCode c = read_code_file(power_in);
    json dims = json::array();
    json results;
    LinearCode acc = c;
    dims.push_back(acc.k());
    for (std::size_t d = 2; d <= power_d; ++d) {
      acc = schur_product(acc, c);
      dims.push_back(acc.k());
    }
    results["dims"] = dims;
    for (std::size_t d = 1; d <= power_d; ++d)
      results["dim_power_" + std::to_string(d)] = dims[d - 1];
    emit(render_simple(code_params(c, "power"), results, power_out.format),
         power_out.out_path);
  } else if (c_zeros->parsed()) {
    QuadraticForm f = read_form_file(zeros_in);
    std::uint64_t closed = zero_count_closed(f);
    std::uint64_t brute = zero_count_brute(f, zeros_budget);
    json params = {{"experiment", "zeros"}, {"q", f.ctx()->q()}, {"k", f.k()}};
    json results = {{"rank", qf_rank(f)},
                    {"zeros_closed", closed},
                    {"zeros_brute", brute},
                    {"match", closed == brute}};
    emit(render_simple(params, results, zeros_out.format), zeros_out.out_path);
  } else if (c_census->parsed()) {
    FieldPtr ctx = FieldCtx::make(census_q);
    RankCensus brute = census_brute(ctx, census_k, census_budget);
    std::ostringstream csv;
    csv << "q,k,r,count_formula,count_brute,match\n";
    json rows = json::array();
    bool all_match = true;
    for (std::size_t r = 0; r <= census_k; ++r) {
      BigInt formula = n_rank(census_k, r, census_q);
      std::uint64_t counted = brute.counts[r];
      bool match = formula == BigInt(counted);
      all_match = all_match && match;
      csv << census_q << "," << census_k << "," << r << "," << formula.str()
          << "," << counted << "," << (match ? "true" : "false") << "\n";
      rows.push_back({{"r", r},
                      {"count_formula", formula.str()},
                      {"count_brute", counted},
                      {"match", match}});
    }
    if (census_out.format == "csv") {
      emit(csv.str(), census_out.out_path);
    } else {
      json params = {{"experiment", "census"}, {"q", census_q}, {"k", census_k}};
      json results = {{"rows", rows}, {"all_match", all_match}};
      if (census_out.format == "json") {
        emit(render_simple(params, results, "json"), census_out.out_path);
      } else {
        std::ostringstream os;
        os << "params: experiment=census q=" << census_q << " k=" << census_k
           << "\n";
        for (const auto& row : rows)
          os << "r=" << row["r"] << " formula=" << row["count_formula"].get<std::string>()
             << " brute=" << row["count_brute"] << " match="
             << (row["match"].get<bool>() ? "true" : "false") << "\n";
        emit(os.str(), census_out.out_path);
      }
    }
  } else if (c_decomp->parsed()) {
    QuadraticForm f = read_form_file(decomp_in);
    Decomposition d = decompose(f);
    QuadraticForm back = recompose(f.ctx(), f.k(), d);
    bool verified = back == f;
    if (!verified) throw std::logic_error("decomposition failed to recompose");
    auto mat_rows = [](const MatFq& mt) {
      json rows = json::array();
      for (std::size_t i = 0; i < mt.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < mt.cols(); ++j) row.push_back(mt.at(i, j));
        rows.push_back(row);
      }
      return rows;
    };
    json pairs = json::array();
    for (const auto& pr : d.pairs)
      pairs.push_back({{"v1", pr.v1}, {"v2", pr.v2}, {"q1", pr.q1}, {"q2", pr.q2}});
    json residual = mat_rows(d.residual);
    json radical = mat_rows(d.radical);
    json params = {{"experiment", "decompose"}, {"q", f.ctx()->q()}, {"k", f.k()}};
    json results = {{"rank", qf_rank(f)},
                    {"radical_dim", d.radical.rows()},
                    {"num_pairs", d.pairs.size()},
                    {"residual_dim", d.residual.rows()},
                    {"verified", verified},
                    {"radical", radical},
                    {"pairs", pairs},
                    {"residual", residual}};
    emit(render_simple(params, results, decomp_out.format), decomp_out.out_path);
  } else if (c_expect->parsed()) {
    ZeroCountMode mode = expect_mode == "brute" ? ZeroCountMode::Brute
                                                : ZeroCountMode::Closed;
    ExactExpectation e = exact_expectation(expect_q, expect_k, mode, expect_budget);
    json params = {{"experiment", "expect"},
                   {"q", expect_q},
                   {"k", expect_k},
                   {"m", e.m},
                   {"mode", expect_mode}};
    json results = {{"fraction", e.fraction},
                    {"num", e.num.str()},
                    {"den", e.den.str()},
                    {"value", e.value}};
    if (expect_out.format == "text") {
      emit(e.fraction + " = " + json(e.value).dump() + "\n", expect_out.out_path);
    } else {
      emit(render_simple(params, results, expect_out.format), expect_out.out_path);
    }
  } else if (c_mcsq->parsed()) {
    SamplerModel model = model_from_name(mcsq.model);
    ExperimentReport rep;
    if (*mcsq_s) {
      rep = mc_dim_at_large_n(mcsq.q, mcsq.k, mcsq.s, model, mcsq.trials, mcsq.seed);
    } else {
      std::size_t m = mcsq.k * (mcsq.k + 1) / 2;
      std::size_t n = mcsq.n;
      if (*mcsq_t) {
        if (mcsq.t > m) throw OutOfRange("t exceeds k(k+1)/2");
        n = m - mcsq.t;
      }
      if (!*mcsq_n && !*mcsq_t) throw OutOfRange("one of --n, --s, --t is required");
      rep = mc_square_full(mcsq.q, mcsq.k, n, model, mcsq.trials, mcsq.seed);
    }
    emit_report(rep, mcsq_out.format, mcsq_out.out_path, mcsq_out.timing);
  } else if (c_mck->parsed()) {
    ExperimentReport rep = mc_kernel_size(mck.q, mck.k, mck.n,
                                          model_from_name(mck.model),
                                          mck.trials, mck.seed);
    emit_report(rep, mck_out.format, mck_out.out_path, mck_out.timing);
  } else if (c_mcd->parsed()) {
    ExperimentReport rep = mc_dual_distance(mcd.q, mcd.k, mcd.trials, mcd.seed,
                                            mcd_delta, mcd_budget);
    emit_report(rep, mcd_out.format, mcd_out.out_path, mcd_out.timing);
  } else if (c_mcm->parsed()) {
    ExperimentReport rep = mc_model_compare(mcm.q, mcm.k, mcm.n, mcm.trials,
                                            mcm.seed);
    emit_report(rep, mcm_out.format, mcm_out.out_path, mcm_out.timing);
  } else if (c_dist->parsed()) {
    LinearCode c = read_code_file(dist_in);
    DistinguisherReport r = distinguish(c, dist_threshold);
    json params = {{"experiment", "distinguish"},
                   {"q", c.ctx()->q()},
                   {"n", r.n},
                   {"k", r.k}};
    json results = {{"dim_square", r.dim_square},
                    {"expected_dim", r.expected_dim},
                    {"deficiency", r.deficiency},
                    {"threshold", r.threshold},
                    {"verdict", r.structured ? "structured" : "typical"}};
    emit(render_simple(params, results, dist_out.format), dist_out.out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const BudgetExceeded& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
