// addlab: command-line front end. Every run is a pure function of its
// flags; the full config is echoed into the report so an artifact can be
// reproduced from itself. JSON uses ordered keys and pinned digit counts,
// so identical configs give byte-identical output.
//
// Exit codes: 0 success, 1 domain error from a module, 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "addlab/dynamics.hpp"
#include "addlab/identities.hpp"
#include "addlab/jfl.hpp"
#include "addlab/logexpr.hpp"
#include "addlab/numeric.hpp"
#include "addlab/polynomial.hpp"
#include "addlab/probes.hpp"
#include "addlab/roots.hpp"
#include "addlab/rules.hpp"
#include "addlab/triangles.hpp"
#include "addlab/version.hpp"
#include "addlab/words.hpp"

using json = nlohmann::ordered_json;
using namespace addlab;

namespace {

// Flag values that violate the flag grammar (bad range syntax, bad list
// syntax) are usage errors, not module domain errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- small parsers ---------------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

Rational parse_rational(const std::string& s) {
  try {
    auto parts = split(s, '/');
    if (parts.size() == 1) return Rational(BigInt(parts[0]));
    if (parts.size() == 2) return Rational(BigInt(parts[0]), BigInt(parts[1]));
  } catch (const std::exception&) {
  }
  throw UsageError("not a rational: '" + s + "'");
}

std::vector<Rational> parse_rational_list(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& part : split(s, ',')) out.push_back(parse_rational(part));
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& part : split(s, ',')) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(part, &pos);
      if (pos != part.size()) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("not an integer list: '" + s + "'");
    }
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& part : split(s, ',')) {
    try {
      std::size_t pos = 0;
      double v = std::stod(part, &pos);
      if (pos != part.size()) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("not a number list: '" + s + "'");
    }
  }
  return out;
}

// lo:hi:step, or a single value (one point).
struct DoubleRange {
  double lo = 0, hi = 0, step = 0;
  std::size_t grid() const {
    if (step <= 0 || hi <= lo) return 1;
    return static_cast<std::size_t>((hi - lo) / step + 0.5) + 1;
  }
  std::vector<double> values() const {
    std::size_t n = grid();
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
      v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    return v;
  }
};

DoubleRange parse_double_range(const std::string& s) {
  auto parts = split(s, ':');
  try {
    if (parts.size() == 1) {
      double v = std::stod(parts[0]);
      return {v, v, 0};
    }
    if (parts.size() == 3) {
      DoubleRange r{std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])};
      if (r.step <= 0 || r.hi < r.lo) throw UsageError("empty range: '" + s + "'");
      return r;
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
  }
  throw UsageError("range must be lo:hi:step or a single value, got '" + s + "'");
}

// lo:hi inclusive, or a single value.
std::pair<long long, long long> parse_int_range(const std::string& s) {
  auto parts = split(s, ':');
  try {
    if (parts.size() == 1) {
      long long v = std::stoll(parts[0]);
      return {v, v};
    }
    if (parts.size() == 2) {
      long long lo = std::stoll(parts[0]), hi = std::stoll(parts[1]);
      if (hi < lo) throw UsageError("empty range: '" + s + "'");
      return {lo, hi};
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
  }
  throw UsageError("range must be lo:hi or a single integer, got '" + s + "'");
}

// ---- report plumbing -------------------------------------------------------

std::string rat_str(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

std::string dbl_str(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

struct Report {
  json config = json::object();
  json result = json::object();
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  // Scalar facts that have no row shape; emitted as comment lines in CSV
  // (they are all present in the JSON result too).
  std::vector<std::pair<std::string, std::string>> csv_scalars;
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

void emit(const Report& rep, const std::string& format, unsigned digits, std::ostream& os) {
  if (format == "json") {
    json envelope;
    envelope["tool"] = "addlab";
    envelope["version"] = kVersion;
    envelope["precision_digits"] = digits;
    envelope["config"] = rep.config;
    envelope["result"] = rep.result;
    os << envelope.dump(2) << "\n";
    return;
  }
  os << "# tool = addlab\n# version = " << kVersion << "\n# precision_digits = " << digits
     << "\n";
  for (const auto& [key, value] : rep.config.items())
    os << "# config." << key << " = "
       << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  for (const auto& [key, value] : rep.csv_scalars) os << "# " << key << " = " << value << "\n";
  std::string header;
  for (std::size_t i = 0; i < rep.csv_header.size(); ++i)
    header += (i ? "," : "") + rep.csv_header[i];
  os << header << "\n";
  for (const auto& row : rep.csv_rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) line += (i ? "," : "") + csv_escape(row[i]);
    os << line << "\n";
  }
}

// ---- shared fragments ------------------------------------------------------

rulecore::RecurrenceRule rule_from_flags(const std::string& rule_text,
                                         const std::string& lags_text) {
  if (!rule_text.empty() && !lags_text.empty())
    throw UsageError("give either --rule or --lags, not both");
  if (!rule_text.empty()) return rulecore::parse_rule(rule_text);
  if (!lags_text.empty()) return rulecore::RecurrenceRule::unit(parse_int_list(lags_text));
  throw UsageError("one of --rule or --lags is required");
}

json classes_json(const std::vector<std::vector<int>>& classes) {
  json out = json::array();
  for (const auto& c : classes) out.push_back(c);
  return out;
}

std::string classes_str(const std::vector<std::vector<int>>& classes) {
  std::string out;
  for (const auto& c : classes) {
    out += "{";
    for (std::size_t i = 0; i < c.size(); ++i) out += (i ? "," : "") + std::to_string(c[i]);
    out += "}";
  }
  return out;
}

// ---- subcommands -----------------------------------------------------------

struct Ctx {
  unsigned digits = kDefaultDigits;
  std::string format = "json";
  std::string out_path;
  std::function<Report()> run;
};

void setup_seq(CLI::App& app, Ctx& ctx) {
  auto* cmd = app.add_subcommand("seq", "Generate exact terms of an additive recurrence");
  auto rule = std::make_shared<std::string>();
  auto init = std::make_shared<std::string>();
  auto count = std::make_shared<std::size_t>(10);
  auto backward = std::make_shared<std::size_t>(0);
  cmd->add_option("--rule", *rule, "Rule text, e.g. \"u[n-2]+u[n-3]\"")->required();
  cmd->add_option("--init", *init, "Comma-separated initial terms (rationals allowed)")
      ->required();
  cmd->add_option("--count", *count, "Total number of terms, init included");
  cmd->add_option("--backward", *backward, "Additionally extend this many terms backward");
  cmd->callback([&ctx, rule, init, count, backward] {
    ctx.run = [=]() {
      rulecore::RecurrenceRule r = rulecore::parse_rule(*rule);
      std::vector<Rational> init_terms = parse_rational_list(*init);
      rulecore::ExactSequence fwd = rulecore::generate_terms(r, init_terms, *count);
      rulecore::ExactSequence seq = fwd;
      if (*backward > 0) {
        rulecore::ExactSequence bwd = rulecore::backward_extend(r, init_terms, *backward);
        seq.start_index = bwd.start_index;
        seq.terms = bwd.terms;
        seq.terms.insert(seq.terms.end(), fwd.terms.begin() + init_terms.size(),
                         fwd.terms.end());
      }
      Report rep;
      rep.config = {{"subcommand", "seq"},
                    {"rule", *rule},
                    {"init", *init},
                    {"count", *count},
                    {"backward", *backward}};
      json terms = json::array();
      rep.csv_header = {"index", "value"};
      for (std::size_t i = 0; i < seq.terms.size(); ++i) {
        terms.push_back(rat_str(seq.terms[i]));
        rep.csv_rows.push_back({std::to_string(seq.index_of(i)), rat_str(seq.terms[i])});
      }
      rep.result = {{"rule", rulecore::render_rule(r)},
                    {"start_index", seq.start_index},
                    {"all_integer", seq.all_integer()},
                    {"terms", terms}};
      return rep;
    };
  });
}

void setup_roots(CLI::App& app, Ctx& ctx) {
  auto* cmd = app.add_subcommand("roots", "Dominant root and ratio limit of a recurrence");
  auto rule = std::make_shared<std::string>();
  auto lags = std::make_shared<std::string>();
  cmd->add_option("--rule", *rule, "Rule text");
  cmd->add_option("--lags", *lags, "Unit-coefficient lag set, e.g. 2,3");
  cmd->callback([&ctx, rule, lags] {
    ctx.run = [=, &ctx]() {
      rulecore::RecurrenceRule r = rule_from_flags(*rule, *lags);
      IntPolynomial p = rulecore::characteristic_polynomial(r);
      Real tol = boost::multiprecision::pow(Real(10), -static_cast<int>(ctx.digits) + 10);
      Real root = polyalgebra::dominant_root(p, Real(1), Real(1) + to_real(root_bound(p)),
                                             tol);
      Report rep;
      rep.config = {{"subcommand", "roots"}, {"rule", *rule}, {"lags", *lags}};
      rep.result = {{"rule", rulecore::render_rule(r)},
                    {"characteristic_polynomial", p.to_string()},
                    {"dominant_root", real_str(root, ctx.digits)}};
      rep.csv_header = {"quantity", "value"};
      rep.csv_rows = {{"rule", rulecore::render_rule(r)},
                      {"characteristic_polynomial", p.to_string()},
                      {"dominant_root", real_str(root, ctx.digits)}};
      if (r.positive_coeffs()) {
        std::vector<Rational> ones(r.order(), 1);
        Real via_ratio = rulecore::ratio_limit(r, ones, tol);
        Real gap = boost::multiprecision::abs(via_ratio - root);
        rep.result["ratio_limit"] = real_str(via_ratio, ctx.digits);
        rep.result["agreement_gap"] = real_str(gap, 3);
        rep.csv_rows.push_back({"ratio_limit", real_str(via_ratio, ctx.digits)});
        rep.csv_rows.push_back({"agreement_gap", real_str(gap, 3)});
      }
      return rep;
    };
  });
}

void setup_psi(CLI::App& app, Ctx& ctx) {
  auto* cmd = app.add_subcommand("psi", "One member of the grown polynomial family");
  auto k = std::make_shared<int>(1);
  auto m = std::make_shared<int>(0);
  cmd->add_option("--k", *k, "Base equation index")->required();
  cmd->add_option("--m", *m, "Growth steps")->required();
  cmd->callback([&ctx, k, m] {
    ctx.run = [=, &ctx]() {
      IntPolynomial psi = polyalgebra::build_psi(*k, *m);
      bool product_matches = psi == polyalgebra::psi_product_form(*k, *m);
      Real tol = boost::multiprecision::pow(Real(10), -static_cast<int>(ctx.digits) + 10);
      polyalgebra::PsiRootReport roots = polyalgebra::psi_real_roots(*k, *m, tol);
      Report rep;
      rep.config = {{"subcommand", "psi"}, {"k", *k}, {"m", *m}};
      json root_list = json::array();
      for (const auto& r : roots.roots) root_list.push_back(real_str(r, ctx.digits));
      rep.result = {{"polynomial", psi.to_string()},
                    {"degree", psi.degree()},
                    {"product_form_matches", product_matches},
                    {"real_roots", root_list},
                    {"has_minus_one", roots.has_minus_one},
                    {"has_sigma", roots.has_sigma},
                    {"claimed_count", roots.claimed_count},
                    {"matches_claim", roots.matches_claim}};
      if (roots.has_sigma) rep.result["sigma"] = real_str(roots.sigma, ctx.digits);
      rep.csv_header = {"quantity", "value"};
      rep.csv_rows = {{"polynomial", psi.to_string()},
                      {"degree", std::to_string(psi.degree())},
                      {"product_form_matches", product_matches ? "true" : "false"},
                      {"has_minus_one", roots.has_minus_one ? "true" : "false"},
                      {"has_sigma", roots.has_sigma ? "true" : "false"},
                      {"claimed_count", std::to_string(roots.claimed_count)},
                      {"matches_claim", roots.matches_claim ? "true" : "false"}};
      for (std::size_t i = 0; i < roots.roots.size(); ++i)
        rep.csv_rows.push_back(
            {"root[" + std::to_string(i) + "]", real_str(roots.roots[i], ctx.digits)});
      return rep;
    };
  });
}

void setup_logcat(CLI::App& app, Ctx& ctx) {
  auto* cmd = app.add_subcommand("logcat", "Verify the logarithmic identity catalog");
  auto tol = std::make_shared<std::string>("1e-10");
  cmd->add_option("--tol", *tol, "Residual tolerance");
  cmd->callback([&ctx, tol] {
    ctx.run = [=, &ctx]() {
      polyalgebra::CatalogReport cat = polyalgebra::verify_log_catalog(ctx.digits, Real(*tol));
      Report rep;
      rep.config = {{"subcommand", "logcat"}, {"tol", *tol}};
      json entries = json::array();
      rep.csv_header = {"id", "expected", "observed", "residual", "pass"};
      for (const auto& e : cat.entries) {
        entries.push_back({{"id", e.id},
                           {"statement", e.statement},
                           {"expected", rat_str(e.expected)},
                           {"observed", real_str(e.observed, ctx.digits)},
                           {"residual", real_str(e.residual, 3)},
                           {"pass", e.pass}});
        rep.csv_rows.push_back({e.id, rat_str(e.expected), real_str(e.observed, ctx.digits),
                                real_str(e.residual, 3), e.pass ? "true" : "false"});
      }
      rep.result = {{"all_pass", cat.all_pass},
                    {"entry_count", cat.entries.size()},
                    {"entries", entries}};
      rep.csv_scalars = {{"all_pass", cat.all_pass ? "true" : "false"}};
      return rep;
    };
  });
}

identities::IndexRanges ranges_from_flags(const std::string& j, const std::string& n) {
  identities::IndexRanges r;
  std::tie(r.j_lo, r.j_hi) = parse_int_range(j);
  std::tie(r.n_lo, r.n_hi) = parse_int_range(n);
  return r;
}

std::string binding_str(const std::map<std::string, long long>& b) {
  std::string out;
  for (const auto& [key, value] : b)
    out += (out.empty() ? "" : ";") + key + "=" + std::to_string(value);
  return out;
}

void setup_identities(CLI::App& app, Ctx& ctx) {
  auto* cmd = app.add_subcommand("identities", "Exact identity verification and correction");
  cmd->require_subcommand(1);
  auto id = std::make_shared<std::string>();
  auto jr = std::make_shared<std::string>("1:5");
  auto nr = std::make_shared<std::string>("2:12");

  auto* verify = cmd->add_subcommand("verify", "Evaluate an identity over a binding grid");
  verify->add_option("--id", *id, "Identity id, e.g. III")->required();
  verify->add_option("--j", *jr, "j range lo:hi");
  verify->add_option("--n", *nr, "n range lo:hi");
  verify->callback([&ctx, id, jr, nr] {
    ctx.run = [=]() {
      identities::IdentityReport r = identities::verify_identity(*id, ranges_from_flags(*jr, *nr));
      Report rep;
      rep.config = {{"subcommand", "identities verify"}, {"id", *id}, {"j", *jr}, {"n", *nr}};
      json failures = json::array();
      for (const auto& c : r.cases)
        if (!c.pass)
          failures.push_back({{"binding", binding_str(c.binding)},
                              {"lhs", rat_str(c.lhs)},
                              {"rhs", rat_str(c.rhs)}});
      rep.result = {{"id", r.id},          {"statement", r.statement},
                    {"evaluated", r.evaluated}, {"passed", r.passed},
                    {"failed", r.failed},  {"all_pass", r.all_pass()},
                    {"failures", failures}};
      rep.csv_header = {"binding", "lhs", "rhs", "pass"};
      for (const auto& c : r.cases)
        rep.csv_rows.push_back(
            {binding_str(c.binding), rat_str(c.lhs), rat_str(c.rhs), c.pass ? "true" : "false"});
      rep.csv_scalars = {{"statement", r.statement},
                         {"all_pass", r.all_pass() ? "true" : "false"}};
      return rep;
    };
  });

  auto* correct = cmd->add_subcommand("correct", "Search single-edit corrections of an identity");
  correct->add_option("--id", *id, "Identity id, e.g. VI")->required();
  correct->add_option("--j", *jr, "j range lo:hi");
  correct->add_option("--n", *nr, "n range lo:hi");
  correct->callback([&ctx, id, jr, nr] {
    ctx.run = [=]() {
      identities::CorrectionResult r =
          identities::discover_correction(*id, ranges_from_flags(*jr, *nr));
      const char* status = nullptr;
      switch (r.status) {
        case identities::CorrectionResult::Status::PrintedFormHolds: status = "printed-form-holds"; break;
        case identities::CorrectionResult::Status::UniqueCorrection: status = "unique-correction"; break;
        case identities::CorrectionResult::Status::Ambiguous: status = "ambiguous"; break;
        case identities::CorrectionResult::Status::NoneFound: status = "none-found"; break;
      }
      Report rep;
      rep.config = {{"subcommand", "identities correct"}, {"id", *id}, {"j", *jr}, {"n", *nr}};
      json passing = json::array();
      for (const auto& v : r.passing)
        passing.push_back({{"description", v.description},
                           {"statement", v.statement},
                           {"is_printed_form", v.is_printed_form}});
      rep.result = {{"id", r.id},
                    {"status", status},
                    {"variants_tried", r.variants_tried},
                    {"cases_per_variant", r.cases_per_variant},
                    {"passing", passing}};
      if (r.status == identities::CorrectionResult::Status::UniqueCorrection)
        rep.result["chosen"] = {{"description", r.chosen.description},
                                {"statement", r.chosen.statement}};
      rep.csv_header = {"quantity", "value"};
      rep.csv_rows = {{"status", status},
                      {"variants_tried", std::to_string(r.variants_tried)},
                      {"cases_per_variant", std::to_string(r.cases_per_variant)}};
      if (r.status == identities::CorrectionResult::Status::UniqueCorrection) {
        rep.csv_rows.push_back({"chosen_description", r.chosen.description});
        rep.csv_rows.push_back({"chosen_statement", r.chosen.statement});
      }
      for (const auto& v : r.passing) rep.csv_rows.push_back({"passing", v.statement});
      return rep;
    };
  });
}

void setup_triangles(CLI::App& app, Ctx& ctx) {
  auto* cmd = app.add_subcommand("triangles", "Triangle tables and diagonal-sum sequences");
  auto which = std::make_shared<std::string>();
  auto count = std::make_shared<std::size_t>(10);
  auto p = std::make_shared<int>(1);
  auto rows = std::make_shared<std::size_t>(5);
  auto cols = std::make_shared<std::size_t>(6);
  cmd->add_option("--which", *which,
                  "pascal-fib | asym | delannoy | anti-sums | shallow-sums | p-trib | "
                  "p-lucas | companion | perrin | eta")
      ->required();
  cmd->add_option("--count", *count, "Sequence length");
  cmd->add_option("--p", *p, "Slope / family parameter");
  cmd->add_option("--rows", *rows, "Delannoy rows");
  cmd->add_option("--cols", *cols, "Delannoy cols");
  cmd->callback([&ctx, which, count, p, rows, cols] {
    ctx.run = [=, &ctx]() {
      Report rep;
      rep.config = {{"subcommand", "triangles"}, {"which", *which},    {"count", *count},
                    {"p", *p},                   {"rows", *rows},      {"cols", *cols}};
      auto series_rows = [&rep](const std::string& name, const std::vector<BigInt>& v,
                                long long first_n) {
        json arr = json::array();
        for (std::size_t i = 0; i < v.size(); ++i) {
          arr.push_back(v[i].str());
          rep.csv_rows.push_back({name, std::to_string(first_n + static_cast<long long>(i)),
                                  v[i].str()});
        }
        return arr;
      };
      rep.csv_header = {"series", "n", "value"};
      if (*which == "pascal-fib") {
        std::vector<BigInt> v;
        for (std::size_t n = 1; n <= *count; ++n) v.push_back(triangles::pascal_shallow_fib(n));
        rep.result = {{"values", series_rows("pascal-fib", v, 1)}};
      } else if (*which == "asym") {
        triangles::AsymmetricTriangle t = triangles::asymmetric_triangle(*count);
        json jrows = json::array();
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
          json row = json::array();
          std::string flat;
          for (std::size_t k = 0; k < t.rows[i].size(); ++k) {
            row.push_back(t.rows[i][k].str());
            flat += (k ? " " : "") + t.rows[i][k].str();
          }
          jrows.push_back(row);
          rep.csv_rows.push_back({"row", std::to_string(i + 1), flat});
        }
        rep.result = {{"rows", jrows},
                      {"shallow_sums", series_rows("shallow-sum", t.shallow_sums, 1)}};
      } else if (*which == "delannoy") {
        triangles::DelannoySquare d(*rows, *cols);
        rep.csv_header = {"i", "j", "value"};
        json cells = json::array();
        for (std::size_t i = 0; i < *rows; ++i) {
          json row = json::array();
          for (std::size_t j = 0; j < *cols; ++j) {
            row.push_back(d.at(i, j).str());
            rep.csv_rows.push_back({std::to_string(i), std::to_string(j), d.at(i, j).str()});
          }
          cells.push_back(row);
        }
        rep.result = {{"cells", cells}};
      } else if (*which == "anti-sums") {
        auto v = triangles::delannoy_diagonal_sums(triangles::DiagonalKind::Anti, 0, *count);
        rep.result = {{"values", series_rows("anti-sum", v, 0)}};
      } else if (*which == "shallow-sums") {
        auto v = triangles::delannoy_diagonal_sums(triangles::DiagonalKind::Shallow, *p, *count);
        rep.result = {{"values", series_rows("shallow-sum", v, 1)}};
      } else if (*which == "p-trib") {
        rep.result = {{"values", series_rows("p-trib", triangles::p_tribonacci(*p, *count), 1)}};
      } else if (*which == "p-lucas") {
        rep.result = {{"values", series_rows("p-lucas", triangles::p_lucas_trib(*p, *count), 1)}};
      } else if (*which == "companion") {
        triangles::CompanionCheck c = triangles::p_trib_companion_check(*p, *count);
        rep.result = {{"p", c.p},
                      {"shift", c.shift},
                      {"as_written_holds", c.as_written_holds},
                      {"terms_checked", c.terms_checked}};
        rep.csv_header = {"quantity", "value"};
        rep.csv_rows = {{"shift", std::to_string(c.shift)},
                        {"as_written_holds", c.as_written_holds ? "true" : "false"},
                        {"terms_checked", std::to_string(c.terms_checked)}};
      } else if (*which == "perrin") {
        rep.result = {{"values", series_rows("perrin", triangles::perrin_sequence(*count), 0)}};
      } else if (*which == "eta") {
        triangles::EtaSuite s = triangles::eta_suite(*count, ctx.digits);
        json anomalies = json::array();
        for (long long n : s.nint_anomalies) anomalies.push_back(n);
        json ratios = json::array();
        for (std::size_t i = 0; i < s.ratio_w2n_over_wnvn.size(); ++i) {
          ratios.push_back(real_str(s.ratio_w2n_over_wnvn[i], 10));
          rep.csv_rows.push_back({"ratio", std::to_string(i + 5),
                                  real_str(s.ratio_w2n_over_wnvn[i], 10)});
        }
        rep.result = {{"eta", real_str(s.eta, ctx.digits)},
                      {"w", series_rows("w", s.w, 1)},
                      {"v", series_rows("v", s.v, 1)},
                      {"perrin", series_rows("perrin", s.perrin, 0)},
                      {"nint_anomalies", anomalies},
                      {"perrin_shift", s.perrin_shift},
                      {"printed_shift_holds", s.printed_shift_holds},
                      {"w_v_relation_holds", s.w_v_relation_holds},
                      {"ratio_w2n_over_wnvn", ratios}};
        rep.csv_scalars = {{"eta", real_str(s.eta, ctx.digits)},
                           {"perrin_shift", std::to_string(s.perrin_shift)},
                           {"printed_shift_holds", s.printed_shift_holds ? "true" : "false"},
                           {"w_v_relation_holds", s.w_v_relation_holds ? "true" : "false"}};
      } else {
        throw UsageError("unknown --which value '" + *which + "'");
      }
      return rep;
    };
  });
}

dynamics::ClassifyOptions classify_opts(std::size_t transient, std::size_t window, double tol,
                                        int p_max) {
  dynamics::ClassifyOptions o;
  o.transient = transient;
  o.window = window;
  o.tol = tol;
  o.p_max = p_max;
  return o;
}

void setup_dynamics(CLI::App& app, Ctx& ctx) {
  auto* cmd = app.add_subcommand("dynamics", "Two-lag quadratic map experiments");
  cmd->require_subcommand(1);
  auto lags = std::make_shared<std::string>();
  auto init = std::make_shared<std::string>();
  dynamics::ClassifyOptions defaults;
  auto transient = std::make_shared<std::size_t>(defaults.transient);
  auto window = std::make_shared<std::size_t>(defaults.window);
  auto tol = std::make_shared<double>(defaults.tol);
  auto p_max = std::make_shared<int>(defaults.p_max);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--lags", *lags, "Lag pair i,j with i > j, e.g. 3,1")->required();
    sub->add_option("--init", *init, "Initial block (defaults to 0.6,0.7,0.8 cycled)");
    sub->add_option("--transient", *transient, "Discarded prefix length");
    sub->add_option("--window", *window, "Analysis window length");
    sub->add_option("--tol", *tol, "Recurrence tolerance");
    sub->add_option("--p-max", *p_max, "Largest period searched");
  };

  auto* orbit = cmd->add_subcommand("orbit", "Classify the orbit at one parameter value");
  auto a_single = std::make_shared<double>(0);
  add_common(orbit);
  orbit->add_option("--a", *a_single, "Parameter value")->required();
  orbit->callback([&ctx, lags, init, a_single, transient, window, tol, p_max] {
    ctx.run = [=]() {
      std::vector<int> lag_pair = parse_int_list(*lags);
      if (lag_pair.size() != 2) throw UsageError("--lags wants exactly two integers");
      dynamics::LagMap map = dynamics::LagMap::rule(lag_pair[0], lag_pair[1], *a_single);
      if (!init->empty()) map.init = parse_double_list(*init);
      dynamics::OrbitReport r =
          dynamics::classify_orbit(map, classify_opts(*transient, *window, *tol, *p_max));
      Report rep;
      rep.config = {{"subcommand", "dynamics orbit"},
                    {"lags", *lags},
                    {"a", *a_single},
                    {"init", *init},
                    {"transient", *transient},
                    {"window", *window},
                    {"tol", *tol},
                    {"p_max", *p_max}};
      json witness = json::array();
      std::string witness_flat;
      for (std::size_t i = 0; i < r.witness.size(); ++i) {
        witness.push_back(r.witness[i]);
        witness_flat += (i ? ";" : "") + dbl_str(r.witness[i]);
      }
      rep.result = {{"kind", dynamics::to_string(r.kind)},
                    {"period", r.period},
                    {"distinct", r.distinct},
                    {"equality_classes", classes_json(r.equality_classes)},
                    {"transient_length", r.transient_length},
                    {"witness", witness}};
      rep.csv_header = {"quantity", "value"};
      rep.csv_rows = {{"kind", dynamics::to_string(r.kind)},
                      {"period", std::to_string(r.period)},
                      {"distinct", std::to_string(r.distinct)},
                      {"equality_classes", classes_str(r.equality_classes)},
                      {"transient_length", std::to_string(r.transient_length)},
                      {"witness", witness_flat}};
      return rep;
    };
  });

  auto* scan = cmd->add_subcommand("scan", "Sweep the parameter and list transitions");
  auto a_range = std::make_shared<std::string>();
  auto refine = std::make_shared<double>(1e-4);
  auto workers = std::make_shared<unsigned>(0);
  auto full = std::make_shared<bool>(false);
  add_common(scan);
  scan->add_option("--a", *a_range, "Parameter range lo:hi:step")->required();
  scan->add_option("--refine", *refine, "Transition bracketing tolerance");
  scan->add_option("--workers", *workers, "Worker threads (0 = hardware default)");
  scan->add_flag("--full", *full, "Emit every grid row instead of transitions only");
  scan->callback([&ctx, lags, init, a_range, refine, workers, full, transient, window, tol,
                  p_max] {
    ctx.run = [=]() {
      std::vector<int> lag_pair = parse_int_list(*lags);
      if (lag_pair.size() != 2) throw UsageError("--lags wants exactly two integers");
      DoubleRange r = parse_double_range(*a_range);
      std::vector<double> init_block = init->empty() ? std::vector<double>{} : parse_double_list(*init);
      dynamics::ScanResult scan_result = dynamics::bifurcation_scan(
          lag_pair[0], lag_pair[1], r.lo, r.hi, r.grid(), *refine, init_block,
          classify_opts(*transient, *window, *tol, *p_max), *workers);
      Report rep;
      rep.config = {{"subcommand", "dynamics scan"},
                    {"lags", *lags},
                    {"a", *a_range},
                    {"refine", *refine},
                    {"init", *init},
                    {"transient", *transient},
                    {"window", *window},
                    {"tol", *tol},
                    {"p_max", *p_max},
                    {"workers", *workers},
                    {"full", *full}};
      json transitions = json::array();
      for (const auto& t : scan_result.transitions)
        transitions.push_back({{"a", t.a},
                               {"from_kind", dynamics::to_string(t.from_kind)},
                               {"from_period", t.from_period},
                               {"to_kind", dynamics::to_string(t.to_kind)},
                               {"to_period", t.to_period}});
      rep.result = {{"grid", scan_result.rows.size()},
                    {"transition_count", scan_result.transitions.size()},
                    {"transitions", transitions}};
      if (*full) {
        json rows = json::array();
        for (const auto& row : scan_result.rows)
          rows.push_back({{"a", row.a},
                          {"kind", dynamics::to_string(row.kind)},
                          {"period", row.period},
                          {"distinct", row.distinct}});
        rep.result["rows"] = rows;
        rep.csv_header = {"a", "kind", "period", "distinct"};
        for (const auto& row : scan_result.rows)
          rep.csv_rows.push_back({dbl_str(row.a), dynamics::to_string(row.kind),
                                  std::to_string(row.period), std::to_string(row.distinct)});
      } else {
        rep.csv_header = {"a", "from_kind", "from_period", "to_kind", "to_period"};
        for (const auto& t : scan_result.transitions)
          rep.csv_rows.push_back({dbl_str(t.a), dynamics::to_string(t.from_kind),
                                  std::to_string(t.from_period), dynamics::to_string(t.to_kind),
                                  std::to_string(t.to_period)});
      }
      return rep;
    };
  });

  auto* collapse = cmd->add_subcommand("collapse", "Collapse profile over a parameter range");
  auto ca_range = std::make_shared<std::string>();
  auto n_max = std::make_shared<std::size_t>(5000);
  auto threshold = std::make_shared<double>(1e-10);
  collapse->add_option("--lags", *lags, "Lag pair i,j")->required();
  collapse->add_option("--a", *ca_range, "Parameter range lo:hi:step or single value")
      ->required();
  collapse->add_option("--init", *init, "Initial block");
  collapse->add_option("--n-max", *n_max, "Iteration budget per parameter");
  collapse->add_option("--threshold", *threshold, "Collapse threshold");
  collapse->callback([&ctx, lags, init, ca_range, n_max, threshold] {
    ctx.run = [=]() {
      std::vector<int> lag_pair = parse_int_list(*lags);
      if (lag_pair.size() != 2) throw UsageError("--lags wants exactly two integers");
      DoubleRange r = parse_double_range(*ca_range);
      std::vector<double> init_block =
          init->empty() ? std::vector<double>{0.6, 0.7, 0.8} : parse_double_list(*init);
      auto profile = dynamics::collapse_profile(lag_pair[0], lag_pair[1], r.values(),
                                                init_block, *n_max, *threshold);
      Report rep;
      rep.config = {{"subcommand", "dynamics collapse"},
                    {"lags", *lags},
                    {"a", *ca_range},
                    {"init", *init},
                    {"n_max", *n_max},
                    {"threshold", *threshold}};
      json rows = json::array();
      rep.csv_header = {"a", "collapsed", "transient_length"};
      for (const auto& row : profile) {
        rows.push_back({{"a", row.a},
                        {"collapsed", row.collapsed},
                        {"transient_length", row.transient_length}});
        rep.csv_rows.push_back({dbl_str(row.a), row.collapsed ? "true" : "false",
                                std::to_string(row.transient_length)});
      }
      rep.result = {{"rows", rows}};
      return rep;
    };
  });
}

words::WordSystem system_from_flags(const std::string& init, const std::string& lags,
                                    const std::string& order) {
  std::vector<std::string> init_words;
  for (auto& w : split(init, ',')) init_words.push_back(w);
  std::vector<int> lag_set = parse_int_list(lags);
  std::vector<int> order_list = order.empty() ? std::vector<int>{} : parse_int_list(order);
  return words::WordSystem(init_words, lag_set, order_list);
}

void setup_words(CLI::App& app, Ctx& ctx) {
  auto* cmd = app.add_subcommand("words", "Concatenation word systems");
  cmd->require_subcommand(1);
  auto init = std::make_shared<std::string>("A,AB,CA");
  auto lags = std::make_shared<std::string>("2,3");
  auto order = std::make_shared<std::string>();

  auto* gen = cmd->add_subcommand("gen", "Materialize the first words of a system");
  auto p = std::make_shared<std::size_t>(10);
  auto cap = std::make_shared<std::size_t>(words::WordSystem::kMaterializeCap);
  gen->add_option("--init", *init, "Comma-separated initial words");
  gen->add_option("--lags", *lags, "Lag set, e.g. 2,3");
  gen->add_option("--order", *order, "Concatenation order (lags in application order)");
  gen->add_option("--p", *p, "Materialize words 1..p")->required();
  gen->add_option("--cap", *cap, "Materialization length cap");
  gen->callback([&ctx, init, lags, order, p, cap] {
    ctx.run = [=]() {
      words::WordSystem sys = system_from_flags(*init, *lags, *order);
      Report rep;
      rep.config = {{"subcommand", "words gen"}, {"init", *init},  {"lags", *lags},
                    {"order", *order},           {"p", *p},        {"cap", *cap}};
      json word_list = json::array();
      rep.csv_header = {"p", "length", "word"};
      for (std::size_t i = 1; i <= *p; ++i) {
        auto w = sys.materialize(i, *cap);
        json entry = {{"p", i}, {"length", sys.length(i).str()}};
        entry["word"] = w ? json(*w) : json(nullptr);
        word_list.push_back(entry);
        rep.csv_rows.push_back({std::to_string(i), sys.length(i).str(), w ? *w : ""});
      }
      rep.result = {{"alphabet", sys.alphabet()}, {"words", word_list}};
      return rep;
    };
  });

  auto* freq = cmd->add_subcommand("freq", "Letter or k-gram frequencies and their limits");
  auto p_max = std::make_shared<std::size_t>(40);
  auto k = std::make_shared<int>(0);
  freq->add_option("--init", *init, "Comma-separated initial words");
  freq->add_option("--lags", *lags, "Lag set");
  freq->add_option("--order", *order, "Concatenation order");
  freq->add_option("--p-max", *p_max, "Last index analyzed");
  freq->add_option("--k", *k, "Gram length; 0 selects letter-limit analysis");
  freq->callback([&ctx, init, lags, order, p_max, k] {
    ctx.run = [=, &ctx]() {
      words::WordSystem sys = system_from_flags(*init, *lags, *order);
      Report rep;
      rep.config = {{"subcommand", "words freq"}, {"init", *init},     {"lags", *lags},
                    {"order", *order},            {"p_max", *p_max},   {"k", *k}};
      if (*k == 0) {
        words::LetterFrequencyReport r =
            words::letter_frequency_limits(sys, *p_max, ctx.digits);
        json letters = json::array();
        rep.csv_header = {"letter", "limit", "last_frequency", "last_delta"};
        for (const auto& l : r.letters) {
          letters.push_back({{"letter", std::string(1, l.letter)},
                             {"limit", real_str(l.aitken_limit, ctx.digits)},
                             {"last_frequency", rat_str(l.last_frequency)},
                             {"last_delta", real_str(l.last_delta, 3)}});
          rep.csv_rows.push_back({std::string(1, l.letter), real_str(l.aitken_limit, ctx.digits),
                                  rat_str(l.last_frequency), real_str(l.last_delta, 3)});
        }
        rep.result = {{"p_max", r.p_max},
                      {"letters", letters},
                      {"length_ratio", real_str(r.length_ratio, ctx.digits)},
                      {"dominant_root", real_str(r.dominant_root, ctx.digits)},
                      {"ratio_gap", real_str(r.ratio_gap, 3)}};
        rep.csv_scalars = {{"length_ratio", real_str(r.length_ratio, ctx.digits)},
                           {"dominant_root", real_str(r.dominant_root, ctx.digits)},
                           {"ratio_gap", real_str(r.ratio_gap, 3)}};
      } else {
        words::FrequencyTable table = words::kgram_frequencies(sys, *k, *p_max);
        json per_p = json::array();
        rep.csv_header = {"p", "gram", "count"};
        for (std::size_t i = 0; i < table.counts.size(); ++i) {
          json grams = json::object();
          for (const auto& [gram, count] : table.counts[i]) {
            grams[gram] = count.str();
            rep.csv_rows.push_back({std::to_string(i + 1), gram, count.str()});
          }
          per_p.push_back({{"p", i + 1}, {"grams", grams}});
        }
        rep.result = {{"k", table.k}, {"counts", per_p}};
      }
      return rep;
    };
  });

  auto* perm = cmd->add_subcommand("permA", "The prime-indexed permutation of algorithm A");
  auto n = std::make_shared<int>(0);
  auto word = std::make_shared<std::string>();
  auto terms = std::make_shared<std::size_t>(0);
  perm->add_option("--n", *n, "Permutation degree")->required();
  perm->add_option("--word", *word, "Apply the permutation to this word (length n)");
  perm->add_option("--init", *init, "Initial words for the permuted-middle system");
  perm->add_option("--terms", *terms, "Run the permuted-middle system this many terms");
  perm->callback([&ctx, n, word, terms, init] {
    ctx.run = [=]() {
      words::AlgorithmAResult r = words::algorithm_a_permutation(*n);
      Report rep;
      rep.config = {{"subcommand", "words permA"},
                    {"n", *n},
                    {"word", *word},
                    {"init", *init},
                    {"terms", *terms}};
      json perm_json = json::array();
      std::string perm_flat;
      for (std::size_t i = 0; i < r.perm.size(); ++i) {
        perm_json.push_back(r.perm[i]);
        perm_flat += (i ? "," : "") + std::to_string(r.perm[i]);
      }
      rep.result = {{"n", *n},
                    {"perm", perm_json},
                    {"prime_m", r.prime_m},
                    {"term_index", r.term_index},
                    {"degenerate", r.degenerate},
                    {"note", r.note}};
      rep.csv_header = {"quantity", "value"};
      rep.csv_rows = {{"perm", perm_flat},
                      {"prime_m", std::to_string(r.prime_m)},
                      {"term_index", std::to_string(r.term_index)},
                      {"degenerate", r.degenerate ? "true" : "false"}};
      if (!word->empty()) {
        std::string image = words::apply_permutation(*word, r.perm);
        rep.result["permuted_word"] = image;
        rep.csv_rows.push_back({"permuted_word", image});
      }
      if (*terms > 0) {
        std::vector<std::string> init_words;
        for (auto& w : split(*init, ',')) init_words.push_back(w);
        words::PermutedMiddleSystem sys = words::apply_algorithm_a_system(init_words, *terms);
        json sys_terms = json::array();
        for (const auto& t : sys.terms) sys_terms.push_back(t);
        rep.result["system"] = {{"terms", sys_terms},
                                {"steps_completed", sys.steps_completed},
                                {"hit_cap", sys.hit_cap},
                                {"stop_reason", sys.stop_reason}};
        for (const auto& t : sys.terms) rep.csv_rows.push_back({"system_term", t});
        rep.csv_rows.push_back({"stop_reason", sys.stop_reason});
      }
      return rep;
    };
  });
}

void setup_equi(CLI::App& app, Ctx& ctx) {
  auto* cmd = app.add_subcommand(
      "equi", "Fractional parts of powers: discrepancy and proximity probes");
  auto x = std::make_shared<std::string>();
  auto y = std::make_shared<std::string>();
  auto n = std::make_shared<std::size_t>(40);
  auto eps = std::make_shared<std::string>("1e-6");
  cmd->add_option("--x", *x, "Base (decimal or expression-free literal)")->required();
  cmd->add_option("--y", *y, "Second base for the proximity search");
  cmd->add_option("--n", *n, "Power count");
  cmd->add_option("--eps", *eps, "Proximity threshold");
  cmd->callback([&ctx, x, y, n, eps] {
    ctx.run = [=, &ctx]() {
      ScopedPrecision boost_prec(ctx.digits);
      Real xv(*x);
      std::optional<Real> yv;
      if (!y->empty()) yv = Real(*y);
      unsigned required =
          polyalgebra::frac_probe_required_digits(xv, yv ? &*yv : nullptr, *n);
      unsigned use = std::max(ctx.digits, required);
      ScopedPrecision probe_prec(use);
      Real xw(*x);
      std::optional<Real> yw;
      if (!y->empty()) yw = Real(*y);
      polyalgebra::FracProbeReport r =
          polyalgebra::power_frac_probe(xw, yw ? &*yw : nullptr, *n, Real(*eps), use);
      Report rep;
      rep.config = {{"subcommand", "equi"}, {"x", *x}, {"y", *y}, {"n", *n}, {"eps", *eps}};
      json fracs = json::array();
      rep.csv_header = {"n", "frac"};
      for (std::size_t i = 0; i < r.fracs.size(); ++i) {
        fracs.push_back(real_str(r.fracs[i], 20));
        rep.csv_rows.push_back({std::to_string(i + 1), real_str(r.fracs[i], 20)});
      }
      rep.result = {{"required_digits", required},
                    {"digits_used", r.digits_used},
                    {"fracs", fracs},
                    {"star_discrepancy", real_str(r.star_discrepancy, 10)},
                    {"proximity_searched", r.proximity_searched}};
      if (r.proximity_hit) rep.result["proximity_hit"] = *r.proximity_hit;
      rep.csv_scalars = {{"star_discrepancy", real_str(r.star_discrepancy, 10)}};
      if (r.proximity_hit)
        rep.csv_scalars.push_back({"proximity_hit", std::to_string(*r.proximity_hit)});
      return rep;
    };
  });
}

// The global flags (--format, --digits, --out) live on the root app; let
// them appear after a subcommand name too.
void enable_fallthrough(CLI::App* cmd) {
  cmd->fallthrough();
  for (auto* sub : cmd->get_subcommands([](const CLI::App*) { return true; }))
    enable_fallthrough(sub);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"addlab: exact experiments on additive recurrences"};
  app.require_subcommand(1);

  Ctx ctx;
  if (const char* env = std::getenv("ADDLAB_PRECISION")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 10 && v <= 10000) ctx.digits = static_cast<unsigned>(v);
  }
  app.add_option("--digits", ctx.digits,
                 "Working precision in decimal digits (env ADDLAB_PRECISION)")
      ->capture_default_str();
  app.add_option("--format", ctx.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", ctx.out_path, "Write the report here instead of stdout");

  setup_seq(app, ctx);
  setup_roots(app, ctx);
  setup_psi(app, ctx);
  setup_logcat(app, ctx);
  setup_identities(app, ctx);
  setup_triangles(app, ctx);
  setup_dynamics(app, ctx);
  setup_words(app, ctx);
  setup_equi(app, ctx);
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ScopedPrecision prec(ctx.digits);
    Report rep = ctx.run();
    if (ctx.out_path.empty()) {
      emit(rep, ctx.format, ctx.digits, std::cout);
    } else {
      std::ofstream out(ctx.out_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open output path " + ctx.out_path);
      emit(rep, ctx.format, ctx.digits, out);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
