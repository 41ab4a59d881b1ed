#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "quadrm/census.hpp"
#include "quadrm/code_distributions.hpp"
#include "quadrm/coset_spectra.hpp"
#include "quadrm/error.hpp"
#include "quadrm/field.hpp"
#include "quadrm/io.hpp"
#include "quadrm/quadratic_form.hpp"

namespace quadrm::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

struct Options {
  std::string format = "text";
  std::string output;
  std::uint64_t q = 0;
  unsigned m = 0;
  std::string family;
  std::string method = "formula";
  std::string coeffs;
  std::string file;
  std::optional<unsigned> rank;
  std::string type;
  std::string c_class;
  bool coset_weights = false;
  bool merged = false;
  bool oracle = false;
  bool exhaustive = false;
  std::string scope = "all";
  std::string q_range;
  std::string m_range;
  std::optional<std::uint64_t> max_points;
  std::optional<std::uint64_t> max_codewords;
  std::optional<std::uint64_t> max_forms;
  unsigned workers = 1;
  std::uint64_t describe_q = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string type_label(FormType t) {
  switch (t) {
    case FormType::Plus: return "+1 (plus)";
    case FormType::Minus: return "-1 (minus)";
    case FormType::Untyped: return "untyped";
  }
  return "untyped";
}

void require_field(std::uint64_t q) {
  if (q == 0) throw UsageError("--q is required");
  if (!prime_power(q)) throw UsageError("q = " + std::to_string(q) + " is not a prime power");
}

std::uint64_t points_budget(const Options& o) { return o.max_points.value_or(kDefaultMaxPoints); }

BruteForceOptions brute_options(const Options& o, std::uint64_t n) {
  BruteForceOptions b;
  b.workers = o.workers;
  if (o.max_codewords) {
    const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max() / std::max<std::uint64_t>(n, 1);
    b.max_symbol_evaluations = std::min(*o.max_codewords, cap) * n;
  }
  return b;
}

OracleOptions oracle_options(const Options& o) {
  OracleOptions opt;
  opt.workers = o.workers;
  if (o.max_points) opt.max_evaluations = *o.max_points;
  return opt;
}

CensusOptions census_options(const Options& o) {
  CensusOptions c;
  c.workers = o.workers;
  c.max_points = points_budget(o);
  if (o.max_forms) c.max_forms = *o.max_forms;
  return c;
}

RankType rank_type_from(const Options& o, std::uint64_t q) {
  if (!o.rank) throw UsageError("--rank is required");
  RankType rt{*o.rank, FormType::Plus};
  if (!o.type.empty()) {
    rt.type = parse_form_type(o.type);
  } else if (q % 2 == 0 && rt.rank % 2 == 1) {
    rt.type = FormType::Untyped;
  } else if (rt.rank % 2 == 0 && rt.rank > 0) {
    throw UsageError("--type plus|minus is required for even rank");
  }
  return rt;
}

// ---------------------------------------------------------------------------

void cmd_describe_field(const Options& o, std::ostream& data) {
  require_field(o.q);
  const FiniteField f = FiniteField::of_order(o.q);
  std::string modulus;
  for (std::size_t i = 0; i < f.modulus().size(); ++i) {
    if (i) modulus += ',';
    modulus += std::to_string(f.modulus()[i]);
  }
  if (o.format == "json") {
    ordered_json j;
    j["q"] = f.q();
    j["p"] = f.p();
    j["e"] = f.e();
    j["modulus"] = modulus;
    j["primitive_element"] = f.primitive_element().index;
    data << j.dump(2) << '\n';
    return;
  }
  data << f.describe() << '\n';
  data << "p: " << f.p() << '\n';
  data << "e: " << f.e() << '\n';
  data << "modulus: " << modulus << '\n';
  data << "primitive element: " << f.primitive_element().index << '\n';
}

void cmd_dist(const Options& o, std::ostream& data) {
  require_field(o.q);
  const CodeFamily family = parse_code_family(o.family);
  WeightDistribution wd;
  if (o.method == "formula") {
    switch (family) {
      case CodeFamily::RM2: wd = rm2_distribution(o.q, o.m); break;
      case CodeFamily::HRM2: wd = hrm2_distribution(o.q, o.m); break;
      case CodeFamily::PRM2: wd = prm2_distribution(o.q, o.m); break;
    }
  } else if (o.method == "coset") {
    if (family != CodeFamily::RM2) throw UsageError("--method coset applies to rm2 only");
    wd = coset_assembled_distribution(o.q, o.m);
  } else if (o.method == "brute") {
    wd = brute_force_distribution(family, o.q, o.m, brute_options(o, code_parameters(family, o.q, o.m).n));
  } else {
    throw UsageError("unknown --method '" + o.method + "'");
  }
  if (o.format == "json") {
    data << to_json(wd).dump(2) << '\n';
  } else if (o.format == "csv") {
    data << to_csv(wd);
  } else {
    data << weight_enumerator_text(wd) << '\n';
  }
}

QuadraticForm read_form(const Options& o) {
  if (!o.file.empty()) {
    std::ifstream in(o.file);
    if (!in) throw UsageError("cannot read " + o.file);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (text.find("q=") != std::string::npos || text.find("q =") != std::string::npos) return parse_form(text);
    require_field(o.q);
    return parse_coefficients(FiniteField::of_order(o.q), o.m, text);
  }
  require_field(o.q);
  return parse_coefficients(FiniteField::of_order(o.q), o.m, o.coeffs);
}

void cmd_classify(const Options& o, std::ostream& data) {
  const QuadraticForm form = read_form(o);
  const RankType rt = classify(form, points_budget(o));
  const BigInt zeros = zero_count_formula(rt, form.field().q(), form.m());
  const std::string canonical = format_form(canonical_form(form.field(), form.m(), rt));
  if (o.format == "json") {
    ordered_json j;
    j["q"] = form.field().q();
    j["m"] = form.m();
    j["rank"] = rt.rank;
    j["type"] = to_string(rt.type);
    if (rt.type == FormType::Untyped) {
      j["tau"] = nullptr;
    } else {
      j["tau"] = sign(rt.type);
    }
    j["zeros"] = to_decimal(zeros);
    j["canonical"] = canonical;
    data << j.dump(2) << '\n';
    return;
  }
  data << "form: " << format_form(form) << '\n';
  data << "rank: " << rt.rank << '\n';
  data << "type: " << type_label(rt.type) << '\n';
  data << "zeros: " << zeros << '\n';
  data << "canonical: " << canonical << '\n';
}

void cmd_count(const Options& o, std::ostream& data, std::ostream& err) {
  require_field(o.q);
  if (o.rank) {
    const RankType rt = rank_type_from(o, o.q);
    const BigInt count = count_forms(o.q, o.m, rt);
    if (o.q % 2 == 1 && rt.rank % 2 == 1) err << "note: odd-rank count over odd q is the total over both types\n";
    if (o.format == "json") {
      ordered_json j;
      const CensusKey key = census_key(o.q, rt);
      j["q"] = o.q;
      j["m"] = o.m;
      j["rank"] = rt.rank;
      j["type"] = to_string(key.kind);
      j["count"] = to_decimal(count);
      data << j.dump(2) << '\n';
    } else {
      data << count << '\n';
    }
    return;
  }
  const CensusTable table = o.exhaustive ? census_exhaustive(FiniteField::of_order(o.q), o.m, census_options(o))
                                         : census_formula(o.q, o.m);
  if (o.format == "json") {
    data << to_json(table).dump(2) << '\n';
    return;
  }
  data << "rank type count\n";
  for (const auto& [key, count] : table.entries) data << key.rank << ' ' << to_string(key.kind) << ' ' << count << '\n';
  data << "total " << table.total() << '\n';
}

void cmd_spectrum(const Options& o, std::ostream& data) {
  require_field(o.q);
  const RankType rt = rank_type_from(o, o.q);
  validate_rank_type(o.q, o.m, rt);
  const FiniteField field = FiniteField::of_order(o.q);
  const QuadraticForm form = canonical_form(field, o.m, rt);

  struct Block {
    std::string label;
    SpectrumMultiset values;
  };
  std::vector<Block> blocks;
  if (o.coset_weights) {
    if (o.oracle) throw UsageError("--oracle is not available with --coset-weights");
    blocks.push_back({"weights", coset_weight_multiset(o.q, o.m, rt)});
  } else if (o.merged) {
    blocks.push_back({"all", o.oracle ? spectrum_oracle_all(form, oracle_options(o)) : spectrum_merged(o.q, o.m, rt)});
  } else {
    std::vector<CosetClass> classes;
    if (o.c_class.empty()) {
      classes = coset_classes(o.q, rt.rank);
    } else {
      classes.push_back(parse_coset_class(o.c_class));
    }
    for (CosetClass c : classes) {
      const CosetQuery query{o.q, o.m, rt, c};
      blocks.push_back({std::string(to_string(c)),
                        o.oracle ? spectrum_oracle(form, c, oracle_options(o)) : spectrum_for(query)});
    }
  }

  const char* value_name = o.coset_weights ? "weight" : "zeros";
  if (o.format == "json") {
    auto arr = ordered_json::array();
    for (const auto& b : blocks) {
      CosetQuery query{o.q, o.m, rt, CosetClass::Zero};
      ordered_json j = to_json(query, b.values);
      j["c_class"] = b.label;
      arr.push_back(std::move(j));
    }
    data << (arr.size() == 1 ? arr[0] : arr).dump(2) << '\n';
    return;
  }
  for (const auto& b : blocks) {
    data << "q=" << o.q << " m=" << o.m << " rank=" << rt.rank << " type=" << to_string(rt.type)
         << " c_class=" << b.label << " population=" << b.values.population() << '\n';
    for (const auto& [value, mult] : b.values.entries()) data << "  " << value_name << '=' << value << ": " << mult << '\n';
  }
}

// ---------------------------------------------------------------------------
// verify

std::vector<std::uint64_t> parse_range(const std::string& text, const char* flag) {
  std::vector<std::uint64_t> out;
  try {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto dots = item.find("..");
      if (dots == std::string::npos) {
        out.push_back(std::stoull(item));
      } else {
        const std::uint64_t lo = std::stoull(item.substr(0, dots));
        const std::uint64_t hi = std::stoull(item.substr(dots + 2));
        if (lo > hi || hi - lo > 1000) throw UsageError("");
        for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
      }
    }
  } catch (const std::exception&) {
    throw UsageError(std::string("bad range for ") + flag + ": '" + text + "'");
  }
  if (out.empty()) throw UsageError(std::string("empty range for ") + flag);
  return out;
}

enum class Status { Pass, Fail, Skip };

struct CaseResult {
  std::string scope;
  std::string name;
  Status status = Status::Pass;
  std::string detail;
};

std::string case_name(std::uint64_t q, unsigned m) { return "q=" + std::to_string(q) + " m=" + std::to_string(m); }

// Runs a check, turning budget overruns into SKIP and any other library
// error into FAIL with the message attached.
CaseResult guarded(std::string scope, std::string name, const std::function<CaseResult()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    const Status s = e.code() == ErrorCode::BudgetExceeded ? Status::Skip : Status::Fail;
    return {std::move(scope), std::move(name), s, e.what()};
  }
}

void verify_census(std::uint64_t q, unsigned m, const Options& o, std::vector<CaseResult>& results) {
  results.push_back(guarded("census", case_name(q, m), [&] {
    const CensusTable formula = census_formula(q, m);
    const CensusTable oracle = census_exhaustive(FiniteField::of_order(q), m, census_options(o));
    CaseResult r{"census", case_name(q, m), Status::Pass, ""};
    r.detail = oracle.total().str() + " forms classified";
    if (formula.entries != oracle.entries) {
      r.status = Status::Fail;
      for (const auto& [key, count] : oracle.entries) {
        if (formula.count(key) != count) {
          r.detail += "; rank " + std::to_string(key.rank) + " " + std::string(to_string(key.kind)) + ": formula " +
                      formula.count(key).str() + " oracle " + count.str();
        }
      }
    }
    return r;
  }));
}

void verify_spectra(std::uint64_t q, unsigned m, const Options& o, std::vector<CaseResult>& results) {
  const FiniteField field = FiniteField::of_order(q);
  for (const RankType& rt : admissible_rank_types(q, m)) {
    const QuadraticForm form = canonical_form(field, m, rt);
    const std::string base = case_name(q, m) + " rank=" + std::to_string(rt.rank) + " type=" + std::string(to_string(rt.type));
    for (CosetClass c : coset_classes(q, rt.rank)) {
      const std::string name = base + " c=" + std::string(to_string(c));
      results.push_back(guarded("spectra", name, [&] {
        const bool ok = spectrum_for({q, m, rt, c}) == spectrum_oracle(form, c, oracle_options(o));
        return CaseResult{"spectra", name, ok ? Status::Pass : Status::Fail, ok ? "" : "formula and oracle differ"};
      }));
    }
    const std::string name = base + " c=all";
    results.push_back(guarded("spectra", name, [&] {
      const bool ok = spectrum_merged(q, m, rt) == spectrum_oracle_all(form, oracle_options(o));
      return CaseResult{"spectra", name, ok ? Status::Pass : Status::Fail, ok ? "" : "merged formula and oracle differ"};
    }));
  }
}

void verify_codes(std::uint64_t q, unsigned m, const Options& o, std::vector<CaseResult>& results) {
  for (CodeFamily family : {CodeFamily::RM2, CodeFamily::HRM2, CodeFamily::PRM2}) {
    const std::string name = std::string(to_string(family)) + " " + case_name(q, m);
    if (family == CodeFamily::RM2 && q == 2 && m < 2) continue;
    results.push_back(guarded("codes", name, [&] {
      CaseResult r{"codes", name, Status::Pass, ""};
      WeightDistribution formula;
      std::vector<std::pair<std::string, WeightDistribution>> others;
      switch (family) {
        case CodeFamily::RM2:
          formula = rm2_distribution(q, m);
          if (q > 2) others.emplace_back("coset-assembled", coset_assembled_distribution(q, m));
          break;
        case CodeFamily::HRM2: formula = hrm2_distribution(q, m); break;
        case CodeFamily::PRM2:
          formula = prm2_distribution(q, m);
          others.emplace_back("scaled hrm2", hrm_to_prm(hrm2_distribution(q, m + 1)));
          break;
      }
      formula.check_invariants();
      std::string agreed = "formula";
      try {
        others.emplace_back("brute force",
                            brute_force_distribution(family, q, m, brute_options(o, formula.params.n)));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        r.detail = "brute force skipped (budget); ";
      }
      for (const auto& [label, wd] : others) {
        if (wd == formula) {
          agreed += " = " + label;
        } else {
          r.status = Status::Fail;
          r.detail += label + " disagrees with formula; ";
        }
      }
      if (r.status == Status::Pass) r.detail += agreed;
      return r;
    }));
  }
}

int cmd_verify(const Options& o, std::ostream& data) {
  const bool all = o.scope == "all";
  if (!all && o.scope != "census" && o.scope != "spectra" && o.scope != "codes") {
    throw UsageError("unknown --scope '" + o.scope + "'");
  }
  const auto qs = parse_range(o.q_range, "--q");
  const auto ms = parse_range(o.m_range, "--m");
  for (std::uint64_t q : qs) {
    if (!prime_power(q) || q > FiniteField::kMaxOrder) throw UsageError(std::to_string(q) + " is not a supported prime power");
  }
  for (std::uint64_t m : ms) {
    if (m < 1 || m > 64) throw UsageError("m must be in 1..64");
  }

  std::vector<CaseResult> results;
  for (std::uint64_t q : qs) {
    for (std::uint64_t mm : ms) {
      const auto m = static_cast<unsigned>(mm);
      if (all || o.scope == "census") verify_census(q, m, o, results);
      if (all || o.scope == "spectra") verify_spectra(q, m, o, results);
      if (all || o.scope == "codes") verify_codes(q, m, o, results);
    }
  }

  std::size_t passed = 0, failed = 0, skipped = 0;
  for (const auto& r : results) {
    passed += r.status == Status::Pass;
    failed += r.status == Status::Fail;
    skipped += r.status == Status::Skip;
  }
  auto status_name = [](Status s) { return s == Status::Pass ? "PASS" : s == Status::Fail ? "FAIL" : "SKIP"; };
  if (o.format == "json") {
    ordered_json j;
    auto cases = ordered_json::array();
    for (const auto& r : results) {
      cases.push_back({{"scope", r.scope}, {"case", r.name}, {"status", status_name(r.status)}, {"detail", r.detail}});
    }
    j["cases"] = std::move(cases);
    j["passed"] = passed;
    j["failed"] = failed;
    j["skipped"] = skipped;
    data << j.dump(2) << '\n';
  } else {
    for (const auto& r : results) {
      data << status_name(r.status) << ' ' << r.scope << ' ' << r.name;
      if (!r.detail.empty()) data << " (" << r.detail << ')';
      data << '\n';
    }
    data << "summary: " << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
  }
  return failed == 0 ? kExitOk : kExitMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact quadratic-form and second-order Reed-Muller weight computations over GF(q)", "quadrm"};
  app.require_subcommand(0, 1);
  app.add_option("--describe-field", o.describe_q, "Print the field model for GF(q) and exit");

  auto add_common = [&](CLI::App* sub, bool needs_qm) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--output", o.output, "Write data to this file instead of stdout");
    sub->add_option("--workers", o.workers, "Worker threads for exhaustive passes")->check(CLI::Range(1u, 256u));
    if (needs_qm) {
      sub->add_option("--q", o.q, "Field order (a prime power)")->required();
      sub->add_option("--m", o.m, "Number of variables")->required();
    }
  };

  auto* describe = app.add_subcommand("describe-field", "Field model: modulus (constant term first) and generator");
  add_common(describe, false);
  describe->add_option("--q", o.q, "Field order (a prime power)")->required();

  auto* dist = app.add_subcommand("dist", "Weight distribution of rm2, hrm2 or prm2");
  add_common(dist, true);
  dist->add_option("--family", o.family, "rm2 | hrm2 | prm2")->required()->check(CLI::IsMember({"rm2", "hrm2", "prm2"}));
  dist->add_option("--method", o.method, "formula | coset | brute")->check(CLI::IsMember({"formula", "coset", "brute"}));
  dist->add_option("--max-codewords", o.max_codewords, "Codeword budget for --method brute");

  auto* cls = app.add_subcommand("classify", "Rank and type of a quadratic form");
  add_common(cls, false);
  cls->add_option("--q", o.q, "Field order (a prime power)");
  cls->add_option("--m", o.m, "Number of variables");
  auto* coeffs = cls->add_option("--coeffs", o.coeffs, "Entries 'c[i][j]=<index>' separated by ';' or ','");
  auto* file = cls->add_option("--file", o.file, "File holding a form ('q=<q> m=<m>; ...' or bare entries)");
  coeffs->excludes(file);
  cls->add_option("--max-points", o.max_points, "Point budget for exhaustive zero counts");

  auto* count = app.add_subcommand("count", "Number of quadratic forms per rank and type");
  add_common(count, true);
  count->add_option("--rank", o.rank, "Restrict to one rank");
  count->add_option("--type", o.type, "plus | minus | untyped");
  count->add_flag("--exhaustive", o.exhaustive, "Classify every form instead of using the closed form");
  count->add_option("--max-points", o.max_points, "Point budget per classification");
  count->add_option("--max-forms", o.max_forms, "Form budget for --exhaustive");

  auto* spectrum = app.add_subcommand("spectrum", "Zero counts of Q + L + c over linear L for a canonical Q");
  add_common(spectrum, true);
  spectrum->add_option("--rank", o.rank, "Rank of Q")->required();
  spectrum->add_option("--type", o.type, "plus | minus | untyped");
  spectrum->add_option("--c-class", o.c_class, "zero | square | nonsquare | nonzero (default: every class)");
  spectrum->add_flag("--merged", o.merged, "Merge over all constants c");
  spectrum->add_flag("--coset-weights", o.coset_weights, "Weights of the coset Q + RM(1,m)");
  spectrum->add_flag("--oracle", o.oracle, "Count by brute force instead of the closed form");
  spectrum->add_option("--max-points", o.max_points, "Evaluation budget for --oracle");

  auto* verify = app.add_subcommand("verify", "Compare closed forms against exhaustive oracles");
  add_common(verify, false);
  verify->add_option("--scope", o.scope, "census | spectra | codes | all")
      ->check(CLI::IsMember({"census", "spectra", "codes", "all"}));
  verify->add_option("--q", o.q_range, "Field orders: '3', '2,3,4' or '2..5'")->required();
  verify->add_option("--m", o.m_range, "Variable counts: '2', '1,2' or '1..4'")->required();
  verify->add_option("--max-points", o.max_points, "Point budget for classification and spectrum oracles");
  verify->add_option("--max-codewords", o.max_codewords, "Codeword budget for brute-force enumeration");
  verify->add_option("--max-forms", o.max_forms, "Form budget for exhaustive censuses");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const auto* failing = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << "error: " << e.what() << '\n' << failing->help();
    return kExitUsage;
  }

  std::ostringstream data;
  int code = kExitOk;
  try {
    if (*describe) {
      cmd_describe_field(o, data);
    } else if (*dist) {
      cmd_dist(o, data);
    } else if (*cls) {
      cmd_classify(o, data);
    } else if (*count) {
      cmd_count(o, data, err);
    } else if (*spectrum) {
      cmd_spectrum(o, data);
    } else if (*verify) {
      code = cmd_verify(o, data);
    } else if (o.describe_q != 0) {
      o.q = o.describe_q;
      cmd_describe_field(o, data);
    } else {
      out << app.help();
      return kExitUsage;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_internal() ? kExitInternal : kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }

  if (o.output.empty()) {
    out << data.str();
  } else {
    std::ofstream file_out(o.output, std::ios::binary);
    if (!file_out || !(file_out << data.str())) {
      err << "error: cannot write " << o.output << '\n';
      return kExitUsage;
    }
  }
  return code;
}

}  // namespace quadrm::cli
