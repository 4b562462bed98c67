#include <descentlab/cyclo.hh>
#include <descentlab/table_io.hh>
#include <descentlab/verify.hh>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

using namespace descentlab;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_mismatch = 1;
constexpr int exit_usage = 2;
constexpr int exit_resource = 3;

struct Config {
  std::optional<unsigned> n;
  std::optional<unsigned> max_n;
  std::optional<unsigned> max_signed_n;
  bool is_signed = false;
  std::uint64_t max_index = 10000;
  unsigned multiplicity = 3;
  std::string policy = "heuristic";
  unsigned workers = 1;
  std::optional<std::string> cache_dir;
  std::string format = "text";
  std::optional<std::string> golden;
  std::optional<std::string> out;
  std::string suite;
  std::optional<std::uint64_t> p;
  bool desk_scale = false;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<std::filesystem::path> cache_dir_of(const Config& c)
{
  if (c.cache_dir)
    return std::filesystem::path(*c.cache_dir);
  return default_cache_dir();
}

// Output goes to --out when given, stdout otherwise.
class Sink {
public:
  explicit Sink(const std::optional<std::string>& path)
  {
    if (path && *path != "-") {
      file_.open(*path);
      if (!file_)
        throw UsageError("cannot open " + *path + " for writing");
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

std::string csv_field(const std::string& s)
{
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string r = "\"";
  for (char ch : s)
    r += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return r + "\"";
}

// --------------------------------------------------------------- table

int cmd_table(const Config& c)
{
  if (!c.n)
    throw UsageError("table needs --n");
  const unsigned n = *c.n;
  const auto table = load_or_build(n, c.is_signed, cache_dir_of(c), {}, c.workers, &std::cerr);
  const ExactInt order = c.is_signed ? pow2(n) * factorial(n) : factorial(n);
  const ExactInt euler = c.is_signed ? signed_euler_number(n) : euler_number(n);
  const bool sum_ok = table.total() == order;
  const bool max_ok = table.max() == euler;

  const std::string path = c.out ? *c.out : cache_file_name(n, c.is_signed);
  if (path == "-") {
    write_table(std::cout, table);
  } else {
    std::ofstream f(path);
    if (!f)
      throw UsageError("cannot open " + path + " for writing");
    write_table(f, table);
  }

  std::ostream& os = path == "-" ? std::cerr : std::cout;
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["schema"] = "descentlab/1";
    j["n"] = n;
    j["signed"] = c.is_signed;
    j["entries"] = table.size();
    j["sum"] = table.total().get_str();
    j["sum_expected"] = order.get_str();
    j["max"] = table.max().get_str();
    j["max_expected"] = euler.get_str();
    j["file"] = path;
    os << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    os << "n,signed,entries,sum,sum_expected,max,max_expected,file\n"
       << n << ',' << c.is_signed << ',' << table.size() << ',' << table.total().get_str() << ','
       << order.get_str() << ',' << table.max().get_str() << ',' << euler.get_str() << ','
       << csv_field(path) << '\n';
  } else {
    os << "n=" << n << " signed=" << c.is_signed << " entries=" << table.size() << '\n'
       << "sum=" << table.total().get_str() << (sum_ok ? " (= " : " (expected ") << order.get_str()
       << (c.is_signed ? ", 2^n n!)" : ", n!)") << '\n'
       << "max=" << table.max().get_str() << (max_ok ? " (= " : " (expected ") << euler.get_str()
       << (c.is_signed ? ", Springer number)" : ", Euler number)") << '\n'
       << "written " << path << '\n';
  }
  return sum_ok && max_ok ? exit_ok : exit_mismatch;
}

// --------------------------------------------------------------- rho

std::string odd_factorization(ExactInt v)
{
  if (v < 0)
    v = -v;
  while (v != 0 && mpz_even_p(v.get_mpz_t()))
    v /= 2;
  if (v <= 1)
    return "1";
  std::string out;
  for (unsigned long d = 3; v > 1; d += 2) {
    while (v % d == 0) {
      out += (out.empty() ? "" : "*") + std::to_string(d);
      v /= d;
    }
    if (ExactInt(d) * d > v && v > 1) {
      out += (out.empty() ? "" : "*") + v.get_str();
      break;
    }
  }
  return out;
}

int cmd_rho(const Config& c)
{
  std::vector<unsigned> ns;
  if (c.n)
    ns.push_back(*c.n);
  else if (c.max_n)
    for (unsigned n = 1; n <= *c.max_n; ++n)
      ns.push_back(n);
  else
    throw UsageError("rho needs --n or --max-n");

  Sink sink(c.out);
  auto& os = sink.os();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  if (c.format == "csv")
    os << "n,popcount,rho,half_minus_rho,odd_part_factors\n";
  for (unsigned n : ns) {
    const Rational r = rho(n);
    const Rational diff = Rational(1, 2) - r;
    const unsigned k = static_cast<unsigned>(std::popcount(n));
    const std::string fac = odd_factorization(diff.get_num());
    if (c.format == "json") {
      rows.push_back({{"n", n}, {"popcount", k}, {"rho", format_dyadic(r)},
                      {"half_minus_rho", format_dyadic(diff)}, {"odd_part_factors", fac}});
    } else if (c.format == "csv") {
      os << n << ',' << k << ',' << format_dyadic(r) << ',' << format_dyadic(diff) << ',' << fac << '\n';
    } else {
      os << "n=" << n << " popcount=" << k << " rho=" << format_dyadic(r)
         << " 1/2-rho=" << format_dyadic(diff);
      if (diff != 0)
        os << " (odd part " << fac << ")";
      os << '\n';
    }
  }
  if (c.format == "json")
    os << nlohmann::ordered_json{{"schema", "descentlab/1"}, {"rho", rows}}.dump(2) << '\n';
  return exit_ok;
}

// --------------------------------------------------------------- factors

int cmd_factors(const Config& c)
{
  std::vector<unsigned> ns;
  if (c.n)
    ns.push_back(*c.n);
  else if (c.max_n)
    for (unsigned n = c.is_signed ? 2 : 3; n <= *c.max_n; ++n)
      ns.push_back(n);
  else
    throw UsageError("factors needs --n or --max-n");

  FactorScanOptions opts;
  opts.bound = c.max_index;
  opts.max_multiplicity = c.multiplicity;
  opts.policy = parse_policy(c.policy);
  opts.workers = c.workers;

  std::map<unsigned, std::string> golden;
  if (c.golden) {
    std::ifstream in(*c.golden);
    if (!in)
      throw UsageError("cannot read golden file " + *c.golden);
    golden = parse_golden(in);
  }

  Sink sink(c.out);
  auto& os = sink.os();
  if (c.format == "csv")
    os << "n,signed,policy,bound,m,multiplicity\n";
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  bool mismatch = false;
  for (unsigned n : ns) {
    const auto table = load_or_build(n, c.is_signed, cache_dir_of(c), {}, c.workers, &std::cerr);
    const auto rep = factor_scan(table, opts);
    if (c.format == "json") {
      reports.push_back(nlohmann::ordered_json::parse(rep.to_json()));
    } else if (c.format == "csv") {
      for (const auto& f : rep.factors)
        os << n << ',' << rep.is_signed << ',' << policy_name(rep.policy) << ',' << rep.bound << ','
           << f.m << ',' << f.multiplicity << '\n';
    } else {
      os << rep.factor_string() << '\n';
    }
    if (c.golden) {
      auto it = golden.find(n);
      if (it == golden.end()) {
        std::cerr << "golden: no row for n=" << n << '\n';
        continue;
      }
      const auto cmp = compare_row(rep, it->second);
      if (!cmp.exact()) {
        mismatch = true;
        std::cerr << "golden mismatch n=" << n << ":";
        for (const auto& f : cmp.missing)
          std::cerr << " missing Phi_" << f.m << "^" << f.multiplicity;
        for (const auto& f : cmp.extra)
          std::cerr << " extra Phi_" << f.m << "^" << f.multiplicity;
        std::cerr << '\n';
      }
    }
  }
  if (c.format == "json")
    os << (reports.size() == 1 ? reports[0] : reports).dump(2) << '\n';
  return mismatch ? exit_mismatch : exit_ok;
}

// --------------------------------------------------------------- verify

int cmd_verify(const Config& c)
{
  if (c.suite.empty())
    throw UsageError("verify needs --suite");
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), c.suite) == names.end()) {
    std::ostringstream msg;
    msg << "unknown suite '" << c.suite << "'; known:";
    for (const auto& s : names)
      msg << ' ' << s;
    throw UsageError(msg.str());
  }
  VerifyOptions opts;
  opts.desk_scale = c.desk_scale;
  opts.max_n = c.max_n;
  opts.n = c.n;
  opts.p = c.p;
  opts.workers = c.workers;
  opts.cache_dir = cache_dir_of(c);
  const auto report = run_suite(c.suite, opts);

  Sink sink(c.out);
  auto& os = sink.os();
  auto status = [](CheckStatus s) {
    return s == CheckStatus::pass ? "pass" : s == CheckStatus::fail ? "fail" : "info";
  };
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["schema"] = "descentlab/1";
    j["suite"] = c.suite;
    j["passed"] = report.passes();
    j["failed"] = report.failures();
    j["results"] = nlohmann::ordered_json::array();
    for (const auto& r : report.results())
      j["results"].push_back({{"suite", r.suite}, {"name", r.name}, {"status", status(r.status)},
                              {"detail", r.detail}});
    os << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    os << "suite,name,status,detail\n";
    for (const auto& r : report.results())
      os << csv_field(r.suite) << ',' << csv_field(r.name) << ',' << status(r.status) << ','
         << csv_field(r.detail) << '\n';
  } else {
    report.print(os);
  }
  return report.ok() ? exit_ok : exit_mismatch;
}

// --------------------------------------------------------------- observations

int cmd_observations(const Config& c)
{
  ObservationOptions opts;
  if (c.max_n)
    opts.max_n = *c.max_n;
  if (c.max_signed_n)
    opts.max_signed_n = *c.max_signed_n;
  opts.scan.bound = c.max_index;
  opts.scan.max_multiplicity = c.multiplicity;
  opts.scan.policy = parse_policy(c.policy);
  opts.scan.workers = c.workers;
  opts.cache_dir = cache_dir_of(c);
  const auto obs = observations(opts);

  Sink sink(c.out);
  auto& os = sink.os();
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["schema"] = "descentlab/1";
    j["policy"] = c.policy;
    j["bound"] = c.max_index;
    j["observations"] = nlohmann::ordered_json::array();
    for (const auto& o : obs)
      j["observations"].push_back({{"id", o.id}, {"n", o.n}, {"signed", o.is_signed},
                                   {"status", to_string(o.status)}, {"detail", o.detail}});
    os << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    os << "id,n,signed,status,detail\n";
    for (const auto& o : obs)
      os << o.id << ',' << o.n << ',' << o.is_signed << ',' << to_string(o.status) << ','
         << csv_field(o.detail) << '\n';
  } else {
    for (const auto& o : obs) {
      os << "(" << o.id << ") n=" << o.n << (o.is_signed ? " signed" : "") << ": "
         << to_string(o.status);
      if (!o.detail.empty())
        os << "  " << o.detail;
      os << '\n';
    }
  }
  return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Exact descent set statistics and descent set polynomial factors"};
  app.require_subcommand(1);
  Config c;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--cache-dir", c.cache_dir, "table cache directory (default $DESCENTLAB_CACHE)");
    sub->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
    sub->add_option("--out", c.out, "output path ('-' for stdout)");
  };
  auto scan = [&](CLI::App* sub) {
    sub->add_option("--max-index", c.max_index, "largest cyclotomic index tried")
      ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));
    sub->add_option("--multiplicity", c.multiplicity, "largest multiplicity tested")
      ->check(CLI::Range(1u, 64u));
    sub->add_option("--policy", c.policy, "candidate policy")
      ->check(CLI::IsMember({"heuristic", "exhaustive"}));
  };

  auto* table = app.add_subcommand("table", "build or load a descent table and write it");
  table->add_option("--n", c.n, "permutation size")->required();
  table->add_flag("--signed", c.is_signed, "signed permutations");
  common(table);

  auto* rho_cmd = app.add_subcommand("rho", "odd proportion of the unsigned table");
  rho_cmd->add_option("--n", c.n, "single n");
  rho_cmd->add_option("--max-n", c.max_n, "all n from 1");
  common(rho_cmd);

  auto* factors = app.add_subcommand("factors", "cyclotomic factors of the descent set polynomial");
  factors->add_option("--n", c.n, "single n");
  factors->add_option("--max-n", c.max_n, "all n up to this");
  factors->add_flag("--signed", c.is_signed, "signed permutations");
  factors->add_option("--golden", c.golden, "file of expected rows");
  scan(factors);
  common(factors);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", c.suite, "suite name")->required();
  verify->add_option("--max-n", c.max_n, "upper range override");
  verify->add_option("--n", c.n, "single size for mod4 and tables");
  verify->add_option("--p", c.p, "single prime for the derivative suite");
  verify->add_flag("--desk-scale", c.desk_scale, "full ranges");
  common(verify);

  auto* obs = app.add_subcommand("observations", "evaluate the empirical regularities of the factor tables");
  obs->add_option("--max-n", c.max_n, "largest unsigned n");
  obs->add_option("--max-signed-n", c.max_signed_n, "largest signed n");
  scan(obs);
  common(obs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_usage;
  }

  try {
    if (table->parsed())
      return cmd_table(c);
    if (rho_cmd->parsed())
      return cmd_rho(c);
    if (factors->parsed())
      return cmd_factors(c);
    if (verify->parsed())
      return cmd_verify(c);
    if (obs->parsed())
      return cmd_observations(c);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const ContractViolation& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return exit_resource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_mismatch;
  }
  return exit_usage;
}
