#ifndef DESCENTLAB_VERIFY_HH
#define DESCENTLAB_VERIFY_HH

#include <descentlab/cyclo.hh>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace descentlab {

enum class CheckStatus { pass, fail, info };

struct CheckResult {
  std::string suite;
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
};

class VerifyReport {
public:
  void add(const std::string& suite, const std::string& name, bool ok, const std::string& detail = "");
  void info(const std::string& suite, const std::string& name, const std::string& detail);
  void append(const VerifyReport& other);

  const std::vector<CheckResult>& results() const { return results_; }
  std::size_t failures() const;
  std::size_t passes() const;
  bool ok() const { return failures() == 0; }

  /// One "PASS|FAIL|INFO  suite  name  detail" line per result, then a summary.
  void print(std::ostream& os) const;

private:
  std::vector<CheckResult> results_;
};

struct VerifyOptions {
  /// Larger ranges, up to the full printed tables and n = 31 parity checks.
  bool desk_scale = false;
  /// Overrides the suite's own upper range where that makes sense.
  std::optional<unsigned> max_n;
  /// Restricts suites that take a single size (mod4, tables, quadratic).
  std::optional<unsigned> n;
  /// Restricts the derivative suite to one prime.
  std::optional<std::uint64_t> p;
  unsigned workers = 1;
  std::optional<std::filesystem::path> cache_dir;
};

/// Suite names accepted by run_suite, including "all".
const std::vector<std::string>& suite_names();

/// Runs one suite; throws ContractViolation for an unknown name.
VerifyReport run_suite(const std::string& name, const VerifyOptions& options = {});

/// Printed factor lists of the two tables, keyed by n.
const std::map<unsigned, std::string>& reference_unsigned_factors();
const std::map<unsigned, std::string>& reference_signed_factors();
/// Printed odd proportions, keyed by n.
const std::map<unsigned, Rational>& reference_rho();

/// "n: factors" lines (comments with '#'), as in the golden files.
std::map<unsigned, std::string> parse_golden(std::istream& is);

/// Result of comparing a scan with a printed row.
struct RowComparison {
  std::vector<CyclotomicFactor> missing;  // printed, not found
  std::vector<CyclotomicFactor> extra;    // found, not printed
  bool exact() const { return missing.empty() && extra.empty(); }
};
RowComparison compare_row(const FactorReport& report, const std::string& printed);

enum class ObservationStatus { holds, fails, outside_policy };
std::string to_string(ObservationStatus s);

struct Observation {
  std::string id;      // "i" .. "x"
  unsigned n = 0;
  bool is_signed = false;
  ObservationStatus status = ObservationStatus::holds;
  std::string detail;
};

struct ObservationOptions {
  unsigned max_n = 14;
  unsigned max_signed_n = 10;
  FactorScanOptions scan;
  std::optional<std::filesystem::path> cache_dir;
};

/// Evaluates the empirical regularities of the factor tables on fresh scans;
/// nothing here is asserted.
std::vector<Observation> observations(const ObservationOptions& options);

} // namespace descentlab

#endif
