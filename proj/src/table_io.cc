#include <descentlab/table_io.hh>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace descentlab {

namespace {

Word128 parse_entry(const std::string& line)
{
  if (line.empty() || line.find_first_not_of("0123456789") != std::string::npos)
    throw CorruptCacheError("table entry is not a decimal integer: '" + line + "'");
  ExactInt v(line, 10);
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 127)
    throw CorruptCacheError("table entry too large: " + line);
  ExactInt hi = v >> 64;
  ExactInt lo = v - (hi << 64);
  return (static_cast<Word128>(hi.get_ui()) << 64) | static_cast<Word128>(lo.get_ui());
}

} // namespace

void write_table(std::ostream& os, const DescentTable& table)
{
  os << "descentlab-table v1 n=" << table.n() << " signed=" << (table.is_signed() ? 1 : 0)
     << '\n';
  for (Word128 v : table.raw_values())
    os << to_string(v) << '\n';
}

DescentTable read_table(std::istream& is)
{
  std::string header;
  if (!std::getline(is, header))
    throw CorruptCacheError("missing table header");
  unsigned n = 0;
  int s = -1;
  char tail = 0;
  if (std::sscanf(header.c_str(), "descentlab-table v1 n=%u signed=%d%c", &n, &s, &tail) != 2 ||
      (s != 0 && s != 1) || n == 0 || n > 40)
    throw CorruptCacheError("bad table header: '" + header + "'");
  const bool is_signed = s == 1;
  const unsigned universe = is_signed ? n : n - 1;
  const std::size_t size = std::size_t{1} << universe;
  std::vector<Word128> values;
  values.reserve(size);
  std::string line;
  while (values.size() < size && std::getline(is, line))
    values.push_back(parse_entry(line));
  if (values.size() != size)
    throw CorruptCacheError("table truncated: expected " + std::to_string(size) + " entries");
  while (std::getline(is, line))
    if (!line.empty())
      throw CorruptCacheError("trailing data after table entries");
  try {
    DescentTable t(n, is_signed, std::move(values));
    if (t.total() != (is_signed ? pow2(n) * factorial(n) : factorial(n)))
      throw CorruptCacheError("table entries do not sum to the group order");
    return t;
  } catch (const ContractViolation& e) {
    throw CorruptCacheError(e.what());
  }
}

std::string cache_file_name(unsigned n, bool is_signed)
{
  return "descentlab-v1-n" + std::to_string(n) + "-s" + (is_signed ? "1" : "0") + ".txt";
}

std::optional<std::filesystem::path> default_cache_dir()
{
  const char* env = std::getenv("DESCENTLAB_CACHE");
  if (env == nullptr || *env == '\0')
    return std::nullopt;
  return std::filesystem::path(env);
}

DescentTable load_or_build(unsigned n, bool is_signed,
                           const std::optional<std::filesystem::path>& cache_dir,
                           const DescentLimits& limits, unsigned workers, std::ostream* warn)
{
  std::filesystem::path file;
  if (cache_dir) {
    file = *cache_dir / cache_file_name(n, is_signed);
    std::ifstream in(file);
    if (in) {
      try {
        DescentTable t = read_table(in);
        if (t.n() == n && t.is_signed() == is_signed)
          return t;
        if (warn)
          *warn << "warning: cache file " << file.string() << " holds a different table; recomputing\n";
      } catch (const CorruptCacheError& e) {
        if (warn)
          *warn << "warning: corrupt cache file " << file.string() << " (" << e.what()
                << "); recomputing\n";
      }
    }
  }
  DescentTable t = beta_table(n, is_signed, limits, workers);
  if (cache_dir) {
    std::filesystem::create_directories(*cache_dir);
    const auto tmp = file.string() + ".tmp";
    {
      std::ofstream out(tmp);
      write_table(out, t);
      if (!out)
        throw std::runtime_error("cannot write cache file " + tmp);
    }
    std::filesystem::rename(tmp, file);
  }
  return t;
}

} // namespace descentlab
