#ifndef DESCENTLAB_TABLE_IO_HH
#define DESCENTLAB_TABLE_IO_HH

#include <descentlab/descent.hh>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace descentlab {

class CorruptCacheError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Header `descentlab-table v1 n=<n> signed=<0|1>`, then one decimal entry
/// per line in increasing mask order.
void write_table(std::ostream& os, const DescentTable& table);
DescentTable read_table(std::istream& is);

std::string cache_file_name(unsigned n, bool is_signed);

/// $DESCENTLAB_CACHE when set and nonempty.
std::optional<std::filesystem::path> default_cache_dir();

/// Loads the table from the cache directory when a valid file is present,
/// otherwise computes it and writes it there. A corrupt file is reported on
/// `warn` and replaced.
DescentTable load_or_build(unsigned n, bool is_signed,
                           const std::optional<std::filesystem::path>& cache_dir,
                           const DescentLimits& limits = {}, unsigned workers = 1,
                           std::ostream* warn = nullptr);

} // namespace descentlab

#endif
