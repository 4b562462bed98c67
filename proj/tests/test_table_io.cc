#include <descentlab/table_io.hh>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace descentlab;

namespace {

std::filesystem::path scratch_dir(const std::string& tag)
{
  auto dir = std::filesystem::temp_directory_path() /
             ("descentlab-test-" + tag + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

DescentTable parse(const std::string& text)
{
  std::istringstream in(text);
  return read_table(in);
}

} // namespace

TEST_CASE("write then read gives the same table")
{
  for (bool s : {false, true})
    for (unsigned n = 1; n <= 9; ++n) {
      const auto t = beta_table(n, s);
      std::stringstream io;
      write_table(io, t);
      CHECK(read_table(io) == t);
    }
  // entries above 64 bits survive
  const auto big = beta_table(22, false);
  std::stringstream io;
  write_table(io, big);
  CHECK(read_table(io) == big);
}

TEST_CASE("file format")
{
  std::ostringstream os;
  write_table(os, beta_table(3, false));
  CHECK(os.str() == "descentlab-table v1 n=3 signed=0\n1\n2\n2\n1\n");
  CHECK(cache_file_name(12, true) == "descentlab-v1-n12-s1.txt");
}

TEST_CASE("malformed files are rejected")
{
  CHECK_THROWS_AS(parse(""), CorruptCacheError);
  CHECK_THROWS_AS(parse("descentlab-table v2 n=3 signed=0\n1\n2\n2\n1\n"), CorruptCacheError);
  CHECK_THROWS_AS(parse("descentlab-table v1 n=3 signed=0 extra\n1\n2\n2\n1\n"), CorruptCacheError);
  CHECK_THROWS_AS(parse("descentlab-table v1 n=3 signed=0\n1\n2\n2\n"), CorruptCacheError);
  CHECK_THROWS_AS(parse("descentlab-table v1 n=3 signed=0\n1\n2\n2\n1\n7\n"), CorruptCacheError);
  CHECK_THROWS_AS(parse("descentlab-table v1 n=3 signed=0\n1\n2\n-2\n1\n"), CorruptCacheError);
  CHECK_THROWS_AS(parse("descentlab-table v1 n=3 signed=0\n1\n2\n3\n1\n"), CorruptCacheError);
  CHECK_THROWS_AS(parse("descentlab-table v1 n=3 signed=0\n1\n2\nx\n1\n"), CorruptCacheError);
  CHECK(parse("descentlab-table v1 n=3 signed=0\n1\n2\n2\n1\n\n") == beta_table(3, false));
}

TEST_CASE("cache is written, reused and repaired")
{
  const auto dir = scratch_dir("cache");
  const auto file = dir / cache_file_name(6, false);

  std::ostringstream warn;
  const auto first = load_or_build(6, false, dir, {}, 1, &warn);
  CHECK(std::filesystem::exists(file));
  CHECK(warn.str().empty());
  CHECK(load_or_build(6, false, dir, {}, 1, &warn) == first);
  CHECK(warn.str().empty());

  {
    std::ofstream out(file, std::ios::trunc);
    out << "descentlab-table v1 n=6 signed=0\n1\n5\n";
  }
  CHECK(load_or_build(6, false, dir, {}, 1, &warn) == first);
  CHECK(warn.str().find("corrupt cache file") != std::string::npos);
  std::ifstream again(file);
  CHECK(read_table(again) == first);

  // a valid table stored under the wrong name is not reused
  {
    std::ofstream out(dir / cache_file_name(5, false), std::ios::trunc);
    write_table(out, beta_table(4, false));
  }
  std::ostringstream warn2;
  CHECK(load_or_build(5, false, dir, {}, 1, &warn2) == beta_table(5, false));
  CHECK(warn2.str().find("different table") != std::string::npos);

  CHECK(load_or_build(4, true, std::nullopt) == beta_table(4, true));
  std::filesystem::remove_all(dir);
}

TEST_CASE("limits still apply through the cache")
{
  CHECK_THROWS_AS(load_or_build(30, false, std::nullopt), ResourceLimitError);
}
