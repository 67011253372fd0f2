#include <doctest.h>

#include "neqcft/cache.hpp"
#include "neqcft/virasoro.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace neqcft;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("neqcft-cache-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("cached L_n round-trips exactly") {
  TempDir dir;
  auto space = fock::enumerate_basis(fock::Species::boson, Rational(4));
  auto first = cache::virasoro(-2, space, dir.path);
  CHECK(fs::exists(cache::entry_path(dir.path, *space, "L-2")));
  auto second = cache::virasoro(-2, space, dir.path);
  auto fresh = virasoro::build_virasoro(-2, space).realization;
  CHECK(is_zero((second - fresh).max_abs_on(space->twice_cutoff())));
  CHECK(second.nonzeros() == fresh.nonzeros());
}

TEST_CASE("missing entries load as nullopt") {
  TempDir dir;
  auto space = fock::enumerate_basis(fock::Species::fermion, Rational(2));
  CHECK_FALSE(cache::load(dir.path, "L1", space).has_value());
}

TEST_CASE("a header that disagrees with the space is an error") {
  TempDir dir;
  auto space = fock::enumerate_basis(fock::Species::fermion, Rational(3));
  cache::virasoro(1, space, dir.path);
  const auto path = cache::entry_path(dir.path, *space, "L1");
  std::stringstream buf;
  buf << std::ifstream(path).rdbuf();
  std::string text = buf.str();
  const auto at = text.find("\"dimension\"");
  REQUIRE(at != std::string::npos);
  const auto colon = text.find(':', at);
  const auto end = text.find_first_of(",}", colon);
  text.replace(colon + 1, end - colon - 1, "999");
  std::ofstream(path) << text;
  CHECK_THROWS_AS(cache::load(dir.path, "L1", space), std::runtime_error);
}

TEST_CASE("multi-flavor spaces are not cached") {
  auto space = fock::make_space(fock::Species::fermion, Rational(2),
                                {{fock::Side::left, fock::Chirality::anti_chiral},
                                 {fock::Side::right, fock::Chirality::chiral}});
  CHECK_THROWS_AS(cache::store(fs::temp_directory_path(), "L0", virasoro::total_virasoro(0, space)),
                  std::invalid_argument);
}
