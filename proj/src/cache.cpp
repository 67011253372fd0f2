#include "neqcft/cache.hpp"

#include "neqcft/virasoro.hpp"

#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <random>
#include <stdexcept>

namespace neqcft::cache {

namespace fs = std::filesystem;
using nlohmann::json;

std::optional<fs::path> directory_from_environment() {
  const char* value = std::getenv(directory_variable);
  if (!value || !*value) return std::nullopt;
  return fs::path(value);
}

fs::path entry_path(const fs::path& dir, const fock::StateSpace& space, const std::string& name) {
  std::string cutoff = to_string(space.cutoff());
  for (char& c : cutoff)
    if (c == '/') c = '_';
  return dir / (fock::to_string(space.species()) + "-L" + cutoff + "-" + name + ".json");
}

void store(const fs::path& dir, const std::string& name, const fock::GradedOperator<Rational>& op) {
  const auto& space = op.domain();
  if (space.flavor_count() != 1 || !space.compatible(op.codomain()))
    throw std::invalid_argument("only operators on one-flavor spaces are cached");
  json entries = json::array();
  for (std::size_t j = 0; j < space.dimension(); ++j)
    for (const auto& [row, value] : op.column(j)) entries.push_back({row, j, to_string(value)});
  json doc = {{"version", format_version},
              {"species", fock::to_string(space.species())},
              {"cutoff", to_string(space.cutoff())},
              {"dimension", space.dimension()},
              {"operator", name},
              {"twice_level_shift", op.twice_level_shift()},
              {"parity_shift", op.parity_shift()},
              {"entries", std::move(entries)}};

  fs::create_directories(dir);
  const fs::path target = entry_path(dir, space, name);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(std::random_device{}());
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    out << doc.dump();
    if (!out) throw std::runtime_error("short write on cache file " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::optional<fock::GradedOperator<Rational>> load(const fs::path& dir, const std::string& name,
                                                   const fock::SpacePtr& space) {
  const fs::path path = entry_path(dir, *space, name);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error("corrupt cache file " + path.string() + ": " + e.what());
  }
  if (doc.value("version", -1) != format_version || doc.value("operator", "") != name ||
      doc.value("species", "") != fock::to_string(space->species()) ||
      doc.value("cutoff", "") != to_string(space->cutoff()) ||
      doc.value("dimension", std::size_t{0}) != space->dimension())
    throw std::runtime_error("cache header mismatch in " + path.string());
  fock::GradedOperator<Rational> op(space, space, doc.at("twice_level_shift").get<int>(),
                                    doc.at("parity_shift").get<int>());
  for (const auto& e : doc.at("entries"))
    op.add(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(),
           parse_rational(e.at(2).get<std::string>()));
  return op;
}

fock::GradedOperator<Rational> virasoro(int n, const fock::SpacePtr& space,
                                        const std::optional<fs::path>& dir) {
  const std::string name = "L" + std::to_string(n);
  if (dir && space->flavor_count() == 1) {
    if (auto hit = load(*dir, name, space)) return *std::move(hit);
    auto op = virasoro::build_virasoro(n, space).realization;
    store(*dir, name, op);
    return op;
  }
  return virasoro::build_virasoro(n, space).realization;
}

}  // namespace neqcft::cache
