#include "neqcft/fusion.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace neqcft::fusion {

namespace {

Rational wrap(const Rational& turns) {
  mpz_class whole;
  mpz_fdiv_q(whole.get_mpz_t(), turns.get_num_mpz_t(), turns.get_den_mpz_t());
  return turns - Rational(whole);
}

}  // namespace

void FusionRing::normalize() {
  std::set<std::string> known(labels.begin(), labels.end());
  if (known.size() != labels.size()) throw std::invalid_argument("duplicate fusion label");
  if (!known.count(identity)) throw std::invalid_argument("identity '" + identity + "' is not a label");
  auto require = [&](const std::string& l) {
    if (!known.count(l)) throw std::invalid_argument("unknown fusion label '" + l + "'");
  };
  for (const auto& [j, c] : conjugation) {
    require(j);
    require(c);
  }
  for (const auto& l : labels) conjugation.try_emplace(l, l);
  for (const auto& l : labels)
    if (conjugation.at(conjugation.at(l)) != l)
      throw std::invalid_argument("conjugation is not an involution at '" + l + "'");
  if (conjugation.at(identity) != identity) throw std::invalid_argument("identity must be self-conjugate");

  std::set<std::array<std::string, 3>> pattern;
  for (const auto& t : fusion) {
    for (const auto& l : t) require(l);
    pattern.insert(t);
    pattern.insert({t[1], t[0], t[2]});
  }
  for (const auto& l : labels) pattern.insert({l, conjugation.at(l), identity});
  fusion.assign(pattern.begin(), pattern.end());
}

const std::string& FusionRing::conjugate(const std::string& label) const {
  auto it = conjugation.find(label);
  return it == conjugation.end() ? label : it->second;
}

FusionRing parse_ring(const std::string& json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
    FusionRing ring;
    ring.labels = doc.at("labels").get<std::vector<std::string>>();
    ring.identity = doc.at("identity").get<std::string>();
    for (const auto& t : doc.value("fusion", json::array())) {
      auto v = t.get<std::vector<std::string>>();
      if (v.size() != 3) throw std::invalid_argument("fusion entries must be [j, k, m] triples");
      ring.fusion.push_back({v[0], v[1], v[2]});
    }
    if (doc.contains("conjugation"))
      ring.conjugation = doc.at("conjugation").get<std::map<std::string, std::string>>();
    ring.normalize();
    return ring;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed fusion ring: ") + e.what());
  }
}

FusionRing ising_ring() {
  FusionRing r{{"1", "psi"}, "1", {{"psi", "psi", "1"}}, {}};
  r.normalize();
  return r;
}

FusionRing z3_parafermion_ring() {
  FusionRing r{{"1", "psi1", "psi2"},
               "1",
               {{"psi1", "psi1", "psi2"}, {"psi1", "psi2", "1"}, {"psi2", "psi2", "psi1"}},
               {{"psi1", "psi2"}, {"psi2", "psi1"}}};
  r.normalize();
  return r;
}

FusionRing trivial_ring() {
  FusionRing r{{"1"}, "1", {}, {}};
  r.normalize();
  return r;
}

std::string Phase::label() const {
  if (turns == 0) return "1";
  if (turns == Rational(1, 2)) return "-1";
  return "exp(2 pi i " + to_string(turns) + ")";
}

bool satisfies(const FusionRing& ring, const PhaseAssignment& zeta) {
  auto z = [&](const std::string& l) { return zeta.at(l).turns; };
  if (z(ring.identity) != 0) return false;
  for (const auto& l : ring.labels)
    if (wrap(z(l) + z(ring.conjugate(l))) != 0) return false;
  for (const auto& [j, k, m] : ring.fusion)
    if (wrap(z(j) + z(k) - z(m)) != 0) return false;
  return true;
}

PhaseSolutions solve_reflection_phases(const FusionRing& ring, int max_order) {
  if (max_order < 1) throw std::invalid_argument("root-of-unity order bound must be >= 1");
  std::vector<Rational> candidates;
  for (int q = 1; q <= max_order; ++q)
    for (int p = 0; p < q; ++p)
      if (std::gcd(p, q) == 1) candidates.push_back(Rational(p, q));
  std::sort(candidates.begin(), candidates.end());

  std::vector<std::string> order{ring.identity};
  for (const auto& l : ring.labels)
    if (l != ring.identity) order.push_back(l);
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;

  // each constraint is checked as soon as its last label is assigned
  std::vector<std::vector<std::array<std::string, 3>>> fusion_at(order.size());
  for (const auto& t : ring.fusion) {
    std::size_t last = std::max({position.at(t[0]), position.at(t[1]), position.at(t[2])});
    fusion_at[last].push_back(t);
  }

  PhaseSolutions out;
  out.max_order = max_order;
  std::map<std::string, Rational> zeta;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == order.size()) {
      PhaseAssignment a;
      for (const auto& [l, t] : zeta) a[l] = Phase{t};
      out.solutions.push_back(std::move(a));
      return;
    }
    const std::string& label = order[i];
    for (const auto& c : candidates) {
      if (i == 0 && c != 0) break;
      zeta[label] = c;
      bool ok = true;
      const std::string& conj = ring.conjugate(label);
      if (position.at(conj) <= i && wrap(c + zeta.at(conj)) != 0) ok = false;
      for (const auto& [j, k, m] : fusion_at[i])
        if (ok && wrap(zeta.at(j) + zeta.at(k) - zeta.at(m)) != 0) ok = false;
      if (ok) rec(i + 1);
      zeta.erase(label);
    }
  };
  rec(0);
  out.consistent = !out.solutions.empty();
  return out;
}

}  // namespace neqcft::fusion
