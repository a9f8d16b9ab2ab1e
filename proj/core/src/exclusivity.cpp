#include "indist/exclusivity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

namespace indist {
namespace {

bool in_sigma_selection(std::uint32_t x, std::uint32_t b, const SignPattern& p) {
  const std::uint32_t want = p.signs[x] > 0 ? 0u : 1u;
  return bit_parity(b) == want;
}

std::string event_key(const Event& e) { return e.settings + "|" + e.outcomes; }

}  // namespace

void Event::validate() const {
  if (copies != 1 && copies != 2)
    throw std::invalid_argument("event: copies must be 1 or 2");
  if (settings.size() != outcomes.size() || settings.empty())
    throw std::invalid_argument("event: settings/outcomes length mismatch");
  if (settings.size() % copies != 0)
    throw std::invalid_argument("event: length not divisible by copies");
  for (char c : settings)
    if (c != '0' && c != '1') throw std::invalid_argument("event: bad setting char");
  for (char c : outcomes)
    if (c != '0' && c != '1') throw std::invalid_argument("event: bad outcome char");
}

bool exclusive(const Event& e1, const Event& e2) {
  e1.validate();
  e2.validate();
  if (e1.settings.size() != e2.settings.size() || e1.copies != e2.copies)
    throw std::invalid_argument("exclusive: event shapes differ");
  for (size_t k = 0; k < e1.settings.size(); ++k)
    if (e1.settings[k] == e2.settings[k] && e1.outcomes[k] != e2.outcomes[k])
      return true;
  return false;
}

std::vector<Event> sigma_event_set(int n, const SignPattern& p) {
  if (n != p.n) throw std::invalid_argument("sigma_event_set: n mismatch");
  std::vector<Event> events;
  for (std::uint32_t x = 0; x < (1u << n); ++x)
    for (std::uint32_t b = 0; b < (1u << n); ++b)
      if (in_sigma_selection(x, b, p))
        events.push_back({bits_to_string(x, n), bits_to_string(b, n), 1});
  return events;
}

bool pairwise_exclusive_check(const std::vector<Event>& events) {
  for (size_t i = 0; i < events.size(); ++i)
    for (size_t j = i + 1; j < events.size(); ++j)
      if (!exclusive(events[i], events[j])) return false;
  return true;
}

Behavior two_copy_product(const Behavior& first, const Behavior& second) {
  if (first.parties() != second.parties())
    throw std::invalid_argument("two_copy_product: party counts differ");
  const int n = first.parties();
  Behavior joint(2 * n);
  const std::uint32_t mask = (1u << n) - 1;
  for (std::uint32_t x = 0; x < (1u << (2 * n)); ++x)
    for (std::uint32_t b = 0; b < (1u << (2 * n)); ++b)
      joint.p(x, b) =
          first.p(x >> n, b >> n) * second.p(x & mask, b & mask);
  return joint;
}

int a_ij_outcome(int b, int b_prime) { return (b ^ b_prime) & 1; }

double a_ij_event_probability(const Behavior& joint, int i, int j,
                              std::pair<int, int> pq) {
  if (joint.parties() % 2 != 0)
    throw std::invalid_argument("a_ij_event_probability: joint behavior must cover two copies");
  if ((i != 0 && i != 1) || (j != 0 && j != 1))
    throw std::invalid_argument("a_ij_event_probability: i and j must be bits");
  if ((pq.first != 0 && pq.first != 1) || (pq.second != 0 && pq.second != 1))
    throw std::invalid_argument("a_ij_event_probability: outcomes must be bits");
  const int n = joint.parties() / 2;
  const int total = joint.parties();

  auto parity_probability = [&](int xa, int xb, int parity) {
    // first party of each copy carries the setting, remaining settings 0
    const std::uint32_t context = (std::uint32_t(xa) << (total - 1)) |
                                  (std::uint32_t(xb) << (n - 1));
    double prob = 0.0;
    for (std::uint32_t b = 0; b < (1u << total); ++b) {
      const int b_a = (b >> (total - 1)) & 1;
      const int b_b = (b >> (n - 1)) & 1;
      if (a_ij_outcome(b_a, b_b) == parity) prob += joint.p(context, b);
    }
    return prob;
  };

  return parity_probability(i, j, pq.first) *
         parity_probability(i ^ 1, j ^ 1, pq.second);
}

double e_inequality_bound(int n) {
  if (n < 2) throw std::invalid_argument("e_inequality_bound: need n >= 2");
  return std::ldexp(2.0 + std::sqrt(2.0), n - 2);
}

EInequalityReport verify_e_inequality(const Behavior& b, const SignPattern& p) {
  EInequalityReport report;
  report.sigma = sigma_n(b, p);
  const double full = std::ldexp(1.0, b.parties());  // 2^n
  report.lhs = report.sigma * report.sigma +
               (full - report.sigma) * (full - report.sigma) +
               std::ldexp(1.0, 2 * b.parties() - 2);
  report.rhs = std::ldexp(1.0, 2 * b.parties());
  report.satisfied = report.lhs <= report.rhs + 1e-9;
  return report;
}

std::vector<Event> two_copy_universe(int n, const SignPattern& p) {
  if (n != p.n) throw std::invalid_argument("two_copy_universe: n mismatch");
  std::vector<Event> events;
  for (std::uint32_t xa = 0; xa < (1u << n); ++xa)
    for (std::uint32_t xb = 0; xb < (1u << n); ++xb)
      for (std::uint32_t ba = 0; ba < (1u << n); ++ba)
        for (std::uint32_t bb = 0; bb < (1u << n); ++bb) {
          if (in_sigma_selection(xa, ba, p) != in_sigma_selection(xb, bb, p))
            continue;
          events.push_back({bits_to_string(xa, n) + bits_to_string(xb, n),
                            bits_to_string(ba, n) + bits_to_string(bb, n), 2});
        }
  return events;
}

PartitionCheck verify_partition(const std::vector<std::vector<Event>>& sets,
                                int n, const SignPattern& p) {
  const std::size_t expected_sets = std::size_t(1) << (2 * n);
  const std::size_t expected_size = (std::size_t(1) << (2 * n)) / 2;
  if (sets.size() != expected_sets)
    return {false, "expected " + std::to_string(expected_sets) + " sets, got " +
                       std::to_string(sets.size())};

  std::set<std::string> universe;
  for (const Event& e : two_copy_universe(n, p)) universe.insert(event_key(e));

  std::set<std::string> seen;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    if (sets[s].size() != expected_size)
      return {false, "set " + std::to_string(s) + " has " +
                         std::to_string(sets[s].size()) + " events, expected " +
                         std::to_string(expected_size)};
    for (const Event& e : sets[s]) {
      e.validate();
      const std::string key = event_key(e);
      if (!universe.count(key))
        return {false, "set " + std::to_string(s) + " contains " + key +
                           " outside the two-copy universe"};
      if (!seen.insert(key).second)
        return {false, "event " + key + " appears twice"};
    }
    if (!pairwise_exclusive_check(sets[s]))
      return {false, "set " + std::to_string(s) + " is not pairwise exclusive"};
  }
  return {true, ""};
}

std::optional<std::vector<std::vector<Event>>> find_two_copy_partition(
    int n, const SignPattern& p) {
  if (n != 2)
    throw std::invalid_argument("find_two_copy_partition: desk-scale search supports n = 2");
  std::vector<Event> universe = two_copy_universe(n, p);
  std::sort(universe.begin(), universe.end(),
            [](const Event& a, const Event& b) {
              return std::tie(a.settings, a.outcomes) < std::tie(b.settings, b.outcomes);
            });

  const std::size_t set_count = std::size_t(1) << (2 * n);
  const std::size_t set_size = (std::size_t(1) << (2 * n)) / 2;
  std::vector<std::vector<Event>> sets(set_count);

  auto fits = [&](const Event& e, const std::vector<Event>& set) {
    if (set.size() >= set_size) return false;
    for (const Event& other : set)
      if (!exclusive(e, other)) return false;
    return true;
  };

  std::function<bool(std::size_t)> place = [&](std::size_t idx) -> bool {
    if (idx == universe.size()) return true;
    const Event& e = universe[idx];
    for (std::size_t s = 0; s < set_count; ++s) {
      if (!fits(e, sets[s])) continue;
      sets[s].push_back(e);
      if (place(idx + 1)) return true;
      sets[s].pop_back();
      if (sets[s].empty()) break;  // symmetric empty sets, no need to try the rest
    }
    return false;
  };

  if (!place(0)) return std::nullopt;
  return sets;
}

std::string events_to_json_string(const std::vector<Event>& events, int indent) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Event& e : events) arr.push_back({{"x", e.settings}, {"b", e.outcomes}});
  return arr.dump(indent);
}

namespace {

Event event_from_json(const nlohmann::json& j, int copies) {
  Event e;
  e.settings = j.at("x").get<std::string>();
  e.outcomes = j.at("b").get<std::string>();
  e.copies = copies;
  return e;
}

}  // namespace

std::vector<Event> events_from_json_string(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  std::vector<Event> events;
  for (const auto& item : doc) events.push_back(event_from_json(item, 1));
  return events;
}

std::string partition_to_json_string(const std::vector<std::vector<Event>>& sets,
                                     int indent) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& set : sets) {
    nlohmann::ordered_json inner = nlohmann::ordered_json::array();
    for (const Event& e : set) inner.push_back({{"x", e.settings}, {"b", e.outcomes}});
    arr.push_back(inner);
  }
  return arr.dump(indent);
}

std::vector<std::vector<Event>> partition_from_json_string(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  std::vector<std::vector<Event>> sets;
  for (const auto& inner : doc) {
    std::vector<Event> set;
    for (const auto& item : inner) set.push_back(event_from_json(item, 2));
    sets.push_back(std::move(set));
  }
  return sets;
}

}  // namespace indist
