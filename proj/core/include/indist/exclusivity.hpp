// Measurement events, the pairwise exclusivity relation, two-copy products,
// the parity measurement on copies, and the event-counting arithmetic that
// yields the Sigma_n <= 2^{n-2} (2 + sqrt 2) bound.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "indist/behaviors.hpp"

namespace indist {

/// Measurement event (b|x), possibly on two system copies. Settings and
/// outcomes are 0/1 strings of length n * copies, parties of the first copy
/// leftmost.
struct Event {
  std::string settings;
  std::string outcomes;
  int copies = 1;

  bool operator==(const Event&) const = default;
  void validate() const;
};

/// Two events exclude each other when some party (copy-indexed slot) has the
/// same setting in both but different outcomes. Symmetric and irreflexive;
/// shape mismatches are rejected.
bool exclusive(const Event& e1, const Event& e2);

/// All single-copy events entering Sigma_n: even-parity outcomes on +1
/// contexts, odd-parity outcomes on -1 contexts. 2^n * 2^{n-1} events.
std::vector<Event> sigma_event_set(int n, const SignPattern& p);

/// True iff every pair from the list is exclusive.
bool pairwise_exclusive_check(const std::vector<Event>& events);

/// Product behavior over two independent copies: 2n parties, first copy's
/// parties leftmost.
Behavior two_copy_product(const Behavior& first, const Behavior& second);

/// 0 when the two copies agree, 1 otherwise.
int a_ij_outcome(int b, int b_prime);

/// Probability that the copy-parity measurement with settings (x=i, x'=j) on
/// the first party of each copy yields pq.first while the complementary pair
/// (ibar, jbar) yields pq.second. The remaining settings are fixed to 0 (for
/// no-signaling joints the marginals do not depend on that choice). The four
/// (p, q) values sum to 1 for every (i, j).
double a_ij_event_probability(const Behavior& joint, int i, int j,
                              std::pair<int, int> pq);

/// Larger root of x^2 + (2^n - x)^2 + 4^{n-1} = 4^n, i.e. 2^{n-2} (2 + sqrt 2).
double e_inequality_bound(int n);

struct EInequalityReport {
  double sigma = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
};

/// lhs = Sigma_n^2 + (2^n - Sigma_n)^2 + 4^{n-1} against rhs = 4^n.
EInequalityReport verify_e_inequality(const Behavior& b, const SignPattern& p);

/// The 4^n * 4^n / 2 two-copy events whose copies are either both inside the
/// Sigma_n selection or both outside it, in deterministic order.
std::vector<Event> two_copy_universe(int n, const SignPattern& p);

struct PartitionCheck {
  bool valid = false;
  std::string detail;  // empty when valid, first failure otherwise
};

/// Checks a candidate partition of the two-copy universe: 4^n sets of
/// 4^n / 2 distinct universe events, each set pairwise exclusive.
PartitionCheck verify_partition(const std::vector<std::vector<Event>>& sets,
                                int n, const SignPattern& p);

/// Backtracking search for such a partition; desk scale (n = 2) only.
std::optional<std::vector<std::vector<Event>>> find_two_copy_partition(
    int n, const SignPattern& p);

std::string events_to_json_string(const std::vector<Event>& events,
                                  int indent = -1);
std::vector<Event> events_from_json_string(const std::string& text);
std::string partition_to_json_string(const std::vector<std::vector<Event>>& sets,
                                     int indent = -1);
std::vector<std::vector<Event>> partition_from_json_string(const std::string& text);

}  // namespace indist
