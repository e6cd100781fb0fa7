#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "nsl/estimate.hpp"

namespace nsl {

/// Largest k^n handled by exact enumeration (3^8).
inline constexpr std::uint64_t kEnumerationCap = 6561;

/// Per-coordinate resampling law: a vote is kept with probability
/// (1 + (k-1) rho)/k and moves to each other candidate with probability (1 - rho)/k.
struct NoiseKernel {
  int k = 3;
  double rho = 0.0;

  NoiseKernel(int k, double rho);
  double stay() const { return (1.0 + (k - 1) * rho) / k; }
  double move() const { return (1.0 - rho) / k; }
};

enum class RuleKind { plurality, majority, dictator, constant, table };

/// A voting rule {1..k}^n -> simplex in R^k. Candidates are 0-based here; the
/// JSON table is indexed in row-major base-k order with voter 1 most significant.
class VotingRule {
 public:
  static VotingRule plurality(int k, int n);
  /// Two-candidate plurality; even n ties go to the uniform mixture.
  static VotingRule majority(int n);
  static VotingRule dictator(int k, int n, int voter = 0);
  static VotingRule constant(int k, int n, int candidate = 0);
  static VotingRule table(int k, int n, std::vector<std::vector<double>> outputs);

  RuleKind kind() const { return kind_; }
  int k() const { return k_; }
  int n() const { return n_; }
  std::string name() const;

  /// Writes f(omega) into out[0..k). omega has n entries in [0, k).
  void evaluate(const int* omega, double* out) const;
  /// Same, for symmetric rules, from the per-candidate vote counts.
  void evaluate_counts(const int* counts, double* out) const;
  /// True when the output only depends on the vote counts.
  bool symmetric() const { return kind_ == RuleKind::plurality || kind_ == RuleKind::majority || kind_ == RuleKind::constant; }

 private:
  VotingRule(RuleKind kind, int k, int n) : kind_(kind), k_(k), n_(n) {}
  RuleKind kind_;
  int k_;
  int n_;
  int param_ = 0;
  std::vector<double> table_;  // k^n rows of k entries
};

/// Reads {k, n, table: [[p_1..p_k], ...]}.
VotingRule rule_from_json(const nlohmann::json& doc);
nlohmann::json rule_to_json(const VotingRule& rule);
VotingRule load_rule(const std::string& path);

/// S_rho f = sum_j S_rho f_j by exact enumeration. Throws EnumerationError if
/// k^n exceeds kEnumerationCap.
double noise_stability_exact(const VotingRule& rule, const NoiseKernel& kernel);
/// Unbiased estimate from independent (omega, delta) pairs; samples >= 1000.
McEstimate noise_stability_mc(const VotingRule& rule, const NoiseKernel& kernel, std::uint64_t samples,
                              std::uint64_t seed);

/// sum_j Inf_i(f_j) by exact enumeration (voter is 0-based).
double influence(const VotingRule& rule, int voter);
McEstimate influence_mc(const VotingRule& rule, int voter, std::uint64_t samples, std::uint64_t seed);

/// Boolean rules {-1,1}^n -> {-1,1} under the rho-correlated model in which
/// each bit is kept with probability (1 + rho)/2.
enum class BooleanKind { majority, anti_majority, dictator, parity };
struct BooleanRule {
  BooleanKind kind = BooleanKind::majority;
  int n = 1;
  int value(const int* bits) const;  // bits in {-1, 1}
  int value_from_ones(int ones) const;  // for the symmetric kinds
};

enum class StabilityMode { exact, mc };

/// E f(X) f(Y). Exact mode sums over counts for symmetric kinds and enumerates
/// otherwise (n <= 12).
McEstimate boolean_noise_stability(const BooleanRule& rule, double rho, StabilityMode mode,
                                   std::uint64_t samples = 0, std::uint64_t seed = 0);

struct ConvergenceRow {
  int n = 0;
  double value = 0.0;
  double standard_error = 0.0;
  bool exact = false;
  double limit = 0.0;
  double gap = 0.0;  // value - limit
};

/// S_rho(PLUR_{3,n}) against its Gaussian limit for odd n; exact when 3^n is
/// within the enumeration cap, Monte Carlo otherwise.
std::vector<ConvergenceRow> plurality_convergence_report(double rho, const std::vector<int>& ns,
                                                         std::uint64_t samples, std::uint64_t seed);
/// E Maj_n(X) Maj_n(Y) against 1 - (2/pi) arccos(rho); Monte Carlo for every n
/// unless samples == 0, in which case the exact count sum is used.
std::vector<ConvergenceRow> majority_convergence_report(double rho, const std::vector<int>& ns,
                                                        std::uint64_t samples, std::uint64_t seed);

}  // namespace nsl
