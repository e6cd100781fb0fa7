#include "nsl/social_choice.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "nsl/errors.hpp"
#include "nsl/hardness.hpp"
#include "nsl/parallel.hpp"
#include "nsl/rng.hpp"

namespace nsl {
namespace {

constexpr std::uint64_t kChunk = 4096;
constexpr std::uint64_t kTableCap = 1u << 20;

std::uint64_t power_checked(int k, int n, std::uint64_t cap) {
  std::uint64_t p = 1;
  for (int i = 0; i < n; ++i) {
    p *= static_cast<std::uint64_t>(k);
    if (p > cap) return cap + 1;
  }
  return p;
}

// Running mean and centered second moment, merged pairwise in chunk order.
struct Moments {
  double count = 0.0, mean = 0.0, m2 = 0.0;
  void add(double x) {
    count += 1.0;
    const double d = x - mean;
    mean += d / count;
    m2 += d * (x - mean);
  }
  void merge(const Moments& o) {
    if (o.count == 0.0) return;
    const double total = count + o.count;
    const double d = o.mean - mean;
    mean += d * o.count / total;
    m2 += o.m2 + d * d * count * o.count / total;
    count = total;
  }
  McEstimate result() const {
    McEstimate e;
    e.estimate = mean;
    e.samples = static_cast<std::uint64_t>(count);
    e.standard_error = count > 1.0 ? std::sqrt(std::max(m2, 0.0) / (count - 1.0) / count) : 0.0;
    return e;
  }
};

// Runs sample(stream) for every index with its own stream; deterministic in
// (seed, samples) whatever the thread count.
template <class Sample>
McEstimate run_mc(std::uint64_t samples, std::uint64_t seed, Sample&& sample) {
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<Moments> parts(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const std::uint64_t lo = c * kChunk;
    const std::uint64_t hi = std::min(samples, lo + kChunk);
    Moments m;
    for (std::uint64_t s = lo; s < hi; ++s) {
      SampleStream stream(seed, s);
      m.add(sample(stream));
    }
    parts[c] = m;
  });
  Moments total;
  for (const auto& p : parts) total.merge(p);
  return total.result();
}

int binomial(SampleStream& stream, int trials, double p) {
  if (trials <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  return std::binomial_distribution<int>(trials, p)(stream);
}

int uniform_candidate(SampleStream& stream, int k) {
  return std::min(k - 1, static_cast<int>(stream.uniform() * k));
}

int resample_vote(SampleStream& stream, const NoiseKernel& kernel, int vote) {
  const double u = stream.uniform();
  if (u < kernel.stay()) return vote;
  int other = std::min(kernel.k - 2, static_cast<int>((u - kernel.stay()) / kernel.move()));
  return other >= vote ? other + 1 : other;
}

void require_samples(std::uint64_t samples) {
  if (samples < 1000) throw DomainError("Monte Carlo estimates need at least 1000 samples");
}

// f as a dense (k^n x k) array.
std::vector<double> dense_table(const VotingRule& rule) {
  const std::uint64_t size = power_checked(rule.k(), rule.n(), kEnumerationCap);
  if (size > kEnumerationCap) {
    throw EnumerationError("k^n = " + std::to_string(rule.k()) + "^" + std::to_string(rule.n()) +
                           " exceeds the enumeration cap of 6561; use the Monte Carlo estimator");
  }
  const int k = rule.k(), n = rule.n();
  std::vector<double> f(size * k);
  std::vector<int> omega(n, 0);
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    rule.evaluate(omega.data(), &f[idx * k]);
    for (int i = n - 1; i >= 0; --i) {  // increment base-k counter, voter 0 most significant
      if (++omega[i] < k) break;
      omega[i] = 0;
    }
  }
  return f;
}

double log_binomial_pmf(int n, int j, double p) {
  if (p <= 0.0) return j == 0 ? 0.0 : -INFINITY;
  if (p >= 1.0) return j == n ? 0.0 : -INFINITY;
  return std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) + j * std::log(p) +
         (n - j) * std::log1p(-p);
}

std::vector<double> binomial_pmf(int n, double p) {
  std::vector<double> v(n + 1);
  for (int j = 0; j <= n; ++j) v[j] = std::exp(log_binomial_pmf(n, j, p));
  return v;
}

}  // namespace

NoiseKernel::NoiseKernel(int k_, double rho_) : k(k_), rho(rho_) {
  if (k < 2) throw DomainError("noise kernel needs k >= 2");
  if (!(rho > -1.0 / (k - 1) && rho < 1.0)) {
    throw DomainError("noise kernel needs rho in (-1/(k-1), 1)");
  }
}

// ----------------------------------------------------------------------------

VotingRule VotingRule::plurality(int k, int n) {
  if (k < 2 || n < 1) throw DomainError("plurality needs k >= 2 and n >= 1");
  return VotingRule(RuleKind::plurality, k, n);
}

VotingRule VotingRule::majority(int n) {
  if (n < 1) throw DomainError("majority needs n >= 1");
  return VotingRule(RuleKind::majority, 2, n);
}

VotingRule VotingRule::dictator(int k, int n, int voter) {
  if (k < 2 || n < 1 || voter < 0 || voter >= n) throw DomainError("dictator needs k >= 2 and 0 <= voter < n");
  VotingRule r(RuleKind::dictator, k, n);
  r.param_ = voter;
  return r;
}

VotingRule VotingRule::constant(int k, int n, int candidate) {
  if (k < 2 || n < 1 || candidate < 0 || candidate >= k) throw DomainError("constant rule needs 0 <= candidate < k");
  VotingRule r(RuleKind::constant, k, n);
  r.param_ = candidate;
  return r;
}

VotingRule VotingRule::table(int k, int n, std::vector<std::vector<double>> outputs) {
  if (k < 2 || n < 1) throw DomainError("table rule needs k >= 2 and n >= 1");
  const std::uint64_t size = power_checked(k, n, kTableCap);
  if (size > kTableCap) throw DomainError("table rule is too large");
  if (outputs.size() != size) {
    throw DomainError("table rule needs k^n = " + std::to_string(size) + " rows, got " + std::to_string(outputs.size()));
  }
  VotingRule r(RuleKind::table, k, n);
  r.table_.reserve(size * k);
  for (std::size_t row = 0; row < outputs.size(); ++row) {
    const auto& p = outputs[row];
    if (p.size() != static_cast<std::size_t>(k)) {
      throw DomainError("table row " + std::to_string(row) + " must have k = " + std::to_string(k) + " entries");
    }
    double sum = 0.0;
    for (double v : p) {
      if (!(v >= 0.0)) throw DomainError("table row " + std::to_string(row) + " has a negative entry");
      sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-9) throw DomainError("table row " + std::to_string(row) + " does not sum to 1");
    r.table_.insert(r.table_.end(), p.begin(), p.end());
  }
  return r;
}

std::string VotingRule::name() const {
  switch (kind_) {
    case RuleKind::plurality: return "plurality";
    case RuleKind::majority: return "majority";
    case RuleKind::dictator: return "dictator";
    case RuleKind::constant: return "constant";
    case RuleKind::table: return "table";
  }
  return "unknown";
}

void VotingRule::evaluate_counts(const int* counts, double* out) const {
  std::fill(out, out + k_, 0.0);
  if (kind_ == RuleKind::constant) {
    out[param_] = 1.0;
    return;
  }
  int best = 0, ties = 1;
  for (int j = 1; j < k_; ++j) {
    if (counts[j] > counts[best]) {
      best = j;
      ties = 1;
    } else if (counts[j] == counts[best]) {
      ++ties;
    }
  }
  if (ties == 1) {
    out[best] = 1.0;
  } else {
    std::fill(out, out + k_, 1.0 / k_);
  }
}

void VotingRule::evaluate(const int* omega, double* out) const {
  switch (kind_) {
    case RuleKind::plurality:
    case RuleKind::majority:
    case RuleKind::constant: {
      int counts[64] = {0};
      if (k_ > 64) throw DomainError("symmetric rules support at most 64 candidates");
      for (int i = 0; i < n_; ++i) ++counts[omega[i]];
      evaluate_counts(counts, out);
      return;
    }
    case RuleKind::dictator:
      std::fill(out, out + k_, 0.0);
      out[omega[param_]] = 1.0;
      return;
    case RuleKind::table: {
      std::uint64_t idx = 0;
      for (int i = 0; i < n_; ++i) idx = idx * k_ + omega[i];
      std::copy_n(&table_[idx * k_], k_, out);
      return;
    }
  }
}

VotingRule rule_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("rule JSON must be an object with fields k, n, table");
  auto get_int = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_integer()) throw ParseError(std::string("rule field '") + key + "' must be an integer");
    return doc[key].get<int>();
  };
  const int k = get_int("k");
  const int n = get_int("n");
  if (!doc.contains("table") || !doc["table"].is_array()) throw ParseError("rule field 'table' must be an array");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < doc["table"].size(); ++i) {
    const auto& row = doc["table"][i];
    if (!row.is_array()) throw ParseError("rule field 'table[" + std::to_string(i) + "]' must be an array");
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number()) throw ParseError("rule field 'table[" + std::to_string(i) + "]' has a non-numeric entry");
      r.push_back(v.get<double>());
    }
    rows.push_back(std::move(r));
  }
  try {
    return VotingRule::table(k, n, std::move(rows));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

nlohmann::json rule_to_json(const VotingRule& rule) {
  const std::uint64_t size = power_checked(rule.k(), rule.n(), kTableCap);
  if (size > kTableCap) throw DomainError("rule is too large to tabulate");
  nlohmann::json table = nlohmann::json::array();
  std::vector<int> omega(rule.n(), 0);
  std::vector<double> out(rule.k());
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    rule.evaluate(omega.data(), out.data());
    table.push_back(out);
    for (int i = rule.n() - 1; i >= 0; --i) {
      if (++omega[i] < rule.k()) break;
      omega[i] = 0;
    }
  }
  return {{"k", rule.k()}, {"n", rule.n()}, {"table", table}};
}

VotingRule load_rule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open rule file");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  try {
    return rule_from_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// ----------------------------------------------------------------------------

double noise_stability_exact(const VotingRule& rule, const NoiseKernel& kernel) {
  if (kernel.k != rule.k()) throw DomainError("kernel and rule disagree on k");
  const int k = rule.k(), n = rule.n();
  const std::vector<double> f = dense_table(rule);
  const std::size_t size = f.size() / k;
  // T = P (x) ... (x) P applied one voter axis at a time; P keeps a vote with
  // probability stay and moves it to each other candidate with probability move.
  std::vector<double> g = f;
  std::vector<double> sums(k);
  std::size_t stride = size;
  for (int axis = 0; axis < n; ++axis) {
    stride /= k;
    const std::size_t block = stride * k;
    for (std::size_t base = 0; base < size; base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        std::fill(sums.begin(), sums.end(), 0.0);
        for (int c = 0; c < k; ++c) {
          for (int j = 0; j < k; ++j) sums[j] += g[(base + off + c * stride) * k + j];
        }
        for (int c = 0; c < k; ++c) {
          double* row = &g[(base + off + c * stride) * k];
          for (int j = 0; j < k; ++j) row[j] = kernel.stay() * row[j] + kernel.move() * (sums[j] - row[j]);
        }
      }
    }
  }
  return pairwise_sum([&] {
           std::vector<double> terms(size);
           for (std::size_t idx = 0; idx < size; ++idx) {
             double s = 0.0;
             for (int j = 0; j < k; ++j) s += f[idx * k + j] * g[idx * k + j];
             terms[idx] = s;
           }
           return terms;
         }()) /
         static_cast<double>(size);
}

McEstimate noise_stability_mc(const VotingRule& rule, const NoiseKernel& kernel, std::uint64_t samples,
                              std::uint64_t seed) {
  if (kernel.k != rule.k()) throw DomainError("kernel and rule disagree on k");
  require_samples(samples);
  const int k = rule.k(), n = rule.n();
  if (rule.symmetric()) {
    return run_mc(samples, seed, [&](SampleStream& s) {
      int a[64] = {0}, b[64] = {0};
      int left = n;
      for (int j = 0; j < k - 1; ++j) {
        a[j] = binomial(s, left, 1.0 / (k - j));
        left -= a[j];
      }
      a[k - 1] = left;
      for (int j = 0; j < k; ++j) {
        int rest = a[j];
        const int kept = binomial(s, rest, kernel.stay());
        b[j] += kept;
        rest -= kept;
        // The remaining votes spread uniformly over the other k - 1 candidates.
        int others = k - 1;
        for (int t = 0; t < k; ++t) {
          if (t == j) continue;
          const int moved = others == 1 ? rest : binomial(s, rest, 1.0 / others);
          b[t] += moved;
          rest -= moved;
          --others;
        }
      }
      double fa[64], fb[64];
      rule.evaluate_counts(a, fa);
      rule.evaluate_counts(b, fb);
      double dot = 0.0;
      for (int j = 0; j < k; ++j) dot += fa[j] * fb[j];
      return dot;
    });
  }
  return run_mc(samples, seed, [&](SampleStream& s) {
    std::vector<int> omega(n), delta(n);
    for (int i = 0; i < n; ++i) {
      omega[i] = uniform_candidate(s, k);
      delta[i] = resample_vote(s, kernel, omega[i]);
    }
    std::vector<double> fa(k), fb(k);
    rule.evaluate(omega.data(), fa.data());
    rule.evaluate(delta.data(), fb.data());
    double dot = 0.0;
    for (int j = 0; j < k; ++j) dot += fa[j] * fb[j];
    return dot;
  });
}

double influence(const VotingRule& rule, int voter) {
  if (voter < 0 || voter >= rule.n()) throw DomainError("voter index out of range");
  const int k = rule.k(), n = rule.n();
  const std::vector<double> f = dense_table(rule);
  const std::size_t size = f.size() / k;
  std::size_t stride = 1;
  for (int i = n - 1; i > voter; --i) stride *= k;
  const std::size_t block = stride * k;
  double total = 0.0;
  for (std::size_t base = 0; base < size; base += block) {
    for (std::size_t off = 0; off < stride; ++off) {
      for (int j = 0; j < k; ++j) {
        double mean = 0.0;
        for (int c = 0; c < k; ++c) mean += f[(base + off + c * stride) * k + j];
        mean /= k;
        for (int c = 0; c < k; ++c) {
          const double d = f[(base + off + c * stride) * k + j] - mean;
          total += d * d;
        }
      }
    }
  }
  return total / static_cast<double>(size);
}

McEstimate influence_mc(const VotingRule& rule, int voter, std::uint64_t samples, std::uint64_t seed) {
  if (voter < 0 || voter >= rule.n()) throw DomainError("voter index out of range");
  require_samples(samples);
  const int k = rule.k(), n = rule.n();
  return run_mc(samples, seed, [&](SampleStream& s) {
    std::vector<int> omega(n);
    for (int i = 0; i < n; ++i) omega[i] = uniform_candidate(s, k);
    // Average over the voter's k choices exactly; only the others are sampled.
    std::vector<double> out(static_cast<std::size_t>(k) * k), mean(k, 0.0);
    for (int c = 0; c < k; ++c) {
      omega[voter] = c;
      rule.evaluate(omega.data(), &out[c * k]);
      for (int j = 0; j < k; ++j) mean[j] += out[c * k + j] / k;
    }
    double v = 0.0;
    for (int c = 0; c < k; ++c) {
      for (int j = 0; j < k; ++j) v += (out[c * k + j] - mean[j]) * (out[c * k + j] - mean[j]);
    }
    return v / k;
  });
}

// ----------------------------------------------------------------------------

int BooleanRule::value_from_ones(int ones) const {
  const int minus = n - ones;
  switch (kind) {
    case BooleanKind::majority: return ones > minus ? 1 : -1;
    case BooleanKind::anti_majority: return ones > minus ? -1 : 1;
    case BooleanKind::parity: return minus % 2 == 0 ? 1 : -1;
    case BooleanKind::dictator: break;
  }
  throw DomainError("dictator is not a function of the number of ones");
}

int BooleanRule::value(const int* bits) const {
  if (kind == BooleanKind::dictator) return bits[0];
  int ones = 0;
  for (int i = 0; i < n; ++i) ones += bits[i] > 0 ? 1 : 0;
  return value_from_ones(ones);
}

McEstimate boolean_noise_stability(const BooleanRule& rule, double rho, StabilityMode mode, std::uint64_t samples,
                                   std::uint64_t seed) {
  if (!(rho >= -1.0 && rho <= 1.0)) throw DomainError("boolean noise stability needs rho in [-1, 1]");
  if (rule.n < 1) throw DomainError("boolean rule needs n >= 1");
  if ((rule.kind == BooleanKind::majority || rule.kind == BooleanKind::anti_majority) && rule.n % 2 == 0) {
    throw DomainError("majority is only defined here for odd n");
  }
  const int n = rule.n;
  const double flip = (1.0 - rho) / 2.0;
  if (mode == StabilityMode::exact) {
    McEstimate out;
    if (rule.kind == BooleanKind::dictator) {
      out.estimate = rho;
      return out;
    }
    // Sum over ones = a in X, u of them flipped and v of the minus ones flipped.
    const std::vector<double> choose = binomial_pmf(n, 0.5);
    double total = 0.0;
    for (int a = 0; a <= n; ++a) {
      const std::vector<double> pu = binomial_pmf(a, flip);
      const std::vector<double> pv = binomial_pmf(n - a, flip);
      const int fa = rule.value_from_ones(a);
      double inner = 0.0;
      for (int u = 0; u <= a; ++u) {
        for (int v = 0; v <= n - a; ++v) inner += pu[u] * pv[v] * rule.value_from_ones(a - u + v);
      }
      total += choose[a] * fa * inner;
    }
    out.estimate = total;
    return out;
  }
  require_samples(samples);
  if (rule.kind == BooleanKind::dictator) {
    return run_mc(samples, seed, [&](SampleStream& s) { return s.uniform() < flip ? -1.0 : 1.0; });
  }
  return run_mc(samples, seed, [&](SampleStream& s) {
    const int a = binomial(s, n, 0.5);
    const int u = binomial(s, a, flip);
    const int v = binomial(s, n - a, flip);
    return static_cast<double>(rule.value_from_ones(a) * rule.value_from_ones(a - u + v));
  });
}

// ----------------------------------------------------------------------------

std::vector<ConvergenceRow> plurality_convergence_report(double rho, const std::vector<int>& ns, std::uint64_t samples,
                                                         std::uint64_t seed) {
  const NoiseKernel kernel(3, rho);
  const double limit = plurality_limit(rho);
  std::vector<ConvergenceRow> rows;
  for (int n : ns) {
    if (n < 1 || n % 2 == 0) throw DomainError("convergence report needs odd n");
    ConvergenceRow row;
    row.n = n;
    row.limit = limit;
    const VotingRule rule = VotingRule::plurality(3, n);
    if (power_checked(3, n, kEnumerationCap) <= kEnumerationCap) {
      row.value = noise_stability_exact(rule, kernel);
      row.exact = true;
    } else {
      const McEstimate e = noise_stability_mc(rule, kernel, samples, seed + static_cast<std::uint64_t>(n));
      row.value = e.estimate;
      row.standard_error = e.standard_error;
    }
    row.gap = row.value - limit;
    rows.push_back(row);
  }
  return rows;
}

std::vector<ConvergenceRow> majority_convergence_report(double rho, const std::vector<int>& ns, std::uint64_t samples,
                                                        std::uint64_t seed) {
  const double limit = majority_limit(rho);
  std::vector<ConvergenceRow> rows;
  for (int n : ns) {
    ConvergenceRow row;
    row.n = n;
    row.limit = limit;
    const BooleanRule rule{BooleanKind::majority, n};
    const McEstimate e = samples == 0
                             ? boolean_noise_stability(rule, rho, StabilityMode::exact)
                             : boolean_noise_stability(rule, rho, StabilityMode::mc, samples, seed + static_cast<std::uint64_t>(n));
    row.exact = samples == 0;
    row.value = e.estimate;
    row.standard_error = e.standard_error;
    row.gap = row.value - limit;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace nsl
