#include "nsl/check_registry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "nsl/errors.hpp"
#include "nsl/special_functions.hpp"

namespace nsl {
namespace {

// Collects the overrides a check consumed so leftovers can be rejected.
class OverrideReader {
 public:
  OverrideReader(std::string check, const CheckOverrides& o, int scale) : check_(std::move(check)), o_(o), scale_(scale) {}

  int count(int value) const { return value * scale_; }
  // A refined odd-sized simplex grid keeps the parity of the original.
  int simplex_count(int value) const { return scale_ == 1 ? value : 2 * value - 1; }

  std::optional<double> rho() {
    used_rho_ = true;
    return o_.rho;
  }
  std::optional<int> depth() {
    used_depth_ = true;
    return o_.depth;
  }
  const GridAxis* axis(const std::string& name) {
    for (const auto& a : o_.grid) {
      if (a.name == name) {
        used_axes_.push_back(name);
        return &a;
      }
    }
    return nullptr;
  }
  // Replaces an axis wholesale, keeping the default spacing type.
  GridAxis axis_or(const GridAxis& fallback) {
    GridAxis out = fallback;
    if (const GridAxis* a = axis(fallback.name)) {
      out.min = a->min;
      out.max = a->max;
      out.count = a->count;
    }
    out.count = count(out.count);
    out.validate();
    return out;
  }
  // An r axis anchored at 0 (the listings always start at r = 0).
  void radial(double& r_max, int& n) {
    if (const GridAxis* a = axis("r")) {
      if (a->min != 0.0) throw GridError(check_ + ": the r axis must start at 0");
      r_max = a->max;
      n = a->count;
    }
    n = count(n);
  }
  // The full simplex of angles; only the count is adjustable.
  void simplex(int& numpts, const std::string& name = "theta", double lo = 0.0, double hi = 2.0 * kPi) {
    if (const GridAxis* a = axis(name)) {
      if (std::fabs(a->min - lo) > 1e-3 || std::fabs(a->max - hi) > 1e-3) {
        throw GridError(check_ + ": the " + name + " axis is fixed to [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]; only its count can change");
      }
      numpts = a->count;
    }
    numpts = simplex_count(numpts);
  }

  void finish() const {
    if (o_.rho && !used_rho_) throw GridError(check_ + " has no rho parameter");
    if (o_.depth && !used_depth_) throw GridError(check_ + " has no series depth parameter");
    for (const auto& a : o_.grid) {
      if (std::find(used_axes_.begin(), used_axes_.end(), a.name) == used_axes_.end()) {
        throw GridError(check_ + " has no grid axis '" + a.name + "'");
      }
    }
  }

 private:
  std::string check_;
  const CheckOverrides& o_;
  int scale_;
  bool used_rho_ = false;
  bool used_depth_ = false;
  std::vector<std::string> used_axes_;
};

using Runner = std::function<CheckReport(OverrideReader&)>;

struct Entry {
  CheckInfo info;
  Runner run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {{"two8", "sector lower bound, rho = 0.1, c = .109", true},
       [](OverrideReader& r) {
         Two8Options o;
         if (auto v = r.rho()) o.rho = *v;
         r.radial(o.r_max, o.count);
         return check_two8(o);
       }},
      {{"two8_variant", "sector lower bound, rho = 0.04, c = .3", true},
       [](OverrideReader& r) {
         Two8Options o;
         o.rho = 0.04;
         o.constant = 0.3;
         if (auto v = r.rho()) o.rho = *v;
         r.radial(o.r_max, o.count);
         return check_two8(o);
       }},
      {{"rk1comp", "arc deficit plus .3 p I1/I0 is nonpositive, a in {0.01, 0.1}", true},
       [](OverrideReader& r) {
         Rk1compOptions o;
         o.a = {0.01, 0.1};
         if (auto v = r.rho()) o.a = {*v};
         if (auto d = r.depth()) o.depth = *d;
         r.simplex(o.numpts);
         return check_rk1comp(o);
       }},
      {{"lastlem", "sine deficit <= 4.715 times squared imbalance", true},
       [](OverrideReader& r) {
         LastlemOptions o;
         r.simplex(o.numpts);
         return check_lastlem(o);
       }},
      {{"convbd2", "smoothed radial exponential lower bound, rho = 0.05", true},
       [](OverrideReader& r) {
         Convbd2Options o;
         if (auto v = r.rho()) o.rho = *v;
         r.radial(o.r_max, o.count);
         return check_convbd2(o);
       }},
      {{"neg_linear", "negative-correlation linear deficit bound, a in {0.1, 1, 10, 50}", true},
       [](OverrideReader& r) {
         NegLinearOptions o;
         if (auto v = r.rho()) o.a = {*v};
         if (auto d = r.depth()) o.depth = *d;
         r.simplex(o.numpts);
         return check_neg_linear(o);
       }},
      {{"lemma28_constant", "three-term closed form <= 2.5 (rho + rho^2)", false},
       [](OverrideReader& r) {
         Lemma28Options o;
         o.rho = r.axis_or(o.rho);
         return check_lemma28_constant(o);
       }},
      {{"lemma29_constant", "Gaussian-tail bracket <= 5 rho + 8 rho^2", false},
       [](OverrideReader& r) {
         Lemma29Options o;
         o.rho = r.axis_or(o.rho);
         return check_lemma29_constant(o);
       }},
      {{"lemma29z_constant", "odd-mode main and alpha terms", false},
       [](OverrideReader& r) {
         Lemma29zOptions o;
         o.rho = r.axis_or(o.rho);
         return check_lemma29z_constant(o);
       }},
      {{"cor1_scalar", "scalar inequality behind the sector corollary", false},
       [](OverrideReader& r) {
         Cor1Options o;
         o.x = r.axis_or(o.x);
         return check_cor1_scalar(o);
       }},
      {{"lemma10_conclusion", "arc deficit bound when theta_1 >= pi", false},
       [](OverrideReader& r) {
         Lemma10Options o;
         if (auto v = r.rho()) o.a = {*v};
         if (auto d = r.depth()) o.depth = *d;
         int n1 = o.numpts, n2 = o.numpts;
         r.simplex(n1, "theta1", kPi, 2.0 * kPi);
         r.simplex(n2, "theta2", 0.0, kPi);
         o.numpts = std::max(n1, n2);
         return check_lemma10_conclusion(o);
       }},
      {{"lemma7", "arc deficit bound when every theta_i <= pi", false},
       [](OverrideReader& r) {
         Lemma7Options o;
         if (auto v = r.rho()) o.a = {*v};
         if (auto d = r.depth()) o.depth = *d;
         r.simplex(o.numpts);
         return check_lemma7(o);
       }},
      {{"three1", "weighted eigenvalue sums over d not divisible by 3 versus odd d", false},
       [](OverrideReader& r) {
         Three1Options o;
         o.a = r.axis_or(o.a);
         if (auto d = r.depth()) o.depth = *d;
         return check_three1(o);
       }},
      {{"lemma5", "monotonicity of the arc derivative", false},
       [](OverrideReader& r) {
         Lemma5Options o;
         if (auto v = r.rho()) o.a = {*v};
         r.simplex(o.numpts);
         return check_lemma5(o);
       }},
      {{"lemma6", "sine-window ratio < 2t/pi", false},
       [](OverrideReader& r) {
         Lemma6Options o;
         if (auto v = r.rho()) o.a = {*v};
         if (const GridAxis* a = r.axis("t")) o.numpts = a->count;
         o.numpts = r.count(o.numpts);
         return check_lemma6(o);
       }},
      {{"ratio_bounds", "Bessel ratio brackets", false},
       [](OverrideReader& r) {
         RatioBoundOptions o;
         o.a = r.axis_or(o.a);
         return check_ratio_bounds(o);
       }},
  };
  return table;
}

const Entry& find_entry(const std::string& name) {
  for (const auto& e : entries()) {
    if (e.info.name == name) return e;
  }
  throw DomainError("unknown check '" + name + "'");
}

CheckReport run_scaled(const Entry& e, const CheckOverrides& overrides, int scale) {
  OverrideReader reader(e.info.name, overrides, scale);
  CheckReport report = e.run(reader);
  reader.finish();
  return report;
}

}  // namespace

const std::vector<CheckInfo>& registered_checks() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

bool is_registered_check(const std::string& name) {
  return std::any_of(entries().begin(), entries().end(), [&](const Entry& e) { return e.info.name == name; });
}

std::vector<std::string> suite_members(const std::string& suite) {
  std::vector<std::string> out;
  for (const auto& e : entries()) {
    if (suite == "all" || (suite == "matlab" && e.info.replica) || (suite == "scalar" && !e.info.replica)) {
      out.push_back(e.info.name);
    }
  }
  return out;
}

CheckReport run_check(const std::string& name, const CheckOverrides& overrides) {
  const Entry& e = find_entry(name);
  CheckReport report = run_scaled(e, overrides, 1);
  report.name = e.info.name;
  if (!overrides.refine) return report;
  const CheckReport fine = run_scaled(e, overrides, 2);
  report.details.push_back({"refined_min_margin", fine.min_margin});
  report.details.push_back({"refined_passed", fine.passed ? 1.0 : 0.0});
  if (fine.passed != report.passed) {
    report.warnings.push_back(std::string("verdict flips to ") + (fine.passed ? "pass" : "fail") +
                              " on the refined grid");
  } else if (std::isfinite(report.min_margin) &&
             std::fabs(fine.min_margin - report.min_margin) > 0.1 * std::fabs(report.min_margin)) {
    report.warnings.push_back("min_margin moves by more than 10% on the refined grid");
  }
  return report;
}

}  // namespace nsl
