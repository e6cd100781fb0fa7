#include "nsl/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <string>

#include "nsl/errors.hpp"

namespace nsl {
namespace {

constexpr size_t kWorkspaceIntervals = 2000;

void silence_gsl() {
  static std::once_flag flag;
  std::call_once(flag, [] { gsl_set_error_handler_off(); });
}

double trampoline(double x, void* params) { return (*static_cast<const Integrand*>(params))(x); }

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};
using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;

Workspace make_workspace() {
  silence_gsl();
  return Workspace(gsl_integration_workspace_alloc(kWorkspaceIntervals));
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  silence_gsl();
  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(static_cast<size_t>(n));
  if (table == nullptr) throw DomainError("gauss_legendre: table allocation failed");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    gsl_integration_glfixed_point(a, b, static_cast<size_t>(i), &rule.nodes[i], &rule.weights[i], table);
  }
  gsl_integration_glfixed_table_free(table);
  return rule;
}

QuadratureRule gauss_hermite(int n) {
  if (n < 1) throw DomainError("gauss_hermite: need at least one node");
  silence_gsl();
  gsl_integration_fixed_workspace* w =
      gsl_integration_fixed_alloc(gsl_integration_fixed_hermite, static_cast<size_t>(n), 0.0, 1.0, 0.0, 0.0);
  if (w == nullptr) throw DomainError("gauss_hermite: allocation failed for n=" + std::to_string(n));
  QuadratureRule rule;
  const double* x = gsl_integration_fixed_nodes(w);
  const double* wt = gsl_integration_fixed_weights(w);
  rule.nodes.assign(x, x + n);
  rule.weights.assign(wt, wt + n);
  gsl_integration_fixed_free(w);
  return rule;
}

QuadratureRule gauss_hermite_normal(int n) {
  QuadratureRule rule = gauss_hermite(n);
  const double scale = std::sqrt(2.0);
  const double norm = 1.0 / std::sqrt(3.14159265358979323846);
  for (double& x : rule.nodes) x *= scale;
  for (double& w : rule.weights) w *= norm;
  return rule;
}

IntegralResult integrate(const Integrand& f, double a, double b, Tolerance tol) {
  IntegralResult out;
  if (a == b) return out;
  if (a > b) {
    out = integrate(f, b, a, tol);
    out.value = -out.value;
    return out;
  }
  Workspace ws = make_workspace();
  gsl_function g{&trampoline, const_cast<Integrand*>(&f)};
  const double inf = std::numeric_limits<double>::infinity();
  int status = 0;
  if (a == -inf && b == inf) {
    status = gsl_integration_qagi(&g, tol.abs, tol.rel, kWorkspaceIntervals, ws.get(), &out.value, &out.abs_error);
  } else if (b == inf) {
    status = gsl_integration_qagiu(&g, a, tol.abs, tol.rel, kWorkspaceIntervals, ws.get(), &out.value,
                                   &out.abs_error);
  } else if (a == -inf) {
    status = gsl_integration_qagil(&g, b, tol.abs, tol.rel, kWorkspaceIntervals, ws.get(), &out.value,
                                   &out.abs_error);
  } else {
    status = gsl_integration_qag(&g, a, b, tol.abs, tol.rel, kWorkspaceIntervals, GSL_INTEG_GAUSS21, ws.get(),
                                 &out.value, &out.abs_error);
  }
  out.converged = (status == GSL_SUCCESS);
  return out;
}

IntegralResult integrate(const Integrand& f, double a, double b, const std::vector<double>& points,
                         Tolerance tol) {
  IntegralResult total;
  double left = a;
  const size_t pieces = points.size() + 1;
  Tolerance piece_tol{tol.abs / static_cast<double>(pieces), tol.rel};
  for (size_t i = 0; i <= points.size(); ++i) {
    const double right = (i < points.size()) ? points[i] : b;
    if (right > left) {
      const IntegralResult part = integrate(f, left, right, piece_tol);
      total.value += part.value;
      total.abs_error += part.abs_error;
      total.converged = total.converged && part.converged;
    }
    left = right;
  }
  return total;
}

IntegralResult integrate_rectangle(const std::function<double(double, double)>& f, double x0, double x1,
                                   double y0, double y1, const std::vector<double>& x_points,
                                   const std::vector<double>& y_points, Tolerance tol) {
  const double width = std::fabs(x1 - x0);
  Tolerance inner_tol{tol.abs / std::max(width, 1.0), tol.rel};
  double inner_error = 0.0;
  bool inner_ok = true;
  Integrand outer = [&](double x) {
    Integrand row = [&](double y) { return f(x, y); };
    const IntegralResult r = integrate(row, y0, y1, y_points, inner_tol);
    inner_error = std::max(inner_error, r.abs_error);
    inner_ok = inner_ok && r.converged;
    return r.value;
  };
  IntegralResult out = integrate(outer, x0, x1, x_points, tol);
  out.abs_error += inner_error * width;
  out.converged = out.converged && inner_ok;
  return out;
}

}  // namespace nsl
