#include "tailmix/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "tailmix/errors.hpp"

namespace tailmix::quad {

namespace {

const bool g_handler_off = [] {
  gsl_set_error_handler_off();
  return true;
}();

double call_thunk(double x, void* p) {
  auto* f = static_cast<const std::function<double(double)>*>(p);
  return (*f)(x);
}

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const {
    gsl_integration_workspace_free(w);
  }
};

}  // namespace

Result integrate(const std::function<double(double)>& f, double lo, double hi,
                 const Options& opt) {
  (void)g_handler_off;
  if (!(lo <= hi)) throw InputError("integrate: bad interval");
  if (lo == hi) return {0.0, 0.0};

  std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(
      gsl_integration_workspace_alloc(opt.workspace));
  if (!ws) throw NumericError("integrate: workspace allocation failed");

  gsl_function gf;
  gf.function = &call_thunk;
  gf.params = const_cast<std::function<double(double)>*>(&f);

  std::vector<double> pts;
  pts.push_back(lo);
  for (double b : opt.breakpoints)
    if (b > lo && b < hi) pts.push_back(b);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) {
                          return std::fabs(a - b) <= 1e-15 * (std::fabs(a) + std::fabs(b));
                        }),
            pts.end());

  double value = 0.0, abs_err = 0.0;
  int status;
  if (pts.size() > 2) {
    status = gsl_integration_qagp(&gf, pts.data(), pts.size(), opt.abs_tol,
                                  opt.rel_tol, opt.workspace, ws.get(), &value,
                                  &abs_err);
  } else {
    status = gsl_integration_qags(&gf, lo, hi, opt.abs_tol, opt.rel_tol,
                                  opt.workspace, ws.get(), &value, &abs_err);
  }

  if (status != GSL_SUCCESS) {
    double tol = std::max(opt.abs_tol, opt.rel_tol * std::fabs(value));
    // Roundoff-limited results that still meet a slack tolerance are usable.
    if (abs_err <= 64.0 * tol) return {value, abs_err};
    std::ostringstream msg;
    msg << "integrate: tolerance not reached (" << gsl_strerror(status)
        << "), achieved abs error " << abs_err;
    throw NumericError(msg.str(), abs_err);
  }
  return {value, abs_err};
}

Result integrate_tail(const std::function<double(double)>& f, double lo,
                      const std::function<double(double)>& remainder,
                      double rel_tol, const std::vector<double>& breakpoints,
                      double block, double s_cap) {
  double acc = 0.0, err = 0.0;
  double s = lo;
  while (s < lo + s_cap) {
    double e = s + block;
    Options opt;
    opt.rel_tol = 0.1 * rel_tol;
    opt.abs_tol = acc > 0.0 ? 0.05 * rel_tol * acc : 1e-300;
    for (double b : breakpoints)
      if (b > s && b < e) opt.breakpoints.push_back(b);
    Result r = integrate(f, s, e, opt);
    acc += r.value;
    err += r.abs_error;
    s = e;
    double rem = remainder(s);
    if (acc > 0.0 && rem <= rel_tol * acc) return {acc, err + rem};
    if (acc == 0.0 && rem <= 1e-300) return {acc, err + rem};
  }
  throw NumericError("integrate_tail: truncation bound unreachable", remainder(s));
}

}  // namespace tailmix::quad
