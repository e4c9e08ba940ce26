#include "sumopt/vec.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sumopt {

namespace {

void require_same_dim(const ParamVector& x, const ParamVector& y, const char* op) {
  if (x.dim() != y.dim()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                std::to_string(x.dim()) + " vs " + std::to_string(y.dim()) + ")");
  }
}

}  // namespace

bool ParamVector::all_finite() const {
  for (double v : e_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

ParamVector axpy(double a, const ParamVector& x, const ParamVector& y) {
  require_same_dim(x, y, "axpy");
  ParamVector r(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) r[i] = a * x[i] + y[i];
  return r;
}

void axpy_inplace(double a, const ParamVector& x, ParamVector& y) {
  require_same_dim(x, y, "axpy_inplace");
  for (std::size_t i = 0; i < x.dim(); ++i) y[i] += a * x[i];
}

ParamVector add(const ParamVector& x, const ParamVector& y) {
  require_same_dim(x, y, "add");
  ParamVector r(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) r[i] = x[i] + y[i];
  return r;
}

ParamVector sub(const ParamVector& x, const ParamVector& y) {
  require_same_dim(x, y, "sub");
  ParamVector r(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) r[i] = x[i] - y[i];
  return r;
}

ParamVector scale(double a, const ParamVector& x) {
  ParamVector r(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) r[i] = a * x[i];
  return r;
}

double dot(const ParamVector& x, const ParamVector& y) {
  require_same_dim(x, y, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(const ParamVector& x) { return std::sqrt(dot(x, x)); }

double norm_inf(const ParamVector& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const ParamVector& x, const ParamVector& y) {
  require_same_dim(x, y, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

}  // namespace sumopt
