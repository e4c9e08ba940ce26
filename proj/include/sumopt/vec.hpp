#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace sumopt {

// Dense real parameter vector. Value semantics; library operations return
// fresh vectors, so a constructed vector is safe to share across runs.
class ParamVector {
 public:
  ParamVector() = default;
  explicit ParamVector(std::size_t dim, double fill = 0.0) : e_(dim, fill) {}
  ParamVector(std::initializer_list<double> init) : e_(init) {}
  explicit ParamVector(std::vector<double> entries) : e_(std::move(entries)) {}

  std::size_t dim() const { return e_.size(); }
  double operator[](std::size_t i) const { return e_[i]; }
  double& operator[](std::size_t i) { return e_[i]; }

  const double* data() const { return e_.data(); }
  double* data() { return e_.data(); }
  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }

  bool all_finite() const;

  friend bool operator==(const ParamVector&, const ParamVector&) = default;

 private:
  std::vector<double> e_;
};

// a*x + y; dimension mismatch is a hard error on every binary operation.
ParamVector axpy(double a, const ParamVector& x, const ParamVector& y);
// y += a*x
void axpy_inplace(double a, const ParamVector& x, ParamVector& y);

ParamVector add(const ParamVector& x, const ParamVector& y);
ParamVector sub(const ParamVector& x, const ParamVector& y);
ParamVector scale(double a, const ParamVector& x);

double dot(const ParamVector& x, const ParamVector& y);
double norm2(const ParamVector& x);  // Euclidean norm
double norm_inf(const ParamVector& x);
double max_abs_diff(const ParamVector& x, const ParamVector& y);

}  // namespace sumopt
