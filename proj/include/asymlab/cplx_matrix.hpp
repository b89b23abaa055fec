#pragma once

// Dense square complex matrices, row-major, value semantics.
// Multiplication goes through BLAS zgemm; everything else is plain loops.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace asymlab {

using cplx = std::complex<double>;

namespace blas {
extern "C" {
void zgemm_(const char* transa, const char* transb, const int* m, const int* n,
            const int* k, const cplx* alpha, const cplx* a, const int* lda,
            const cplx* b, const int* ldb, const cplx* beta, cplx* c,
            const int* ldc);
}
}  // namespace blas

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {
    if (dim < 0) throw std::invalid_argument("ComplexMatrix: negative dimension");
  }

  static ComplexMatrix identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(const std::vector<cplx>& d) {
    ComplexMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim_; ++i) m(i, i) = d[i];
    return m;
  }

  int dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
  const cplx& operator()(int i, int j) const {
    return a_[static_cast<size_t>(i) * dim_ + j];
  }

  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    check_same_dim(o);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    check_same_dim(o);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  ComplexMatrix& operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) {
    a *= s;
    return a;
  }

  void check_same_dim(const ComplexMatrix& o) const {
    if (dim_ != o.dim_)
      throw std::invalid_argument("ComplexMatrix: dimension mismatch (" +
                                  std::to_string(dim_) + " vs " +
                                  std::to_string(o.dim_) + ")");
  }

 private:
  int dim_ = 0;
  std::vector<cplx> a_;
};

// c = a * b via zgemm. Row-major product computed as b^T * a^T in column-major.
inline ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  a.check_same_dim(b);
  const int k = a.dim();
  ComplexMatrix c(k);
  if (k == 0) return c;
  const cplx one(1.0, 0.0), zero(0.0, 0.0);
  blas::zgemm_("N", "N", &k, &k, &k, &one, b.data(), &k, a.data(), &k, &zero,
               c.data(), &k);
  return c;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return multiply(a, b);
}

// Conjugate transpose.
inline ComplexMatrix adjoint(const ComplexMatrix& a) {
  const int k = a.dim();
  ComplexMatrix c(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) c(i, j) = std::conj(a(j, i));
  return c;
}

// a * diag(d) and diag(d) * a, numerically identical to the dense products.
inline ComplexMatrix scale_columns(const ComplexMatrix& a, const std::vector<cplx>& d) {
  const int k = a.dim();
  if (static_cast<int>(d.size()) != k)
    throw std::invalid_argument("scale_columns: size mismatch");
  ComplexMatrix c = a;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) c(i, j) *= d[j];
  return c;
}

inline ComplexMatrix scale_rows(const std::vector<cplx>& d, const ComplexMatrix& a) {
  const int k = a.dim();
  if (static_cast<int>(d.size()) != k)
    throw std::invalid_argument("scale_rows: size mismatch");
  ComplexMatrix c = a;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) c(i, j) *= d[i];
  return c;
}

inline cplx trace(const ComplexMatrix& a) {
  cplx t(0.0, 0.0);
  for (int i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

inline double max_abs_entry(const ComplexMatrix& a) {
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

}  // namespace asymlab
