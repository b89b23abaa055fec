#pragma once

// Matrix kernel: the three unitarily invariant norms, polar absolute value,
// skew-hermitian exponential, nearest self-adjoint involution, Haar-random
// unitaries. Eigendecompositions are delegated to LAPACK (zheev).

#ifndef LAPACK_COMPLEX_CPP
#define LAPACK_COMPLEX_CPP
#endif
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "asymlab/cplx_matrix.hpp"
#include "asymlab/rng.hpp"

namespace asymlab {

enum class NormKind { Operator, Frobenius, NormalizedHS };

inline const char* norm_name(NormKind kind) {
  switch (kind) {
    case NormKind::Operator: return "op";
    case NormKind::Frobenius: return "frob";
    case NormKind::NormalizedHS: return "hs";
  }
  return "?";
}

inline NormKind norm_from_name(const std::string& name) {
  if (name == "op") return NormKind::Operator;
  if (name == "frob") return NormKind::Frobenius;
  if (name == "hs") return NormKind::NormalizedHS;
  throw std::invalid_argument("unknown norm name: " + name);
}

inline double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  const cplx* p = a.data();
  const size_t n = static_cast<size_t>(a.dim()) * a.dim();
  for (size_t i = 0; i < n; ++i) s += std::norm(p[i]);
  return std::sqrt(s);
}

struct HermEig {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column j is the eigenvector of values[j]
};

// Eigendecomposition of a hermitian matrix (upper triangle is read).
inline HermEig herm_eig(const ComplexMatrix& h, bool want_vectors = true) {
  const int k = h.dim();
  HermEig out;
  out.values.assign(std::max(k, 1), 0.0);
  out.vectors = h;
  if (k == 0) return out;
  int info = LAPACKE_zheev(LAPACK_ROW_MAJOR, want_vectors ? 'V' : 'N', 'U', k,
                           reinterpret_cast<lapack_complex_double*>(out.vectors.data()),
                           k, out.values.data());
  if (info != 0)
    throw std::runtime_error("herm_eig: zheev failed, info=" + std::to_string(info));
  if (!want_vectors) out.vectors = ComplexMatrix();
  return out;
}

namespace detail {

// Largest singular value by power iteration on a^H a, relative tolerance 1e-8.
inline double operator_norm_power(const ComplexMatrix& a) {
  const int k = a.dim();
  std::vector<cplx> v(k), w(k), u(k);
  for (int i = 0; i < k; ++i)
    v[i] = cplx(1.0 + 0.5 * std::sin(1.0 + i), 0.25 * std::cos(2.0 + 2.0 * i));
  auto normalize = [&](std::vector<cplx>& x) {
    double s = 0;
    for (auto& c : x) s += std::norm(c);
    s = std::sqrt(s);
    if (s == 0.0) return false;
    for (auto& c : x) c /= s;
    return true;
  };
  if (!normalize(v)) return 0.0;
  double sigma = 0.0;
  for (int iter = 0; iter < 50000; ++iter) {
    for (int i = 0; i < k; ++i) {
      cplx s(0, 0);
      for (int j = 0; j < k; ++j) s += a(i, j) * v[j];
      w[i] = s;
    }
    double nw = 0;
    for (auto& c : w) nw += std::norm(c);
    nw = std::sqrt(nw);
    if (nw == 0.0) return 0.0;
    for (int j = 0; j < k; ++j) {
      cplx s(0, 0);
      for (int i = 0; i < k; ++i) s += std::conj(a(i, j)) * w[i];
      u[j] = s;
    }
    if (!normalize(u)) return nw;
    double prev = sigma;
    sigma = nw;
    v = u;
    if (iter > 2 && std::abs(sigma - prev) <= 1e-8 * sigma) break;
  }
  return sigma;
}

inline double operator_norm(const ComplexMatrix& a) {
  const int k = a.dim();
  if (k == 0) return 0.0;
  if (k > 600) return operator_norm_power(a);
  ComplexMatrix g = multiply(adjoint(a), a);
  HermEig eig = herm_eig(g, false);
  double lmax = eig.values.empty() ? 0.0 : eig.values.back();
  return std::sqrt(std::max(lmax, 0.0));
}

// v * diag(f) * v^H, forced exactly hermitian.
inline ComplexMatrix spectral_build(const ComplexMatrix& v, const std::vector<double>& f) {
  const int k = v.dim();
  ComplexMatrix vf = v;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) vf(i, j) *= f[j];
  ComplexMatrix b = multiply(vf, adjoint(v));
  for (int i = 0; i < k; ++i) {
    b(i, i) = cplx(b(i, i).real(), 0.0);
    for (int j = i + 1; j < k; ++j) {
      cplx m = 0.5 * (b(i, j) + std::conj(b(j, i)));
      b(i, j) = m;
      b(j, i) = std::conj(m);
    }
  }
  return b;
}

}  // namespace detail

inline double norm(const ComplexMatrix& a, NormKind kind) {
  switch (kind) {
    case NormKind::Operator: return detail::operator_norm(a);
    case NormKind::Frobenius: return frobenius_norm(a);
    case NormKind::NormalizedHS:
      return a.dim() == 0 ? 0.0 : frobenius_norm(a) / std::sqrt(static_cast<double>(a.dim()));
  }
  return 0.0;
}

inline double norm_of_difference(const ComplexMatrix& a, const ComplexMatrix& b,
                                 NormKind kind) {
  return norm(a - b, kind);
}

inline double distance_to_identity(const ComplexMatrix& a, NormKind kind) {
  return norm(a - ComplexMatrix::identity(a.dim()), kind);
}

constexpr double kUnitaryTol = 1e-10;

// Unitary with a verified near-unitarity invariant. The certification
// residual is ||u^H u - 1||_F, which dominates the operator norm.
class UnitaryMatrix {
 public:
  UnitaryMatrix() = default;
  explicit UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {
    ComplexMatrix g = multiply(adjoint(m_), m_);
    for (int i = 0; i < g.dim(); ++i) g(i, i) -= 1.0;
    residual_ = frobenius_norm(g);
    if (!(residual_ <= kUnitaryTol))
      throw std::invalid_argument("UnitaryMatrix: certification failed, ||U*U-1||_F=" +
                                  std::to_string(residual_));
  }

  static UnitaryMatrix identity(int dim) {
    UnitaryMatrix u;
    u.m_ = ComplexMatrix::identity(dim);
    u.residual_ = 0.0;
    return u;
  }

  // Diagonal fast path: u^H u is diagonal with entries |d_i|^2 exactly, so
  // the certification residual has a closed form.
  static UnitaryMatrix from_diagonal(const std::vector<cplx>& d) {
    UnitaryMatrix u;
    u.m_ = ComplexMatrix::diagonal(d);
    double s = 0.0;
    for (const cplx& v : d) {
      double gap = std::conj(v).real() * v.real() - std::conj(v).imag() * v.imag() - 1.0;
      s += gap * gap;
    }
    u.residual_ = std::sqrt(s);
    if (!(u.residual_ <= kUnitaryTol))
      throw std::invalid_argument("UnitaryMatrix: certification failed on diagonal");
    return u;
  }

  int dim() const { return m_.dim(); }
  const ComplexMatrix& matrix() const { return m_; }
  double certification_residual() const { return residual_; }

  const cplx& operator()(int i, int j) const { return m_(i, j); }

 private:
  ComplexMatrix m_;
  double residual_ = 0.0;
};

inline UnitaryMatrix adjoint(const UnitaryMatrix& u) {
  return UnitaryMatrix(adjoint(u.matrix()));
}

// |a| = (a^H a)^(1/2), positive semi-definite.
inline ComplexMatrix absolute_value(const ComplexMatrix& a) {
  ComplexMatrix g = multiply(adjoint(a), a);
  HermEig eig = herm_eig(g);
  std::vector<double> f(eig.values.size());
  for (size_t i = 0; i < f.size(); ++i) f[i] = std::sqrt(std::max(eig.values[i], 0.0));
  return detail::spectral_build(eig.vectors, f);
}

// (a + a^H)/2, hermitian exactly by construction.
inline ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  const int k = a.dim();
  ComplexMatrix h(k);
  for (int i = 0; i < k; ++i) {
    h(i, i) = cplx(a(i, i).real(), 0.0);
    for (int j = i + 1; j < k; ++j) {
      cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
      h(i, j) = m;
      h(j, i) = std::conj(m);
    }
  }
  return h;
}

// (a - a^H)/2, skew-hermitian exactly by construction.
inline ComplexMatrix skew_part(const ComplexMatrix& a) {
  const int k = a.dim();
  ComplexMatrix s(k);
  for (int i = 0; i < k; ++i) {
    s(i, i) = cplx(0.0, a(i, i).imag());
    for (int j = i + 1; j < k; ++j) {
      cplx m = 0.5 * (a(i, j) - std::conj(a(j, i)));
      s(i, j) = m;
      s(j, i) = -std::conj(m);
    }
  }
  return s;
}

// Nearest self-adjoint involution: spectral sign of the hermitian part,
// with the tie Re = 0 mapped to +1. Satisfies ||B - A|| <= ||1 - A^2|| in
// every unitarily invariant norm.
inline UnitaryMatrix nearest_involution(const UnitaryMatrix& a) {
  HermEig eig = herm_eig(hermitian_part(a.matrix()));
  std::vector<double> f(eig.values.size());
  for (size_t i = 0; i < f.size(); ++i) f[i] = eig.values[i] >= 0.0 ? 1.0 : -1.0;
  return UnitaryMatrix(detail::spectral_build(eig.vectors, f));
}

// exp(x) for skew-hermitian x, via the eigendecomposition of the hermitian
// matrix -i x. Input is symmetrized to exact skewness first; inputs that are
// not skew within tolerance are rejected.
inline UnitaryMatrix exp_skew(const ComplexMatrix& x) {
  const int k = x.dim();
  {
    ComplexMatrix defect_part = x + adjoint(x);
    if (norm(defect_part, NormKind::Operator) > 1e-10)
      throw std::invalid_argument("exp_skew: input is not skew-hermitian");
  }
  ComplexMatrix s = skew_part(x);
  ComplexMatrix h(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) h(i, j) = cplx(0, -1) * s(i, j);
  HermEig eig = herm_eig(h);
  ComplexMatrix vf = eig.vectors;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      vf(i, j) *= cplx(std::cos(eig.values[j]), std::sin(eig.values[j]));
  return UnitaryMatrix(multiply(vf, adjoint(eig.vectors)));
}

// Haar-distributed unitary: QR of a complex Ginibre matrix with the phase
// correction that makes the R diagonal positive.
inline UnitaryMatrix haar_unitary(int k, Rng& rng) {
  if (k < 1) throw std::invalid_argument("haar_unitary: k must be >= 1");
  ComplexMatrix g(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) g(i, j) = cplx(rng.gaussian(), rng.gaussian());
  std::vector<cplx> tau(k);
  int info = LAPACKE_zgeqrf(LAPACK_ROW_MAJOR, k, k,
                            reinterpret_cast<lapack_complex_double*>(g.data()), k,
                            reinterpret_cast<lapack_complex_double*>(tau.data()));
  if (info != 0) throw std::runtime_error("haar_unitary: zgeqrf failed");
  std::vector<cplx> phases(k);
  for (int j = 0; j < k; ++j) {
    cplx r = g(j, j);
    double m = std::abs(r);
    phases[j] = m == 0.0 ? cplx(1, 0) : r / m;
  }
  info = LAPACKE_zungqr(LAPACK_ROW_MAJOR, k, k, k,
                        reinterpret_cast<lapack_complex_double*>(g.data()), k,
                        reinterpret_cast<lapack_complex_double*>(tau.data()));
  if (info != 0) throw std::runtime_error("haar_unitary: zungqr failed");
  return UnitaryMatrix(scale_columns(g, phases));
}

}  // namespace asymlab
