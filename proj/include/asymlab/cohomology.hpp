#pragma once

// Defect-diminishing pipeline: multiplication-defect cochain of a lift, the
// associated 2-cocycle for the conjugation action, least-squares coboundary
// solve over a window, skew-symmetrization, exponential correction, and the
// iterated correction loop.

#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "asymlab/almostrep.hpp"
#include "asymlab/groups.hpp"
#include "asymlab/normkit.hpp"

namespace asymlab {

// Map from window elements to k x k matrices; the value at the identity is
// pinned to zero throughout the pipeline.
struct Cochain1 {
  std::shared_ptr<const Window> window;
  std::vector<ComplexMatrix> values;  // aligned with window elements

  static Cochain1 zero(std::shared_ptr<const Window> w, int dim) {
    Cochain1 c;
    c.values.assign(w->size(), ComplexMatrix(dim));
    c.window = std::move(w);
    return c;
  }
};

// Map from admissible pairs (g, h both in the window with gh in the window)
// to k x k matrices.
struct Cochain2 {
  std::shared_ptr<const Window> window;
  std::vector<std::pair<int, int>> pairs;
  std::vector<ComplexMatrix> values;  // aligned with pairs
  std::vector<int> slot;              // dense (g, h) -> pair slot or -1

  static Cochain2 zeros_on(std::shared_ptr<const Window> w, int dim) {
    Cochain2 c;
    const int n = w->size();
    c.slot.assign(static_cast<size_t>(n) * n, -1);
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < n; ++h)
        if (w->product(g, h) >= 0) {
          c.slot[static_cast<size_t>(g) * n + h] = static_cast<int>(c.pairs.size());
          c.pairs.emplace_back(g, h);
        }
    c.values.assign(c.pairs.size(), ComplexMatrix(dim));
    c.window = std::move(w);
    return c;
  }

  int slot_of(int g, int h) const {
    return slot[static_cast<size_t>(g) * window->size() + h];
  }
  const ComplexMatrix& at(int g, int h) const {
    int s = slot_of(g, h);
    if (s < 0) throw std::invalid_argument("Cochain2: pair not admissible");
    return values[s];
  }
};

inline double max_frobenius(const Cochain1& c) {
  double m = 0.0;
  for (const auto& v : c.values) m = std::max(m, frobenius_norm(v));
  return m;
}

inline double max_frobenius(const Cochain2& c) {
  double m = 0.0;
  for (const auto& v : c.values) m = std::max(m, frobenius_norm(v));
  return m;
}

// Multiplication-defect cochain of a lift, normalized by eps:
// c(g, h) = (values(g) values(h) - values(gh)) / eps. For eps = 0 (a genuine
// representation) the cochain is zero by convention.
inline Cochain2 hochschild_cocycle(const Lift& lift, double eps) {
  if (eps < 0) throw std::invalid_argument("hochschild_cocycle: eps must be >= 0");
  const int dim = lift.values.empty() ? 0 : lift.values[0].dim();
  Cochain2 c = Cochain2::zeros_on(lift.window, dim);
  if (eps == 0.0) return c;
  const cplx inv_eps(1.0 / eps, 0.0);
  for (size_t s = 0; s < c.pairs.size(); ++s) {
    auto [g, h] = c.pairs[s];
    int gh = lift.window->product(g, h);
    ComplexMatrix num = multiply(lift.value(g).matrix(), lift.value(h).matrix());
    num -= lift.value(gh).matrix();
    num *= inv_eps;
    c.values[s] = std::move(num);
  }
  return c;
}

// alpha(g, h) = c(g, h) values(gh)^*: a 2-cocycle for the conjugation action
// T -> values(g) T values(g)^*.
inline Cochain2 to_group_cocycle(const Cochain2& c, const Lift& lift) {
  if (c.window.get() != lift.window.get())
    throw std::invalid_argument("to_group_cocycle: window mismatch");
  Cochain2 a = c;
  for (size_t s = 0; s < a.pairs.size(); ++s) {
    auto [g, h] = a.pairs[s];
    int gh = lift.window->product(g, h);
    a.values[s] = multiply(c.values[s], adjoint(lift.value(gh).matrix()));
  }
  return a;
}

// d beta (g, h) = values(g) beta(h) values(g)^* - beta(gh) + beta(g).
inline Cochain2 coboundary1(const Cochain1& beta, const Lift& lift) {
  if (beta.window.get() != lift.window.get())
    throw std::invalid_argument("coboundary1: window mismatch");
  const int dim = beta.values.empty() ? 0 : beta.values[0].dim();
  Cochain2 d = Cochain2::zeros_on(lift.window, dim);
  for (size_t s = 0; s < d.pairs.size(); ++s) {
    auto [g, h] = d.pairs[s];
    int gh = lift.window->product(g, h);
    const ComplexMatrix& ug = lift.value(g).matrix();
    ComplexMatrix v = multiply(multiply(ug, beta.values[h]), adjoint(ug));
    v -= beta.values[gh];
    v += beta.values[g];
    d.values[s] = std::move(v);
  }
  return d;
}

struct CocycleResiduals {
  double hochschild_residual = 0.0;
  double symmetry_residual = 0.0;
  double group_cocycle_residual = 0.0;
};

// Identity defects of the cochain, measured over every admissible pair and
// triple of the window. These identities are exact algebra, so the residuals
// sit at floating-point level regardless of the defect size.
inline CocycleResiduals cocycle_residuals(const Cochain2& c, const Lift& lift) {
  if (c.window.get() != lift.window.get())
    throw std::invalid_argument("cocycle_residuals: window mismatch");
  const Window& w = *lift.window;
  const int n = w.size();
  CocycleResiduals out;

  for (auto [g, h] : c.pairs) {
    int s1 = c.slot_of(w.inverse(h), w.inverse(g));  // always admissible
    ComplexMatrix diff = adjoint(c.at(g, h)) - c.values[s1];
    out.symmetry_residual = std::max(out.symmetry_residual, frobenius_norm(diff));
  }

  Cochain2 alpha = to_group_cocycle(c, lift);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      int gh = w.product(g, h);
      if (gh < 0) continue;
      for (int k = 0; k < n; ++k) {
        int hk = w.product(h, k);
        int ghk = w.product(gh, k);
        if (hk < 0 || ghk < 0) continue;
        {
          ComplexMatrix r = multiply(lift.value(g).matrix(), c.at(h, k));
          r -= c.at(gh, k);
          r += c.at(g, hk);
          r -= multiply(c.at(g, h), lift.value(k).matrix());
          out.hochschild_residual = std::max(out.hochschild_residual, frobenius_norm(r));
        }
        {
          const ComplexMatrix& ug = lift.value(g).matrix();
          ComplexMatrix r = multiply(multiply(ug, alpha.at(h, k)), adjoint(ug));
          r -= alpha.at(gh, k);
          r += alpha.at(g, hk);
          r -= alpha.at(g, h);
          out.group_cocycle_residual = std::max(out.group_cocycle_residual, frobenius_norm(r));
        }
      }
    }
  return out;
}

struct CoboundarySolution {
  Cochain1 beta;        // skew-hermitian valued, beta(1) = 0
  double residual = 0.0;  // sqrt(sum over admissible pairs ||d beta - alpha||_F^2)
  int iterations = 0;     // 0 for the direct path
  bool converged = true;
};

namespace detail {

// One linear-operator term of a coboundary equation row: sign * T for
// conjugator < 0, or conjugation by the window unitary at `conjugator`.
struct CoboundaryTerm {
  int col;         // unknown block (window index - 1)
  int conjugator;  // window index or -1
  double sign;
};

struct CoboundarySystem {
  const Lift* lift;
  int dim;                    // matrix size k
  int blocks;                 // number of unknown matrices (|F| - 1)
  std::vector<std::vector<CoboundaryTerm>> rows;  // one per contributing pair
  std::vector<const ComplexMatrix*> rhs;          // alpha value per row

  int vec_len() const { return blocks * dim * dim; }
};

inline CoboundarySystem build_system(const Cochain2& alpha, const Lift& lift) {
  const Window& w = *lift.window;
  CoboundarySystem sys;
  sys.lift = &lift;
  sys.dim = lift.values.empty() ? 0 : lift.values[0].dim();
  sys.blocks = w.size() - 1;
  for (size_t s = 0; s < alpha.pairs.size(); ++s) {
    auto [g, h] = alpha.pairs[s];
    if (g == 0 || h == 0) continue;  // rows that are identically zero
    int gh = w.product(g, h);
    std::vector<CoboundaryTerm> row;
    row.push_back({h - 1, g, 1.0});
    if (gh != 0) row.push_back({gh - 1, -1, -1.0});
    row.push_back({g - 1, -1, 1.0});
    sys.rows.push_back(std::move(row));
    sys.rhs.push_back(&alpha.values[s]);
  }
  return sys;
}

inline void apply_term(const CoboundarySystem& sys, const CoboundaryTerm& t,
                       const ComplexMatrix& x, ComplexMatrix& acc, bool adjoint_op) {
  ComplexMatrix y;
  if (t.conjugator < 0) {
    y = x;
  } else {
    const ComplexMatrix& u = sys.lift->value(t.conjugator).matrix();
    y = adjoint_op ? multiply(multiply(adjoint(u), x), u)
                   : multiply(multiply(u, x), adjoint(u));
  }
  if (t.sign < 0) acc -= y; else acc += y;
}

// Forward operator: unknowns (one matrix per non-identity element) to one
// matrix per row.
inline std::vector<ComplexMatrix> apply_forward(const CoboundarySystem& sys,
                                                const std::vector<ComplexMatrix>& x) {
  std::vector<ComplexMatrix> out(sys.rows.size(), ComplexMatrix(sys.dim));
  for (size_t r = 0; r < sys.rows.size(); ++r)
    for (const auto& t : sys.rows[r]) apply_term(sys, t, x[t.col], out[r], false);
  return out;
}

inline std::vector<ComplexMatrix> apply_adjoint(const CoboundarySystem& sys,
                                                const std::vector<ComplexMatrix>& resid) {
  std::vector<ComplexMatrix> out(sys.blocks, ComplexMatrix(sys.dim));
  for (size_t r = 0; r < sys.rows.size(); ++r)
    for (const auto& t : sys.rows[r]) apply_term(sys, t, resid[r], out[t.col], true);
  return out;
}

inline double dot_real(const std::vector<ComplexMatrix>& a,
                       const std::vector<ComplexMatrix>& b) {
  double s = 0.0;
  for (size_t m = 0; m < a.size(); ++m) {
    const cplx* pa = a[m].data();
    const cplx* pb = b[m].data();
    size_t n = static_cast<size_t>(a[m].dim()) * a[m].dim();
    for (size_t i = 0; i < n; ++i)
      s += pa[i].real() * pb[i].real() + pa[i].imag() * pb[i].imag();
  }
  return s;
}

// Conjugate gradient on the normal equations, started from zero so the
// limit is the minimal-norm least-squares solution. Convergence is declared
// at 1e-10 relative on the normal-equation residual; iteration continues
// to a tighter floor while it still makes progress.
inline std::pair<std::vector<ComplexMatrix>, std::pair<int, bool>> solve_cgls(
    const CoboundarySystem& sys) {
  std::vector<ComplexMatrix> x(sys.blocks, ComplexMatrix(sys.dim));
  std::vector<ComplexMatrix> resid(sys.rows.size(), ComplexMatrix(sys.dim));
  for (size_t r = 0; r < sys.rows.size(); ++r) resid[r] = *sys.rhs[r];
  std::vector<ComplexMatrix> s = apply_adjoint(sys, resid);
  std::vector<ComplexMatrix> p = s;
  double gamma = dot_real(s, s);
  const double gamma0 = gamma;
  if (gamma0 == 0.0) return {x, {0, true}};
  const double target = 1e-20 * gamma0;  // (1e-10 relative)^2
  const double floor = 1e-28 * gamma0;
  const int cap = 10 * 2 * sys.vec_len();
  int iter = 0;
  int stagnant = 0;
  for (; iter < cap; ++iter) {
    if (gamma <= floor || stagnant >= 50) break;
    std::vector<ComplexMatrix> q = apply_forward(sys, p);
    double qq = dot_real(q, q);
    if (qq == 0.0) break;
    double alpha = gamma / qq;
    for (int m = 0; m < sys.blocks; ++m) x[m] += cplx(alpha, 0) * p[m];
    for (size_t r = 0; r < resid.size(); ++r) resid[r] -= cplx(alpha, 0) * q[r];
    s = apply_adjoint(sys, resid);
    double gamma_new = dot_real(s, s);
    stagnant = gamma_new > 0.99 * gamma ? stagnant + 1 : 0;
    double beta = gamma_new / gamma;
    for (int m = 0; m < sys.blocks; ++m) {
      ComplexMatrix np = s[m];
      np += cplx(beta, 0) * p[m];
      p[m] = std::move(np);
    }
    gamma = gamma_new;
  }
  return {x, {iter, gamma <= target}};
}

// Dense route: assemble the normal matrix block-wise (every block is a sum
// of conjugation operators), eigendecompose, and apply the pseudo-inverse.
// Rank-revealing and minimal-norm by construction.
inline std::vector<ComplexMatrix> solve_dense(const CoboundarySystem& sys) {
  const int k = sys.dim;
  const int k2 = k * k;
  const int N = sys.vec_len();
  ComplexMatrix M(N);
  std::vector<ComplexMatrix> z(sys.blocks, ComplexMatrix(k));

  ComplexMatrix eye = ComplexMatrix::identity(k);
  auto term_matrix = [&](const CoboundaryTerm& t) -> ComplexMatrix {
    if (t.conjugator < 0) return eye;
    return sys.lift->value(t.conjugator).matrix();
  };
  for (size_t r = 0; r < sys.rows.size(); ++r) {
    const auto& row = sys.rows[r];
    for (const auto& ta : row) {
      // rhs accumulation: z[col] += sign * conj^H(alpha)
      ComplexMatrix contrib(k);
      apply_term(sys, ta, *sys.rhs[r], contrib, true);
      z[ta.col] += contrib;
      for (const auto& tb : row) {
        ComplexMatrix wa = term_matrix(ta);
        ComplexMatrix wb = term_matrix(tb);
        ComplexMatrix wprod = (ta.conjugator < 0 && tb.conjugator < 0)
                                  ? eye
                                  : (ta.conjugator < 0 ? wb
                                     : tb.conjugator < 0
                                         ? adjoint(wa)
                                         : multiply(adjoint(wa), wb));
        double sgn = ta.sign * tb.sign;
        // vec(W T W^*) = K vec(T), K[(i j), (p q)] = W_ip conj(W_jq)
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j)
            for (int p = 0; p < k; ++p)
              for (int q = 0; q < k; ++q)
                M(ta.col * k2 + i * k + j, tb.col * k2 + p * k + q) +=
                    sgn * wprod(i, p) * std::conj(wprod(j, q));
      }
    }
  }

  HermEig eig = herm_eig(M);
  double dmax = 0.0;
  for (double d : eig.values) dmax = std::max(dmax, std::abs(d));
  double cutoff = dmax * 1e-11;
  std::vector<cplx> zv(N), xv(N, cplx(0, 0));
  for (int m = 0; m < sys.blocks; ++m)
    for (int i = 0; i < k2; ++i) zv[m * k2 + i] = z[m].data()[i];
  for (int c = 0; c < N; ++c) {
    if (!(eig.values[c] > cutoff)) continue;
    cplx proj(0, 0);
    for (int r = 0; r < N; ++r) proj += std::conj(eig.vectors(r, c)) * zv[r];
    proj /= eig.values[c];
    for (int r = 0; r < N; ++r) xv[r] += eig.vectors(r, c) * proj;
  }
  std::vector<ComplexMatrix> x(sys.blocks, ComplexMatrix(k));
  for (int m = 0; m < sys.blocks; ++m)
    for (int i = 0; i < k2; ++i) x[m].data()[i] = xv[m * k2 + i];
  return x;
}

}  // namespace detail

// Minimal-norm least-squares solve of d beta = alpha over the window, then
// skew-symmetrization; the reported residual is re-measured after the
// symmetrization. Small systems go through a dense rank-revealing
// factorization of the normal matrix, larger ones through conjugate
// gradients on the normal equations.
inline CoboundarySolution solve_coboundary(const Cochain2& alpha, const Lift& lift) {
  if (alpha.window.get() != lift.window.get())
    throw std::invalid_argument("solve_coboundary: window mismatch");
  const int dim = lift.values.empty() ? 0 : lift.values[0].dim();
  detail::CoboundarySystem sys = detail::build_system(alpha, lift);

  CoboundarySolution out;
  out.beta = Cochain1::zero(lift.window, dim);

  std::vector<ComplexMatrix> x;
  if (sys.vec_len() <= 512) {
    x = detail::solve_dense(sys);
  } else {
    auto [sol, info] = detail::solve_cgls(sys);
    x = std::move(sol);
    out.iterations = info.first;
    out.converged = info.second;
  }

  for (int m = 0; m < sys.blocks; ++m) out.beta.values[m + 1] = skew_part(x[m]);

  Cochain2 reached = coboundary1(out.beta, lift);
  double acc = 0.0;
  for (size_t s = 0; s < alpha.pairs.size(); ++s) {
    double d = frobenius_norm(reached.values[s] - alpha.values[s]);
    acc += d * d;
  }
  out.residual = std::sqrt(acc);
  return out;
}

// psi(s) = exp(-eps beta(s)) values(s), restricted to the generators.
inline AlmostRep correct(const Lift& lift, const Cochain1& beta, double eps) {
  if (beta.window.get() != lift.window.get())
    throw std::invalid_argument("correct: window mismatch");
  if (!(eps > 0)) throw std::invalid_argument("correct: eps must be positive");
  for (const auto& b : beta.values)
    if (frobenius_norm(b + adjoint(b)) > 1e-10)
      throw std::invalid_argument("correct: beta is not skew-hermitian");
  const Window& w = *lift.window;
  const NormalFormGroup& group = w.group();
  const Presentation& pres = group.presentation();
  const int dim = lift.values.empty() ? 0 : lift.values[0].dim();
  std::vector<UnitaryMatrix> images;
  for (int s = 0; s < pres.generator_count(); ++s) {
    int idx = w.index_of(group.normal_form(Word::generator(s)));
    if (idx < 0) throw std::invalid_argument("correct: generator not inside the window");
    ComplexMatrix step = cplx(-eps, 0) * beta.values[idx];
    UnitaryMatrix rot = exp_skew(step);
    images.emplace_back(multiply(rot.matrix(), lift.value(idx).matrix()));
  }
  return AlmostRep{pres, dim, std::move(images)};
}

struct CorrectionReport {
  double defect_before = 0.0;
  double defect_after = 0.0;
  double residual = 0.0;   // coboundary fit residual of the last step
  double beta_norm = 0.0;  // max_g ||beta(g)||_F of the last step
  int iterations = 0;
  bool stalled = false;
};

struct CorrectionStep {
  AlmostRep rep;
  double defect_before = 0.0;
  double defect_after = 0.0;
  double residual = 0.0;
  double beta_norm = 0.0;
  int solver_iterations = 0;
  bool solver_converged = true;
};

// One pass of lift -> cocycle -> least-squares coboundary -> exponential
// correction, at eps equal to the current Frobenius defect.
inline CorrectionStep correction_step(const AlmostRep& rep,
                                      std::shared_ptr<const Window> window) {
  CorrectionStep step;
  step.defect_before = defect(rep, NormKind::Frobenius);
  if (step.defect_before <= 1e-12) {
    step.rep = rep;
    step.defect_after = step.defect_before;
    return step;
  }
  Lift phi = lift(rep, std::move(window));
  Cochain2 c = hochschild_cocycle(phi, step.defect_before);
  Cochain2 alpha = to_group_cocycle(c, phi);
  CoboundarySolution sol = solve_coboundary(alpha, phi);
  step.residual = sol.residual;
  step.beta_norm = max_frobenius(sol.beta);
  step.solver_iterations = sol.iterations;
  step.solver_converged = sol.converged;
  step.rep = correct(phi, sol.beta, step.defect_before);
  step.defect_after = defect(step.rep, NormKind::Frobenius);
  return step;
}

// Repeats correction steps while the Frobenius defect keeps shrinking by at
// least the stall factor. A stall is reported, never retried.
inline std::pair<AlmostRep, CorrectionReport> diminish(const AlmostRep& rep,
                                                       std::shared_ptr<const NormalFormGroup> group,
                                                       int radius, int max_iters,
                                                       double stall_factor = 0.5) {
  if (radius < 2) throw std::invalid_argument("diminish: radius must be >= 2");
  if (!(stall_factor > 0.0 && stall_factor < 1.0))
    throw std::invalid_argument("diminish: stall factor must be in (0, 1)");
  auto window = std::make_shared<const Window>(ball(std::move(group), radius));

  CorrectionReport report;
  AlmostRep current = rep;
  double d = defect(current, NormKind::Frobenius);
  report.defect_before = d;
  report.defect_after = d;
  if (d <= 1e-12) return {current, report};

  for (int i = 0; i < max_iters; ++i) {
    CorrectionStep step = correction_step(current, window);
    current = std::move(step.rep);
    report.iterations = i + 1;
    report.residual = step.residual;
    report.beta_norm = step.beta_norm;
    report.defect_after = step.defect_after;
    if (step.defect_after <= 1e-12) break;
    if (step.defect_after > stall_factor * d) {
      report.stalled = true;
      break;
    }
    d = step.defect_after;
  }
  return {current, report};
}

}  // namespace asymlab
