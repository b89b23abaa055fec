#include <doctest.h>

#include <cmath>

#include "asymlab/almostrep.hpp"
#include "asymlab/families.hpp"

using namespace asymlab;

namespace {

// Test-side oracle: naive triple-loop product, independent of the BLAS path.
ComplexMatrix naive_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int k = a.dim();
  ComplexMatrix c(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      cplx s(0, 0);
      for (int l = 0; l < k; ++l) s += a(i, l) * b(l, j);
      c(i, j) = s;
    }
  return c;
}

ComplexMatrix naive_adjoint(const ComplexMatrix& a) {
  const int k = a.dim();
  ComplexMatrix c(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) c(i, j) = std::conj(a(j, i));
  return c;
}

}  // namespace

TEST_CASE("clock/shift pair at n = 2") {
  auto [a, b] = voiculescu_pair(2);
  CHECK(std::abs(a(0, 0) - cplx(1, 0)) < 1e-15);
  CHECK(std::abs(a(1, 1) - cplx(-1, 0)) < 1e-15);
  CHECK(std::abs(b(0, 1) - cplx(1, 0)) == 0.0);
  CHECK(std::abs(b(1, 0) - cplx(1, 0)) == 0.0);
  CHECK(std::abs(b(0, 0)) == 0.0);
}

TEST_CASE("clock/shift commutation is the scalar w_n") {
  for (int n : {2, 3, 4, 16, 64, 512}) {
    auto [a, b] = voiculescu_pair(n);
    ComplexMatrix comm = multiply(multiply(a.matrix(), b.matrix()),
                                  multiply(adjoint(a.matrix()), adjoint(b.matrix())));
    ComplexMatrix scalar = unit_phase(1.0 / n) * ComplexMatrix::identity(n);
    CHECK(frobenius_norm(comm - scalar) <= 1e-10 * std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("homdist lower bound closed form") {
  // limit value sqrt(2) - 1, approached from below at rate 1/n
  CHECK(std::abs(homdist_lower_bound_voiculescu(1 << 20) - (std::sqrt(2.0) - 1.0)) < 1e-4);
  CHECK(homdist_lower_bound_voiculescu(1 << 20) < std::sqrt(2.0) - 1.0);
  CHECK(homdist_lower_bound_voiculescu(4) ==
        doctest::Approx(std::sqrt(2.0 - std::sqrt(2.0)) - 1.0).epsilon(1e-14));
  CHECK(homdist_lower_bound_voiculescu(4) < 0.0);  // vacuous at small n
  double prev = homdist_lower_bound_voiculescu(3);
  for (int n = 4; n <= 64; ++n) {
    double cur = homdist_lower_bound_voiculescu(n);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("block data invariants") {
  for (int n : {1, 3, 8}) {
    BSBlockData data(n);
    std::vector<int> seen_s(6 * n, 0), seen_c(6 * n, 0);
    for (int j = 0; j < n; ++j)
      for (int r = 0; r < 6; ++r) {
        seen_s[data.s_basis[j][r]]++;
        seen_c[data.c_basis[j][r]]++;
      }
    for (int i = 0; i < 6 * n; ++i) {
      CHECK(seen_s[i] == 1);
      CHECK(seen_c[i] == 1);
    }
    ComplexMatrix gram = naive_mul(naive_adjoint(data.b_block), data.b_block);
    CHECK(frobenius_norm(gram - ComplexMatrix::identity(6)) < 1e-14);
  }
}

TEST_CASE("U(6n) pair: unitarity and diagonal restrictions") {
  for (int n : {1, 4, 16}) {
    auto [a, b] = bs23_pair(n);
    CHECK(b.certification_residual() < 1e-12);
    BSBlockData data(n);
    cplx omega = data.omega;
    cplx zeta = unit_phase(1.0 / 3.0);
    for (int j = 0; j < n; ++j) {
      cplx w3j = unit_phase(3.0 * j / (6.0 * n));
      cplx w2j = unit_phase(2.0 * j / (6.0 * n));
      const cplx s_expect[6] = {w3j, w3j * omega, w3j * omega * omega,
                                -w3j, -w3j * omega, -w3j * omega * omega};
      const cplx c_expect[6] = {w2j, w2j * zeta, w2j * zeta * zeta,
                                w2j * omega, w2j * omega * zeta, w2j * omega * zeta * zeta};
      for (int r = 0; r < 6; ++r) {
        CHECK(std::abs(a(data.s_basis[j][r], data.s_basis[j][r]) - s_expect[r]) < 1e-12);
        CHECK(std::abs(a(data.c_basis[j][r], data.c_basis[j][r]) - c_expect[r]) < 1e-12);
      }
    }
  }
}

TEST_CASE("relation defect at n = 1 against the brute-force oracle") {
  auto [a, b] = bs23_pair(1);
  ComplexMatrix a2 = naive_mul(a.matrix(), a.matrix());
  ComplexMatrix a3 = naive_mul(a2, a.matrix());
  ComplexMatrix lhs = naive_mul(naive_adjoint(b.matrix()), naive_mul(a2, b.matrix()));
  double oracle = frobenius_norm(lhs - a3);
  CHECK(bs23_defect(1, NormKind::Frobenius) == doctest::Approx(oracle).epsilon(1e-13));
  // frozen value: the n = 1 defect is exactly 3
  CHECK(bs23_defect(1, NormKind::Frobenius) == doctest::Approx(3.0).epsilon(1e-12));
  // the defect of the pair as an almost-representation is the same number
  CHECK(defect(bs23_rep(1), NormKind::Frobenius) == doctest::Approx(3.0).epsilon(1e-11));
  CHECK(defect(bs23_rep(2), NormKind::Frobenius) ==
        doctest::Approx(bs23_defect(2, NormKind::Frobenius)).epsilon(1e-11));
}

TEST_CASE("relation defect obeys the per-block estimate") {
  for (int n : {1, 2, 4, 16, 64}) {
    double value = bs23_defect(n, NormKind::Frobenius);
    double bound_sq = bs23_defect_block_bound_sq(n);
    CHECK(value * value <= bound_sq + 1e-8);
  }
  // frozen oracle values
  CHECK(bs23_defect(4, NormKind::Frobenius) == doctest::Approx(2.219201009192).epsilon(1e-10));
  CHECK(bs23_defect_block_bound_sq(4) == doctest::Approx(17.17303).epsilon(1e-5));
}

TEST_CASE("commutator gap growth") {
  // frozen oracle values: gap(1) = sqrt(5), gap(4) = 5.128529724433
  CHECK(bs23_commutator_gap(1) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
  CHECK(bs23_commutator_gap(4) == doctest::Approx(5.128529724433).epsilon(1e-10));
  for (int n : {1, 2, 4, 16, 64}) {
    double gap = bs23_commutator_gap(n);
    double root = std::sqrt(6.0 * n);
    CHECK(std::abs(root - gap) <= 5.0);
    CHECK(gap <= 2.0 * root);  // difference of two products of unitaries
    if (n >= 32) CHECK(gap / root >= 0.9);
  }
}

TEST_CASE("fixed block identity constant") {
  BSBlockData data(1);
  std::vector<cplx> s_diag = {1, 1, 1, -1, -1, -1};
  cplx zeta = unit_phase(1.0 / 3.0);
  std::vector<cplx> c_diag = {1, zeta, zeta * zeta, 1, zeta, zeta * zeta};
  ComplexMatrix s_tilde = ComplexMatrix::diagonal(s_diag);
  ComplexMatrix c_tilde = ComplexMatrix::diagonal(c_diag);
  ComplexMatrix m = naive_mul(naive_adjoint(data.b_block), naive_mul(s_tilde, data.b_block));
  double g = frobenius_norm(naive_mul(c_tilde, m) - naive_mul(m, c_tilde));
  CHECK(g * g == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("perturbed representations") {
  auto z2 = free_abelian(2);
  AlmostRep exact = perturbed_rep(z2, 6, 0.0, 42);
  CHECK(defect(exact, NormKind::Frobenius) <= 1e-12);

  for (double eps : {1e-1, 1e-2}) {
    AlmostRep rep = perturbed_rep(z2, 6, eps, 42);
    double d = defect(rep, NormKind::Frobenius);
    CHECK(d > 0.0);
    CHECK(d <= 10.0 * eps);
  }

  AlmostRep r1 = perturbed_rep(z2, 5, 0.01, 7);
  AlmostRep r2 = perturbed_rep(z2, 5, 0.01, 7);
  for (int g = 0; g < 2; ++g)
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) CHECK(r1.images[g](i, j) == r2.images[g](i, j));

  auto z6 = cyclic(6);
  AlmostRep cyc = perturbed_rep(z6, 4, 0.0, 3);
  CHECK(defect(cyc, NormKind::Frobenius) <= 1e-12);
  AlmostRep cyc2 = perturbed_rep(z6, 4, 0.05, 3);
  CHECK(defect(cyc2, NormKind::Frobenius) > 0.0);
}

TEST_CASE("rep selector strings") {
  RepSelection v = rep_by_selector("voiculescu:8");
  CHECK(v.rep.dim == 8);
  CHECK(v.group != nullptr);

  RepSelection bs = rep_by_selector("bs23:2");
  CHECK(bs.rep.dim == 12);
  CHECK(bs.group == nullptr);

  RepSelection p = rep_by_selector("perturbed:z^2:4:0.01:42");
  CHECK(p.rep.dim == 4);
  CHECK(p.group->name() == "z^2");

  RepSelection pc = rep_by_selector("perturbed:cyclic:6:8:0.01:7");
  CHECK(pc.rep.dim == 8);
  CHECK(pc.group->name() == "cyclic:6");

  CHECK_THROWS_AS(rep_by_selector("nonsense:1"), std::invalid_argument);
  CHECK_THROWS_AS(rep_by_selector("perturbed:z^2:4"), std::invalid_argument);
}
