#pragma once

// Explicit matrix families: the clock/shift pair on Z^2, the almost-solution
// of b^-1 a^2 b = a^3 in U(6n), and randomly perturbed diagonal
// representations used as pipeline test inputs.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "asymlab/almostrep.hpp"
#include "asymlab/groups.hpp"
#include "asymlab/normkit.hpp"
#include "asymlab/rng.hpp"

namespace asymlab {

inline cplx unit_phase(double turns) {
  double a = 2.0 * std::numbers::pi * turns;
  return cplx(std::cos(a), std::sin(a));
}

// Clock and shift: A = diag(1, w, ..., w^(n-1)) with w = exp(2 pi i / n),
// B the cyclic shift e_j -> e_(j+1 mod n). Their commutator is w * 1.
inline std::pair<UnitaryMatrix, UnitaryMatrix> voiculescu_pair(int n) {
  if (n < 2) throw std::invalid_argument("voiculescu_pair: n must be >= 2");
  std::vector<cplx> d(n);
  for (int j = 0; j < n; ++j) d[j] = unit_phase(static_cast<double>(j) / n);
  ComplexMatrix b(n);
  for (int j = 0; j < n; ++j) b((j + 1) % n, j) = 1.0;
  return {UnitaryMatrix::from_diagonal(d), UnitaryMatrix(std::move(b))};
}

inline AlmostRep voiculescu_rep(int n) {
  auto [a, b] = voiculescu_pair(n);
  return AlmostRep{free_abelian(2)->presentation(), n, {std::move(a), std::move(b)}};
}

// Closed-form lower bound on the distance from the clock/shift pair to any
// genuine representation, valid for the operator norm and a fortiori for the
// Frobenius norm: sqrt(2 - |1 - w_n|) - 1.
inline double homdist_lower_bound_voiculescu(int n) {
  if (n < 2) throw std::invalid_argument("homdist_lower_bound_voiculescu: n must be >= 2");
  double gap = std::abs(1.0 - unit_phase(1.0 / n));
  return std::sqrt(2.0 - gap) - 1.0;
}

// Index bookkeeping for the U(6n) family: two orthogonal decompositions of
// C^(6n) into n six-dimensional blocks, and the fixed real block unitary
// that maps one family of blocks onto the other.
struct BSBlockData {
  int n;
  cplx omega;                            // exp(2 pi i / (6 n))
  std::vector<std::array<int, 6>> s_basis;  // blocks where a^2 is nearly scalar
  std::vector<std::array<int, 6>> c_basis;  // blocks where a^3 is nearly scalar
  ComplexMatrix b_block;                 // 6x6, rows pair up +/- combinations

  explicit BSBlockData(int n_) : n(n_), b_block(6) {
    if (n < 1) throw std::invalid_argument("BSBlockData: n must be >= 1");
    omega = unit_phase(1.0 / (6.0 * n));
    s_basis.resize(n);
    c_basis.resize(n);
    for (int j = 0; j < n; ++j) {
      s_basis[j] = {3 * j, 3 * j + 1, 3 * j + 2,
                    3 * j + 3 * n, 3 * j + 3 * n + 1, 3 * j + 3 * n + 2};
      c_basis[j] = {2 * j, 2 * j + 2 * n, 2 * j + 4 * n,
                    2 * j + 1, 2 * j + 2 * n + 1, 2 * j + 4 * n + 1};
    }
    const double s = 1.0 / std::sqrt(2.0);
    for (int p = 0; p < 3; ++p) {
      b_block(2 * p, 2 * p) = s;
      b_block(2 * p, 2 * p + 1) = s;
      b_block(2 * p + 1, 2 * p) = s;
      b_block(2 * p + 1, 2 * p + 1) = -s;
    }
  }
};

// A diagonal with A v_j = w^j v_j; B block-unitary sending the r-th ordered
// c-basis vector of block j to the b_block combination of ordered s-basis
// vectors. Column c_basis[j][r] of B carries b_block(s, r) at row s_basis[j][s].
inline std::pair<UnitaryMatrix, UnitaryMatrix> bs23_pair(int n) {
  BSBlockData data(n);
  const int k = 6 * n;
  std::vector<cplx> d(k);
  for (int j = 0; j < k; ++j) d[j] = unit_phase(static_cast<double>(j) / (6.0 * n));
  ComplexMatrix b(k);
  for (int j = 0; j < n; ++j)
    for (int r = 0; r < 6; ++r)
      for (int s = 0; s < 6; ++s)
        b(data.s_basis[j][s], data.c_basis[j][r]) = data.b_block(s, r);
  return {UnitaryMatrix::from_diagonal(d), UnitaryMatrix(std::move(b))};
}

inline AlmostRep bs23_rep(int n) {
  auto [a, b] = bs23_pair(n);
  return AlmostRep{bs_presentation(2, 3), 6 * n, {std::move(a), std::move(b)}};
}

namespace detail {

inline std::vector<cplx> diagonal_power(const std::vector<cplx>& d, int p) {
  std::vector<cplx> out(d.size());
  for (size_t i = 0; i < d.size(); ++i) {
    cplx v(1, 0);
    for (int q = 0; q < p; ++q) v *= d[i];
    out[i] = v;
  }
  return out;
}

}  // namespace detail

// || b^-1 a^2 b - a^3 || for the U(6n) family; equals the relation defect of
// the pair since right multiplication by the unitary a^3 is an isometry.
inline double bs23_defect(int n, NormKind kind) {
  auto [a, b] = bs23_pair(n);
  std::vector<cplx> d(6 * n);
  for (int j = 0; j < 6 * n; ++j) d[j] = a(j, j);
  ComplexMatrix a2b = scale_rows(detail::diagonal_power(d, 2), b.matrix());
  ComplexMatrix lhs = multiply(adjoint(b.matrix()), a2b);
  ComplexMatrix a3 = ComplexMatrix::diagonal(detail::diagonal_power(d, 3));
  return norm(lhs - a3, kind);
}

// Sum over blocks of the closed-form estimate
// 2(|1-w^2|^2 + |1-w^4|^2) + 3 |1-w^3|^2; an upper bound for bs23_defect^2
// in the Frobenius norm.
inline double bs23_defect_block_bound_sq(int n) {
  BSBlockData data(n);
  auto gap2 = [&](int p) {
    cplx wp(1, 0);
    for (int q = 0; q < p; ++q) wp *= data.omega;
    return std::norm(1.0 - wp);
  };
  return n * (2.0 * (gap2(2) + gap2(4)) + 3.0 * gap2(3));
}

// || a b^-1 a b - b^-1 a b a ||_F, the obstruction to the commutation
// identity forced on genuine unitary solutions of b^-1 a^2 b = a^3.
inline double bs23_commutator_gap(int n) {
  auto [a, b] = bs23_pair(n);
  std::vector<cplx> d(6 * n);
  for (int j = 0; j < 6 * n; ++j) d[j] = a(j, j);
  ComplexMatrix ab = scale_rows(d, b.matrix());
  ComplexMatrix bab = multiply(adjoint(b.matrix()), ab);  // b^-1 a b
  ComplexMatrix lhs = scale_rows(d, bab);                 // a b^-1 a b
  ComplexMatrix rhs = scale_columns(bab, d);              // b^-1 a b a
  return frobenius_norm(lhs - rhs);
}

// Genuine diagonal representation of z^d or cyclic:m, perturbed on each
// generator by exp(eps X_s) with a fixed random unit-Frobenius skew X_s.
inline AlmostRep perturbed_rep(const std::shared_ptr<const NormalFormGroup>& group,
                               int k, double eps, uint64_t seed) {
  if (k < 1) throw std::invalid_argument("perturbed_rep: k must be >= 1");
  if (eps < 0) throw std::invalid_argument("perturbed_rep: eps must be >= 0");
  const Presentation& pres = group->presentation();
  const std::string& gname = group->name();
  const bool is_cyclic = gname.rfind("cyclic:", 0) == 0;
  int order = is_cyclic ? std::stoi(gname.substr(7)) : 0;
  if (!is_cyclic && gname.rfind("z^", 0) != 0)
    throw std::invalid_argument("perturbed_rep: group must be z^d or cyclic:m");

  std::vector<UnitaryMatrix> images;
  for (int g = 0; g < pres.generator_count(); ++g) {
    Rng rng = Rng::derived(seed, static_cast<uint64_t>(g));
    std::vector<cplx> diag(k);
    for (int i = 0; i < k; ++i) {
      if (is_cyclic) {
        int r = static_cast<int>(rng.next_u64() % static_cast<uint64_t>(order));
        diag[i] = unit_phase(static_cast<double>(r) / order);
      } else {
        diag[i] = unit_phase(rng.uniform01());
      }
    }
    ComplexMatrix g_raw(k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) g_raw(i, j) = cplx(rng.gaussian(), rng.gaussian());
    ComplexMatrix x = skew_part(g_raw);
    double nx = frobenius_norm(x);
    if (nx > 0) x *= cplx(1.0 / nx, 0.0);
    UnitaryMatrix rot = exp_skew(eps * x);
    images.emplace_back(multiply(rot.matrix(), ComplexMatrix::diagonal(diag)));
  }
  return AlmostRep{pres, k, std::move(images)};
}

// A named representation plus, when one exists, the normal-form backend of
// its group (needed by the correction pipeline).
struct RepSelection {
  AlmostRep rep;
  std::shared_ptr<const NormalFormGroup> group;  // null when no backend exists
};

// Selector strings: "voiculescu:n", "bs23:n",
// "perturbed:<z^d|cyclic:m>:<k>:<eps>:<seed>".
inline RepSelection rep_by_selector(const std::string& selector) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t pos = selector.find(':', start);
    if (pos == std::string::npos) {
      parts.push_back(selector.substr(start));
      break;
    }
    parts.push_back(selector.substr(start, pos - start));
    start = pos + 1;
  }
  try {
    if (parts[0] == "voiculescu" && parts.size() == 2)
      return {voiculescu_rep(std::stoi(parts[1])), free_abelian(2)};
    if (parts[0] == "bs23" && parts.size() == 2)
      return {bs23_rep(std::stoi(parts[1])), nullptr};
    if (parts[0] == "perturbed" && parts.size() >= 5) {
      size_t at = 1;
      std::string gname = parts[at++];
      if (gname == "cyclic") {
        if (parts.size() < 6) throw std::invalid_argument("short selector");
        gname += ":" + parts[at++];
      }
      if (parts.size() != at + 3) throw std::invalid_argument("short selector");
      auto group = group_by_name(gname);
      int k = std::stoi(parts[at]);
      double eps = std::stod(parts[at + 1]);
      uint64_t seed = std::stoull(parts[at + 2]);
      return {perturbed_rep(group, k, eps, seed), group};
    }
  } catch (const std::logic_error&) {
    throw std::invalid_argument("rep_by_selector: bad selector '" + selector + "'");
  }
  throw std::invalid_argument("rep_by_selector: unknown selector '" + selector + "'");
}

}  // namespace asymlab
