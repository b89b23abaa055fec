#pragma once

// Almost-representations: defect and distance functionals, extension of a
// generator assignment to a finite window through the normal-form section,
// and the multiplicativity bound checker for words of the normal closure.

#include <stdexcept>
#include <string>
#include <vector>

#include "asymlab/groups.hpp"
#include "asymlab/normkit.hpp"
#include "asymlab/words.hpp"

namespace asymlab {

// A presentation, a dimension, and one unitary per generator.
struct AlmostRep {
  Presentation presentation;
  int dim = 0;
  std::vector<UnitaryMatrix> images;  // indexed by generator id

  void validate() const {
    if (static_cast<int>(images.size()) != presentation.generator_count())
      throw std::invalid_argument("AlmostRep: one image per generator required");
    for (const auto& u : images)
      if (u.dim() != dim) throw std::invalid_argument("AlmostRep: image dimension mismatch");
  }
};

// Max over relators of the distance from the relator image to the identity.
inline double defect(const AlmostRep& rep, NormKind kind) {
  rep.validate();
  double worst = 0.0;
  for (const Word& r : rep.presentation.relators) {
    UnitaryMatrix img = evaluate(r, rep.images);
    worst = std::max(worst, distance_to_identity(img.matrix(), kind));
  }
  return worst;
}

// Max over generators of the distance between the two assignments.
inline double dist(const AlmostRep& a, const AlmostRep& b, NormKind kind) {
  a.validate();
  b.validate();
  if (!(a.presentation == b.presentation))
    throw std::invalid_argument("dist: presentation mismatch");
  if (a.dim != b.dim) throw std::invalid_argument("dist: dimension mismatch");
  double worst = 0.0;
  for (size_t s = 0; s < a.images.size(); ++s)
    worst = std::max(worst, norm(a.images[s].matrix() - b.images[s].matrix(), kind));
  return worst;
}

// Distance to a supplied genuine representation (defect of the candidate is
// verified, not searched for).
inline double dist_to_hom(const AlmostRep& rep, const AlmostRep& hom, NormKind kind) {
  double hom_defect = defect(hom, kind);
  if (hom_defect > 1e-10)
    throw std::invalid_argument("dist_to_hom: candidate is not a homomorphism (defect " +
                                std::to_string(hom_defect) + ")");
  return dist(rep, hom, kind);
}

// Extension of an almost-representation to the elements of a window:
// values(g) = image of the normal-form word of g, with values(1) = 1 and
// values(g^-1) = values(g)^* enforced exactly, and values at involutions
// repaired to exact self-adjoint unitaries.
struct Lift {
  std::shared_ptr<const Window> window;
  std::vector<UnitaryMatrix> values;  // aligned with window->elements()

  const UnitaryMatrix& value(int i) const { return values[i]; }
};

inline Lift lift(const AlmostRep& rep, std::shared_ptr<const Window> window_ptr) {
  rep.validate();
  const Window& window = *window_ptr;
  if (!(window.group().presentation() == rep.presentation))
    throw std::invalid_argument("lift: window group does not match the representation");
  const int n = window.size();
  Lift out;
  out.window = std::move(window_ptr);
  out.values.resize(n);
  std::vector<bool> done(n, false);
  out.values[0] = UnitaryMatrix::identity(rep.dim);
  done[0] = true;
  for (int i = 0; i < n; ++i) {
    if (done[i]) continue;
    if (window.is_involution(i)) {
      out.values[i] = nearest_involution(evaluate(window.element(i), rep.images));
      done[i] = true;
      continue;
    }
    int inv = window.inverse(i);
    out.values[i] = evaluate(window.element(i), rep.images);
    done[i] = true;
    if (!done[inv]) {
      out.values[inv] = UnitaryMatrix(adjoint(out.values[i].matrix()));
      done[inv] = true;
    }
  }
  return out;
}

struct RelatorBoundReport {
  double lhs = 0.0;    // distance of the word image from the identity
  double bound = 0.0;  // witness length times the defect
  bool ok = false;
};

// Checks || phi(r) - 1 || <= (witness length) * defect(phi) for a word r
// presented as an explicit product of conjugated relators.
inline RelatorBoundReport relator_bound_check(const AlmostRep& rep, const Word& r,
                                              const std::vector<ConjugationFactor>& witness,
                                              NormKind kind) {
  if (conjugation_product(witness) != r)
    throw std::invalid_argument("relator_bound_check: witness does not reduce to the word");
  RelatorBoundReport report;
  report.lhs = distance_to_identity(evaluate(r, rep.images).matrix(), kind);
  report.bound = static_cast<double>(witness.size()) * defect(rep, kind);
  report.ok = report.lhs <= report.bound + 1e-10;
  return report;
}

}  // namespace asymlab
