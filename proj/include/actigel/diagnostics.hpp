#ifndef ACTIGEL_DIAGNOSTICS_HPP
#define ACTIGEL_DIAGNOSTICS_HPP

#include <optional>
#include <vector>

#include "actigel/lubrication.hpp"
#include "actigel/material.hpp"

namespace actigel::diagnostics {

struct DefectCandidate {
  enum class Kind { point, line };
  double x1 = 0.0;
  double x3 = 0.0;
  double q_min = 0.0;
  Kind kind = Kind::point;
  std::optional<double> winding;  // director degree, may be half-integer
};

// Local minima of |q| below the threshold, refined inside the cell by a
// parabolic fit of q^2; minima that form contiguous chains are tagged as
// line defects. Periodic in x1, clamped in x3.
std::vector<DefectCandidate> detect_defects(
    const lubrication::LubricationField& field, double q_threshold = 1e-3);

// max of sqrt(q) |grad theta| over a small neighborhood of the point
// (|grad n| = |grad theta| for a unit director). Angle differences are
// wrapped to (-pi/2, pi/2] so the value is invariant under n -> -n.
double regularity_indicator(const lubrication::LubricationField& field,
                            double x1, double x3, int radius_cells = 3);

// Director winding (in units of full turns) accumulated around the square
// ring at the given cell radius; nullopt when the ring touches cells with
// q below the threshold, where the angle is unreliable.
std::optional<double> winding_number(const lubrication::LubricationField& field,
                                     double x1, double x3, int radius_cells,
                                     double q_threshold = 1e-3);

struct Energies {
  double bulk = 0.0;
  double elastic = 0.0;
};

// Bulk and Ericksen elastic energy per unit x1 length; only vertical
// gradients enter at leading order.
Energies energies(const lubrication::LubricationField& field,
                  const MaterialParams& p);

}  // namespace actigel::diagnostics

#endif
