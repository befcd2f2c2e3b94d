#pragma once

#include <array>
#include <optional>
#include <vector>

#include "grasspenta/polygon.hpp"

namespace grasspenta {

// Point of the projective plane in homogeneous coordinates.
struct ProjectivePoint2D {
  std::array<Complex, 3> x{};

  // Scaled so the last nonzero coordinate is 1.
  ProjectivePoint2D normalized() const;
};

// Distance between two projective points: |p x q| / (|p| |q|).
double projective_distance(const ProjectivePoint2D& p, const ProjectivePoint2D& q);

// Vertex k of the image is line(P_k, P_{k+2}) meet line(P_{k+1}, P_{k+3}).
// With a monodromy, P_{k+N} = M P_k; otherwise indices wrap.
std::vector<ProjectivePoint2D> classical_pentagram_rp2(
    const std::vector<ProjectivePoint2D>& points, const std::optional<CMat>& monodromy = std::nullopt,
    double eps = 1e-12);

// Exact linear algebra on GMP integers and rationals, written independently
// of the Eigen-based rational backend.
Rational cofactor_det(const QMat& a);
Rational bareiss_det(const QMat& a);
// Cofactor expansion up to size 6, Bareiss above.
Rational exact_det(const QMat& a);
int exact_rank(const QMat& a);
// Column-wise Cramer's rule; throws SingularMatrix.
QMat cramer_solve(const QMat& a, const QMat& b);

// The unnormalized algebraic map with every N_k system solved by Cramer's rule.
RationalChain cramer_map_unnormalized(const RationalChain& chain);

}  // namespace grasspenta
