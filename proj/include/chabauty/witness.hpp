#pragma once

#include "chabauty/descriptor.hpp"
#include "chabauty/schema.hpp"

namespace chabauty {

// One step of an explicit approximating sequence: the element of the
// conjugated family at index n together with its predicted limit.
struct WitnessSample {
  GroupElementd element;
  GroupElementd target;
};

/// Element of (I, (alpha, 0)) L (I, (alpha, 0))^-1 at distance O(1/alpha)
/// from a target (u, (s, t)) with u upper unipotent. Composes a squeeze
/// fixing the x-displacement, a lower shear fixing the y-displacement and
/// the unipotent stabilizer of (alpha, 0). Throws when alpha equals the
/// target x-displacement (singular squeeze).
GroupElementd levi_approximator(const GroupElementd& target, double alpha);

// Rotation-subgroup limits under the named conjugation schemas.
enum class CompactCase {
  VerticalToV0,     // (I, (0, n)): limit is the horizontal line
  HorizontalToVInf, // (I, (n, 0)): limit is the vertical line
  RatioLine,        // (I, (ratio n, n)): limit is the line t (1, -ratio)
  TildeSheetPlus,   // (u(n), 0): upper-unipotent sheet
  TildeSheetMinus,  // (u(n), 0): the -(upper-unipotent) sheet through -I
};

ConjugatorSchema compact_case_schema(CompactCase c, double ratio = 2.0);
WitnessSample compact_witness(CompactCase c, double t, long n, double ratio = 2.0);

// Diagonal-subgroup limits; the shear cases land on one-parameter
// Heisenberg lines determined by the schema's adjoint direction.
enum class DiagonalCase {
  ShearBalanced,   // s_n ~ beta_n -> mixed-direction Heisenberg line
  ShearDominated,  // s_n >> beta_n -> unipotent line with displacement
  HorizontalToV0,  // (I, (n, 0))
  VerticalToVInf,  // (I, (0, n))
  RatioLine,       // (I, (n, ratio n)): limit line t (1, -ratio)
};

ConjugatorSchema diagonal_case_schema(DiagonalCase c, double ratio = 2.0);
WitnessSample diagonal_witness(DiagonalCase c, double t, long n, double ratio = 2.0);

enum class BorelCase {
  VerticalToR2,     // (I, (0, n)): limit is all of R^2
  HorizontalToAxis, // (I, (n, 0)): limit is N+ x (x-axis)
};

ConjugatorSchema borel_case_schema(BorelCase c);
// For HorizontalToAxis, y is the shear parameter of the target (u(y), (x, 0)).
WitnessSample borel_witness(BorelCase c, double x, double y, long n);

ConjugatorSchema unipotent_case_schema();
WitnessSample unipotent_witness(double t, long n);

// Normalized adjoint image of the diagonal generator under schema(n_ref);
// its exponential curve is the predicted limit of the conjugated diagonals.
LieAlgebraElementd conjugated_diagonal_direction(const ConjugatorSchema& schema, long n_ref);

// Witness along the conjugated diagonal matched to parameter t of the
// predicted limit one-parameter group.
WitnessSample heisenberg_witness(const ConjugatorSchema& schema, double t, long n);

}  // namespace chabauty
