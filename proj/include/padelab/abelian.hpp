#pragma once

// Third-kind abelian differentials on the two-sheeted surface and the Green
// function they induce.
//
// For a pole p (finite or infinite, on either sheet) the dipole differential
// carries residue -1 at p and +1 at its sheet involution image p*.  Its
// sheet-0 density is
//     finite p:    -w_p / ((z - p.z) w(z))        (w_p the weight at p)
//     p at inf:    (-1)^sheet z^g / w(z)
// plus a correction in the normalized holomorphic basis chosen so that every
// cycle period is purely imaginary.  Residue loops shift periods by 2*pi*i
// times an integer, so the real part of the primitive is single valued: that
// real part is the Green function, zero on the cut system (where the sheets
// meet) and odd under the involution in either argument.

#include <padelab/surface.hpp>

namespace padelab {

struct ThirdKind {
  SurfacePoint pole;  // residue -1 here, +1 at pole.star()
  Complex w_pole;     // weight at a finite pole (0 for infinite poles)
  Vec correction;     // coefficients on the normalized holomorphic basis
};

// Imaginary-period normalized dipole differential with residue -1 at v.
ThirdKind third_kind(const Surface& S, const SurfacePoint& v);

// Sheet-0 density of the full normalized differential.
Complex third_kind_density(const Surface& S, const ThirdKind& tk, const Complex& z);
// Same differential read off on either sheet (odd under the involution).
Complex third_kind_density(const Surface& S, const ThirdKind& tk, const Complex& z, int sheet);

// Primitive from the base point along a deterministic route that avoids the
// cuts and the pole; multi-valued up to cycle periods and residue loops,
// both purely imaginary.
Complex abelian_integral(const Surface& S, const ThirdKind& tk, const SurfacePoint& p);

// Same primitive along an explicit planar path lifted to a sheet.
Complex abelian_integral_along(const Surface& S, const ThirdKind& tk, const Path& planar,
                               int sheet);

// Green function: real part of the primitive.
Real green(const Surface& S, const SurfacePoint& p, const SurfacePoint& v);

}  // namespace padelab
