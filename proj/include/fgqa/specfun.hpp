#pragma once

namespace fgqa::specfun {

// Tail integrals ci(y) = -int_y^inf cos(x)/x dx and si(y) = -int_y^inf sin(x)/x dx.
// Note si(y) = Si(y) - pi/2.
struct SineCosineIntegrals {
    double si;
    double ci;
};

/// y > 0. Power series up to y = 4, continued fraction of E1(iy) beyond.
SineCosineIntegrals sici(double y);

}  // namespace fgqa::specfun
