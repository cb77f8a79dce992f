#pragma once

#include <complex>

namespace lgqho {

using cplx = std::complex<double>;

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz), valid on the whole plane.
cplx faddeeva_w(cplx z);

/// exp(c) * w(z), arranged so that no intermediate overflows when the product is finite.
cplx exp_times_w(cplx c, cplx z);

cplx complex_erf(cplx z);
cplx complex_erfc(cplx z);

/// exp(c) * erfc(z) without forming erfc(z) on its own.
cplx exp_times_erfc(cplx c, cplx z);

}  // namespace lgqho
