#pragma once

#include <complex>
#include <span>
#include <vector>

namespace ckaf {

using cplx = std::complex<double>;

/// Complex input-space sample z = x + iy in C^nu.
using CVec = std::vector<cplx>;
using CSpan = std::span<const cplx>;

} // namespace ckaf
