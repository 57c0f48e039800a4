#pragma once

#include "qps/box_spline.hpp"

#include <string>

namespace qps {

/// "3*x1 - 2*x2 + 1" for a plane's left-hand side.
std::string plane_text(const Hyperplane& h);

/// The region's sign conditions as "x1 > 0, 3*x1 - 2*x2 = 0, ...".
std::string region_text(const Arrangement& arr, const SignVector& s);

/// Readable listing of planes, nonzero regions and their quasi-polynomials.
std::string show(const BoxSpline& f);

}  // namespace qps
