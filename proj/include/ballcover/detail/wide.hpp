#pragma once

// Extended-precision scalar used where difference quotients would otherwise
// drown in cancellation: finite-difference derivative probes and gap profiles
// at large lambda.

#include <cfloat>
#include <cmath>

#if defined(__SIZEOF_FLOAT128__) && defined(__GNUC__) && !defined(__clang__)
#define BALLCOVER_HAVE_FLOAT128 1
extern "C" {
#include <quadmath.h>
}
#else
#define BALLCOVER_HAVE_FLOAT128 0
#endif

namespace ballcover::detail {

#if BALLCOVER_HAVE_FLOAT128
using Wide = __float128;
inline constexpr double kWideEpsilon = 1.92592994438723585305597794258492732e-34;

inline Wide abs_of(Wide v) { return fabsq(v); }
inline Wide sqrt_of(Wide v) { return sqrtq(v); }
inline Wide pow_of(Wide b, Wide e) { return powq(b, e); }
#else
using Wide = long double;
inline constexpr double kWideEpsilon = static_cast<double>(LDBL_EPSILON);

inline Wide abs_of(Wide v) { return std::fabs(v); }
inline Wide sqrt_of(Wide v) { return std::sqrt(v); }
inline Wide pow_of(Wide b, Wide e) { return std::pow(b, e); }
#endif

inline double abs_of(double v) { return std::fabs(v); }
inline double sqrt_of(double v) { return std::sqrt(v); }
inline double pow_of(double b, double e) { return std::pow(b, e); }

}  // namespace ballcover::detail
