#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <complex>

namespace wom {

using Real = double;

// 50 decimal digits; used where subtractive cancellation defeats binary64.
using HighReal = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                               boost::multiprecision::et_off>;

template <class R>
struct complex_of {
    using type = std::complex<R>;
};

template <>
struct complex_of<HighReal> {
    using type = boost::multiprecision::number<
        boost::multiprecision::complex_adaptor<boost::multiprecision::cpp_bin_float<50>>,
        boost::multiprecision::et_off>;
};

template <class R>
using Cx = typename complex_of<R>::type;

template <class R>
inline R pi_v() {
    if constexpr (std::is_same_v<R, double>) {
        return 3.14159265358979323846;
    } else {
        return boost::math::constants::pi<R>();
    }
}

template <class R>
inline double to_double(const R& x) {
    return static_cast<double>(x);
}

template <class R>
inline std::complex<double> to_cdouble(const Cx<R>& z) {
    using std::imag;
    using std::real;
    return {static_cast<double>(real(z)), static_cast<double>(imag(z))};
}

template <class R>
inline Cx<R> from_cdouble(std::complex<double> z) {
    return Cx<R>(R(z.real()), R(z.imag()));
}

// Unit roundoff of the scalar, used to scale internal tolerances.
template <class R>
inline R epsilon_of() {
    return std::numeric_limits<R>::epsilon();
}

}  // namespace wom
