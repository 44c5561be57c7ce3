#pragma once

// Scalar types, working-precision control and the shared error/tolerance types.

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace mgt {

/// Runtime-precision MPFR float. Expression templates are off so that `auto`
/// behaves like it does for `double`.
using HpReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                             boost::multiprecision::et_off>;

template <class Real>
inline constexpr bool is_native_v = std::is_floating_point_v<Real>;

/// Sets the default HpReal precision (in bits) for the lifetime of the scope.
/// Values created inside the scope carry that precision.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

    static unsigned digits10_for_bits(unsigned bits);

private:
    unsigned saved_digits10_;
};

template <class Real>
double to_double(const Real& x) {
    return static_cast<double>(x);
}

/// Machine epsilon at the current working precision.
template <class Real>
Real epsilon() {
    return std::numeric_limits<Real>::epsilon();
}

template <class Real>
Real real_abs(const Real& x) {
    using std::abs;
    return abs(x);
}

template <class Real>
Real real_sqrt(const Real& x) {
    using std::sqrt;
    return sqrt(x);
}

template <class Real>
Real real_pow(const Real& x, unsigned k) {
    Real r(1);
    for (unsigned i = 0; i < k; ++i) r *= x;
    return r;
}

/// Thresholds used by every "is this zero" decision in the library.
struct Tolerances {
    double pivot = 1e-12;              ///< relative LDL pivot threshold
    double nonzero = 1e-10;            ///< relative threshold for determinants, B/A leading entries
    double condition_warning = 1e12;   ///< binary64 condition-number warning level
    double singular_rcond = 1e-13;     ///< reciprocal condition below which a system is singular
};

/// Condition warning level scaled to the working precision: binary64 uses the
/// configured threshold, wider types scale it by eps_double / eps_real.
template <class Real>
double condition_threshold(const Tolerances& tol) {
    if constexpr (is_native_v<Real>) {
        return tol.condition_warning;
    } else {
        const double ratio = std::numeric_limits<double>::epsilon() / to_double(epsilon<Real>());
        return tol.condition_warning * ratio;
    }
}

/// Relative zero threshold scaled to the working precision the same way.
template <class Real>
Real scaled_tolerance(double rel) {
    if constexpr (is_native_v<Real>) {
        return Real(rel);
    } else {
        return Real(rel) * epsilon<Real>() / Real(std::numeric_limits<double>::epsilon());
    }
}

// Errors ------------------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: repeated roots, asymmetric parameter blocks, bad config.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Requested moment beyond what a functional can provide.
class HorizonError : public Error {
public:
    HorizonError(std::size_t requested, std::size_t horizon);
    std::size_t requested() const { return requested_; }
    std::size_t horizon() const { return horizon_; }

private:
    std::size_t requested_;
    std::size_t horizon_;
};

/// A Gram pivot, a connection determinant or a leading projection vanished.
class QuasiDefinitenessError : public Error {
public:
    QuasiDefinitenessError(std::size_t degree, const std::string& what);
    std::size_t degree() const { return degree_; }

private:
    std::size_t degree_;
};

/// A norm that must be positive was not.
class PositivityError : public Error {
public:
    PositivityError(std::size_t degree, const std::string& what);
    std::size_t degree() const { return degree_; }

private:
    std::size_t degree_;
};

// Diagnostics -------------------------------------------------------------------------------

using WarningSink = std::function<void(std::string_view)>;

/// Installs a warning sink and returns the previous one. An empty sink silences warnings.
WarningSink set_warning_sink(WarningSink sink);
void warn(std::string_view message);

}  // namespace mgt
