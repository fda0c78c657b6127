#ifndef SPINENT_COMPLEX_LOG_HPP
#define SPINENT_COMPLEX_LOG_HPP

#include <cmath>
#include <complex>
#include <limits>

namespace spinent {

using cplx = std::complex<double>;

/// A complex number kept as (log-modulus, phase). Products of many factors
/// (v^dag w)^m underflow in linear representation for m of order 1e3 and
/// beyond, so chain products are accumulated in this form. The phase is
/// accumulated without wrapping.
struct LogComplex {
    double log_mod = 0.0;
    double phase = 0.0;

    static LogComplex zero() {
        return {-std::numeric_limits<double>::infinity(), 0.0};
    }
    static LogComplex from(cplx z) {
        double a = std::abs(z);
        if (a == 0.0) return zero();
        return {std::log(a), std::arg(z)};
    }
    bool is_zero() const { return std::isinf(log_mod) && log_mod < 0; }

    LogComplex& operator*=(const LogComplex& o) {
        log_mod += o.log_mod;
        phase += o.phase;
        return *this;
    }
    friend LogComplex operator*(LogComplex a, const LogComplex& b) { return a *= b; }

    LogComplex pow(double e) const {
        if (is_zero()) return zero();
        return {e * log_mod, e * phase};
    }

    cplx value() const {
        if (is_zero()) return {0.0, 0.0};
        return std::polar(std::exp(log_mod), phase);
    }
    double real() const {
        if (is_zero()) return 0.0;
        return std::exp(log_mod) * std::cos(phase);
    }
};

} // namespace spinent

#endif
