#ifndef SPINENT_QUAD_COMPLEX_HPP
#define SPINENT_QUAD_COMPLEX_HPP

#include <complex>

namespace spinent {

/// Minimal complex arithmetic over __float128. The finite-N moment sums
/// cancel to residues of order c^{2(N-m)}, far below double resolution for
/// the N ranges of the convergence checks, so those sums run in quad
/// precision. Only +,-,*,/ and integer powers are needed, which keeps this
/// free of libquadmath.
struct qcplx {
    __float128 re = 0;
    __float128 im = 0;

    qcplx() = default;
    qcplx(__float128 r, __float128 i) : re(r), im(i) {}
    explicit qcplx(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    qcplx conj() const { return {re, -im}; }
    double real_d() const { return static_cast<double>(re); }
    double imag_d() const { return static_cast<double>(im); }

    friend qcplx operator+(qcplx a, qcplx b) { return {a.re + b.re, a.im + b.im}; }
    friend qcplx operator-(qcplx a, qcplx b) { return {a.re - b.re, a.im - b.im}; }
    friend qcplx operator*(qcplx a, qcplx b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend qcplx operator*(__float128 s, qcplx a) { return {s * a.re, s * a.im}; }
    friend qcplx operator/(qcplx a, qcplx b) {
        const __float128 d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    qcplx& operator+=(qcplx o) {
        re += o.re;
        im += o.im;
        return *this;
    }
};

/// z^e for e >= 0 by binary exponentiation.
inline qcplx qpow(qcplx z, long long e) {
    qcplx acc(1, 0);
    while (e > 0) {
        if (e & 1) acc = acc * z;
        z = z * z;
        e >>= 1;
    }
    return acc;
}

} // namespace spinent

#endif
