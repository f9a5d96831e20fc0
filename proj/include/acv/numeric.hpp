#ifndef ACV_NUMERIC_HPP
#define ACV_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <complex>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace acv {

using BigInt = boost::multiprecision::cpp_int;
using Rat    = boost::multiprecision::cpp_rational;

// High-precision real for the curve solve and the verifier grid.  Pair
// products along the witness curves cancel across ~80 decimal digits at
// t = 1e-7, so double precision is not an option there.
using MpReal = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<100>>;

using Cplx = std::complex<double>;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& z) { return z.convert_to<double>(); }
inline MpReal to_mp(const Rat& r) { return r.convert_to<MpReal>(); }

// Minimal complex over MpReal.  std::complex is only specified for the
// builtin floating types, so we roll the handful of operations we need.
struct MpCplx {
    MpReal re{0}, im{0};

    MpCplx() = default;
    MpCplx(MpReal r) : re(std::move(r)) {}
    MpCplx(MpReal r, MpReal i) : re(std::move(r)), im(std::move(i)) {}
    MpCplx(double r) : re(r) {}
    MpCplx(const Cplx& z) : re(z.real()), im(z.imag()) {}

    static MpCplx from(const Rat& r) { return MpCplx(to_mp(r)); }

    Cplx to_cplx() const { return {re.convert_to<double>(), im.convert_to<double>()}; }

    MpCplx operator-() const { return {-re, -im}; }
    MpCplx& operator+=(const MpCplx& o) { re += o.re; im += o.im; return *this; }
    MpCplx& operator-=(const MpCplx& o) { re -= o.re; im -= o.im; return *this; }
    friend MpCplx operator+(const MpCplx& a, const MpCplx& b) { return {a.re + b.re, a.im + b.im}; }
    friend MpCplx operator-(const MpCplx& a, const MpCplx& b) { return {a.re - b.re, a.im - b.im}; }
    friend MpCplx operator*(const MpCplx& a, const MpCplx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend MpCplx operator/(const MpCplx& a, const MpCplx& b) {
        MpReal d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend bool operator==(const MpCplx& a, const MpCplx& b) { return a.re == b.re && a.im == b.im; }
};

inline MpReal abs(const MpCplx& z) {
    using boost::multiprecision::sqrt;
    return sqrt(z.re * z.re + z.im * z.im);
}

inline MpCplx pow_int(const MpCplx& z, long e) {
    if (e == 0) return MpCplx(MpReal(1));
    long n = e < 0 ? -e : e;
    MpCplx acc(MpReal(1)), base = z;
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    if (e < 0) return MpCplx(MpReal(1)) / acc;
    return acc;
}

inline Cplx pow_int(const Cplx& z, long e) {
    if (e == 0) return {1.0, 0.0};
    long n = e < 0 ? -e : e;
    Cplx acc{1.0, 0.0}, base = z;
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    if (e < 0) return Cplx{1.0, 0.0} / acc;
    return acc;
}

// exp/log for MpCplx, used by the structured order-0 solve (principal branch).
inline MpCplx exp(const MpCplx& z) {
    using boost::multiprecision::exp;
    using boost::multiprecision::cos;
    using boost::multiprecision::sin;
    MpReal m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

inline MpCplx log(const MpCplx& z) {
    using boost::multiprecision::log;
    using boost::multiprecision::atan2;
    return {log(abs(z)), atan2(z.im, z.re)};
}

struct acv_error : std::runtime_error {
    explicit acv_error(const std::string& what) : std::runtime_error(what) {}
};

#define ACV_DEFINE_ERROR(NAME)                                            \
    struct NAME : acv_error {                                             \
        explicit NAME(const std::string& what) : acv_error(#NAME ": " + what) {} \
    }

ACV_DEFINE_ERROR(NotExtendable);
ACV_DEFINE_ERROR(NotUnimodular);
ACV_DEFINE_ERROR(DimensionTooLarge);
ACV_DEFINE_ERROR(PointsOffLattice);
ACV_DEFINE_ERROR(NotFullDimensional);
ACV_DEFINE_ERROR(ChartInvalid);
ACV_DEFINE_ERROR(NoPositiveCompletion);
ACV_DEFINE_ERROR(SubdivisionBudgetExceeded);
ACV_DEFINE_ERROR(InconsistentDuality);
ACV_DEFINE_ERROR(ExpansionPole);
ACV_DEFINE_ERROR(SolverBudgetExhausted);
ACV_DEFINE_ERROR(FacetUnstable);
ACV_DEFINE_ERROR(NoQualifyingFacet);
ACV_DEFINE_ERROR(MuViolated);
ACV_DEFINE_ERROR(Order0SolveFailed);
ACV_DEFINE_ERROR(LinearSolveInconsistent);
ACV_DEFINE_ERROR(OrderShortfall);
ACV_DEFINE_ERROR(NumericOverflow);
ACV_DEFINE_ERROR(ParseError);
ACV_DEFINE_ERROR(ConstantTermPresent);

#undef ACV_DEFINE_ERROR

} // namespace acv

#endif
