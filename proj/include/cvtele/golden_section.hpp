#pragma once

#include <cmath>
#include <stdexcept>

namespace cvtele {

template <typename Real>
struct ScalarMax {
    Real arg;
    Real value;
};

/// Golden-section search for a maximum of a unimodal function on [lo, hi].
///
/// Stops once the bracket is narrower than `tol`. The returned point is the
/// best of the interior probes; callers wanting endpoint maxima must compare
/// against f(lo) and f(hi) themselves.
template <typename Real, typename Fn>
ScalarMax<Real> golden_section_maximize(Fn&& f, Real lo, Real hi, Real tol,
                                        unsigned max_iter = 500) {
    if (!(tol > Real(0)))
        throw std::invalid_argument("golden_section_maximize: tol must be > 0");
    if (!(lo <= hi))
        throw std::invalid_argument("golden_section_maximize: empty bracket");

    const Real inv_phi = (std::sqrt(Real(5)) - Real(1)) / Real(2);
    Real a = lo;
    Real b = hi;
    Real c = b - inv_phi * (b - a);
    Real d = a + inv_phi * (b - a);
    Real fc = f(c);
    Real fd = f(d);

    for (unsigned iter = 0; iter < max_iter && (b - a) > tol; ++iter) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? ScalarMax<Real>{c, fc} : ScalarMax<Real>{d, fd};
}

}  // namespace cvtele
