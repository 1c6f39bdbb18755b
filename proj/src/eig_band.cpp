#include "eig_band.hpp"

#include <cmath>

#include "relmass/errors.hpp"

namespace relmass::oracle::detail {

int count_below(const Band2& a, long double x) {
    const int n = a.n();
    // Pivots that land exactly on zero are nudged to a tiny negative value,
    // the usual bisection safeguard; it shifts the count by at most one at
    // isolated shift values, which bisection tolerates.
    const long double pivmin = 1e-4000L + 1e-300L;
    std::vector<long double> d(n), l1(n, 0.0L), l2(n, 0.0L);
    int count = 0;
    for (int i = 0; i < n; ++i) {
        long double li1 = 0.0L, li2 = 0.0L;
        if (i >= 2)
            li2 = a.d2[i - 2] / d[i - 2];
        if (i >= 1) {
            long double t = a.d1[i - 1];
            if (i >= 2)
                t -= li2 * d[i - 2] * l1[i - 1];
            li1 = t / d[i - 1];
        }
        long double di = a.d0[i] - x;
        if (i >= 1)
            di -= li1 * li1 * d[i - 1];
        if (i >= 2)
            di -= li2 * li2 * d[i - 2];
        if (std::abs(di) < pivmin)
            di = -pivmin;
        if (!std::isfinite(static_cast<double>(di)))
            throw NumericError("inertia count broke down (non-finite pivot)");
        d[i] = di;
        l1[i] = li1;
        l2[i] = li2;
        if (di < 0.0L)
            ++count;
    }
    return count;
}

void spectrum_bounds(const Band2& a, long double& lo, long double& hi) {
    const int n = a.n();
    lo = hi = a.d0[0];
    for (int i = 0; i < n; ++i) {
        long double r = 0.0L;
        if (i >= 1)
            r += std::abs(a.d1[i - 1]);
        if (i + 1 < n)
            r += std::abs(a.d1[i]);
        if (i >= 2)
            r += std::abs(a.d2[i - 2]);
        if (i + 2 < n)
            r += std::abs(a.d2[i]);
        lo = std::min(lo, a.d0[i] - r);
        hi = std::max(hi, a.d0[i] + r);
    }
}

long double eigenvalue_by_index(const Band2& a, int k) {
    long double lo, hi;
    spectrum_bounds(a, lo, hi);
    const long double width0 = hi - lo;
    for (int iter = 0; iter < 200; ++iter) {
        const long double mid = 0.5L * (lo + hi);
        if (count_below(a, mid) <= k)
            lo = mid;
        else
            hi = mid;
        const long double scale = std::max({std::abs(lo), std::abs(hi), 1e-30L});
        if (hi - lo <= scale * 1e-18L || hi - lo <= width0 * 1e-25L)
            break;
    }
    return 0.5L * (lo + hi);
}

}  // namespace relmass::oracle::detail
