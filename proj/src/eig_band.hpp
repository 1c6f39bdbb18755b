#pragma once

#include <vector>

namespace relmass::oracle::detail {

// Symmetric pentadiagonal matrix in banded storage: d0 is the diagonal
// (size n), d1 the first off-diagonal (size n-1), d2 the second (size n-2).
// Extended precision throughout; see grid_hamiltonian_eigs for why.
struct Band2 {
    std::vector<long double> d0, d1, d2;
    int n() const { return static_cast<int>(d0.size()); }
};

// Number of eigenvalues strictly below x, by counting negative pivots of the
// LDL^T factorization of (A - x I) (Sylvester's law of inertia).
int count_below(const Band2& a, long double x);

// k-th smallest eigenvalue (0-based) by bisection on count_below.
long double eigenvalue_by_index(const Band2& a, int k);

// Interval [lo, hi] containing the whole spectrum (Gershgorin).
void spectrum_bounds(const Band2& a, long double& lo, long double& hi);

}  // namespace relmass::oracle::detail
