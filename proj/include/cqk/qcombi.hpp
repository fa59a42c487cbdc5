#pragma once

#include "cqk/ratq.hpp"

namespace cqk {

/// [n] in the variable q^d: (q^{dn} - q^{-dn})/(q^d - q^{-d}).
inline LaurentQ q_int(long n, long d = 1) {
    if (n < 0) throw Error("q_int: negative n");
    if (d < 1) throw Error("q_int: d must be >= 1");
    LaurentQ r;
    // palindromic: q^{d(n-1)} + q^{d(n-3)} + ... + q^{-d(n-1)}
    for (long j = 0; j < n; ++j) r.add_term(d * (n - 1 - 2 * j), 1);
    return r;
}

/// [n]! in the variable q^d.
inline LaurentQ q_factorial(long n, long d = 1) {
    LaurentQ r(1);
    for (long k = 2; k <= n; ++k) r *= q_int(k, d);
    return r;
}

/// Gaussian binomial [n over m] in the variable q^d.
inline LaurentQ q_binomial(long n, long m, long d = 1) {
    if (m < 0 || m > n) throw Error("q_binomial: m out of range");
    if (2 * m > n) m = n - m;
    LaurentQ r(1);
    for (long k = 1; k <= m; ++k) {
        r *= q_int(n - m + k, d);
        r = laurent_div_exact(r, q_int(k, d));
    }
    return r;
}

}  // namespace cqk
