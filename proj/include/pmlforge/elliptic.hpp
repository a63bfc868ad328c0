// Complete elliptic integral of the first kind and the Jacobi functions
// sn, cn, dn, real arguments only. Both run on the arithmetic-geometric
// mean; the Jacobi evaluation is the classical descending Landen
// recursion driven to a relative tolerance of 1e-14.
//
// The segment solvers always know the complementary modulus k' = a/b
// exactly, so the entry points take k' and avoid forming 1 - k^2.

#pragma once

namespace pmlforge {

struct JacobiValues {
    double sn;
    double cn;
    double dn;
};

// K(k) with k = sqrt(1 - kprime^2); requires 0 < kprime <= 1.
double complete_elliptic_k_from_kprime(double kprime);

// sn(u,k), cn(u,k), dn(u,k) with the same k' parameterization.
JacobiValues jacobi_elliptic_from_kprime(double u, double kprime);

}  // namespace pmlforge
