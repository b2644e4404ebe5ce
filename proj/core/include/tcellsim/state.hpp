#pragma once

namespace tcellsim {

/// Compartment densities at one time point, cells per mm^3 of peripheral
/// blood. Both engines emit non-negative values only.
struct StateVector {
    double t;    ///< years
    double n;    ///< naive cells of direct thymic origin (N)
    double n_p;  ///< naive cells that have proliferated (Np)
    double a;    ///< activated cells (A)
    double m;    ///< memory cells (M)

    double total_naive() const { return n + n_p; }
};

/// Time derivatives of the four compartments, cells mm^-3 year^-1.
struct StateDerivative {
    double dn;
    double dn_p;
    double da;
    double dm;
};

}  // namespace tcellsim
