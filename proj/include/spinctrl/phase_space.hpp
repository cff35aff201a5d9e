#pragma once

#include "spinctrl/spin_core.hpp"

namespace spinctrl {

/// theta sampled uniformly on [0, pi] (inclusive), phi on [0, 2 pi).
struct SphereGrid {
    int n_theta = 64;
    int n_phi = 128;

    double theta(int i) const;
    double phi(int k) const;
};

struct PhaseField {
    SphereGrid grid;
    Eigen::MatrixXd values;  // n_theta x n_phi
};

/// Husimi Q(theta, phi) = <theta,phi| rho |theta,phi>.
PhaseField husimi_q(const DensityMatrix& rho, const SpinOperators& ops,
                    const SphereGrid& grid);

/// Wigner 3j symbol via the Racah sum in log-factorial arithmetic. Inputs must
/// be half-integers; returns 0 when selection rules fail.
double wigner_3j(double j1, double j2, double j3, double m1, double m2, double m3);

/// Spherical Wigner quasi-probability from the multipole expansion of rho
/// over k = 0..2j, q = -k..k.
PhaseField wigner_function(const DensityMatrix& rho, const SpinOperators& ops,
                           const SphereGrid& grid);

/// Normalized spherical harmonic Y_l^m(theta, phi) (Condon-Shortley phase),
/// evaluated by recurrence on normalized associated Legendre functions.
Complex spherical_harmonic(int l, int m, double theta, double phi);

} // namespace spinctrl
