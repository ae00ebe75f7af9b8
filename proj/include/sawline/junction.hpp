// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <vector>

namespace sawline {

// Metal on intrinsic semiconductor with an ideal ohmic back contact, solved
// in 1D with Boltzmann carrier statistics. The optional oxide is a lossless
// series capacitance (effective SiO2 thickness), not a solved domain.
struct JunctionSpec {
    double metal_work_function = 4.28;            // eV (Al)
    double semiconductor_electron_affinity = 4.05;  // eV (Si)
    double band_gap = 1.12;                       // eV
    double intrinsic_density = 1.0e16;            // m^-3 at 300 K
    double relative_permittivity = 11.7;
    double temperature = 300.0;                   // K
    double domain_length = 50e-6;                 // m
    double bias_v = 0.0;                          // back contact vs metal, V
    double oxide_eot = 0.0;                       // m, 0 = no oxide

    // mesh: geometric grading from the interface to the back contact
    double mesh_h0 = 1e-10;      // first cell, m
    double mesh_growth = 1.05;
    // |dphi/dx| at the back boundary must stay below this fraction of the
    // peak field, otherwise the domain is too short for charge neutrality
    double back_slope_tol = 1e-2;
    int max_newton_iterations = 400;

    void validate() const;
    double thermal_voltage() const;                 // kT/q, V
    double semiconductor_work_function() const;     // chi + Eg/2, eV
    // built-in band bending plus bias: total drop across oxide + space charge
    double total_drop() const;
    double debye_length() const;  // sqrt(eps kT / (2 q^2 n_i))
};

// Potential is referenced to the intrinsic level deep in the bulk, so
// n_e = n_i exp(q phi / kT) and n_h = n_i exp(-q phi / kT).
struct JunctionProfile {
    std::vector<double> x;    // depth from the interface, m
    std::vector<double> phi;  // V
    std::vector<double> n_e;  // m^-3
    std::vector<double> n_h;  // m^-3
    double surface_potential = 0.0;   // phi at x=0 after oxide partition
    double oxide_drop = 0.0;          // V across the oxide, 0 without oxide
    double newton_residual = 0.0;     // scaled residual at convergence
    int newton_iterations = 0;

    // eps * dphi/dx at the surface, discretely consistent with the interior
    // equations so Gauss's law closes to round-off
    double surface_displacement_field(const JunctionSpec& spec) const;
};

// Damped Newton on the full nonlinear Poisson system, analytic tridiagonal
// Jacobian, Gouy-Chapman initial guess with continuation for strong bias.
// Throws SolverError on non-convergence or a too-short domain.
JunctionProfile solve_equilibrium(const JunctionSpec& spec);

std::vector<JunctionProfile> bias_sweep(const JunctionSpec& spec,
                                        const std::vector<double>& biases);

// Integrated space charge density, C/m^2: integral of q (n_h - n_e) dx.
// Equals eps * dphi/dx at x=0 by Gauss's law (field pointing into the bulk);
// negative for an electron accumulation layer.
double sheet_charge(const JunctionSpec& spec, const JunctionProfile& profile);

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sawline
