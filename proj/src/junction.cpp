// SPDX-License-Identifier: Apache-2.0
#include "sawline/junction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sawline/constants.hpp"

namespace sawline {

namespace {

constexpr double kExpClamp = 250.0;  // keeps exp() finite far outside the
                                     // Boltzmann validity range

double clamped_exp(double u) { return std::exp(std::clamp(u, -kExpClamp, kExpClamp)); }

struct Workspace {
    std::vector<double> x;      // nodes
    std::vector<double> h;      // cell widths, h[i] = x[i+1]-x[i]
    std::vector<double> wcell;  // dual-cell widths per node
};

Workspace build_mesh(const JunctionSpec& spec) {
    Workspace ws;
    ws.x.push_back(0.0);
    double h = spec.mesh_h0;
    while (ws.x.back() < spec.domain_length) {
        ws.x.push_back(std::min(ws.x.back() + h, spec.domain_length));
        h *= spec.mesh_growth;
    }
    const std::size_t n = ws.x.size();
    ws.h.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) ws.h[i] = ws.x[i + 1] - ws.x[i];
    ws.wcell.resize(n);
    ws.wcell.front() = ws.h.front() / 2.0;
    ws.wcell.back() = ws.h.back() / 2.0;
    for (std::size_t i = 1; i + 1 < n; ++i) ws.wcell[i] = (ws.h[i - 1] + ws.h[i]) / 2.0;
    return ws;
}

void solve_tridiagonal(std::vector<double>& lo, std::vector<double>& di, std::vector<double>& up,
                       std::vector<double>& rhs) {
    const std::size_t n = di.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double m = lo[i] / di[i - 1];
        di[i] -= m * up[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= di[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - up[i] * rhs[i + 1]) / di[i];
}

// Gouy-Chapman profile for the semi-infinite intrinsic junction:
// tanh(u/4) = tanh(us/4) exp(-x/LD)
double gouy_chapman(double us, double x, double ld) {
    const double g = std::tanh(us / 4.0) * std::exp(-x / ld);
    const double gc = std::clamp(g, -1.0 + 1e-16, 1.0 - 1e-16);
    return 4.0 * std::atanh(gc);
}

struct NewtonResult {
    std::vector<double> phi;
    double residual = 0.0;
    int iterations = 0;
};

// One full solve for a fixed surface drop (Dirichlet when there is no oxide,
// Robin through the oxide capacitance otherwise). phi in volts.
NewtonResult newton_solve(const JunctionSpec& spec, const Workspace& ws, double drop,
                          std::vector<double> phi) {
    const double q = constants::elementary_charge;
    const double eps = spec.relative_permittivity * constants::vacuum_permittivity;
    const double vt = spec.thermal_voltage();
    const double ni = spec.intrinsic_density;
    const std::size_t n = ws.x.size();
    const bool oxide = spec.oxide_eot > 0.0;
    const double c_ox = oxide ? 3.9 * constants::vacuum_permittivity / spec.oxide_eot : 0.0;

    // charge scale for the relative residual norm
    const double q_scale = q * ni * spec.debye_length();

    auto residual = [&](const std::vector<double>& p, std::vector<double>& F) {
        F.assign(n, 0.0);
        std::vector<double> ne(n), nh(n);
        for (std::size_t i = 0; i < n; ++i) {
            ne[i] = ni * clamped_exp(p[i] / vt);
            nh[i] = ni * clamped_exp(-p[i] / vt);
        }
        if (oxide)
            F[0] = c_ox * (drop - p[0]) + eps * (p[1] - p[0]) / ws.h[0] -
                   q * (ne[0] - nh[0]) * ws.wcell[0];
        else
            F[0] = p[0] - drop;
        for (std::size_t i = 1; i + 1 < n; ++i)
            F[i] = eps * ((p[i + 1] - p[i]) / ws.h[i] - (p[i] - p[i - 1]) / ws.h[i - 1]) -
                   q * (ne[i] - nh[i]) * ws.wcell[i];
        F[n - 1] = -eps * (p[n - 1] - p[n - 2]) / ws.h[n - 2] -
                   q * (ne[n - 1] - nh[n - 1]) * ws.wcell[n - 1];
    };

    auto scaled_norm = [&](const std::vector<double>& F) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double s = (i == 0 && !oxide) ? std::abs(F[i]) / vt : std::abs(F[i]) / q_scale;
            m = std::max(m, s);
        }
        return m;
    };

    std::vector<double> F, Ftrial, lo(n), di(n), up(n), step;
    residual(phi, F);
    double fnorm = scaled_norm(F);

    int it = 0;
    std::vector<double> dn(n);
    for (; it < spec.max_newton_iterations && fnorm > 1e-11; ++it) {
        // d/dphi_i of q (ne - nh) wcell = q wcell (ne + nh) / vt
        for (std::size_t i = 0; i < n; ++i)
            dn[i] = q * ws.wcell[i] *
                    (ni * clamped_exp(phi[i] / vt) + ni * clamped_exp(-phi[i] / vt)) / vt;
        if (oxide) {
            di[0] = -c_ox - eps / ws.h[0] - dn[0];
            up[0] = eps / ws.h[0];
        } else {
            di[0] = 1.0;
            up[0] = 0.0;
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            lo[i] = eps / ws.h[i - 1];
            up[i] = eps / ws.h[i];
            di[i] = -eps / ws.h[i] - eps / ws.h[i - 1] - dn[i];
        }
        lo[n - 1] = eps / ws.h[n - 2];
        di[n - 1] = -eps / ws.h[n - 2] - dn[n - 1];

        step = F;
        for (double& v : step) v = -v;
        solve_tridiagonal(lo, di, up, step);

        // clamp the update then line-search on the scaled residual norm
        double maxstep = 0.0;
        for (double v : step) maxstep = std::max(maxstep, std::abs(v));
        double lambda = maxstep > 5.0 * vt ? 5.0 * vt / maxstep : 1.0;

        bool accepted = false;
        std::vector<double> trial(n);
        for (int ls = 0; ls < 40; ++ls) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = phi[i] + lambda * step[i];
            residual(trial, Ftrial);
            const double tnorm = scaled_norm(Ftrial);
            if (tnorm < fnorm || tnorm < 1e-11) {
                phi.swap(trial);
                F.swap(Ftrial);
                fnorm = tnorm;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted)
            throw SolverError("junction solver: Newton line search stalled, residual " +
                              std::to_string(fnorm));
    }
    if (fnorm > 1e-9)
        throw SolverError("junction solver: Newton did not converge, residual " +
                          std::to_string(fnorm) + " after " + std::to_string(it) + " iterations");
    return {std::move(phi), fnorm, it};
}

}  // namespace

void JunctionSpec::validate() const {
    if (!(metal_work_function > 0.0)) throw std::invalid_argument("JunctionSpec: metal work function must be > 0");
    if (!(semiconductor_electron_affinity > 0.0))
        throw std::invalid_argument("JunctionSpec: electron affinity must be > 0");
    if (!(band_gap > 0.0)) throw std::invalid_argument("JunctionSpec: band gap must be > 0");
    if (!(intrinsic_density > 0.0)) throw std::invalid_argument("JunctionSpec: intrinsic density must be > 0");
    if (!(relative_permittivity > 0.0))
        throw std::invalid_argument("JunctionSpec: relative permittivity must be > 0");
    if (!(temperature > 0.0)) throw std::invalid_argument("JunctionSpec: temperature must be > 0");
    if (!(domain_length > 0.0)) throw std::invalid_argument("JunctionSpec: domain length must be > 0");
    if (oxide_eot < 0.0) throw std::invalid_argument("JunctionSpec: oxide EOT must be >= 0");
    if (!(mesh_h0 > 0.0) || !(mesh_growth >= 1.0))
        throw std::invalid_argument("JunctionSpec: bad mesh parameters");
}

double JunctionSpec::thermal_voltage() const {
    return constants::boltzmann * temperature / constants::elementary_charge;
}

double JunctionSpec::semiconductor_work_function() const {
    return semiconductor_electron_affinity + band_gap / 2.0;
}

double JunctionSpec::total_drop() const {
    return (semiconductor_work_function() - metal_work_function) + bias_v;
}

double JunctionSpec::debye_length() const {
    const double q = constants::elementary_charge;
    const double eps = relative_permittivity * constants::vacuum_permittivity;
    return std::sqrt(eps * thermal_voltage() / (2.0 * q * intrinsic_density));
}

double JunctionProfile::surface_displacement_field(const JunctionSpec& spec) const {
    const double q = constants::elementary_charge;
    const double eps = spec.relative_permittivity * constants::vacuum_permittivity;
    const double h0 = x[1] - x[0];
    // second-order one-sided derivative using the interior equation at x=0
    const double curv = (q / eps) * (n_e[0] - n_h[0]);
    return eps * ((phi[1] - phi[0]) / h0 - 0.5 * h0 * curv);
}

JunctionProfile solve_equilibrium(const JunctionSpec& spec) {
    spec.validate();
    const Workspace ws = build_mesh(spec);
    const std::size_t n = ws.x.size();
    const double vt = spec.thermal_voltage();
    const double ld = spec.debye_length();
    const double drop = spec.total_drop();

    // Continuation in the surface drop keeps Newton in its basin for strong
    // accumulation (tens of kT of band bending).
    std::vector<double> targets;
    const double u_total = drop / vt;
    const double u_step = 16.0;
    if (std::abs(u_total) > 24.0) {
        double u = std::copysign(24.0, u_total);
        while (std::abs(u) < std::abs(u_total)) {
            targets.push_back(u * vt);
            u += std::copysign(u_step, u_total);
        }
    }
    targets.push_back(drop);

    std::vector<double> phi(n);
    for (std::size_t i = 0; i < n; ++i)
        phi[i] = vt * gouy_chapman(targets.front() / vt, ws.x[i], ld);

    NewtonResult result;
    result.phi = std::move(phi);
    for (double target : targets)
        result = newton_solve(spec, ws, target, std::move(result.phi));

    JunctionProfile prof;
    prof.x = ws.x;
    prof.phi = std::move(result.phi);
    prof.newton_residual = result.residual;
    prof.newton_iterations = result.iterations;
    prof.n_e.resize(n);
    prof.n_h.resize(n);
    const double ni = spec.intrinsic_density;
    for (std::size_t i = 0; i < n; ++i) {
        prof.n_e[i] = ni * clamped_exp(prof.phi[i] / vt);
        prof.n_h[i] = ni * clamped_exp(-prof.phi[i] / vt);
    }
    prof.surface_potential = prof.phi.front();
    prof.oxide_drop = drop - prof.surface_potential;

    // charge-neutral back boundary: the residual slope must be negligible
    // against the peak field
    double max_slope = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        max_slope = std::max(max_slope, std::abs(prof.phi[i + 1] - prof.phi[i]) / ws.h[i]);
    const double back_slope =
        std::abs(prof.phi[n - 1] - prof.phi[n - 2]) / ws.h[n - 2];
    if (max_slope > 0.0 && back_slope > spec.back_slope_tol * max_slope)
        throw SolverError(
            "junction solver: domain too short, back-boundary slope " +
            std::to_string(back_slope / max_slope) + " of peak exceeds tolerance " +
            std::to_string(spec.back_slope_tol));
    return prof;
}

std::vector<JunctionProfile> bias_sweep(const JunctionSpec& spec,
                                        const std::vector<double>& biases) {
    if (biases.empty()) throw std::invalid_argument("bias_sweep: bias list must be non-empty");
    std::vector<JunctionProfile> out;
    out.reserve(biases.size());
    for (double b : biases) {
        JunctionSpec s = spec;
        s.bias_v = b;
        out.push_back(solve_equilibrium(s));
    }
    return out;
}

double sheet_charge(const JunctionSpec& spec, const JunctionProfile& profile) {
    const double q = constants::elementary_charge;
    const std::size_t n = profile.x.size();
    if (n < 2) throw std::invalid_argument("sheet_charge: profile too short");
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double w;
        if (i == 0)
            w = (profile.x[1] - profile.x[0]) / 2.0;
        else if (i + 1 == n)
            w = (profile.x[n - 1] - profile.x[n - 2]) / 2.0;
        else
            w = (profile.x[i + 1] - profile.x[i - 1]) / 2.0;
        total += q * (profile.n_h[i] - profile.n_e[i]) * w;
    }
    (void)spec;
    return total;
}

}  // namespace sawline
