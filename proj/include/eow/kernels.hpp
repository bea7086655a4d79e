#pragma once

#include <string>

#include "eow/common.hpp"

namespace eow
{
//---------------------------------------------------------------------------//
// Complex hyperbolic helpers, overflow-safe for large |Re w|
//---------------------------------------------------------------------------//

cplx sech(cplx w);
cplx cosech(cplx w);

//---------------------------------------------------------------------------//
// I(xi) = integral over the unit sphere of exp(-<omega, xi>)
//---------------------------------------------------------------------------//

//! Radial closed form of I at |xi| = rho for n = 1, 2, 3.
double sphere_laplace_radial(int n, double rho);

/*!
 * I(xi). Closed form for n = 1; sphere quadrature (aligned with xi, so
 * exponentially accurate) for n = 2, 3.
 */
double sphere_laplace(std::span<const double> xi);

//---------------------------------------------------------------------------//
// Kernel K and its scaled version K_r
//---------------------------------------------------------------------------//

enum class KernelStrategy
{
    closed_form_1d,
    fourier_quadrature
};

const char* to_string(KernelStrategy s);

struct KernelSpec
{
    int n = 1;
    double r = 1.0;
    KernelStrategy strategy = KernelStrategy::closed_form_1d;
    double cutoff = 0;           //!< Fourier radius; 0 selects it from the tail bound
    double step = 0;             //!< Fourier step; 0 means 0.1 (n=1) or 0.25 (n>=2)
    double tolerance = 1e-9;     //!< accepted quadrature error
    double domain_margin = 0.05;

    void validate() const;
    double resolved_step() const;
};

struct KernelValue
{
    cplx value{};
    double error = 0;  //!< zero for the closed form
};

/*!
 * Signed clearance (1 - margin) + |Re z/r|^2 - |Im z/r|^2; positive inside
 * the admitted part of the holomorphy domain.
 */
double kernel_domain_clearance(std::span<const cplx> z, double r, double margin = 0.05);

//! Closed form r^{-1} (1/4) sech(pi z / 2r). Only refuses exact poles.
cplx kernel_1d(cplx z, double r = 1.0);

//! K_r(z) under spec; refuses points outside the domain margin.
KernelValue kernel_eval(std::span<const cplx> z, const KernelSpec& spec);
cplx kernel_eval_1d(cplx z, const KernelSpec& spec);

//! r^{-n} K(z / r) with the remaining spec fields taken from base.
KernelValue kernel_scaled(std::span<const cplx> z, double r, const KernelSpec& base = {});

//! Poles i(2m+1)r for m in [-count, count).
ComplexVec kernel_poles_1d(double r, int count = 3);

//! Fourier radius chosen so the tail beyond it stays below tolerance / 10.
double kernel_cutoff(int n, double im_norm, double tolerance);

//---------------------------------------------------------------------------//
// Rapid decrease on a strip |Im z| <= c
//---------------------------------------------------------------------------//

struct DecayReport
{
    double sup = 0;       //!< sup of |z|^p |K_r(z)| over the sampled strip
    double sup_at = 0;    //!< |Re z| where it was attained
    RealVec shell_radius;
    RealVec shell_max;
    bool decays = true;
    std::string detail;
};

/*!
 * Sample |z|^p |K_r(z)| on log-spaced shells in |Re z| across the strip and
 * check the shell maxima are non-increasing beyond decay_from. Shells below
 * floor count as decayed (quadrature noise level).
 */
DecayReport rapid_decrease_certificate(const KernelSpec& spec, double c, int p,
                                       double decay_from = 10.0, double floor = 0.0);

}  // namespace eow
