#pragma once

#include <string>

#include "eow/geometry.hpp"
#include "eow/quadrature.hpp"

namespace eow
{
//---------------------------------------------------------------------------//
// Test functions
//---------------------------------------------------------------------------//

enum class TestFamily
{
    gaussian,
    poly_gaussian,
    heat_probe,
    custom
};

const char* to_string(TestFamily f);

/*!
 * Entire test function on C^n, rapidly decreasing on horizontal strips.
 *
 * gaussian: exp(-sum (z_j - c_j)^2 / s^2)
 * poly_gaussian (n=1): sum a_k (z - c)^k times the gaussian
 * heat_probe: (4 pi t)^{-n/2} exp(-sum (xi_j - z_j)^2 / 4t), unconjugated square
 */
struct TestFunction
{
    int n = 1;
    TestFamily family = TestFamily::gaussian;
    ComplexVec center;
    double width = 1;
    ComplexVec coeffs;
    double t = 0;
    std::string label;
    ComplexFn fn;

    static TestFunction gaussian(ComplexVec center, double width);
    static TestFunction gaussian(cplx center = 0.0, double width = 1.0);
    static TestFunction poly_gaussian(ComplexVec coeffs, cplx center = 0.0, double width = 1.0);
    static TestFunction heat_probe(RealVec xi, double t);
    static TestFunction custom(int n, ComplexFn fn, RealVec center, double width, std::string label);

    cplx operator()(std::span<const cplx> z) const { return fn(z); }
    cplx operator()(cplx z) const { return fn(std::span<const cplx>(&z, 1)); }

    RealVec center_hint() const;
    double width_hint() const { return width; }
};

TestFunction heat_probe(RealVec xi, double t);

//! Sampled sup{|z^p phi(z)| : |Im z_j| <= k, |p| <= j}.
double strip_norm(const TestFunction& phi, double k, int j);

//---------------------------------------------------------------------------//
// Boundary functions with a growth certificate
//---------------------------------------------------------------------------//

enum class BoundaryFamily
{
    polynomial,
    rational,
    cauchy_hilbert,
    custom
};

const char* to_string(BoundaryFamily f);

struct PointMass
{
    cplx c;
    ComplexVec w;
};

/*!
 * Holomorphic F on the tube over `tube` with |F(z)| (1+|z|)^{-j} <= M on
 * compact sub-tubes. The certificate is spot-checked at construction.
 */
struct BoundaryFunction
{
    int n = 1;
    Cone tube = Cone::forward(1);
    BoundaryFamily family = BoundaryFamily::custom;
    int growth_order = 0;
    double growth_constant = 0;
    ComplexVec coeffs;    //!< polynomial part, ascending powers (n=1)
    ComplexVec poles;     //!< rational: sum residues_k / (z - poles_k)
    ComplexVec residues;
    std::vector<PointMass> masses;  //!< cauchy_hilbert source
    std::string label;
    ComplexFn fn;

    static BoundaryFunction polynomial(ComplexVec coeffs, const Cone& tube);
    static BoundaryFunction rational(ComplexVec poles, ComplexVec residues, const Cone& tube,
                                     ComplexVec poly = {});
    static BoundaryFunction custom(const Cone& tube, ComplexFn fn, int j, double M, std::string label);

    cplx operator()(std::span<const cplx> z) const { return fn(z); }
    cplx operator()(cplx z) const { return fn(std::span<const cplx>(&z, 1)); }

    //! Largest sampled |F|(1+|z|)^{-j} on sub-tubes with heights in [ell + d, ell + d + 3].
    double sampled_growth(int j) const;
    //! Throws InvalidArgument when the sampled growth exceeds M.
    void certify() const;
};

//! (2 pi i)^{-1} sum c_k / (w_k - z) restricted to Im z > ell and Im z < -ell.
struct CauchyHilbertPair
{
    BoundaryFunction upper, lower;
};

CauchyHilbertPair cauchy_hilbert(const std::vector<PointMass>& f, double ell);

//! Direct evaluation of the transform; PoleError at a mass point.
cplx cauchy_hilbert_value(const std::vector<PointMass>& f, cplx z);

//---------------------------------------------------------------------------//
// Ultrahyperfunctions
//---------------------------------------------------------------------------//

struct Ultrahyperfunction
{
    enum class Kind
    {
        boundary,
        point_masses
    };

    Kind kind = Kind::point_masses;
    int n = 1;
    BoundaryFunction F;
    RealVec eta;
    std::vector<PointMass> masses;

    //! eta empty selects sign * (ell + 1) e.
    static Ultrahyperfunction from_boundary(BoundaryFunction F, RealVec eta = {});
    static Ultrahyperfunction from_masses(std::vector<PointMass> masses, int n = 1);
    static Ultrahyperfunction zero(int n = 1);

    bool is_zero() const { return kind == Kind::point_masses && masses.empty(); }
};

struct ContourOverrides
{
    double half_width = 0;  //!< 0: 12 max(1, width)
    double step = 0;        //!< 0: min(0.01, width / 6)
};

ContourSpec test_contour(const TestFunction& phi, RealVec heights, const ContourOverrides& o = {});

//! u(phi); exact for point masses, line integral at height eta otherwise.
QuadratureResult apply(const Ultrahyperfunction& u, const TestFunction& phi, const ContourOverrides& o = {});

//! Counterclockwise closed rectangle [x0,x1] + i[y0,y1].
std::vector<cplx> rectangle_path(double x0, double x1, double y0, double y1);

//! -contour integral of F phi around a rectangle enclosing the masses.
cplx cauchy_hilbert_round_trip(const std::vector<PointMass>& f, const TestFunction& phi, double a, double b,
                               double ell, double margin = 0.25);

//---------------------------------------------------------------------------//
// Carrier probe
//---------------------------------------------------------------------------//

struct CarrierProbeReport
{
    RealVec t;
    RealVec magnitude;
    RealVec bound;          //!< sup over sampled L of (1+|w|)^j exp((-(xi-Re w)^2 + (Im w)^2)/4t)
    double exponent = 0;    //!< max over sampled L of (Im w)^2 - |xi - Re w|^2
    std::string verdict;    //!< decays | grows | inconclusive
};

LadderSpec default_probe_ladder();

/*!
 * |u(E_xi^t)| down the ladder. "decays" iff each of the last 3 transitions
 * shrinks by 10 or more, "grows" iff each grows by 10 or more.
 */
CarrierProbeReport carrier_probe(const Ultrahyperfunction& u, const CarrierSet& L, std::span<const double> xi,
                                 const LadderSpec& ladder = default_probe_ladder(), int growth_order = 0,
                                 std::size_t carrier_samples = 2000);

std::string decay_verdict(std::span<const double> magnitudes);

}  // namespace eow
