#pragma once

#include <optional>
#include <string>

#include "eow/kernels.hpp"
#include "eow/ultrahyperfunctions.hpp"

namespace eow
{
//---------------------------------------------------------------------------//
// Regularization U = u * K_r (n = 1)
//---------------------------------------------------------------------------//

enum class DomainTag
{
    V1,  //!< Im z > ell - r, from a boundary value on the upper tube
    V2,  //!< Im z < r - ell, lower tube
    Z    //!< off the carrier, from point masses
};

const char* to_string(DomainTag t);

struct RegularizeOptions
{
    double eta_offset = 0.1;  //!< contour floor eta = ell + eta_offset * r
    double margin = 0.05;     //!< kernel clearance kept on every evaluation
    double tolerance = 1e-8;  //!< accepted halving error, relative to the growth scale
};

/*!
 * U(z) = integral F(xi + i sigma h) K_r(z - xi - i sigma h) dxi for a boundary
 * value, with h = max(eta, sigma Im z) so the kernel argument stays on the
 * safe side; sum c K_r(z - w) for point masses.
 *
 * Evaluation outside the tagged domain throws DomainError.
 */
struct RegularizedFunction
{
    Ultrahyperfunction source;
    double r = 1;
    double ell = 0;
    DomainTag tag = DomainTag::Z;
    int sigma = 1;
    double eta = 0;
    cplx scale = 1.0;
    std::optional<CarrierSet> carrier;  //!< Z only
    RegularizeOptions options;

    //! Positive inside the domain; scaled by r.
    double clearance(cplx z) const;
    bool contains(cplx z) const { return clearance(z) > 0; }
    QuadratureResult evaluate(cplx z) const;
    cplx operator()(cplx z) const { return evaluate(z).value; }
    RegularizedFunction negated() const;
    std::string describe() const;
};

//! Boundary variant needs r > ell; point masses get a point-cloud carrier.
RegularizedFunction regularize(const Ultrahyperfunction& u, double r, const RegularizeOptions& opts = {});

//! Point masses regularized with an explicit carrier (Z domain off L).
RegularizedFunction regularize_on_carrier(const Ultrahyperfunction& u, const CarrierSet& L, double r,
                                          const RegularizeOptions& opts = {});

//---------------------------------------------------------------------------//
// Gluing and reconstruction
//---------------------------------------------------------------------------//

//! Sum of regularizations, defined on the intersection of their domains.
struct GluePiece
{
    std::vector<RegularizedFunction> terms;
    std::string label;

    double clearance(cplx z) const;
    cplx operator()(cplx z) const;
};

//! Pointwise dispatch to the piece with the largest clearance.
struct GluedFunction
{
    std::vector<GluePiece> pieces;

    double clearance(cplx z) const;
    bool contains(cplx z) const { return clearance(z) > 0; }
    std::size_t select(cplx z) const;  //!< throws DomainError when no piece applies
    cplx operator()(cplx z) const;
};

GluedFunction glue(std::vector<GluePiece> pieces);

//! H(z) = U(z + ir) + U(z - ir).
struct ContinuedFunction
{
    GluedFunction U;
    double r = 1;
    std::string provenance;

    double clearance(cplx z) const;
    bool contains(cplx z) const { return clearance(z) > 0; }
    cplx operator()(cplx z) const;
};

ContinuedFunction reconstruct(GluedFunction U, double r);

using Evaluator = std::function<cplx(cplx)>;

//---------------------------------------------------------------------------//
// Checks
//---------------------------------------------------------------------------//

struct ReproducingResult
{
    cplx value{};
    cplx target{};
    double residual = 0;
    double quadrature_error = 0;
};

/*!
 * sum_{w=+-1} integral K_r(x - t + i(r-R)w) phi(x - iRw) dx against phi(t).
 * Throws AccuracyError when the quadrature estimate exceeds 1e-9.
 */
ReproducingResult reproducing_check(const TestFunction& phi, double r, double R, double t);

//! Same sum with the kernel shift i(1-R)w whatever r is. Diagnostic only; agrees when r = 1.
ReproducingResult reproducing_check_unit_shift(const TestFunction& phi, double r, double R, double t);

struct OverlapReport
{
    std::vector<cplx> points;
    RealVec deviation;
    double max_deviation = 0;
    cplx worst_point{};
    double tolerance = 1e-6;
    bool pass = false;
};

//! Grid in the common domain: `re_count` real parts in [-re_extent, re_extent] times `im_count` heights.
std::vector<cplx> overlap_grid(const GluePiece& a, const GluePiece& b, double re_extent = 3, int re_count = 7,
                               int im_count = 5);

//! Throws InvalidArgument when no grid point lies in both domains.
OverlapReport overlap_report(const GluePiece& a, const GluePiece& b, std::span<const cplx> grid,
                             double tolerance = 1e-6);

struct BoundaryMatchRow
{
    std::string label;
    cplx pairing_h{};
    cplx pairing_u{};
    double deviation = 0;
};

struct BoundaryMatchReport
{
    double height = 0;
    std::vector<BoundaryMatchRow> rows;
    double max_deviation = 0;
    double tolerance = 1e-6;
    bool pass = false;
};

/*!
 * |integral H(x + i eta) phi(x + i eta) dx - u(phi)| for each phi, with H
 * sampled once on a contour shared by all test functions.
 */
BoundaryMatchReport boundary_match(const Evaluator& H, const Ultrahyperfunction& u,
                                   std::span<const TestFunction> phis, double height, double tolerance = 1e-6);
BoundaryMatchReport boundary_match(const ContinuedFunction& H, const Ultrahyperfunction& u,
                                   std::span<const TestFunction> phis, double tolerance = 1e-6);

//! Ten Gaussians with centers in [-1.5, 1.5] and widths in [0.7, 1.5].
std::vector<TestFunction> default_match_family();

//! |f_y - i f_x| / (1 + |f_x|) by central differences.
double cauchy_riemann_residual(const Evaluator& f, cplx z, double h = 1e-4);

//---------------------------------------------------------------------------//
// Local flow
//---------------------------------------------------------------------------//

/*!
 * Polyline (-X, a-2l, a+2il s, b+2il s, b+2l, X) with s = +1 (C) or -1 (C').
 * Oriented left to right.
 */
struct ProbePath
{
    double a = 0, b = 0, ell = 0;
    int sign = 1;
    double X = 10;

    std::vector<cplx> vertices() const;
    std::vector<PathNode> nodes(double panel = 0.05, int order = 10) const;
    //! Euclidean distance from the path to the box (ell / sqrt2, at the slanted legs).
    double carrier_margin() const;
};

ProbePath probe_path(const CarrierSet& L, int sign, double X);

struct LocalContinuation
{
    CarrierSet carrier;
    double r = 0;
    RegularizedFunction U1, U2, U12;
    ContinuedFunction H1, H2;
    double lwedge_threshold = 0;  //!< ell / (sqrt2 - 1)
};

/*!
 * H1 from U1 on V1 and U2 + U12 on V2 n Z; H2 from U2 on V2 and U1 - U12 on
 * V1 n Z. The difference u1 - u2 is passed as point masses carried by L.
 */
LocalContinuation local_continue(const BoundaryFunction& F1, const BoundaryFunction& F2,
                                 const std::vector<PointMass>& difference, const CarrierSet& L, double r,
                                 const RegularizeOptions& opts = {});

struct ProbeRow
{
    double xi = 0;
    cplx h1{}, h2{};
    double confidence1 = 0, confidence2 = 0;
    cplx direct1{}, direct2{};
    std::optional<cplx> oracle;
    double gap = 0;         //!< |h1 - h2|
    double oracle_gap = 0;  //!< max |h_j - oracle| or |h_j - H_j(xi)|
    bool pass = false;
};

struct ProbeReport
{
    LadderSpec ladder;
    std::vector<ProbeRow> rows;
    double tolerance = 1e-5;
    bool pass = false;
};

LadderSpec default_equality_ladder();

/*!
 * Ladder limits of integral_C H1 E and integral_C' H2 E for each xi outside
 * [a - 2 ell, b + 2 ell]; InvalidArgument otherwise.
 */
ProbeReport probe_equality(const ContinuedFunction& H1, const ContinuedFunction& H2, const CarrierSet& L,
                           std::span<const double> xis, const Evaluator& oracle = {},
                           const LadderSpec& ladder = default_equality_ladder(), double tolerance = 1e-5);

//---------------------------------------------------------------------------//
// Delta representation
//---------------------------------------------------------------------------//

struct DeltaReport
{
    LadderSpec ladder;
    ComplexVec sech_values;
    ComplexVec cosech_values;
    double max_form_gap = 0;
    LadderLimit limit;
    cplx target{};
    double residual = 0;
    bool pass = false;
};

LadderSpec default_epsilon_ladder();

//! integral [K(x + i eps - i) + K(x - i eps + i)] phi(x) dx extrapolated to eps = 0.
DeltaReport delta_representation_check(const TestFunction& phi, const LadderSpec& eps = default_epsilon_ladder(),
                                       double tolerance = 1e-5);

//---------------------------------------------------------------------------//
// Drivers
//---------------------------------------------------------------------------//

struct GlobalOptions
{
    double r = 2;
    RegularizeOptions regularize;
    double overlap_tolerance = 1e-6;
    double reconstruct_tolerance = 1e-5;
    double match_tolerance = 1e-6;
};

struct PointCheck
{
    cplx z{};
    cplx value{};
    cplx expected{};
    double deviation = 0;
};

struct GlobalRun
{
    double r = 0, ell = 0;
    OverlapReport overlap;
    std::vector<PointCheck> reconstruction;
    double reconstruction_max = 0;
    bool reconstruction_pass = true;
    BoundaryMatchReport match_upper, match_lower;
    double cauchy_riemann_max = 0;
    bool pass = false;
};

//! 50 points: 20 in the upper tube, 20 in the lower, 10 in the central strip.
std::vector<cplx> reconstruction_grid(double ell);

/*!
 * Regularize, check the overlap, glue, reconstruct. When `expected` is set
 * H is compared against it on reconstruction_grid.
 */
GlobalRun global_eow(const BoundaryFunction& F1, const BoundaryFunction& F2, const Evaluator& expected = {},
                     const GlobalOptions& opts = {});

struct LocalRun
{
    LocalContinuation continuation;
    ProbeReport probe;
    double cauchy_riemann_max = 0;
    bool pass = false;
};

LocalRun local_eow(const std::vector<PointMass>& f, const CarrierSet& L, double r, std::span<const double> xis,
                   const LadderSpec& ladder = default_equality_ladder(), double tolerance = 1e-5);

}  // namespace eow
