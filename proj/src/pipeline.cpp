#include "eow/pipeline.hpp"

#include <limits>
#include <sstream>

namespace eow
{
namespace
{
constexpr double huge = std::numeric_limits<double>::max();

std::string fmt(cplx z)
{
    std::ostringstream os;
    os.precision(6);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

// Distance from y to the union of bands [(2m+1)r - ell, (2m+1)r + ell].
double pole_band_distance(double y, double r, double ell)
{
    double m0 = std::round((y / r - 1) / 2);
    double best = huge;
    for (double m = m0 - 1; m <= m0 + 1; m += 1)
    {
        double c = (2 * m + 1) * r;
        best = std::min(best, std::max(0.0, std::abs(y - c) - ell));
    }
    return best;
}

double nearest_pole_distance(cplx d, double r)
{
    double m0 = std::round((d.imag() / r - 1) / 2);
    double best = huge;
    for (double m = m0 - 1; m <= m0 + 1; m += 1)
        best = std::min(best, std::abs(d - cplx(0, (2 * m + 1) * r)));
    return best;
}

cplx mass_point(const PointMass& m)
{
    if (m.w.size() != 1)
        throw InvalidArgument("pipeline: only one-variable point masses are supported");
    return m.w[0];
}

cplx heat(double xi, double t, cplx z)
{
    cplx d = xi - z;
    return std::exp(-d * d / (4 * t)) / std::sqrt(4 * pi * t);
}
}  // namespace

const char* to_string(DomainTag t)
{
    switch (t)
    {
    case DomainTag::V1: return "V1";
    case DomainTag::V2: return "V2";
    case DomainTag::Z: return "Z";
    }
    return "?";
}

//---------------------------------------------------------------------------//
// RegularizedFunction
//---------------------------------------------------------------------------//

double RegularizedFunction::clearance(cplx z) const
{
    if (tag != DomainTag::Z)
    {
        double floor = eta - std::sqrt(1 - options.margin) * r;
        return (sigma * z.imag() - floor) / r;
    }
    if (source.is_zero() || !carrier)
        return huge;
    const CarrierSet& L = *carrier;
    if (L.kind == CarrierKind::box1d)
    {
        double d_re = std::max({L.a - z.real(), z.real() - L.b, 0.0});
        double d_im = pole_band_distance(z.imag(), r, L.ell);
        return std::max(d_re / r, d_im / r - options.margin);
    }
    double best = huge;
    for (const auto& p : L.points)
        best = std::min(best, nearest_pole_distance(z - p[0], r));
    return best / r - options.margin;
}

QuadratureResult RegularizedFunction::evaluate(cplx z) const
{
    if (!contains(z))
        throw DomainError(describe() + ": " + fmt(z) + " is outside the domain");
    QuadratureResult out;
    if (source.kind == Ultrahyperfunction::Kind::point_masses)
    {
        for (const auto& m : source.masses)
            out.value += m.c * kernel_1d(z - mass_point(m), r);
        out.value *= scale;
        return out;
    }

    // Contour height h >= eta in the sigma frame. For entire F only the kernel
    // poles matter; otherwise F may be singular just below the tube, so
    // balance the two distances.
    const BoundaryFunction& F = source.F;
    const bool entire = F.family == BoundaryFamily::polynomial;
    double y = sigma * z.imag();
    double h = entire || y >= ell + r ? std::max(eta, y) : std::max(eta, (r + y + ell) / 2);
    double height = sigma * h;
    double d = r - std::abs(y - h);
    if (!entire)
        d = std::min(d, h - ell);
    double step = std::min(r / 8, d / 8);

    int j = F.growth_order;
    double M = F.growth_constant > 0 ? F.growth_constant : 1.0;
    double scale_est = M * std::pow(1 + std::abs(z) + h, j);
    double X = 2 * r;
    while (X < 400 * r && M * std::pow(1 + std::abs(z.real()) + X + h, j) * std::exp(-pi * X / (2 * r))
                              > 1e-17 * scale_est)
        X += r;

    auto contour = make_contour({height}, X, step, {z.real()});
    out = line_integral_1d([&](cplx w) { return F(w) * kernel_1d(z - w, r); }, contour);
    if (out.halving_error > options.tolerance * std::max(1.0, scale_est))
        throw AccuracyError(describe() + ": quadrature at " + fmt(z), out.halving_error);
    out.value *= scale;
    return out;
}

RegularizedFunction RegularizedFunction::negated() const
{
    RegularizedFunction out = *this;
    out.scale = -scale;
    return out;
}

std::string RegularizedFunction::describe() const
{
    std::ostringstream os;
    os << (scale == cplx(1.0) ? "" : scale == cplx(-1.0) ? "-" : "c*") << "U[" << to_string(tag) << ", r=" << r;
    if (tag != DomainTag::Z)
        os << ", ell=" << ell << ", eta=" << eta;
    os << "]";
    return os.str();
}

RegularizedFunction regularize(const Ultrahyperfunction& u, double r, const RegularizeOptions& opts)
{
    if (!(r > 0))
        throw InvalidArgument("regularize: r must be positive");
    if (u.n != 1)
        throw InvalidArgument("regularize: only n = 1 is implemented");
    if (!(opts.margin > 0 && opts.margin < 1))
        throw InvalidArgument("regularize: margin must lie in (0, 1)");
    RegularizedFunction U;
    U.source = u;
    U.r = r;
    U.options = opts;
    if (u.kind == Ultrahyperfunction::Kind::boundary)
    {
        U.ell = u.F.tube.shift;
        U.sigma = u.F.tube.sign;
        if (!(r > U.ell))
            throw InvalidArgument("regularize: r must exceed ell");
        U.tag = U.sigma > 0 ? DomainTag::V1 : DomainTag::V2;
        U.eta = U.ell + opts.eta_offset * r;
        return U;
    }
    U.tag = DomainTag::Z;
    if (!u.masses.empty())
    {
        std::vector<ComplexVec> pts;
        for (const auto& m : u.masses)
            pts.push_back({mass_point(m)});
        U.carrier = CarrierSet::pointcloud(std::move(pts));
    }
    return U;
}

RegularizedFunction regularize_on_carrier(const Ultrahyperfunction& u, const CarrierSet& L, double r,
                                          const RegularizeOptions& opts)
{
    if (u.kind != Ultrahyperfunction::Kind::point_masses)
        throw InvalidArgument("regularize_on_carrier: expects point masses");
    L.validate();
    if (L.dim() != 1 || L.kind == CarrierKind::lightcone4d)
        throw InvalidArgument("regularize_on_carrier: one-variable carrier required");
    if (!(L.max_imag() < r))
        throw InvalidArgument("regularize_on_carrier: carrier must lie in |Im w| < r");
    for (const auto& m : u.masses)
        if (!L.contains(m.w))
            throw InvalidArgument("regularize_on_carrier: mass at " + fmt(mass_point(m)) + " outside the carrier");
    RegularizedFunction U = regularize(u, r, opts);
    U.carrier = L;
    return U;
}

//---------------------------------------------------------------------------//
// Gluing
//---------------------------------------------------------------------------//

double GluePiece::clearance(cplx z) const
{
    double c = huge;
    for (const auto& t : terms)
        c = std::min(c, t.clearance(z));
    return c;
}

cplx GluePiece::operator()(cplx z) const
{
    cplx s{};
    for (const auto& t : terms)
        s += t(z);
    return s;
}

double GluedFunction::clearance(cplx z) const
{
    double c = -huge;
    for (const auto& p : pieces)
        c = std::max(c, p.clearance(z));
    return c;
}

std::size_t GluedFunction::select(cplx z) const
{
    std::size_t best = pieces.size();
    double c = 0;
    for (std::size_t k = 0; k < pieces.size(); ++k)
    {
        double ck = pieces[k].clearance(z);
        if (ck > c)
        {
            c = ck;
            best = k;
        }
    }
    if (best == pieces.size())
        throw DomainError("glued function: no piece covers " + fmt(z));
    return best;
}

cplx GluedFunction::operator()(cplx z) const
{
    return pieces[select(z)](z);
}

GluedFunction glue(std::vector<GluePiece> pieces)
{
    if (pieces.empty())
        throw InvalidArgument("glue: no pieces");
    for (const auto& p : pieces)
        if (p.terms.empty())
            throw InvalidArgument("glue: empty piece '" + p.label + "'");
    return GluedFunction{std::move(pieces)};
}

double ContinuedFunction::clearance(cplx z) const
{
    return std::min(U.clearance(z + I * r), U.clearance(z - I * r));
}

cplx ContinuedFunction::operator()(cplx z) const
{
    cplx s{};
    for (int w : {1, -1})
    {
        cplx p = z + I * (r * w);
        if (!(U.clearance(p) > 0))
            throw DomainError("H: shift omega=" + std::string(w > 0 ? "+1" : "-1") + " takes " + fmt(z)
                              + " to " + fmt(p) + ", outside every piece");
        s += U(p);
    }
    return s;
}

ContinuedFunction reconstruct(GluedFunction U, double r)
{
    if (!(r > 0))
        throw InvalidArgument("reconstruct: r must be positive");
    ContinuedFunction H;
    for (const auto& p : U.pieces)
        H.provenance += (H.provenance.empty() ? "" : " | ") + p.label;
    H.U = std::move(U);
    H.r = r;
    return H;
}

//---------------------------------------------------------------------------//
// Reproducing identity
//---------------------------------------------------------------------------//

namespace
{
ReproducingResult reproduce_with_shift(const TestFunction& phi, double r, double R, double t, double shift)
{
    if (!(r > 0) || !(R > 0) || R > r * (1 + 1e-12))
        throw InvalidArgument("reproducing_check: need 0 < R <= r");
    if (phi.n != 1)
        throw InvalidArgument("reproducing_check: n = 1 only");
    // poles of K_r(x - t + i shift w) sit at Im x = +-(r - shift); keep the step well below that
    double d = std::min(r - std::abs(shift), r + std::abs(shift));
    if (!(d > 0))
        throw InvalidArgument("reproducing_check: kernel shift reaches a pole");
    double step = std::min(0.01, d / 6);
    double c = phi.center_hint().empty() ? 0.0 : phi.center_hint()[0];
    double s = phi.width_hint();
    double X = std::sqrt(R * R + 40 * s * s) + std::abs(t - c) + 2 * r;

    auto f = [&](cplx x) {
        cplx v{};
        for (int w : {1, -1})
            v += kernel_1d(x - t + I * (shift * w), r) * phi(x - I * (R * w));
        return v;
    };
    auto q = line_integral_1d(f, make_contour({0.0}, X, step, {c}));
    ReproducingResult out;
    out.value = q.value;
    out.target = phi(cplx(t));
    out.residual = std::abs(out.value - out.target);
    out.quadrature_error = q.error();
    return out;
}
}  // namespace

ReproducingResult reproducing_check(const TestFunction& phi, double r, double R, double t)
{
    auto out = reproduce_with_shift(phi, r, R, t, r - R);
    if (out.quadrature_error > 1e-9 * std::max(1.0, std::abs(out.target)))
        throw AccuracyError("reproducing_check", out.quadrature_error);
    return out;
}

ReproducingResult reproducing_check_unit_shift(const TestFunction& phi, double r, double R, double t)
{
    return reproduce_with_shift(phi, r, R, t, 1 - R);
}

//---------------------------------------------------------------------------//
// Overlap and boundary values
//---------------------------------------------------------------------------//

std::vector<cplx> overlap_grid(const GluePiece& a, const GluePiece& b, double re_extent, int re_count,
                               int im_count)
{
    // scan heights to find the common band at Re z = 0, then fill it
    double lo = huge, hi = -huge;
    for (int k = -4000; k <= 4000; ++k)
    {
        double y = k * 0.005;
        if (a.clearance(cplx(0, y)) > 0 && b.clearance(cplx(0, y)) > 0)
        {
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        }
    }
    std::vector<cplx> grid;
    if (lo > hi)
        return grid;
    double pad = 0.05 * (hi - lo);
    for (int i = 0; i < re_count; ++i)
    {
        double x = re_count == 1 ? 0.0 : -re_extent + 2 * re_extent * i / (re_count - 1);
        for (int k = 0; k < im_count; ++k)
        {
            double y = im_count == 1 ? (lo + hi) / 2 : lo + pad + (hi - lo - 2 * pad) * k / (im_count - 1);
            grid.emplace_back(x, y);
        }
    }
    return grid;
}

OverlapReport overlap_report(const GluePiece& a, const GluePiece& b, std::span<const cplx> grid, double tolerance)
{
    if (!(tolerance > 0))
        throw InvalidArgument("overlap_report: tolerance must be positive");
    OverlapReport rep;
    rep.tolerance = tolerance;
    for (cplx z : grid)
        if (a.clearance(z) > 0 && b.clearance(z) > 0)
            rep.points.push_back(z);
    if (rep.points.empty())
        throw InvalidArgument("overlap_report: empty overlap");
    rep.deviation = parallel_map<double>(rep.points.size(), [&](std::size_t k) {
        return std::abs(a(rep.points[k]) - b(rep.points[k]));
    });
    for (std::size_t k = 0; k < rep.points.size(); ++k)
        if (rep.deviation[k] >= rep.max_deviation)
        {
            rep.max_deviation = rep.deviation[k];
            rep.worst_point = rep.points[k];
        }
    rep.pass = rep.max_deviation < tolerance;
    return rep;
}

BoundaryMatchReport boundary_match(const Evaluator& H, const Ultrahyperfunction& u,
                                   std::span<const TestFunction> phis, double height, double tolerance)
{
    if (phis.empty())
        throw InvalidArgument("boundary_match: no test functions");
    // one contour wide and fine enough for every phi
    double X = 0, step = 0.01;
    RealVec center{0.0};
    for (const auto& phi : phis)
    {
        auto c = test_contour(phi, {height});
        double cx = c.center.empty() ? 0.0 : c.center[0];
        X = std::max(X, c.half_width + std::abs(cx));
        step = std::min(step, c.step);
    }
    auto contour = make_contour({height}, X, step, center);
    std::size_t count = 2 * contour.intervals_per_side() + 1;
    double x0 = -contour.half_width;
    ComplexVec hv = parallel_map<cplx>(count, [&](std::size_t k) { return H(cplx(x0 + k * step, height)); });

    BoundaryMatchReport rep;
    rep.height = height;
    rep.tolerance = tolerance;
    for (const auto& phi : phis)
    {
        cplx s{};
        for (std::size_t k = 0; k < count; ++k)
        {
            double w = (k == 0 || k + 1 == count) ? 0.5 : 1.0;
            s += w * hv[k] * phi(cplx(x0 + k * step, height));
        }
        BoundaryMatchRow row;
        row.label = phi.label;
        row.pairing_h = s * step;
        row.pairing_u = apply(u, phi).value;
        row.deviation = std::abs(row.pairing_h - row.pairing_u);
        rep.max_deviation = std::max(rep.max_deviation, row.deviation);
        rep.rows.push_back(row);
    }
    rep.pass = rep.max_deviation < tolerance;
    return rep;
}

BoundaryMatchReport boundary_match(const ContinuedFunction& H, const Ultrahyperfunction& u,
                                   std::span<const TestFunction> phis, double tolerance)
{
    if (u.kind != Ultrahyperfunction::Kind::boundary)
        throw InvalidArgument("boundary_match: expects a boundary-value functional");
    double height = u.eta.at(0);
    return boundary_match([&H](cplx z) { return H(z); }, u, phis, height, tolerance);
}

std::vector<TestFunction> default_match_family()
{
    std::vector<TestFunction> out;
    for (int k = 0; k < 10; ++k)
    {
        double c = -1.5 + 3.0 * k / 9;
        double s = 0.7 + 0.8 * ((k * 7) % 10) / 9;
        out.push_back(TestFunction::gaussian(cplx(c), s));
    }
    return out;
}

double cauchy_riemann_residual(const Evaluator& f, cplx z, double h)
{
    cplx fx = (f(z + h) - f(z - h)) / (2 * h);
    cplx fy = (f(z + I * h) - f(z - I * h)) / (2 * h);
    return std::abs(fy - I * fx) / (1 + std::abs(fx));
}

//---------------------------------------------------------------------------//
// Local flow
//---------------------------------------------------------------------------//

std::vector<cplx> ProbePath::vertices() const
{
    double s = sign * 2 * ell;
    return {cplx(-X), cplx(a - 2 * ell), cplx(a, s), cplx(b, s), cplx(b + 2 * ell), cplx(X)};
}

std::vector<PathNode> ProbePath::nodes(double panel, int order) const
{
    auto v = vertices();
    return discretize_polyline(v, panel, order);
}

double ProbePath::carrier_margin() const
{
    auto v = vertices();
    double best = huge;
    for (std::size_t k = 0; k + 1 < v.size(); ++k)
        for (int i = 0; i <= 400; ++i)
        {
            cplx p = v[k] + (v[k + 1] - v[k]) * (i / 400.0);
            double dx = std::max({a - p.real(), p.real() - b, 0.0});
            double dy = std::max(std::abs(p.imag()) - ell, 0.0);
            best = std::min(best, std::hypot(dx, dy));
        }
    return best;
}

ProbePath probe_path(const CarrierSet& L, int sign, double X)
{
    if (L.kind != CarrierKind::box1d)
        throw InvalidArgument("probe_path: box carrier required");
    if (sign != 1 && sign != -1)
        throw InvalidArgument("probe_path: sign must be +1 or -1");
    if (!(X > L.b + 2 * L.ell) || !(-X < L.a - 2 * L.ell))
        throw InvalidArgument("probe_path: truncation inside the path corners");
    return ProbePath{L.a, L.b, L.ell, sign, X};
}

LocalContinuation local_continue(const BoundaryFunction& F1, const BoundaryFunction& F2,
                                 const std::vector<PointMass>& difference, const CarrierSet& L, double r,
                                 const RegularizeOptions& opts)
{
    if (L.kind != CarrierKind::box1d)
        throw InvalidArgument("local_continue: box carrier required");
    if (F1.tube.sign != 1 || F2.tube.sign != -1)
        throw InvalidArgument("local_continue: F1 must live on the upper tube, F2 on the lower");
    LocalContinuation out;
    out.carrier = L;
    out.r = r;
    out.lwedge_threshold = L.ell / (sqrt2 - 1);
    out.U1 = regularize(Ultrahyperfunction::from_boundary(F1), r, opts);
    out.U2 = regularize(Ultrahyperfunction::from_boundary(F2), r, opts);
    out.U12 = regularize_on_carrier(Ultrahyperfunction::from_masses(difference), L, r, opts);

    auto H1 = glue({GluePiece{{out.U1}, "U1"}, GluePiece{{out.U2, out.U12}, "U2+U12"}});
    auto H2 = glue({GluePiece{{out.U2}, "U2"}, GluePiece{{out.U1, out.U12.negated()}, "U1-U12"}});
    out.H1 = reconstruct(std::move(H1), r);
    out.H2 = reconstruct(std::move(H2), r);
    return out;
}

LadderSpec default_equality_ladder()
{
    return LadderSpec::geometric(0.5, 0.5, 10, 2);
}

ProbeReport probe_equality(const ContinuedFunction& H1, const ContinuedFunction& H2, const CarrierSet& L,
                           std::span<const double> xis, const Evaluator& oracle, const LadderSpec& ladder,
                           double tolerance)
{
    if (L.kind != CarrierKind::box1d)
        throw InvalidArgument("probe_equality: box carrier required");
    ladder.validate();
    double lo = L.a - 2 * L.ell, hi = L.b + 2 * L.ell;
    double far = 0;
    for (double xi : xis)
    {
        if (!(xi < lo || xi > hi))
            throw InvalidArgument("probe_equality: xi = " + std::to_string(xi) + " lies in the excluded band ["
                                  + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        far = std::max(far, std::abs(xi));
    }
    double X = std::max({far, std::abs(lo), std::abs(hi)}) + 9;

    auto nodes1 = probe_path(L, 1, X).nodes();
    auto nodes2 = probe_path(L, -1, X).nodes();
    auto v1 = parallel_map<cplx>(nodes1.size(), [&](std::size_t k) { return H1(nodes1[k].z); });
    auto v2 = parallel_map<cplx>(nodes2.size(), [&](std::size_t k) { return H2(nodes2[k].z); });

    ProbeReport rep;
    rep.ladder = ladder;
    rep.tolerance = tolerance;
    rep.pass = true;
    for (double xi : xis)
    {
        ComplexVec s1, s2;
        for (double t : ladder.t)
        {
            cplx a{}, b{};
            for (std::size_t k = 0; k < nodes1.size(); ++k)
                a += nodes1[k].weight * v1[k] * heat(xi, t, nodes1[k].z);
            for (std::size_t k = 0; k < nodes2.size(); ++k)
                b += nodes2[k].weight * v2[k] * heat(xi, t, nodes2[k].z);
            s1.push_back(a);
            s2.push_back(b);
        }
        auto l1 = ladder_limit(s1, ladder);
        auto l2 = ladder_limit(s2, ladder);
        ProbeRow row;
        row.xi = xi;
        row.h1 = l1.limit;
        row.h2 = l2.limit;
        row.confidence1 = l1.confidence;
        row.confidence2 = l2.confidence;
        row.direct1 = H1(cplx(xi));
        row.direct2 = H2(cplx(xi));
        row.gap = std::abs(row.h1 - row.h2);
        row.oracle_gap = std::max(std::abs(row.h1 - row.direct1), std::abs(row.h2 - row.direct2));
        if (oracle)
        {
            row.oracle = oracle(cplx(xi));
            row.oracle_gap = std::max({row.oracle_gap, std::abs(row.h1 - *row.oracle), std::abs(row.h2 - *row.oracle)});
        }
        row.pass = row.gap < tolerance && row.oracle_gap < tolerance;
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

//---------------------------------------------------------------------------//
// Delta representation
//---------------------------------------------------------------------------//

LadderSpec default_epsilon_ladder()
{
    return LadderSpec::geometric(0.2, 0.5, 8, 3);
}

DeltaReport delta_representation_check(const TestFunction& phi, const LadderSpec& eps, double tolerance)
{
    if (phi.n != 1)
        throw InvalidArgument("delta_representation_check: n = 1 only");
    eps.validate();
    DeltaReport rep;
    rep.ladder = eps;
    double c = phi.center_hint().empty() ? 0.0 : phi.center_hint()[0];
    double s = phi.width_hint();
    // the pairing is concentrated near 0 (kernel) and near c (phi)
    double X = std::abs(c) + 12 * std::max(1.0, s) + 40;
    for (double e : eps.t)
    {
        double step = std::min(0.01, e / 6);
        auto contour = make_contour({0.0}, X, step, {0.0});
        auto fs = [&](cplx x) {
            return 0.25 * (sech(pi * (x + I * e - I) / 2.0) + sech(pi * (x - I * e + I) / 2.0)) * phi(x);
        };
        auto fc = [&](cplx x) {
            return 0.25 * I * (cosech(pi * (x + I * e) / 2.0) - cosech(pi * (x - I * e) / 2.0)) * phi(x);
        };
        cplx a = line_integral_1d(fs, contour).value;
        cplx b = line_integral_1d(fc, contour).value;
        rep.sech_values.push_back(a);
        rep.cosech_values.push_back(b);
        rep.max_form_gap = std::max(rep.max_form_gap, std::abs(a - b));
    }
    rep.limit = ladder_limit(rep.sech_values, eps);
    rep.target = phi(cplx(0.0));
    rep.residual = std::abs(rep.limit.limit - rep.target);
    rep.pass = rep.residual < tolerance && rep.max_form_gap < 1e-8;
    return rep;
}

//---------------------------------------------------------------------------//
// Drivers
//---------------------------------------------------------------------------//

std::vector<cplx> reconstruction_grid(double ell)
{
    std::vector<cplx> g;
    for (int i = 0; i < 10; ++i)
    {
        double x = -2.0 + 4.0 * i / 9;
        for (double y : {ell + 0.3, ell + 1.2})
        {
            g.emplace_back(x, y);
            g.emplace_back(x, -y);
        }
        g.emplace_back(x, (i % 2 ? 0.4 : -0.4) * ell);
    }
    return g;
}

GlobalRun global_eow(const BoundaryFunction& F1, const BoundaryFunction& F2, const Evaluator& expected,
                     const GlobalOptions& opts)
{
    if (F1.tube.sign != 1 || F2.tube.sign != -1)
        throw InvalidArgument("global_eow: F1 must live on the upper tube, F2 on the lower");
    GlobalRun run;
    run.r = opts.r;
    run.ell = std::max(F1.tube.shift, F2.tube.shift);
    auto u1 = Ultrahyperfunction::from_boundary(F1);
    auto u2 = Ultrahyperfunction::from_boundary(F2);
    auto U1 = regularize(u1, opts.r, opts.regularize);
    auto U2 = regularize(u2, opts.r, opts.regularize);
    GluePiece p1{{U1}, "U1"}, p2{{U2}, "U2"};

    run.overlap = overlap_report(p1, p2, overlap_grid(p1, p2), opts.overlap_tolerance);
    auto H = reconstruct(glue({p1, p2}), opts.r);

    auto grid = reconstruction_grid(run.ell);
    if (expected)
    {
        run.reconstruction = parallel_map<PointCheck>(grid.size(), [&](std::size_t k) {
            PointCheck pc;
            pc.z = grid[k];
            pc.value = H(grid[k]);
            pc.expected = expected(grid[k]);
            pc.deviation = std::abs(pc.value - pc.expected);
            return pc;
        });
        for (const auto& pc : run.reconstruction)
            run.reconstruction_max = std::max(run.reconstruction_max, pc.deviation);
        run.reconstruction_pass = run.reconstruction_max < opts.reconstruct_tolerance;
    }

    auto phis = default_match_family();
    run.match_upper = boundary_match(H, u1, phis, opts.match_tolerance);
    run.match_lower = boundary_match(H, u2, phis, opts.match_tolerance);

    for (std::size_t k = 0; k < grid.size(); k += 5)
        run.cauchy_riemann_max
            = std::max(run.cauchy_riemann_max, cauchy_riemann_residual([&](cplx z) { return H(z); }, grid[k]));

    run.pass = run.overlap.pass && run.reconstruction_pass && run.match_upper.pass && run.match_lower.pass
               && run.cauchy_riemann_max < 1e-4;
    return run;
}

LocalRun local_eow(const std::vector<PointMass>& f, const CarrierSet& L, double r, std::span<const double> xis,
                   const LadderSpec& ladder, double tolerance)
{
    auto pair = cauchy_hilbert(f, L.ell);
    LocalRun run;
    run.continuation = local_continue(pair.upper, pair.lower, f, L, r);
    Evaluator oracle;
    if (!f.empty())
        oracle = [&f](cplx z) { return cauchy_hilbert_value(f, z); };
    else
        oracle = [](cplx) { return cplx(0.0); };
    run.probe = probe_equality(run.continuation.H1, run.continuation.H2, L, xis, oracle, ladder, tolerance);

    const auto& H1 = run.continuation.H1;
    for (double xi : xis)
        run.cauchy_riemann_max
            = std::max(run.cauchy_riemann_max, cauchy_riemann_residual([&](cplx z) { return H1(z); }, cplx(xi, 0.2)));
    run.pass = run.probe.pass && run.cauchy_riemann_max < 1e-4;
    return run;
}

}  // namespace eow
