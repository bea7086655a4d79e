#include "eow/ultrahyperfunctions.hpp"

#include <sstream>

namespace eow
{
//---------------------------------------------------------------------------//
const char* to_string(TestFamily f)
{
    switch (f)
    {
    case TestFamily::gaussian: return "gaussian";
    case TestFamily::poly_gaussian: return "poly_gaussian";
    case TestFamily::heat_probe: return "heat_probe";
    default: return "custom";
    }
}

TestFunction TestFunction::gaussian(ComplexVec center, double width)
{
    if (center.empty())
        throw InvalidArgument("gaussian: dimension must be positive");
    if (!(width > 0))
        throw InvalidArgument("gaussian: width must be positive");
    TestFunction phi;
    phi.n = static_cast<int>(center.size());
    phi.family = TestFamily::gaussian;
    phi.center = center;
    phi.width = width;
    std::ostringstream os;
    os << "gaussian(c=" << center[0] << (center.size() > 1 ? ",..." : "") << ", s=" << width << ")";
    phi.label = os.str();
    const double inv = 1.0 / (width * width);
    phi.fn = [center, inv](std::span<const cplx> z) {
        cplx s = 0;
        for (std::size_t j = 0; j < z.size(); ++j)
            s += (z[j] - center[j]) * (z[j] - center[j]);
        return std::exp(-s * inv);
    };
    return phi;
}

TestFunction TestFunction::gaussian(cplx center, double width)
{
    return gaussian(ComplexVec{center}, width);
}

TestFunction TestFunction::poly_gaussian(ComplexVec coeffs, cplx center, double width)
{
    if (coeffs.empty())
        throw InvalidArgument("poly_gaussian: need at least one coefficient");
    TestFunction phi = gaussian(center, width);
    phi.family = TestFamily::poly_gaussian;
    phi.coeffs = coeffs;
    phi.label = "poly_" + phi.label;
    auto g = phi.fn;
    phi.fn = [g, coeffs, center](std::span<const cplx> z) {
        cplx p = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            p = p * (z[0] - center) + *it;
        return p * g(z);
    };
    return phi;
}

TestFunction TestFunction::heat_probe(RealVec xi, double t)
{
    if (xi.empty())
        throw InvalidArgument("heat_probe: dimension must be positive");
    if (!(t > 0))
        throw InvalidArgument("heat_probe: t must be positive");
    TestFunction phi;
    phi.n = static_cast<int>(xi.size());
    phi.family = TestFamily::heat_probe;
    phi.center = make_point(xi, {});
    phi.width = std::sqrt(4 * t);
    phi.t = t;
    std::ostringstream os;
    os << "heat(xi=" << xi[0] << (xi.size() > 1 ? ",..." : "") << ", t=" << t << ")";
    phi.label = os.str();
    const double norm = std::pow(4 * pi * t, -0.5 * static_cast<double>(xi.size()));
    phi.fn = [xi, t, norm](std::span<const cplx> z) {
        cplx s = 0;
        for (std::size_t j = 0; j < z.size(); ++j)
            s += (xi[j] - z[j]) * (xi[j] - z[j]);
        return norm * std::exp(-s / (4 * t));
    };
    return phi;
}

TestFunction TestFunction::custom(int n, ComplexFn fn, RealVec center, double width, std::string label)
{
    TestFunction phi;
    phi.n = n;
    phi.family = TestFamily::custom;
    phi.center = make_point(center, {});
    phi.width = width;
    phi.label = std::move(label);
    phi.fn = std::move(fn);
    return phi;
}

RealVec TestFunction::center_hint() const
{
    return real_part(center);
}

TestFunction heat_probe(RealVec xi, double t)
{
    return TestFunction::heat_probe(std::move(xi), t);
}

double strip_norm(const TestFunction& phi, double k, int j)
{
    if (!(k >= 0) || j < 0)
        throw InvalidArgument("strip_norm: need k >= 0 and j >= 0");
    const std::size_t n = static_cast<std::size_t>(phi.n);
    RealVec c = phi.center_hint();
    const double X = 12 * std::max(1.0, phi.width) + k;
    const int re_pts = n == 1 ? 480 : 40;
    const int im_pts = n == 1 ? 20 : 2;
    double sup = 0;
    std::vector<int> idx(2 * n, 0);
    ComplexVec z(n);
    while (true)
    {
        double zmax = 0;
        for (std::size_t d = 0; d < n; ++d)
        {
            z[d] = {c[d] - X + 2 * X * idx[d] / re_pts, -k + 2 * k * idx[n + d] / im_pts};
            zmax = std::max(zmax, std::abs(z[d]));
        }
        double v = std::max(1.0, std::pow(zmax, j)) * std::abs(phi(z));
        sup = std::max(sup, v);
        std::size_t d = 0;
        while (d < 2 * n && ++idx[d] > (d < n ? re_pts : im_pts))
            idx[d++] = 0;
        if (d == 2 * n)
            break;
    }
    return sup;
}

//---------------------------------------------------------------------------//
const char* to_string(BoundaryFamily f)
{
    switch (f)
    {
    case BoundaryFamily::polynomial: return "polynomial";
    case BoundaryFamily::rational: return "rational";
    case BoundaryFamily::cauchy_hilbert: return "cauchy_hilbert";
    default: return "custom";
    }
}

namespace
{
cplx horner(const ComplexVec& a, cplx z)
{
    cplx p = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it)
        p = p * z + *it;
    return p;
}

// Compact sub-tube heights start this far inside the tube.
constexpr double sub_tube_gap = 0.05;
}  // namespace

BoundaryFunction BoundaryFunction::polynomial(ComplexVec coeffs, const Cone& tube)
{
    if (tube.n != 1)
        throw InvalidArgument("polynomial boundary function: only n = 1");
    if (coeffs.empty())
        coeffs = {0.0};
    BoundaryFunction F;
    F.n = 1;
    F.tube = tube;
    F.family = BoundaryFamily::polynomial;
    F.coeffs = coeffs;
    int deg = 0;
    double M = 0;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
    {
        if (coeffs[k] != cplx(0))
            deg = static_cast<int>(k);
        M += std::abs(coeffs[k]);
    }
    F.growth_order = deg;
    F.growth_constant = std::max(M, 1e-300);
    std::ostringstream os;
    os << "poly(";
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        os << (k ? "," : "") << coeffs[k].real();
    os << ")";
    F.label = os.str();
    F.fn = [coeffs](std::span<const cplx> z) { return horner(coeffs, z[0]); };
    F.certify();
    return F;
}

BoundaryFunction BoundaryFunction::rational(ComplexVec poles, ComplexVec residues, const Cone& tube,
                                            ComplexVec poly)
{
    if (tube.n != 1)
        throw InvalidArgument("rational boundary function: only n = 1");
    require_same_dim(poles.size(), residues.size(), "rational boundary function");
    for (const auto& p : poles)
    {
        double y = p.imag();
        if (tube.contains(std::span<const double>(&y, 1)))
            throw InvalidArgument("rational boundary function: pole inside the tube");
    }
    BoundaryFunction F;
    F.n = 1;
    F.tube = tube;
    F.family = BoundaryFamily::rational;
    F.poles = poles;
    F.residues = residues;
    F.coeffs = poly;
    F.label = "rational";
    F.fn = [poles, residues, poly](std::span<const cplx> z) {
        cplx s = horner(poly, z[0]);
        for (std::size_t k = 0; k < poles.size(); ++k)
        {
            cplx d = z[0] - poles[k];
            if (std::abs(d) == 0)
                throw PoleError("rational boundary function: evaluation at a pole");
            s += residues[k] / d;
        }
        return s;
    };
    int deg = 0;
    for (std::size_t k = 0; k < poly.size(); ++k)
        if (poly[k] != cplx(0))
            deg = static_cast<int>(k);
    F.growth_order = deg;
    F.growth_constant = 2 * F.sampled_growth(deg);
    F.certify();
    return F;
}

BoundaryFunction BoundaryFunction::custom(const Cone& tube, ComplexFn fn, int j, double M, std::string label)
{
    if (j < 0 || !(M > 0))
        throw InvalidArgument("custom boundary function: need j >= 0 and M > 0");
    BoundaryFunction F;
    F.n = tube.n;
    F.tube = tube;
    F.family = BoundaryFamily::custom;
    F.growth_order = j;
    F.growth_constant = M;
    F.label = std::move(label);
    F.fn = std::move(fn);
    F.certify();
    return F;
}

double BoundaryFunction::sampled_growth(int j) const
{
    const auto dim = static_cast<std::size_t>(n);
    RealVec e = tube.unit_axis();
    double worst = 0;
    ComplexVec z(dim);
    for (int s = 0; s <= 30; ++s)
    {
        double height = tube.shift + sub_tube_gap + 0.1 * s;
        for (int k = -120; k <= 120; ++k)
        {
            double x = 0.25 * k;
            for (std::size_t d = 0; d < dim; ++d)
                z[d] = {d == 0 ? x : 0.3 * x * std::cos(1.0 + d), tube.sign * height * e[d]};
            double v = std::abs(fn(z)) * std::pow(1 + norm2(z), -j);
            worst = std::max(worst, v);
        }
    }
    return worst;
}

void BoundaryFunction::certify() const
{
    double g = sampled_growth(growth_order);
    if (!(g <= growth_constant * (1 + 1e-12)))
    {
        std::ostringstream os;
        os << "boundary function " << label << ": growth certificate (j=" << growth_order
           << ", M=" << growth_constant << ") violated, sampled " << g;
        throw InvalidArgument(os.str());
    }
}

cplx cauchy_hilbert_value(const std::vector<PointMass>& f, cplx z)
{
    cplx s = 0;
    for (const auto& m : f)
    {
        cplx d = m.w[0] - z;
        if (std::abs(d) < 1e-300)
            throw PoleError("cauchy_hilbert: evaluation at a mass point");
        s += m.c / d;
    }
    return s / (2 * pi * I);
}

CauchyHilbertPair cauchy_hilbert(const std::vector<PointMass>& f, double ell)
{
    if (!(ell > 0))
        throw InvalidArgument("cauchy_hilbert: ell must be positive");
    double bound = 0;
    for (const auto& m : f)
    {
        if (m.w.size() != 1)
            throw InvalidArgument("cauchy_hilbert: only n = 1");
        if (!(std::abs(m.w[0].imag()) < ell))
            throw InvalidArgument("cauchy_hilbert: masses must satisfy |Im w| < ell");
        bound += std::abs(m.c) / (ell + sub_tube_gap - std::abs(m.w[0].imag()));
    }
    bound /= 2 * pi;
    CauchyHilbertPair out;
    for (int sgn : {1, -1})
    {
        BoundaryFunction F;
        F.n = 1;
        F.tube = sgn > 0 ? Cone::forward(1, ell) : Cone::forward(1, ell).negated();
        F.family = BoundaryFamily::cauchy_hilbert;
        F.masses = f;
        F.growth_order = 0;
        F.growth_constant = std::max(bound, 1e-300);
        F.label = sgn > 0 ? "chilbert_upper" : "chilbert_lower";
        F.fn = [f](std::span<const cplx> z) { return cauchy_hilbert_value(f, z[0]); };
        F.certify();
        (sgn > 0 ? out.upper : out.lower) = std::move(F);
    }
    return out;
}

//---------------------------------------------------------------------------//
Ultrahyperfunction Ultrahyperfunction::from_boundary(BoundaryFunction F, RealVec eta)
{
    Ultrahyperfunction u;
    u.kind = Kind::boundary;
    u.n = F.n;
    if (eta.empty())
    {
        RealVec e = F.tube.unit_axis();
        eta.resize(e.size());
        for (std::size_t d = 0; d < e.size(); ++d)
            eta[d] = F.tube.sign * (F.tube.shift + 1) * e[d];
    }
    require_same_dim(eta.size(), static_cast<std::size_t>(F.n), "ultrahyperfunction height");
    if (!F.tube.contains(eta))
        throw InvalidArgument("ultrahyperfunction: contour height outside the tube cone");
    u.F = std::move(F);
    u.eta = std::move(eta);
    return u;
}

Ultrahyperfunction Ultrahyperfunction::from_masses(std::vector<PointMass> masses, int n)
{
    for (const auto& m : masses)
        require_same_dim(m.w.size(), static_cast<std::size_t>(n), "point mass");
    Ultrahyperfunction u;
    u.kind = Kind::point_masses;
    u.n = n;
    u.masses = std::move(masses);
    return u;
}

Ultrahyperfunction Ultrahyperfunction::zero(int n)
{
    return from_masses({}, n);
}

ContourSpec test_contour(const TestFunction& phi, RealVec heights, const ContourOverrides& o)
{
    double X = o.half_width > 0 ? o.half_width : 12 * std::max(1.0, phi.width);
    double h = o.step > 0 ? o.step : std::min(0.01, phi.width / 6);
    return make_contour(std::move(heights), X, h, phi.center_hint());
}

QuadratureResult apply(const Ultrahyperfunction& u, const TestFunction& phi, const ContourOverrides& o)
{
    require_same_dim(static_cast<std::size_t>(phi.n), static_cast<std::size_t>(u.n), "apply");
    if (u.kind == Ultrahyperfunction::Kind::point_masses)
    {
        QuadratureResult r;
        for (const auto& m : u.masses)
            r.value += m.c * phi(m.w);
        return r;
    }
    if (!u.F.tube.contains(u.eta))
        throw InvalidArgument("apply: contour height outside the tube cone");
    auto contour = test_contour(phi, u.eta, o);
    const auto& F = u.F;
    return line_integral([&](std::span<const cplx> z) { return F(z) * phi(z); }, contour);
}

std::vector<cplx> rectangle_path(double x0, double x1, double y0, double y1)
{
    if (!(x0 < x1) || !(y0 < y1))
        throw InvalidArgument("rectangle_path: degenerate rectangle");
    return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}, {x0, y0}};
}

cplx cauchy_hilbert_round_trip(const std::vector<PointMass>& f, const TestFunction& phi, double a, double b,
                               double ell, double margin)
{
    auto path = rectangle_path(a - margin, b + margin, -ell - margin, ell + margin);
    auto nodes = discretize_polyline(path, 0.05, 16);
    return -integrate_path([&](cplx z) { return cauchy_hilbert_value(f, z) * phi(z); }, nodes);
}

//---------------------------------------------------------------------------//
LadderSpec default_probe_ladder()
{
    return LadderSpec::geometric(0.5, 0.5, 12, 2);
}

std::string decay_verdict(std::span<const double> m)
{
    if (m.size() < 4)
        return "inconclusive";
    bool decays = true, grows = true;
    for (std::size_t k = m.size() - 3; k < m.size(); ++k)
    {
        decays = decays && (m[k] == 0 || m[k] * 10 <= m[k - 1]);
        grows = grows && m[k] > 0 && m[k] >= 10 * m[k - 1];
    }
    if (decays)
        return "decays";
    if (grows)
        return "grows";
    return "inconclusive";
}

CarrierProbeReport carrier_probe(const Ultrahyperfunction& u, const CarrierSet& L, std::span<const double> xi,
                                 const LadderSpec& ladder, int growth_order, std::size_t carrier_samples)
{
    ladder.validate();
    require_same_dim(xi.size(), static_cast<std::size_t>(u.n), "carrier_probe");
    require_same_dim(xi.size(), static_cast<std::size_t>(L.dim()), "carrier_probe carrier");

    auto pts = L.kind == CarrierKind::pointcloud ? L.points : L.sample(carrier_samples, L.seed);
    CarrierProbeReport rep;
    rep.exponent = -std::numeric_limits<double>::infinity();
    RealVec expo, weight;
    for (const auto& w : pts)
    {
        double im2 = 0, re2 = 0;
        for (std::size_t d = 0; d < xi.size(); ++d)
        {
            im2 += std::norm(w[d].imag());
            re2 += (xi[d] - w[d].real()) * (xi[d] - w[d].real());
        }
        expo.push_back(im2 - re2);
        weight.push_back(std::pow(1 + norm2(w), growth_order));
        rep.exponent = std::max(rep.exponent, im2 - re2);
    }
    if (L.kind == CarrierKind::box1d)
    {
        double d = std::max({0.0, L.a - xi[0], xi[0] - L.b});
        rep.exponent = L.ell * L.ell - d * d;
    }

    RealVec x(xi.begin(), xi.end());
    for (double t : ladder.t)
    {
        rep.t.push_back(t);
        rep.magnitude.push_back(std::abs(apply(u, heat_probe(x, t)).value));
        double b = 0;
        for (std::size_t k = 0; k < expo.size(); ++k)
            b = std::max(b, weight[k] * std::exp(expo[k] / (4 * t)));
        rep.bound.push_back(b * std::pow(4 * pi * t, -0.5 * static_cast<double>(xi.size())));
    }
    rep.verdict = decay_verdict(rep.magnitude);
    return rep;
}

}  // namespace eow
