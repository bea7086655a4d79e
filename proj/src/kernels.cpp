#include "eow/kernels.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "eow/quadrature.hpp"

namespace eow
{
//---------------------------------------------------------------------------//
cplx sech(cplx w)
{
    if (w.real() < 0)
        return sech(-w);
    cplx e = std::exp(-w);
    cplx den = 1.0 + e * e;
    if (std::abs(den) < 1e-15)
        throw PoleError("sech: pole");
    return 2.0 * e / den;
}

cplx cosech(cplx w)
{
    if (w.real() < 0)
        return -cosech(-w);
    cplx e = std::exp(-w);
    cplx den = 1.0 - e * e;
    if (std::abs(den) < 1e-15)
        throw PoleError("cosech: pole");
    return 2.0 * e / den;
}

//---------------------------------------------------------------------------//
namespace
{
double log_sphere_laplace_radial(int n, double rho)
{
    switch (n)
    {
    case 1: return rho + std::log1p(std::exp(-2 * rho));
    case 2:
        if (rho < 600)
            return std::log(2 * pi * std::cyl_bessel_i(0.0, rho));
        return std::log(2 * pi) + rho - 0.5 * std::log(2 * pi * rho);
    case 3:
        if (rho < 1e-8)
            return std::log(4 * pi);
        return std::log(2 * pi) + rho + std::log1p(-std::exp(-2 * rho)) - std::log(rho);
    default: throw InvalidArgument("sphere_laplace: supported dimensions are 1, 2, 3");
    }
}

// I at radius rho by a sphere rule aligned with xi. Exponentially accurate for
// the radii used by the Fourier tables.
double sphere_laplace_quadrature(int n, double rho)
{
    if (n == 2)
    {
        static const int m = 512;
        double s = 0;
        for (int k = 0; k < m; ++k)
            s += std::exp(-rho * std::cos(2 * pi * k / m));
        return s * 2 * pi / m;
    }
    static const GaussRule gl = gauss_legendre(96);
    double s = 0;
    for (std::size_t k = 0; k < gl.nodes.size(); ++k)
        s += gl.weights[k] * std::exp(-rho * gl.nodes[k]);
    return 2 * pi * s;
}

// 1/I(h sqrt(m)) for m = 0..mmax, shared between calls with the same step.
const RealVec& inverse_laplace_table(int n, double h, std::size_t mmax)
{
    static std::mutex mutex;
    static std::map<std::pair<int, double>, RealVec> cache;
    std::lock_guard<std::mutex> lock(mutex);
    RealVec& table = cache[{n, h}];
    for (std::size_t m = table.size(); m <= mmax; ++m)
        table.push_back(1.0 / sphere_laplace_quadrature(n, h * std::sqrt(static_cast<double>(m))));
    return table;
}

// Bound on (2pi)^{-n} times the integral of e^{a|xi|}/I(xi) over |xi| > X.
double fourier_tail(int n, double a, double X)
{
    double log_g = std::log(sphere_measure(n)) + (n - 1) * std::log(std::max(X, 1e-300)) + a * X
                   - log_sphere_laplace_radial(n, X) - n * std::log(2 * pi);
    double rate = std::max((1 - a) - (n - 1) / std::max(X, 1.0), 0.5 * (1 - a));
    return std::exp(log_g) / rate;
}

KernelValue fourier_kernel(std::span<const cplx> w, const KernelSpec& spec)
{
    const int n = spec.n;
    const double a = norm2(imag_part(w));
    if (!(a < 1))
        throw AccuracyError("kernel: Fourier integral does not converge for |Im z/r| >= 1", a);
    const double X = spec.cutoff > 0 ? spec.cutoff : kernel_cutoff(n, a, spec.tolerance);
    const double tail = fourier_tail(n, a, X);
    const double h = spec.resolved_step();
    const auto N = static_cast<long>(std::ceil(X / h));

    cplx fine{}, coarse{};
    if (n == 1)
    {
        for (long k = -N; k <= N; ++k)
        {
            double xi = h * static_cast<double>(k);
            double ax = std::abs(xi);
            double inv = std::exp(-ax) / (1 + std::exp(-2 * ax));
            cplx v = std::exp(I * w[0] * xi) * inv;
            fine += v;
            if (k % 2 == 0)
                coarse += v;
        }
    }
    else
    {
        const std::size_t span = 2 * static_cast<std::size_t>(N) + 1;
        std::vector<ComplexVec> phase(n, ComplexVec(span));
        for (int j = 0; j < n; ++j)
            for (long k = -N; k <= N; ++k)
                phase[j][static_cast<std::size_t>(k + N)] = std::exp(I * w[j] * (h * static_cast<double>(k)));
        const RealVec& inv = inverse_laplace_table(n, h, static_cast<std::size_t>(n * N * N));

        std::vector<long> k(n, -N);
        while (true)
        {
            cplx p = 1.0;
            std::size_t m = 0;
            bool even = true;
            for (int j = 0; j < n; ++j)
            {
                p *= phase[j][static_cast<std::size_t>(k[j] + N)];
                m += static_cast<std::size_t>(k[j] * k[j]);
                even = even && (k[j] % 2 == 0);
            }
            cplx v = p * inv[m];
            fine += v;
            if (even)
                coarse += v;

            int j = 0;
            while (j < n && ++k[j] > N)
                k[j++] = -N;
            if (j == n)
                break;
        }
    }
    const double scale = std::pow(h / (2 * pi), n);
    KernelValue out;
    out.value = fine * scale;
    out.error = std::abs(out.value - coarse * (scale * std::pow(2.0, n))) + tail;
    if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()))
        throw EvaluationError("kernel: non-finite Fourier sum");
    return out;
}
}  // namespace

//---------------------------------------------------------------------------//
double sphere_laplace_radial(int n, double rho)
{
    return std::exp(log_sphere_laplace_radial(n, std::abs(rho)));
}

double sphere_laplace(std::span<const double> xi)
{
    const int n = static_cast<int>(xi.size());
    const double rho = norm2(xi);
    switch (n)
    {
    case 1: return 2 * std::cosh(rho);
    case 2:
    case 3: return sphere_laplace_quadrature(n, rho);
    default: throw InvalidArgument("sphere_laplace: supported dimensions are 1, 2, 3");
    }
}

//---------------------------------------------------------------------------//
const char* to_string(KernelStrategy s)
{
    return s == KernelStrategy::closed_form_1d ? "closed_form_1d" : "fourier_quadrature";
}

void KernelSpec::validate() const
{
    if (n < 1 || n > 3)
        throw InvalidArgument("kernel: supported dimensions are 1, 2, 3");
    if (!(r > 0))
        throw InvalidArgument("kernel: scale r must be positive");
    if (strategy == KernelStrategy::closed_form_1d && n != 1)
        throw InvalidArgument("kernel: closed form is only available for n = 1");
    if (cutoff < 0 || step < 0 || !(tolerance > 0))
        throw InvalidArgument("kernel: cutoff/step must be nonnegative and tolerance positive");
    if (!(domain_margin >= 0 && domain_margin < 1))
        throw InvalidArgument("kernel: domain margin must lie in [0, 1)");
}

double KernelSpec::resolved_step() const
{
    if (step > 0)
        return step;
    return n == 1 ? 0.1 : 0.25;
}

double kernel_domain_clearance(std::span<const cplx> z, double r, double margin)
{
    double re = 0, im = 0;
    for (const auto& c : z)
    {
        re += std::norm(c.real() / r);
        im += std::norm(c.imag() / r);
    }
    return (1 - margin) + re - im;
}

cplx kernel_1d(cplx z, double r)
{
    cplx v = 0.25 / r * sech(pi * z / (2 * r));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw PoleError("kernel: evaluation at a pole");
    return v;
}

KernelValue kernel_eval(std::span<const cplx> z, const KernelSpec& spec)
{
    spec.validate();
    require_same_dim(z.size(), static_cast<std::size_t>(spec.n), "kernel_eval");
    if (kernel_domain_clearance(z, spec.r, spec.domain_margin) < 0)
    {
        std::ostringstream os;
        os << "kernel: point outside holomorphy domain margin (r = " << spec.r << ")";
        throw DomainError(os.str());
    }
    if (spec.strategy == KernelStrategy::closed_form_1d)
        return {kernel_1d(z[0], spec.r), 0.0};

    ComplexVec w(z.begin(), z.end());
    for (auto& c : w)
        c /= spec.r;
    KernelValue out = fourier_kernel(w, spec);
    double s = std::pow(spec.r, -spec.n);
    out.value *= s;
    out.error *= s;
    if (out.error > spec.tolerance)
        throw AccuracyError("kernel: quadrature error above tolerance", out.error);
    return out;
}

cplx kernel_eval_1d(cplx z, const KernelSpec& spec)
{
    return kernel_eval(std::span<const cplx>(&z, 1), spec).value;
}

KernelValue kernel_scaled(std::span<const cplx> z, double r, const KernelSpec& base)
{
    KernelSpec spec = base;
    spec.r = r;
    return kernel_eval(z, spec);
}

ComplexVec kernel_poles_1d(double r, int count)
{
    if (!(r > 0) || count < 0)
        throw InvalidArgument("kernel_poles_1d: r must be positive and count nonnegative");
    ComplexVec poles;
    for (int m = -count; m < count; ++m)
        poles.push_back(I * ((2.0 * m + 1) * r));
    return poles;
}

double kernel_cutoff(int n, double im_norm, double tolerance)
{
    if (!(im_norm < 1))
        throw AccuracyError("kernel: no finite cutoff for |Im z/r| >= 1", im_norm);
    for (double X = 2; X <= 4000; X += 1)
        if (fourier_tail(n, im_norm, X) < tolerance / 10)
            return X;
    throw AccuracyError("kernel: cutoff exceeds 4000", fourier_tail(n, im_norm, 4000));
}

//---------------------------------------------------------------------------//
DecayReport rapid_decrease_certificate(const KernelSpec& spec, double c, int p, double decay_from,
                                       double floor)
{
    spec.validate();
    if (!(c >= 0) || !(c < spec.r * (1 - spec.domain_margin)))
        throw InvalidArgument("rapid_decrease_certificate: need 0 <= c < r(1 - margin)");
    if (p < 0)
        throw InvalidArgument("rapid_decrease_certificate: power must be nonnegative");

    // The Fourier path aliases with period 2pi r/h in Re z; stay well inside.
    double x_max = 60 * spec.r;
    if (spec.strategy == KernelStrategy::fourier_quadrature)
        x_max = std::min(x_max, 0.8 * pi / spec.resolved_step() * spec.r);
    const int shells = 30;
    const int heights = 5;
    const double x_min = 0.1 * spec.r;

    DecayReport rep;
    const double diag = 1.0 / std::sqrt(static_cast<double>(spec.n));
    for (int s = 0; s <= shells; ++s)
    {
        double x = s == 0 ? 0.0 : x_min * std::pow(x_max / x_min, (s - 1.0) / (shells - 1.0));
        double best = 0;
        for (int k = 0; k < heights; ++k)
        {
            double y = -c + 2 * c * k / (heights - 1);
            for (int dir = 0; dir < (spec.n > 1 ? 4 : 2); ++dir)
            {
                ComplexVec z(spec.n, 0.0);
                double sgn = dir % 2 == 0 ? 1.0 : -1.0;
                if (dir < 2)
                    z[0] = {sgn * x, y};
                else
                    for (auto& zj : z)
                        zj = cplx{sgn * x, y} * diag;
                double v = std::pow(norm2(z), p) * std::abs(kernel_eval(z, spec).value);
                if (!std::isfinite(v))
                {
                    rep.decays = false;
                    rep.detail = "non-finite sample";
                }
                best = std::max(best, v);
            }
        }
        rep.shell_radius.push_back(x);
        rep.shell_max.push_back(best);
        if (best > rep.sup)
        {
            rep.sup = best;
            rep.sup_at = x;
        }
    }
    for (std::size_t s = 1; s < rep.shell_max.size(); ++s)
    {
        if (rep.shell_radius[s - 1] < decay_from)
            continue;
        if (rep.shell_max[s] > rep.shell_max[s - 1] * (1 + 1e-12) && rep.shell_max[s] > floor)
        {
            rep.decays = false;
            std::ostringstream os;
            os << "shell maximum grows at |Re z| = " << rep.shell_radius[s];
            rep.detail = os.str();
            break;
        }
    }
    if (rep.decays)
        rep.detail = "shell maxima non-increasing beyond |Re z| = " + std::to_string(decay_from);
    return rep;
}

}  // namespace eow
