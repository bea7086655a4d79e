#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace eow
{
using cplx = std::complex<double>;
using RealVec = std::vector<double>;
using ComplexVec = std::vector<cplx>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double sqrt2 = std::numbers::sqrt2;
inline constexpr cplx I{0.0, 1.0};

//---------------------------------------------------------------------------//
// Error types. All derive from the standard hierarchy so callers can catch
// broadly; the CLI maps them onto exit codes.
//---------------------------------------------------------------------------//

class InvalidArgument : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//! Point outside the region where an evaluator is certified holomorphic.
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

//! Evaluation landed on (or numerically at) a pole.
class PoleError : public DomainError
{
  public:
    using DomainError::DomainError;
};

//! Non-finite sample encountered during quadrature.
class EvaluationError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Quadrature error estimate exceeded the requested tolerance.
class AccuracyError : public std::runtime_error
{
  public:
    AccuracyError(const std::string& what, double estimate)
        : std::runtime_error(what + " (estimate " + std::to_string(estimate) + ")")
        , estimate_(estimate)
    {
    }
    double estimate() const { return estimate_; }

  private:
    double estimate_;
};

//---------------------------------------------------------------------------//
// Small vector helpers
//---------------------------------------------------------------------------//

inline double norm2(std::span<const double> v)
{
    double s = 0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

inline double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline RealVec real_part(std::span<const cplx> z)
{
    RealVec out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        out[i] = z[i].real();
    return out;
}

inline RealVec imag_part(std::span<const cplx> z)
{
    RealVec out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        out[i] = z[i].imag();
    return out;
}

inline ComplexVec make_point(std::span<const double> re, std::span<const double> im)
{
    ComplexVec z(re.size());
    for (std::size_t i = 0; i < re.size(); ++i)
        z[i] = {re[i], im.empty() ? 0.0 : im[i]};
    return z;
}

//! Euclidean norm of a complex vector (as a point of R^{2n}).
inline double norm2(std::span<const cplx> z)
{
    double s = 0;
    for (const auto& c : z)
        s += std::norm(c);
    return std::sqrt(s);
}

inline void require_same_dim(std::size_t a, std::size_t b, const char* what)
{
    if (a != b)
        throw InvalidArgument(std::string(what) + ": dimension mismatch ("
                              + std::to_string(a) + " vs " + std::to_string(b) + ")");
}

//---------------------------------------------------------------------------//
/*!
 * Evaluate fn(i) for i in [0, count) across worker threads.
 *
 * Results are written by index so output order never depends on scheduling.
 * The first exception thrown by any worker is rethrown on the caller.
 */
template<class T, class Fn>
std::vector<T> parallel_map(std::size_t count, Fn&& fn)
{
    std::vector<T> out(count);
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            out[i] = fn(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
        {
            pool.emplace_back([&, w] {
                try
                {
                    for (std::size_t i = w; i < count; i += workers)
                        out[i] = fn(i);
                }
                catch (...)
                {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

}  // namespace eow
