#pragma once

#include <string>

#include "eow/ultrahyperfunctions.hpp"

namespace eow
{
//! "1", "-0.3i", "0+0.5i", "2-1.5i", "i".
cplx parse_complex(const std::string& s);

//! "lo:hi:step" inclusive of hi up to rounding.
struct Range
{
    double lo = 0, hi = 0, step = 1;
    RealVec values() const;
};

Range parse_range(const std::string& s);

//! Comma-separated reals.
RealVec parse_list(const std::string& s);

/*!
 * Test functions: gaussian:c,s | gaussian:c=0,s=1 | polygauss:a0,a1,... |
 * heat:xi=0,t=0.1. The gaussian center may be complex.
 */
TestFunction parse_test_function(const std::string& tag);

enum class FixtureKind
{
    polynomial,      //!< poly:a0,a1,... ascending powers, same F on both tubes
    pole,            //!< pole:w=0+0.5i, F = 1/(z - w) on both tubes
    cauchy_hilbert,  //!< chilbert:w=0+0.3i[,c=1];w=...
    delta,           //!< delta:w=0+0.5i[,c=1];...
    zero
};

const char* to_string(FixtureKind k);

struct Fixture
{
    std::string tag;
    FixtureKind kind = FixtureKind::zero;
    ComplexVec coeffs;
    cplx pole{};
    std::vector<PointMass> masses;

    //! Closed-form common extension where one exists (polynomial, Cauchy-Hilbert, zero).
    bool has_closed_form() const;
    cplx closed_form(cplx z) const;
};

//! Throws InvalidArgument on an unknown tag or malformed parameters.
Fixture parse_fixture(const std::string& tag);

}  // namespace eow
