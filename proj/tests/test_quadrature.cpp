/*
   Copyright 2026 The memphase Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "memphase/errors.hpp"
#include "memphase/quadrature.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

using namespace memphase;
namespace q = memphase::quadrature;

TEST_CASE("kronrod panel is exact for low-degree polynomials")
{
    const auto r = q::kronrod15([](double x) { return std::pow(x, 10); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(1.0 / 11.0).epsilon(1e-15));
}

TEST_CASE("adaptive integration handles an endpoint singularity")
{
    const auto r = q::integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, {1e-13, 0.0, 10000});
    CHECK(std::abs(r.value - 2.0 / 3.0) < 1e-12);
}

TEST_CASE("breakpoints split the range at kinks")
{
    const std::array<double, 1> kink{0.3};
    const auto r = q::integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, {1e-14, 0.0, 50}, kink);
    CHECK(std::abs(r.value - (0.045 + 0.245)) < 1e-14);
    // Two panels suffice when the kink is a breakpoint.
    CHECK(r.evaluations == 30);
}

TEST_CASE("reversed limits flip the sign")
{
    const auto r = q::integrate([](double x) { return x; }, 1.0, 0.0, {});
    CHECK(r.value == doctest::Approx(-0.5));
}

TEST_CASE("divergent integrals report non-convergence")
{
    CHECK_THROWS_AS(q::integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, {1e-12, 0.0, 200}),
                    QuadratureNonConvergence);
}

TEST_CASE("Wynn epsilon accelerates the alternating harmonic series")
{
    std::vector<double> partial;
    double s = 0.0;
    for (int k = 1; k <= 15; ++k) {
        s += (k % 2 ? 1.0 : -1.0) / k;
        partial.push_back(s);
    }
    // Plain partial sum is off by ~3e-2.
    CHECK(std::abs(partial.back() - std::log(2.0)) > 1e-2);
    const auto r = q::wynn_epsilon(partial);
    CHECK(std::abs(r.value - std::log(2.0)) < 1e-10);
}

TEST_CASE("oscillatory tails against reference values")
{
    SUBCASE("cos(x)/x^2 from 1")
    {
        const auto r = q::integrate_cosine_tail([](double x) { return 1.0 / (x * x); }, 1.0, 1.0, {1e-13, 0.0, 10000});
        CHECK(std::abs(r.value - (-0.08441095055957388689)) < 1e-12);
    }
    SUBCASE("cos(3x)/(x^2 (1+x^2)) from 2")
    {
        auto h = [](double x) { return 1.0 / (x * x * (1.0 + x * x)); };
        const auto r = q::integrate_cosine_tail(h, 3.0, 2.0, {1e-14, 0.0, 10000});
        CHECK(std::abs(r.value - 0.009796556317639405372) < 1e-13);
    }
    SUBCASE("non-oscillatory tail")
    {
        const auto r = q::integrate_cosine_tail([](double x) { return 1.0 / (x * x); }, 0.0, 2.0, {1e-14, 0.0, 1000});
        CHECK(std::abs(r.value - 0.5) < 1e-14);
    }
    SUBCASE("negative frequency equals positive")
    {
        auto h = [](double x) { return 1.0 / (x * x); };
        const auto a = q::integrate_cosine_tail(h, -1.0, 1.0, {1e-13, 0.0, 10000});
        const auto b = q::integrate_cosine_tail(h, 1.0, 1.0, {1e-13, 0.0, 10000});
        CHECK(std::abs(a.value - b.value) < 1e-13);
    }
}
