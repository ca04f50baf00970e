#include "../oracles.hpp"
#include "zenoscat/angular.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace zenoscat;

TEST_CASE("3j symbols agree with the Racah-sum oracle for j <= 3") {
    double worst = 0.0;
    int nonzero = 0;
    for (int j1 = 0; j1 <= 3; ++j1)
        for (int j2 = 0; j2 <= 3; ++j2)
            for (int j3 = 0; j3 <= 3; ++j3)
                for (int m1 = -j1; m1 <= j1; ++m1)
                    for (int m2 = -j2; m2 <= j2; ++m2)
                        for (int m3 = -j3; m3 <= j3; ++m3) {
                            const double a = wigner_3j(j1, j2, j3, m1, m2, m3);
                            const double b = oracle::wigner_3j(j1, j2, j3, m1, m2, m3);
                            worst = std::max(worst, std::abs(a - b));
                            if (b != 0.0) ++nonzero;
                        }
    CHECK(worst < 1e-13);
    CHECK(nonzero > 400);
}

TEST_CASE("6j symbols agree with the Racah-sum oracle for j <= 3") {
    double worst = 0.0;
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            for (int c = 0; c <= 3; ++c)
                for (int d = 0; d <= 3; ++d)
                    for (int e = 0; e <= 3; ++e)
                        for (int f = 0; f <= 3; ++f)
                            worst = std::max(worst, std::abs(wigner_6j(a, b, c, d, e, f) -
                                                             oracle::wigner_6j(a, b, c, d, e, f)));
    CHECK(worst < 1e-13);
}

TEST_CASE("known closed forms") {
    CHECK(wigner_3j(1, 1, 0, 0, 0, 0) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(wigner_3j(2, 2, 0, 1, -1, 0) == doctest::Approx(-1.0 / std::sqrt(5.0)).epsilon(1e-15));
    CHECK(wigner_6j(1, 1, 1, 1, 1, 1) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(clebsch_gordan(1, 1, 1, -1, 0, 0) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("3j orthogonality") {
    double worst = 0.0;
    for (int j1 = 0; j1 <= 3; ++j1)
        for (int j2 = 0; j2 <= 3; ++j2)
            for (int j3 = std::abs(j1 - j2); j3 <= j1 + j2; ++j3)
                for (int j3p = std::abs(j1 - j2); j3p <= j1 + j2; ++j3p)
                    for (int m3 = -std::min(j3, j3p); m3 <= std::min(j3, j3p); ++m3) {
                        double s = 0.0;
                        for (int m1 = -j1; m1 <= j1; ++m1) {
                            const int m2 = -m1 - m3;
                            if (std::abs(m2) > j2) continue;
                            s += (2 * j3 + 1) * wigner_3j(j1, j2, j3, m1, m2, m3) * wigner_3j(j1, j2, j3p, m1, m2, m3);
                        }
                        worst = std::max(worst, std::abs(s - (j3 == j3p ? 1.0 : 0.0)));
                    }
    CHECK(worst < 1e-12);
}

TEST_CASE("6j orthogonality") {
    double worst = 0.0;
    for (int j1 = 0; j1 <= 3; ++j1)
        for (int j2 = 0; j2 <= 3; ++j2)
            for (int j4 = 0; j4 <= 3; ++j4)
                for (int j5 = 0; j5 <= 3; ++j5)
                    for (int j6 = 0; j6 <= 3; ++j6)
                        for (int j6p = 0; j6p <= 3; ++j6p) {
                            if (!triangle(j1, j5, j6) || !triangle(j4, j2, j6) || !triangle(j1, j5, j6p) ||
                                !triangle(j4, j2, j6p))
                                continue;
                            double s = 0.0;
                            for (int x = 0; x <= 6; ++x)
                                s += (2 * x + 1) * (2 * j6 + 1) * wigner_6j(j1, j2, x, j4, j5, j6) *
                                     wigner_6j(j1, j2, x, j4, j5, j6p);
                            worst = std::max(worst, std::abs(s - (j6 == j6p ? 1.0 : 0.0)));
                        }
    CHECK(worst < 1e-12);
}

TEST_CASE("3j permutation and sign symmetries") {
    for (int j1 = 0; j1 <= 3; ++j1)
        for (int j2 = 0; j2 <= 3; ++j2)
            for (int j3 = std::abs(j1 - j2); j3 <= j1 + j2; ++j3)
                for (int m1 = -j1; m1 <= j1; ++m1)
                    for (int m2 = -j2; m2 <= j2; ++m2) {
                        const int m3 = -m1 - m2;
                        if (std::abs(m3) > j3) continue;
                        const double v = wigner_3j(j1, j2, j3, m1, m2, m3);
                        const double ph = ((j1 + j2 + j3) % 2) ? -1.0 : 1.0;
                        CHECK(wigner_3j(j2, j3, j1, m2, m3, m1) == doctest::Approx(v).epsilon(1e-14));
                        CHECK(wigner_3j(j2, j1, j3, m2, m1, m3) == doctest::Approx(ph * v).epsilon(1e-14));
                        CHECK(wigner_3j(j1, j2, j3, -m1, -m2, -m3) == doctest::Approx(ph * v).epsilon(1e-14));
                    }
}

TEST_CASE("selection rules give exact zeros and bad input throws") {
    CHECK(wigner_3j(1, 1, 3, 0, 0, 0) == 0.0);
    CHECK(wigner_3j(1, 1, 1, 1, 1, -1) == 0.0);
    CHECK(wigner_3j(1, 1, 1, 0, 0, 0) == 0.0);
    CHECK(wigner_3j(1, 1, 2, 2, -2, 0) == 0.0);
    CHECK(wigner_6j(1, 1, 3, 1, 1, 1) == 0.0);
    CHECK_THROWS_AS(wigner_3j(-1, 1, 1, 0, 0, 0), std::domain_error);
    CHECK_THROWS_AS(wigner_6j(1, -1, 1, 1, 1, 1), std::domain_error);
}

TEST_CASE("Legendre polynomials") {
    for (double x : {-1.0, -0.3, 0.0, 0.45, 1.0})
        for (int l = 0; l <= 8; ++l) CHECK(legendre_p(l, x) == doctest::Approx(std::legendre(l, x)).epsilon(1e-13));
}
