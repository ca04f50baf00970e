#pragma once

// Angular-momentum coupling coefficients for integer quantum numbers.
// Selection-rule violations return exactly 0.0; negative j throws std::domain_error.

namespace zenoscat {

double wigner_3j(int j1, int j2, int j3, int m1, int m2, int m3);

double wigner_6j(int j1, int j2, int j3, int j4, int j5, int j6);

// <j1 m1 j2 m2 | J M>
double clebsch_gordan(int j1, int m1, int j2, int m2, int J, int M);

// Legendre polynomial P_l(x), |x| <= 1.
double legendre_p(int l, double x);

bool triangle(int a, int b, int c);

} // namespace zenoscat
