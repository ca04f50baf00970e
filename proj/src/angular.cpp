#include "zenoscat/angular.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace zenoscat {

namespace {

constexpr int kMaxFactorial = 64;

// Factorials up to 64! fit comfortably in double; entries above 22! carry
// one rounding each, so products of a handful stay within a few ulp.
struct FactorialTable {
    std::array<double, kMaxFactorial + 1> f{};
    FactorialTable() {
        f[0] = 1.0;
        for (int i = 1; i <= kMaxFactorial; ++i) f[i] = f[i - 1] * i;
    }
};

const FactorialTable& table() {
    static const FactorialTable t;
    return t;
}

double fact(int n) {
    if (n < 0 || n > kMaxFactorial)
        throw std::domain_error("factorial argument out of table range: " + std::to_string(n));
    return table().f[n];
}

void require_nonnegative(int j) {
    if (j < 0) throw std::domain_error("negative angular momentum " + std::to_string(j));
}

double phase(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// Triangle coefficient Delta(abc) = (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!
double delta(int a, int b, int c) {
    return fact(a + b - c) * fact(a - b + c) * fact(-a + b + c) / fact(a + b + c + 1);
}

} // namespace

bool triangle(int a, int b, int c) {
    return c >= std::abs(a - b) && c <= a + b;
}

double wigner_3j(int j1, int j2, int j3, int m1, int m2, int m3) {
    require_nonnegative(j1);
    require_nonnegative(j2);
    require_nonnegative(j3);
    if (m1 + m2 + m3 != 0) return 0.0;
    if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return 0.0;
    if (!triangle(j1, j2, j3)) return 0.0;
    // (j1 j2 j3; 0 0 0) vanishes for odd J
    if (m1 == 0 && m2 == 0 && (j1 + j2 + j3) % 2 != 0) return 0.0;

    const int kmin = std::max({0, j2 - j3 - m1, j1 - j3 + m2});
    const int kmax = std::min({j1 + j2 - j3, j1 - m1, j2 + m2});
    double sum = 0.0;
    for (int k = kmin; k <= kmax; ++k) {
        sum += phase(k) / (fact(k) * fact(j1 + j2 - j3 - k) * fact(j1 - m1 - k) * fact(j2 + m2 - k) *
                           fact(j3 - j2 + m1 + k) * fact(j3 - j1 - m2 + k));
    }
    const double pre = std::sqrt(delta(j1, j2, j3) * fact(j1 + m1) * fact(j1 - m1) * fact(j2 + m2) *
                                 fact(j2 - m2) * fact(j3 + m3) * fact(j3 - m3));
    return phase(j1 - j2 - m3) * pre * sum;
}

double wigner_6j(int j1, int j2, int j3, int j4, int j5, int j6) {
    for (int j : {j1, j2, j3, j4, j5, j6}) require_nonnegative(j);
    if (!triangle(j1, j2, j3) || !triangle(j1, j5, j6) || !triangle(j4, j2, j6) || !triangle(j4, j5, j3))
        return 0.0;

    const int a1 = j1 + j2 + j3, a2 = j1 + j5 + j6, a3 = j4 + j2 + j6, a4 = j4 + j5 + j3;
    const int b1 = j1 + j2 + j4 + j5, b2 = j2 + j3 + j5 + j6, b3 = j3 + j1 + j6 + j4;
    const int tmin = std::max({a1, a2, a3, a4});
    const int tmax = std::min({b1, b2, b3});
    double sum = 0.0;
    for (int t = tmin; t <= tmax; ++t) {
        sum += phase(t) * fact(t + 1) /
               (fact(t - a1) * fact(t - a2) * fact(t - a3) * fact(t - a4) * fact(b1 - t) * fact(b2 - t) *
                fact(b3 - t));
    }
    const double pre =
        std::sqrt(delta(j1, j2, j3) * delta(j1, j5, j6) * delta(j4, j2, j6) * delta(j4, j5, j3));
    return pre * sum;
}

double clebsch_gordan(int j1, int m1, int j2, int m2, int J, int M) {
    if (m1 + m2 != M) return 0.0;
    const double w = wigner_3j(j1, j2, J, m1, m2, -M);
    if (w == 0.0) return 0.0;
    return phase(j1 - j2 + M) * std::sqrt(2.0 * J + 1.0) * w;
}

double legendre_p(int l, double x) {
    if (l < 0) throw std::domain_error("legendre_p: negative order");
    if (!(std::abs(x) <= 1.0)) throw std::domain_error("legendre_p: |x| > 1");
    if (l == 0) return 1.0;
    double p0 = 1.0, p1 = x;
    for (int n = 1; n < l; ++n) {
        const double p2 = ((2.0 * n + 1.0) * x * p1 - n * p0) / (n + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

} // namespace zenoscat
