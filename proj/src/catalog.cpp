#include "wf/catalog.hpp"

#include <cmath>

namespace wf {

namespace {
CVec unit(int n, int i) {
    CVec v = CVec::Zero(n);
    v(i) = 1;
    return v;
}
} // namespace

HermitianOp choi_lam_matrix(double a, double b, double c, double theta) {
    CMat m = CMat::Zero(9, 9);
    const cd ep = std::polar(1.0, theta), em = std::polar(1.0, -theta);
    const double diag[9] = {a, c, b, b, a, c, c, b, a};
    for (int i = 0; i < 9; ++i) m(i, i) = diag[i];
    m(0, 4) = -ep;
    m(0, 8) = -em;
    m(4, 0) = -em;
    m(4, 8) = -ep;
    m(8, 0) = -ep;
    m(8, 4) = -em;
    return HermitianOp(Dims(3, 3), m);
}

ProductVector choi_lam_continuum_zero(double alpha, double beta) {
    CVec phi(3);
    phi << 1.0, std::polar(1.0, alpha), std::polar(1.0, beta);
    return {phi, phi.conjugate()};
}

CatalogEntry choi_lam(double a, double b, double c, double theta) {
    CatalogEntry e;
    e.name = "choi-lam";
    e.witness = choi_lam_matrix(a, b, c, theta);
    if (a == 1 && b == 0 && c == 1 && theta == 0) {
        e.analytic_zeros = {{unit(3, 0), unit(3, 2)}, {unit(3, 1), unit(3, 0)}, {unit(3, 2), unit(3, 1)}};
        e.continuum_sampler = [](Rng& rng) {
            const double two_pi = 2.0 * M_PI;
            double al = two_pi * rng.uniform();
            double be = two_pi * rng.uniform();
            return choi_lam_continuum_zero(al, be);
        };
        e.quartic_kernel_dim = 2;
    } else {
        e.name = "choi-lam-family";
    }
    return e;
}

std::pair<double, double> ha_kye_bc(double a) {
    double s = 2.0 - a, p = (1.0 - a) * (1.0 - a);
    double disc = std::sqrt(std::max(0.0, s * s - 4.0 * p));
    return {(s - disc) / 2.0, (s + disc) / 2.0};
}

bool ha_kye_member(double a, double b, double c, double theta, double tol) {
    return std::abs(theta) <= tol && a >= -tol && a <= 1 + tol && std::abs(a + b + c - 2) <= tol &&
           std::abs(b * c - (1 - a) * (1 - a)) <= tol;
}

HermitianOp robertson_matrix() {
    CMat m = CMat::Zero(16, 16);
    // 1-based (row, col, value) as in the map's matrix form
    const int entries[][3] = {{2, 12, 1},  {2, 15, -1}, {3, 3, 1},    {3, 9, 1},   {4, 4, 1},   {4, 13, 1},
                              {5, 12, -1}, {5, 15, 1},  {7, 7, 1},    {7, 10, 1},  {8, 8, 1},   {8, 14, 1},
                              {9, 3, 1},   {9, 9, 1},   {10, 7, 1},   {10, 10, 1}, {12, 2, 1},  {12, 5, -1},
                              {13, 4, 1},  {13, 13, 1}, {14, 8, 1},   {14, 14, 1}, {15, 2, -1}, {15, 5, 1}};
    for (const auto& e : entries) m(e[0] - 1, e[1] - 1) = e[2];
    return HermitianOp(Dims(4, 4), m);
}

ProductVector robertson_continuum_zero(const CVec& phi, cd chi1, cd chi2) {
    if (phi.size() != 4) throw DimensionMismatch("Robertson zeros live in 4x4");
    cd a = std::conj(phi(0)) * phi(2) + std::conj(phi(3)) * phi(1);
    cd b = std::conj(phi(1)) * phi(2) - std::conj(phi(3)) * phi(0);
    double s12 = std::norm(chi1) + std::norm(chi2);
    if (!(s12 > 0)) throw DimensionMismatch("chi1, chi2 must not both vanish");
    CVec chi(4);
    chi(0) = chi1;
    chi(1) = chi2;
    chi(2) = (-a * chi1 - b * chi2) / s12;
    chi(3) = (std::conj(b) * chi1 - std::conj(a) * chi2) / s12;
    double pa = std::norm(phi(0)) + std::norm(phi(1));
    double pb = std::norm(phi(2)) + std::norm(phi(3));
    double s34 = std::norm(chi(2)) + std::norm(chi(3));
    double lhs = pa * s34, rhs = pb * s12;
    if (lhs > 0 && rhs > 0) {
        double c = std::pow(lhs / rhs, 0.25);
        chi.head(2) *= c;
        chi.tail(2) /= c;
    }
    return {phi, chi};
}

CatalogEntry robertson() {
    CatalogEntry e;
    e.name = "robertson";
    e.witness = robertson_matrix();
    e.analytic_zeros = {{unit(4, 0), unit(4, 0)}, {unit(4, 0), unit(4, 1)},
                        {unit(4, 2), unit(4, 2)}, {unit(4, 2), unit(4, 3)}};
    e.continuum_sampler = [](Rng& rng) {
        CVec phi = rng.cvec(4);
        return robertson_continuum_zero(phi, rng.cnormal(), rng.cnormal());
    };
    e.quartic_kernel_dim = 8;
    return e;
}

} // namespace wf
