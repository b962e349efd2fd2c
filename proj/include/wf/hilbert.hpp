#pragma once

#include "wf/types.hpp"

namespace wf {

struct Dims {
    int na = 2;
    int nb = 2;

    Dims() = default;
    Dims(int a, int b);
    int n() const { return na * nb; }
    bool operator==(const Dims& o) const { return na == o.na && nb == o.nb; }
    bool operator!=(const Dims& o) const { return !(*this == o); }
};

// Unit vectors on both factors with canonical global phases: the first
// component of modulus > 1e-12 is real and positive.
struct ProductVector {
    CVec phi;
    CVec chi;

    ProductVector() = default;
    ProductVector(const CVec& phi, const CVec& chi);

    Dims dims() const { return {static_cast<int>(phi.size()), static_cast<int>(chi.size())}; }
    ProductVector partial_conjugate() const { return {phi, chi.conjugate()}; }
};

// Normalizes and fixes the phase of a single vector.
CVec canonical_unit(const CVec& v);

// |<phi1,phi2>|^2 |<chi1,chi2>|^2 for unit vectors.
double fidelity(const ProductVector& a, const ProductVector& b);
// Fubini-Study distance arccos(sqrt(fidelity)).
double geodesic_distance(const ProductVector& a, const ProductVector& b);
bool same_point(const ProductVector& a, const ProductVector& b, double fid_threshold = 1.0 - 1e-8);

CVec kron_product(const ProductVector& p);
CVec kron(const CVec& a, const CVec& b);
CMat kron(const CMat& a, const CMat& b);

class HermitianOp {
public:
    HermitianOp() = default;
    // Symmetrizes m; throws NotHermitian if m deviates from m^dagger by more
    // than 1e-9 (relative to max(1, |m|)).
    HermitianOp(Dims d, const CMat& m);

    static HermitianOp zero(Dims d);
    static HermitianOp identity(Dims d);
    static HermitianOp maximally_mixed(Dims d);
    static HermitianOp projector(Dims d, const CVec& psi);

    const Dims& dims() const { return dims_; }
    const CMat& mat() const { return m_; }
    int n() const { return dims_.n(); }

    double trace() const { return m_.diagonal().real().sum(); }
    double norm() const { return m_.norm(); }
    HermitianOp normalized_trace() const;
    RVec eigenvalues() const;
    double min_eigenvalue() const;

    HermitianOp operator+(const HermitianOp& o) const;
    HermitianOp operator-(const HermitianOp& o) const;
    HermitianOp operator*(double s) const;
    HermitianOp& operator+=(const HermitianOp& o);

private:
    struct Raw {};
    HermitianOp(Dims d, CMat m, Raw) : dims_(d), m_(std::move(m)) {}

    Dims dims_;
    CMat m_;
};

inline HermitianOp operator*(double s, const HermitianOp& a) { return a * s; }

// Re Tr(A B), the Hilbert-Schmidt inner product on Hermitian operators.
double hs_inner(const HermitianOp& a, const HermitianOp& b);

// (A^P)_{ij;kl} = A_{il;kj}
CMat partial_transpose(const CMat& a, Dims d);
HermitianOp partial_transpose(const HermitianOp& a);
bool is_ppt(const HermitianOp& a, double tol = 1e-10);

// (va (x) vb) A (va (x) vb)^dagger
HermitianOp sl_transform(const HermitianOp& a, const CMat& va, const CMat& vb);

// Coordinates in the fixed orthonormal Hermitian basis: diagonal units,
// then for each i<j the pair sqrt2 Re, sqrt2 Im. Tr(AB) = to_hvec(A).to_hvec(B).
RVec to_hvec(const CMat& a);
CMat from_hvec(const RVec& v, int n);

} // namespace wf
