#pragma once

#include <string>
#include <vector>

#include "wf/zerofinder.hpp"

namespace wf {

// Each row E stands for the linear constraint Tr(E Omega) = 0.
struct ConstraintSystem {
    Dims dims;
    std::vector<HermitianOp> rows;
    int rank = 0;
    std::vector<HermitianOp> kernel_basis;  // orthonormal under Tr(AB)
    RVec singular_values;                   // of the row-normalized matrix, descending
    double spectral_gap = 0;                // last kept / first dropped; infinity if nothing is dropped

    int kernel_dim() const { return static_cast<int>(kernel_basis.size()); }
    // rows x N^2 real matrix in the Hermitian basis (rows not normalized)
    RMat matrix() const;
    // max_i |Tr(E_i B)| / |E_i|
    double residual(const HermitianOp& b) const;
    // orthogonal projection onto the kernel
    HermitianOp project_to_kernel(const HermitianOp& b) const;
};

int m2_count(Dims d);                    // 2(na+nb) - 3
int m4_count(Dims d, int k);             // 2K(na+nb-2) + C(K+2,3)

std::vector<HermitianOp> t01_rows(const Zero& z);
std::vector<HermitianOp> t2_rows(const Zero& z);
std::vector<HermitianOp> t3_rows(const Zero& z);

// Rank and kernel of an arbitrary list of rows.
ConstraintSystem solve_rows(Dims d, std::vector<HermitianOp> rows, double svd_tol = 1e-8);

// T0/T1 rows for every zero; T2/T3 rows for quartic zeros when quartic is set.
ConstraintSystem assemble_U(Dims d, const std::vector<Zero>& zeros, bool quartic = true, double svd_tol = 1e-8);
ConstraintSystem assemble_U(const ZeroSet& zs, Dims d, bool quartic = true, double svd_tol = 1e-8);

// Quadratic constraints from bare product vectors (frames built deterministically).
ConstraintSystem assemble_from_points(Dims d, const std::vector<ProductVector>& pts, double svd_tol = 1e-8);

// Binary layout: 8 bytes "WFCMAT01", uint64 rows, uint64 cols, then rows*cols
// little-endian float64 in row-major order.
void write_constraint_matrix(const std::string& path, const ConstraintSystem& cs);
RMat read_constraint_matrix(const std::string& path);

} // namespace wf
