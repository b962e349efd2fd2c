#include "wf/realform.hpp"

namespace wf {

RMat RealWitness::u() const {
    const int h = static_cast<int>(matrix.rows()) / 2;
    return matrix.topLeftCorner(h, h);
}

RMat RealWitness::v() const {
    const int h = static_cast<int>(matrix.rows()) / 2;
    return matrix.bottomLeftCorner(h, h);
}

RMat real_partial_transpose(const RMat& w, Dims d) { return partial_transpose(CMat(w.cast<cd>()), d).real(); }

CVec complexify(const RVec& x) {
    const auto n = x.size() / 2;
    return x.head(n).cast<cd>() + cd(0, 1) * x.tail(n).cast<cd>();
}

namespace {

CMat jmap(int n) {
    CMat j(n, 2 * n);
    j << CMat::Identity(n, n), cd(0, 1) * CMat::Identity(n, n);
    return j;
}

RMat sym_pt(const RMat& z, Dims rd) { return 0.5 * (z + real_partial_transpose(z, rd)); }

} // namespace

RealWitness to_real(const HermitianOp& omega) {
    const Dims d = omega.dims();
    const CMat jk = kron(jmap(d.na), jmap(d.nb));
    const CMat z = jk.adjoint() * omega.mat() * jk;
    const Dims rd(2 * d.na, 2 * d.nb);
    RealWitness w{0.5 * (z + partial_transpose(z, rd)).real(), d};
    w.matrix = 0.5 * (w.matrix + w.matrix.transpose()).eval();
    return w;
}

double g_form(const RealWitness& w, const RVec& x, const RVec& y) {
    const Dims rd = w.real_dims();
    if (x.size() != rd.na || y.size() != rd.nb) throw DimensionMismatch("real vectors do not match witness dims");
    RVec xy(rd.n());
    for (int i = 0; i < rd.na; ++i) xy.segment(i * rd.nb, rd.nb) = x(i) * y;
    return xy.dot(w.matrix * xy);
}

std::pair<RealWitness, RealWitness> pure_state_split(const CVec& psi, Dims d) {
    if (psi.size() != d.n()) throw DimensionMismatch("psi length must be na*nb");
    const CVec p = kron(jmap(d.na), jmap(d.nb)).adjoint() * (psi / psi.norm());
    const RVec re = p.real(), im = p.imag();
    const Dims rd(2 * d.na, 2 * d.nb);
    RealWitness wr{sym_pt(re * re.transpose(), rd), d};
    RealWitness wi{sym_pt(im * im.transpose(), rd), d};
    return {wr, wi};
}

} // namespace wf
