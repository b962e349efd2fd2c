#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace wf {

using cd = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

// Numerical cutoffs shared by the zero finder, the classifier and the
// constraint rank. hess is relative to max(largest Hessian eigenvalue, 1).
struct Tolerances {
    double zero = 1e-9;
    double grad = 1e-7;
    double hess = 1e-8;
    double svd = 1e-8;
};

class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define WF_ERROR_TYPE(Name)                                                  \
    struct Name : Error {                                                    \
        explicit Name(const std::string& msg) : Error(#Name, msg) {}         \
    };

WF_ERROR_TYPE(DimensionMismatch)
WF_ERROR_TYPE(NotHermitian)
WF_ERROR_TYPE(SingularTransform)
WF_ERROR_TYPE(NotAZero)
WF_ERROR_TYPE(NegativeHessian)
WF_ERROR_TYPE(NotQuartic)
WF_ERROR_TYPE(EmptyZeroSet)
WF_ERROR_TYPE(NotInKernel)
WF_ERROR_TYPE(Unbounded)
WF_ERROR_TYPE(TooManyZeros)
WF_ERROR_TYPE(ConvergenceFailure)
WF_ERROR_TYPE(ParseError)

#undef WF_ERROR_TYPE

} // namespace wf
