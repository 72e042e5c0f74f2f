#pragma once

// Dense Hermitian eigen/singular value helpers backed by LAPACK.

#include <stdexcept>

#include "pulsekit/types.hpp"

namespace pulsekit::linalg {

struct LapackError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TopEigen {
    Signal vector;     ///< unit norm, phase-fixed
    double value = 0;  ///< largest eigenvalue
    double gap = 0;    ///< distance to the second largest eigenvalue
};

/// Largest eigenpair of a Hermitian matrix (lower triangle is read).
TopEigen top_eigenpair(const CMatrix& H);

/// Largest eigenpair of A v = lambda B v with A Hermitian and B Hermitian positive definite.
/// The returned vector is rescaled to unit Euclidean norm.
TopEigen top_generalized_eigenpair(const CMatrix& A, const CMatrix& B);

/// All eigenvalues of a Hermitian matrix, ascending.
Eigen::VectorXd eigenvalues(const CMatrix& H);

struct HermitianEig {
    Eigen::VectorXd values;  ///< ascending
    CMatrix vectors;
};
HermitianEig eigen_decomposition(const CMatrix& H);

struct TopSingular {
    Signal left;
    Signal right;
    double value = 0;
};
/// Largest singular triple M v = s u.
TopSingular top_singular_triple(const CMatrix& M);

/// Multiply by a unit phase so the largest-magnitude sample is real and positive.
void fix_phase(Signal& v);

} // namespace pulsekit::linalg
