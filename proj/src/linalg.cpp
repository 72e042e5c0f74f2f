#include "pulsekit/linalg.hpp"

#include <limits>
#include <string>

#include <lapacke.h>

namespace pulsekit::linalg {

namespace {

lapack_complex_double* lp(cplx* p) { return reinterpret_cast<lapack_complex_double*>(p); }

void check(lapack_int info, const char* routine)
{
    if (info != 0)
        throw LapackError(std::string(routine) + " failed, info = " + std::to_string(info));
}

void require_square(const CMatrix& M, const char* what)
{
    if (M.rows() != M.cols() || M.rows() == 0)
        throw std::invalid_argument(std::string(what) + ": matrix must be square and non-empty");
}

} // namespace

void fix_phase(Signal& v)
{
    Eigen::Index idx = 0;
    v.cwiseAbs().maxCoeff(&idx);
    const double mag = std::abs(v(idx));
    if (mag > 0)
        v *= std::conj(v(idx)) / mag;
}

TopEigen top_eigenpair(const CMatrix& H)
{
    require_square(H, "top_eigenpair");
    const auto n = static_cast<lapack_int>(H.rows());
    const lapack_int lo = n >= 2 ? n - 1 : 1;
    CMatrix work = H;
    Eigen::VectorXd w(n);
    CMatrix Z(n, 2);
    Eigen::Matrix<lapack_int, Eigen::Dynamic, 1> isuppz(2 * n);
    lapack_int found = 0;
    check(LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, lp(work.data()), n, 0.0, 0.0, lo, n,
                         2 * LAPACKE_dlamch('S'), &found, w.data(), lp(Z.data()), n, isuppz.data()),
          "zheevr");
    TopEigen out;
    out.vector = Z.col(found - 1);
    out.value = w(found - 1);
    out.gap = found >= 2 ? w(found - 1) - w(found - 2) : std::numeric_limits<double>::infinity();
    out.vector.normalize();
    fix_phase(out.vector);
    return out;
}

TopEigen top_generalized_eigenpair(const CMatrix& A, const CMatrix& B)
{
    require_square(A, "top_generalized_eigenpair");
    if (B.rows() != A.rows() || B.cols() != A.cols())
        throw std::invalid_argument("top_generalized_eigenpair: shape mismatch");
    const auto n = static_cast<lapack_int>(A.rows());
    const lapack_int lo = n >= 2 ? n - 1 : 1;
    CMatrix a = A, b = B;
    Eigen::VectorXd w(n);
    CMatrix Z(n, 2);
    Eigen::Matrix<lapack_int, Eigen::Dynamic, 1> ifail(n);
    lapack_int found = 0;
    check(LAPACKE_zhegvx(LAPACK_COL_MAJOR, 1, 'V', 'I', 'L', n, lp(a.data()), n, lp(b.data()), n, 0.0, 0.0, lo,
                         n, 2 * LAPACKE_dlamch('S'), &found, w.data(), lp(Z.data()), n, ifail.data()),
          "zhegvx");
    TopEigen out;
    out.vector = Z.col(found - 1);
    out.value = w(found - 1);
    out.gap = found >= 2 ? w(found - 1) - w(found - 2) : std::numeric_limits<double>::infinity();
    out.vector.normalize();
    fix_phase(out.vector);
    return out;
}

Eigen::VectorXd eigenvalues(const CMatrix& H)
{
    require_square(H, "eigenvalues");
    const auto n = static_cast<lapack_int>(H.rows());
    CMatrix work = H;
    Eigen::VectorXd w(n);
    check(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n, lp(work.data()), n, w.data()), "zheevd");
    return w;
}

HermitianEig eigen_decomposition(const CMatrix& H)
{
    require_square(H, "eigen_decomposition");
    const auto n = static_cast<lapack_int>(H.rows());
    HermitianEig out{Eigen::VectorXd(n), H};
    check(LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, lp(out.vectors.data()), n, out.values.data()), "zheevd");
    return out;
}

TopSingular top_singular_triple(const CMatrix& M)
{
    const auto m = static_cast<lapack_int>(M.rows());
    const auto n = static_cast<lapack_int>(M.cols());
    const lapack_int k = std::min(m, n);
    CMatrix a = M, U(m, k), VT(k, n);
    Eigen::VectorXd s(k);
    check(LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', m, n, lp(a.data()), m, s.data(), lp(U.data()), m, lp(VT.data()), k),
          "zgesdd");
    TopSingular out;
    out.value = s(0);
    out.right = VT.row(0).adjoint();
    out.left = U.col(0);
    // Rotate both vectors by the same phase so M v = s u still holds.
    Signal fixed = out.right;
    fix_phase(fixed);
    Eigen::Index idx = 0;
    out.right.cwiseAbs().maxCoeff(&idx);
    if (std::abs(out.right(idx)) > 0) {
        const cplx phase = fixed(idx) / out.right(idx);
        out.left *= phase;
    }
    out.right = fixed;
    return out;
}

} // namespace pulsekit::linalg
