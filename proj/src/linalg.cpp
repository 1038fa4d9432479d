#include "coint/linalg.hpp"

#include <cmath>

namespace coint {

namespace {

// Flip each column so its largest-magnitude entry (first on ties) is
// positive. Pins the sign freedom of eigenvectors for reproducible tables.
void fix_column_signs(Matrix &m) {
    for (Index j = 0; j < m.cols(); ++j) {
        Index imax = 0;
        m.col(j).cwiseAbs().maxCoeff(&imax);
        if (m(imax, j) < 0.0) m.col(j) = -m.col(j);
    }
}

Matrix symmetrize(const Matrix &a) { return 0.5 * (a + a.transpose()); }

// Cholesky factor of an SPD matrix, or SingularMomentError carrying a
// smallest-pivot diagnostic.
Eigen::LLT<Matrix> cholesky_or_throw(const Matrix &m, const char *what) {
    Eigen::LLT<Matrix> llt(symmetrize(m));
    if (llt.info() != Eigen::Success) {
        const double pivot = Eigen::LDLT<Matrix>(symmetrize(m)).vectorD().minCoeff();
        throw SingularMomentError(std::string(what) + ": matrix is not positive definite", pivot);
    }
    return llt;
}

} // namespace

bool all_finite(const Matrix &m) { return m.allFinite(); }

SvdResult svd(const Matrix &s) {
    if (!all_finite(s)) throw InvalidInputError("svd: input has non-finite entries");
    if (s.rows() > s.cols())
        throw InvalidInputError("svd: expected a wide matrix (rows <= cols)");

    Eigen::JacobiSVD<Matrix> solver(s, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SvdResult out{solver.matrixU(), solver.singularValues(), solver.matrixV()};
    for (Index j = 0; j < out.left.cols(); ++j) {
        Index imax = 0;
        out.left.col(j).cwiseAbs().maxCoeff(&imax);
        if (out.left(imax, j) < 0.0) {
            out.left.col(j) = -out.left.col(j);
            out.right.col(j) = -out.right.col(j);
        }
    }
    return out;
}

EigenSystem sym_eigen(const Matrix &a) {
    if (!all_finite(a)) throw InvalidInputError("sym_eigen: input has non-finite entries");
    if (a.rows() != a.cols()) throw InvalidInputError("sym_eigen: matrix is not square");
    const double scale = a.norm();
    if ((a - a.transpose()).norm() > kSymTol * std::max(1.0, scale))
        throw InvalidInputError("sym_eigen: matrix is asymmetric beyond tolerance");

    Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrize(a));
    if (solver.info() != Eigen::Success)
        throw NumericalInconsistencyError("sym_eigen: eigensolver failed to converge");

    // Eigen returns ascending order; flip to descending.
    EigenSystem out;
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();
    fix_column_signs(out.vectors);
    return out;
}

EigenSystem gen_eigen(const Matrix &l, const Matrix &m) {
    if (!all_finite(l) || !all_finite(m))
        throw InvalidInputError("gen_eigen: input has non-finite entries");
    if (l.rows() != l.cols() || m.rows() != m.cols() || l.rows() != m.rows())
        throw InvalidInputError("gen_eigen: dimension mismatch");

    // Whiten with M = C C': solve the standard symmetric problem on
    // C^-1 L C^-T, then map eigenvectors back through C^-T.
    const auto llt = cholesky_or_throw(m, "gen_eigen");
    const Matrix c = llt.matrixL();
    const Matrix cinv_l = c.triangularView<Eigen::Lower>().solve(symmetrize(l));
    const Matrix whitened = c.triangularView<Eigen::Lower>().solve(cinv_l.transpose());

    Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrize(whitened));
    if (solver.info() != Eigen::Success)
        throw NumericalInconsistencyError("gen_eigen: eigensolver failed to converge");

    EigenSystem out;
    out.values = solver.eigenvalues().reverse();
    const Matrix y = solver.eigenvectors().rowwise().reverse();
    out.vectors = c.transpose().triangularView<Eigen::Upper>().solve(y);
    fix_column_signs(out.vectors);

    // Round-off on a PSD pencil can leave tiny negative eigenvalues.
    const double clamp = kRankTol * std::max(1.0, std::abs(out.values(0)));
    for (Index i = 0; i < out.values.size(); ++i)
        if (out.values(i) < 0.0 && out.values(i) > -clamp) out.values(i) = 0.0;
    return out;
}

Matrix inv_sqrt(const Matrix &m) {
    if (!all_finite(m)) throw InvalidInputError("inv_sqrt: input has non-finite entries");
    const EigenSystem es = sym_eigen(symmetrize(m));
    const double floor = es.values.cwiseAbs().maxCoeff() * kRankTol;
    if (es.values.minCoeff() <= floor)
        throw SingularMomentError("inv_sqrt: matrix is not positive definite",
                                  es.values.minCoeff());
    const Vector d = es.values.cwiseSqrt().cwiseInverse();
    return es.vectors * d.asDiagonal() * es.vectors.transpose();
}

Matrix perp(const Matrix &m) {
    if (!all_finite(m)) throw InvalidInputError("perp: input has non-finite entries");
    const Index p = m.rows();
    const Index r = m.cols();
    if (r < 1 || r >= p) throw RankError("perp: need 1 <= cols < rows");

    Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeFullU);
    const Vector sv = solver.singularValues();
    if (sv(r - 1) <= kRankTol * sv(0))
        throw RankError("perp: matrix is rank deficient");

    // Left singular vectors beyond the rank span the complement.
    Matrix q = solver.matrixU().rightCols(p - r);
    fix_column_signs(q);
    return q;
}

} // namespace coint
