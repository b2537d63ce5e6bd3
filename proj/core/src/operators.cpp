#include "cqed/operators.hpp"

#include <cmath>
#include <string>

#include "cqed/error.hpp"

namespace cqed {

namespace {

void require_same_space(const Operator& a, const Operator& b) {
    if (!(a.space() == b.space())) {
        throw DimensionError("operator composition across different spaces: {" +
                             std::to_string(a.space().n_fock) + "," +
                             std::to_string(a.space().n_qubit) + "} vs {" +
                             std::to_string(b.space().n_fock) + "," +
                             std::to_string(b.space().n_qubit) + "}");
    }
}

}  // namespace

void SpaceConfig::validate() const {
    if (n_fock < 2) {
        throw DimensionError("n_fock must be >= 2, got " + std::to_string(n_fock));
    }
    if (n_qubit < 2) {
        throw DimensionError("n_qubit must be >= 2, got " + std::to_string(n_qubit));
    }
}

Operator::Operator(SpaceConfig space, Matrix matrix) : space_(space), matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols()) {
        throw DimensionError("operator matrix must be square");
    }
    if (matrix_.rows() != space_.dim()) {
        throw DimensionError("operator matrix has dimension " + std::to_string(matrix_.rows()) +
                             " but its space label has dimension " + std::to_string(space_.dim()));
    }
}

Operator Operator::identity(SpaceConfig space) {
    return Operator(space, Matrix::Identity(space.dim(), space.dim()));
}

Operator Operator::zero(SpaceConfig space) {
    return Operator(space, Matrix::Zero(space.dim(), space.dim()));
}

Operator Operator::adjoint() const { return Operator(space_, matrix_.adjoint()); }

bool Operator::is_hermitian(double tol) const {
    if (tol == 0.0) {
        return matrix_ == matrix_.adjoint();
    }
    return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Operator& Operator::operator+=(const Operator& other) {
    require_same_space(*this, other);
    matrix_ += other.matrix_;
    return *this;
}

Operator& Operator::operator-=(const Operator& other) {
    require_same_space(*this, other);
    matrix_ -= other.matrix_;
    return *this;
}

Operator& Operator::operator*=(Complex scalar) {
    matrix_ *= scalar;
    return *this;
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
    require_same_space(lhs, rhs);
    return Operator(lhs.space_, lhs.matrix_ * rhs.matrix_);
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

Operator annihilation(int n_fock) {
    if (n_fock < 2) {
        throw DimensionError("annihilation operator needs n_fock >= 2, got " +
                             std::to_string(n_fock));
    }
    Matrix m = Matrix::Zero(n_fock, n_fock);
    for (int i = 0; i + 1 < n_fock; ++i) {
        m(i, i + 1) = std::sqrt(static_cast<double>(i + 1));
    }
    return Operator({n_fock, 1}, std::move(m));
}

Operator number(int n_fock) {
    const Operator a = annihilation(n_fock);
    return a.adjoint() * a;
}

QubitOps qubit_ops() {
    const SpaceConfig q{1, 2};
    Matrix sz = Matrix::Zero(2, 2);
    sz(0, 0) = -1.0;
    sz(1, 1) = 1.0;
    Matrix sp = Matrix::Zero(2, 2);
    sp(1, 0) = 1.0;  // |e><g|
    Operator plus(q, sp);
    Operator minus = plus.adjoint();
    return {Operator(q, std::move(sz)), std::move(plus), std::move(minus)};
}

Operator tensor(const Operator& a, const Operator& b) {
    const Matrix& am = a.matrix();
    const Matrix& bm = b.matrix();
    const Eigen::Index nb = bm.rows();
    Matrix out(am.rows() * nb, am.cols() * nb);
    for (Eigen::Index i = 0; i < am.rows(); ++i) {
        for (Eigen::Index j = 0; j < am.cols(); ++j) {
            out.block(i * nb, j * nb, nb, nb) = am(i, j) * bm;
        }
    }
    const SpaceConfig space{a.space().n_fock * b.space().n_fock,
                            a.space().n_qubit * b.space().n_qubit};
    return Operator(space, std::move(out));
}

Operator on_resonator(const Operator& op, const SpaceConfig& space) {
    if (op.space() != SpaceConfig{space.n_fock, 1}) {
        throw DimensionError("on_resonator expects a resonator-only operator of matching size");
    }
    return tensor(op, Operator::identity({1, space.n_qubit}));
}

Operator on_qubit(const Operator& op, const SpaceConfig& space) {
    if (op.space() != SpaceConfig{1, space.n_qubit}) {
        throw DimensionError("on_qubit expects a qubit-only operator of matching size");
    }
    return tensor(Operator::identity({space.n_fock, 1}), op);
}

}  // namespace cqed
