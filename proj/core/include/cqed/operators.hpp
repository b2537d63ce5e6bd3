#pragma once

// Operator algebra on the truncated resonator (Fock) space tensored with the
// qubit space.
//
// Basis convention, used by every module in the library:
//   index = fock_index * n_qubit + qubit_index
// i.e. Kronecker products are always taken in the order resonator (x) qubit,
// and qubit index 0 is the ground state |g>. sigma_z = diag(-1, +1), so
// Tr[rho sigma_z] = -1 for the pure ground state.

#include <complex>
#include <tuple>

#include <Eigen/Dense>

namespace cqed {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Factorization label of a Hilbert space. A factor of 1 means "absent", so a
// pure resonator operator carries {n_fock, 1} and a pure qubit operator
// carries {1, n_qubit}.
struct SpaceConfig {
    int n_fock = 10;
    int n_qubit = 2;

    int dim() const noexcept { return n_fock * n_qubit; }
    int index(int fock, int qubit) const noexcept { return fock * n_qubit + qubit; }

    // Throws DimensionError unless both factors are physical (>= 2 levels).
    void validate() const;

    friend bool operator==(const SpaceConfig&, const SpaceConfig&) = default;
};

class Operator {
public:
    Operator(SpaceConfig space, Matrix matrix);

    static Operator identity(SpaceConfig space);
    static Operator zero(SpaceConfig space);

    int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
    const SpaceConfig& space() const noexcept { return space_; }
    const Matrix& matrix() const noexcept { return matrix_; }
    Complex operator()(int row, int col) const { return matrix_(row, col); }

    Operator adjoint() const;
    Complex trace() const { return matrix_.trace(); }
    bool is_hermitian(double tol = 0.0) const;

    Operator& operator+=(const Operator& other);
    Operator& operator-=(const Operator& other);
    Operator& operator*=(Complex scalar);

    friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
    friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
    friend Operator operator*(Operator lhs, Complex s) { return lhs *= s; }
    friend Operator operator*(Complex s, Operator rhs) { return rhs *= s; }
    friend Operator operator*(const Operator& lhs, const Operator& rhs);

private:
    SpaceConfig space_;
    Matrix matrix_;
};

Operator commutator(const Operator& a, const Operator& b);

// Truncated resonator lowering operator: a(i, i+1) = sqrt(i+1).
Operator annihilation(int n_fock);

Operator number(int n_fock);

struct QubitOps {
    Operator sigma_z;
    Operator sigma_plus;
    Operator sigma_minus;
};

QubitOps qubit_ops();

// Kronecker product A (x) B; the factor labels multiply component-wise.
Operator tensor(const Operator& a, const Operator& b);

// Lift single-factor operators onto the composite space `space`.
Operator on_resonator(const Operator& op, const SpaceConfig& space);
Operator on_qubit(const Operator& op, const SpaceConfig& space);

}  // namespace cqed
