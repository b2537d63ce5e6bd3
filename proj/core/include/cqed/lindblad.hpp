#pragma once

// Lindblad master equation in superoperator form.
//
// Density matrices are vectorized by column stacking: vec(rho)[i + d*j] =
// rho(i, j). Under this convention vec(A rho B) = (B^T (x) A) vec(rho), so the
// coherent part -i[H, rho] becomes -i (I (x) H - H^T (x) I).

#include <string_view>

#include <Eigen/Sparse>

#include "cqed/model.hpp"
#include "cqed/operators.hpp"

namespace cqed {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

Vector vectorize(const Matrix& rho);
Matrix unvectorize(const Vector& v, int dim);

// D[A] rho = A rho A^dag - (A^dag A rho + rho A^dag A) / 2, as a dense
// d^2 x d^2 matrix acting on vec(rho).
Matrix dissipator(const Operator& a);

struct Liouvillian {
    SpaceConfig space;
    SparseMatrix matrix;
    // False when every dissipation rate is zero; the steady state is then not
    // unique.
    bool dissipative = false;

    int dim() const noexcept { return static_cast<int>(matrix.rows()); }
    Matrix dense() const { return Matrix(matrix); }
    Matrix apply(const Matrix& rho) const;
};

// Caches the drive-independent dissipative part so that sweeps only rebuild
// the Hamiltonian commutator per point. Immutable after construction and safe
// to share between threads.
class LiouvillianBuilder {
public:
    LiouvillianBuilder(SystemParams params, SpaceConfig space);

    Liouvillian build(const DriveSpec& drive) const;

    const SystemParams& params() const noexcept { return params_; }
    const SpaceConfig& space() const noexcept { return space_; }

private:
    SystemParams params_;
    SpaceConfig space_;
    std::vector<Eigen::Triplet<Complex>> dissipative_;
    bool has_dissipation_ = false;
};

// L = -i[H_tot, .] + kappa_- D[a] + kappa_+ D[a^dag] + Gamma_- D[sigma_-]
//     + Gamma_+ D[sigma_+] + (gamma_phi / 2) D[sigma_z]
Liouvillian build_liouvillian(const SystemParams& params, const DriveSpec& drive,
                              const SpaceConfig& space);

enum class SolverKind {
    SparseLU,  // Eigen::SparseLU with COLAMD ordering
    DenseLU,   // Eigen::PartialPivLU on the dense d^2 x d^2 system
};

std::string_view to_string(SolverKind kind);

struct SteadyState {
    Matrix rho;
    double residual_norm = 0.0;  // ||L vec(rho)||_2, in 1/s
    SolverKind solver = SolverKind::SparseLU;

    Complex expectation(const Operator& op) const { return (rho * op.matrix()).trace(); }
    double sigma_z() const;
    // Reduced resonator populations p_n = sum_q rho(nq, nq).
    std::vector<double> fock_populations(const SpaceConfig& space) const;
    double excited_population(const SpaceConfig& space) const;
};

inline constexpr double kHermiticityTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-8;
// ||L rho|| relative to ||L||_inf above this is a convergence failure.
inline constexpr double kRelativeResidualTolerance = 1e-9;

// Unique rho with L rho = 0 and Tr rho = 1. One row of L is replaced by the
// trace functional and the resulting linear system is solved directly.
// Throws DegenerateSteadyStateError when the system has no unique solution,
// ConvergenceError on an excessive residual and PositivityError when the
// result has eigenvalues below -1e-8.
SteadyState steady_state(const Liouvillian& liouvillian, SolverKind solver = SolverKind::SparseLU);

// Effective temperature implied by a down/up rate ratio at angular frequency
// omega: up/down = exp(-hbar omega / k_B T). Returns 0 for up == 0.
double effective_temperature(double omega, double up_rate, double down_rate);

}  // namespace cqed
