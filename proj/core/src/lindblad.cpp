#include "cqed/lindblad.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SparseLU>

#include "cqed/error.hpp"
#include "cqed/units.hpp"

namespace cqed {

namespace {

using Triplets = std::vector<Eigen::Triplet<Complex>>;

// Appends scale * (outer (x) inner) to `out`, skipping exact zeros.
void kron_triplets(const Matrix& outer, const Matrix& inner, Complex scale, Triplets& out) {
    const Eigen::Index d = inner.rows();
    for (Eigen::Index j = 0; j < outer.cols(); ++j) {
        for (Eigen::Index i = 0; i < outer.rows(); ++i) {
            const Complex o = outer(i, j);
            if (o == Complex{}) continue;
            for (Eigen::Index l = 0; l < inner.cols(); ++l) {
                for (Eigen::Index k = 0; k < inner.rows(); ++k) {
                    const Complex v = inner(k, l);
                    if (v == Complex{}) continue;
                    out.emplace_back(static_cast<int>(i * d + k), static_cast<int>(j * d + l),
                                     scale * o * v);
                }
            }
        }
    }
}

void dissipator_triplets(const Matrix& a, double rate, Triplets& out) {
    if (rate == 0.0) return;
    const Eigen::Index d = a.rows();
    const Matrix id = Matrix::Identity(d, d);
    const Matrix ada = a.adjoint() * a;
    kron_triplets(a.conjugate(), a, rate, out);
    kron_triplets(id, ada, -0.5 * rate, out);
    kron_triplets(ada.transpose(), id, -0.5 * rate, out);
}

void commutator_triplets(const Matrix& h, Triplets& out) {
    const Eigen::Index d = h.rows();
    const Matrix id = Matrix::Identity(d, d);
    const Complex i{0.0, 1.0};
    kron_triplets(id, h, -i, out);
    kron_triplets(h.transpose(), id, i, out);
}

struct JumpOperators {
    Matrix a;
    Matrix sigma_minus;
    Matrix sigma_z;
};

JumpOperators jump_operators(const SpaceConfig& space) {
    const QubitOps q = qubit_ops();
    return {on_resonator(annihilation(space.n_fock), space).matrix(),
            on_qubit(q.sigma_minus, space).matrix(), on_qubit(q.sigma_z, space).matrix()};
}

double max_abs(const SparseMatrix& m) {
    double best = 0.0;
    for (int k = 0; k < m.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
            best = std::max(best, std::abs(it.value()));
        }
    }
    return best;
}

}  // namespace

Vector vectorize(const Matrix& rho) {
    return Eigen::Map<const Vector>(rho.data(), rho.size());
}

Matrix unvectorize(const Vector& v, int dim) {
    if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
        throw DimensionError("vector length is not dim^2");
    }
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Matrix dissipator(const Operator& a) {
    Triplets t;
    dissipator_triplets(a.matrix(), 1.0, t);
    const Eigen::Index n = a.matrix().size();
    SparseMatrix s(n, n);
    s.setFromTriplets(t.begin(), t.end());
    return Matrix(s);
}

Matrix Liouvillian::apply(const Matrix& rho) const {
    return unvectorize(matrix * vectorize(rho), space.dim());
}

LiouvillianBuilder::LiouvillianBuilder(SystemParams params, SpaceConfig space)
    : params_(std::move(params)), space_(space) {
    space_.validate();
    if (space_.n_qubit != 2) {
        throw DimensionError("the master equation is defined for a two-level qubit");
    }
    params_.validate();
    const JumpOperators ops = jump_operators(space_);
    const Rates& r = params_.rates;
    dissipator_triplets(ops.a, r.kappa_minus, dissipative_);
    dissipator_triplets(ops.a.adjoint(), r.kappa_plus, dissipative_);
    dissipator_triplets(ops.sigma_minus, r.gamma_minus, dissipative_);
    dissipator_triplets(ops.sigma_minus.adjoint(), r.gamma_plus, dissipative_);
    dissipator_triplets(ops.sigma_z, 0.5 * r.gamma_phi, dissipative_);
    has_dissipation_ = r.kappa_minus > 0 || r.kappa_plus > 0 || r.gamma_minus > 0 ||
                       r.gamma_plus > 0 || r.gamma_phi > 0;
}

Liouvillian LiouvillianBuilder::build(const DriveSpec& drive) const {
    drive.validate();
    const Operator h = h_total_rotating(params_, drive, space_);
    Triplets t = dissipative_;
    commutator_triplets(h.matrix(), t);
    const int n = space_.dim() * space_.dim();
    Liouvillian l{space_, SparseMatrix(n, n), has_dissipation_};
    l.matrix.setFromTriplets(t.begin(), t.end());
    l.matrix.makeCompressed();
    return l;
}

Liouvillian build_liouvillian(const SystemParams& params, const DriveSpec& drive,
                              const SpaceConfig& space) {
    return LiouvillianBuilder(params, space).build(drive);
}

std::string_view to_string(SolverKind kind) {
    switch (kind) {
        case SolverKind::SparseLU: return "sparse-lu";
        case SolverKind::DenseLU: return "dense-lu";
    }
    return "unknown";
}

double SteadyState::sigma_z() const {
    // sigma_z = diag(-1, +1) on every Fock block.
    double sum = 0.0;
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        sum += (i % 2 == 0 ? -1.0 : 1.0) * rho(i, i).real();
    }
    return sum;
}

std::vector<double> SteadyState::fock_populations(const SpaceConfig& space) const {
    std::vector<double> p(static_cast<std::size_t>(space.n_fock), 0.0);
    for (int n = 0; n < space.n_fock; ++n) {
        for (int q = 0; q < space.n_qubit; ++q) {
            p[static_cast<std::size_t>(n)] += rho(space.index(n, q), space.index(n, q)).real();
        }
    }
    return p;
}

double SteadyState::excited_population(const SpaceConfig& space) const {
    double pe = 0.0;
    for (int n = 0; n < space.n_fock; ++n) {
        pe += rho(space.index(n, 1), space.index(n, 1)).real();
    }
    return pe;
}

SteadyState steady_state(const Liouvillian& liouvillian, SolverKind solver) {
    if (!liouvillian.dissipative) {
        throw DegenerateSteadyStateError(
            "no dissipation: every eigenprojector of H is stationary, so the steady state is not "
            "unique; set at least one of kappa_minus, kappa_plus, gamma_minus, gamma_plus, gamma_phi");
    }
    const int d = liouvillian.space.dim();
    const int n = d * d;
    const double scale = max_abs(liouvillian.matrix);
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw DegenerateSteadyStateError("Liouvillian is zero or non-finite");
    }

    // Row 0 (the d rho_00 / dt equation) is replaced by Tr rho = 1. The rest of
    // L is normalized to unit max-norm so the trace row is of comparable size.
    SparseMatrix system = liouvillian.matrix / scale;
    system.prune([](Eigen::Index row, Eigen::Index, const Complex&) { return row != 0; });
    {
        Triplets trace_row;
        trace_row.reserve(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) trace_row.emplace_back(0, i + d * i, Complex{1.0, 0.0});
        SparseMatrix t(n, n);
        t.setFromTriplets(trace_row.begin(), trace_row.end());
        system += t;
    }
    Vector rhs = Vector::Zero(n);
    rhs(0) = 1.0;

    Vector x;
    if (solver == SolverKind::SparseLU) {
        system.makeCompressed();
        Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
        lu.compute(system);
        if (lu.info() != Eigen::Success) {
            throw DegenerateSteadyStateError("sparse LU factorization failed: " + lu.lastErrorMessage());
        }
        x = lu.solve(rhs);
    } else {
        Eigen::PartialPivLU<Matrix> lu{Matrix(system)};
        if (!(lu.rcond() > 1e-14)) {
            throw DegenerateSteadyStateError("steady-state system is numerically singular");
        }
        x = lu.solve(rhs);
    }
    if (!x.allFinite()) {
        throw DegenerateSteadyStateError("steady-state solve produced non-finite values");
    }

    SteadyState ss;
    ss.rho = unvectorize(x, d);
    ss.solver = solver;
    ss.residual_norm = (liouvillian.matrix * x).norm();
    if (ss.residual_norm > kRelativeResidualTolerance * scale) {
        std::ostringstream os;
        os << "steady-state residual " << ss.residual_norm << " exceeds tolerance "
           << kRelativeResidualTolerance * scale << " (system may be degenerate)";
        throw ConvergenceError(os.str());
    }

    const double herm = (ss.rho - ss.rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermiticityTolerance) {
        std::ostringstream os;
        os << "steady state not Hermitian (max deviation " << herm << ")";
        throw DegenerateSteadyStateError(os.str());
    }
    const double trace_err = std::abs(ss.rho.trace() - Complex{1.0, 0.0});
    if (trace_err > kTraceTolerance) {
        std::ostringstream os;
        os << "steady state trace off by " << trace_err;
        throw ConvergenceError(os.str());
    }
    const Matrix herm_part = 0.5 * (ss.rho + ss.rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(herm_part, Eigen::EigenvaluesOnly);
    const double min_eig = eig.eigenvalues().minCoeff();
    if (min_eig < -kPositivityTolerance) {
        std::ostringstream os;
        os << "steady state has eigenvalue " << min_eig << " below -" << kPositivityTolerance
           << " (truncation too small?)";
        throw PositivityError(os.str());
    }
    return ss;
}

double effective_temperature(double omega, double up_rate, double down_rate) {
    if (down_rate <= 0.0) {
        throw UndefinedError("effective temperature needs a positive down rate");
    }
    if (up_rate <= 0.0) return 0.0;
    const double ratio = up_rate / down_rate;
    if (ratio >= 1.0) {
        throw UndefinedError("up/down ratio >= 1 has no finite positive temperature");
    }
    return units::hbar * omega / (units::k_boltzmann * std::log(1.0 / ratio));
}

}  // namespace cqed
