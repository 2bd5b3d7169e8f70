#include "actsim/statevec.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace actsim {

Eigen::Matrix2cd rotation_matrix(const RotationSpec& rot) {
    const double nx = rot.axis[0], ny = rot.axis[1], nz = rot.axis[2];
    const double len = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (std::abs(len - 1.0) > 1e-12)
        throw std::invalid_argument("rotation axis must be a unit vector");
    const double c = std::cos(rot.angle / 2.0);
    const double s = std::sin(rot.angle / 2.0);
    const cplx i(0.0, 1.0);
    Eigen::Matrix2cd r;
    // cos(t/2) 1 - i sin(t/2) (nx X + ny Y + nz Z) in the {|g>,|e>} basis.
    r(0, 0) = c - i * s * nz;
    r(0, 1) = -i * s * (nx - i * ny);
    r(1, 0) = -i * s * (nx + i * ny);
    r(1, 1) = c + i * s * nz;
    return r;
}

StateVector::StateVector(int n, Eigen::VectorXcd amps) : n_qubits(n), amplitudes(std::move(amps)) {
    if (n < 0 || n > 62) throw DimensionError("qubit count out of range");
    if (amplitudes.size() != (std::int64_t{1} << n))
        throw DimensionError("amplitude vector length is not 2^n");
    const double nrm = amplitudes.norm();
    if (std::abs(nrm - 1.0) > 1e-9) throw DimensionError("state vector is not normalized");
}

StateVector StateVector::ground(int n) { return basis(n, 0); }

StateVector StateVector::basis(int n, std::uint64_t index) {
    if (index >= (std::uint64_t{1} << n)) throw IndexError("basis index out of range");
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(std::int64_t{1} << n);
    amps(static_cast<std::int64_t>(index)) = 1.0;
    return StateVector(n, std::move(amps));
}

void apply_projector_controlled_rotation_inplace(StateVector& state, int target,
                                                 const std::vector<int>& neighbors,
                                                 const Eigen::Matrix2cd& r) {
    const int n = state.n_qubits;
    if (target < 0 || target >= n) throw IndexError("target qubit out of range");
    std::uint64_t neighbor_mask = 0;
    for (int q : neighbors) {
        if (q < 0 || q >= n) throw IndexError("neighbor qubit out of range");
        if (q == target) throw IndexError("target listed among its own neighbors");
        neighbor_mask |= state.bit_mask(q);
    }
    const std::uint64_t tmask = state.bit_mask(target);
    const std::uint64_t dim = std::uint64_t{1} << n;
    auto& a = state.amplitudes;
    for (std::uint64_t i0 = 0; i0 < dim; ++i0) {
        if (i0 & tmask) continue;          // visit each pair once, via its target-ground member
        if (i0 & neighbor_mask) continue;  // some neighbor excited: blockade, leave untouched
        const std::uint64_t i1 = i0 | tmask;
        const cplx a0 = a(static_cast<std::int64_t>(i0));
        const cplx a1 = a(static_cast<std::int64_t>(i1));
        a(static_cast<std::int64_t>(i0)) = r(0, 0) * a0 + r(0, 1) * a1;
        a(static_cast<std::int64_t>(i1)) = r(1, 0) * a0 + r(1, 1) * a1;
    }
}

StateVector apply_projector_controlled_rotation(const StateVector& state, int target,
                                                const std::vector<int>& neighbors,
                                                const RotationSpec& rotation) {
    StateVector out = state;
    apply_projector_controlled_rotation_inplace(out, target, neighbors, rotation_matrix(rotation));
    return out;
}

double state_fidelity(const StateVector& a, const StateVector& b) {
    if (a.n_qubits != b.n_qubits) throw DimensionError("state dimensions differ");
    const cplx overlap = a.amplitudes.dot(b.amplitudes);
    return std::norm(overlap);
}

double unitarity_defect(const Operator& u) {
    const Operator d = u.adjoint() * u - Operator::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

bool is_unitary(const Operator& u, double tol) {
    return u.rows() == u.cols() && unitarity_defect(u) <= tol;
}

double operator_distance(const Operator& u, const Operator& v, DistanceMode mode) {
    if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols())
        throw DimensionError("operator dimensions differ");
    if (mode == DistanceMode::spectral_norm) {
        Eigen::JacobiSVD<Operator> svd(u - v);
        return svd.singularValues()(0);
    }
    if (!is_unitary(u) || !is_unitary(v))
        throw std::invalid_argument("phase-insensitive distance requires unitary inputs");
    // ||u - e^{ip} v||_2 = max_k |1 - e^{ip} l_k| with l_k the eigenphases of
    // u^dag v; the optimum centers the smallest arc containing the phases at 0.
    Eigen::ComplexEigenSolver<Operator> es(u.adjoint() * v, false);
    std::vector<double> phases;
    phases.reserve(static_cast<size_t>(es.eigenvalues().size()));
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
        phases.push_back(std::arg(es.eigenvalues()(k)));
    std::sort(phases.begin(), phases.end());
    const double two_pi = 2.0 * M_PI;
    double max_gap = phases.front() + two_pi - phases.back();
    for (size_t k = 1; k < phases.size(); ++k) max_gap = std::max(max_gap, phases[k] - phases[k - 1]);
    const double half_span = (two_pi - max_gap) / 2.0;
    return 2.0 * std::sin(std::min(half_span, M_PI) / 2.0);
}

double average_gate_fidelity(const Operator& u, const Operator& v) {
    if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols())
        throw DimensionError("operator dimensions differ");
    const double d = static_cast<double>(u.rows());
    const cplx tr = (u.adjoint() * v).trace();
    return (std::norm(tr) + d) / (d * d + d);
}

void require_dense_capacity(int n_qubits) {
    if (n_qubits > kMaxDenseQubits)
        throw DimensionError("dense operators are limited to " + std::to_string(kMaxDenseQubits) +
                             " qubits; use structured application");
}

}  // namespace actsim
