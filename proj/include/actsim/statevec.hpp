#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace actsim {

using cplx = std::complex<double>;
using Operator = Eigen::MatrixXcd;

/// Dense operators are only allowed up to this many qubits; larger systems
/// must go through the in-place structured application paths.
inline constexpr int kMaxDenseQubits = 14;

struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IndexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Single-qubit rotation by `angle` about the Bloch-sphere unit vector `axis`.
struct RotationSpec {
    double angle = 0.0;
    double axis[3] = {1.0, 0.0, 0.0};

    static RotationSpec about_x(double theta) { return {theta, {1, 0, 0}}; }
    static RotationSpec about_y(double theta) { return {theta, {0, 1, 0}}; }
    static RotationSpec about_z(double theta) { return {theta, {0, 0, 1}}; }
};

/// exp(-i angle/2 axis.sigma) as a 2x2 matrix in the {|g>,|e>} basis.
Eigen::Matrix2cd rotation_matrix(const RotationSpec& rot);

/// Pure state over n qubits. Basis convention: qubit 0 is the most
/// significant bit of the basis index, |g> maps to bit 0 and |e> to bit 1.
struct StateVector {
    int n_qubits = 0;
    Eigen::VectorXcd amplitudes;

    StateVector() = default;
    StateVector(int n, Eigen::VectorXcd amps);

    /// |g...g>
    static StateVector ground(int n);
    /// Computational basis state for the given index.
    static StateVector basis(int n, std::uint64_t index);

    std::int64_t dim() const { return amplitudes.size(); }
    double norm() const { return amplitudes.norm(); }

    /// Bit value of `qubit` within basis index `index` (qubit 0 = MSB).
    bool bit(std::uint64_t index, int qubit) const {
        return (index >> (n_qubits - 1 - qubit)) & 1u;
    }
    std::uint64_t bit_mask(int qubit) const {
        return std::uint64_t{1} << (n_qubits - 1 - qubit);
    }
};

/// Applies the 2x2 rotation to `target`, restricted to amplitudes whose
/// `neighbors` bits are all ground; every other amplitude is left untouched.
StateVector apply_projector_controlled_rotation(const StateVector& state, int target,
                                                const std::vector<int>& neighbors,
                                                const RotationSpec& rotation);

/// In-place variant taking an explicit 2x2 matrix.
void apply_projector_controlled_rotation_inplace(StateVector& state, int target,
                                                 const std::vector<int>& neighbors,
                                                 const Eigen::Matrix2cd& r);

/// |<a|b>|^2
double state_fidelity(const StateVector& a, const StateVector& b);

enum class DistanceMode { spectral_norm, phase_insensitive };

/// Spectral-norm distance ||u - v||_2, optionally minimized over a global
/// phase on v. The phase-insensitive mode requires both inputs unitary.
double operator_distance(const Operator& u, const Operator& v, DistanceMode mode);

/// (|Tr(u^dag v)|^2 + d) / (d^2 + d) for unitaries of dimension d.
double average_gate_fidelity(const Operator& u, const Operator& v);

/// Max-norm of U^dag U - 1.
double unitarity_defect(const Operator& u);
bool is_unitary(const Operator& u, double tol = 1e-10);

/// Throws DimensionError when 2^n exceeds the dense-operator budget.
void require_dense_capacity(int n_qubits);

}  // namespace actsim
