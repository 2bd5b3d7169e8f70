#pragma once

#include "actsim/architecture.hpp"
#include "actsim/statevec.hpp"

#include <optional>
#include <string>
#include <vector>

namespace actsim::effective {

struct BlockedOperationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LeakageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One global pulse on a species. Each coupling-class subset carries its own
/// rotation; an unset rotation means that subset is left alone.
struct SpeciesPulse {
    std::string species;
    std::optional<RotationSpec> regular_rotation;
    std::optional<RotationSpec> crossed_rotation;
    std::optional<RotationSpec> double_crossed_rotation;

    const std::optional<RotationSpec>& rotation_for(arch::CouplingClass c) const {
        switch (c) {
            case arch::CouplingClass::regular: return regular_rotation;
            case arch::CouplingClass::crossed: return crossed_rotation;
            case arch::CouplingClass::double_crossed: return double_crossed_rotation;
        }
        return regular_rotation;
    }
};

// ---- conditional rotations and species pulses ------------------------------

/// Blockade-conditional rotation of `target`: rotate only where every graph
/// neighbor of the target is in the ground state.
Operator conditional_rotation(const arch::ArchitectureGraph& g, int target, const RotationSpec& rot);
void apply_conditional_rotation(const arch::ArchitectureGraph& g, int target, const RotationSpec& rot,
                                StateVector& state);

/// Product of conditional rotations over every member of the pulsed species
/// (the per-member factors commute, so the product order is immaterial).
Operator species_pulse(const arch::ArchitectureGraph& g, const SpeciesPulse& pulse);
void apply_species_pulse(const arch::ArchitectureGraph& g, const SpeciesPulse& pulse,
                         StateVector& state);

/// Applies pulses in list order (front of the list acts first).
StateVector apply_sequence(const arch::ArchitectureGraph& g, const std::vector<SpeciesPulse>& pulses,
                           StateVector state);

// ---- native multi-qubit gates ----------------------------------------------

/// The 2pi-pulse gate mediated by `actuator`: -1 on the subspace where every
/// neighbor of the actuator is ground, +1 elsewhere, identity on the actuator
/// factor. Caller contract: the actuator should be discharged (|g>) at entry.
Operator native_controlled_phase(const arch::ArchitectureGraph& g, int actuator);
void apply_native_controlled_phase(const arch::ArchitectureGraph& g, int actuator, StateVector& state);

/// Conjugates `op` by X on each listed qubit (a ground/excited relabeling).
/// Mapping the distinguished all-ground corner of the native gate to the
/// all-excited corner yields the conventional controlled-phase diagonal.
Operator relabel_ground_excited(const Operator& op, const std::vector<int>& qubits, int n_qubits);

/// Canonical controlled-phase form of the native gate: relabeled on the
/// actuator's neighbors and normalized to unit leading phase.
Operator canonical_controlled_phase(const arch::ArchitectureGraph& g, int actuator);

// ---- actuator control -------------------------------------------------------

enum class ActuatorLevel { ground, excited };

/// Sets an actuator via a blockade-conditional pi rotation. No-op when the
/// actuator already sits at the requested level. Throws BlockedOperationError
/// when neighbor excitation would inhibit the pulse, and for actuators caught
/// in superposition.
StateVector actuator_set(const arch::ArchitectureGraph& g, int actuator, ActuatorLevel level,
                         const StateVector& state, double tol = 1e-9);

/// Unconditional level reset (the strong-drive limit, where the pulse
/// overwhelms the blockade). Used for re-isolation and freeze-mask charges.
void actuator_reset_inplace(const arch::ArchitectureGraph& g, int actuator, ActuatorLevel level,
                            StateVector& state, double tol = 1e-9);

/// <H_QA> = (omega_QA / 2)(p_e - p_g), with omega the actuator's transition
/// frequency and hbar = 1.
double actuator_energy_expectation(const arch::ArchitectureGraph& g, int actuator,
                                   const StateVector& state);

/// Probability that at least one neighbor of `q` is excited.
double blocked_weight(const arch::ArchitectureGraph& g, int q, const StateVector& state);
/// Excited-state population of one qubit.
double excited_population(const StateVector& state, int q);

// ---- freezing ----------------------------------------------------------------

/// Species pulse with the region members' rotations replaced by identity
/// (the idealized action once every region actuator is excited). Every region
/// member must have an actuator partner.
Operator frozen_propagator(const arch::ArchitectureGraph& g, const arch::RegionMask& region,
                           const SpeciesPulse& pulse);
void apply_frozen_propagator(const arch::ArchitectureGraph& g, const arch::RegionMask& region,
                             const SpeciesPulse& pulse, StateVector& state);

// ---- logical encodings -------------------------------------------------------

enum class EncodingKind { ICC, ICS };

struct EncodedState {
    EncodingKind kind = EncodingKind::ICS;
    int position = 0;  // interface column (ICC only), 0 <= k <= N
    int n_logical = 0;
    Eigen::VectorXcd logical_amplitudes;  // length 2^n_logical, normalized
};

struct DecodeResult {
    EncodedState encoded;
    double leakage = 0.0;
};

/// Deterministic module layouts recovered from the builder-stamped
/// module_boundary masks.
struct ConveyorLayout {
    int n_logical = 0;
    arch::ConveyorVariant variant = arch::ConveyorVariant::three_register;
    int block = 3;
    std::vector<int> icq;                     // Q_1..Q_N (graph indices)
    std::vector<std::vector<int>> registers;  // S_{1,2}, S_{2,3}, ..., S_{N,1}
    int off_loop = -1;
    std::vector<int> members;
    std::string mask_name;
};

struct LadderLayout {
    int n_logical = 0;
    arch::LadderVariant variant = arch::LadderVariant::three_species;
    int row_len = 0;
    std::vector<int> members;  // row-major rows, then couplers, then actuators
    std::string mask_name;
    int row_col(int row, int col) const { return members[static_cast<size_t>(row * row_len + col)]; }
};

std::vector<ConveyorLayout> conveyor_layouts(const arch::ArchitectureGraph& g);
std::vector<LadderLayout> ladder_layouts(const arch::ArchitectureGraph& g);

/// Physical product state for an encoded logical state. The graph must hold
/// exactly one module of the matching geometry.
StateVector encode(const arch::ArchitectureGraph& g, const EncodedState& enc);

/// Recovers logical amplitudes; throws LeakageError when the weight outside
/// the code space exceeds `tol`.
DecodeResult decode(const arch::ArchitectureGraph& g, const StateVector& state, EncodingKind kind,
                    int position, double tol = 1e-9);

/// Product-state preparation for bridged multi-module graphs: one encoding
/// per module (mask order), bridge actuators at the requested level, all
/// remaining qubits ground.
StateVector encode_bridged(const arch::ArchitectureGraph& g, const std::vector<EncodedState>& encs,
                           ActuatorLevel bridge_level);

// ---- transport and modular interconnect --------------------------------------

/// The two direction labelings of one round of pairwise neighbor swaps. A
/// round is a product of disjoint transpositions, so the two labelings are
/// mutual inverses and act identically.
enum class SwapParity { even_clockwise_odd_anticlockwise, even_anticlockwise_odd_clockwise };

/// One global swap round on a conveyor module: logical labels permute as
/// |x1 x2 x3 ... xN> -> |xN x3 x2 ... x1>; register blocks are untouched.
Operator global_swap_step(const arch::ArchitectureGraph& g, SwapParity parity);
void apply_global_swap_step(const arch::ArchitectureGraph& g, SwapParity parity, StateVector& state);

/// The species-pulse realization of CNOT(control -> target) through a shared
/// mediator: H-layer on the target, mediated conditional phase, local Z layer
/// on both, inverse H-layer. Requires control/target/mediator to be
/// class-addressable within their species.
std::vector<SpeciesPulse> cnot_pulse_program(const arch::ArchitectureGraph& g, int control, int target,
                                             int mediator);

/// True when `q` is the only member of its (species, coupling-class) subset.
bool class_addressable(const arch::ArchitectureGraph& g, int q);

/// Boundary swap between two bridged modules: requires the bridge actuator
/// discharged at entry, exchanges the logical contents of qL and qR through
/// three mediated CNOTs, and re-excites the bridge actuator on exit.
StateVector modular_swap(const arch::ArchitectureGraph& g, int bridge_actuator, int q_left,
                         int q_right, const StateVector& state);

}  // namespace actsim::effective
