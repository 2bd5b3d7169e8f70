#pragma once

#include "actsim/architecture.hpp"
#include "actsim/effective.hpp"
#include "actsim/exact.hpp"
#include "actsim/statevec.hpp"

#include <optional>
#include <string>
#include <vector>

namespace actsim::seq {

struct CompileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SearchOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class InstructionKind { pulse, charge, discharge, barrier };

struct Instruction {
    InstructionKind kind = InstructionKind::barrier;
    effective::SpeciesPulse pulse;  // kind == pulse
    int actuator = -1;              // kind == charge/discharge

    static Instruction make_pulse(effective::SpeciesPulse p) {
        Instruction i;
        i.kind = InstructionKind::pulse;
        i.pulse = std::move(p);
        return i;
    }
    static Instruction make_charge(int a) {
        Instruction i;
        i.kind = InstructionKind::charge;
        i.actuator = a;
        return i;
    }
    static Instruction make_discharge(int a) {
        Instruction i;
        i.kind = InstructionKind::discharge;
        i.actuator = a;
        return i;
    }
    static Instruction make_barrier() { return {}; }
};

struct ScheduleIR {
    std::vector<Instruction> ops;
    std::string source;  // originating request, for reports

    bool empty() const { return ops.empty(); }
};

/// One instruction per line:
///   PULSE <species> r:<t>,<nx>,<ny>,<nz> x:<t>,<nx>,<ny>,<nz> [xx:<t>,<nx>,<ny>,<nz>]
///   CHARGE <idx> | DISCHARGE <idx> | BARRIER
/// Angles and axis components carry 9 significant digits; printing a parsed
/// IR reproduces the text byte for byte.
std::string to_text(const ScheduleIR& ir);
ScheduleIR from_text(const std::string& text);

enum class GateName { cz, ccz, cnot, swap_step, icc_shift, modular_swap, freeze_region, unfreeze_region };

const char* to_string(GateName g);
GateName gate_name_from_string(const std::string& s);

struct GateRequest {
    GateName name = GateName::cz;
    /// cz/ccz: {mediator}; cnot: {control, target[, mediator]};
    /// modular_swap: {bridge[, qL, qR]}.
    std::vector<int> qubits;
    /// freeze_region / unfreeze_region operand.
    std::string region;
    effective::SwapParity parity = effective::SwapParity::even_clockwise_odd_anticlockwise;
    bool alternate_parity = false;
    int repetitions = 1;
};

/// Lowers a gate request to an ordered pulse/charge program for the graph.
ScheduleIR compile(const arch::ArchitectureGraph& g, const GateRequest& req);

struct EngineSpec {
    enum class Kind { effective, exact } kind = Kind::effective;
    exact::SimParams params;
    double eta = 80.0;  // sets the regular-class peak Rabi to zeta/eta
    exact::EnvelopeShape envelope = exact::EnvelopeShape::cosine_ramp_flat_top;
    double ramp_fraction = 0.1;
    /// Level-set pulses drive the actuator line far above the interaction
    /// scale so they act regardless of neighbor state.
    double strong_rabi_factor = 200.0;
    double tol = 1e-9;

    static EngineSpec effective_engine() { return {}; }
    static EngineSpec exact_engine(double eta_value) {
        EngineSpec s;
        s.kind = Kind::exact;
        s.eta = eta_value;
        return s;
    }
};

struct ReplayResult {
    StateVector state;
    double total_duration = 0.0;      // simulated drive time (exact engine)
    double norm_defect = 0.0;
    double max_refinement_error = 0.0;
};

/// Applies the IR in order. Charge/discharge act as level toggles on the
/// strong-drive actuator line; pulses rotating actuator-role qubits insist
/// that the actuator enters at a definite classical level.
ReplayResult replay(const arch::ArchitectureGraph& g, const ScheduleIR& ir, const StateVector& state,
                    const EngineSpec& engine);

/// Breadth-first search for the shortest pulse string whose replay matches
/// `target` up to a global phase (tolerance 1e-8). Returns the
/// lexicographically smallest shortest program, or nullopt when the depth cap
/// is exhausted. Caps: n <= 8 qubits, depth <= 8, alphabet <= 16.
std::optional<ScheduleIR> search_sequence(const arch::ArchitectureGraph& g, const Operator& target,
                                          const std::vector<effective::SpeciesPulse>& alphabet,
                                          int max_depth);

// ---- built-in sequence library -------------------------------------------------

struct LibraryEntry {
    std::string gate;
    std::string geometry;
    std::string construction;
    std::string provenance;
    bool available = true;
    std::string note;
};

struct SequenceLibrary {
    int version = 0;
    std::vector<LibraryEntry> entries;

    const LibraryEntry* find(const std::string& gate) const;
};

/// Parses the embedded library description and verifies each available
/// entry's construction against its contract on a reference geometry.
const SequenceLibrary& builtin_library();

/// Raw JSON text of the embedded library (also shipped under docs/).
std::string builtin_library_text();

}  // namespace actsim::seq
