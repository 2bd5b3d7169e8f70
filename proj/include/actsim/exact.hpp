#pragma once

#include "actsim/architecture.hpp"
#include "actsim/statevec.hpp"

#include <string>
#include <vector>

namespace actsim::exact {

struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class EnvelopeShape { flat_top, cosine_ramp_flat_top };

/// One drive segment on a species. peak_rabi is the regular-class Rabi value;
/// crossed and double-crossed members scale it by 2x and 4x.
struct PulseEnvelope {
    EnvelopeShape shape = EnvelopeShape::cosine_ramp_flat_top;
    double peak_rabi = 0.0;
    double phase = 0.0;
    double duration = 0.0;
    double ramp_fraction = 0.1;

    /// Instantaneous regular-class Rabi value at 0 <= t <= duration.
    double omega(double t) const;
    /// Integral of omega over the segment.
    double area() const;
};

/// Solves the segment duration so that the integrated Rabi area equals
/// `theta` for a regular-class qubit (negative angles flip the drive phase).
PulseEnvelope calibrated_envelope(EnvelopeShape shape, double peak_rabi, double phase, double theta,
                                  double ramp_fraction = 0.1);

struct Segment {
    std::string species;
    PulseEnvelope envelope;
};

/// Ordered drive program. Segments within one group run simultaneously and
/// must target distinct species whose blockade supports do not overlap;
/// groups run back to back.
struct DriveSchedule {
    std::vector<std::vector<Segment>> groups;

    void append(Segment s) { groups.push_back({std::move(s)}); }
    void append_simultaneous(std::vector<Segment> s) { groups.push_back(std::move(s)); }
    double total_duration() const;
    bool empty() const { return groups.empty(); }
};

struct SimParams {
    double dt = 0.05;                    // initial step; refined automatically
    double unitarity_tolerance = 1e-10;  // acceptance bound on the propagator defect
    double accuracy_tolerance = 1e-9;    // step-halving convergence target
    int max_refinements = 14;
};

/// Instantaneous drive values for one species.
struct DriveTerm {
    std::string species;
    double omega = 0.0;
    double phi = 0.0;
};

/// Rotating-frame Hamiltonian (hbar = 1): per-qubit drive terms with the
/// class-scaled Rabi values plus the 2*zeta penalty on every doubly excited
/// edge.
Operator build_rwa_hamiltonian(const arch::ArchitectureGraph& g, const std::vector<DriveTerm>& drives);

struct PropagationResult {
    StateVector state;
    double duration = 0.0;
    long steps = 0;
    double dt_used = 0.0;
    double refinement_error = 0.0;  // state distance between the last two refinements
    double norm_defect = 0.0;       // | ||psi|| - 1 |
};

/// Evolves a state through the schedule with a Strang-split midpoint stepper:
/// every step is a product of exactly unitary factors (diagonal interaction
/// phases and per-qubit rotations), so unitarity holds at any qubit count and
/// the step size only controls splitting accuracy. dt is halved until the
/// result is stable to params.accuracy_tolerance.
PropagationResult propagate(const arch::ArchitectureGraph& g, const DriveSchedule& schedule,
                            const SimParams& params, const StateVector& state);

struct PropagatorResult {
    Operator u;
    double unitarity_defect = 0.0;
    double duration = 0.0;
    long steps = 0;
    double refinement_error = 0.0;
};

/// Full propagator matrix, built column by column (dense-capacity limited).
PropagatorResult propagator_matrix(const arch::ArchitectureGraph& g, const DriveSchedule& schedule,
                                   const SimParams& params);

// ---- comparisons against the blockade-limit model ---------------------------

enum class SweepOp { cz, ccz, freeze, pi_pulse };
const char* to_string(SweepOp op);
SweepOp sweep_op_from_string(const std::string& s);

struct SweepRow {
    SweepOp op = SweepOp::cz;
    double eta = 0.0;
    double distance = 0.0;            // phase-insensitive operator distance
    double avg_gate_fidelity = 0.0;
    double runtime_s = 0.0;           // simulated drive time of the compared pulse
    double unitarity_defect = 0.0;
};

/// Star graph used by the gate sweeps: one actuator coupled to m qubits.
arch::ArchitectureGraph make_gate_star(int m_neighbors, double zeta = 1.0);
/// One driven qubit coupled to its own actuator (freeze / pi_pulse sweeps).
arch::ArchitectureGraph make_freeze_pair(double zeta = 1.0);

/// For each blockade ratio, drives the calibrated pulse through the exact
/// engine and compares against the idealized operator; rows sorted by eta.
std::vector<SweepRow> effective_vs_exact(const arch::ArchitectureGraph& g, SweepOp op,
                                         const std::vector<double>& eta_values,
                                         const SimParams& params = {});

/// CSV with header op,eta,distance,avg_gate_fidelity,runtime_s.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace actsim::exact
