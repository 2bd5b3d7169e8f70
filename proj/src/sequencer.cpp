#include "actsim/sequencer.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_set>

namespace actsim::seq {

using arch::ArchitectureGraph;
using arch::CouplingClass;
using arch::Role;
using effective::SpeciesPulse;

// ---- IR text form ---------------------------------------------------------

namespace {

std::string format_number(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string format_rotation(const RotationSpec& r) {
    return format_number(r.angle) + "," + format_number(r.axis[0]) + "," + format_number(r.axis[1]) +
           "," + format_number(r.axis[2]);
}

RotationSpec parse_rotation(const std::string& text) {
    RotationSpec r;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf", &r.angle, &r.axis[0], &r.axis[1], &r.axis[2]) != 4)
        throw ParseError("bad rotation literal: " + text);
    return r;
}

const RotationSpec kIdentityRotation{0.0, {1.0, 0.0, 0.0}};

}  // namespace

std::string to_text(const ScheduleIR& ir) {
    std::ostringstream out;
    for (const auto& op : ir.ops) {
        switch (op.kind) {
            case InstructionKind::barrier: out << "BARRIER\n"; break;
            case InstructionKind::charge: out << "CHARGE " << op.actuator << "\n"; break;
            case InstructionKind::discharge: out << "DISCHARGE " << op.actuator << "\n"; break;
            case InstructionKind::pulse: {
                const auto& p = op.pulse;
                out << "PULSE " << p.species << " r:"
                    << format_rotation(p.regular_rotation.value_or(kIdentityRotation)) << " x:"
                    << format_rotation(p.crossed_rotation.value_or(kIdentityRotation));
                if (p.double_crossed_rotation)
                    out << " xx:" << format_rotation(*p.double_crossed_rotation);
                out << "\n";
                break;
            }
        }
    }
    return out.str();
}

ScheduleIR from_text(const std::string& text) {
    ScheduleIR ir;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word == "BARRIER") {
            ir.ops.push_back(Instruction::make_barrier());
        } else if (word == "CHARGE" || word == "DISCHARGE") {
            int idx = -1;
            if (!(ls >> idx)) throw ParseError("missing actuator index: " + line);
            ir.ops.push_back(word == "CHARGE" ? Instruction::make_charge(idx)
                                              : Instruction::make_discharge(idx));
        } else if (word == "PULSE") {
            SpeciesPulse p;
            if (!(ls >> p.species)) throw ParseError("missing species: " + line);
            std::string field;
            while (ls >> field) {
                if (field.rfind("r:", 0) == 0)
                    p.regular_rotation = parse_rotation(field.substr(2));
                else if (field.rfind("xx:", 0) == 0)
                    p.double_crossed_rotation = parse_rotation(field.substr(3));
                else if (field.rfind("x:", 0) == 0)
                    p.crossed_rotation = parse_rotation(field.substr(2));
                else
                    throw ParseError("unknown pulse field: " + field);
            }
            if (!p.regular_rotation || !p.crossed_rotation)
                throw ParseError("pulse line lacks r:/x: fields: " + line);
            ir.ops.push_back(Instruction::make_pulse(std::move(p)));
        } else {
            throw ParseError("unknown instruction: " + line);
        }
    }
    return ir;
}

const char* to_string(GateName g) {
    switch (g) {
        case GateName::cz: return "cz";
        case GateName::ccz: return "ccz";
        case GateName::cnot: return "cnot";
        case GateName::swap_step: return "swap_step";
        case GateName::icc_shift: return "icc_shift";
        case GateName::modular_swap: return "modular_swap";
        case GateName::freeze_region: return "freeze_region";
        case GateName::unfreeze_region: return "unfreeze_region";
    }
    return "cz";
}

GateName gate_name_from_string(const std::string& s) {
    for (GateName g : {GateName::cz, GateName::ccz, GateName::cnot, GateName::swap_step,
                       GateName::icc_shift, GateName::modular_swap, GateName::freeze_region,
                       GateName::unfreeze_region})
        if (s == to_string(g)) return g;
    throw CompileError("unknown gate: " + s);
}

// ---- compilation ------------------------------------------------------------

namespace {

bool in_bridge_mask(const ArchitectureGraph& g, int q) {
    for (const auto& m : g.masks())
        if (m.kind == arch::MaskKind::bridge &&
            std::binary_search(m.members.begin(), m.members.end(), q))
            return true;
    return false;
}

SpeciesPulse class_pulse(const ArchitectureGraph& g, int q, const RotationSpec& rot) {
    SpeciesPulse p;
    p.species = g.node(q).species;
    switch (g.node(q).coupling_class) {
        case CouplingClass::regular: p.regular_rotation = rot; break;
        case CouplingClass::crossed: p.crossed_rotation = rot; break;
        case CouplingClass::double_crossed: p.double_crossed_rotation = rot; break;
    }
    return p;
}

ScheduleIR compile_controlled_phase(const ArchitectureGraph& g, GateName name, int mediator) {
    const int want = (name == GateName::cz) ? 2 : 3;
    if (static_cast<int>(g.neighbors(mediator).size()) != want)
        throw CompileError(std::string(to_string(name)) + " mediator must have exactly " +
                           std::to_string(want) + " neighbors");
    if (!effective::class_addressable(g, mediator))
        throw CompileError("mediator is not class-addressable within its species");
    const bool idle_excited = in_bridge_mask(g, mediator);

    ScheduleIR ir;
    ir.source = to_string(name);
    ir.ops.push_back(Instruction::make_barrier());
    if (idle_excited) ir.ops.push_back(Instruction::make_discharge(mediator));
    ir.ops.push_back(
        Instruction::make_pulse(class_pulse(g, mediator, RotationSpec::about_x(2.0 * M_PI))));
    if (idle_excited) ir.ops.push_back(Instruction::make_charge(mediator));
    ir.ops.push_back(Instruction::make_barrier());
    return ir;
}

int find_mediator(const ArchitectureGraph& g, int control, int target) {
    const auto& nc = g.neighbors(control);
    for (int m : nc) {
        const auto& nt = g.neighbors(target);
        if (!std::binary_search(nt.begin(), nt.end(), m)) continue;
        const Role r = g.node(m).role;
        if ((r == Role::actuator || r == Role::coupler) && effective::class_addressable(g, m))
            return m;
    }
    throw CompileError("no addressable mediator shared by the gate qubits");
}

void append_cnot(ScheduleIR& ir, const ArchitectureGraph& g, int control, int target, int mediator) {
    ir.ops.push_back(Instruction::make_barrier());
    for (const auto& p : effective::cnot_pulse_program(g, control, target, mediator))
        ir.ops.push_back(Instruction::make_pulse(p));
}

ScheduleIR compile_modular_swap(const ArchitectureGraph& g, std::vector<int> operands) {
    if (operands.empty()) throw CompileError("modular_swap needs the bridge actuator operand");
    const int bridge = operands[0];
    if (g.node(bridge).role != Role::actuator) throw CompileError("operand is not an actuator");
    int ql, qr;
    if (operands.size() >= 3) {
        ql = operands[1];
        qr = operands[2];
    } else {
        const auto& nb = g.neighbors(bridge);
        if (nb.size() != 2) throw CompileError("bridge actuator must couple exactly two qubits");
        ql = nb[0];
        qr = nb[1];
    }
    ScheduleIR ir;
    ir.source = "modular_swap";
    ir.ops.push_back(Instruction::make_barrier());
    ir.ops.push_back(Instruction::make_discharge(bridge));
    append_cnot(ir, g, ql, qr, bridge);
    append_cnot(ir, g, qr, ql, bridge);
    append_cnot(ir, g, ql, qr, bridge);
    ir.ops.push_back(Instruction::make_barrier());
    ir.ops.push_back(Instruction::make_charge(bridge));
    ir.ops.push_back(Instruction::make_barrier());
    return ir;
}

ScheduleIR compile_freeze(const ArchitectureGraph& g, const std::string& region, bool freeze) {
    const auto* mask = g.find_mask(region);
    if (!mask) throw CompileError("unknown region mask: " + region);
    ScheduleIR ir;
    ir.source = freeze ? "freeze_region" : "unfreeze_region";
    for (int member : mask->members) {
        const auto partner = g.actuator_partner(member);
        if (!partner)
            throw CompileError("region member " + std::to_string(member) +
                               " has no unique actuator partner");
        ir.ops.push_back(freeze ? Instruction::make_charge(*partner)
                                : Instruction::make_discharge(*partner));
    }
    return ir;
}

struct SwapGeometry {
    effective::ConveyorLayout lay;
    std::string icq_species;
    std::string register_species;
    bool masked = false;  // N >= 4 needs freeze-mask selection
};

SwapGeometry swap_geometry(const ArchitectureGraph& g) {
    const auto lays = effective::conveyor_layouts(g);
    if (lays.size() != 1) throw CompileError("swap_step requires exactly one conveyor module");
    SwapGeometry geo;
    geo.lay = lays.front();
    if (geo.lay.variant != arch::ConveyorVariant::single_register)
        throw CompileError("swap_step pulse sequences exist for the single-register layout only");
    geo.icq_species = g.node(geo.lay.icq[0]).species;
    for (int q : geo.lay.icq)
        if (g.node(q).species != geo.icq_species)
            throw CompileError("computational qubits must share one species");
    if (g.node(geo.lay.icq[0]).coupling_class != CouplingClass::double_crossed ||
        !effective::class_addressable(g, geo.lay.icq[0]))
        throw CompileError("the first computational qubit must be the distinguished element");
    geo.register_species = g.node(geo.lay.registers[0][0]).species;
    geo.masked = geo.lay.n_logical > 2;
    if (geo.masked) {
        for (size_t i = 1; i < geo.lay.icq.size(); ++i)
            if (!g.actuator_partner(geo.lay.icq[static_cast<size_t>(i)]))
                throw CompileError(
                    "swap_step beyond N=2 needs an actuator layer over the loop qubits");
        for (const auto& block : geo.lay.registers)
            if (!g.actuator_partner(block[0]))
                throw CompileError(
                    "swap_step beyond N=2 needs an actuator layer over the loop qubits");
    } else {
        const auto& nbs = g.neighbors(geo.lay.off_loop);
        const bool couples_both =
            std::binary_search(nbs.begin(), nbs.end(), geo.lay.icq[0]) &&
            std::binary_search(nbs.begin(), nbs.end(), geo.lay.icq[1]);
        if (!couples_both || !effective::class_addressable(g, geo.lay.off_loop))
            throw CompileError("N=2 swap_step needs the off-loop element coupled to both loop qubits");
    }
    return geo;
}

RotationSpec h_axis(double angle) {
    RotationSpec r;
    r.angle = angle;
    r.axis[0] = 1.0 / std::sqrt(2.0);
    r.axis[1] = 0.0;
    r.axis[2] = 1.0 / std::sqrt(2.0);
    return r;
}

/// One round of pairwise neighbor swaps: three mediated-CNOT layers. Pair
/// selection among identically driven elements comes from the coupling-class
/// split (the distinguished first qubit) and, beyond N=2, from actuator
/// freeze masks over the idle loop elements.
void append_swap_round(ScheduleIR& ir, const ArchitectureGraph& g, const SwapGeometry& geo) {
    const int N = geo.lay.n_logical;
    auto targets_even = [&] {  // 0-based even ordinals, i.e. the pairs' second members
        std::vector<int> t;
        for (int q = 0; q < N; q += 2) t.push_back(q);
        return t;
    }();
    auto targets_odd = [&] {
        std::vector<int> t;
        for (int q = 1; q < N; q += 2) t.push_back(q);
        return t;
    }();

    auto emit_level_changes = [&](const std::vector<int>& ordinals, bool charge) {
        for (int q : ordinals) {
            const auto partner = g.actuator_partner(geo.lay.icq[static_cast<size_t>(q)]);
            ir.ops.push_back(charge ? Instruction::make_charge(*partner)
                                    : Instruction::make_discharge(*partner));
        }
    };
    auto emit_h_layer = [&](const std::vector<int>& tf, double sign) {
        SpeciesPulse p;
        p.species = geo.icq_species;
        const bool has_regular_target =
            std::any_of(tf.begin(), tf.end(), [](int q) { return q != 0; });
        const bool has_q1 = std::find(tf.begin(), tf.end(), 0) != tf.end();
        if (has_regular_target) p.regular_rotation = h_axis(sign * M_PI);
        if (has_q1) p.double_crossed_rotation = h_axis(sign * M_PI);
        ir.ops.push_back(Instruction::make_pulse(p));
    };

    for (int layer = 0; layer < 3; ++layer) {
        const auto& tf = (layer % 2 == 0) ? targets_even : targets_odd;
        std::vector<int> frozen;  // regular computational qubits outside the target set
        const bool pulse_hits_regulars = std::any_of(tf.begin(), tf.end(), [](int q) { return q != 0; });
        if (pulse_hits_regulars)
            for (int q = 1; q < N; ++q)
                if (std::find(tf.begin(), tf.end(), q) == tf.end()) frozen.push_back(q);

        ir.ops.push_back(Instruction::make_barrier());
        emit_level_changes(frozen, true);
        emit_h_layer(tf, +1.0);
        emit_level_changes(frozen, false);

        if (N == 2) {
            ir.ops.push_back(Instruction::make_pulse(
                class_pulse(g, geo.lay.off_loop, RotationSpec::about_x(2.0 * M_PI))));
        } else {
            std::vector<int> idle_mediators;
            for (int a = 0; a < N; a += 2) idle_mediators.push_back(a);
            for (int a : idle_mediators) {
                const auto partner = g.actuator_partner(geo.lay.registers[static_cast<size_t>(a)][0]);
                ir.ops.push_back(Instruction::make_charge(*partner));
            }
            SpeciesPulse zb;
            zb.species = geo.register_species;
            zb.crossed_rotation = RotationSpec::about_x(2.0 * M_PI);
            ir.ops.push_back(Instruction::make_pulse(zb));
            for (int a : idle_mediators) {
                const auto partner = g.actuator_partner(geo.lay.registers[static_cast<size_t>(a)][0]);
                ir.ops.push_back(Instruction::make_discharge(*partner));
            }
        }

        {
            SpeciesPulse z;
            z.species = geo.icq_species;
            if (N > 1) z.regular_rotation = RotationSpec::about_z(M_PI);
            z.double_crossed_rotation = RotationSpec::about_z(M_PI);
            ir.ops.push_back(Instruction::make_pulse(z));
        }

        emit_level_changes(frozen, true);
        emit_h_layer(tf, -1.0);
        emit_level_changes(frozen, false);
    }
    ir.ops.push_back(Instruction::make_barrier());
}

ScheduleIR compile_swap_step(const ArchitectureGraph& g, const GateRequest& req) {
    const auto geo = swap_geometry(g);
    ScheduleIR ir;
    ir.source = "swap_step";
    for (int rep = 0; rep < req.repetitions; ++rep) append_swap_round(ir, g, geo);
    return ir;
}

}  // namespace

ScheduleIR compile(const ArchitectureGraph& g, const GateRequest& req) {
    if (req.repetitions < 1) throw CompileError("repetitions must be >= 1");
    switch (req.name) {
        case GateName::cz:
        case GateName::ccz:
            if (req.qubits.size() != 1)
                throw CompileError("cz/ccz take the mediating element as their operand");
            return compile_controlled_phase(g, req.name, req.qubits[0]);
        case GateName::cnot: {
            if (req.qubits.size() < 2) throw CompileError("cnot takes control and target operands");
            const int control = req.qubits[0], target = req.qubits[1];
            const int mediator =
                (req.qubits.size() >= 3) ? req.qubits[2] : find_mediator(g, control, target);
            const bool idle_excited = in_bridge_mask(g, mediator);
            ScheduleIR ir;
            ir.source = "cnot";
            if (idle_excited) ir.ops.push_back(Instruction::make_discharge(mediator));
            append_cnot(ir, g, control, target, mediator);
            if (idle_excited) ir.ops.push_back(Instruction::make_charge(mediator));
            ir.ops.push_back(Instruction::make_barrier());
            return ir;
        }
        case GateName::swap_step: return compile_swap_step(g, req);
        case GateName::icc_shift: {
            const auto* entry = builtin_library().find("icc_shift");
            throw CompileError("icc_shift has no verified pulse sequence in the built-in library (" +
                               (entry ? entry->note : std::string("missing entry")) + ")");
        }
        case GateName::modular_swap: return compile_modular_swap(g, req.qubits);
        case GateName::freeze_region: return compile_freeze(g, req.region, true);
        case GateName::unfreeze_region: return compile_freeze(g, req.region, false);
    }
    throw CompileError("unknown gate");
}

// ---- replay -----------------------------------------------------------------

namespace {

bool rotation_is_identity(const RotationSpec& r) {
    const Eigen::Matrix2cd m = rotation_matrix(r) - Eigen::Matrix2cd::Identity();
    return m.cwiseAbs().maxCoeff() <= 1e-12;
}

void check_actuator_entry_level(const ArchitectureGraph& g, const SpeciesPulse& p,
                                const StateVector& state, double tol) {
    for (const auto& nd : g.nodes()) {
        if (nd.species != p.species || nd.role != Role::actuator) continue;
        const auto& rot = p.rotation_for(nd.coupling_class);
        if (!rot || rotation_is_identity(*rot)) continue;
        const double pe = effective::excited_population(state, nd.index);
        if (pe > tol)
            throw effective::BlockedOperationError(
                "actuator " + std::to_string(nd.index) +
                " must be discharged before its gate pulse (excited weight " + std::to_string(pe) +
                ")");
    }
}

ReplayResult replay_effective(const ArchitectureGraph& g, const ScheduleIR& ir,
                              const StateVector& state, const EngineSpec& engine) {
    ReplayResult res;
    res.state = state;
    for (const auto& op : ir.ops) {
        switch (op.kind) {
            case InstructionKind::barrier: break;
            case InstructionKind::charge:
                effective::actuator_reset_inplace(g, op.actuator, effective::ActuatorLevel::excited,
                                                  res.state, engine.tol);
                break;
            case InstructionKind::discharge:
                effective::actuator_reset_inplace(g, op.actuator, effective::ActuatorLevel::ground,
                                                  res.state, engine.tol);
                break;
            case InstructionKind::pulse:
                check_actuator_entry_level(g, op.pulse, res.state, engine.tol);
                effective::apply_species_pulse(g, op.pulse, res.state);
                break;
        }
    }
    res.norm_defect = std::abs(res.state.norm() - 1.0);
    return res;
}

struct EulerZYZ {
    double alpha = 0.0, beta = 0.0, gamma = 0.0;
};

/// Exact R_z(alpha) R_y(beta) R_z(gamma) factorization of an SU(2) rotation.
EulerZYZ euler_zyz(const RotationSpec& rot) {
    const Eigen::Matrix2cd u = rotation_matrix(rot);
    EulerZYZ e;
    const double c = std::abs(u(0, 0));
    const double s = std::abs(u(1, 0));
    e.beta = 2.0 * std::atan2(s, c);
    if (s < 1e-12) {  // pure z rotation
        e.alpha = -2.0 * std::arg(u(0, 0));
        return e;
    }
    if (c < 1e-12) {  // beta = pi
        e.alpha = 2.0 * std::arg(u(1, 0));
        return e;
    }
    const double sum = -2.0 * std::arg(u(0, 0));   // alpha + gamma
    const double diff = 2.0 * std::arg(u(1, 0));   // alpha - gamma
    e.alpha = (sum + diff) / 2.0;
    e.gamma = (sum - diff) / 2.0;
    return e;
}

struct LoweredPulse {
    std::vector<exact::Segment> segments;  // sequential
};

/// Drive phase for a rotation axis (cos phi, -sin phi, 0).
double phase_for_xy_axis(double nx, double ny) { return std::atan2(-ny, nx); }

void append_xy_segment(LoweredPulse& out, const std::string& species, const EngineSpec& engine,
                       double zeta, double theta, double phi) {
    if (std::abs(theta) < 1e-15) return;
    out.segments.push_back({species, exact::calibrated_envelope(engine.envelope, zeta / engine.eta,
                                                                phi, theta, engine.ramp_fraction)});
}

/// Regular-class-equivalent segments realizing an arbitrary-axis rotation:
/// xy axes map to one segment, anything else to a zyz composite with the z
/// factors conjugated into the xy plane.
void append_axis_rotation(LoweredPulse& out, const std::string& species, const EngineSpec& engine,
                          double zeta, const RotationSpec& rot) {
    const double nx = rot.axis[0], ny = rot.axis[1], nz = rot.axis[2];
    if (std::abs(nz) <= 1e-12) {
        append_xy_segment(out, species, engine, zeta, rot.angle, phase_for_xy_axis(nx, ny));
        return;
    }
    auto append_z = [&](double theta) {
        if (std::abs(theta) < 1e-15) return;
        append_xy_segment(out, species, engine, zeta, -M_PI / 2.0, 0.0);  // R_x(-pi/2)
        append_xy_segment(out, species, engine, zeta, theta, phase_for_xy_axis(0.0, 1.0));
        append_xy_segment(out, species, engine, zeta, M_PI / 2.0, 0.0);
    };
    const EulerZYZ e = euler_zyz(rot);
    append_z(e.gamma);
    append_xy_segment(out, species, engine, zeta, e.beta, phase_for_xy_axis(0.0, 1.0));  // R_y
    append_z(e.alpha);
}

LoweredPulse lower_pulse(const ArchitectureGraph& g, const SpeciesPulse& p, const EngineSpec& engine) {
    struct ClassReq {
        CouplingClass cls;
        int mult;
        bool populated = false;
        std::optional<RotationSpec> request;
    };
    std::vector<ClassReq> reqs = {{CouplingClass::regular, 1, false, p.regular_rotation},
                                  {CouplingClass::crossed, 2, false, p.crossed_rotation},
                                  {CouplingClass::double_crossed, 4, false, p.double_crossed_rotation}};
    for (const auto& nd : g.nodes())
        if (nd.species == p.species)
            for (auto& r : reqs)
                if (r.cls == nd.coupling_class) r.populated = true;

    int populated_with_rotation = 0;
    const ClassReq* base = nullptr;
    for (const auto& r : reqs) {
        if (!r.populated) continue;
        if (r.request && !rotation_is_identity(*r.request)) {
            ++populated_with_rotation;
            if (!base) base = &r;
        }
    }
    LoweredPulse out;
    if (!base) return out;  // nothing to drive

    if (populated_with_rotation == 1 &&
        std::none_of(reqs.begin(), reqs.end(), [&](const ClassReq& r) {
            return r.populated && &r != base;
        })) {
        // Only one class exists on this species: any axis is realizable.
        RotationSpec scaled = *base->request;
        scaled.angle /= base->mult;
        append_axis_rotation(out, p.species, engine, g.zeta(), scaled);
        return out;
    }

    // Several classes share the drive line: a single segment rotates them
    // about one xy axis with locked 1x/2x/4x angles. Verify the request fits.
    const RotationSpec& base_rot = *base->request;
    if (std::abs(base_rot.axis[2]) > 1e-12)
        throw exact::EngineError("multi-class pulse requires an xy rotation axis");
    const double theta_base = base_rot.angle / base->mult;
    for (const auto& r : reqs) {
        if (!r.populated) continue;
        RotationSpec expected = base_rot;
        expected.angle = theta_base * r.mult;
        const Eigen::Matrix2cd want =
            r.request ? rotation_matrix(*r.request) : Eigen::Matrix2cd::Identity();
        const Eigen::Matrix2cd got = rotation_matrix(expected);
        if ((want - got).cwiseAbs().maxCoeff() > 1e-9)
            throw exact::EngineError(
                "pulse on species '" + p.species +
                "' is not realizable as a single ratio-locked drive segment");
    }
    append_xy_segment(out, p.species, engine, g.zeta(), theta_base,
                      phase_for_xy_axis(base_rot.axis[0], base_rot.axis[1]));
    return out;
}

exact::Segment lower_level_toggle(const ArchitectureGraph& g, int actuator, const EngineSpec& engine) {
    const auto& nd = g.node(actuator);
    if (nd.role != Role::actuator)
        throw exact::EngineError("level toggle target is not an actuator");
    if (g.species_members(nd.species).size() != 1)
        throw exact::EngineError(
            "exact level toggles need the actuator alone on its drive line");
    const double mult = arch::class_multiplier(nd.coupling_class);
    const double theta = M_PI / mult;  // regular-equivalent area for a pi flip
    return {nd.species, exact::calibrated_envelope(exact::EnvelopeShape::flat_top,
                                                   engine.strong_rabi_factor * g.zeta(), 0.0, theta,
                                                   0.0)};
}

ReplayResult replay_exact(const ArchitectureGraph& g, const ScheduleIR& ir, const StateVector& state,
                          const EngineSpec& engine) {
    exact::DriveSchedule schedule;
    for (const auto& op : ir.ops) {
        switch (op.kind) {
            case InstructionKind::barrier: break;
            case InstructionKind::charge:
            case InstructionKind::discharge:
                schedule.append(lower_level_toggle(g, op.actuator, engine));
                break;
            case InstructionKind::pulse: {
                auto lowered = lower_pulse(g, op.pulse, engine);
                for (auto& seg : lowered.segments) schedule.append(std::move(seg));
                break;
            }
        }
    }
    const auto prop = exact::propagate(g, schedule, engine.params, state);
    ReplayResult res;
    res.state = prop.state;
    res.total_duration = prop.duration;
    res.norm_defect = prop.norm_defect;
    res.max_refinement_error = prop.refinement_error;
    return res;
}

}  // namespace

ReplayResult replay(const ArchitectureGraph& g, const ScheduleIR& ir, const StateVector& state,
                    const EngineSpec& engine) {
    if (state.n_qubits != g.n_qubits()) throw DimensionError("state does not match graph size");
    return (engine.kind == EngineSpec::Kind::effective) ? replay_effective(g, ir, state, engine)
                                                        : replay_exact(g, ir, state, engine);
}

// ---- search -----------------------------------------------------------------

namespace {

std::string operator_key(const Operator& u) {
    // Normalize the free global phase against the largest entry, then round.
    Eigen::Index mr = 0, mc = 0;
    u.cwiseAbs().maxCoeff(&mr, &mc);
    cplx lead = u(mr, mc);
    lead /= std::abs(lead);
    std::string key;
    key.reserve(static_cast<size_t>(u.size()) * 8);
    char buf[40];
    for (Eigen::Index j = 0; j < u.cols(); ++j)
        for (Eigen::Index i = 0; i < u.rows(); ++i) {
            const cplx v = u(i, j) / lead;
            std::snprintf(buf, sizeof(buf), "%.6f,%.6f;", v.real(), v.imag());
            key += buf;
        }
    return key;
}

}  // namespace

std::optional<ScheduleIR> search_sequence(const ArchitectureGraph& g, const Operator& target,
                                          const std::vector<SpeciesPulse>& alphabet, int max_depth) {
    if (g.n_qubits() > 8) throw SearchOverflow("search supports at most 8 qubits");
    if (max_depth < 0 || max_depth > 8) throw SearchOverflow("search depth capped at 8");
    if (alphabet.size() > 16) throw SearchOverflow("search alphabet capped at 16 pulses");
    const std::int64_t dim = std::int64_t{1} << g.n_qubits();
    if (target.rows() != dim || target.cols() != dim)
        throw DimensionError("target dimension does not match the graph");
    if (!is_unitary(target)) throw std::invalid_argument("search target must be unitary");

    std::vector<Operator> letters;
    letters.reserve(alphabet.size());
    for (const auto& p : alphabet) letters.push_back(effective::species_pulse(g, p));

    auto matches = [&](const Operator& u) {
        return operator_distance(u, target, DistanceMode::phase_insensitive) <= 1e-8;
    };
    auto build_ir = [&](const std::vector<int>& program) {
        ScheduleIR ir;
        ir.source = "search";
        for (int idx : program)
            ir.ops.push_back(Instruction::make_pulse(alphabet[static_cast<size_t>(idx)]));
        return ir;
    };

    struct Node {
        std::vector<int> program;
        Operator u;
    };
    std::deque<Node> frontier;
    frontier.push_back({{}, Operator::Identity(dim, dim)});
    std::unordered_set<std::string> visited{operator_key(frontier.front().u)};
    std::size_t expansions = 0;

    if (matches(frontier.front().u)) return build_ir({});

    while (!frontier.empty()) {
        const Node node = std::move(frontier.front());
        frontier.pop_front();
        if (static_cast<int>(node.program.size()) >= max_depth) continue;
        for (size_t a = 0; a < letters.size(); ++a) {
            if (++expansions > 200000) throw SearchOverflow("search frontier exceeded its cap");
            Node next;
            next.program = node.program;
            next.program.push_back(static_cast<int>(a));
            next.u = letters[a] * node.u;  // later pulses act after earlier ones
            if (matches(next.u)) return build_ir(next.program);
            if (visited.insert(operator_key(next.u)).second) frontier.push_back(std::move(next));
        }
    }
    return std::nullopt;
}

// ---- built-in library -----------------------------------------------------------

std::string builtin_library_text() {
    return R"({
  "version": 1,
  "entries": [
    {
      "gate": "swap_step",
      "geometry": "conveyor:single_register",
      "construction": "mask_selected_pair_swaps",
      "provenance": "reconstructed",
      "available": true,
      "note": "three mediated-CNOT layers per round; pair selection via the distinguished-class qubit and, beyond N=2, actuator freeze masks over idle loop elements"
    },
    {
      "gate": "icc_shift",
      "geometry": "ladder",
      "construction": "",
      "provenance": "external",
      "available": false,
      "note": "interface-shift drive trains are published elsewhere and are not reconstructed here"
    }
  ]
}
)";
}

const LibraryEntry* SequenceLibrary::find(const std::string& gate) const {
    for (const auto& e : entries)
        if (e.gate == gate) return &e;
    return nullptr;
}

namespace {

SequenceLibrary parse_library(const std::string& text) {
    const auto doc = nlohmann::json::parse(text);
    SequenceLibrary lib;
    lib.version = doc.at("version").get<int>();
    for (const auto& e : doc.at("entries")) {
        LibraryEntry entry;
        entry.gate = e.at("gate").get<std::string>();
        entry.geometry = e.at("geometry").get<std::string>();
        entry.construction = e.at("construction").get<std::string>();
        entry.provenance = e.at("provenance").get<std::string>();
        entry.available = e.at("available").get<bool>();
        entry.note = e.at("note").get<std::string>();
        lib.entries.push_back(std::move(entry));
    }
    return lib;
}

/// Load-time contract check: one swap round on the N=2 reference geometry must
/// permute the logical basis and leave every background qubit in place.
void verify_swap_entry() {
    const auto g = arch::build_conveyor_belt(2, arch::ConveyorVariant::single_register);
    GateRequest req;
    req.name = GateName::swap_step;
    const auto ir = compile(g, req);
    for (std::uint64_t x = 0; x < 4; ++x) {
        effective::EncodedState enc;
        enc.kind = effective::EncodingKind::ICS;
        enc.n_logical = 2;
        enc.logical_amplitudes = Eigen::VectorXcd::Zero(4);
        enc.logical_amplitudes(static_cast<std::int64_t>(x)) = 1.0;
        const auto in = effective::encode(g, enc);
        const auto out = replay(g, ir, in, EngineSpec::effective_engine());
        const std::uint64_t swapped = ((x & 1u) << 1) | ((x >> 1) & 1u);
        effective::EncodedState want = enc;
        want.logical_amplitudes = Eigen::VectorXcd::Zero(4);
        want.logical_amplitudes(static_cast<std::int64_t>(swapped)) = 1.0;
        const auto expect = effective::encode(g, want);
        const double fid = state_fidelity(expect, out.state);
        if (std::abs(fid - 1.0) > 1e-9)
            throw CompileError("built-in swap_step entry failed its load-time contract check");
    }
}

}  // namespace

const SequenceLibrary& builtin_library() {
    // compile() paths consulted by the verifier never call back in here, so
    // the one-time load-and-verify initializer cannot recurse.
    static const SequenceLibrary lib = [] {
        SequenceLibrary parsed = parse_library(builtin_library_text());
        verify_swap_entry();
        return parsed;
    }();
    return lib;
}

}  // namespace actsim::seq
