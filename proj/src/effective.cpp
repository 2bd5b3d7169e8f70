#include "actsim/effective.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace actsim::effective {

using arch::ArchitectureGraph;
using arch::CouplingClass;
using arch::Role;

namespace {

std::uint64_t mask_of(const StateVector& s, const std::vector<int>& qubits) {
    std::uint64_t m = 0;
    for (int q : qubits) m |= s.bit_mask(q);
    return m;
}

Operator dense_from_applier(int n, const std::function<void(StateVector&)>& apply) {
    require_dense_capacity(n);
    const std::int64_t dim = std::int64_t{1} << n;
    Operator u(dim, dim);
    for (std::int64_t j = 0; j < dim; ++j) {
        StateVector col = StateVector::basis(n, static_cast<std::uint64_t>(j));
        apply(col);
        u.col(j) = col.amplitudes;
    }
    return u;
}

}  // namespace

void apply_conditional_rotation(const ArchitectureGraph& g, int target, const RotationSpec& rot,
                                StateVector& state) {
    if (state.n_qubits != g.n_qubits()) throw DimensionError("state does not match graph size");
    apply_projector_controlled_rotation_inplace(state, target, g.neighbors(target),
                                                rotation_matrix(rot));
}

Operator conditional_rotation(const ArchitectureGraph& g, int target, const RotationSpec& rot) {
    if (target < 0 || target >= g.n_qubits()) throw IndexError("unknown target qubit");
    return dense_from_applier(g.n_qubits(),
                              [&](StateVector& s) { apply_conditional_rotation(g, target, rot, s); });
}

void apply_species_pulse(const ArchitectureGraph& g, const SpeciesPulse& pulse, StateVector& state) {
    if (state.n_qubits != g.n_qubits()) throw DimensionError("state does not match graph size");
    g.species_by_id(pulse.species);  // throws for absent species
    for (const auto& nd : g.nodes()) {
        if (nd.species != pulse.species) continue;
        const auto& rot = pulse.rotation_for(nd.coupling_class);
        if (!rot) continue;
        apply_projector_controlled_rotation_inplace(state, nd.index, g.neighbors(nd.index),
                                                    rotation_matrix(*rot));
    }
}

Operator species_pulse(const ArchitectureGraph& g, const SpeciesPulse& pulse) {
    g.species_by_id(pulse.species);
    return dense_from_applier(g.n_qubits(), [&](StateVector& s) { apply_species_pulse(g, pulse, s); });
}

StateVector apply_sequence(const ArchitectureGraph& g, const std::vector<SpeciesPulse>& pulses,
                           StateVector state) {
    for (const auto& p : pulses) apply_species_pulse(g, p, state);
    return state;
}

Operator native_controlled_phase(const ArchitectureGraph& g, int actuator) {
    const auto& nbs = g.neighbors(actuator);
    if (nbs.empty()) throw arch::GraphError("controlled phase requires at least one neighbor");
    require_dense_capacity(g.n_qubits());
    const std::int64_t dim = std::int64_t{1} << g.n_qubits();
    StateVector probe = StateVector::ground(g.n_qubits());
    const std::uint64_t nmask = mask_of(probe, nbs);
    Operator u = Operator::Zero(dim, dim);
    for (std::int64_t i = 0; i < dim; ++i)
        u(i, i) = ((static_cast<std::uint64_t>(i) & nmask) == 0) ? -1.0 : 1.0;
    return u;
}

void apply_native_controlled_phase(const ArchitectureGraph& g, int actuator, StateVector& state) {
    const auto& nbs = g.neighbors(actuator);
    if (nbs.empty()) throw arch::GraphError("controlled phase requires at least one neighbor");
    const std::uint64_t nmask = mask_of(state, nbs);
    const std::uint64_t dim = std::uint64_t{1} << state.n_qubits;
    for (std::uint64_t i = 0; i < dim; ++i)
        if ((i & nmask) == 0) state.amplitudes(static_cast<std::int64_t>(i)) *= -1.0;
}

Operator relabel_ground_excited(const Operator& op, const std::vector<int>& qubits, int n_qubits) {
    std::uint64_t mask = 0;
    for (int q : qubits) mask |= std::uint64_t{1} << (n_qubits - 1 - q);
    Operator out(op.rows(), op.cols());
    for (std::int64_t i = 0; i < op.rows(); ++i)
        for (std::int64_t j = 0; j < op.cols(); ++j)
            out(static_cast<std::int64_t>(static_cast<std::uint64_t>(i) ^ mask),
                static_cast<std::int64_t>(static_cast<std::uint64_t>(j) ^ mask)) = op(i, j);
    return out;
}

Operator canonical_controlled_phase(const ArchitectureGraph& g, int actuator) {
    Operator u = relabel_ground_excited(native_controlled_phase(g, actuator), g.neighbors(actuator),
                                        g.n_qubits());
    const cplx lead = u(0, 0);
    if (std::abs(lead) > 1e-14) u /= (lead / std::abs(lead));
    return u;
}

double excited_population(const StateVector& state, int q) {
    const std::uint64_t m = state.bit_mask(q);
    double p = 0.0;
    for (std::int64_t i = 0; i < state.dim(); ++i)
        if (static_cast<std::uint64_t>(i) & m) p += std::norm(state.amplitudes(i));
    return p;
}

double blocked_weight(const ArchitectureGraph& g, int q, const StateVector& state) {
    const std::uint64_t nmask = mask_of(state, g.neighbors(q));
    double p = 0.0;
    for (std::int64_t i = 0; i < state.dim(); ++i)
        if (static_cast<std::uint64_t>(i) & nmask) p += std::norm(state.amplitudes(i));
    return p;
}

namespace {

/// -1 = ground, +1 = excited, 0 = superposition beyond tolerance.
int level_sign(const StateVector& state, int q, double tol) {
    const double pe = excited_population(state, q);
    if (pe <= tol) return -1;
    if (pe >= 1.0 - tol) return +1;
    return 0;
}

}  // namespace

StateVector actuator_set(const ArchitectureGraph& g, int actuator, ActuatorLevel level,
                         const StateVector& state, double tol) {
    if (g.node(actuator).role != Role::actuator)
        throw arch::GraphError("actuator_set target is not an actuator");
    const int want = (level == ActuatorLevel::excited) ? +1 : -1;
    const int have = level_sign(state, actuator, tol);
    if (have == 0)
        throw BlockedOperationError("actuator is in a superposition; level change ill-defined");
    if (have == want) return state;
    const double blocked = blocked_weight(g, actuator, state);
    if (blocked > tol) {
        std::ostringstream msg;
        msg << "actuator " << actuator << " level change blocked: neighbor excitation weight "
            << blocked;
        throw BlockedOperationError(msg.str());
    }
    StateVector out = state;
    apply_projector_controlled_rotation_inplace(out, actuator, g.neighbors(actuator),
                                                rotation_matrix(RotationSpec::about_y(M_PI)));
    return out;
}

void actuator_reset_inplace(const ArchitectureGraph& g, int actuator, ActuatorLevel level,
                            StateVector& state, double tol) {
    if (g.node(actuator).role != Role::actuator)
        throw arch::GraphError("actuator reset target is not an actuator");
    const int want = (level == ActuatorLevel::excited) ? +1 : -1;
    const int have = level_sign(state, actuator, tol);
    if (have == 0) throw BlockedOperationError("actuator is in a superposition; reset ill-defined");
    if (have == want) return;
    apply_projector_controlled_rotation_inplace(state, actuator, {},
                                                rotation_matrix(RotationSpec::about_y(M_PI)));
}

double actuator_energy_expectation(const ArchitectureGraph& g, int actuator, const StateVector& state) {
    const double omega = g.node(actuator).transition_frequency;
    const double pe = excited_population(state, actuator);
    return (omega / 2.0) * (pe - (1.0 - pe));
}

Operator frozen_propagator(const ArchitectureGraph& g, const arch::RegionMask& region,
                           const SpeciesPulse& pulse) {
    return dense_from_applier(g.n_qubits(),
                              [&](StateVector& s) { apply_frozen_propagator(g, region, pulse, s); });
}

void apply_frozen_propagator(const ArchitectureGraph& g, const arch::RegionMask& region,
                             const SpeciesPulse& pulse, StateVector& state) {
    for (int m : region.members)
        if (!g.actuator_partner(m))
            throw arch::GraphError("freeze region member " + std::to_string(m) +
                                   " lacks an actuator partner");
    g.species_by_id(pulse.species);
    for (const auto& nd : g.nodes()) {
        if (nd.species != pulse.species) continue;
        if (std::binary_search(region.members.begin(), region.members.end(), nd.index)) continue;
        const auto& rot = pulse.rotation_for(nd.coupling_class);
        if (!rot) continue;
        apply_projector_controlled_rotation_inplace(state, nd.index, g.neighbors(nd.index),
                                                    rotation_matrix(*rot));
    }
}

// ---- layouts ------------------------------------------------------------------

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream in(s);
    while (std::getline(in, token, sep)) out.push_back(token);
    return out;
}

std::string strip_suffix_ticks(std::string s) {
    while (!s.empty() && s.back() == '\'') s.pop_back();
    return s;
}

}  // namespace

std::vector<ConveyorLayout> conveyor_layouts(const ArchitectureGraph& g) {
    std::vector<ConveyorLayout> out;
    for (const auto& mask : g.masks()) {
        if (mask.kind != arch::MaskKind::module_boundary) continue;
        const auto parts = split(mask.name, ':');
        if (parts.size() != 3 || parts[0] != "conveyor") continue;
        ConveyorLayout lay;
        lay.mask_name = mask.name;
        lay.n_logical = std::stoi(parts[1]);
        lay.variant = arch::conveyor_variant_from_string(strip_suffix_ticks(parts[2]));
        lay.block = (lay.variant == arch::ConveyorVariant::single_register) ? 1 : 3;
        lay.members = mask.members;
        const size_t expected = static_cast<size_t>(lay.n_logical * (lay.block + 1) + 1);
        if (lay.members.size() != expected)
            throw GeometryError("conveyor boundary mask size does not match its label");
        for (int i = 0; i < lay.n_logical; ++i) {
            lay.icq.push_back(lay.members[static_cast<size_t>(i * (lay.block + 1))]);
            std::vector<int> blockq;
            for (int b = 1; b <= lay.block; ++b)
                blockq.push_back(lay.members[static_cast<size_t>(i * (lay.block + 1) + b)]);
            lay.registers.push_back(std::move(blockq));
        }
        lay.off_loop = lay.members.back();
        out.push_back(std::move(lay));
    }
    return out;
}

std::vector<LadderLayout> ladder_layouts(const ArchitectureGraph& g) {
    std::vector<LadderLayout> out;
    for (const auto& mask : g.masks()) {
        if (mask.kind != arch::MaskKind::module_boundary) continue;
        const auto parts = split(mask.name, ':');
        if (parts.size() != 3 || parts[0] != "ladder") continue;
        LadderLayout lay;
        lay.mask_name = mask.name;
        lay.n_logical = std::stoi(parts[1]);
        lay.variant = arch::ladder_variant_from_string(strip_suffix_ticks(parts[2]));
        lay.row_len = 2 * lay.n_logical + 3;
        lay.members = mask.members;
        size_t expected = static_cast<size_t>(lay.n_logical * lay.row_len + (lay.n_logical - 1));
        if (lay.variant == arch::LadderVariant::actuator_variant)
            expected += static_cast<size_t>(lay.n_logical - 1);
        if (lay.members.size() != expected)
            throw GeometryError("ladder boundary mask size does not match its label");
        out.push_back(std::move(lay));
    }
    return out;
}

// ---- encodings ----------------------------------------------------------------

namespace {

bool neel_site_excited(int col) { return col % 2 == 1; }

/// Physical bits that are excited in the reference background (everything
/// except the logical carrier positions).
std::uint64_t background_bits_conveyor(const StateVector& probe, const ConveyorLayout& lay) {
    std::uint64_t bits = 0;
    if (lay.block == 3) {
        // Register blocks alternate between the all-ground and the
        // ground-excited-ground patterns, starting all-ground.
        for (size_t b = 0; b < lay.registers.size(); ++b)
            if (b % 2 == 1) bits |= probe.bit_mask(lay.registers[b][1]);
    }
    return bits;  // single-qubit registers and the off-loop element stay ground
}

std::uint64_t background_bits_ladder(const StateVector& probe, const LadderLayout& lay, int k) {
    std::uint64_t bits = 0;
    for (int r = 0; r < lay.n_logical; ++r)
        for (int c = 0; c < k; ++c)
            if (neel_site_excited(c)) bits |= probe.bit_mask(lay.row_col(r, c));
    return bits;
}

struct CarrierInfo {
    std::vector<int> carriers;   // logical qubit i lives on carriers[i]
    std::uint64_t background = 0;
};

CarrierInfo carrier_info(const ArchitectureGraph& g, EncodingKind kind, int position) {
    StateVector probe = StateVector::ground(g.n_qubits());
    if (kind == EncodingKind::ICS) {
        auto lays = conveyor_layouts(g);
        if (lays.size() != 1) throw GeometryError("encoding requires exactly one conveyor module");
        const auto& lay = lays.front();
        return {lay.icq, background_bits_conveyor(probe, lay)};
    }
    auto lays = ladder_layouts(g);
    if (lays.size() != 1) throw GeometryError("encoding requires exactly one ladder module");
    const auto& lay = lays.front();
    if (position < 0 || position > lay.n_logical)
        throw GeometryError("interface column out of range");
    CarrierInfo info;
    for (int r = 0; r < lay.n_logical; ++r) info.carriers.push_back(lay.row_col(r, position));
    info.background = background_bits_ladder(probe, lay, position);
    return info;
}

}  // namespace

StateVector encode(const ArchitectureGraph& g, const EncodedState& enc) {
    const auto info = carrier_info(g, enc.kind, enc.position);
    const int nl = enc.n_logical;
    if (static_cast<int>(info.carriers.size()) != nl)
        throw GeometryError("logical qubit count does not match the module");
    if (enc.logical_amplitudes.size() != (std::int64_t{1} << nl))
        throw DimensionError("logical amplitude vector length is not 2^N");
    if (std::abs(enc.logical_amplitudes.norm() - 1.0) > 1e-9)
        throw DimensionError("logical amplitudes are not normalized");

    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(std::int64_t{1} << g.n_qubits());
    StateVector probe = StateVector::ground(g.n_qubits());
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << nl); ++x) {
        std::uint64_t idx = info.background;
        for (int i = 0; i < nl; ++i)
            if ((x >> (nl - 1 - i)) & 1u) idx |= probe.bit_mask(info.carriers[static_cast<size_t>(i)]);
        amps(static_cast<std::int64_t>(idx)) = enc.logical_amplitudes(static_cast<std::int64_t>(x));
    }
    return StateVector(g.n_qubits(), std::move(amps));
}

DecodeResult decode(const ArchitectureGraph& g, const StateVector& state, EncodingKind kind,
                    int position, double tol) {
    if (state.n_qubits != g.n_qubits()) throw DimensionError("state does not match graph size");
    const auto info = carrier_info(g, kind, position);
    const int nl = static_cast<int>(info.carriers.size());

    DecodeResult res;
    res.encoded.kind = kind;
    res.encoded.position = position;
    res.encoded.n_logical = nl;
    res.encoded.logical_amplitudes = Eigen::VectorXcd::Zero(std::int64_t{1} << nl);

    double weight = 0.0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << nl); ++x) {
        std::uint64_t idx = info.background;
        for (int i = 0; i < nl; ++i)
            if ((x >> (nl - 1 - i)) & 1u) idx |= state.bit_mask(info.carriers[static_cast<size_t>(i)]);
        const cplx a = state.amplitudes(static_cast<std::int64_t>(idx));
        res.encoded.logical_amplitudes(static_cast<std::int64_t>(x)) = a;
        weight += std::norm(a);
    }
    res.leakage = std::max(0.0, 1.0 - weight);
    if (res.leakage > tol) {
        std::ostringstream msg;
        msg << "leakage outside the code space: " << res.leakage;
        throw LeakageError(msg.str());
    }
    if (weight > 0) res.encoded.logical_amplitudes /= std::sqrt(weight);
    return res;
}

StateVector encode_bridged(const ArchitectureGraph& g, const std::vector<EncodedState>& encs,
                           ActuatorLevel bridge_level) {
    // Gather per-module carrier/background info in mask order.
    struct ModuleInfo {
        std::vector<int> carriers;
        std::uint64_t background;
        int n_logical;
    };
    StateVector probe = StateVector::ground(g.n_qubits());
    std::vector<ModuleInfo> modules;
    for (const auto& mask : g.masks()) {
        if (mask.kind != arch::MaskKind::module_boundary) continue;
        const auto parts = split(mask.name, ':');
        if (parts.size() != 3) continue;
        if (parts[0] == "conveyor") {
            ConveyorLayout lay;
            for (const auto& l : conveyor_layouts(g))
                if (l.mask_name == mask.name) lay = l;
            modules.push_back({lay.icq, background_bits_conveyor(probe, lay), lay.n_logical});
        } else if (parts[0] == "ladder") {
            throw GeometryError("bridged ladder encoding is not supported");
        }
    }
    if (modules.size() != encs.size())
        throw GeometryError("one encoded state per module is required");

    std::uint64_t base = 0;
    for (const auto& m : modules) base |= m.background;
    if (bridge_level == ActuatorLevel::excited) {
        for (const auto& mask : g.masks()) {
            if (mask.kind != arch::MaskKind::bridge) continue;
            for (int member : mask.members)
                if (g.node(member).role == Role::actuator) base |= probe.bit_mask(member);
        }
    }

    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(std::int64_t{1} << g.n_qubits());
    std::vector<std::uint64_t> x(modules.size(), 0);
    const auto total = [&] {
        std::uint64_t t = 1;
        for (const auto& m : modules) t <<= m.n_logical;
        return t;
    }();
    for (std::uint64_t combo = 0; combo < total; ++combo) {
        std::uint64_t rem = combo;
        std::uint64_t idx = base;
        cplx amp = 1.0;
        for (size_t mi = modules.size(); mi-- > 0;) {
            const auto& m = modules[mi];
            const std::uint64_t xm = rem & ((std::uint64_t{1} << m.n_logical) - 1);
            rem >>= m.n_logical;
            amp *= encs[mi].logical_amplitudes(static_cast<std::int64_t>(xm));
            for (int i = 0; i < m.n_logical; ++i)
                if ((xm >> (m.n_logical - 1 - i)) & 1u)
                    idx |= probe.bit_mask(m.carriers[static_cast<size_t>(i)]);
        }
        amps(static_cast<std::int64_t>(idx)) = amp;
    }
    return StateVector(g.n_qubits(), std::move(amps));
}

// ---- transport ------------------------------------------------------------------

namespace {

std::vector<std::pair<int, int>> swap_round_pairs(int n_logical) {
    // 1-based logical pairs (2,3),(4,5),...,(N,1): each even label trades
    // places with its next loop neighbor.
    std::vector<std::pair<int, int>> pairs;
    for (int a = 2; a <= n_logical; a += 2) pairs.push_back({a - 1, a % n_logical});  // 0-based
    return pairs;
}

const ConveyorLayout& single_conveyor(const std::vector<ConveyorLayout>& lays) {
    if (lays.size() != 1)
        throw GeometryError("operation requires exactly one conveyor module");
    return lays.front();
}

}  // namespace

void apply_global_swap_step(const ArchitectureGraph& g, SwapParity, StateVector& state) {
    const auto lays = conveyor_layouts(g);
    const auto& lay = single_conveyor(lays);
    const auto pairs = swap_round_pairs(lay.n_logical);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> bit_pairs;
    for (auto [a, b] : pairs)
        bit_pairs.push_back({state.bit_mask(lay.icq[static_cast<size_t>(a)]),
                             state.bit_mask(lay.icq[static_cast<size_t>(b)])});
    const std::uint64_t dim = std::uint64_t{1} << state.n_qubits;
    auto& amps = state.amplitudes;
    for (std::uint64_t i = 0; i < dim; ++i) {
        std::uint64_t j = i;
        for (auto [ma, mb] : bit_pairs) {
            const bool ba = j & ma, bb = j & mb;
            if (ba != bb) j ^= (ma | mb);
        }
        if (j > i) std::swap(amps(static_cast<std::int64_t>(i)), amps(static_cast<std::int64_t>(j)));
    }
}

Operator global_swap_step(const ArchitectureGraph& g, SwapParity parity) {
    return dense_from_applier(g.n_qubits(),
                              [&](StateVector& s) { apply_global_swap_step(g, parity, s); });
}

bool class_addressable(const ArchitectureGraph& g, int q) {
    const auto& nd = g.node(q);
    for (const auto& other : g.nodes())
        if (other.index != q && other.species == nd.species &&
            other.coupling_class == nd.coupling_class)
            return false;
    return true;
}

namespace {

SpeciesPulse single_class_pulse(const ArchitectureGraph& g, int q, const RotationSpec& rot) {
    SpeciesPulse p;
    p.species = g.node(q).species;
    switch (g.node(q).coupling_class) {
        case CouplingClass::regular: p.regular_rotation = rot; break;
        case CouplingClass::crossed: p.crossed_rotation = rot; break;
        case CouplingClass::double_crossed: p.double_crossed_rotation = rot; break;
    }
    return p;
}

void merge_class_rotation(SpeciesPulse& p, const ArchitectureGraph& g, int q,
                          const RotationSpec& rot) {
    switch (g.node(q).coupling_class) {
        case CouplingClass::regular: p.regular_rotation = rot; break;
        case CouplingClass::crossed: p.crossed_rotation = rot; break;
        case CouplingClass::double_crossed: p.double_crossed_rotation = rot; break;
    }
}

constexpr double kInvSqrt2 = 0.70710678118654752440;

RotationSpec hadamard_axis_rotation(double angle) {
    RotationSpec r;
    r.angle = angle;
    r.axis[0] = kInvSqrt2;
    r.axis[1] = 0.0;
    r.axis[2] = kInvSqrt2;
    return r;
}

}  // namespace

std::vector<SpeciesPulse> cnot_pulse_program(const ArchitectureGraph& g, int control, int target,
                                             int mediator) {
    for (int q : {control, target})
        if (!class_addressable(g, q))
            throw GeometryError("qubit " + std::to_string(q) +
                                " is not class-addressable within its species");
    if (!class_addressable(g, mediator))
        throw GeometryError("mediator is not class-addressable within its species");
    const auto& mnb = g.neighbors(mediator);
    for (int q : {control, target})
        if (!std::binary_search(mnb.begin(), mnb.end(), q))
            throw GeometryError("mediator is not coupled to both gate qubits");

    // H-layer on the target, mediated conditional phase, Z layer on both
    // qubits, inverse H-layer. The pi rotations about (x+z)/sqrt(2) are
    // Hadamards up to a phase that the -pi closing layer cancels exactly.
    std::vector<SpeciesPulse> prog;
    prog.push_back(single_class_pulse(g, target, hadamard_axis_rotation(M_PI)));
    prog.push_back(single_class_pulse(g, mediator, RotationSpec::about_x(2.0 * M_PI)));
    {
        SpeciesPulse zc = single_class_pulse(g, control, RotationSpec::about_z(M_PI));
        if (g.node(target).species == zc.species) {
            merge_class_rotation(zc, g, target, RotationSpec::about_z(M_PI));
            prog.push_back(zc);
        } else {
            prog.push_back(zc);
            prog.push_back(single_class_pulse(g, target, RotationSpec::about_z(M_PI)));
        }
    }
    prog.push_back(single_class_pulse(g, target, hadamard_axis_rotation(-M_PI)));
    return prog;
}

StateVector modular_swap(const ArchitectureGraph& g, int bridge_actuator, int q_left, int q_right,
                         const StateVector& state) {
    if (g.node(bridge_actuator).role != Role::actuator)
        throw arch::GraphError("bridge node is not an actuator");
    const double pe = excited_population(state, bridge_actuator);
    if (pe > 1e-9)
        throw BlockedOperationError("bridge actuator is excited at entry; modules are isolated");

    StateVector out = state;
    const auto fwd = cnot_pulse_program(g, q_left, q_right, bridge_actuator);
    const auto rev = cnot_pulse_program(g, q_right, q_left, bridge_actuator);
    for (const auto* prog : {&fwd, &rev, &fwd})
        for (const auto& p : *prog) apply_species_pulse(g, p, out);

    actuator_reset_inplace(g, bridge_actuator, ActuatorLevel::excited, out);
    return out;
}

}  // namespace actsim::effective
