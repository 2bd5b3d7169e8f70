// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include "actsim/architecture.hpp"
#include "actsim/effective.hpp"
#include "actsim/exact.hpp"
#include "actsim/sequencer.hpp"
#include "actsim/statevec.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <vector>

using namespace actsim;
using arch::ArchitectureGraph;
using arch::ConveyorVariant;
using arch::LadderVariant;
using Clock = std::chrono::steady_clock;

namespace {

std::mt19937_64 rng(20240);
std::vector<double> unitarity_defects;  // pooled for criterion 8

Eigen::VectorXcd random_logical(int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd a(std::int64_t{1} << n);
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = cplx(gauss(rng), gauss(rng));
    a /= a.norm();
    return a;
}

RotationSpec random_rotation() {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    RotationSpec r;
    r.angle = uni(rng) * 2.0 * M_PI;
    double nx = uni(rng), ny = uni(rng), nz = uni(rng);
    const double len = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (len < 1e-6) return random_rotation();
    r.axis[0] = nx / len;
    r.axis[1] = ny / len;
    r.axis[2] = nz / len;
    return r;
}

struct Criterion {
    int id;
    std::string label;
    std::function<bool(std::string&)> body;
};

// ---- criterion 1: closed-form resource counts -------------------------------

bool resource_formulas(std::string& detail) {
    for (int n : {2, 4, 6, 8}) {
        const auto ladder = arch::resource_summary(arch::build_ladder(n, LadderVariant::three_species));
        if (ladder.physical_qubits != 2 * n * n + 4 * n - 1 || ladder.crossed != 3 * n - 1 ||
            ladder.drive_lines != 3)
            return false;
        const auto low =
            arch::resource_summary(arch::build_ladder(n, LadderVariant::two_species_lowoverhead));
        if (low.physical_qubits != 2 * n * n + 4 * n - 1 || low.crossed != n / 2 - 1 ||
            low.double_crossed != n + n / 2 || low.drive_lines != 2)
            return false;
        const auto ladder_qa =
            arch::resource_summary(arch::build_ladder(n, LadderVariant::actuator_variant));
        if (ladder_qa.actuators != n - 1 || ladder_qa.drive_lines != 3 + 1 ||
            ladder_qa.physical_qubits != 2 * n * n + 4 * n - 1)
            return false;
        const auto belt =
            arch::resource_summary(arch::build_conveyor_belt(n, ConveyorVariant::three_register));
        if (belt.physical_qubits != 4 * n + 1 || belt.drive_lines != 2) return false;
        const auto belt_low =
            arch::resource_summary(arch::build_conveyor_belt(n, ConveyorVariant::single_register));
        if (belt_low.physical_qubits != 2 * n + 1 || belt_low.crossed != n) return false;
        const auto belt_qa =
            arch::resource_summary(arch::build_conveyor_belt(n, ConveyorVariant::actuator_variant));
        if (belt_qa.actuators != 1 || belt_qa.drive_lines != 2 + 1) return false;
    }
    detail = "all closed forms match for N in {2,4,6,8}";
    return true;
}

// ---- criterion 2: native gate algebra ----------------------------------------

ArchitectureGraph star(int m) {
    std::vector<arch::Species> species{{"QA", 1.0}, {"B", 2.0}};
    std::vector<ArchitectureGraph::NodeSpec> nodes(static_cast<size_t>(m) + 1);
    nodes[0].species = "QA";
    nodes[0].role = arch::Role::actuator;
    nodes[0].coupling_class = arch::CouplingClass::crossed;
    std::vector<std::pair<int, int>> edges;
    for (int k = 1; k <= m; ++k) {
        nodes[static_cast<size_t>(k)].species = "B";
        edges.push_back({0, k});
    }
    return ArchitectureGraph(1.0, 1.0, species, nodes, std::move(edges), {});
}

bool gate_algebra(std::string& detail) {
    double worst = 0.0;
    for (int m : {2, 3}) {
        const auto g = star(m);
        const Operator u = effective::native_controlled_phase(g, 0);

        // Brute-force expectation: -1 exactly where every neighbor bit is 0.
        const int n = g.n_qubits();
        const std::int64_t dim = std::int64_t{1} << n;
        std::uint64_t nmask = 0;
        for (int k = 1; k <= m; ++k) nmask |= std::uint64_t{1} << (n - 1 - k);
        Operator expect = Operator::Zero(dim, dim);
        for (std::int64_t i = 0; i < dim; ++i)
            expect(i, i) = ((static_cast<std::uint64_t>(i) & nmask) == 0) ? -1.0 : 1.0;
        worst = std::max(worst, (u - expect).cwiseAbs().maxCoeff());

        // Canonical relabeled form: the conventional controlled-phase diagonal.
        const Operator canon = effective::canonical_controlled_phase(g, 0);
        Operator conventional = Operator::Zero(dim, dim);
        for (std::int64_t i = 0; i < dim; ++i)
            conventional(i, i) = ((static_cast<std::uint64_t>(i) & nmask) == nmask) ? -1.0 : 1.0;
        worst = std::max(worst, (canon - conventional).cwiseAbs().maxCoeff());
    }
    std::ostringstream ss;
    ss << "max elementwise deviation " << worst;
    detail = ss.str();
    return worst <= 1e-12;
}

// ---- criterion 3: commutation and composition --------------------------------

bool commutation_su2(std::string& detail) {
    std::vector<ArchitectureGraph> graphs;
    graphs.push_back(arch::build_conveyor_belt(2, ConveyorVariant::single_register));   // 5 qubits
    graphs.push_back(arch::build_conveyor_belt(2, ConveyorVariant::three_register));    // 9
    graphs.push_back(arch::build_conveyor_belt(4, ConveyorVariant::single_register));   // 9
    graphs.push_back(arch::build_conveyor_belt(2, ConveyorVariant::actuator_variant));  // 9+QA

    double worst_comm = 0.0, worst_comp = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto& g = graphs[static_cast<size_t>(trial) % graphs.size()];
        const auto& sp = g.species()[rng() % g.species().size()].id;

        effective::SpeciesPulse regular_only, crossed_only;
        regular_only.species = sp;
        regular_only.regular_rotation = random_rotation();
        crossed_only.species = sp;
        crossed_only.crossed_rotation = random_rotation();
        crossed_only.double_crossed_rotation = random_rotation();

        const std::int64_t dim = std::int64_t{1} << g.n_qubits();
        for (std::int64_t col = 0; col < dim; ++col) {
            auto ab = StateVector::basis(g.n_qubits(), static_cast<std::uint64_t>(col));
            auto ba = ab;
            effective::apply_species_pulse(g, crossed_only, ab);
            effective::apply_species_pulse(g, regular_only, ab);
            effective::apply_species_pulse(g, regular_only, ba);
            effective::apply_species_pulse(g, crossed_only, ba);
            worst_comm =
                std::max(worst_comm, (ab.amplitudes - ba.amplitudes).cwiseAbs().maxCoeff());
        }

        // Composition: two conditional rotations on one qubit equal the
        // conditional rotation of the composed matrix; adjoint = reversed angle.
        std::uniform_int_distribution<int> pick(0, g.n_qubits() - 1);
        const int q = pick(rng);
        const auto r1 = random_rotation(), r2 = random_rotation();
        const Eigen::Matrix2cd m3 = rotation_matrix(r1) * rotation_matrix(r2);
        for (std::int64_t col = 0; col < dim; ++col) {
            auto composed = StateVector::basis(g.n_qubits(), static_cast<std::uint64_t>(col));
            auto direct = composed;
            effective::apply_conditional_rotation(g, q, r2, composed);
            effective::apply_conditional_rotation(g, q, r1, composed);
            apply_projector_controlled_rotation_inplace(direct, q, g.neighbors(q), m3);
            worst_comp =
                std::max(worst_comp, (composed.amplitudes - direct.amplitudes).cwiseAbs().maxCoeff());
        }
    }
    std::ostringstream ss;
    ss << "commutator " << worst_comm << ", composition " << worst_comp;
    detail = ss.str();
    return worst_comm <= 1e-12 && worst_comp <= 1e-12;
}

// ---- criterion 4: blockade convergence ----------------------------------------

bool blockade_convergence(std::string& detail) {
    const auto g = exact::make_gate_star(2);
    const auto rows = exact::effective_vs_exact(g, exact::SweepOp::cz, {5.0, 20.0, 80.0});
    for (const auto& r : rows) unitarity_defects.push_back(r.unitarity_defect);
    const bool monotone = rows[1].distance <= rows[0].distance && rows[2].distance <= rows[1].distance;
    const bool tail = rows[2].distance <= 0.05;

    const auto agf_rows = exact::effective_vs_exact(g, exact::SweepOp::cz, {50.0});
    unitarity_defects.push_back(agf_rows[0].unitarity_defect);
    const bool agf = agf_rows[0].avg_gate_fidelity >= 0.99;

    std::ostringstream ss;
    ss << "distance(5,20,80) = (" << rows[0].distance << ", " << rows[1].distance << ", "
       << rows[2].distance << "), AGF(50) = " << agf_rows[0].avg_gate_fidelity;
    detail = ss.str();
    return monotone && tail && agf;
}

// ---- criterion 5: freezing ------------------------------------------------------

bool freezing(std::string& detail) {
    const auto g = exact::make_freeze_pair();
    const double eta = 20.0;
    exact::DriveSchedule pulse;
    pulse.append({"B", exact::calibrated_envelope(exact::EnvelopeShape::cosine_ramp_flat_top,
                                                  g.zeta() / eta, 0.0, M_PI, 0.1)});

    // Partner actuator excited: the nominal pi pulse must barely move the qubit.
    const auto frozen = exact::propagate(g, pulse, {}, StateVector::basis(2, 0b01));
    unitarity_defects.push_back(frozen.norm_defect);
    const double leaked = effective::excited_population(frozen.state, 0);
    const double bound = 1.0 / (4.0 * eta * eta) * 1.5;

    // Partner actuator ground: full transfer.
    const auto live = exact::propagate(g, pulse, {}, StateVector::ground(2));
    unitarity_defects.push_back(live.norm_defect);
    const double transferred = effective::excited_population(live.state, 0);

    std::ostringstream ss;
    ss << "frozen leak " << leaked << " (bound " << bound << "), live transfer " << transferred;
    detail = ss.str();
    return leaked <= bound && transferred >= 0.999;
}

// ---- criterion 6: transport contracts ------------------------------------------

bool transport(std::string& detail) {
    // Swap round on the N=4 loop: full reversal on all sixteen labels.
    const auto g = arch::build_conveyor_belt(4, ConveyorVariant::three_register);
    for (std::uint64_t x = 0; x < 16; ++x) {
        effective::EncodedState enc;
        enc.kind = effective::EncodingKind::ICS;
        enc.n_logical = 4;
        enc.logical_amplitudes = Eigen::VectorXcd::Zero(16);
        enc.logical_amplitudes(static_cast<std::int64_t>(x)) = 1.0;
        auto state = effective::encode(g, enc);
        effective::apply_global_swap_step(
            g, effective::SwapParity::even_clockwise_odd_anticlockwise, state);
        std::uint64_t y = 0;
        for (int b = 0; b < 4; ++b)
            if ((x >> b) & 1u) y |= (std::uint64_t{1} << (3 - b));
        effective::EncodedState want = enc;
        want.logical_amplitudes = Eigen::VectorXcd::Zero(16);
        want.logical_amplitudes(static_cast<std::int64_t>(y)) = 1.0;
        if (state_fidelity(effective::encode(g, want), state) < 1.0 - 1e-12) {
            detail = "swap round missed a basis label";
            return false;
        }
    }

    // A round followed by its inverse-direction round restores everything.
    {
        effective::EncodedState enc;
        enc.kind = effective::EncodingKind::ICS;
        enc.n_logical = 4;
        enc.logical_amplitudes = random_logical(4);
        auto state = effective::encode(g, enc);
        const auto in = state;
        effective::apply_global_swap_step(
            g, effective::SwapParity::even_clockwise_odd_anticlockwise, state);
        effective::apply_global_swap_step(
            g, effective::SwapParity::even_anticlockwise_odd_clockwise, state);
        if (state_fidelity(in, state) < 1.0 - 1e-12) {
            detail = "double application is not the identity";
            return false;
        }
    }

    // Interface-column round trips at N=2.
    const auto ladder = arch::build_ladder(2, LadderVariant::three_species);
    double worst = 1.0;
    for (int k : {0, 1, 2}) {
        for (int trial = 0; trial < 4; ++trial) {
            effective::EncodedState enc;
            enc.kind = effective::EncodingKind::ICC;
            enc.position = k;
            enc.n_logical = 2;
            enc.logical_amplitudes = random_logical(2);
            const auto back =
                effective::decode(ladder, effective::encode(ladder, enc), enc.kind, k);
            const double fid =
                std::norm(back.encoded.logical_amplitudes.dot(enc.logical_amplitudes));
            worst = std::min(worst, fid);
        }
    }
    std::ostringstream ss;
    ss << "16/16 labels reversed; min round-trip fidelity " << worst;
    detail = ss.str();
    return worst >= 1.0 - 1e-9;
}

// ---- criterion 7: modularity -----------------------------------------------------

double remote_reduced_fidelity(const StateVector& full, const std::vector<int>& remote_qubits,
                               const Eigen::VectorXcd& reference) {
    // rho_R in the remote computational basis against a pure reference.
    const int nr = static_cast<int>(remote_qubits.size());
    const std::int64_t rdim = std::int64_t{1} << nr;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(rdim, rdim);

    const std::int64_t dim = full.dim();
    std::vector<std::uint64_t> rmask(remote_qubits.size());
    for (size_t k = 0; k < remote_qubits.size(); ++k) rmask[k] = full.bit_mask(remote_qubits[k]);

    // Group amplitudes by the non-remote bit pattern.
    std::vector<std::int64_t> keys(static_cast<size_t>(dim));
    auto remote_index = [&](std::uint64_t idx) {
        std::uint64_t r = 0;
        for (size_t k = 0; k < rmask.size(); ++k)
            if (idx & rmask[k]) r |= std::uint64_t{1} << (rmask.size() - 1 - k);
        return r;
    };
    std::uint64_t all_remote = 0;
    for (auto m : rmask) all_remote |= m;
    for (std::int64_t i = 0; i < dim; ++i)
        keys[static_cast<size_t>(i)] =
            static_cast<std::int64_t>(static_cast<std::uint64_t>(i) & ~all_remote);

    // rho(r1, r2) = sum over rest of psi[rest|r1] conj(psi[rest|r2]).
    for (std::int64_t i = 0; i < dim; ++i) {
        const auto a = full.amplitudes(i);
        if (std::abs(a) < 1e-15) continue;
        const std::uint64_t rest = static_cast<std::uint64_t>(keys[static_cast<size_t>(i)]);
        const std::uint64_t r1 = remote_index(static_cast<std::uint64_t>(i));
        for (std::int64_t r2 = 0; r2 < rdim; ++r2) {
            std::uint64_t j = rest;
            for (size_t k = 0; k < rmask.size(); ++k)
                if ((static_cast<std::uint64_t>(r2) >> (rmask.size() - 1 - k)) & 1u) j |= rmask[k];
            rho(static_cast<std::int64_t>(r1), r2) += a * std::conj(full.amplitudes(static_cast<std::int64_t>(j)));
        }
    }
    return (reference.adjoint() * rho * reference)(0).real();
}

bool modularity(std::string& detail) {
    // Part a/b: boundary swap against the dense oracle on random states.
    const auto ma = arch::build_conveyor_belt(2, ConveyorVariant::actuator_variant);
    const auto mb = arch::build_conveyor_belt(2, ConveyorVariant::actuator_variant);
    const auto g = arch::bridge_between(ma, mb, {0, 0});
    const int bridge = g.n_qubits() - 1;
    const int ql = 0, qr = ma.n_qubits();

    double worst_oracle = 0.0;
    double worst_interior = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
        effective::EncodedState ea, eb;
        ea.kind = eb.kind = effective::EncodingKind::ICS;
        ea.n_logical = eb.n_logical = 2;
        ea.logical_amplitudes = random_logical(2);
        eb.logical_amplitudes = random_logical(2);
        const auto in = effective::encode_bridged(g, {ea, eb}, effective::ActuatorLevel::ground);
        const auto out = effective::modular_swap(g, bridge, ql, qr, in);

        StateVector probe = StateVector::ground(g.n_qubits());
        const std::uint64_t ml = probe.bit_mask(ql), mr = probe.bit_mask(qr);
        const std::uint64_t mbit = probe.bit_mask(bridge);
        Eigen::VectorXcd expect = Eigen::VectorXcd::Zero(in.dim());
        for (std::int64_t i = 0; i < in.dim(); ++i) {
            if (std::abs(in.amplitudes(i)) == 0.0) continue;
            std::uint64_t j = static_cast<std::uint64_t>(i);
            const bool bl = j & ml, br = j & mr;
            if (bl != br) j ^= (ml | mr);
            j |= mbit;
            expect(static_cast<std::int64_t>(j)) = in.amplitudes(i);
        }
        worst_oracle = std::max(worst_oracle, (out.amplitudes - expect).cwiseAbs().maxCoeff());

        const auto lays = effective::conveyor_layouts(g);
        for (const auto& lay : lays) {
            const int interior = lay.icq[1];
            worst_interior = std::max(
                worst_interior, std::abs(effective::excited_population(out, interior) -
                                         effective::excited_population(in, interior)));
        }
    }
    if (worst_oracle > 1e-10 || worst_interior > 1e-10) {
        std::ostringstream ss;
        ss << "oracle deviation " << worst_oracle << ", interior drift " << worst_interior;
        detail = ss.str();
        return false;
    }

    // Part c: with the bridge charged, in-module programs leave the remote
    // module alone. Small bare modules keep the exact run tractable.
    const auto sa = arch::build_conveyor_belt(2, ConveyorVariant::single_register);
    const auto sb = arch::build_conveyor_belt(2, ConveyorVariant::single_register);
    const auto iso = arch::bridge_between(sa, sb, {0, 0});

    effective::EncodedState ea, eb;
    ea.kind = eb.kind = effective::EncodingKind::ICS;
    ea.n_logical = eb.n_logical = 2;
    ea.logical_amplitudes = random_logical(2);
    eb.logical_amplitudes = random_logical(2);
    const auto in = effective::encode_bridged(iso, {ea, eb}, effective::ActuatorLevel::excited);

    // A cross-module communication attempt driving only the left module's
    // lines, with every class locked to the 1x/2x/4x ratio so the exact
    // engine can lower it. Flat tops at eta = 80 keep the static interaction
    // phases at full turns.
    seq::ScheduleIR ir;
    {
        effective::SpeciesPulse pa;
        pa.species = "A";
        pa.regular_rotation = RotationSpec::about_x(M_PI / 2.0);
        pa.double_crossed_rotation = RotationSpec::about_x(2.0 * M_PI);
        ir.ops.push_back(seq::Instruction::make_pulse(pa));
        effective::SpeciesPulse pb;
        pb.species = "B";
        pb.crossed_rotation = RotationSpec::about_x(M_PI);
        pb.double_crossed_rotation = RotationSpec::about_x(2.0 * M_PI);
        ir.ops.push_back(seq::Instruction::make_pulse(pb));
    }

    std::vector<int> remote_qubits;
    for (int q = 0; q < sb.n_qubits(); ++q) remote_qubits.push_back(sa.n_qubits() + q);
    const Eigen::VectorXcd reference = [&] {
        const auto pure = effective::encode(sb, eb);
        return pure.amplitudes;
    }();

    const auto eff = seq::replay(iso, ir, in, seq::EngineSpec::effective_engine());
    const double f_eff = remote_reduced_fidelity(eff.state, remote_qubits, reference);

    auto engine = seq::EngineSpec::exact_engine(80.0);
    engine.envelope = exact::EnvelopeShape::flat_top;
    const auto ex = seq::replay(iso, ir, in, engine);
    unitarity_defects.push_back(ex.norm_defect);
    const double f_ex = remote_reduced_fidelity(ex.state, remote_qubits, reference);

    std::ostringstream ss;
    ss << "oracle dev " << worst_oracle << "; remote fidelity effective " << f_eff << ", exact "
       << f_ex;
    detail = ss.str();
    return f_eff >= 1.0 - 1e-10 && f_ex >= 0.999;
}

// ---- criterion 8: integrator hygiene ----------------------------------------------

bool integrator_hygiene(std::string& detail) {
    double worst = 0.0;
    for (double d : unitarity_defects) worst = std::max(worst, d);
    std::ostringstream ss;
    ss << "max unitarity/norm defect over " << unitarity_defects.size() << " exact runs: " << worst;
    detail = ss.str();
    return !unitarity_defects.empty() && worst <= 1e-10;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "resource formulas", resource_formulas},
        {2, "gate algebra", gate_algebra},
        {3, "commutation and composition", commutation_su2},
        {4, "blockade convergence", blockade_convergence},
        {5, "freezing", freezing},
        {6, "transport contracts", transport},
        {7, "modularity", modularity},
        {8, "integrator hygiene", integrator_hygiene},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = Clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        std::printf("[%s] criterion %d: %s (%.2fs) — %s\n", ok ? "PASS" : "FAIL", c.id,
                    c.label.c_str(), secs, detail.c_str());
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all %zu criteria passed\n", criteria.size());
    return failures == 0 ? 0 : 1;
}
