#include "actsim/exact.hpp"

#include "actsim/effective.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

namespace actsim::exact {

using arch::ArchitectureGraph;
using arch::CouplingClass;

double PulseEnvelope::omega(double t) const {
    if (t < 0.0 || t > duration) return 0.0;
    if (shape == EnvelopeShape::flat_top) return peak_rabi;
    const double ramp = ramp_fraction * duration;
    if (ramp <= 0.0) return peak_rabi;
    if (t < ramp) return 0.5 * peak_rabi * (1.0 - std::cos(M_PI * t / ramp));
    if (t > duration - ramp) return 0.5 * peak_rabi * (1.0 - std::cos(M_PI * (duration - t) / ramp));
    return peak_rabi;
}

double PulseEnvelope::area() const {
    if (shape == EnvelopeShape::flat_top) return peak_rabi * duration;
    return peak_rabi * duration * (1.0 - ramp_fraction);
}

PulseEnvelope calibrated_envelope(EnvelopeShape shape, double peak_rabi, double phase, double theta,
                                  double ramp_fraction) {
    if (peak_rabi <= 0.0) throw EngineError("peak Rabi value must be positive");
    if (ramp_fraction < 0.0 || ramp_fraction >= 0.5)
        throw EngineError("ramp fraction must lie in [0, 0.5)");
    PulseEnvelope env;
    env.shape = shape;
    env.peak_rabi = peak_rabi;
    env.phase = phase;
    env.ramp_fraction = (shape == EnvelopeShape::flat_top) ? 0.0 : ramp_fraction;
    double angle = theta;
    if (angle < 0.0) {
        angle = -angle;
        env.phase += M_PI;  // driving in antiphase reverses the rotation sense
    }
    env.duration = (shape == EnvelopeShape::flat_top)
                       ? angle / peak_rabi
                       : angle / (peak_rabi * (1.0 - env.ramp_fraction));
    return env;
}

double DriveSchedule::total_duration() const {
    double t = 0.0;
    for (const auto& group : groups) {
        double longest = 0.0;
        for (const auto& seg : group) longest = std::max(longest, seg.envelope.duration);
        t += longest;
    }
    return t;
}

Operator build_rwa_hamiltonian(const ArchitectureGraph& g, const std::vector<DriveTerm>& drives) {
    require_dense_capacity(g.n_qubits());
    const int n = g.n_qubits();
    const std::int64_t dim = std::int64_t{1} << n;
    Operator h = Operator::Zero(dim, dim);

    StateVector probe = StateVector::ground(n);
    std::set<std::pair<int, int>> seen;
    for (auto [i, j] : g.edges()) {
        if (i < 0 || j >= n || i == j || !seen.insert({std::min(i, j), std::max(i, j)}).second)
            continue;
        const std::uint64_t mij = probe.bit_mask(i) | probe.bit_mask(j);
        for (std::int64_t idx = 0; idx < dim; ++idx)
            if ((static_cast<std::uint64_t>(idx) & mij) == mij) h(idx, idx) += 2.0 * g.zeta();
    }

    for (const auto& drive : drives) {
        g.species_by_id(drive.species);
        const cplx ge = 0.5 * drive.omega * std::exp(cplx(0.0, drive.phi));
        for (const auto& nd : g.nodes()) {
            if (nd.species != drive.species) continue;
            const double mult = arch::class_multiplier(nd.coupling_class);
            const std::uint64_t tmask = probe.bit_mask(nd.index);
            for (std::int64_t idx = 0; idx < dim; ++idx) {
                if (static_cast<std::uint64_t>(idx) & tmask) continue;
                const std::int64_t partner = idx | static_cast<std::int64_t>(tmask);
                h(idx, partner) += mult * ge;           // <g|H|e>
                h(partner, idx) += mult * std::conj(ge);
            }
        }
    }
    return h;
}

namespace {

/// Diagonal interaction energy 2*zeta per doubly excited edge, per basis index.
std::vector<double> interaction_diagonal(const ArchitectureGraph& g) {
    const int n = g.n_qubits();
    const std::uint64_t dim = std::uint64_t{1} << n;
    StateVector probe = StateVector::ground(n);
    std::vector<std::uint64_t> pair_masks;
    std::set<std::pair<int, int>> seen;
    for (auto [i, j] : g.edges()) {
        if (i < 0 || j >= n || i == j || !seen.insert({std::min(i, j), std::max(i, j)}).second)
            continue;
        pair_masks.push_back(probe.bit_mask(i) | probe.bit_mask(j));
    }
    std::vector<double> diag(dim, 0.0);
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        double e = 0.0;
        for (const auto m : pair_masks)
            if ((idx & m) == m) e += 2.0 * g.zeta();
        diag[idx] = e;
    }
    return diag;
}

void apply_diagonal_phases(const std::vector<double>& energy, double dt, StateVector& state) {
    const std::uint64_t dim = static_cast<std::uint64_t>(state.dim());
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        const double e = energy[idx];
        if (e != 0.0)
            state.amplitudes(static_cast<std::int64_t>(idx)) *= std::exp(cplx(0.0, -e * dt));
    }
}

struct DrivenQubit {
    int index;
    int multiplier;
};

void check_group(const ArchitectureGraph& g, const std::vector<Segment>& group) {
    std::set<std::string> species;
    for (const auto& seg : group)
        if (!species.insert(seg.species).second)
            throw EngineError("simultaneous segments target the same species");
    if (group.size() < 2) return;
    std::vector<std::set<int>> supports;
    for (const auto& seg : group) {
        std::set<int> support;
        for (int q : g.species_members(seg.species)) {
            support.insert(q);
            for (int nb : g.neighbors(q)) support.insert(nb);
        }
        supports.push_back(std::move(support));
    }
    for (size_t a = 0; a < supports.size(); ++a)
        for (size_t b = a + 1; b < supports.size(); ++b)
            for (int q : supports[a])
                if (supports[b].count(q))
                    throw EngineError("simultaneous segments have overlapping blockade supports");
}

/// One Strang-split pass over the schedule with fixed per-group step counts.
void run_schedule(const ArchitectureGraph& g, const DriveSchedule& schedule,
                  const std::vector<double>& energy, const std::vector<long>& steps_per_group,
                  StateVector& state) {
    for (size_t gi = 0; gi < schedule.groups.size(); ++gi) {
        const auto& group = schedule.groups[gi];
        double duration = 0.0;
        for (const auto& seg : group) duration = std::max(duration, seg.envelope.duration);
        if (duration <= 0.0) continue;

        std::vector<std::pair<const Segment*, std::vector<DrivenQubit>>> active;
        for (const auto& seg : group) {
            std::vector<DrivenQubit> members;
            for (const auto& nd : g.nodes())
                if (nd.species == seg.species)
                    members.push_back({nd.index, arch::class_multiplier(nd.coupling_class)});
            active.push_back({&seg, std::move(members)});
        }

        // Symmetric split substep over [t, t+h]: half the interaction phases,
        // the drive rotations at the midpoint amplitude, the other half.
        auto strang = [&](double t_start, double h) {
            apply_diagonal_phases(energy, h / 2.0, state);
            const double t_mid = t_start + h / 2.0;
            for (const auto& [seg, members] : active) {
                const double omega = seg->envelope.omega(t_mid);
                if (omega == 0.0) continue;
                RotationSpec rot;
                rot.axis[0] = std::cos(seg->envelope.phase);
                rot.axis[1] = -std::sin(seg->envelope.phase);
                rot.axis[2] = 0.0;
                for (const auto& dq : members) {
                    rot.angle = omega * dq.multiplier * h;
                    apply_projector_controlled_rotation_inplace(state, dq.index, {},
                                                                rotation_matrix(rot));
                }
            }
            apply_diagonal_phases(energy, h / 2.0, state);
        };

        // Fourth-order triple-jump composition of the symmetric substep; every
        // factor stays exactly unitary, so step size only controls accuracy.
        const double w1 = 1.0 / (2.0 - std::cbrt(2.0));
        const double w0 = 1.0 - 2.0 * w1;
        const long steps = steps_per_group[gi];
        const double dt = duration / static_cast<double>(steps);
        for (long s = 0; s < steps; ++s) {
            const double t = static_cast<double>(s) * dt;
            strang(t, w1 * dt);
            strang(t + w1 * dt, w0 * dt);
            strang(t + (w1 + w0) * dt, w1 * dt);
        }
    }
}

std::vector<long> initial_steps(const DriveSchedule& schedule, double dt) {
    std::vector<long> steps;
    for (const auto& group : schedule.groups) {
        double duration = 0.0;
        for (const auto& seg : group) duration = std::max(duration, seg.envelope.duration);
        steps.push_back(std::max<long>(1, static_cast<long>(std::ceil(duration / dt))));
    }
    return steps;
}

}  // namespace

PropagationResult propagate(const ArchitectureGraph& g, const DriveSchedule& schedule,
                            const SimParams& params, const StateVector& state) {
    if (state.n_qubits != g.n_qubits()) throw DimensionError("state does not match graph size");
    for (const auto& group : schedule.groups) check_group(g, group);

    PropagationResult result;
    result.duration = schedule.total_duration();
    if (schedule.empty() || result.duration <= 0.0) {
        result.state = state;
        return result;
    }

    const auto energy = interaction_diagonal(g);
    std::vector<long> steps = initial_steps(schedule, params.dt);

    StateVector current = state;
    run_schedule(g, schedule, energy, steps, current);

    double err = std::numeric_limits<double>::infinity();
    for (int r = 0; r < params.max_refinements; ++r) {
        std::vector<long> finer = steps;
        for (auto& s : finer) s *= 2;
        StateVector refined = state;
        run_schedule(g, schedule, energy, finer, refined);
        err = (refined.amplitudes - current.amplitudes).norm();
        current = std::move(refined);
        steps = std::move(finer);
        if (err <= params.accuracy_tolerance) break;
    }

    result.refinement_error = err;
    result.norm_defect = std::abs(current.norm() - 1.0);
    if (result.norm_defect > params.unitarity_tolerance)
        throw EngineError("unitarity tolerance violated during propagation");
    result.steps = 0;
    for (long s : steps) result.steps += s;
    result.dt_used = result.duration / static_cast<double>(std::max<long>(1, result.steps));
    result.state = std::move(current);
    return result;
}

PropagatorResult propagator_matrix(const ArchitectureGraph& g, const DriveSchedule& schedule,
                                   const SimParams& params) {
    require_dense_capacity(g.n_qubits());
    const int n = g.n_qubits();
    const std::int64_t dim = std::int64_t{1} << n;
    for (const auto& group : schedule.groups) check_group(g, group);

    PropagatorResult out;
    out.duration = schedule.total_duration();
    if (schedule.empty() || out.duration <= 0.0) {
        out.u = Operator::Identity(dim, dim);
        return out;
    }

    // All columns must share one step grid or the assembled matrix loses its
    // unitarity; refine the whole matrix at once.
    const auto energy = interaction_diagonal(g);
    auto run_matrix = [&](const std::vector<long>& steps) {
        Operator u(dim, dim);
        for (std::int64_t col = 0; col < dim; ++col) {
            StateVector psi = StateVector::basis(n, static_cast<std::uint64_t>(col));
            run_schedule(g, schedule, energy, steps, psi);
            u.col(col) = psi.amplitudes;
        }
        return u;
    };

    std::vector<long> steps = initial_steps(schedule, params.dt);
    Operator current = run_matrix(steps);
    double err = std::numeric_limits<double>::infinity();
    for (int r = 0; r < params.max_refinements; ++r) {
        std::vector<long> finer = steps;
        for (auto& s : finer) s *= 2;
        Operator refined = run_matrix(finer);
        err = (refined - current).cwiseAbs().maxCoeff();
        current = std::move(refined);
        steps = std::move(finer);
        if (err <= params.accuracy_tolerance) break;
    }

    out.u = std::move(current);
    out.refinement_error = err;
    for (long s : steps) out.steps += s;
    out.unitarity_defect = unitarity_defect(out.u);
    if (out.unitarity_defect > params.unitarity_tolerance)
        throw EngineError("unitarity tolerance violated: step size too coarse");
    return out;
}

// ---- sweeps -----------------------------------------------------------------

const char* to_string(SweepOp op) {
    switch (op) {
        case SweepOp::cz: return "cz";
        case SweepOp::ccz: return "ccz";
        case SweepOp::freeze: return "freeze";
        case SweepOp::pi_pulse: return "pi_pulse";
    }
    return "cz";
}

SweepOp sweep_op_from_string(const std::string& s) {
    if (s == "cz") return SweepOp::cz;
    if (s == "ccz") return SweepOp::ccz;
    if (s == "freeze") return SweepOp::freeze;
    if (s == "pi_pulse") return SweepOp::pi_pulse;
    throw EngineError("unsupported sweep op: " + s);
}

arch::ArchitectureGraph make_gate_star(int m_neighbors, double zeta) {
    if (m_neighbors < 1 || m_neighbors > 4) throw EngineError("star supports 1..4 neighbors");
    std::vector<arch::Species> species{{"QA", 1.0e3}, {"B", 1.05e3}};
    std::vector<ArchitectureGraph::NodeSpec> nodes;
    std::vector<std::pair<int, int>> edges;
    {
        ArchitectureGraph::NodeSpec qa;
        qa.species = "QA";
        qa.role = arch::Role::actuator;
        qa.coupling_class = CouplingClass::crossed;
        nodes.push_back(qa);
    }
    for (int k = 0; k < m_neighbors; ++k) {
        ArchitectureGraph::NodeSpec nb;
        nb.species = "B";
        nodes.push_back(nb);
        edges.push_back({0, k + 1});
    }
    return ArchitectureGraph(zeta, 1.0, std::move(species), std::move(nodes), std::move(edges), {});
}

arch::ArchitectureGraph make_freeze_pair(double zeta) {
    std::vector<arch::Species> species{{"B", 1.0e3}, {"QA", 1.05e3}};
    std::vector<ArchitectureGraph::NodeSpec> nodes(2);
    nodes[0].species = "B";
    nodes[1].species = "QA";
    nodes[1].role = arch::Role::actuator;
    nodes[1].coupling_class = CouplingClass::crossed;
    return ArchitectureGraph(zeta, 1.0, std::move(species), std::move(nodes), {{0, 1}}, {});
}

namespace {

/// Sub-block of `u` on the subspace where `qubit` holds the given level.
Operator qubit_sector(const Operator& u, int n, int qubit, bool excited) {
    const std::uint64_t mask = std::uint64_t{1} << (n - 1 - qubit);
    std::vector<std::int64_t> keep;
    for (std::int64_t i = 0; i < u.rows(); ++i)
        if (((static_cast<std::uint64_t>(i) & mask) != 0) == excited) keep.push_back(i);
    Operator out(keep.size(), keep.size());
    for (size_t r = 0; r < keep.size(); ++r)
        for (size_t c = 0; c < keep.size(); ++c)
            out(static_cast<std::int64_t>(r), static_cast<std::int64_t>(c)) = u(keep[r], keep[c]);
    return out;
}

/// Removes the drive-free evolution from a propagator: rows are rotated back
/// by the static interaction phases, so the comparison against the idealized
/// operator sees only what the drive itself did.
Operator strip_idle_phases(const ArchitectureGraph& g, Operator u, double duration) {
    const auto energy = interaction_diagonal(g);
    for (std::int64_t i = 0; i < u.rows(); ++i) {
        const double e = energy[static_cast<std::uint64_t>(i)];
        if (e != 0.0) u.row(i) *= std::exp(cplx(0.0, e * duration));
    }
    return u;
}

SweepRow sweep_row_for(const ArchitectureGraph& g, SweepOp op, double eta, const SimParams& params) {
    if (eta <= 0.0) throw EngineError("blockade ratio must be positive");
    const double omega_bar = g.zeta() / eta;
    SweepRow row;
    row.op = op;
    row.eta = eta;

    if (op == SweepOp::cz || op == SweepOp::ccz) {
        const int want = (op == SweepOp::cz) ? 2 : 3;
        int actuator = -1;
        for (const auto& nd : g.nodes())
            if (nd.role == arch::Role::actuator) actuator = nd.index;
        if (actuator < 0 || static_cast<int>(g.neighbors(actuator).size()) != want)
            throw EngineError("graph does not match the requested gate star");
        // The actuator is a crossed element: a nominal regular-class area of
        // pi turns into the required 2*pi rotation on the actuator itself.
        DriveSchedule schedule;
        schedule.append({g.node(actuator).species,
                         calibrated_envelope(EnvelopeShape::cosine_ramp_flat_top, omega_bar, 0.0,
                                             M_PI, 0.1)});
        const auto prop = propagator_matrix(g, schedule, params);
        const Operator u = strip_idle_phases(g, prop.u, prop.duration);
        const Operator target = effective::native_controlled_phase(g, actuator);
        row.distance = operator_distance(u, target, DistanceMode::phase_insensitive);
        row.avg_gate_fidelity = average_gate_fidelity(u, target);
        row.runtime_s = prop.duration;
        row.unitarity_defect = prop.unitarity_defect;
        return row;
    }

    // freeze / pi_pulse: one driven qubit (index 0) next to its actuator.
    if (g.n_qubits() != 2 || g.node(1).role != arch::Role::actuator)
        throw EngineError("graph does not match the driven-qubit/actuator pair");
    DriveSchedule schedule;
    schedule.append({g.node(0).species,
                     calibrated_envelope(EnvelopeShape::cosine_ramp_flat_top, omega_bar, 0.0, M_PI,
                                         0.1)});
    const auto prop = propagator_matrix(g, schedule, params);
    const Operator u = strip_idle_phases(g, prop.u, prop.duration);
    if (op == SweepOp::freeze) {
        const Operator block = qubit_sector(u, 2, 1, true);
        const Operator target = Operator::Identity(2, 2);
        row.distance = operator_distance(block, target, DistanceMode::phase_insensitive);
        row.avg_gate_fidelity = average_gate_fidelity(block, target);
    } else {
        const Operator block = qubit_sector(u, 2, 1, false);
        const Operator target = rotation_matrix(RotationSpec::about_x(M_PI));
        row.distance = operator_distance(block, target, DistanceMode::phase_insensitive);
        row.avg_gate_fidelity = average_gate_fidelity(block, target);
    }
    row.runtime_s = prop.duration;
    row.unitarity_defect = prop.unitarity_defect;
    return row;
}

unsigned thread_budget() {
    unsigned budget = std::thread::hardware_concurrency();
    if (budget == 0) budget = 1;
    if (const char* env = std::getenv("ACTSIM_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) budget = static_cast<unsigned>(std::min<long>(v, 64));
    }
    return budget;
}

}  // namespace

std::vector<SweepRow> effective_vs_exact(const ArchitectureGraph& g, SweepOp op,
                                         const std::vector<double>& eta_values,
                                         const SimParams& params) {
    std::vector<double> etas = eta_values;
    std::sort(etas.begin(), etas.end());
    std::vector<SweepRow> rows(etas.size());

    const unsigned budget = std::min<unsigned>(thread_budget(), std::max<size_t>(1, etas.size()));
    if (budget <= 1 || etas.size() <= 1) {
        for (size_t i = 0; i < etas.size(); ++i) rows[i] = sweep_row_for(g, op, etas[i], params);
        return rows;
    }
    std::vector<std::thread> workers;
    std::atomic<size_t> next{0};
    std::vector<std::string> errors(etas.size());
    for (unsigned w = 0; w < budget; ++w)
        workers.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < etas.size(); i = next.fetch_add(1)) {
                try {
                    rows[i] = sweep_row_for(g, op, etas[i], params);
                } catch (const std::exception& e) {
                    errors[i] = e.what();
                }
            }
        });
    for (auto& t : workers) t.join();
    for (const auto& e : errors)
        if (!e.empty()) throw EngineError(e);
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "op,eta,distance,avg_gate_fidelity,runtime_s\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%.12g,%.12g,%.12g,%.12g\n", to_string(r.op), r.eta,
                      r.distance, r.avg_gate_fidelity, r.runtime_s);
        out << buf;
    }
    return out.str();
}

}  // namespace actsim::exact
