// Command-line front end: builds architecture files, validates them, reports
// resource counts, compiles and replays gate programs, and runs blockade
// sweeps. All frequencies are angular (rad/s). Exit codes: 0 ok, 2 parse
// error, 3 engine error, 4 contract failure.

#include "actsim/architecture.hpp"
#include "actsim/effective.hpp"
#include "actsim/exact.hpp"
#include "actsim/sequencer.hpp"
#include "actsim/statevec.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>

namespace {

using namespace actsim;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr int kExitParse = 2;
constexpr int kExitEngine = 3;
constexpr int kExitContract = 4;

struct ParseFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ContractFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

arch::ArchitectureGraph load_graph(const std::string& path) {
    try {
        return arch::load_json_file(path);
    } catch (const arch::GraphError& e) {
        throw ParseFailure(e.what());
    }
}

json graph_digest(const arch::ArchitectureGraph& g) {
    json d;
    d["nodes"] = g.n_qubits();
    d["edges"] = g.edges().size();
    d["species"] = g.species().size();
    d["masks"] = g.masks().size();
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(arch::save_json(g))));
    d["digest"] = buf;
    return d;
}

// ---- contract oracles -------------------------------------------------------

struct ContractCheck {
    std::string name;
    double fidelity = 0.0;
};

struct RunOutcome {
    std::vector<ContractCheck> checks;
    double min_fidelity = 1.0;

    void add(const std::string& name, double fid) {
        checks.push_back({name, fid});
        min_fidelity = std::min(min_fidelity, fid);
    }
};

RunOutcome contract_controlled_phase(const arch::ArchitectureGraph& g, const seq::ScheduleIR& ir,
                                     int mediator, const seq::EngineSpec& engine) {
    RunOutcome outcome;
    const auto& nbs = g.neighbors(mediator);
    const int m = static_cast<int>(nbs.size());
    const bool idle_excited = [&] {
        for (const auto& mask : g.masks())
            if (mask.kind == arch::MaskKind::bridge &&
                std::binary_search(mask.members.begin(), mask.members.end(), mediator))
                return true;
        return false;
    }();

    StateVector probe = StateVector::ground(g.n_qubits());
    const std::uint64_t mediator_bit = idle_excited ? probe.bit_mask(mediator) : 0;

    auto pattern_index = [&](std::uint64_t pattern) {
        std::uint64_t idx = mediator_bit;
        for (int k = 0; k < m; ++k)
            if ((pattern >> k) & 1u) idx |= probe.bit_mask(nbs[static_cast<size_t>(k)]);
        return idx;
    };

    // Phase-sensitive probe: uniform superposition over the neighbor patterns
    // must pick up a sign exactly on the all-ground component.
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(probe.dim());
    Eigen::VectorXcd expect = Eigen::VectorXcd::Zero(probe.dim());
    const double w = 1.0 / std::sqrt(static_cast<double>(1 << m));
    for (std::uint64_t pattern = 0; pattern < (1u << m); ++pattern) {
        const auto idx = static_cast<std::int64_t>(pattern_index(pattern));
        amps(idx) = w;
        expect(idx) = (pattern == 0) ? -w : w;
    }
    const auto out =
        seq::replay(g, ir, StateVector(g.n_qubits(), std::move(amps)), engine);
    outcome.add("superposition_phase",
                state_fidelity(StateVector(g.n_qubits(), std::move(expect)), out.state));

    // Population checks across every neighbor basis pattern.
    for (std::uint64_t pattern = 0; pattern < (1u << m); ++pattern) {
        const auto in = StateVector::basis(g.n_qubits(), pattern_index(pattern));
        const auto res = seq::replay(g, ir, in, engine);
        outcome.add("basis_" + std::to_string(pattern), state_fidelity(in, res.state));
    }
    return outcome;
}

RunOutcome contract_cnot(const arch::ArchitectureGraph& g, const seq::ScheduleIR& ir, int control,
                         int target, const seq::EngineSpec& engine) {
    RunOutcome outcome;
    StateVector probe = StateVector::ground(g.n_qubits());
    auto make_idx = [&](bool c, bool t) {
        std::uint64_t idx = 0;
        if (c) idx |= probe.bit_mask(control);
        if (t) idx |= probe.bit_mask(target);
        return idx;
    };
    const bool patterns[4][2] = {{false, false}, {false, true}, {true, false}, {true, true}};
    for (const auto& p : patterns) {
        const auto in = StateVector::basis(g.n_qubits(), make_idx(p[0], p[1]));
        const auto res = seq::replay(g, ir, in, engine);
        const auto want = StateVector::basis(g.n_qubits(), make_idx(p[0], p[0] ^ p[1]));
        outcome.add(std::string("basis_") + (p[0] ? "e" : "g") + (p[1] ? "e" : "g"),
                    state_fidelity(want, res.state));
    }
    return outcome;
}

RunOutcome contract_swap_step(const arch::ArchitectureGraph& g, const seq::ScheduleIR& ir,
                              const seq::EngineSpec& engine, std::mt19937_64& rng) {
    RunOutcome outcome;
    const auto lay = effective::conveyor_layouts(g).front();
    const int nl = lay.n_logical;

    auto permuted = [&](std::uint64_t x) {
        std::uint64_t y = x;
        for (int a = 2; a <= nl; a += 2) {
            const int i = a - 1, j = a % nl;
            const bool bi = (x >> (nl - 1 - i)) & 1u, bj = (x >> (nl - 1 - j)) & 1u;
            y &= ~((std::uint64_t{1} << (nl - 1 - i)) | (std::uint64_t{1} << (nl - 1 - j)));
            if (bj) y |= std::uint64_t{1} << (nl - 1 - i);
            if (bi) y |= std::uint64_t{1} << (nl - 1 - j);
        }
        return y;
    };

    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd alpha(std::int64_t{1} << nl);
    for (Eigen::Index i = 0; i < alpha.size(); ++i) alpha(i) = cplx(gauss(rng), gauss(rng));
    alpha /= alpha.norm();

    effective::EncodedState enc;
    enc.kind = effective::EncodingKind::ICS;
    enc.n_logical = nl;
    enc.logical_amplitudes = alpha;
    const auto in = effective::encode(g, enc);
    const auto res = seq::replay(g, ir, in, engine);

    effective::EncodedState want = enc;
    want.logical_amplitudes = Eigen::VectorXcd::Zero(alpha.size());
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << nl); ++x)
        want.logical_amplitudes(static_cast<std::int64_t>(permuted(x))) =
            alpha(static_cast<std::int64_t>(x));
    outcome.add("random_logical_state", state_fidelity(effective::encode(g, want), res.state));

    for (std::uint64_t x = 0; x < (std::uint64_t{1} << nl); ++x) {
        effective::EncodedState bx = enc;
        bx.logical_amplitudes = Eigen::VectorXcd::Zero(alpha.size());
        bx.logical_amplitudes(static_cast<std::int64_t>(x)) = 1.0;
        const auto rx = seq::replay(g, ir, effective::encode(g, bx), engine);
        effective::EncodedState wx = bx;
        wx.logical_amplitudes = Eigen::VectorXcd::Zero(alpha.size());
        wx.logical_amplitudes(static_cast<std::int64_t>(permuted(x))) = 1.0;
        outcome.add("basis_" + std::to_string(x), state_fidelity(effective::encode(g, wx), rx.state));
    }
    return outcome;
}

RunOutcome contract_modular_swap(const arch::ArchitectureGraph& g, const seq::ScheduleIR& ir,
                                 int bridge, const seq::EngineSpec& engine, std::mt19937_64& rng) {
    RunOutcome outcome;
    const auto& nbs = g.neighbors(bridge);
    if (nbs.size() != 2) throw ContractFailure("bridge actuator must couple two boundary qubits");

    const auto lays = effective::conveyor_layouts(g);
    std::vector<effective::EncodedState> encs;
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (const auto& lay : lays) {
        effective::EncodedState e;
        e.kind = effective::EncodingKind::ICS;
        e.n_logical = lay.n_logical;
        Eigen::VectorXcd a(std::int64_t{1} << lay.n_logical);
        for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = cplx(gauss(rng), gauss(rng));
        a /= a.norm();
        e.logical_amplitudes = a;
        encs.push_back(std::move(e));
    }
    const auto in = effective::encode_bridged(g, encs, effective::ActuatorLevel::excited);
    const auto res = seq::replay(g, ir, in, engine);

    // Independent oracle: exchange the two boundary bits directly.
    StateVector probe = StateVector::ground(g.n_qubits());
    const std::uint64_t ml = probe.bit_mask(nbs[0]), mr = probe.bit_mask(nbs[1]);
    Eigen::VectorXcd expect = Eigen::VectorXcd::Zero(in.dim());
    for (std::int64_t i = 0; i < in.dim(); ++i) {
        const auto idx = static_cast<std::uint64_t>(i);
        std::uint64_t j = idx;
        const bool bl = idx & ml, br = idx & mr;
        if (bl != br) j ^= (ml | mr);
        expect(static_cast<std::int64_t>(j)) = in.amplitudes(i);
    }
    outcome.add("boundary_swap_oracle",
                state_fidelity(StateVector(g.n_qubits(), std::move(expect)), res.state));
    return outcome;
}

RunOutcome contract_freeze(const arch::ArchitectureGraph& g, const std::string& region,
                           const seq::EngineSpec& engine) {
    RunOutcome outcome;
    const auto* mask = g.find_mask(region);
    if (!mask || mask->members.empty()) throw ContractFailure("region mask missing or empty");
    const int probe_q = mask->members.front();

    seq::GateRequest freeze_req;
    freeze_req.name = seq::GateName::freeze_region;
    freeze_req.region = region;
    const auto freeze_ir = seq::compile(g, freeze_req);
    seq::GateRequest unfreeze_req = freeze_req;
    unfreeze_req.name = seq::GateName::unfreeze_region;
    const auto unfreeze_ir = seq::compile(g, unfreeze_req);

    seq::ScheduleIR probe_ir;
    effective::SpeciesPulse probe_pulse;
    probe_pulse.species = g.node(probe_q).species;
    probe_pulse.regular_rotation = RotationSpec::about_x(M_PI);
    probe_pulse.crossed_rotation = RotationSpec::about_x(M_PI);
    probe_pulse.double_crossed_rotation = RotationSpec::about_x(M_PI);
    probe_ir.ops.push_back(seq::Instruction::make_pulse(probe_pulse));

    const auto in = StateVector::ground(g.n_qubits());
    auto frozen = seq::replay(g, freeze_ir, in, engine);
    frozen = seq::replay(g, probe_ir, frozen.state, engine);
    frozen = seq::replay(g, unfreeze_ir, frozen.state, engine);
    double kept = 1.0;
    for (int q : mask->members) kept = std::min(kept, 1.0 - effective::excited_population(frozen.state, q));
    outcome.add("frozen_population_kept", kept);

    const auto control = seq::replay(g, probe_ir, in, engine);
    outcome.add("unfrozen_probe_flips", effective::excited_population(control.state, probe_q));
    return outcome;
}

// ---- subcommand bodies ---------------------------------------------------------

int cmd_build(const std::string& kind, int n, const std::string& variant, const std::string& out,
              double zeta, double coupling, bool freeze_layer) {
    arch::ArchitectureGraph g;
    if (kind == "ladder")
        g = arch::build_ladder(n, arch::ladder_variant_from_string(variant), zeta, coupling);
    else if (kind == "conveyor")
        g = arch::build_conveyor_belt(n, arch::conveyor_variant_from_string(variant), zeta, coupling);
    else if (kind == "bridge") {
        // Two loop modules joined at their first computational qubits.
        const auto v = arch::conveyor_variant_from_string(variant);
        const auto left = arch::build_conveyor_belt(n, v, zeta, coupling);
        const auto right = arch::build_conveyor_belt(n, v, zeta, coupling);
        g = arch::bridge_between(left, right, {0, 0});
    } else if (kind == "star")
        g = exact::make_gate_star(n, zeta);
    else if (kind == "pair")
        g = exact::make_freeze_pair(zeta);
    else
        throw ParseFailure("unknown architecture kind: " + kind);
    if (freeze_layer) {
        std::vector<int> region;
        for (const auto& nd : g.nodes())
            if (nd.role != arch::Role::actuator) region.push_back(nd.index);
        g = arch::attach_actuator_layer(g, region);
    }
    arch::save_json_file(g, out);
    json report;
    report["command"] = "build";
    report["path"] = out;
    report["graph"] = graph_digest(g);
    std::cout << report.dump(2) << "\n";
    return 0;
}

int cmd_validate(const std::string& path) {
    const auto g = load_graph(path);
    const auto report = arch::validate(g);
    json doc;
    doc["command"] = "validate";
    doc["ok"] = report.ok();
    doc["violations"] = json::array();
    for (const auto& v : report.violations)
        doc["violations"].push_back({{"category", v.category}, {"detail", v.detail}});
    std::cout << doc.dump(2) << "\n";
    return report.ok() ? 0 : kExitContract;
}

int cmd_resources(const std::string& path) {
    const auto g = load_graph(path);
    const auto s = arch::resource_summary(g);
    json doc;
    doc["command"] = "resources";
    doc["drive_lines"] = s.drive_lines;
    doc["physical_qubits"] = s.physical_qubits;
    doc["crossed"] = s.crossed;
    doc["double_crossed"] = s.double_crossed;
    doc["actuators"] = s.actuators;
    std::cout << doc.dump(2) << "\n";
    return 0;
}

int cmd_run(const std::string& path, const std::string& gate, std::vector<int> operands,
            const std::string& region, const std::string& engine_name, double eta,
            std::uint64_t seed, double threshold, int repetitions, const std::string& csv_out) {
    const auto g = load_graph(path);
    const auto t0 = Clock::now();

    seq::GateRequest req;
    req.name = seq::gate_name_from_string(gate);
    req.qubits = operands;
    req.region = region;
    req.repetitions = repetitions;

    seq::EngineSpec engine = (engine_name == "exact") ? seq::EngineSpec::exact_engine(eta)
                                                      : seq::EngineSpec::effective_engine();
    if (engine_name != "exact" && engine_name != "effective")
        throw ParseFailure("engine must be 'effective' or 'exact'");

    const auto ir = seq::compile(g, req);
    std::mt19937_64 rng(seed);

    RunOutcome outcome;
    switch (req.name) {
        case seq::GateName::cz:
        case seq::GateName::ccz:
            outcome = contract_controlled_phase(g, ir, operands.at(0), engine);
            break;
        case seq::GateName::cnot:
            outcome = contract_cnot(g, ir, operands.at(0), operands.at(1), engine);
            break;
        case seq::GateName::swap_step: outcome = contract_swap_step(g, ir, engine, rng); break;
        case seq::GateName::modular_swap:
            outcome = contract_modular_swap(g, ir, operands.at(0), engine, rng);
            break;
        case seq::GateName::freeze_region:
        case seq::GateName::unfreeze_region:
            outcome = contract_freeze(g, region, engine);
            break;
        default: throw ContractFailure("no contract oracle for this gate");
    }

    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

    json doc;
    doc["command"] = "run";
    doc["gate"] = gate;
    doc["engine"] = engine_name;
    doc["seed"] = seed;
    doc["graph"] = graph_digest(g);
    doc["ir_instructions"] = ir.ops.size();
    doc["checks"] = json::array();
    for (const auto& c : outcome.checks)
        doc["checks"].push_back({{"name", c.name}, {"fidelity", c.fidelity}});
    doc["min_fidelity"] = outcome.min_fidelity;
    doc["threshold"] = threshold;
    doc["pass"] = outcome.min_fidelity >= threshold;
    doc["timings_ms"] = elapsed_ms;  // wall clock; excluded from the determinism contract
    std::cout << doc.dump(2) << "\n";

    if (!csv_out.empty()) {
        std::ofstream csv(csv_out, std::ios::binary);
        csv << "check,fidelity\n";
        char buf[96];
        for (const auto& c : outcome.checks) {
            std::snprintf(buf, sizeof(buf), "%s,%.12g\n", c.name.c_str(), c.fidelity);
            csv << buf;
        }
    }
    return doc["pass"].get<bool>() ? 0 : kExitContract;
}

int cmd_sweep(const std::string& path, const std::string& op_name, const std::string& etas_csv,
              const std::string& csv_out) {
    const auto g = load_graph(path);
    std::vector<double> etas;
    std::stringstream ss(etas_csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) etas.push_back(std::stod(item));

    const auto rows = exact::effective_vs_exact(g, exact::sweep_op_from_string(op_name), etas);
    const std::string csv = exact::sweep_to_csv(rows);
    if (!csv_out.empty()) {
        std::ofstream out(csv_out, std::ios::binary);
        out << csv;
    }
    std::cout << csv;
    return 0;
}

int cmd_search(const std::string& path, const std::string& target_name, int operand, int max_depth) {
    const auto g = load_graph(path);
    Operator target;
    if (target_name == "identity") {
        require_dense_capacity(g.n_qubits());
        target = Operator::Identity(std::int64_t{1} << g.n_qubits(), std::int64_t{1} << g.n_qubits());
    } else if (target_name == "cz" || target_name == "ccz") {
        target = effective::native_controlled_phase(g, operand);
    } else if (target_name == "swap_step") {
        target = effective::global_swap_step(g, effective::SwapParity::even_clockwise_odd_anticlockwise);
    } else {
        throw ParseFailure("search target must be identity, cz, ccz or swap_step");
    }

    std::vector<effective::SpeciesPulse> alphabet;
    for (const auto& sp : g.species()) {
        for (double angle : {M_PI / 2.0, M_PI}) {
            effective::SpeciesPulse p;
            p.species = sp.id;
            p.regular_rotation = RotationSpec::about_x(angle);
            p.crossed_rotation = RotationSpec::about_x(angle);
            p.double_crossed_rotation = RotationSpec::about_x(angle);
            alphabet.push_back(p);
        }
        effective::SpeciesPulse cp;
        cp.species = sp.id;
        cp.crossed_rotation = RotationSpec::about_x(2.0 * M_PI);
        cp.double_crossed_rotation = RotationSpec::about_x(2.0 * M_PI);
        alphabet.push_back(cp);
        if (alphabet.size() >= 15) break;
    }

    const auto found = seq::search_sequence(g, target, alphabet, max_depth);
    json doc;
    doc["command"] = "search";
    doc["target"] = target_name;
    doc["max_depth"] = max_depth;
    doc["found"] = found.has_value();
    if (found) doc["ir"] = seq::to_text(*found);
    std::cout << doc.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"globally driven architecture simulator and pulse compiler"};
    app.require_subcommand(1);

    std::string kind, variant = "three_species", path, out_path, gate = "cz", engine = "effective";
    std::string region, etas = "5,20,80", op_name = "cz", target_name = "identity";
    std::vector<int> operands;
    int n = 2, max_depth = 3, repetitions = 1, operand = 0;
    double zeta = 1.0, coupling = 1.0, eta = 80.0, threshold = 0.999;
    std::uint64_t seed = 0;

    bool freeze_layer = false;
    auto* build = app.add_subcommand("build", "construct an architecture and write it as JSON");
    build->add_option("kind", kind, "ladder | conveyor | bridge | star | pair")->required();
    build->add_option("N", n, "logical qubit count (star: neighbor count)")->required();
    build->add_option("variant", variant, "builder variant");
    build->add_option("-o,--out", out_path, "output path")->required();
    build->add_option("--zeta", zeta, "ZZ strength (rad/s)");
    build->add_option("--coupling", coupling, "base drive coupling");
    build->add_flag("--freeze-layer", freeze_layer, "attach an actuator to every non-actuator qubit");

    auto* validate = app.add_subcommand("validate", "check design constraints");
    validate->add_option("arch", path)->required();

    auto* resources = app.add_subcommand("resources", "count drive lines and qubit classes");
    resources->add_option("arch", path)->required();

    auto* run = app.add_subcommand("run", "compile a gate, replay it, and check its contract");
    run->add_option("arch", path)->required();
    run->add_option("--gate", gate, "cz|ccz|cnot|swap_step|modular_swap|freeze_region|unfreeze_region");
    run->add_option("--operands", operands, "gate operand qubit indices");
    run->add_option("--region", region, "region mask name (freeze gates)");
    run->add_option("--engine", engine, "effective | exact");
    run->add_option("--eta", eta, "blockade ratio for the exact engine");
    run->add_option("--seed", seed, "random-probe seed");
    run->add_option("--threshold", threshold, "contract fidelity threshold");
    run->add_option("--repetitions", repetitions, "gate repetitions");
    run->add_option("--csv", out_path, "optional per-check CSV path");

    auto* sweep = app.add_subcommand("sweep", "blockade-ratio convergence table");
    sweep->add_option("arch", path)->required();
    sweep->add_option("--op", op_name, "cz | ccz | freeze | pi_pulse");
    sweep->add_option("--etas", etas, "comma-separated blockade ratios");
    sweep->add_option("-o,--out", out_path, "CSV output path");

    auto* search = app.add_subcommand("search", "breadth-first pulse-sequence search");
    search->add_option("arch", path)->required();
    search->add_option("--target", target_name, "identity | cz | ccz | swap_step");
    search->add_option("--operand", operand, "mediator index for cz/ccz targets");
    search->add_option("--max-depth", max_depth, "search depth cap (<= 8)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (build->parsed()) return cmd_build(kind, n, variant, out_path, zeta, coupling, freeze_layer);
        if (validate->parsed()) return cmd_validate(path);
        if (resources->parsed()) return cmd_resources(path);
        if (run->parsed())
            return cmd_run(path, gate, operands, region, engine, eta, seed, threshold, repetitions,
                           out_path);
        if (sweep->parsed()) return cmd_sweep(path, op_name, etas, out_path);
        if (search->parsed()) return cmd_search(path, target_name, operand, max_depth);
    } catch (const ParseFailure& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const arch::GraphError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const seq::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ContractFailure& e) {
        std::cerr << "contract failure: " << e.what() << "\n";
        return kExitContract;
    } catch (const std::exception& e) {
        std::cerr << "engine error: " << e.what() << "\n";
        return kExitEngine;
    }
    return 0;
}
