#include "actsim/architecture.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace actsim::arch {

using nlohmann::json;

int class_multiplier(CouplingClass c) {
    switch (c) {
        case CouplingClass::regular: return 1;
        case CouplingClass::crossed: return 2;
        case CouplingClass::double_crossed: return 4;
    }
    return 1;
}

const char* to_string(CouplingClass c) {
    switch (c) {
        case CouplingClass::regular: return "regular";
        case CouplingClass::crossed: return "crossed";
        case CouplingClass::double_crossed: return "double_crossed";
    }
    return "regular";
}

const char* to_string(Role r) {
    switch (r) {
        case Role::computational: return "computational";
        case Role::register_qubit: return "register";
        case Role::coupler: return "coupler";
        case Role::actuator: return "actuator";
    }
    return "computational";
}

CouplingClass coupling_class_from_string(const std::string& s) {
    if (s == "regular") return CouplingClass::regular;
    if (s == "crossed") return CouplingClass::crossed;
    if (s == "double_crossed") return CouplingClass::double_crossed;
    throw GraphError("unknown coupling class: " + s);
}

Role role_from_string(const std::string& s) {
    if (s == "computational") return Role::computational;
    if (s == "register") return Role::register_qubit;
    if (s == "coupler") return Role::coupler;
    if (s == "actuator") return Role::actuator;
    throw GraphError("unknown role: " + s);
}

const char* to_string(MaskKind k) {
    switch (k) {
        case MaskKind::freeze_region: return "freeze_region";
        case MaskKind::bridge: return "bridge";
        case MaskKind::module_boundary: return "module_boundary";
    }
    return "module_boundary";
}

MaskKind mask_kind_from_string(const std::string& s) {
    if (s == "freeze_region") return MaskKind::freeze_region;
    if (s == "bridge") return MaskKind::bridge;
    if (s == "module_boundary") return MaskKind::module_boundary;
    throw GraphError("unknown mask kind: " + s);
}

ArchitectureGraph::ArchitectureGraph(double zeta, double base_coupling, std::vector<Species> species,
                                     std::vector<NodeSpec> node_specs,
                                     std::vector<std::pair<int, int>> edges,
                                     std::vector<RegionMask> masks)
    : zeta_(zeta), base_coupling_(base_coupling), species_(std::move(species)), masks_(std::move(masks)) {
    const int n = static_cast<int>(node_specs.size());
    edges_.reserve(edges.size());
    for (auto [i, j] : edges) edges_.emplace_back(std::min(i, j), std::max(i, j));

    adjacency_.assign(static_cast<size_t>(n), {});
    std::set<std::pair<int, int>> seen;
    for (auto [i, j] : edges_) {
        if (i < 0 || j >= n || i == j) continue;  // malformed; reported by validate()
        if (!seen.insert({i, j}).second) continue;
        adjacency_[static_cast<size_t>(i)].push_back(j);
        adjacency_[static_cast<size_t>(j)].push_back(i);
    }
    for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());

    std::unordered_map<std::string, double> drive;
    for (const auto& sp : species_) drive[sp.id] = sp.drive_frequency;

    nodes_.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto& spec = node_specs[static_cast<size_t>(i)];
        QubitNode node;
        node.index = i;
        node.species = spec.species;
        node.coupling_class = spec.coupling_class;
        node.role = spec.role;
        node.coordination = static_cast<int>(adjacency_[static_cast<size_t>(i)].size());
        if (std::isnan(spec.transition_frequency_override)) {
            auto it = drive.find(spec.species);
            const double wd = (it == drive.end()) ? 0.0 : it->second;
            node.transition_frequency = wd + node.coordination * zeta_;
        } else {
            node.transition_frequency = spec.transition_frequency_override;
        }
        nodes_.push_back(std::move(node));
    }
    for (auto& mask : masks_) {
        std::sort(mask.members.begin(), mask.members.end());
        mask.members.erase(std::unique(mask.members.begin(), mask.members.end()), mask.members.end());
    }
}

const QubitNode& ArchitectureGraph::node(int i) const {
    if (i < 0 || i >= n_qubits()) throw GraphError("node index out of range");
    return nodes_[static_cast<size_t>(i)];
}

bool ArchitectureGraph::has_species(const std::string& id) const {
    return std::any_of(species_.begin(), species_.end(), [&](const Species& s) { return s.id == id; });
}

const Species& ArchitectureGraph::species_by_id(const std::string& id) const {
    for (const auto& s : species_)
        if (s.id == id) return s;
    throw GraphError("unknown species: " + id);
}

const std::vector<int>& ArchitectureGraph::neighbors(int i) const {
    if (i < 0 || i >= n_qubits()) throw GraphError("node index out of range");
    return adjacency_[static_cast<size_t>(i)];
}

std::vector<int> ArchitectureGraph::species_members(const std::string& id) const {
    std::vector<int> out;
    for (const auto& nd : nodes_)
        if (nd.species == id) out.push_back(nd.index);
    return out;
}

const RegionMask* ArchitectureGraph::find_mask(const std::string& name) const {
    for (const auto& m : masks_)
        if (m.name == name) return &m;
    return nullptr;
}

std::optional<int> ArchitectureGraph::actuator_partner(int i) const {
    std::optional<int> found;
    for (int nb : neighbors(i)) {
        if (node(nb).role == Role::actuator) {
            if (found) return std::nullopt;  // ambiguous
            found = nb;
        }
    }
    return found;
}

ValidationReport validate(const ArchitectureGraph& g) {
    ValidationReport report;
    const int n = g.n_qubits();
    auto add = [&](const std::string& cat, const std::string& detail) {
        report.violations.push_back({cat, detail});
    };

    {
        std::unordered_set<std::string> ids;
        for (const auto& sp : g.species())
            if (!ids.insert(sp.id).second) add("duplicate_species", "species id '" + sp.id + "' declared twice");
    }

    std::set<std::pair<int, int>> seen;
    for (auto [i, j] : g.edges()) {
        std::ostringstream e;
        e << "(" << i << "," << j << ")";
        if (i < 0 || j >= n) {
            add("malformed_edge", "edge " + e.str() + " references a missing node");
            continue;
        }
        if (i == j) {
            add("malformed_edge", "self-loop " + e.str());
            continue;
        }
        if (!seen.insert({i, j}).second) {
            add("malformed_edge", "duplicate edge " + e.str());
            continue;
        }
        if (g.node(i).species == g.node(j).species)
            add("p1", "edge " + e.str() + " joins two '" + g.node(i).species + "' qubits");
    }

    for (const auto& nd : g.nodes()) {
        if (!g.has_species(nd.species)) {
            add("unknown_species", "node " + std::to_string(nd.index) + " uses undeclared species '" +
                                       nd.species + "'");
            continue;
        }
        const double expected = g.species_by_id(nd.species).drive_frequency + nd.coordination * g.zeta();
        const double scale = std::max(1.0, std::abs(expected));
        if (std::abs(nd.transition_frequency - expected) > 1e-9 * scale)
            add("detuning", "node " + std::to_string(nd.index) +
                                " transition frequency violates the detuning rule");
    }

    for (const auto& mask : g.masks()) {
        for (int m : mask.members) {
            if (m < 0 || m >= n) {
                add("malformed_mask", "mask '" + mask.name + "' references missing node " +
                                          std::to_string(m));
                continue;
            }
            if (mask.kind == MaskKind::freeze_region && !g.actuator_partner(m))
                add("malformed_mask", "freeze mask '" + mask.name + "' member " + std::to_string(m) +
                                          " has no unique actuator partner");
        }
    }
    return report;
}

ResourceSummary resource_summary(const ArchitectureGraph& g) {
    const auto report = validate(g);
    if (!report.ok())
        throw GraphError("resource summary requested for an invalid graph (" +
                         report.violations.front().category + ": " + report.violations.front().detail +
                         ")");
    ResourceSummary s;
    s.drive_lines = static_cast<int>(g.species().size());
    for (const auto& nd : g.nodes()) {
        if (nd.role == Role::actuator)
            ++s.actuators;
        else
            ++s.physical_qubits;
        if (nd.coupling_class == CouplingClass::crossed) ++s.crossed;
        if (nd.coupling_class == CouplingClass::double_crossed) ++s.double_crossed;
    }
    return s;
}

LadderVariant ladder_variant_from_string(const std::string& s) {
    if (s == "three_species") return LadderVariant::three_species;
    if (s == "two_species_lowoverhead") return LadderVariant::two_species_lowoverhead;
    if (s == "actuator_variant") return LadderVariant::actuator_variant;
    throw GraphError("unknown ladder variant: " + s);
}

ConveyorVariant conveyor_variant_from_string(const std::string& s) {
    if (s == "three_register") return ConveyorVariant::three_register;
    if (s == "single_register") return ConveyorVariant::single_register;
    if (s == "actuator_variant") return ConveyorVariant::actuator_variant;
    throw GraphError("unknown conveyor variant: " + s);
}

const char* to_string(LadderVariant v) {
    switch (v) {
        case LadderVariant::three_species: return "three_species";
        case LadderVariant::two_species_lowoverhead: return "two_species_lowoverhead";
        case LadderVariant::actuator_variant: return "actuator_variant";
    }
    return "three_species";
}

const char* to_string(ConveyorVariant v) {
    switch (v) {
        case ConveyorVariant::three_register: return "three_register";
        case ConveyorVariant::single_register: return "single_register";
        case ConveyorVariant::actuator_variant: return "actuator_variant";
    }
    return "three_register";
}

namespace {

// Deterministic drive carriers; the dynamics only ever depend on detunings,
// so the absolute values just need to be distinct per species.
double carrier_for(size_t species_ordinal) { return 1.0e3 + 50.0 * static_cast<double>(species_ordinal); }

void check_n_logical(int n) {
    if (n < 2 || n % 2 != 0) throw GraphError("N must be even and >= 2");
}

}  // namespace

ArchitectureGraph build_ladder(int n_logical, LadderVariant variant, double zeta, double base_coupling) {
    check_n_logical(n_logical);
    const int N = n_logical;
    const int row_len = 2 * N + 3;
    const bool low_overhead = variant == LadderVariant::two_species_lowoverhead;

    std::vector<Species> species;
    species.push_back({"A", carrier_for(0)});
    species.push_back({"B", carrier_for(1)});
    if (!low_overhead) species.push_back({"C", carrier_for(2)});
    if (variant == LadderVariant::actuator_variant) species.push_back({"QA", carrier_for(3)});

    std::vector<ArchitectureGraph::NodeSpec> nodes;
    std::vector<std::pair<int, int>> edges;

    // Row qubits: index = row * row_len + col. Species alternate along each
    // row by column parity. Addressable-class positions sit at the row ends.
    for (int r = 0; r < N; ++r) {
        for (int c = 0; c < row_len; ++c) {
            ArchitectureGraph::NodeSpec spec;
            spec.species = (c % 2 == 0) ? "A" : "B";
            spec.role = Role::computational;
            if (low_overhead) {
                if (c == 0) spec.coupling_class = CouplingClass::double_crossed;
            } else {
                if (c == 0 || c == row_len - 1) spec.coupling_class = CouplingClass::crossed;
            }
            nodes.push_back(spec);
            if (c > 0) edges.push_back({r * row_len + c - 1, r * row_len + c});
        }
    }

    // Inter-row couplers sit at column N-1: an odd column (species B on both
    // sides) that the interface column can reach, so junction-mediated gates
    // act on the logical content once it is shifted there.
    const int coupler_col = N - 1;
    const int coupler_base = N * row_len;
    for (int j = 0; j + 1 < N; ++j) {
        ArchitectureGraph::NodeSpec spec;
        spec.species = low_overhead ? "A" : "C";
        spec.role = Role::coupler;
        if (low_overhead)
            spec.coupling_class =
                (j % 2 == 0) ? CouplingClass::double_crossed : CouplingClass::crossed;
        else
            spec.coupling_class = CouplingClass::crossed;
        nodes.push_back(spec);
        const int idx = coupler_base + j;
        edges.push_back({j * row_len + coupler_col, idx});
        edges.push_back({(j + 1) * row_len + coupler_col, idx});
    }

    // Junction actuators, one per inter-row junction, coupled to the same
    // pair of row qubits as the junction's coupler.
    if (variant == LadderVariant::actuator_variant) {
        const int actuator_base = coupler_base + (N - 1);
        for (int j = 0; j + 1 < N; ++j) {
            ArchitectureGraph::NodeSpec spec;
            spec.species = "QA";
            spec.role = Role::actuator;
            spec.coupling_class = CouplingClass::crossed;
            nodes.push_back(spec);
            const int idx = actuator_base + j;
            edges.push_back({j * row_len + coupler_col, idx});
            edges.push_back({(j + 1) * row_len + coupler_col, idx});
        }
    }

    std::vector<RegionMask> masks;
    RegionMask boundary;
    boundary.name = "ladder:" + std::to_string(N) + ":" + to_string(variant);
    boundary.kind = MaskKind::module_boundary;
    boundary.members.resize(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) boundary.members[i] = static_cast<int>(i);
    masks.push_back(std::move(boundary));

    return ArchitectureGraph(zeta, base_coupling, std::move(species), std::move(nodes),
                             std::move(edges), std::move(masks));
}

ArchitectureGraph build_conveyor_belt(int n_logical, ConveyorVariant variant, double zeta,
                                      double base_coupling) {
    check_n_logical(n_logical);
    const int N = n_logical;
    const int block = (variant == ConveyorVariant::single_register) ? 1 : 3;
    const int loop_len = N * (block + 1);

    std::vector<Species> species;
    species.push_back({"A", carrier_for(0)});
    species.push_back({"B", carrier_for(1)});
    if (variant == ConveyorVariant::actuator_variant) species.push_back({"QA", carrier_for(2)});

    std::vector<ArchitectureGraph::NodeSpec> nodes(static_cast<size_t>(loop_len));
    std::vector<std::pair<int, int>> edges;
    for (int p = 0; p < loop_len; ++p) {
        auto& spec = nodes[static_cast<size_t>(p)];
        spec.species = (p % 2 == 0) ? "A" : "B";
        const bool is_icq = (p % (block + 1) == 0);
        spec.role = is_icq ? Role::computational : Role::register_qubit;
        edges.push_back({p, (p + 1) % loop_len});
    }

    // Addressable elements: the first computational qubit plus the off-loop
    // element carry the distinguished coupling classes of each layout.
    const int off_loop = loop_len;
    {
        ArchitectureGraph::NodeSpec spec;
        spec.species = (variant == ConveyorVariant::actuator_variant) ? "QA" : "B";
        spec.role = (variant == ConveyorVariant::actuator_variant) ? Role::actuator : Role::coupler;
        nodes.push_back(spec);
    }
    if (variant == ConveyorVariant::single_register) {
        nodes[0].coupling_class = CouplingClass::double_crossed;
        nodes[static_cast<size_t>(off_loop)].coupling_class = CouplingClass::double_crossed;
        for (int p = 1; p < loop_len; p += 2)
            nodes[static_cast<size_t>(p)].coupling_class = CouplingClass::crossed;
    } else {
        nodes[0].coupling_class = CouplingClass::crossed;
        nodes[static_cast<size_t>(off_loop)].coupling_class = CouplingClass::crossed;
    }

    for (int k = 0; k < std::min(3, N); ++k) edges.push_back({k * (block + 1), off_loop});

    std::vector<RegionMask> masks;
    RegionMask boundary;
    boundary.name = "conveyor:" + std::to_string(N) + ":" + to_string(variant);
    boundary.kind = MaskKind::module_boundary;
    boundary.members.resize(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) boundary.members[i] = static_cast<int>(i);
    masks.push_back(std::move(boundary));

    return ArchitectureGraph(zeta, base_coupling, std::move(species), std::move(nodes),
                             std::move(edges), std::move(masks));
}

namespace {

std::string fresh_species_id(const std::vector<Species>& existing, const std::string& base) {
    auto taken = [&](const std::string& id) {
        return std::any_of(existing.begin(), existing.end(),
                           [&](const Species& s) { return s.id == id; });
    };
    if (!taken(base)) return base;
    for (int k = 2;; ++k) {
        std::string candidate = base + std::to_string(k);
        if (!taken(candidate)) return candidate;
    }
}

ArchitectureGraph::NodeSpec spec_of(const QubitNode& nd) {
    ArchitectureGraph::NodeSpec spec;
    spec.species = nd.species;
    spec.coupling_class = nd.coupling_class;
    spec.role = nd.role;
    return spec;
}

}  // namespace

ArchitectureGraph attach_actuator_layer(const ArchitectureGraph& g, const std::vector<int>& region) {
    if (region.empty()) return g;

    std::vector<int> sorted_region = region;
    std::sort(sorted_region.begin(), sorted_region.end());
    sorted_region.erase(std::unique(sorted_region.begin(), sorted_region.end()), sorted_region.end());
    for (int q : sorted_region) {
        if (q < 0 || q >= g.n_qubits()) throw GraphError("actuator layer region out of range");
        if (g.node(q).role == Role::actuator)
            throw GraphError("actuator layer region references an actuator node");
    }

    std::vector<Species> species = g.species();
    const std::string qa_id = fresh_species_id(species, "QA");
    species.push_back({qa_id, carrier_for(species.size())});

    std::vector<ArchitectureGraph::NodeSpec> nodes;
    nodes.reserve(g.nodes().size() + sorted_region.size());
    for (const auto& nd : g.nodes()) nodes.push_back(spec_of(nd));
    std::vector<std::pair<int, int>> edges = g.edges();

    int next = g.n_qubits();
    for (int q : sorted_region) {
        ArchitectureGraph::NodeSpec spec;
        spec.species = qa_id;
        spec.role = Role::actuator;
        spec.coupling_class = CouplingClass::crossed;
        nodes.push_back(spec);
        edges.push_back({q, next});
        ++next;
    }

    std::vector<RegionMask> masks = g.masks();
    RegionMask freeze;
    freeze.name = "freeze:" + qa_id;
    freeze.kind = MaskKind::freeze_region;
    freeze.members = sorted_region;
    masks.push_back(std::move(freeze));

    return ArchitectureGraph(g.zeta(), g.base_coupling(), std::move(species), std::move(nodes),
                             std::move(edges), std::move(masks));
}

ArchitectureGraph bridge_between(const ArchitectureGraph& a, const ArchitectureGraph& b,
                                 std::pair<int, int> boundary) {
    if (&a == &b) throw GraphError("bridge requires two distinct module instances");
    auto [qa, qb] = boundary;
    if (qa < 0 || qa >= a.n_qubits()) throw GraphError("left boundary qubit not in module");
    if (qb < 0 || qb >= b.n_qubits()) throw GraphError("right boundary qubit not in module");
    {
        const auto ra = validate(a);
        const auto rb = validate(b);
        if (!ra.ok() || !rb.ok()) throw GraphError("bridge requires valid modules");
    }

    std::vector<Species> species = a.species();
    std::unordered_map<std::string, std::string> b_rename;
    for (const auto& sp : b.species()) {
        std::string id = sp.id;
        while (std::any_of(species.begin(), species.end(),
                           [&](const Species& s) { return s.id == id; }))
            id += "'";
        b_rename[sp.id] = id;
        species.push_back({id, sp.drive_frequency});
    }
    const std::string bridge_id = fresh_species_id(species, "QB");
    species.push_back({bridge_id, carrier_for(species.size())});

    const int offset = a.n_qubits();
    std::vector<ArchitectureGraph::NodeSpec> nodes;
    for (const auto& nd : a.nodes()) nodes.push_back(spec_of(nd));
    for (const auto& nd : b.nodes()) {
        auto spec = spec_of(nd);
        spec.species = b_rename.at(nd.species);
        nodes.push_back(spec);
    }
    ArchitectureGraph::NodeSpec bridge_spec;
    bridge_spec.species = bridge_id;
    bridge_spec.role = Role::actuator;
    bridge_spec.coupling_class = CouplingClass::crossed;
    nodes.push_back(bridge_spec);
    const int bridge_idx = static_cast<int>(nodes.size()) - 1;

    std::vector<std::pair<int, int>> edges = a.edges();
    for (auto [i, j] : b.edges()) edges.push_back({i + offset, j + offset});
    edges.push_back({qa, bridge_idx});
    edges.push_back({qb + offset, bridge_idx});

    std::vector<RegionMask> masks = a.masks();
    auto name_taken = [&](const std::string& nm) {
        return std::any_of(masks.begin(), masks.end(),
                           [&](const RegionMask& m) { return m.name == nm; });
    };
    for (const auto& m : b.masks()) {
        RegionMask shifted = m;
        while (name_taken(shifted.name)) shifted.name += "'";
        for (auto& member : shifted.members) member += offset;
        masks.push_back(std::move(shifted));
    }
    RegionMask bridge_mask;
    bridge_mask.name = "bridge:" + bridge_id;
    while (name_taken(bridge_mask.name)) bridge_mask.name += "'";
    bridge_mask.kind = MaskKind::bridge;
    bridge_mask.members = {qa, qb + offset, bridge_idx};
    masks.push_back(std::move(bridge_mask));

    return ArchitectureGraph(a.zeta(), a.base_coupling(), std::move(species), std::move(nodes),
                             std::move(edges), std::move(masks));
}

std::string save_json(const ArchitectureGraph& g) {
    json doc;
    doc["zeta"] = g.zeta();
    doc["base_coupling"] = g.base_coupling();
    doc["species"] = json::array();
    for (const auto& sp : g.species())
        doc["species"].push_back({{"id", sp.id}, {"drive_frequency", sp.drive_frequency}});
    doc["nodes"] = json::array();
    for (const auto& nd : g.nodes())
        doc["nodes"].push_back({{"index", nd.index},
                                {"species", nd.species},
                                {"class", to_string(nd.coupling_class)},
                                {"role", to_string(nd.role)}});
    doc["edges"] = json::array();
    for (auto [i, j] : g.edges()) doc["edges"].push_back(json::array({i, j}));
    doc["masks"] = json::array();
    for (const auto& m : g.masks())
        doc["masks"].push_back({{"name", m.name}, {"kind", to_string(m.kind)}, {"members", m.members}});
    return doc.dump(2) + "\n";
}

ArchitectureGraph load_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw GraphError(std::string("architecture JSON parse error: ") + e.what());
    }
    try {
        std::vector<Species> species;
        for (const auto& sp : doc.at("species"))
            species.push_back({sp.at("id").get<std::string>(), sp.at("drive_frequency").get<double>()});

        std::vector<ArchitectureGraph::NodeSpec> nodes(doc.at("nodes").size());
        for (const auto& nd : doc.at("nodes")) {
            const int idx = nd.at("index").get<int>();
            if (idx < 0 || idx >= static_cast<int>(nodes.size()))
                throw GraphError("node index out of range in architecture JSON");
            auto& spec = nodes[static_cast<size_t>(idx)];
            spec.species = nd.at("species").get<std::string>();
            spec.coupling_class = coupling_class_from_string(nd.at("class").get<std::string>());
            spec.role = role_from_string(nd.at("role").get<std::string>());
        }

        std::vector<std::pair<int, int>> edges;
        for (const auto& e : doc.at("edges")) edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});

        std::vector<RegionMask> masks;
        for (const auto& m : doc.at("masks")) {
            RegionMask mask;
            mask.name = m.at("name").get<std::string>();
            mask.kind = mask_kind_from_string(m.at("kind").get<std::string>());
            mask.members = m.at("members").get<std::vector<int>>();
            masks.push_back(std::move(mask));
        }
        return ArchitectureGraph(doc.at("zeta").get<double>(), doc.at("base_coupling").get<double>(),
                                 std::move(species), std::move(nodes), std::move(edges),
                                 std::move(masks));
    } catch (const json::exception& e) {
        throw GraphError(std::string("architecture JSON schema error: ") + e.what());
    }
}

void save_json_file(const ArchitectureGraph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw GraphError("cannot open for writing: " + path);
    out << save_json(g);
    if (!out) throw GraphError("write failed: " + path);
}

ArchitectureGraph load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GraphError("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_json(buf.str());
}

}  // namespace actsim::arch
