#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace actsim::arch {

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CouplingClass { regular, crossed, double_crossed };
enum class Role { computational, register_qubit, coupler, actuator };

/// Drive-coupling multiplier: 1x / 2x / 4x the base coupling.
int class_multiplier(CouplingClass c);

const char* to_string(CouplingClass c);
const char* to_string(Role r);
CouplingClass coupling_class_from_string(const std::string& s);
Role role_from_string(const std::string& s);

/// One shared drive line: every qubit of a species sees the same control
/// signal at this carrier frequency (rad/s).
struct Species {
    std::string id;
    double drive_frequency = 0.0;
};

struct QubitNode {
    int index = -1;
    std::string species;
    CouplingClass coupling_class = CouplingClass::regular;
    Role role = Role::computational;
    /// Derived as drive_frequency + coordination * zeta unless explicitly
    /// overridden at construction (overrides exist so that detuning-rule
    /// violations can be represented and reported).
    double transition_frequency = 0.0;
    int coordination = 0;
};

enum class MaskKind { freeze_region, bridge, module_boundary };

const char* to_string(MaskKind k);
MaskKind mask_kind_from_string(const std::string& s);

struct RegionMask {
    std::string name;
    MaskKind kind = MaskKind::module_boundary;
    std::vector<int> members;  // sorted, unique
};

struct Violation {
    std::string category;  // "p1" | "detuning" | "malformed_edge" | "unknown_species" | "malformed_mask"
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

struct ResourceSummary {
    int drive_lines = 0;
    int physical_qubits = 0;  // nodes that are not actuators
    int crossed = 0;
    int double_crossed = 0;
    int actuators = 0;
};

/// Immutable interaction graph: qubits, uniform-strength ZZ edges, species
/// table and region masks. Construction is lenient; validate() reports
/// constraint violations as data.
class ArchitectureGraph {
  public:
    ArchitectureGraph() = default;

    struct NodeSpec {
        std::string species;
        CouplingClass coupling_class = CouplingClass::regular;
        Role role = Role::computational;
        /// NaN means "derive from the detuning rule".
        double transition_frequency_override = std::numeric_limits<double>::quiet_NaN();
    };

    ArchitectureGraph(double zeta, double base_coupling, std::vector<Species> species,
                      std::vector<NodeSpec> nodes, std::vector<std::pair<int, int>> edges,
                      std::vector<RegionMask> masks);

    double zeta() const { return zeta_; }
    double base_coupling() const { return base_coupling_; }
    const std::vector<Species>& species() const { return species_; }
    const std::vector<QubitNode>& nodes() const { return nodes_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<RegionMask>& masks() const { return masks_; }

    int n_qubits() const { return static_cast<int>(nodes_.size()); }
    const QubitNode& node(int i) const;
    bool has_species(const std::string& id) const;
    const Species& species_by_id(const std::string& id) const;

    /// Sorted ZZ neighbors of a node.
    const std::vector<int>& neighbors(int i) const;

    /// Indices of a species' members, split nowhere: all of them.
    std::vector<int> species_members(const std::string& id) const;

    const RegionMask* find_mask(const std::string& name) const;

    /// The actuator coupled to `i`, if exactly one actuator-role neighbor
    /// exists.
    std::optional<int> actuator_partner(int i) const;

  private:
    double zeta_ = 1.0;
    double base_coupling_ = 1.0;
    std::vector<Species> species_;
    std::vector<QubitNode> nodes_;
    std::vector<std::pair<int, int>> edges_;  // as constructed (canonicalized order within pair)
    std::vector<RegionMask> masks_;
    std::vector<std::vector<int>> adjacency_;
};

ValidationReport validate(const ArchitectureGraph& g);

/// Throws GraphError when validate() reports violations.
ResourceSummary resource_summary(const ArchitectureGraph& g);

enum class LadderVariant { three_species, two_species_lowoverhead, actuator_variant };
enum class ConveyorVariant { three_register, single_register, actuator_variant };

LadderVariant ladder_variant_from_string(const std::string& s);
ConveyorVariant conveyor_variant_from_string(const std::string& s);
const char* to_string(LadderVariant v);
const char* to_string(ConveyorVariant v);

/// N rows of 2N+3 qubits plus N-1 inter-row couplers; the actuator variant
/// additionally places one actuator at each inter-row junction. N even >= 2.
ArchitectureGraph build_ladder(int n_logical, LadderVariant variant, double zeta = 1.0,
                               double base_coupling = 1.0);

/// Closed loop of N computational qubits separated by register blocks, plus
/// one off-loop element coupled to the first min(3, N) computational qubits.
ArchitectureGraph build_conveyor_belt(int n_logical, ConveyorVariant variant, double zeta = 1.0,
                                      double base_coupling = 1.0);

/// One fresh actuator per region member, each ZZ-coupled only to its partner,
/// all on one new dedicated species; also appends a freeze_region mask over
/// the region.
ArchitectureGraph attach_actuator_layer(const ArchitectureGraph& g, const std::vector<int>& region);

/// Disjoint union of two modules plus one bridge actuator coupled to the two
/// boundary qubits. Module B's indices are offset; colliding species and mask
/// names on the B side get a "'" suffix. Rejects aliased arguments.
ArchitectureGraph bridge_between(const ArchitectureGraph& a, const ArchitectureGraph& b,
                                 std::pair<int, int> boundary);

/// Architecture JSON: {"zeta","base_coupling","species","nodes","edges","masks"}.
/// save(load(save(g))) is byte-identical to save(g).
std::string save_json(const ArchitectureGraph& g);
ArchitectureGraph load_json(const std::string& text);
void save_json_file(const ArchitectureGraph& g, const std::string& path);
ArchitectureGraph load_json_file(const std::string& path);

}  // namespace actsim::arch
