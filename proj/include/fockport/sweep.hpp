#pragma once

// Deterministic parameter sweeps over beam-splitter angle and number-sum
// outcome, plus the datasets behind the standard figures.

#include <optional>
#include <string>
#include <vector>

#include "fockport/quasi_epr.hpp"
#include "fockport/teleport.hpp"

namespace fockport {

inline constexpr const char* kLibraryVersion = "0.1.0";

enum class ResourceKind { j0, two_point, three_point, four_point, ideal, relative_phase_input };

[[nodiscard]] std::string to_string(ResourceKind kind);
/// Accepts j0, 2pt, 3pt, 4pt, ideal, relative-phase-input.
[[nodiscard]] std::optional<ResourceKind> parse_resource_kind(const std::string& name);

/// Filter order used for a filtered-input kind; nullopt for ideal / relative-phase input.
[[nodiscard]] std::optional<FilterOrder> filter_order_for(ResourceKind kind);

struct ResourceOptions {
    double beta_for_f = kDefaultFilterBeta;
    double phi0 = 0.0;
};

/// The entanglement resource of the given kind at beam-splitter angle beta.
/// The ideal resource ignores beta.
[[nodiscard]] QuasiEprResource build_resource(ResourceKind kind, int total_photons, double beta,
                                              const ResourceOptions& options = {});

inline constexpr double kHalfDegree = 0.5 * 3.14159265358979323846 / 180.0;

/// Inclusive grid start, start + step, ..., <= stop (radians).
struct BetaGrid {
    double start = 0.0;
    double stop = 0.0;
    double step = kHalfDegree;

    static BetaGrid degrees(double start_deg, double stop_deg, double step_deg = 0.5);
    static BetaGrid single(double beta) { return {beta, beta, kHalfDegree}; }

    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] double at(std::size_t i) const { return start + static_cast<double>(i) * step; }
};

struct SweepSpec {
    ResourceKind resource_kind = ResourceKind::j0;
    int total_photons = 20;
    BetaGrid beta_grid = BetaGrid::degrees(0.0, 180.0);
    double alpha = 3.0;
    std::optional<std::vector<int>> q_list;  ///< nullopt means every q in 0..N+k_max
    FidelityOptions corrections;
    ResourceOptions resource_options;
};

/// Throws SpecError listing every offending field.
void validate(const SweepSpec& spec);

struct SweepRow {
    double beta = 0.0;
    int q = 0;
    TeleportOutcome outcome;
    EprQualityReport quality;
};

struct SweepResult {
    SweepSpec spec;
    std::string library_version = kLibraryVersion;
    std::vector<SweepRow> rows;  ///< beta ascending, then q ascending
};

/// threads = 0 picks a default (hardware concurrency, capped by FOCKPORT_THREADS).
/// Output is identical for every thread count.
[[nodiscard]] SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 0);

/// Thread count from FOCKPORT_THREADS (if set and positive) or hardware concurrency.
[[nodiscard]] unsigned default_thread_count();

enum class BetaObjective {
    maximin_modulus,  ///< maximize min_n |s_n|
    entropy,          ///< maximize -sum |s_n|^2 ln |s_n|^2
    fidelity,         ///< maximize parity-corrected F(q = N-1) for a coherent target
};

struct BetaSearchOptions {
    ResourceKind resource_kind = ResourceKind::j0;
    BetaObjective objective = BetaObjective::maximin_modulus;
    BetaGrid grid = BetaGrid::degrees(0.5, 90.0);
    double alpha = 3.0;  ///< fidelity objective only
};

/// Grid argmax of the objective; ties resolve to the smaller beta.
[[nodiscard]] double find_beta_q_numeric(int total_photons, const BetaSearchOptions& options = {});

/// Column-labelled numeric table; empty cells are nullopt.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
};

[[nodiscard]] Table to_table(const SweepResult& result);

struct TableBlock {
    std::string label;
    Table table;
};

struct FigureDataset {
    int figure_id = 0;
    std::string title;
    std::vector<TableBlock> blocks;
};

inline constexpr int kFigureCount = 7;

/// Throws DomainError for ids outside 1..7.
[[nodiscard]] FigureDataset figure_dataset(int figure_id, unsigned threads = 0);

/// The sweep specs behind figures 6 and 7.
[[nodiscard]] SweepSpec figure6_spec();
[[nodiscard]] SweepSpec figure7_spec();

}  // namespace fockport
