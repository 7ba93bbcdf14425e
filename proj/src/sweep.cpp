#include "fockport/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>
#include <thread>

#include "fockport/errors.hpp"
#include "special.hpp"

namespace fockport {

using detail::kPi;

namespace {

constexpr double kDegree = kPi / 180.0;

}  // namespace

std::string to_string(ResourceKind kind) {
    switch (kind) {
        case ResourceKind::j0: return "j0";
        case ResourceKind::two_point: return "2pt";
        case ResourceKind::three_point: return "3pt";
        case ResourceKind::four_point: return "4pt";
        case ResourceKind::ideal: return "ideal";
        case ResourceKind::relative_phase_input: return "relative-phase-input";
    }
    return "unknown";
}

std::optional<ResourceKind> parse_resource_kind(const std::string& name) {
    for (auto kind : {ResourceKind::j0, ResourceKind::two_point, ResourceKind::three_point, ResourceKind::four_point,
                      ResourceKind::ideal, ResourceKind::relative_phase_input}) {
        if (to_string(kind) == name) return kind;
    }
    return std::nullopt;
}

std::optional<FilterOrder> filter_order_for(ResourceKind kind) {
    switch (kind) {
        case ResourceKind::j0: return FilterOrder::j0();
        case ResourceKind::two_point: return FilterOrder::two_point();
        case ResourceKind::three_point: return FilterOrder::three_point();
        case ResourceKind::four_point: return FilterOrder::four_point();
        default: return std::nullopt;
    }
}

QuasiEprResource build_resource(ResourceKind kind, int total_photons, double beta, const ResourceOptions& options) {
    if (kind == ResourceKind::ideal) return QuasiEprResource::ideal(total_photons);
    if (kind == ResourceKind::relative_phase_input) {
        return make_resource(relative_phase_state({total_photons, 0, options.phi0}), beta);
    }
    const FilterOrder order = *filter_order_for(kind);
    return make_resource(filtered_input(total_photons, order, options.beta_for_f, options.phi0), beta);
}

BetaGrid BetaGrid::degrees(double start_deg, double stop_deg, double step_deg) {
    return {start_deg * kDegree, stop_deg * kDegree, step_deg * kDegree};
}

std::size_t BetaGrid::size() const {
    if (!(step > 0.0) || stop < start) return 0;
    return static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
}

void validate(const SweepSpec& spec) {
    std::vector<std::string> issues;
    const int n = spec.total_photons;
    if (n < 1) issues.emplace_back("N: must be >= 1");
    if (auto order = filter_order_for(spec.resource_kind); order && n >= 1) {
        if (!order->compatible_with(n)) {
            issues.emplace_back("N: resource " + to_string(spec.resource_kind) + " needs " +
                                (order->twice_level % 2 == 0 ? "even" : "odd") + " N");
        } else if (order->twice_level > n) {
            issues.emplace_back("N: too small for resource " + to_string(spec.resource_kind));
        }
    }
    const auto& g = spec.beta_grid;
    if (!std::isfinite(g.start)) issues.emplace_back("beta_grid.start: must be finite");
    if (!std::isfinite(g.stop)) issues.emplace_back("beta_grid.stop: must be finite");
    if (!(g.step > 0.0) || !std::isfinite(g.step)) issues.emplace_back("beta_grid.step: must be > 0");
    else if (g.stop < g.start) issues.emplace_back("beta_grid: stop must be >= start (grid is empty)");
    if (!(spec.alpha >= 0.0) || !std::isfinite(spec.alpha)) issues.emplace_back("alpha: must be finite and >= 0");
    if (spec.q_list) {
        if (spec.q_list->empty()) issues.emplace_back("q_list: must not be empty");
        for (int q : *spec.q_list) {
            if (q < 0) {
                issues.emplace_back("q_list: entries must be >= 0");
                break;
            }
        }
    }
    if (!std::isfinite(spec.resource_options.beta_for_f)) issues.emplace_back("beta_for_f: must be finite");
    if (!std::isfinite(spec.resource_options.phi0)) issues.emplace_back("phi0: must be finite");
    if (!issues.empty()) throw SpecError(std::move(issues));
}

unsigned default_thread_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("FOCKPORT_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return n;
}

namespace {

// Runs task(i) for i in [0, count) on up to `threads` workers. Each index
// writes only its own slot, so results do not depend on scheduling.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& task) {
    if (threads == 0) threads = default_thread_count();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count && !failed; i = next++) {
                try {
                    task(i);
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, unsigned threads) {
    validate(spec);
    const CoherentTarget target = coherent_coefficients(spec.alpha);
    const std::size_t grid_size = spec.beta_grid.size();

    std::vector<std::vector<SweepRow>> per_beta(grid_size);
    parallel_for(grid_size, threads, [&](std::size_t i) {
        const double beta = spec.beta_grid.at(i);
        const QuasiEprResource resource =
            build_resource(spec.resource_kind, spec.total_photons, beta, spec.resource_options);
        const EprQualityReport q_report = quality(resource);
        std::vector<int> qs;
        if (spec.q_list) {
            qs = *spec.q_list;
            std::sort(qs.begin(), qs.end());
        } else {
            for (int q = 0; q <= max_outcome(target, resource); ++q) qs.push_back(q);
        }
        auto& rows = per_beta[i];
        rows.reserve(qs.size());
        for (int q : qs) {
            rows.push_back({beta, q, evaluate_outcome(target, resource, q, spec.corrections), q_report});
        }
    });

    SweepResult result;
    result.spec = spec;
    for (auto& rows : per_beta) {
        result.rows.insert(result.rows.end(), std::make_move_iterator(rows.begin()),
                           std::make_move_iterator(rows.end()));
    }
    return result;
}

double find_beta_q_numeric(int total_photons, const BetaSearchOptions& options) {
    if (auto order = filter_order_for(options.resource_kind); order && !order->compatible_with(total_photons)) {
        throw DomainError("find_beta_q_numeric: N has the wrong parity for " + to_string(options.resource_kind));
    }
    if (total_photons < 1) throw DomainError("find_beta_q_numeric: N must be >= 1");
    const std::size_t count = options.grid.size();
    if (count == 0) throw DomainError("find_beta_q_numeric: empty grid");
    const CoherentTarget target = coherent_coefficients(options.alpha);

    auto score = [&](double beta) {
        const QuasiEprResource r = build_resource(options.resource_kind, total_photons, beta);
        switch (options.objective) {
            case BetaObjective::maximin_modulus: return quality(r).min_modulus;
            case BetaObjective::entropy: return quality(r).entropy;
            case BetaObjective::fidelity: {
                const FidelityOptions fo{true, ParityIndex::bob_field};
                const TeleportOutcome o = evaluate_outcome(target, r, total_photons - 1, fo);
                return o.fidelity.value_or(-std::numeric_limits<double>::infinity());
            }
        }
        return 0.0;
    };

    double best_beta = options.grid.at(0);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
        const double beta = options.grid.at(i);
        const double s = score(beta);
        if (s > best) {
            best = s;
            best_beta = beta;
        }
    }
    return best_beta;
}

Table to_table(const SweepResult& result) {
    Table t;
    t.columns = {"beta_rad",    "beta_deg",   "q",       "fidelity", "bound",
                 "probability", "min_modulus", "zero_count", "flatness", "entropy",
                 "normalized_entropy"};
    t.rows.reserve(result.rows.size());
    for (const auto& r : result.rows) {
        t.rows.push_back({r.beta, r.beta / kDegree, static_cast<double>(r.q), r.outcome.fidelity, r.outcome.bound,
                          r.outcome.probability, r.quality.min_modulus, static_cast<double>(r.quality.zero_count),
                          r.quality.flatness, r.quality.entropy, r.quality.normalized_entropy});
    }
    return t;
}

// ---------------------------------------------------------------------------
// Figures

namespace {

Table amplitude_table(const Amplitudes& amps, bool with_phase) {
    Table t;
    t.columns = {"n", "m", "modulus"};
    if (with_phase) t.columns.emplace_back("phase");
    const int total = static_cast<int>(amps.size()) - 1;
    const QuasiEprResource r{total, amps};
    const std::vector<double> phases = phase_distribution(r);
    for (int n = 0; n <= total; ++n) {
        std::vector<std::optional<double>> row{static_cast<double>(n), 0.5 * (2 * n - total), std::abs(amps[n])};
        if (with_phase) row.emplace_back(phases[n]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

// Moduli of rotate(input, beta) over a beta grid, one row per (beta, n).
Table moduli_vs_beta(const SpinState& input, const BetaGrid& grid, unsigned threads) {
    const std::size_t count = grid.size();
    std::vector<Amplitudes> out(count);
    parallel_for(count, threads, [&](std::size_t i) { out[i] = rotate_about_x(input, grid.at(i)).amplitudes(); });
    Table t;
    t.columns = {"beta_deg", "n", "m", "modulus"};
    const int total = input.j().photons();
    for (std::size_t i = 0; i < count; ++i) {
        for (int n = 0; n <= total; ++n) {
            t.rows.push_back({grid.at(i) / kDegree, static_cast<double>(n), 0.5 * (2 * n - total), std::abs(out[i][n])});
        }
    }
    return t;
}

}  // namespace

SweepSpec figure6_spec() {
    SweepSpec s;
    s.resource_kind = ResourceKind::two_point;
    s.total_photons = 21;
    s.beta_grid = BetaGrid::degrees(0.0, 180.0);
    s.alpha = 3.0;
    return s;
}

SweepSpec figure7_spec() {
    SweepSpec s;
    s.resource_kind = ResourceKind::j0;
    s.total_photons = 20;
    s.beta_grid = BetaGrid::degrees(45.0, 135.0);
    s.alpha = 3.0;
    s.q_list = std::vector<int>{19};
    s.corrections = {true, ParityIndex::bob_field};
    return s;
}

FigureDataset figure_dataset(int figure_id, unsigned threads) {
    FigureDataset fig;
    fig.figure_id = figure_id;
    const BetaGrid full = BetaGrid::degrees(0.0, 180.0);
    switch (figure_id) {
        case 1:
            fig.title = "moduli of the rotated relative-phase state, N=20, phi0=0";
            fig.blocks.push_back({"N=20", moduli_vs_beta(relative_phase_state({20, 0, 0.0}), full, threads)});
            break;
        case 2:
            fig.title = "moduli of |j 0(beta)>, N=20";
            fig.blocks.push_back({"N=20", moduli_vs_beta(filtered_input(20, FilterOrder::j0()), full, threads)});
            break;
        case 3: {
            fig.title = "moduli and phases of |j 0(beta)>, N=20, at 90 and 85.5 degrees";
            for (double deg : {90.0, 85.5}) {
                const QuasiEprResource r = build_resource(ResourceKind::j0, 20, deg * kDegree);
                fig.blocks.push_back({deg == 90.0 ? "beta_deg=90" : "beta_deg=85.5", amplitude_table(r.s, true)});
            }
            break;
        }
        case 4: {
            fig.title = "moduli of |j 0(beta_Q)> for N = 200, 2000, 20000";
            const std::vector<int> sizes{200, 2000, 20000};
            std::vector<Amplitudes> amps(sizes.size());
            parallel_for(sizes.size(), threads, [&](std::size_t i) {
                amps[i] = build_resource(ResourceKind::j0, sizes[i], beta_q(sizes[i])).s;
            });
            for (std::size_t i = 0; i < sizes.size(); ++i) {
                fig.blocks.push_back({"N=" + std::to_string(sizes[i]), amplitude_table(amps[i], false)});
            }
            break;
        }
        case 5:
            fig.title = "moduli of the two-point resource vs beta, N=21";
            fig.blocks.push_back(
                {"N=21", moduli_vs_beta(filtered_input(21, FilterOrder::two_point()), full, threads)});
            break;
        case 6:
            fig.title = "fidelity vs beta and q, two-point resource, N=21, alpha=3";
            fig.blocks.push_back({"N=21", to_table(run_sweep(figure6_spec(), threads))});
            break;
        case 7:
            fig.title = "fidelity vs beta at q=19, j0 resource with parity correction, N=20, alpha=3";
            fig.blocks.push_back({"N=20 q=19", to_table(run_sweep(figure7_spec(), threads))});
            break;
        default:
            throw DomainError("unknown figure id " + std::to_string(figure_id) + " (expected 1..7)");
    }
    return fig;
}

}  // namespace fockport
