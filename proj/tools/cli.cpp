#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "fockport/errors.hpp"
#include "fockport/quasi_epr.hpp"
#include "fockport/states.hpp"
#include "fockport/su2_kernel.hpp"
#include "fockport/sweep.hpp"
#include "fockport/teleport.hpp"
#include "output.hpp"

namespace fockport::cli {

namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

/// Malformed input that is not a numeric domain problem.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    std::string format = "csv";
    int precision = 12;
    bool timestamp = false;
    unsigned threads = 0;

    [[nodiscard]] OutputFormat output_format() const {
        return {format == "json" ? FormatKind::json : FormatKind::csv, precision};
    }
};

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void add_common_meta(OutputTable& t, const std::string& command, const CommonOptions& common) {
    t.meta.insert(t.meta.begin(), {"command", command});
    t.meta.insert(t.meta.begin() + 1, {"version", std::string(kLibraryVersion)});
    if (common.timestamp) t.meta.emplace_back("timestamp", utc_timestamp());
}

SpinProjection projection_from_value(double m) {
    const double twice = 2.0 * m;
    const double rounded = std::round(twice);
    if (std::abs(twice - rounded) > 1e-9) {
        throw DomainError("projection m must be an integer or half-integer, got " + std::to_string(m));
    }
    return SpinProjection(static_cast<int>(rounded));
}

// Lines of "m re [im]", separated by whitespace or commas; '#' starts a comment.
SpinState read_state_file(const std::string& path, SpinJ j) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open state file " + path);
    Amplitudes amps(j.dimension());
    std::string line;
    int line_no = 0;
    bool any = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double m = 0.0;
        double re = 0.0;
        double im = 0.0;
        if (!(ls >> m)) continue;
        if (!(ls >> re)) throw UsageError(path + ":" + std::to_string(line_no) + ": expected 'm re [im]'");
        ls >> im;
        const SpinProjection p = projection_from_value(m);
        require_projection(j, p);
        amps[p.index_in(j)] += Complex(re, im);
        any = true;
    }
    if (!any) throw UsageError("state file " + path + " has no amplitudes");
    return SpinState::normalized(j, std::move(amps));
}

void add_amplitude_rows(OutputTable& t, const Amplitudes& amps, bool index_by_n) {
    const int total = static_cast<int>(amps.size()) - 1;
    const std::vector<double> phases = phase_distribution({total, amps});
    for (int n = 0; n <= total; ++n) {
        const double m = 0.5 * (2 * n - total);
        Row row;
        if (index_by_n) row.emplace_back(static_cast<long long>(n));
        row.emplace_back(m);
        row.emplace_back(amps[n].real());
        row.emplace_back(amps[n].imag());
        row.emplace_back(std::abs(amps[n]));
        row.emplace_back(phases[n]);
        t.rows.push_back(std::move(row));
    }
}

void add_quality_meta(OutputTable& t, const QuasiEprResource& r) {
    const EprQualityReport q = quality(r);
    t.meta.emplace_back("min_modulus", q.min_modulus);
    t.meta.emplace_back("zero_count", static_cast<long long>(q.zero_count));
    t.meta.emplace_back("flatness", q.flatness);
    t.meta.emplace_back("entropy", q.entropy);
    t.meta.emplace_back("normalized_entropy", q.normalized_entropy);
}

ResourceKind require_kind(const std::string& name) {
    if (auto k = parse_resource_kind(name)) return *k;
    throw UsageError("unknown resource kind '" + name + "'");
}

double default_beta(ResourceKind kind, int total_photons) {
    if (kind == ResourceKind::j0 && total_photons >= 1) return beta_q(total_photons);
    return std::numbers::pi / 2.0;
}

// ---------------------------------------------------------------------------
// Sweep spec parsing

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw SpecError({key + ": expected a boolean, got '" + v + "'"});
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used == v.size()) return d;
    } catch (const std::exception&) {
    }
    throw SpecError({key + ": expected a number, got '" + v + "'"});
}

int parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const int i = std::stoi(v, &used);
        if (used == v.size()) return i;
    } catch (const std::exception&) {
    }
    throw SpecError({key + ": expected an integer, got '" + v + "'"});
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::optional<std::vector<int>> parse_q_list(const std::string& v) {
    if (v == "all") return std::nullopt;
    std::vector<int> qs;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) qs.push_back(parse_int("q", item));
    }
    return qs;
}

SweepSpec spec_from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs) {
    if (pairs.empty()) throw SpecError({"spec: file is empty"});
    SweepSpec spec;
    double start_deg = 0.0;
    double stop_deg = 180.0;
    double step_deg = 0.5;
    std::vector<std::string> issues;
    for (const auto& [key, value] : pairs) {
        try {
            if (key == "resource") {
                auto k = parse_resource_kind(value);
                if (!k) throw SpecError({"resource: unknown kind '" + value + "'"});
                spec.resource_kind = *k;
            } else if (key == "n" || key == "N") {
                spec.total_photons = parse_int("N", value);
            } else if (key == "beta_start_deg") {
                start_deg = parse_double(key, value);
            } else if (key == "beta_stop_deg") {
                stop_deg = parse_double(key, value);
            } else if (key == "beta_step_deg") {
                step_deg = parse_double(key, value);
            } else if (key == "alpha") {
                spec.alpha = parse_double(key, value);
            } else if (key == "q") {
                spec.q_list = parse_q_list(value);
            } else if (key == "parity_correction") {
                spec.corrections.parity_correction = parse_bool(key, value);
            } else if (key == "parity_index") {
                if (value == "bob") spec.corrections.parity_index = ParityIndex::bob_field;
                else if (value == "shifted") spec.corrections.parity_index = ParityIndex::shifted;
                else throw SpecError({"parity_index: expected 'bob' or 'shifted'"});
            } else if (key == "phi0") {
                spec.resource_options.phi0 = parse_double(key, value);
            } else if (key == "beta_for_f_deg") {
                spec.resource_options.beta_for_f = parse_double(key, value) * kDegree;
            } else {
                issues.push_back(key + ": unknown key");
            }
        } catch (const SpecError& e) {
            issues.insert(issues.end(), e.issues().begin(), e.issues().end());
        }
    }
    if (!issues.empty()) throw SpecError(std::move(issues));
    spec.beta_grid = BetaGrid::degrees(start_deg, stop_deg, step_deg);
    validate(spec);
    return spec;
}

std::string json_scalar_to_string(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_array()) {
        std::string s;
        for (const auto& e : v) {
            if (!s.empty()) s += ',';
            s += json_scalar_to_string(e);
        }
        return s;
    }
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) {
        std::ostringstream os;
        os.precision(17);
        os << v.get<double>();
        return os.str();
    }
    throw SpecError({"spec: unsupported JSON value"});
}

}  // namespace

SweepSpec parse_sweep_spec(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> pairs;
    const std::string body = trim(text);
    if (!body.empty() && body.front() == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(body);
        } catch (const nlohmann::json::parse_error& e) {
            throw SpecError({std::string("spec: invalid JSON: ") + e.what()});
        }
        for (const auto& [key, value] : doc.items()) pairs.emplace_back(key, json_scalar_to_string(value));
    } else {
        std::istringstream in(body);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw SpecError({"line " + std::to_string(line_no) + ": expected key=value"});
            }
            pairs.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
    }
    return spec_from_pairs(pairs);
}

namespace {

// ---------------------------------------------------------------------------
// Subcommands

struct RotateArgs {
    int n = 0;
    std::optional<double> m;
    std::string state_file;
    double beta_deg = 0.0;
};

OutputTable cmd_rotate(const RotateArgs& a) {
    const SpinJ j(a.n);
    const SpinState input = a.state_file.empty() ? SpinState::basis(j, projection_from_value(*a.m))
                                                 : read_state_file(a.state_file, j);
    const SpinState out = rotate_about_x(input, a.beta_deg * kDegree);
    OutputTable t;
    t.meta = {{"n", static_cast<long long>(a.n)}, {"beta_deg", a.beta_deg}};
    t.columns = {"m", "re", "im", "modulus", "phase"};
    add_amplitude_rows(t, out.amplitudes(), false);
    return t;
}

struct ResourceArgs {
    std::string resource = "j0";
    int n = 20;
    std::optional<double> beta_deg;
    double beta_for_f_deg = 90.0;
    double phi0 = 0.0;
};

OutputTable cmd_resource(const ResourceArgs& a) {
    const ResourceKind kind = require_kind(a.resource);
    const double beta = a.beta_deg ? *a.beta_deg * kDegree : default_beta(kind, a.n);
    const QuasiEprResource r = build_resource(kind, a.n, beta, {a.beta_for_f_deg * kDegree, a.phi0});
    OutputTable t;
    t.meta = {{"resource", to_string(kind)}, {"n", static_cast<long long>(a.n)}, {"beta_deg", beta / kDegree}};
    add_quality_meta(t, r);
    t.columns = {"n", "m", "re", "im", "modulus", "phase"};
    add_amplitude_rows(t, r.s, true);
    return t;
}

struct TeleportArgs {
    std::string resource = "j0";
    int n = 20;
    std::optional<double> beta_deg;
    double alpha = 3.0;
    std::optional<int> q;
    bool all_q = false;
    bool parity = false;
    std::string parity_index = "bob";
    double tail_tol = kDefaultTailTolerance;
};

Row outcome_row(const TeleportOutcome& o) {
    Row row{static_cast<long long>(o.q)};
    if (o.fidelity) row.emplace_back(*o.fidelity);
    else row.emplace_back(std::monostate{});
    row.emplace_back(o.bound);
    row.emplace_back(o.probability);
    return row;
}

OutputTable cmd_teleport(const TeleportArgs& a) {
    const ResourceKind kind = require_kind(a.resource);
    const double beta = a.beta_deg ? *a.beta_deg * kDegree : default_beta(kind, a.n);
    const QuasiEprResource r = build_resource(kind, a.n, beta);
    const CoherentTarget target = coherent_coefficients(a.alpha, a.tail_tol);
    const FidelityOptions opts{a.parity, a.parity_index == "shifted" ? ParityIndex::shifted : ParityIndex::bob_field};

    OutputTable t;
    t.meta = {{"resource", to_string(kind)},
              {"n", static_cast<long long>(a.n)},
              {"beta_deg", beta / kDegree},
              {"alpha", a.alpha},
              {"k_max", static_cast<long long>(target.k_max)},
              {"parity_correction", std::string(a.parity ? "true" : "false")},
              {"parity_index", a.parity_index}};
    t.columns = {"q", "fidelity", "bound", "probability"};
    if (a.all_q) {
        for (const auto& o : evaluate_all_outcomes(target, r, opts)) t.rows.push_back(outcome_row(o));
        const double avg = average_fidelity(target, r, opts);
        t.rows.push_back({std::string("average"), avg, std::monostate{}, std::monostate{}});
        t.meta.emplace_back("average_fidelity", avg);
    } else {
        if (*a.q < 0) throw DomainError("q must be non-negative");
        t.rows.push_back(outcome_row(evaluate_outcome(target, r, *a.q, opts)));
    }
    return t;
}

void add_table_rows(OutputTable& t, const Table& table, const std::string& block) {
    static const std::vector<std::string> int_columns{"q", "n", "zero_count"};
    if (t.columns.empty()) {
        if (!block.empty()) t.columns.emplace_back("block");
        t.columns.insert(t.columns.end(), table.columns.begin(), table.columns.end());
    }
    for (auto& row : to_rows(table, int_columns)) {
        if (!block.empty()) row.insert(row.begin(), block);
        t.rows.push_back(std::move(row));
    }
}

OutputTable cmd_sweep(const std::string& spec_path, unsigned threads) {
    std::ifstream in(spec_path);
    if (!in) throw UsageError("cannot open spec file " + spec_path);
    std::stringstream buf;
    buf << in.rdbuf();
    const SweepSpec spec = parse_sweep_spec(buf.str());
    const SweepResult result = run_sweep(spec, threads);

    OutputTable t;
    std::string qs = "all";
    if (spec.q_list) {
        qs.clear();
        for (int q : *spec.q_list) qs += (qs.empty() ? "" : ",") + std::to_string(q);
    }
    t.meta = {{"resource", to_string(spec.resource_kind)},
              {"n", static_cast<long long>(spec.total_photons)},
              {"beta_start_deg", spec.beta_grid.start / kDegree},
              {"beta_stop_deg", spec.beta_grid.stop / kDegree},
              {"beta_step_deg", spec.beta_grid.step / kDegree},
              {"alpha", spec.alpha},
              {"q", qs},
              {"parity_correction", std::string(spec.corrections.parity_correction ? "true" : "false")},
              {"library_version", result.library_version}};
    add_table_rows(t, to_table(result), "");
    return t;
}

OutputTable cmd_figure(int id, unsigned threads) {
    const FigureDataset fig = figure_dataset(id, threads);
    OutputTable t;
    t.meta = {{"figure", static_cast<long long>(id)}, {"title", fig.title}};
    for (const auto& block : fig.blocks) add_table_rows(t, block.table, block.label);
    return t;
}

struct BetaQArgs {
    int n = 20;
    std::string resource = "j0";
    std::string objective = "maximin";
    double alpha = 3.0;
};

OutputTable cmd_beta_q(const BetaQArgs& a) {
    BetaSearchOptions opts;
    opts.resource_kind = require_kind(a.resource);
    opts.alpha = a.alpha;
    if (a.objective == "entropy") opts.objective = BetaObjective::entropy;
    else if (a.objective == "fidelity") opts.objective = BetaObjective::fidelity;
    else opts.objective = BetaObjective::maximin_modulus;
    const double numeric = find_beta_q_numeric(a.n, opts);
    const double formula = beta_q(a.n);
    OutputTable t;
    t.meta = {{"objective", a.objective}, {"resource", a.resource}};
    t.columns = {"n", "beta_numeric_deg", "beta_formula_deg", "difference_deg"};
    t.rows.push_back({static_cast<long long>(a.n), numeric / kDegree, formula / kDegree, (numeric - formula) / kDegree});
    return t;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"beam-splitter entanglement and number-phase teleportation", "fockport"};
    app.require_subcommand(1);
    CommonOptions common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--precision", common.precision, "Significant digits")->check(CLI::Range(1, 17));
        sub->add_flag("--timestamp", common.timestamp, "Add a UTC timestamp to the metadata");
    };

    RotateArgs rot;
    auto* rotate = app.add_subcommand("rotate", "Rotate a spin state through a beam splitter");
    rotate->add_option("--n", rot.n, "Total photon number N = 2j")->required()->check(CLI::NonNegativeNumber);
    auto* m_opt = rotate->add_option("--m", rot.m, "Input projection m (basis state |j m>)");
    auto* file_opt = rotate->add_option("--input-state-file", rot.state_file, "File of 'm re [im]' lines")
                         ->check(CLI::ExistingFile);
    m_opt->excludes(file_opt);
    rotate->add_option("--beta-deg", rot.beta_deg, "Beam-splitter angle in degrees")->required();
    add_common(rotate);

    ResourceArgs res;
    auto* resource = app.add_subcommand("resource", "Build a quasi-EPR resource and report its quality");
    resource->add_option("--resource", res.resource, "j0|2pt|3pt|4pt|ideal|relative-phase-input");
    resource->add_option("--n", res.n, "Total photon number")->required();
    resource->add_option("--beta-deg", res.beta_deg, "Beam-splitter angle (default: beta_Q for j0, else 90)");
    resource->add_option("--beta-for-f-deg", res.beta_for_f_deg, "Angle for the f-coefficients of 3pt/4pt");
    resource->add_option("--phi0", res.phi0, "Phase origin (radians)");
    add_common(resource);

    TeleportArgs tel;
    auto* teleport = app.add_subcommand("teleport", "Teleportation fidelity for number-sum outcomes");
    teleport->add_option("--resource", tel.resource, "j0|2pt|3pt|4pt|ideal|relative-phase-input");
    teleport->add_option("--n", tel.n, "Resource photon number")->required();
    teleport->add_option("--beta-deg", tel.beta_deg, "Beam-splitter angle (default: beta_Q for j0, else 90)");
    teleport->add_option("--alpha", tel.alpha, "Real coherent amplitude of the target")->check(CLI::NonNegativeNumber);
    auto* q_opt = teleport->add_option("--q", tel.q, "Number-sum outcome");
    auto* all_opt = teleport->add_flag("--all-q", tel.all_q, "Every outcome plus the average fidelity");
    q_opt->excludes(all_opt);
    teleport->add_flag("--parity-correction", tel.parity, "Apply e^{i(-1)^q (pi/2) N_B^2}");
    teleport->add_option("--parity-index", tel.parity_index, "Index carrying the parity phase")
        ->check(CLI::IsMember({"bob", "shifted"}));
    teleport->add_option("--tail-tol", tel.tail_tol, "Coherent truncation tolerance");
    add_common(teleport);

    std::string spec_path;
    auto* sweep = app.add_subcommand("sweep", "Run a sweep from a spec file (JSON or key=value)");
    sweep->add_option("--spec", spec_path, "Spec file")->required();
    sweep->add_option("--threads", common.threads, "Worker threads (0 = default)");
    add_common(sweep);

    int figure_id = 0;
    auto* figure = app.add_subcommand("figure", "Emit the dataset behind a figure");
    figure->add_option("--id", figure_id, "Figure id 1..7")->required()->check(CLI::Range(1, kFigureCount));
    figure->add_option("--threads", common.threads, "Worker threads (0 = default)");
    add_common(figure);

    BetaQArgs bq;
    auto* betaq = app.add_subcommand("beta-q", "Grid search for the best quasi-EPR angle");
    betaq->add_option("--n", bq.n, "Total photon number")->required();
    betaq->add_option("--resource", bq.resource, "Resource kind");
    betaq->add_option("--objective", bq.objective, "maximin|entropy|fidelity")
        ->check(CLI::IsMember({"maximin", "entropy", "fidelity"}));
    betaq->add_option("--alpha", bq.alpha, "Target amplitude for the fidelity objective");
    add_common(betaq);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (*teleport && !tel.q && !tel.all_q) {
            throw CLI::ValidationError("teleport", "one of --q or --all-q is required");
        }
        if (*rotate && !rot.m && rot.state_file.empty()) {
            throw CLI::ValidationError("rotate", "one of --m or --input-state-file is required");
        }
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        OutputTable table;
        std::string command;
        if (*rotate) {
            command = "rotate";
            table = cmd_rotate(rot);
        } else if (*resource) {
            command = "resource";
            table = cmd_resource(res);
        } else if (*teleport) {
            command = "teleport";
            table = cmd_teleport(tel);
        } else if (*sweep) {
            command = "sweep";
            table = cmd_sweep(spec_path, common.threads);
        } else if (*figure) {
            command = "figure";
            table = cmd_figure(figure_id, common.threads);
        } else {
            command = "beta-q";
            table = cmd_beta_q(bq);
        }
        add_common_meta(table, command, common);
        write(table, common.output_format(), out);
        return kExitOk;
    } catch (const SpecError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const UnreachableOutcome& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    }
}

}  // namespace fockport::cli
