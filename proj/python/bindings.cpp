#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>
#include <string>

#include "fockport/errors.hpp"
#include "fockport/quasi_epr.hpp"
#include "fockport/su2_kernel.hpp"
#include "fockport/sweep.hpp"
#include "fockport/teleport.hpp"

namespace py = pybind11;
using namespace fockport;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

// Half-integer m from Python; anything off the half-integer lattice is rejected.
SpinProjection projection(double m) {
    const double twice = 2.0 * m;
    if (std::abs(twice - std::round(twice)) > 1e-9) throw DomainError("m must be a multiple of 1/2");
    return SpinProjection(static_cast<int>(std::lround(twice)));
}

py::array_t<double> to_numpy(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

CArray to_numpy(const Amplitudes& v) {
    CArray out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

Amplitudes from_numpy(const CArray& a) {
    if (a.ndim() != 1) throw DomainError("amplitudes must be one-dimensional");
    if (a.size() == 0) throw DomainError("amplitudes must not be empty");
    return Amplitudes(a.data(), a.data() + a.size());
}

QuasiEprResource resource_from(const CArray& s) {
    const Amplitudes amps = from_numpy(s);
    return QuasiEprResource::from_state(SpinState(SpinJ(static_cast<int>(amps.size()) - 1), amps));
}

ResourceKind kind_from(const std::string& name) {
    const auto kind = parse_resource_kind(name);
    if (!kind) throw DomainError("unknown resource kind '" + name + "'");
    return *kind;
}

FidelityOptions options_from(bool parity_correction, const std::string& parity_index) {
    FidelityOptions o;
    o.parity_correction = parity_correction;
    if (parity_index == "bob") o.parity_index = ParityIndex::bob_field;
    else if (parity_index == "shifted") o.parity_index = ParityIndex::shifted;
    else throw DomainError("parity_index must be 'bob' or 'shifted'");
    return o;
}

py::dict table_dict(const Table& t) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    py::array_t<double> data({static_cast<py::ssize_t>(t.rows.size()), static_cast<py::ssize_t>(t.columns.size())});
    auto w = data.mutable_unchecked<2>();
    for (std::size_t r = 0; r < t.rows.size(); ++r)
        for (std::size_t c = 0; c < t.columns.size(); ++c) w(r, c) = t.rows[r][c].value_or(nan);
    py::dict d;
    d["columns"] = t.columns;
    d["data"] = data;
    return d;
}

}  // namespace

PYBIND11_MODULE(_fockport, m) {
    m.doc() = "Number-sum / relative-phase teleportation with quasi-EPR resources.";
    m.attr("__version__") = kLibraryVersion;

    py::register_exception<UnreachableOutcome>(m, "UnreachableOutcome", PyExc_RuntimeError);
    py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    m.def(
        "wigner_d",
        [](int n, double m_out, double m_in, double beta) {
            return wigner_d_element(SpinJ(n), projection(m_out), projection(m_in), beta);
        },
        py::arg("n"), py::arg("m_out"), py::arg("m_in"), py::arg("beta"),
        "d^j_{m_out m_in}(beta) for j = n/2.");
    m.def(
        "wigner_d_column",
        [](int n, double m_in, double beta) { return to_numpy(wigner_d_column(SpinJ(n), projection(m_in), beta).values); },
        py::arg("n"), py::arg("m_in"), py::arg("beta"), "Column over m_out = -j..j.");
    m.def(
        "rotate",
        [](const CArray& amps, double beta) {
            const Amplitudes a = from_numpy(amps);
            return to_numpy(rotate_about_x(SpinState::normalized(SpinJ(static_cast<int>(a.size()) - 1), a), beta).amplitudes());
        },
        py::arg("amplitudes"), py::arg("beta"),
        "exp(-i beta J_x) applied to amplitudes indexed by n = m + j (normalized first).");

    m.def("beta_q", &beta_q, py::arg("n"));
    m.def(
        "find_beta_q",
        [](int n, const std::string& objective, const std::string& resource, double alpha) {
            BetaSearchOptions o;
            o.resource_kind = kind_from(resource);
            o.alpha = alpha;
            if (objective == "maximin") o.objective = BetaObjective::maximin_modulus;
            else if (objective == "entropy") o.objective = BetaObjective::entropy;
            else if (objective == "fidelity") o.objective = BetaObjective::fidelity;
            else throw DomainError("objective must be maximin, entropy or fidelity");
            return find_beta_q_numeric(n, o);
        },
        py::arg("n"), py::arg("objective") = "maximin", py::arg("resource") = "j0", py::arg("alpha") = 3.0);

    m.def(
        "resource",
        [](const std::string& kind, int n, double beta) { return to_numpy(build_resource(kind_from(kind), n, beta).s); },
        py::arg("kind"), py::arg("n"), py::arg("beta"),
        "Resource amplitudes s_n, n = 0..N. kind: j0, 2pt, 3pt, 4pt, ideal, relative-phase-input.");
    m.def(
        "quality",
        [](const CArray& s) {
            const EprQualityReport r = quality(resource_from(s));
            py::dict d;
            d["min_modulus"] = r.min_modulus;
            d["zero_count"] = r.zero_count;
            d["flatness"] = r.flatness;
            d["entropy"] = r.entropy;
            d["normalized_entropy"] = r.normalized_entropy;
            return d;
        },
        py::arg("s"));
    m.def(
        "coherent_coefficients", [](double alpha) { return to_numpy(coherent_coefficients(alpha).coeffs); },
        py::arg("alpha"));

    m.def(
        "fidelity",
        [](double alpha, const CArray& s, int q, bool parity_correction, const std::string& parity_index) {
            return fidelity(coherent_coefficients(alpha), resource_from(s), q, options_from(parity_correction, parity_index));
        },
        py::arg("alpha"), py::arg("s"), py::arg("q"), py::arg("parity_correction") = false,
        py::arg("parity_index") = "bob");
    m.def(
        "fidelity_bound",
        [](double alpha, int q, int n) { return fidelity_bound(coherent_coefficients(alpha), q, n); },
        py::arg("alpha"), py::arg("q"), py::arg("n"));
    m.def(
        "outcomes",
        [](double alpha, const CArray& s, bool parity_correction, const std::string& parity_index) {
            const auto rows = evaluate_all_outcomes(coherent_coefficients(alpha), resource_from(s),
                                                    options_from(parity_correction, parity_index));
            std::vector<double> q, f, b, p;
            for (const auto& r : rows) {
                q.push_back(r.q);
                f.push_back(r.fidelity.value_or(std::numeric_limits<double>::quiet_NaN()));
                b.push_back(r.bound);
                p.push_back(r.probability);
            }
            py::dict d;
            d["q"] = to_numpy(q);
            d["fidelity"] = to_numpy(f);
            d["bound"] = to_numpy(b);
            d["probability"] = to_numpy(p);
            return d;
        },
        py::arg("alpha"), py::arg("s"), py::arg("parity_correction") = false, py::arg("parity_index") = "bob",
        "Every outcome q = 0..N+k_max; unreachable rows carry fidelity NaN.");
    m.def(
        "average_fidelity",
        [](double alpha, const CArray& s, bool parity_correction, const std::string& parity_index) {
            return average_fidelity(coherent_coefficients(alpha), resource_from(s),
                                    options_from(parity_correction, parity_index));
        },
        py::arg("alpha"), py::arg("s"), py::arg("parity_correction") = false, py::arg("parity_index") = "bob");
    m.def(
        "high_fidelity_region",
        [](double alpha, int n) {
            const QRange r = high_fidelity_region(alpha, n);
            return py::make_tuple(r.lo, r.hi);
        },
        py::arg("alpha"), py::arg("n"));

    m.def(
        "figure",
        [](int id, unsigned threads) {
            const FigureDataset fig = figure_dataset(id, threads);
            py::list blocks;
            for (const auto& b : fig.blocks) {
                py::dict d = table_dict(b.table);
                d["label"] = b.label;
                blocks.append(d);
            }
            py::dict out;
            out["id"] = fig.figure_id;
            out["title"] = fig.title;
            out["blocks"] = blocks;
            return out;
        },
        py::arg("id"), py::arg("threads") = 0u, "Figure dataset as labelled blocks of (columns, data).");
}
