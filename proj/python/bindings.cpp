#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>

#include "spinsim/montecarlo.hpp"
#include "spinsim/oracle.hpp"
#include "spinsim/protocol.hpp"
#include "spinsim/report.hpp"
#include "spinsim/verify.hpp"

namespace py = pybind11;
using namespace spinsim;

namespace {

using Direction = std::array<double, 3>;

UnitVector3 direction(const Direction& v) { return UnitVector3::normalized(v[0], v[1], v[2]); }

py::array_t<Complex> to_numpy(const ComplexMatrix& m) {
    const auto d = static_cast<py::ssize_t>(m.dim());
    py::array_t<Complex> out({d, d});
    auto view = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < d; ++i)
        for (py::ssize_t j = 0; j < d; ++j) view(i, j) = m(i, j);
    return out;
}

py::array_t<double> to_numpy(const OutcomeDistribution& dist) {
    const auto d = static_cast<py::ssize_t>(dist.dim());
    py::array_t<double> out({d, d});
    auto view = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < d; ++i)
        for (py::ssize_t j = 0; j < d; ++j) view(i, j) = dist.at(static_cast<int>(i), static_cast<int>(j));
    return out;
}

OutcomeDistribution from_numpy(TwoSpin two_s, const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2 || a.shape(0) != two_s.dim() || a.shape(1) != two_s.dim()) {
        throw std::invalid_argument("distribution must be a (2s+1) x (2s+1) array");
    }
    OutcomeDistribution dist(two_s);
    auto view = a.unchecked<2>();
    for (int i = 0; i < two_s.dim(); ++i)
        for (int j = 0; j < two_s.dim(); ++j) dist.at(i, j) = view(i, j);
    return dist;
}

py::object json_to_python(const nlohmann::ordered_json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Classical n-cbit simulation of two spin-s singlet correlations, with an exact quantum oracle.";

    m.def("parse_spin", [](const std::string& text) { return parse_spin(text).two_s(); },
          "Returns 2s for a spin string such as '3/2'.");

    m.def("spin_operators", [](const std::string& spin) {
        const SpinOperators ops = build_spin_operators(parse_spin(spin));
        return py::make_tuple(to_numpy(ops.jx), to_numpy(ops.jy), to_numpy(ops.jz));
    });

    m.def("singlet", [](const std::string& spin) {
        const StateVector psi = build_singlet(parse_spin(spin));
        return py::array_t<Complex>(static_cast<py::ssize_t>(psi.size()), psi.data());
    });

    m.def("eigendecompose_hermitian", [](const py::array_t<Complex, py::array::c_style | py::array::forcecast>& a) {
        if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw std::invalid_argument("expected a square matrix");
        ComplexMatrix mat(static_cast<std::size_t>(a.shape(0)));
        auto view = a.unchecked<2>();
        for (py::ssize_t i = 0; i < a.shape(0); ++i)
            for (py::ssize_t j = 0; j < a.shape(1); ++j) mat(i, j) = view(i, j);
        const Spectrum sp = eigendecompose_hermitian(mat);
        return py::make_tuple(py::array_t<double>(static_cast<py::ssize_t>(sp.eigenvalues.size()), sp.eigenvalues.data()),
                              to_numpy(sp.vectors));
    });

    m.def("correlation_closed_form", [](const std::string& spin, const Direction& a, const Direction& b) {
        return quantum_correlation_closed_form(parse_spin(spin), direction(a), direction(b));
    });

    m.def("correlation_matrix", [](const std::string& spin, const Direction& a, const Direction& b) {
        return quantum_correlation_matrix(parse_spin(spin), direction(a), direction(b));
    });

    m.def("joint_distribution", [](const std::string& spin, const Direction& a, const Direction& b) {
        return to_numpy(quantum_joint_distribution(parse_spin(spin), direction(a), direction(b)));
    }, "Born-rule table; row i is Alice's outcome s - i, column j is Bob's s - j.");

    m.def("run_round", [](const std::string& spin, const Direction& a, const Direction& b, std::uint64_t seed,
                          std::uint64_t round_index) {
        CounterRng rng(seed, round_index);
        const ProtocolRound r = run_round(parse_spin(spin), direction(a), direction(b), rng);
        py::list lambdas;
        py::list mus;
        for (const auto& v : r.randomness.lambdas()) lambdas.append(py::make_tuple(v.x(), v.y(), v.z()));
        for (const auto& v : r.randomness.mus()) mus.append(py::make_tuple(v.x(), v.y(), v.z()));
        py::list bits;
        for (auto c : r.messages.bits()) bits.append(static_cast<int>(c));
        py::dict out;
        out["lambdas"] = lambdas;
        out["mus"] = mus;
        out["messages"] = bits;
        out["alpha_doubled"] = r.alpha_doubled;
        out["beta_doubled"] = r.beta_doubled;
        out["bits_sent"] = r.bits_sent;
        return out;
    }, py::arg("spin"), py::arg("a"), py::arg("b"), py::arg("seed") = kDefaultSeed, py::arg("round_index") = 0);

    m.def("estimate", [](const std::string& spin, const Direction& a, const Direction& b, std::int64_t trials,
                         std::uint64_t seed, int workers) {
        EstimatorConfig config;
        config.two_s = parse_spin(spin);
        config.a = direction(a);
        config.b = direction(b);
        config.trials = trials;
        config.master_seed = seed;
        config.workers = workers;
        SimulationReport report;
        {
            py::gil_scoped_release release;
            report = estimate(config);
        }
        return json_to_python(to_json(report));
    }, py::arg("spin"), py::arg("a"), py::arg("b"), py::arg("trials") = 100000, py::arg("seed") = kDefaultSeed,
       py::arg("workers") = 1);

    m.def("sweep", [](const std::string& spin, std::int64_t trials, int points, std::uint64_t seed, int workers) {
        SweepResult result;
        {
            py::gil_scoped_release release;
            result = sweep(parse_spin(spin), trials, points, seed, workers);
        }
        return json_to_python(to_json(result));
    }, py::arg("spin"), py::arg("trials") = 100000, py::arg("points") = 19, py::arg("seed") = kDefaultSeed,
       py::arg("workers") = 1);

    m.def("chi_squared_uniform", [](const std::vector<std::int64_t>& counts) { return chi_squared_uniform(counts); });

    m.def("total_variation_distance", [](const std::string& spin, const py::array_t<double>& p,
                                         const py::array_t<double>& q) {
        const TwoSpin s = parse_spin(spin);
        return total_variation_distance(from_numpy(s, p), from_numpy(s, q));
    });

    m.def("verify", [](const std::vector<std::string>& spins, std::int64_t trials, std::uint64_t seed) {
        VerifyOptions options = VerifyOptions::defaults();
        if (!spins.empty()) {
            std::vector<TwoSpin> parsed;
            for (const auto& s : spins) parsed.push_back(parse_spin(s));
            options = VerifyOptions::for_spins(parsed);
        }
        options.trials = trials;
        options.seed = seed;
        std::vector<CheckResult> results;
        {
            py::gil_scoped_release release;
            results = run_verification(options);
        }
        py::list out;
        for (const auto& r : results) {
            py::dict d;
            d["module"] = r.module;
            d["name"] = r.name;
            d["spin"] = r.spin;
            d["passed"] = r.passed;
            d["detail"] = r.detail;
            out.append(d);
        }
        return out;
    }, py::arg("spins") = std::vector<std::string>{}, py::arg("trials") = 100000, py::arg("seed") = kDefaultSeed);
}
