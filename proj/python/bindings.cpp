#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "progcode/bounds.hpp"
#include "progcode/channel_sim.hpp"
#include "progcode/codec.hpp"
#include "progcode/numeric_core.hpp"
#include "progcode/progressive_expansion.hpp"
#include "progcode/report.hpp"

namespace py = pybind11;
using namespace progcode;

namespace {

py::object to_fraction(const ExactReal& v) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    py::object num = py::int_(py::str(v.numerator().get_str()));
    py::object den = py::int_(py::str(v.denominator().get_str()));
    return fraction(num, den);
}

py::list to_fractions(const std::vector<ExactReal>& values) {
    py::list out;
    for (const auto& v : values) {
        out.append(to_fraction(v));
    }
    return out;
}

// Accepts int, float (embedded exactly), Fraction or "p/q".
ExactReal from_python(const py::handle& obj) {
    if (py::isinstance<py::str>(obj)) {
        return ExactReal::parse(obj.cast<std::string>());
    }
    if (py::isinstance<py::float_>(obj)) {
        return embed_float(obj.cast<double>());
    }
    if (py::hasattr(obj, "numerator") && py::hasattr(obj, "denominator")) {
        const auto num = py::str(obj.attr("numerator")).cast<std::string>();
        const auto den = py::str(obj.attr("denominator")).cast<std::string>();
        return {BigInt(num), BigInt(den)};
    }
    throw py::type_error("expected int, float, str or Fraction");
}

std::vector<ExactReal> from_python_list(const py::iterable& values) {
    std::vector<ExactReal> out;
    for (const auto& v : values) {
        out.push_back(from_python(v));
    }
    return out;
}

py::object optional_to_py(const std::optional<unsigned>& v) { return v ? py::object(py::int_(*v)) : py::none(); }

py::dict trial_dict(const TrialRecord& r) {
    py::dict d;
    d["sigma"] = r.sigma;
    d["u"] = to_fraction(r.u);
    d["x"] = to_fractions(r.x);
    d["z"] = to_fractions(r.z);
    d["y"] = to_fractions(r.y);
    d["u_hat"] = to_fraction(r.u_hat);
    d["sq_err"] = to_fraction(r.sq_err);
    d["ell"] = optional_to_py(r.ell);
    d["event_a"] = r.event_a;
    d["prop3_bound_ok"] = r.prop3_bound_ok ? py::object(py::bool_(*r.prop3_bound_ok)) : py::none();
    d["prop2_digits_ok"] = r.prop2_digits_ok ? py::object(py::bool_(*r.prop2_digits_ok)) : py::none();
    py::list first;
    for (const auto& k : r.first_corrupted) {
        first.append(optional_to_py(k));
    }
    d["first_corrupted"] = first;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Progressive-expansion analog codec: exact encoder/decoder, AWGN Monte Carlo and bounds.";
    m.attr("__version__") = std::string(code_version());

    m.def(
        "expand",
        [](const py::object& x, unsigned s, unsigned k) {
            const ProgressiveDigits d = expand(from_python(x), s, k);
            return std::vector<std::uint32_t>(d.digits().begin(), d.digits().end());
        },
        py::arg("x"), py::arg("block_length"), py::arg("depth"),
        "Digits of the S-progressive expansion of x in [0, 1), k-major.");
    m.def(
        "reconstruct",
        [](std::vector<std::uint32_t> digits, unsigned s, unsigned k) {
            return to_fraction(reconstruct(ProgressiveDigits(s, k, std::move(digits))));
        },
        py::arg("digits"), py::arg("block_length"), py::arg("depth"));

    m.def(
        "compute_gamma", [](unsigned k) { return to_fraction(compute_gamma(k)); }, py::arg("depth") = kDefaultDepth);
    m.def(
        "symbol_moments",
        [](unsigned k) {
            const SymbolMoments s = symbol_moments(k);
            py::dict d;
            d["alpha"] = to_fraction(s.alpha);
            d["mean"] = to_fraction(s.mean);
            d["second_moment"] = to_fraction(s.second_moment);
            return d;
        },
        py::arg("depth") = kDefaultDepth);

    m.def(
        "encode",
        [](const py::object& u, unsigned n, unsigned k) {
            return to_fractions(encode(from_python(u), EncoderParams::make(n, k)).x);
        },
        py::arg("u"), py::arg("channel_uses"), py::arg("depth") = kDefaultDepth,
        "Channel inputs X(1..N) for a source value in [-1/2, 1/2).");
    m.def(
        "decode",
        [](const py::iterable& y, unsigned n, unsigned k) {
            const std::vector<ExactReal> values = from_python_list(y);
            return to_fraction(decode(values, EncoderParams::make(n, k)));
        },
        py::arg("y"), py::arg("channel_uses"), py::arg("depth") = kDefaultDepth);

    m.def(
        "run_trial",
        [](double snr_db, unsigned n, unsigned k, std::uint64_t seed, std::uint64_t index) {
            RngStream stream = trial_stream(seed, 0, index);
            return trial_dict(run_trial(sigma_from_snr_db(snr_db), EncoderParams::make(n, k), stream));
        },
        py::arg("snr_db"), py::arg("channel_uses"), py::arg("depth") = kDefaultDepth, py::arg("seed") = 0,
        py::arg("index") = 0);

    py::class_<SweepPoint>(m, "SweepPoint")
        .def_readonly("snr_db", &SweepPoint::snr_db)
        .def_readonly("sigma", &SweepPoint::sigma)
        .def_readonly("trials", &SweepPoint::trials)
        .def_readonly("mse_mean", &SweepPoint::mse_mean)
        .def_readonly("mse_ci95", &SweepPoint::mse_ci95)
        .def_readonly("mse_median", &SweepPoint::mse_median)
        .def_readonly("mse_mean_given_a", &SweepPoint::mse_mean_given_a)
        .def_readonly("sdr_db", &SweepPoint::sdr_db)
        .def_readonly("event_a_rate", &SweepPoint::event_a_rate)
        .def_readonly("event_a_lower_bound", &SweepPoint::event_a_lower_bound)
        .def_readonly("prop3_violations", &SweepPoint::prop3_violations)
        .def_readonly("prop2_violations", &SweepPoint::prop2_violations)
        .def_readonly("ell", &SweepPoint::ell)
        .def_readonly("opta_sdr", &SweepPoint::opta_sdr)
        .def_readonly("opta_sdr_db", &SweepPoint::opta_sdr_db)
        .def_readonly("achievable_mse_bound", &SweepPoint::achievable_mse_bound)
        .def_readonly("baseline_mse", &SweepPoint::baseline_mse)
        .def_readonly("baseline_sdr_db", &SweepPoint::baseline_sdr_db)
        .def("__repr__", [](const SweepPoint& p) {
            return "SweepPoint(snr_db=" + format_shortest(p.snr_db) + ", mse_mean=" + format_shortest(p.mse_mean) +
                   ")";
        });

    m.def(
        "run_sweep",
        [](unsigned n, std::vector<double> snr_grid_db, std::uint64_t trials, std::uint64_t seed, unsigned k,
           unsigned workers) {
            SimConfig config;
            config.channel_uses = n;
            config.depth = k;
            config.snr_grid_db = std::move(snr_grid_db);
            config.trials_per_point = trials;
            config.master_seed = seed;
            config.workers = workers;
            py::gil_scoped_release release;
            return run_sweep(config);
        },
        py::arg("channel_uses"), py::arg("snr_grid_db"), py::arg("trials"), py::arg("seed"),
        py::arg("depth") = kDefaultDepth, py::arg("workers") = 1);
    m.def(
        "format_csv", [](const std::vector<SweepPoint>& points) { return format_csv(points); }, py::arg("points"));

    m.def("opta_sdr", &bounds::opta_sdr, py::arg("snr"), py::arg("channel_uses"));
    m.def("opta_mse", &bounds::opta_mse, py::arg("snr"), py::arg("channel_uses"));
    m.def(
        "compute_ell", [](double sigma) { return bounds::compute_ell(sigma); }, py::arg("sigma"));
    m.def(
        "prop1_tail",
        [](double sigma) { return bounds::prop1_tail(sigma, compute_gamma(kDefaultDepth).to_double()); },
        py::arg("sigma"));
    m.def(
        "achievable_mse_bound",
        [](double sigma, unsigned n) { return bounds::achievable_mse_bound(sigma, n, compute_gamma(kDefaultDepth)); },
        py::arg("sigma"), py::arg("channel_uses"));

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const std::domain_error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });
}
