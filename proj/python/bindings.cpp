// Python bindings. Rationals cross the boundary as fractions.Fraction.

#include "tasep/formulas.hpp"
#include "tasep/markov.hpp"
#include "tasep/mlq.hpp"
#include "tasep/open_boundary.hpp"
#include "tasep/routes.hpp"
#include "tasep/trat.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace tasep;

namespace {

py::object fraction(const Rational& x) {
    static py::object cls = py::module_::import("fractions").attr("Fraction");
    return cls(rational_string(x));
}

py::dict table(const std::map<std::string, Rational>& t) {
    py::dict out;
    for (const auto& [k, v] : t) out[py::str(k)] = fraction(v);
    return out;
}

RateParams params(const std::string& spec) { return spec.empty() ? RateParams{} : RateParams::parse(spec); }

RateParams open_params(const std::string& spec) {
    RateParams p = params(spec);
    if (!p.alpha) p.alpha = Rational(1);
    if (!p.beta) p.beta = Rational(1);
    return p;
}

SizeTriple size_of(const std::tuple<int, int, int>& s) { return {std::get<0>(s), std::get<1>(s), std::get<2>(s)}; }

}  // namespace

PYBIND11_MODULE(_tasep, m) {
    m.doc() = "Exact stationary probabilities of the two-species TASEP";
    py::register_exception<Error>(m, "TasepError", PyExc_ValueError);

    m.def("cyclic_class", [](const std::string& w) {
        auto c = cyclic_class(Word(w));
        return py::make_tuple(c.representative.str(), c.order);
    });
    m.def("classes", [](const std::tuple<int, int, int>& s) {
        std::vector<std::pair<std::string, int>> out;
        for (const auto& c : enumerate_states(size_of(s)).classes) out.emplace_back(c.representative.str(), c.order);
        return out;
    });

    m.def(
        "ring_probabilities",
        [](const std::tuple<int, int, int>& s, const std::string& method, const std::string& spec) {
            SizeTriple sz = size_of(s);
            RateParams p = params(spec);
            if (method == "solver") return table(ring_by_solver(sz, p));
            if (method == "mlq") return table(ring_by_mlq(sz, p));
            if (method == "trat") return table(ring_by_trat(sz, p));
            if (method == "det") return table(ring_by_det(sz));
            if (method == "ansatz") {
                auto t = ring_by_ansatz(sz, p);
                if (!t) throw TraceDiverges("the ring trace needs at least one 1");
                return table(*t);
            }
            throw InvalidParams("unknown method " + method);
        },
        py::arg("size"), py::arg("method") = "solver", py::arg("params") = "",
        "Class probabilities keyed by the lexicographically smallest rotation.");
    m.def("class_weight", [](const std::string& w) { return class_weight(Word(w)).to_string(); });

    m.def(
        "open_probabilities",
        [](int n, int r, const std::string& method, const std::string& spec) {
            RateParams p = open_params(spec);
            if (method == "solver") return table(open_by_solver(n, r, p));
            if (method == "amlq") return table(open_by_amlq(n, r, p));
            if (method == "ansatz") return table(open_by_ansatz(n, r, p));
            throw InvalidParams("unknown method " + method);
        },
        py::arg("n"), py::arg("r"), py::arg("method") = "solver", py::arg("params") = "");

    m.def("enumerate_mlqs", [](const std::string& w) {
        std::vector<std::string> out;
        for (const auto& q : enumerate_mlqs(Word(w))) out.push_back(q.serialize());
        return out;
    });
    m.def("drop", [](const std::string& s) {
        auto d = drop(Mlq::parse(s));
        py::dict out;
        out["type"] = d.type_word.str();
        out["shift"] = d.shift;
        out["zero_ball_sites"] = d.zero_ball_sites;
        out["weights"] = d.weights;
        out["marked_vacancies"] = d.marked_vacancies;
        out["unrestricted"] = d.unrestricted;
        return out;
    });
    m.def("mlq_weight", [](const std::string& s) { return mlq_weight(Mlq::parse(s)).to_string(); });
    m.def("mlq_from_weights",
          [](const std::string& w, const std::vector<int>& ws) { return mlq_from_weights(Word(w), ws).serialize(); });

    m.def("trat_fillings", [](const std::string& w) {
        std::vector<std::string> out;
        TratIndex idx{Word(w)};
        for (const auto& f : idx.fillings()) out.push_back(filling_json(f));
        return out;
    });
    m.def("trat_weight", [](const std::string& w) {
        RatePolynomial sum;
        TratIndex idx{Word(w)};
        for (const auto& f : idx.fillings()) sum += trat_weight(f);
        return sum.to_string();
    });

    m.def("det_weight", [](const std::string& w) {
        return py::reinterpret_steal<py::object>(PyLong_FromString(det_weight(Word(w)).get_str().c_str(), nullptr, 10));
    });
    m.def("lambda_partition", [](const std::string& w) { return lambda_partition(Word(w)); });
    m.def(
        "ansatz_trace_ring", [](const std::string& w, const std::string& spec) { return fraction(ansatz_trace_ring(Word(w), params(spec))); },
        py::arg("word"), py::arg("params") = "");
    m.def(
        "ansatz_open", [](const std::string& w, const std::string& spec) { return fraction(ansatz_open(Word(w), open_params(spec))); },
        py::arg("word"), py::arg("params") = "");
    m.def("uchiyama_numerator", [](const std::string& w, const std::string& a, const std::string& b) {
        return fraction(uchiyama_numerator(Word(w), parse_rational(a), parse_rational(b)));
    });
}
