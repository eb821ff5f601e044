#include "tasep/routes.hpp"

#include "tasep/formulas.hpp"
#include "tasep/markov.hpp"
#include "tasep/mlq.hpp"
#include "tasep/trat.hpp"

namespace tasep {

Word rotate_to_one(const Word& x) {
    auto ones = x.positions('1');
    return ones.empty() ? x : x.rotated(ones.front());
}

namespace {

ClassTable normalize(const std::vector<CyclicClass>& classes, const std::map<std::string, Rational>& weight) {
    Rational total = 0;
    for (const auto& c : classes) total += c.order * weight.at(c.representative.str());
    ClassTable out;
    for (const auto& c : classes) out[c.representative.str()] = c.order * weight.at(c.representative.str()) / total;
    return out;
}

}  // namespace

ClassTable ring_by_solver(const SizeTriple& s, const RateParams& p) {
    auto pi = stationary_exact(build_ring_chain(s, p));
    ClassTable out;
    for (auto& [c, q] : ring_class_probabilities(s, pi)) out[c.representative.str()] = q;
    return out;
}

RatePolynomial class_weight(const Word& x) {
    RatePolynomial w;
    for (const auto& m : enumerate_mlqs(rotate_to_one(x))) w += mlq_weight(m);
    return w;
}

ClassTable ring_by_mlq(const SizeTriple& s, const RateParams& p) {
    auto classes = enumerate_states(s).classes;
    std::map<std::string, Rational> w;
    for (const auto& c : classes) w[c.representative.str()] = class_weight(c.representative).eval(p);
    return normalize(classes, w);
}

ClassTable ring_by_trat(const SizeTriple& s, const RateParams& p) {
    auto classes = enumerate_states(s).classes;
    std::map<std::string, Rational> w;
    for (const auto& c : classes) {
        if (s.r == 0) {
            // no tableau; every word carries C(k+l, k)
            w[c.representative.str()] = Rational(binomial(s.k + s.l, s.k));
            continue;
        }
        RatePolynomial sum;
        for (const auto& f : enumerate_fillings(canonical_tiling(rotate_to_one(c.representative))))
            sum += trat_weight(f);
        w[c.representative.str()] = sum.eval(p);
    }
    return normalize(classes, w);
}

std::optional<ClassTable> ring_by_ansatz(const SizeTriple& s, const RateParams& p) {
    if (s.r == 0) return std::nullopt;
    auto classes = enumerate_states(s).classes;
    std::map<std::string, Rational> w;
    for (const auto& c : classes) w[c.representative.str()] = ansatz_trace_ring(c.representative, p);
    return normalize(classes, w);
}

ClassTable ring_by_det(const SizeTriple& s) {
    auto classes = enumerate_states(s).classes;
    std::map<std::string, Rational> w;
    for (const auto& c : classes) w[c.representative.str()] = Rational(det_weight(c.representative));
    return normalize(classes, w);
}

WordTable open_by_solver(int n, int r, const RateParams& p) {
    auto chain = build_open_chain(n, r, p);
    auto pi = stationary_exact(chain);
    WordTable out;
    for (size_t i = 0; i < pi.states.size(); ++i) out[pi.states[i]] = pi.pi[i];
    return out;
}

WordTable open_by_amlq(int n, int r, const RateParams& p, FreeConvention conv) {
    WordTable w;
    for (const auto& x : open_words(n, r)) w[x.str()] = 0;
    Rational total = 0;
    for (const auto& a : all_amlqs(n, r)) {
        Rational v = amlq_weight(a, true, conv).eval(p);
        Amlq o = a;
        w[drop(o).type_word.str()] += v;
        total += v;
    }
    for (auto& [k, v] : w) v /= total;
    return w;
}

WordTable open_by_ansatz(int n, int r, const RateParams& p) {
    Rational z = open_partition_function(n, r, p);
    WordTable out;
    for (const auto& x : open_words(n, r)) out[x.str()] = ansatz_open(x, p) / z;
    return out;
}

}  // namespace tasep
