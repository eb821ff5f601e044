// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include "oracles.hpp"
#include "tasep/formulas.hpp"
#include "tasep/markov.hpp"
#include "tasep/mlq.hpp"
#include "tasep/open_boundary.hpp"
#include "tasep/routes.hpp"
#include "tasep/trat.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace tasep;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;  // keep the first counterexample
        ok = false;
    }
};

std::string q(const Rational& x) { return rational_string(x); }

Rational class_prob(const std::string& w, const RateParams& p) {
    auto tab = ring_by_solver(Word(w).sizes(), p);
    return tab.at(cyclic_class(Word(w)).representative.str());
}

RateParams unit_open(const Rational& a, const Rational& b) {
    RateParams p;
    p.alpha = a;
    p.beta = b;
    return p;
}

std::vector<SizeTriple> sizes_up_to(int nmax, int nmin = 2) {
    std::vector<SizeTriple> out;
    for (int n = nmin; n <= nmax; ++n)
        for (int k = 0; k <= n; ++k)
            for (int r = 0; k + r <= n; ++r) out.push_back({k, r, n - k - r});
    return out;
}

std::string size_str(const SizeTriple& s) {
    return "(" + std::to_string(s.k) + "," + std::to_string(s.r) + "," + std::to_string(s.l) + ")";
}

// 1: Pr(12020) = 1/4 by solver, MLQ count, TRAT count, det.
Outcome c1() {
    Outcome o;
    RateParams p;
    Word x("12020");
    auto s = x.sizes();
    Rational norm = Rational(binomial(5, s.k) * binomial(5, s.l));
    int ord = cyclic_class(x).order;
    Rational solver = class_prob("12020", p);
    Rational by_mlq = ord * Rational(static_cast<long>(enumerate_mlqs(x).size())) / norm;
    Rational by_trat = ord * Rational(static_cast<long>(enumerate_fillings(canonical_tiling(x)).size())) / norm;
    Rational by_det = ord * Rational(det_weight(x)) / norm;
    Rational want(1, 4);
    if (solver != want || by_mlq != want || by_trat != want || by_det != want)
        o.fail("solver " + q(solver) + " mlq " + q(by_mlq) + " trat " + q(by_trat) + " det " + q(by_det));
    o.detail = o.ok ? "1/4 on all four routes" : o.detail;
    return o;
}

// 2: Pr(12011020) = 1/49 by solver and Ansatz trace.
Outcome c2() {
    Outcome o;
    RateParams p;
    Word x("12011020");
    Rational solver = class_prob(x.str(), p);
    auto ans = ring_by_ansatz(x.sizes(), p);
    Rational by_ansatz = ans->at(cyclic_class(x).representative.str());
    if (solver != Rational(1, 49) || by_ansatz != Rational(1, 49))
        o.fail("solver " + q(solver) + " ansatz " + q(by_ansatz));
    else o.detail = "1/49 from both";
    return o;
}

// 3: weight(120201210) = 5 by fillings and det; Pr = 5/784; Pr(201201201) = 1/294.
Outcome c3() {
    Outcome o;
    RateParams p;
    Word x("120201210");
    auto nf = enumerate_fillings(canonical_tiling(x)).size();
    Integer dw = det_weight(x);
    Rational px = class_prob(x.str(), p), py = class_prob("201201201", p);
    if (nf != 5 || dw != 5) o.fail("fillings " + std::to_string(nf) + " det " + dw.get_str());
    if (px != Rational(5, 784)) o.fail("Pr(120201210) = " + q(px));
    if (py != Rational(1, 294)) o.fail("Pr(201201201) = " + q(py));
    if (o.ok) o.detail = "fillings 5, det 5, Pr 5/784 (not 5/748), companion 1/294";
    return o;
}

// Class weights as polynomials in d, e at t = 1, checked against the solver.
void inhomogeneous_table(Outcome& o, const SizeTriple& s, const std::map<std::string, std::function<Rational(const Rational&, const Rational&)>>& table,
                         std::mt19937_64& rng) {
    for (int pt = 0; pt < 3; ++pt) {
        RateParams p = RateParams::random(rng, false);
        p.t = 1;
        auto solver = ring_by_solver(s, p);
        Rational z = 0;
        for (auto& [w, f] : table) z += f(p.d, p.e);
        for (auto& [w, f] : table) {
            std::string key = cyclic_class(Word(w)).representative.str();
            Rational want = f(p.d, p.e) / z;
            if (solver.at(key) != want)
                o.fail("class " + w + " at " + p.to_string() + ": solver " + q(solver.at(key)) + " table " + q(want));
        }
        if (solver.size() != table.size()) o.fail("class count " + std::to_string(solver.size()));
    }
}

Outcome c4(std::mt19937_64& rng) {
    Outcome o;
    using R = const Rational&;
    std::map<std::string, std::function<Rational(R, R)>> table = {
        {"2210", [](R, R) -> Rational { return Rational(1); }},
        {"2021", [](R d, R e) -> Rational { return d + e; }},
        {"2201", [](R d, R e) -> Rational { return d * d + d * e + e; }},
    };
    inhomogeneous_table(o, {2, 1, 1}, table, rng);
    // Z itself, as a polynomial identity at the same kind of points
    RateParams p = RateParams::random(rng, false);
    Rational z = 0;
    for (auto& [w, f] : table) z += f(p.d, p.e);
    if (z != 1 + p.d + 2 * p.e + p.d * p.d + p.d * p.e) o.fail("Z mismatch");
    if (o.ok) o.detail = "weights 1, d+e, d^2+de+e and Z match the solver at 3 points";
    return o;
}

Outcome c5(std::mt19937_64& rng) {
    Outcome o;
    using R = const Rational&;
    std::map<std::string, std::function<Rational(R, R)>> table = {
        {"10022", [](R, R) -> Rational { return Rational(1); }},
        {"10202", [](R d, R e) -> Rational { return d + e; }},
        {"10220", [](R d, R e) -> Rational { return d * d + e * d + e; }},
        {"12020", [](R d, R e) -> Rational { return d * d + e * d * d + e * d + e * e * d + e * e; }},
        {"12200", [](R d, R e) -> Rational { return d * d + 2 * e * d * d + 2 * e * e * d + e * e; }},
        {"12002", [](R d, R e) -> Rational { return d + e * d + e * e; }},
    };
    inhomogeneous_table(o, {2, 1, 2}, table, rng);
    RateParams p = RateParams::random(rng, false);
    Rational z = 0;
    for (auto& [w, f] : table) z += f(p.d, p.e);
    const Rational &d = p.d, &e = p.e;
    if (z != 1 + 2 * d + 2 * e + 3 * e * d + 3 * d * d + 3 * e * e + 3 * e * d * d + 3 * e * e * d) o.fail("Z mismatch");
    if (o.ok) o.detail = "six class weights and Z match the solver at 3 points";
    return o;
}

// 6: solver = MLQ = TRAT = Ansatz (= det and brute-force counts at unit rates).
Outcome c6(std::mt19937_64& rng) {
    Outcome o;
    long classes = 0;
    auto compare = [&](const ClassTable& ref, const ClassTable& got, const char* route, const SizeTriple& s,
                       const RateParams& p) {
        for (auto& [k, v] : ref)
            if (got.at(k) != v)
                o.fail(std::string(route) + " class " + k + " " + size_str(s) + " at " + p.to_string() + ": solver " +
                       q(v) + " route " + q(got.at(k)));
    };
    RateParams unit;
    for (const auto& s : sizes_up_to(8)) {
        auto solver = ring_by_solver(s, unit);
        classes += static_cast<long>(solver.size());
        compare(solver, ring_by_mlq(s, unit), "mlq", s, unit);
        compare(solver, ring_by_trat(s, unit), "trat", s, unit);
        compare(solver, ring_by_det(s), "det", s, unit);
        if (auto a = ring_by_ansatz(s, unit)) compare(solver, *a, "ansatz", s, unit);
        // brute-force counts of two-row configurations per word
        auto counts = oracle::mlq_type_counts(s.k, s.r, s.l);
        Rational norm = Rational(binomial(s.n(), s.k) * binomial(s.n(), s.l));
        for (auto& [k, v] : solver) {
            auto it = counts.find(k);
            Rational by_count = it == counts.end() ? Rational(0) : cyclic_class(Word(k)).order * Rational(it->second) / norm;
            if (by_count != v) o.fail("brute-force count class " + k + ": " + q(by_count) + " vs " + q(v));
        }
    }
    for (const auto& s : sizes_up_to(7)) {
        for (int pt = 0; pt < 3; ++pt) {
            RateParams p = RateParams::random(rng, false);
            auto solver = ring_by_solver(s, p);
            classes += static_cast<long>(solver.size());
            compare(solver, ring_by_mlq(s, p), "mlq", s, p);
            compare(solver, ring_by_trat(s, p), "trat", s, p);
            if (auto a = ring_by_ansatz(s, p)) compare(solver, *a, "ansatz", s, p);
        }
    }
    if (o.ok) o.detail = std::to_string(classes) + " class checks";
    return o;
}

// 7: mlq <-> trat round trips, weights, nested paths, n <= 7.
Outcome c7() {
    Outcome o;
    long mlqs = 0;
    for (int n = 1; n <= 7; ++n) {
        for (const auto& s : sizes_up_to(n, n)) {
            if (s.r == 0) continue;
            for (const auto& x : words_of_size(s)) {
                if (x[0] != '1') continue;
                TratIndex idx(x);
                std::set<NestedPaths> from_mlq, from_trat;
                auto ms = enumerate_mlqs(x);
                for (const auto& m : ms) {
                    ++mlqs;
                    TratFilling f = trat_from_mlq(m);
                    if (!is_valid_filling(f)) o.fail("invalid filling from " + m.serialize());
                    if (mlq_from_trat(f) != m) o.fail("round trip " + m.serialize());
                    if (!(trat_weight(f) == mlq_weight(m)))
                        o.fail("weight " + m.serialize() + ": " + trat_weight(f).to_string() + " vs " +
                               mlq_weight(m).to_string());
                    auto pm = paths_from_mlq(m);
                    if (!is_compatible(pm)) o.fail("incompatible paths from " + m.serialize());
                    from_mlq.insert(pm);
                }
                if (ms.size() != idx.fillings().size())
                    o.fail("count " + x.str() + ": " + std::to_string(ms.size()) + " MLQs, " +
                           std::to_string(idx.fillings().size()) + " fillings");
                for (const auto& f : idx.fillings()) {
                    auto pt = paths_from_trat(f);
                    from_trat.insert(pt);
                    if (!(trat_from_paths(pt) == f)) o.fail("paths round trip on " + x.str());
                    if (!(trat_from_mlq(mlq_from_trat(f)) == f)) o.fail("trat round trip on " + x.str());
                }
                if (from_mlq != from_trat) o.fail("path sets differ for " + x.str());
            }
        }
    }
    if (o.ok) o.detail = std::to_string(mlqs) + " MLQs";
    return o;
}

// 8: count and weight sum unchanged under every single flip of T_X, n <= 6.
Outcome c8() {
    Outcome o;
    long flips = 0;
    for (int n = 1; n <= 6; ++n)
        for (const auto& s : sizes_up_to(n, n)) {
            if (s.r == 0) continue;
            for (const auto& x : words_of_size(s)) {
                if (x[0] != '1') continue;
                auto base = std::make_shared<const Tiling>(canonical_tiling(x));
                auto fs = enumerate_fillings(base);
                RatePolynomial w0;
                for (const auto& f : fs) w0 += trat_weight(f);
                for (const auto& h : hexagons(*base)) {
                    ++flips;
                    auto t1 = std::make_shared<const Tiling>(flip(*base, h));
                    auto gs = enumerate_fillings(t1);
                    RatePolynomial w1;
                    for (const auto& g : gs) w1 += trat_weight(g);
                    if (gs.size() != fs.size() || !(w1 == w0)) o.fail("flip changes fillings of " + x.str());
                    auto back = flip(*t1, h);
                    if (back.north != base->north || back.west != base->west) o.fail("flip not an involution on " + x.str());
                    for (const auto& f : fs)
                        if (!(trat_weight(transport(f, t1)) == trat_weight(f))) o.fail("transport weight " + x.str());
                }
            }
        }
    if (o.ok) o.detail = std::to_string(flips) + " flips";
    return o;
}

// 9: Omega^MLQ chain: stationary proportional to the MLQ weight; projects to the ring.
Outcome c9(std::mt19937_64& rng) {
    Outcome o;
    for (SizeTriple s : {SizeTriple{2, 1, 2}, SizeTriple{1, 2, 2}}) {
        for (int pt = 0; pt < 3; ++pt) {
            RateParams p = RateParams::random(rng, false);
            auto fine = build_mlq_chain(s, p);
            auto coarse = build_ring_chain(s, p);
            auto pi = stationary_exact(fine);
            Rational ratio = 0;
            for (size_t i = 0; i < pi.states.size(); ++i) {
                Rational r = pi.pi[i] / mlq_weight(Mlq::parse(pi.states[i])).eval(p);
                if (i == 0) ratio = r;
                else if (r != ratio) o.fail("pi/wt not constant at " + pi.states[i] + " " + size_str(s));
            }
            auto rep = check_projection(fine, coarse, [](const std::string& k) { return mlq_type(Mlq::parse(k)).str(); });
            if (!rep.ok) o.fail("projection " + size_str(s) + ": " + rep.violations.front());
        }
    }
    if (o.ok) o.detail = "(2,1,2) and (1,2,2), 3 points each";
    return o;
}

// 10: open boundaries.
Outcome c10(std::mt19937_64& rng) {
    Outcome o;
    // Uchiyama numerator of 20201210
    for (auto [a, b] : {std::pair{Rational(1, 2), Rational(1, 3)}, std::pair{Rational(3, 7), Rational(5, 2)},
                        std::pair{Rational(2), Rational(9, 4)}}) {
        Rational a3 = a * a * a, b3 = b * b * b;
        Rational want = a3 * b3 * (2 * a3 * b3 + 2 * a * a * b3 + a * b3);
        Rational got = uchiyama_numerator(Word("20201210"), a, b);
        if (got != want) o.fail("Uchiyama numerator " + q(got) + " vs " + q(want));
    }
    // convention oracle: both readings, n <= 5, 3 points
    long swapped_bad = 0, def_bad = 0;
    for (int n = 1; n <= 5; ++n)
        for (int r = 0; r <= n; ++r)
            for (int pt = 0; pt < 3; ++pt) {
                RateParams p = RateParams::random(rng, true);
                p.t = 1;
                auto solver = open_by_solver(n, r, p);
                if (open_by_amlq(n, r, p, FreeConvention::Definition) != solver) ++def_bad;
                if (open_by_amlq(n, r, p, FreeConvention::Swapped) != solver) ++swapped_bad;
            }
    if (def_bad) o.fail("definition reading fails " + std::to_string(def_bad) + " instances");
    // AMLQ sum = solver, n <= 6, r <= 2
    for (int n = 1; n <= 6; ++n)
        for (int r = 0; r <= std::min(2, n); ++r)
            for (int pt = 0; pt < 3; ++pt) {
                RateParams p = RateParams::random(rng, true);
                p.t = 1;
                auto solver = open_by_solver(n, r, p);
                auto amlq = open_by_amlq(n, r, p);
                for (auto& [w, v] : solver)
                    if (amlq.at(w) != v) o.fail("AMLQ sum " + w + " at " + p.to_string() + ": " + q(amlq.at(w)) + " vs " + q(v));
            }
    // Omega^AMLQ projection for (4,1)
    for (int pt = 0; pt < 3; ++pt) {
        RateParams p = RateParams::random(rng, true);
        p.t = 1;
        auto fine = build_amlq_chain(4, 1, p);
        auto coarse = build_open_chain(4, 1, p);
        auto rep = check_projection(fine, coarse, [](const std::string& k) {
            Mlq a = Mlq::parse(k);
            return drop(a).type_word.str();
        });
        if (!rep.ok) o.fail("AMLQ projection: " + rep.violations.front());
        auto pi = stationary_exact(fine);
        Rational ratio = 0;
        for (size_t i = 0; i < pi.states.size(); ++i) {
            Rational r = pi.pi[i] / amlq_weight(Mlq::parse(pi.states[i]), true).eval(p);
            if (i == 0) ratio = r;
            else if (r != ratio) o.fail("AMLQ chain pi/wt_e not constant at " + pi.states[i]);
        }
    }
    if (o.ok)
        o.detail = "numerator matches; definition reading selected (swapped reading fails " + std::to_string(swapped_bad) +
                   " instances); AMLQ sums and (4,1) projection pass";
    return o;
}

Outcome c11() {
    Outcome o;
    auto lam = lambda_partition(Word("2202002022"));
    if (lam != std::vector<int>{4, 4, 3, 1, 0, 0}) o.fail("lambda(2202002022) wrong");
    auto A = binomial_matrix({2, 1});
    std::vector<std::vector<Integer>> want = {{3, 1}, {1, 2}};
    if (A != want) o.fail("binomial matrix for (2,1) wrong");
    if (integer_determinant(A) != 5) o.fail("det != 5");
    if (o.ok) o.detail = "(4,4,3,1,0,0); det [[3,1],[1,2]] = 5";
    return o;
}

// 12: every Ansatz value identical at dimensions n+2 and n+5.
Outcome c12(std::mt19937_64& rng) {
    Outcome o;
    long values = 0;
    auto ring = [&](const RateParams& p, int nmax) {
        for (const auto& s : sizes_up_to(nmax)) {
            if (s.r == 0) continue;
            for (const auto& c : enumerate_states(s).classes) {
                int n = s.n();
                ++values;
                if (ansatz_trace_ring_at(c.representative, p, n + 2) != ansatz_trace_ring_at(c.representative, p, n + 5))
                    o.fail("ring trace " + c.representative.str() + " at " + p.to_string());
            }
        }
    };
    ring(RateParams{}, 8);
    for (int pt = 0; pt < 3; ++pt) ring(RateParams::random(rng, false), 7);
    for (int pt = 0; pt < 3; ++pt) {
        RateParams p = RateParams::random(rng, true);
        for (int n = 1; n <= 6; ++n) {
            for (int r = 0; r <= n; ++r) {
                for (const auto& x : open_words(n, r)) {
                    ++values;
                    if (ansatz_open(x, p, n + 2) != ansatz_open(x, p, n + 5))
                        o.fail("open bracket " + x.str() + " at " + p.to_string());
                }
                if (open_partition_function(n, r, p, n + 2) != open_partition_function(n, r, p, n + 5))
                    o.fail("Z_{" + std::to_string(n) + "," + std::to_string(r) + "} at " + p.to_string());
            }
        }
    }
    if (o.ok) o.detail = std::to_string(values) + " values";
    return o;
}

}  // namespace

int main() {
    std::mt19937_64 rng(kSeed);
    struct Criterion {
        int id;
        double limit;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> all = {
        {1, 1, c1},
        {2, 1, c2},
        {3, 5, c3},
        {4, 5, [&] { return c4(rng); }},
        {5, 10, [&] { return c5(rng); }},
        {6, 60, [&] { return c6(rng); }},
        {7, 60, c7},
        {8, 30, c8},
        {9, 30, [&] { return c9(rng); }},
        {10, 120, [&] { return c10(rng); }},
        {11, 1, c11},
        {12, 30, [&] { return c12(rng); }},
    };
    std::cout << "seed " << kSeed << "\n";
    int failures = 0;
    for (auto& c : all) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const Error& e) {
            o.fail(std::string(e.kind()) + ": " + e.what());
        } catch (const std::exception& e) {
            o.fail(e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.ok && secs > c.limit) o.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit));
        std::ostringstream line;
        line.precision(3);
        line << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << " (" << std::fixed << secs << " s): " << o.detail;
        std::cout << line.str() << std::endl;
        failures += !o.ok;
    }
    return failures ? 1 : 0;
}
