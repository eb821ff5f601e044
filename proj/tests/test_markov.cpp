#include "oracles.hpp"
#include "tasep/markov.hpp"
#include "tasep/mlq.hpp"

#include <doctest.h>

using namespace tasep;

TEST_SUITE("markov") {

TEST_CASE("ring chain shape") {
    RateParams p;
    auto ch = build_ring_chain({2, 1, 2}, p);
    CHECK(ch.size() == 30);
    // out-degree = number of cyclic 20, 21, 10 pairs
    std::vector<int> deg(ch.size(), 0);
    for (const auto& t : ch.transitions()) ++deg[t.from];
    for (int i = 0; i < ch.size(); ++i) {
        const std::string& w = ch.states()[i];
        int want = 0;
        for (size_t j = 0; j < w.size(); ++j) {
            std::string pr{w[j], w[(j + 1) % w.size()]};
            want += pr == "20" || pr == "21" || pr == "10";
        }
        CHECK(deg[i] == want);
    }
    CHECK(strongly_connected_components(build_ring_chain({1, 1, 1}, RateParams::parse("t=2,d=3,e=5"))).size() == 1);
}

TEST_CASE("12020 class probability") {
    auto pi = stationary_exact(build_ring_chain({2, 1, 2}, RateParams{}));
    for (auto& [c, q] : ring_class_probabilities({2, 1, 2}, pi))
        if (c.representative == cyclic_class(Word("12020")).representative) CHECK(q == Rational(1, 4));
}

TEST_CASE("uniform without 1s") {
    auto pi = stationary_exact(build_ring_chain({2, 0, 2}, RateParams{}));
    for (const auto& q : pi.pi) CHECK(q == Rational(1, 6));
}

TEST_CASE("two-state chain") {
    ChainSpec ch;
    int a = ch.add_state("a"), b = ch.add_state("b");
    ch.add_transition(a, b, Rational(2));
    ch.add_transition(b, a, Rational(5));
    ch.finalize();
    auto pi = stationary_exact(ch);
    CHECK(pi.at("a") == Rational(5, 7));
    CHECK(pi.at("b") == Rational(2, 7));
}

TEST_CASE("reducible chain is rejected") {
    ChainSpec ch;
    int a = ch.add_state("a"), b = ch.add_state("b");
    ch.add_transition(a, b, Rational(1));
    ch.finalize();
    CHECK_THROWS_AS(stationary_exact(ch), NotIrreducible);
}

TEST_CASE("sparse modular solver agrees with dense elimination") {
    std::mt19937_64 rng(11);
    for (SizeTriple s : {SizeTriple{1, 1, 1}, SizeTriple{2, 1, 1}, SizeTriple{2, 1, 2}, SizeTriple{1, 2, 2}}) {
        for (int pt = 0; pt < 3; ++pt) {
            RateParams p = RateParams::random(rng, false);
            auto ch = build_ring_chain(s, p);
            std::vector<std::string> words = ch.states();
            std::vector<std::tuple<int, int, Rational>> edges;
            oracle::ring_edges(words, p.t, p.d, p.e, edges);
            auto dense = oracle::dense_stationary(static_cast<int>(words.size()), edges);
            auto pi = stationary_exact(ch);
            REQUIRE(dense.size() == words.size());
            for (size_t i = 0; i < words.size(); ++i) CHECK(pi.at(words[i]) == dense[i]);
        }
    }
}

TEST_CASE("open chain") {
    RateParams p = RateParams::parse("alpha=1,beta=1");
    auto ch = build_open_chain(3, 1, p);
    CHECK(ch.size() == 12);
    auto pi = stationary_exact(ch);
    CHECK(is_stationary(ch, pi.pi));
    auto frozen = stationary_exact(build_open_chain(2, 2, p));
    CHECK(frozen.at("11") == 1);
    CHECK_THROWS_AS(build_open_chain(3, 1, RateParams{}), InvalidParams);
}

TEST_CASE("open chain 20201210 against the homogeneous numerator") {
    for (const char* spec : {"alpha=1/2,beta=1/3", "alpha=3,beta=2/7"}) {
        RateParams p = RateParams::parse(spec);
        const Rational a = *p.alpha, b = *p.beta;
        auto pi = stationary_exact(build_open_chain(8, 2, p));
        oracle::NormalOrder no(1, 1, 1, a, b);
        Rational z = 0;
        for (const auto& w : open_words(8, 2)) z += no.bracket(oracle::NormalOrder::letters(w.str()));
        Rational x = no.bracket(oracle::NormalOrder::letters("20201210"));
        CHECK(pi.at("20201210") == x / z);
        // (alpha beta)^(n-r) times the bracket is the stated numerator
        Rational ab6 = rpow(a * b, 6);
        Rational num = rpow(a, 3) * rpow(b, 3) * (2 * rpow(a, 3) * rpow(b, 3) + 2 * a * a * rpow(b, 3) + a * rpow(b, 3));
        CHECK(ab6 * x == num);
    }
}

TEST_CASE("projection checks") {
    RateParams p;
    auto coarse = build_ring_chain({2, 1, 2}, p);
    auto id = check_projection(coarse, coarse, [](const std::string& s) { return s; });
    CHECK(id.ok);
    auto fine = build_mlq_chain({2, 1, 2}, p);
    auto rep = check_projection(fine, coarse, [](const std::string& k) { return mlq_type(Mlq::parse(k)).str(); });
    CHECK(rep.ok);
    auto bad = fine;
    bad.mutable_transitions()[0].rate += 1;
    auto broken = check_projection(bad, coarse, [](const std::string& k) { return mlq_type(Mlq::parse(k)).str(); });
    CHECK_FALSE(broken.ok);
    // the corrupted edge fails both the rate check and its lift check
    CHECK(broken.violations.size() == 2);
    CHECK_THROWS_AS(check_projection(fine, coarse, [](const std::string&) { return std::string("nope"); }),
                    InvalidProjectionMap);
}

}
