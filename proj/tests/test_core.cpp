#include "tasep/core.hpp"

#include <doctest.h>

#include <set>

using namespace tasep;

TEST_SUITE("core") {

TEST_CASE("classify") {
    CHECK(classify(Word("12020")) == SizeTriple{2, 1, 2});
    CHECK(classify(Word("111")) == SizeTriple{0, 3, 0});
    CHECK(classify(Word("120201210")) == SizeTriple{3, 3, 3});
    CHECK_THROWS_AS(Word("1203"), InvalidWord);
    CHECK_THROWS_AS(Word(""), InvalidWord);
}

TEST_CASE("cyclic class orders") {
    CHECK(cyclic_class(Word("201201201")).order == 3);
    CHECK(cyclic_class(Word("120201210")).order == 9);
    CHECK(cyclic_class(Word("2222")).order == 1);
    auto c = cyclic_class(Word("0201"));
    CHECK(c.representative.str() == "0102");
}

TEST_CASE("enumerate states") {
    auto s = enumerate_states({2, 1, 2});
    CHECK(s.words.size() == 30);
    CHECK(multinomial({2, 1, 2}) == 30);
    auto one = enumerate_states({1, 0, 0});
    REQUIRE(one.words.size() == 1);
    CHECK(one.words[0].str() == "2");
    auto s202 = enumerate_states({2, 0, 2});
    CHECK(s202.words.size() == 6);
    int total = 0;
    for (const auto& c : s202.classes) total += c.order;
    CHECK(total == 6);
    std::set<Word> uniq(s.words.begin(), s.words.end());
    CHECK(uniq.size() == s.words.size());
}

TEST_CASE("open words") {
    CHECK(open_words(3, 1).size() == 12);
    REQUIRE(open_words(2, 2).size() == 1);
    CHECK(open_words(2, 2)[0].str() == "11");
}

TEST_CASE("rate params parse and validate") {
    auto p = RateParams::parse("t=1/2,d=3,e=5/7,alpha=2/5,beta=1");
    CHECK(p.t == Rational(1, 2));
    CHECK(p.d == 3);
    CHECK(*p.alpha == Rational(2, 5));
    CHECK_THROWS_AS(RateParams::parse("t=0"), InvalidParams);
    CHECK_THROWS_AS(RateParams::parse("t=-1/2"), InvalidParams);
    CHECK_THROWS_AS(RateParams::parse("q=2"), InvalidParams);
    std::mt19937_64 a(7), b(7);
    CHECK(RateParams::random(a, true).to_string() == RateParams::random(b, true).to_string());
}

TEST_CASE("rate polynomial") {
    auto x = RatePolynomial::var(D) + RatePolynomial::var(E);
    auto y = x * x;
    CHECK(y.terms().size() == 3);
    RateParams p;
    p.d = 2;
    p.e = 3;
    CHECK(y.eval(p) == 25);
    auto inv = RatePolynomial::monomial({0, -2, 1, 0, 0});
    CHECK(inv.eval(p) == Rational(3, 4));
    CHECK((y - y).is_zero());
}

TEST_CASE("rationals") {
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(rational_string(Rational(3, 2)) == "3/2");
    CHECK(rational_string(Rational(4)) == "4");
    CHECK(rpow(Rational(2, 3), -2) == Rational(9, 4));
    CHECK(binomial(8, 3) == 56);
}

}
