#include "tasep/mlq.hpp"
#include "tasep/trat.hpp"

#include <doctest.h>
#include <json.hpp>

#include <set>

using namespace tasep;

TEST_SUITE("trat") {

TEST_CASE("diagram") {
    auto d = build_diagram(Word("120201210"));
    CHECK(d.ends[0] == std::pair{6, 6});
    CHECK(d.ends[3] == std::pair{0, 0});
    CHECK(build_diagram(Word("12")).path == "DS");
    CHECK(build_diagram(Word("10")).path == "DW");
    CHECK_THROWS_AS(build_diagram(Word("2010")), NotRotated);
    // the path runs from p1 to p4
    auto s = Word("1220201100").sizes();
    auto e = build_diagram(Word("1220201100"));
    int x = e.ends[0].first, y = e.ends[0].second;
    for (char c : e.path) {
        if (c != 'S') --x;
        if (c != 'W') --y;
    }
    CHECK(x == 0);
    CHECK(y == 0);
    CHECK(e.ends[0] == std::pair{s.l + s.r, s.k + s.r});
}

TEST_CASE("canonical tiling") {
    auto T = canonical_tiling(Word("120201210"));
    REQUIRE(T.north.size() == 3);
    for (const auto& s : T.north) CHECK(s.size() == 6);
    int n20 = 0, n10 = 0, n21 = 0;
    for (const auto& t : T.tiles) {
        n20 += t.kind == TileKind::T20;
        n10 += t.kind == TileKind::T10;
        n21 += t.kind == TileKind::T21;
    }
    CHECK(n20 == 9);
    CHECK(n10 == 9);
    CHECK(n21 == 9);
    auto small = canonical_tiling(Word("120"));
    CHECK(small.tiles.size() == 3);
    CHECK(small.north.size() == 1);
    CHECK(small.north[0].size() == 2);
}

TEST_CASE("filling counts") {
    CHECK(enumerate_fillings(canonical_tiling(Word("120201210"))).size() == 5);
    CHECK(enumerate_fillings(canonical_tiling(Word("10"))).size() == 1);
    CHECK(enumerate_fillings(canonical_tiling(Word("12"))).size() == 1);
    CHECK(enumerate_fillings(canonical_tiling(Word("1122"))).size() == 1);
    for (int k = 0; k <= 3; ++k)
        for (int l = 0; l <= 3; ++l) {
            Word x("1" + std::string(k, '2') + std::string(l, '0'));
            CHECK(enumerate_fillings(canonical_tiling(x)).size() == binomial(k + l, k).get_ui());
        }
}

TEST_CASE("every strip carries exactly one arrow") {
    for (const char* w : {"120201210", "1220201100", "12011020"}) {
        auto fs = enumerate_fillings(canonical_tiling(Word(w)));
        for (const auto& f : fs) {
            CHECK(is_valid_filling(f));
            auto arrows = arrow_map(f);
            for (const auto& s : f.tiling->north) {
                int c = 0;
                for (int ti : s) c += arrows[ti] == 'U';
                CHECK(c == 1);
            }
            for (const auto& s : f.tiling->west) {
                int c = 0;
                for (int ti : s) c += arrows[ti] == 'L';
                CHECK(c == 1);
            }
            for (size_t ti = 0; ti < arrows.size(); ++ti) {
                if (f.tiling->tiles[ti].kind == TileKind::T21) CHECK(arrows[ti] != 'U');
                if (f.tiling->tiles[ti].kind == TileKind::T10) CHECK(arrows[ti] != 'L');
            }
        }
    }
}

TEST_CASE("weights") {
    // 2201021 rotated: the filling sum equals the MLQ sum
    Word x("1022010");
    RatePolynomial a, b;
    for (const auto& f : enumerate_fillings(canonical_tiling(x))) a += trat_weight(f);
    for (const auto& m : enumerate_mlqs(x)) b += mlq_weight(m);
    CHECK(a == b);
    bool found = false;
    for (const auto& f : enumerate_fillings(canonical_tiling(Word("1220201100"))))
        found = found || trat_weight(f) == RatePolynomial::monomial({3, 3, 1, 0, 0});
    CHECK(found);
}

TEST_CASE("bijection with MLQs") {
    Word x("1220201100");
    TratIndex idx(x);
    std::set<std::vector<int>> ups;
    for (const auto& m : enumerate_mlqs(x)) {
        auto f = trat_from_mlq(m);
        CHECK(f.left_counts() == drop(m).weights);
        CHECK(mlq_from_trat(f) == m);
        CHECK(trat_weight(f) == mlq_weight(m));
    }
    CHECK(enumerate_mlqs(x).size() == idx.fillings().size());
}

TEST_CASE("nested paths") {
    Word x("1220201100");
    for (const auto& m : enumerate_mlqs(x)) {
        auto p = paths_from_mlq(m);
        CHECK(is_compatible(p));
        CHECK(p.p1 == "DSSWSWDDWW");
        auto f = trat_from_paths(p);
        CHECK(paths_from_trat(f) == p);
    }
    CHECK_THROWS_AS(trat_from_paths({"DSW", "DSS"}), NotCompatible);
    CHECK_FALSE(is_compatible({"DSW", "SDW"}));
    Mlq shifted = enumerate_mlqs(x).front().rotated(1);
    CHECK_THROWS_AS(paths_from_mlq(shifted), NotRotated);
}

TEST_CASE("flips") {
    auto base = std::make_shared<const Tiling>(canonical_tiling(Word("120201210")));
    auto hs = hexagons(*base);
    REQUIRE_FALSE(hs.empty());
    auto fs = enumerate_fillings(base);
    for (const auto& h : hs) {
        auto t1 = std::make_shared<const Tiling>(flip(*base, h));
        auto back = flip(*t1, h);
        CHECK(back.north == base->north);
        CHECK(back.west == base->west);
        CHECK(enumerate_fillings(t1).size() == fs.size());
        for (const auto& f : fs) {
            auto g = transport(f, t1);
            CHECK(trat_weight(g) == trat_weight(f));
            CHECK(transport(g, base) == f);
        }
    }
    CHECK_THROWS_AS(flip(*base, Hexagon{0, 0, 0}), NotFlippable);
}

TEST_CASE("omega on fillings follows omega on MLQs") {
    Word x("120201210");
    TratIndex index(x);
    for (const auto& f : index.fillings())
        for (int i = 0; i < x.size(); ++i) {
            auto g = omega_trat(f, i);
            CHECK(is_valid_filling(g));
            Mlq m = mlq_from_trat(f);
            if (!omega_mlq_move(m, i)) continue;
            Word moved = x.swapped((i - 1 + x.size()) % x.size(), i);
            CHECK(cyclic_class(g.tiling->type).representative == cyclic_class(moved).representative);
        }
}

TEST_CASE("filling json") {
    auto f = enumerate_fillings(canonical_tiling(Word("12020"))).front();
    auto j = nlohmann::json::parse(filling_json(f));
    CHECK(j["type"] == "12020");
    CHECK(j["strips"].size() == 2);
    CHECK(j["strips"][0]["zero_site"] == 3);
    CHECK_FALSE(ascii_dump(f).empty());
}

}
