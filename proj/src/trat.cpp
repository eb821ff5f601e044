#include "tasep/trat.hpp"

#include <json.hpp>

#include <algorithm>
#include <mutex>
#include <sstream>

namespace tasep {

namespace {

void require_rotated(const Word& x) {
    if (x.size() == 0 || x[0] != '1') throw NotRotated("type must begin with 1: " + x.str());
}

// number of 0s strictly left of site p
int zeros_before(const Word& x, int p) {
    int s = 0;
    for (int i = 0; i < p; ++i) s += x[i] == '0';
    return s;
}

}  // namespace

ToricDiagram build_diagram(const Word& x) {
    require_rotated(x);
    auto s = x.sizes();
    ToricDiagram d;
    d.type = x;
    for (int i = 0; i < x.size(); ++i) d.path += x[i] == '2' ? 'S' : (x[i] == '1' ? 'D' : 'W');
    d.ends = {{{s.l + s.r, s.k + s.r}, {s.l + s.r, s.r}, {s.l, 0}, {0, 0}, {0, s.k}, {s.r, s.k + s.r}}};
    return d;
}

const char* tile_kind_name(TileKind k) {
    switch (k) {
        case TileKind::T20: return "20";
        case TileKind::T10: return "10";
        case TileKind::T21: return "21";
    }
    return "?";
}

int Tiling::tile_index(const Tile& t) const {
    auto it = std::find(tiles.begin(), tiles.end(), t);
    return it == tiles.end() ? -1 : static_cast<int>(it - tiles.begin());
}

Tiling canonical_tiling(const Word& x) {
    require_rotated(x);
    Tiling T;
    T.type = x;
    int n = x.size();
    auto zs = x.positions('0');
    int l = static_cast<int>(zs.size());
    std::map<Tile, int> idx;
    auto get = [&](Tile t) {
        auto [it, fresh] = idx.emplace(t, static_cast<int>(T.tiles.size()));
        if (fresh) T.tiles.push_back(t);
        return it->second;
    };
    // north strip of the a-th 0: sites left of it going left, then wrapping from the right end
    for (int a = 0; a < l; ++a) {
        std::vector<int> strip;
        auto visit = [&](int p) {
            if (x[p] == '2') strip.push_back(get({TileKind::T20, a, p}));
            if (x[p] == '1') strip.push_back(get({TileKind::T10, a, p}));
        };
        for (int p = zs[a] - 1; p >= 0; --p) visit(p);
        for (int p = n - 1; p > zs[a]; --p) visit(p);
        T.north.push_back(strip);
    }
    for (int p : x.positions('2')) {
        int sp = zeros_before(x, p);
        std::vector<int> strip;
        for (int a = sp; a < l; ++a) strip.push_back(get({TileKind::T20, a, p}));
        for (int b = p + 1; b < n; ++b)
            if (x[b] == '1') strip.push_back(get({TileKind::T21, p, b}));
        for (int b = 0; b < p; ++b)
            if (x[b] == '1') strip.push_back(get({TileKind::T21, p, b}));
        for (int a = 0; a < sp; ++a) strip.push_back(get({TileKind::T20, a, p}));
        T.west.push_back(strip);
    }
    for (int b : x.positions('1')) {
        int sb = zeros_before(x, b);
        std::vector<int> nw, se;
        for (int a = sb; a < l; ++a) nw.push_back(get({TileKind::T10, a, b}));
        for (int p = b - 1; p >= 0; --p)
            if (x[p] == '2') nw.push_back(get({TileKind::T21, p, b}));
        for (int a = sb - 1; a >= 0; --a) se.push_back(get({TileKind::T10, a, b}));
        for (int p = b + 1; p < n; ++p)
            if (x[p] == '2') se.push_back(get({TileKind::T21, p, b}));
        T.diag.push_back(nw);
        T.diag.push_back(se);
    }
    return T;
}

std::vector<int> TratFilling::left_counts() const {
    std::vector<int> cnt(tiling->north.size(), 0);
    auto arrows = arrow_map(*this);
    for (size_t a = 0; a < tiling->north.size(); ++a)
        for (int ti : tiling->north[a]) cnt[a] += arrows[ti] == 'L';
    return cnt;
}

std::vector<char> arrow_map(const TratFilling& f) {
    const Tiling& T = *f.tiling;
    std::vector<char> arrows(T.tiles.size(), 0);
    for (size_t a = 0; a < T.north.size(); ++a)
        if (f.up[a] >= 0) arrows[T.north[a][f.up[a]]] = 'U';
    for (size_t j = 0; j < T.west.size(); ++j) {
        if (f.left[j] < 0) continue;
        int ti = T.west[j][f.left[j]];
        if (arrows[ti]) arrows[ti] = '!';
        else arrows[ti] = 'L';
    }
    return arrows;
}

bool is_valid_filling(const TratFilling& f) {
    const Tiling& T = *f.tiling;
    if (f.up.size() != T.north.size() || f.left.size() != T.west.size()) return false;
    int lo = T.open ? -1 : 0;
    for (size_t a = 0; a < T.north.size(); ++a)
        if (f.up[a] < lo || f.up[a] >= static_cast<int>(T.north[a].size())) return false;
    for (size_t j = 0; j < T.west.size(); ++j)
        if (f.left[j] < lo || f.left[j] >= static_cast<int>(T.west[j].size())) return false;
    auto arrows = arrow_map(f);
    std::vector<char> pointed(T.tiles.size(), 0);
    auto mark = [&](const std::vector<int>& strip, int c) {
        if (c < 0) return;
        for (size_t q = c + 1; q < strip.size(); ++q) pointed[strip[q]] = 1;
    };
    for (size_t a = 0; a < T.north.size(); ++a) mark(T.north[a], f.up[a]);
    for (size_t j = 0; j < T.west.size(); ++j) mark(T.west[j], f.left[j]);
    for (size_t ti = 0; ti < T.tiles.size(); ++ti) {
        if (arrows[ti] == '!') return false;
        if (arrows[ti] && pointed[ti]) return false;
        if (!arrows[ti] && !pointed[ti]) return false;
    }
    return true;
}

std::vector<TratFilling> enumerate_fillings(std::shared_ptr<const Tiling> tp) {
    const Tiling& T = *tp;
    std::vector<const std::vector<int>*> strips;
    for (const auto& s : T.north) strips.push_back(&s);
    for (const auto& s : T.west) strips.push_back(&s);
    size_t nN = T.north.size();
    std::vector<char> arrow(T.tiles.size(), 0);
    std::vector<int> pointed(T.tiles.size(), 0);
    std::vector<int> choice(strips.size());
    std::vector<TratFilling> out;

    auto rec = [&](auto&& self, size_t s) -> void {
        if (s == strips.size()) {
            for (size_t ti = 0; ti < T.tiles.size(); ++ti)
                if (!arrow[ti] && !pointed[ti]) return;
            TratFilling f{tp, {}, {}};
            f.up.assign(choice.begin(), choice.begin() + nN);
            f.left.assign(choice.begin() + nN, choice.end());
            out.push_back(std::move(f));
            return;
        }
        const auto& S = *strips[s];
        if (T.open) {
            choice[s] = -1;
            self(self, s + 1);
        }
        for (size_t c = 0; c < S.size(); ++c) {
            int ti = S[c];
            if (arrow[ti] || pointed[ti]) continue;
            bool clear = true;
            for (size_t q = c + 1; q < S.size() && clear; ++q) clear = !arrow[S[q]];
            if (!clear) continue;
            arrow[ti] = s < nN ? 'U' : 'L';
            for (size_t q = c + 1; q < S.size(); ++q) ++pointed[S[q]];
            choice[s] = static_cast<int>(c);
            self(self, s + 1);
            for (size_t q = c + 1; q < S.size(); ++q) --pointed[S[q]];
            arrow[ti] = 0;
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<TratFilling> enumerate_fillings(const Tiling& t) {
    return enumerate_fillings(std::make_shared<const Tiling>(t));
}

RatePolynomial trat_weight(const TratFilling& f) {
    auto sz = f.tiling->type.sizes();
    auto arrows = arrow_map(f);
    int L = 0, U = 0;
    for (size_t ti = 0; ti < arrows.size(); ++ti) {
        if (f.tiling->tiles[ti].kind != TileKind::T20) continue;
        L += arrows[ti] == 'L';
        U += arrows[ti] == 'U';
    }
    return RatePolynomial::monomial({sz.k + sz.l - L - U, L, U, 0, 0});
}

TratIndex::TratIndex(const Word& x) : tiling_(std::make_shared<const Tiling>(canonical_tiling(x))) {
    fillings_ = enumerate_fillings(tiling_);
    for (size_t i = 0; i < fillings_.size(); ++i) index_.emplace(fillings_[i].left_counts(), static_cast<int>(i));
}

const TratFilling& TratIndex::by_weights(const std::vector<int>& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) throw InconsistentWeights("no filling with these left-arrow counts");
    return fillings_[it->second];
}

namespace {

std::shared_ptr<const TratIndex> cached_index(const Word& x) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const TratIndex>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(x.str());
        if (it != cache.end()) return it->second;
    }
    auto idx = std::make_shared<const TratIndex>(x);
    std::lock_guard<std::mutex> lock(mu);
    if (cache.size() > 4096) cache.clear();
    return cache.emplace(x.str(), idx).first->second;
}

}  // namespace

TratFilling trat_from_mlq(const Mlq& m) {
    auto res = drop(m);
    Word y = res.type_word.rotated(res.shift);
    if (y.count('1') == 0) throw InvalidWeights("no 1 in the type; there is no tableau");
    return cached_index(y)->by_weights(res.weights);
}

Mlq mlq_from_trat(const TratFilling& f) { return mlq_from_weights(f.tiling->type, f.left_counts()); }

std::vector<Hexagon> hexagons(const Tiling& T) {
    auto positions = [&](const std::vector<std::vector<int>>& fam) {
        std::vector<std::pair<int, int>> pos(T.tiles.size(), {-1, -1});
        for (size_t s = 0; s < fam.size(); ++s)
            for (size_t c = 0; c < fam[s].size(); ++c) pos[fam[s][c]] = {static_cast<int>(s), static_cast<int>(c)};
        return pos;
    };
    auto pn = positions(T.north), pw = positions(T.west), pd = positions(T.diag);
    auto adjacent = [](const std::vector<std::pair<int, int>>& pos, int a, int b) {
        return pos[a].first >= 0 && pos[a].first == pos[b].first && std::abs(pos[a].second - pos[b].second) == 1;
    };
    std::vector<Hexagon> out;
    for (size_t i = 0; i < T.tiles.size(); ++i) {
        const Tile& t20 = T.tiles[i];
        if (t20.kind != TileKind::T20) continue;
        for (size_t j = 0; j < T.tiles.size(); ++j) {
            const Tile& t10 = T.tiles[j];
            if (t10.kind != TileKind::T10 || t10.u != t20.u) continue;
            int k = T.tile_index({TileKind::T21, t20.v, t10.v});
            if (k < 0) continue;
            int a = static_cast<int>(i), b = static_cast<int>(j);
            if (adjacent(pn, a, b) && adjacent(pw, a, k) && adjacent(pd, b, k)) out.push_back({a, b, k});
        }
    }
    return out;
}

namespace {

void swap_in(std::vector<std::vector<int>>& fam, int a, int b) {
    for (auto& s : fam) {
        auto ia = std::find(s.begin(), s.end(), a), ib = std::find(s.begin(), s.end(), b);
        if (ia != s.end() && ib != s.end()) std::iter_swap(ia, ib);
    }
}

}  // namespace

Tiling flip(const Tiling& t, const Hexagon& h) {
    auto hs = hexagons(t);
    bool found = std::any_of(hs.begin(), hs.end(),
                             [&](const Hexagon& g) { return g.t20 == h.t20 && g.t10 == h.t10 && g.t21 == h.t21; });
    if (!found) throw NotFlippable("tiles do not form a flippable hexagon");
    Tiling out = t;
    swap_in(out.north, h.t20, h.t10);
    swap_in(out.west, h.t20, h.t21);
    return out;
}

TratFilling transport(const TratFilling& f, std::shared_ptr<const Tiling> flipped) {
    auto arrows = arrow_map(f);
    TratFilling g{flipped, {}, {}};
    auto find_arrow = [&](const std::vector<int>& strip, char kind) {
        for (size_t c = 0; c < strip.size(); ++c)
            if (arrows[strip[c]] == kind) return static_cast<int>(c);
        throw NotFlippable("strip lost its arrow");
    };
    for (const auto& s : flipped->north) g.up.push_back(find_arrow(s, 'U'));
    for (const auto& s : flipped->west) g.left.push_back(find_arrow(s, 'L'));
    if (!is_valid_filling(g)) throw NotFlippable("transported filling breaks the filling rules");
    return g;
}

bool is_compatible(const NestedPaths& p) {
    if (p.p1.size() != p.p2.size() || p.p1.empty() || p.p1[0] != 'D') return false;
    int w1 = 0, w2 = 0;
    for (size_t i = 0; i < p.p1.size(); ++i) {
        char a = p.p1[i], b = p.p2[i];
        if (std::string("SDW").find(a) == std::string::npos || std::string("SDW").find(b) == std::string::npos)
            return false;
        if ((a == 'D') != (b == 'D')) return false;
        if (a == 'D' && w1 != w2) return false;
        w1 += a == 'W';
        w2 += b == 'W';
        if (w2 < w1) return false;
    }
    return w1 == w2;
}

NestedPaths paths_from_mlq(const Mlq& m) {
    auto res = drop(m);
    if (res.shift != 0 || res.type_word.size() == 0 || res.type_word[0] != '1')
        throw NotRotated("MLQ is not in canonical rotation: " + m.serialize());
    NestedPaths p;
    const Word& x = res.type_word;
    for (int i = 0; i < x.size(); ++i) {
        p.p1 += x[i] == '2' ? 'S' : (x[i] == '1' ? 'D' : 'W');
        p.p2 += m.top[i] ? 'W' : (x[i] == '1' ? 'D' : 'S');
    }
    return p;
}

NestedPaths paths_from_trat(const TratFilling& f) {
    const Word& x = f.tiling->type;
    auto a = f.left_counts();
    NestedPaths p;
    for (int i = 0; i < x.size(); ++i) p.p1 += x[i] == '2' ? 'S' : (x[i] == '1' ? 'D' : 'W');
    size_t zi = 0;
    int i = 0;
    while (i < x.size()) {
        p.p2 += 'D';
        int j = i + 1, twos = 0;
        std::string seg;
        for (; j < x.size() && x[j] != '1'; ++j) {
            if (x[j] == '2') ++twos;
            else {
                seg += std::string(a[zi], 'S') + 'W';
                twos -= a[zi];
                ++zi;
            }
        }
        if (twos < 0) throw InconsistentWeights("left-arrow counts exceed the segment");
        p.p2 += seg + std::string(twos, 'S');
        i = j;
    }
    return p;
}

TratFilling trat_from_paths(const NestedPaths& p) {
    if (!is_compatible(p)) throw NotCompatible("paths are not compatible");
    std::string x;
    for (char c : p.p1) x += c == 'S' ? '2' : (c == 'D' ? '1' : '0');
    std::vector<int> w;
    int run = 0;
    for (char c : p.p2) {
        if (c == 'S') ++run;
        else {
            if (c == 'W') w.push_back(run);
            run = 0;
        }
    }
    Word X(x);
    if (!is_x_consistent(X, w)) throw NotCompatible("path pair does not give a consistent list");
    return cached_index(X)->by_weights(w);
}

TratFilling omega_trat(const TratFilling& f, int i) { return trat_from_mlq(omega_mlq(mlq_from_trat(f), i)); }

std::string filling_json(const TratFilling& f) {
    nlohmann::json j;
    const Tiling& T = *f.tiling;
    j["type"] = T.type.str();
    auto zs = T.type.positions('0');
    auto cnt = f.left_counts();
    j["strips"] = nlohmann::json::array();
    for (size_t a = 0; a < T.north.size(); ++a)
        j["strips"].push_back({{"zero_site", zs[a] + 1}, {"left_arrows", cnt[a]}, {"up_arrow_index", f.up[a]}});
    j["west_left_arrow_index"] = f.left;
    return j.dump();
}

std::string ascii_dump(const TratFilling& f) {
    const Tiling& T = *f.tiling;
    auto arrows = arrow_map(f);
    std::ostringstream os;
    auto show = [&](const char* name, const std::vector<std::vector<int>>& fam) {
        for (size_t s = 0; s < fam.size(); ++s) {
            os << name << s << ":";
            for (int ti : fam[s]) {
                const Tile& t = T.tiles[ti];
                os << ' ' << tile_kind_name(t.kind) << '(' << t.u << ',' << t.v << ')';
                if (arrows[ti]) os << (arrows[ti] == 'U' ? '^' : '<');
            }
            os << '\n';
        }
    };
    show("N", T.north);
    show("W", T.west);
    return os.str();
}

}  // namespace tasep
