#include "tasep/open_boundary.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace tasep {

bool validate_amlq(const Mlq& a) {
    if (a.top.size() != a.bottom.size() || a.top_balls() > a.bottom_balls()) return false;
    detail::LinearDrop ld;
    return detail::linear_drop(a.top, a.bottom, ld);
}

Amlq make_amlq(std::vector<char> top, std::vector<char> bottom) {
    Amlq a;
    a.top = std::move(top);
    a.bottom = std::move(bottom);
    a.open = true;
    if (!validate_amlq(a)) throw InvalidAmlq("not an acyclic MLQ: " + a.serialize());
    return a;
}

Mlq embed_amlq(const Amlq& a) {
    if (!validate_amlq(a)) throw InvalidAmlq("not an acyclic MLQ: " + a.serialize());
    Mlq m;
    m.top.push_back(0);
    m.bottom.push_back(1);
    m.top.insert(m.top.end(), a.top.begin(), a.top.end());
    m.bottom.insert(m.bottom.end(), a.bottom.begin(), a.bottom.end());
    m.top.push_back(0);
    m.bottom.push_back(1);
    return m;
}

Amlq unembed_amlq(const Mlq& m) {
    int n = m.n();
    if (n < 2 || !m.bottom[0] || !m.bottom[n - 1] || m.top[0] || m.top[n - 1])
        throw InvalidAmlq("outer columns must be a vacancy over a ball: " + m.serialize());
    std::vector<char> top(m.top.begin() + 1, m.top.end() - 1), bottom(m.bottom.begin() + 1, m.bottom.end() - 1);
    return make_amlq(std::move(top), std::move(bottom));
}

std::vector<Amlq> all_amlqs(int n, int r) {
    if (n < 1 || r < 0 || r > n) throw InvalidParams("need n >= 1 and 0 <= r <= n");
    std::vector<Amlq> out;
    for (unsigned bmask = 0; bmask < (1u << n); ++bmask) {
        int nb = __builtin_popcount(bmask);
        if (nb < r) continue;
        for (unsigned tmask = 0; tmask < (1u << n); ++tmask) {
            if (__builtin_popcount(tmask) != nb - r) continue;
            Amlq a;
            a.open = true;
            for (int i = 0; i < n; ++i) {
                a.top.push_back((tmask >> i) & 1);
                a.bottom.push_back((bmask >> i) & 1);
            }
            if (validate_amlq(a)) out.push_back(std::move(a));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Amlq> enumerate_amlqs(const Word& x) {
    Word y("1" + x.str() + "1");
    std::vector<Amlq> out;
    for (const auto& m : enumerate_mlqs(y)) out.push_back(unembed_amlq(m));
    std::sort(out.begin(), out.end());
    return out;
}

RatStats amlq_stats(const Amlq& a, FreeConvention conv) {
    if (!validate_amlq(a)) throw InvalidAmlq("not an acyclic MLQ: " + a.serialize());
    Amlq o = a;
    o.open = true;
    auto res = drop(o);
    const Word& x = res.type_word;
    auto sz = x.sizes();
    RatStats st;
    st.n = x.size();
    st.k = sz.k;
    st.r = sz.r;
    st.l = sz.l;
    st.mv = res.mv();
    st.urest = res.urest();
    auto ones = x.positions('1');
    int lo = ones.empty() ? st.n : ones.front();
    int hi = ones.empty() ? -1 : ones.back();
    auto restricted_zero = [&](int i) {
        return x[i] == '0' && !std::binary_search(res.unrestricted.begin(), res.unrestricted.end(), i);
    };
    auto unmarked_vacancy = [&](int i) {
        return x[i] == '2' && !std::binary_search(res.marked_vacancies.begin(), res.marked_vacancies.end(), i);
    };
    for (int i = 0; i < lo; ++i)
        st.ufree += conv == FreeConvention::Definition ? restricted_zero(i) : unmarked_vacancy(i);
    for (int i = hi + 1; i < st.n; ++i)
        st.lfree += conv == FreeConvention::Definition ? unmarked_vacancy(i) : restricted_zero(i);
    return st;
}

namespace {

RatePolynomial weight_from_stats(const RatStats& st, bool enhanced) {
    int ea = st.n - st.r - st.ufree, eb = st.n - st.r - st.lfree;
    if (ea < 0 || eb < 0) throw ConventionViolation("negative alpha/beta exponent");
    Exponents ex{0, 0, 0, ea, eb};
    if (enhanced) {
        ex[D] = st.mv + st.lfree - st.k;
        ex[E] = st.urest + st.ufree - st.l;
    }
    return RatePolynomial::monomial(ex);
}

int zeros_before(const Word& x, int p) {
    int s = 0;
    for (int i = 0; i < p; ++i) s += x[i] == '0';
    return s;
}

}  // namespace

RatePolynomial amlq_weight(const Amlq& a, bool enhanced, FreeConvention conv) {
    return weight_from_stats(amlq_stats(a, conv), enhanced);
}

Tiling rat_tiling(const Word& x) {
    Tiling T;
    T.type = x;
    T.open = true;
    int n = x.size();
    auto zs = x.positions('0');
    int l = static_cast<int>(zs.size());
    std::map<Tile, int> idx;
    auto get = [&](Tile t) {
        auto [it, fresh] = idx.emplace(t, static_cast<int>(T.tiles.size()));
        if (fresh) T.tiles.push_back(t);
        return it->second;
    };
    for (int a = 0; a < l; ++a) {
        std::vector<int> strip;
        for (int p = zs[a] - 1; p >= 0; --p) {
            if (x[p] == '2') strip.push_back(get({TileKind::T20, a, p}));
            if (x[p] == '1') strip.push_back(get({TileKind::T10, a, p}));
        }
        T.north.push_back(strip);
    }
    for (int p : x.positions('2')) {
        std::vector<int> strip;
        for (int a = zeros_before(x, p); a < l; ++a) strip.push_back(get({TileKind::T20, a, p}));
        for (int b = p + 1; b < n; ++b)
            if (x[b] == '1') strip.push_back(get({TileKind::T21, p, b}));
        T.west.push_back(strip);
    }
    return T;
}

RatStats rat_stats(const TratFilling& f) {
    const Tiling& T = *f.tiling;
    auto sz = T.type.sizes();
    RatStats st;
    st.n = T.type.size();
    st.k = sz.k;
    st.r = sz.r;
    st.l = sz.l;
    st.ufree = static_cast<int>(std::count(f.up.begin(), f.up.end(), -1));
    st.lfree = static_cast<int>(std::count(f.left.begin(), f.left.end(), -1));
    auto arrows = arrow_map(f);
    for (size_t ti = 0; ti < arrows.size(); ++ti) {
        if (T.tiles[ti].kind != TileKind::T20) continue;
        st.mv += arrows[ti] == 'L';
        st.urest += arrows[ti] == 'U';
    }
    return st;
}

RatePolynomial rat_weight(const TratFilling& f, bool enhanced) { return weight_from_stats(rat_stats(f), enhanced); }

namespace {

std::shared_ptr<const Tiling> cached_rat_tiling(const Word& x) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const Tiling>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(x.str());
    if (it != cache.end()) return it->second;
    if (cache.size() > 4096) cache.clear();
    return cache.emplace(x.str(), std::make_shared<const Tiling>(rat_tiling(x))).first->second;
}

// position of the tile of T_{1X1} matching a tile of the RAT region of X
Tile shifted(const Tile& t) {
    switch (t.kind) {
        case TileKind::T20:
        case TileKind::T10: return {t.kind, t.u, t.v + 1};
        case TileKind::T21: return {t.kind, t.u + 1, t.v + 1};
    }
    return t;
}

}  // namespace

TratFilling rat_from_amlq(const Amlq& a) {
    Amlq o = a;
    o.open = true;
    Word x = drop(o).type_word;
    TratFilling tf = trat_from_mlq(embed_amlq(o));
    auto arrows = arrow_map(tf);
    const Tiling& big = *tf.tiling;
    std::map<Tile, int> big_index;
    for (size_t i = 0; i < big.tiles.size(); ++i) big_index.emplace(big.tiles[i], static_cast<int>(i));
    auto R = cached_rat_tiling(x);
    TratFilling f{R, {}, {}};
    // the arrows outside the region sat on the two chopped diagonal strips
    auto find = [&](const std::vector<int>& strip, char kind) {
        for (size_t c = 0; c < strip.size(); ++c)
            if (arrows[big_index.at(shifted(R->tiles[strip[c]]))] == kind) return static_cast<int>(c);
        return -1;
    };
    for (const auto& s : R->north) f.up.push_back(find(s, 'U'));
    for (const auto& s : R->west) f.left.push_back(find(s, 'L'));
    return f;
}

Amlq amlq_from_rat(const TratFilling& f) {
    if (!f.tiling->open) throw InvalidAmlq("filling is not on an open region");
    for (const auto& a : enumerate_amlqs(f.tiling->type))
        if (rat_from_amlq(a) == f) return a;
    throw InvalidAmlq("no AMLQ maps to this filling");
}

namespace {

// Move the top entry at a to b (no wrap), shifting the entries in between by one.
void move_top(std::vector<char>& top, int a, int b) {
    char v = top[a];
    if (a < b) std::copy(top.begin() + a + 1, top.begin() + b + 1, top.begin() + a);
    else std::copy_backward(top.begin() + b, top.begin() + a, top.begin() + a + 1);
    top[b] = v;
}

}  // namespace

std::optional<AmlqMove> omega_amlq_move(const Amlq& a, int site) {
    int n = a.n();
    if (site < 1 || site > n + 1) return std::nullopt;
    Amlq o = a;
    o.open = true;
    Word typ = drop(o).type_word;
    AmlqMove mv{o, T};
    if (site == 1) {
        if (typ[0] != '0') return std::nullopt;
        int j = 1;
        while (j < n && !o.bottom[j]) ++j;
        std::vector<char> top;
        if (j < n) {
            top.assign(o.top.begin() + 1, o.top.begin() + j + 1);
            top.push_back(0);
            top.insert(top.end(), o.top.begin() + j + 1, o.top.end());
        } else {
            top.assign(o.top.begin() + 1, o.top.end());
            top.push_back(0);
        }
        mv.result.top = top;
        mv.result.bottom[0] = 0;
        mv.rate = ALPHA;
        return mv;
    }
    if (site == n + 1) {
        if (typ[n - 1] != '2') return std::nullopt;
        int j = n - 2;
        while (j >= 0 && typ[j] == '0') --j;
        mv.result.top.pop_back();
        mv.result.bottom.pop_back();
        mv.result.top.insert(mv.result.top.begin() + j + 1, 1);
        mv.result.bottom.insert(mv.result.bottom.begin() + j + 1, 1);
        mv.rate = BETA;
        return mv;
    }
    int i = site - 1, im = i - 1;
    if (!o.bottom[i]) return std::nullopt;
    char x = typ[im], y = typ[i];
    if (o.top[i]) {
        if (y != '0' || (x != '2' && x != '1')) return std::nullopt;
        int j = im - 1;
        while (j >= 0 && typ[j] == '0') --j;
        move_top(mv.result.top, i, j + 1);
        mv.rate = x == '2' ? T : E;
    } else {
        if (x != '2' || (y != '0' && y != '1')) return std::nullopt;
        int j = i + 1;
        while (j < n && typ[j] == '2') ++j;
        if (j >= n) {
            mv.result.top.erase(mv.result.top.begin() + i);
            mv.result.top.push_back(0);
        } else {
            move_top(mv.result.top, i, j);
        }
        mv.rate = y == '0' ? T : D;
    }
    std::swap(mv.result.bottom[im], mv.result.bottom[i]);
    return mv;
}

Amlq omega_amlq(const Amlq& a, int i) {
    auto mv = omega_amlq_move(a, i);
    return mv ? mv->result : a;
}

TratFilling zeta_rat(const TratFilling& f, int i) { return rat_from_amlq(omega_amlq(amlq_from_rat(f), i + 1)); }

ChainSpec build_amlq_chain(int n, int r, const RateParams& params) {
    params.validate();
    if (!params.alpha || !params.beta) throw InvalidParams("AMLQ chain needs alpha and beta");
    ChainSpec chain(ChainKind::Amlq);
    auto states = all_amlqs(n, r);
    for (const auto& a : states) chain.add_state(a.serialize());
    const Rational* rate[5] = {&params.t, &params.d, &params.e, &*params.alpha, &*params.beta};
    for (const auto& a : states) {
        int from = chain.index_of(a.serialize());
        for (int i = 1; i <= n + 1; ++i) {
            auto mv = omega_amlq_move(a, i);
            if (!mv) continue;
            int to = chain.index_of(mv->result.serialize());
            if (to < 0) throw InvalidAmlq("move left the state space: " + mv->result.serialize());
            chain.add_transition(from, to, *rate[mv->rate]);
        }
    }
    chain.finalize();
    return chain;
}

}  // namespace tasep
