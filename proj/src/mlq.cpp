#include "tasep/mlq.hpp"

#include <algorithm>
#include <functional>

namespace tasep {

int Mlq::top_balls() const { return static_cast<int>(std::count(top.begin(), top.end(), 1)); }
int Mlq::bottom_balls() const { return static_cast<int>(std::count(bottom.begin(), bottom.end(), 1)); }

Mlq Mlq::rotated(int shift) const {
    int len = n();
    Mlq out = *this;
    for (int i = 0; i < len; ++i) {
        int src = ((i + shift) % len + len) % len;
        out.top[i] = top[src];
        out.bottom[i] = bottom[src];
    }
    return out;
}

std::string Mlq::serialize() const {
    std::string s = open ? "open:" : "";
    for (char c : top) s += c ? '1' : '0';
    s += '|';
    for (char c : bottom) s += c ? '1' : '0';
    return s;
}

Mlq Mlq::parse(const std::string& text) {
    Mlq m;
    std::string s = text;
    if (s.rfind("open:", 0) == 0) {
        m.open = true;
        s = s.substr(5);
    }
    auto bar = s.find('|');
    if (bar == std::string::npos) throw InvalidWord("expected top|bottom, got " + text);
    std::string a = s.substr(0, bar), b = s.substr(bar + 1);
    if (a.size() != b.size() || a.empty()) throw InvalidWord("rows must have equal non-zero length: " + text);
    for (char c : a + b)
        if (c != '0' && c != '1') throw InvalidWord("rows are bit strings: " + text);
    for (char c : a) m.top.push_back(c == '1');
    for (char c : b) m.bottom.push_back(c == '1');
    if (m.top_balls() > m.bottom_balls()) throw InvalidWord("more top balls than bottom balls: " + text);
    return m;
}

namespace detail {

bool linear_drop(const std::vector<char>& top, const std::vector<char>& bottom, LinearDrop& out) {
    int n = static_cast<int>(bottom.size());
    out.landing.assign(n, -1);
    out.owner.assign(n, -1);
    out.weight.assign(n, -1);
    out.occupied.assign(n, 0);
    out.unrestricted.assign(n, 0);
    std::vector<int> path;
    for (int s = n - 1; s >= 0; --s) {
        if (!top[s]) continue;
        int j = s;
        path.clear();
        while (true) {
            if (j >= n) return false;
            if (bottom[j] && !out.occupied[j]) break;
            if (!bottom[j] && out.owner[j] == -1) path.push_back(j);
            ++j;
        }
        for (int q : path) out.owner[q] = j;
        out.occupied[j] = 1;
        out.weight[j] = static_cast<int>(path.size());
        out.landing[s] = j;
    }
    out.type.assign(n, '2');
    for (int i = 0; i < n; ++i)
        if (bottom[i]) out.type[i] = out.occupied[i] ? '0' : '1';
    // A 0-ball is unrestricted when the first free vacancy to its left (no
    // 1-ball in between) exists; free = never marked, or marked by a ball that
    // lands further right.
    for (int x = 0; x < n; ++x) {
        if (out.type[x] != '0') continue;
        for (int q = x - 1; q >= 0 && out.type[q] != '1'; --q) {
            if (out.type[q] == '2' && (out.owner[q] == -1 || out.owner[q] > x)) {
                out.unrestricted[x] = 1;
                break;
            }
        }
    }
    return true;
}

}  // namespace detail

namespace {

void check_counts(const Mlq& m) {
    if (m.top.size() != m.bottom.size() || m.bottom.empty()) throw InvalidWord("malformed MLQ");
    if (m.top_balls() > m.bottom_balls()) throw InvalidWord("more top balls than bottom balls");
}

// Cyclic right-to-left drop, used only when there are no 1-balls.
DropResult drop_no_ones(const Mlq& m) {
    int n = m.n();
    std::vector<char> occ(n, 0);
    std::vector<int> owner(n, -1), weight(n, -1);
    DropResult res;
    for (int s = n - 1; s >= 0; --s) {
        if (!m.top[s]) continue;
        int j = s, cnt = 0;
        std::vector<int> path;
        for (int step = 0; step <= n; ++step) {
            if (m.bottom[j] && !occ[j]) break;
            if (!m.bottom[j] && owner[j] == -1) path.push_back(j);
            j = (j + 1) % n;
        }
        for (int q : path) owner[q] = j;
        cnt = static_cast<int>(path.size());
        occ[j] = 1;
        weight[j] = cnt;
        res.pairing.push_back({s, j});
    }
    std::string type(n, '2');
    for (int i = 0; i < n; ++i)
        if (m.bottom[i]) type[i] = '0';
    res.type_word = Word(type);
    for (int i = 0; i < n; ++i) {
        if (type[i] == '0') {
            res.zero_ball_sites.push_back(i);
            res.weights.push_back(weight[i]);
        }
        if (owner[i] != -1) res.marked_vacancies.push_back(i);
    }
    // degenerate rule: unrestricted iff some vacancy stays unmarked
    bool any_free = false;
    for (int i = 0; i < n; ++i)
        if (type[i] == '2' && owner[i] == -1) any_free = true;
    if (any_free)
        for (int x : res.zero_ball_sites) res.unrestricted.push_back(x);
    std::sort(res.pairing.begin(), res.pairing.end());
    return res;
}

}  // namespace

Word mlq_type_cyclic(const Mlq& m) {
    check_counts(m);
    int n = m.n();
    std::vector<char> occ(n, 0);
    for (int s = 0; s < n; ++s) {
        if (!m.top[s]) continue;
        int j = s;
        while (!(m.bottom[j] && !occ[j])) j = (j + 1) % n;
        occ[j] = 1;
    }
    std::string type(n, '2');
    for (int i = 0; i < n; ++i)
        if (m.bottom[i]) type[i] = occ[i] ? '0' : '1';
    return Word(type);
}

int canonical_shift(const Mlq& m) {
    Word t = mlq_type_cyclic(m);
    auto ones = t.positions('1');
    return ones.empty() ? -1 : ones.front();
}

DropResult drop(const Mlq& m) {
    check_counts(m);
    int n = m.n();
    int shift = 0;
    Mlq work = m;
    if (!m.open) {
        shift = canonical_shift(m);
        if (shift < 0) return drop_no_ones(m);
        work = m.rotated(shift);
    }
    detail::LinearDrop ld;
    if (!detail::linear_drop(work.top, work.bottom, ld)) throw InvalidAmlq("a top ball wraps around: " + m.serialize());
    auto orig = [&](int i) { return (i + shift) % n; };
    DropResult res;
    res.shift = shift;
    std::string type(n, '2');
    for (int i = 0; i < n; ++i) type[orig(i)] = ld.type[i];
    res.type_word = Word(type);
    for (int i = 0; i < n; ++i) {
        if (ld.landing[i] >= 0) res.pairing.push_back({orig(i), orig(ld.landing[i])});
        if (ld.type[i] == '0') {
            res.zero_ball_sites.push_back(orig(i));
            res.weights.push_back(ld.weight[i]);
            if (ld.unrestricted[i]) res.unrestricted.push_back(orig(i));
        }
        if (ld.owner[i] != -1) res.marked_vacancies.push_back(orig(i));
    }
    std::sort(res.pairing.begin(), res.pairing.end());
    std::sort(res.marked_vacancies.begin(), res.marked_vacancies.end());
    std::sort(res.unrestricted.begin(), res.unrestricted.end());
    return res;
}

Word mlq_type(const Mlq& m) { return drop(m).type_word; }

namespace {

int first_one(const Word& x) {
    auto ones = x.positions('1');
    if (ones.empty()) throw InvalidWeights("word has no 1: " + x.str());
    return ones.front();
}

}  // namespace

bool is_x_consistent(const Word& x, const std::vector<int>& w) {
    int s = first_one(x);
    Word y = x.rotated(s);
    auto zeros = y.positions('0');
    if (w.size() != zeros.size())
        throw InvalidWeights("expected " + std::to_string(zeros.size()) + " weights, got " + std::to_string(w.size()));
    int b = 0;
    int used = 0;  // sum of (w_j + 1) over 0-balls since b
    size_t zi = 0;
    for (int i = 0; i < y.size(); ++i) {
        if (y[i] == '1') {
            b = i;
            used = 0;
        } else if (y[i] == '0') {
            if (w[zi] < 0) return false;
            used += w[zi] + 1;
            if (used > i - b) return false;
            ++zi;
        }
    }
    return true;
}

Mlq mlq_from_weights(const Word& x, const std::vector<int>& w) {
    if (!is_x_consistent(x, w)) throw InconsistentWeights("weights are not consistent with " + x.str());
    int s = first_one(x);
    Word y = x.rotated(s);
    int n = y.size();
    Mlq m;
    m.top.assign(n, 0);
    m.bottom.assign(n, 0);
    for (int i = 0; i < n; ++i) m.bottom[i] = y[i] != '2';
    std::vector<char> marked(n, 0);
    auto zeros = y.positions('0');
    for (size_t i = 0; i < zeros.size(); ++i) {
        int pos = zeros[i], found = 0;
        for (int q = zeros[i] - 1; found < w[i]; --q) {
            if (q < 0 || y[q] == '1') throw InconsistentWeights("lift ran into a 1-ball");
            if (y[q] == '2' && !marked[q]) {
                marked[q] = 1;
                ++found;
                pos = q;
            }
        }
        if (m.top[pos]) throw InconsistentWeights("two lifts to the same site");
        m.top[pos] = 1;
    }
    return m.rotated(-s);
}

std::vector<std::vector<int>> consistent_lists(const Word& x) {
    int s = first_one(x);
    Word y = x.rotated(s);
    auto zeros = y.positions('0');
    std::vector<int> seg_start(zeros.size());
    for (size_t i = 0; i < zeros.size(); ++i) {
        int b = zeros[i];
        while (y[b] != '1') --b;
        seg_start[i] = b;
    }
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(size_t, int)> rec = [&](size_t i, int used) {
        if (i == zeros.size()) {
            out.push_back(cur);
            return;
        }
        if (i > 0 && seg_start[i] != seg_start[i - 1]) used = 0;
        int cap = zeros[i] - seg_start[i] - used - 1;
        for (int w = 0; w <= cap; ++w) {
            cur.push_back(w);
            rec(i + 1, used + w + 1);
            cur.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

std::vector<Mlq> enumerate_mlqs(const Word& x) {
    std::vector<Mlq> out;
    if (x.count('1') == 0) {
        int n = x.size(), l = x.count('0');
        std::vector<char> sel(n, 0);
        std::fill(sel.end() - l, sel.end(), 1);
        do {
            Mlq m;
            m.top = sel;
            m.bottom.assign(n, 0);
            for (int i = 0; i < n; ++i) m.bottom[i] = x[i] == '0';
            out.push_back(m);
        } while (std::next_permutation(sel.begin(), sel.end()));
        return out;
    }
    for (const auto& w : consistent_lists(x)) out.push_back(mlq_from_weights(x, w));
    return out;
}

std::vector<Mlq> all_mlqs(const SizeTriple& size) {
    int n = size.n(), balls = size.r + size.l;
    std::vector<Mlq> out;
    std::vector<char> bot(n, 0), top(n, 0);
    std::fill(bot.end() - balls, bot.end(), 1);
    do {
        std::fill(top.begin(), top.end(), 0);
        std::fill(top.end() - size.l, top.end(), 1);
        do {
            out.push_back(Mlq{top, bot, false});
        } while (std::next_permutation(top.begin(), top.end()));
    } while (std::next_permutation(bot.begin(), bot.end()));
    return out;
}

RatePolynomial mlq_weight(const Mlq& m) {
    auto res = drop(m);
    auto sz = res.type_word.sizes();
    int mv = res.mv(), u = res.urest();
    return RatePolynomial::monomial({sz.k + sz.l - mv - u, mv, u, 0, 0});
}

namespace {

// Move the top entry at a to b, shifting the entries in between by one.
// dir < 0: b is reached going left from a; dir > 0: going right.
void move_top(std::vector<char>& top, int a, int b, int dir) {
    int n = static_cast<int>(top.size());
    char v = top[a];
    int p = a;
    while (p != b) {
        int q = (p + (dir < 0 ? -1 : 1) + n) % n;
        top[p] = top[q];
        p = q;
    }
    top[b] = v;
}

}  // namespace

std::optional<MlqMove> omega_mlq_move(const Mlq& m, int i) {
    int n = m.n();
    if (i < 0 || i >= n || n < 2 || !m.bottom[i]) return std::nullopt;
    Word typ = mlq_type(m);
    int im = (i - 1 + n) % n;
    char a = typ[im], b = typ[i];
    MlqMove mv{m, T};
    if (m.top[i]) {
        if (!((a == '2' && b == '0') || (a == '1' && b == '0'))) return std::nullopt;
        int j = (im - 1 + n) % n;
        while (typ[j] == '0') j = (j - 1 + n) % n;
        int dest = (j + 1) % n;
        if (dest != i) move_top(mv.result.top, i, dest, -1);
        mv.rate = a == '2' ? T : E;
    } else {
        if (!((a == '2' && b == '0') || (a == '2' && b == '1'))) return std::nullopt;
        int j = (i + 1) % n;
        while (typ[j] == '2') j = (j + 1) % n;
        if (j != i) move_top(mv.result.top, i, j, +1);
        mv.rate = b == '0' ? T : D;
    }
    std::swap(mv.result.bottom[im], mv.result.bottom[i]);
    return mv;
}

Mlq omega_mlq(const Mlq& m, int i) {
    auto mv = omega_mlq_move(m, i);
    return mv ? mv->result : m;
}

ChainSpec build_mlq_chain(const SizeTriple& size, const RateParams& params) {
    params.validate();
    ChainSpec chain(ChainKind::Mlq);
    auto states = all_mlqs(size);
    for (const auto& m : states) chain.add_state(m.serialize());
    const Rational* rate[3] = {&params.t, &params.d, &params.e};
    for (const auto& m : states) {
        int from = chain.index_of(m.serialize());
        for (int i = 0; i < m.n(); ++i) {
            auto mv = omega_mlq_move(m, i);
            if (!mv) continue;
            chain.add_transition(from, chain.index_of(mv->result.serialize()), *rate[mv->rate]);
        }
    }
    chain.finalize();
    return chain;
}

}  // namespace tasep
