#include "tasep/markov.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace tasep {

const char* chain_kind_name(ChainKind k) {
    switch (k) {
        case ChainKind::Ring: return "ring";
        case ChainKind::Open: return "open";
        case ChainKind::Mlq: return "mlq";
        case ChainKind::Amlq: return "amlq";
        default: return "generic";
    }
}

int ChainSpec::add_state(const std::string& key) {
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(states_.size());
    states_.push_back(key);
    index_.emplace(key, id);
    return id;
}

int ChainSpec::index_of(const std::string& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? -1 : it->second;
}

void ChainSpec::add_transition(int from, int to, const Rational& rate) {
    if (from == to) return;
    if (rate <= 0) throw InvalidParams("transition rates must be positive");
    transitions_.push_back({from, to, rate});
}

void ChainSpec::finalize() {
    std::map<std::pair<int, int>, Rational> merged;
    for (auto& tr : transitions_) merged[{tr.from, tr.to}] += tr.rate;
    transitions_.clear();
    for (auto& [key, rate] : merged) transitions_.push_back({key.first, key.second, rate});
}

const Rational& StationaryDistribution::at(const std::string& key) const {
    auto it = index.find(key);
    if (it == index.end()) throw InvalidWord("state not in chain: " + key);
    return pi[it->second];
}

ChainSpec build_ring_chain(const SizeTriple& size, const RateParams& params) {
    params.validate();
    ChainSpec chain(ChainKind::Ring);
    auto words = words_of_size(size);
    for (const auto& w : words) chain.add_state(w.str());
    int n = size.n();
    for (const auto& w : words) {
        int from = chain.index_of(w.str());
        if (n < 2) continue;
        for (int i = 0; i < n; ++i) {
            int j = (i + 1) % n;
            char a = w[i], b = w[j];
            const Rational* rate = nullptr;
            if (a == '2' && b == '0') rate = &params.t;
            else if (a == '2' && b == '1') rate = &params.d;
            else if (a == '1' && b == '0') rate = &params.e;
            if (!rate) continue;
            chain.add_transition(from, chain.index_of(w.swapped(i, j).str()), *rate);
        }
    }
    chain.finalize();
    return chain;
}

ChainSpec build_open_chain(int n, int r, const RateParams& params) {
    if (r < 0 || r > n) throw InvalidParams("need 0 <= r <= n");
    params.validate();
    if (!params.alpha || !params.beta) throw InvalidParams("open chain needs alpha and beta");
    ChainSpec chain(ChainKind::Open);
    auto words = open_words(n, r);
    for (const auto& w : words) chain.add_state(w.str());
    for (const auto& w : words) {
        int from = chain.index_of(w.str());
        for (int i = 0; i + 1 < n; ++i) {
            char a = w[i], b = w[i + 1];
            const Rational* rate = nullptr;
            if (a == '2' && b == '0') rate = &params.t;
            else if (a == '2' && b == '1') rate = &params.d;
            else if (a == '1' && b == '0') rate = &params.e;
            if (rate) chain.add_transition(from, chain.index_of(w.swapped(i, i + 1).str()), *rate);
        }
        if (w[0] == '0') {
            std::string s = w.str();
            s[0] = '2';
            chain.add_transition(from, chain.index_of(s), *params.alpha);
        }
        if (w[n - 1] == '2') {
            std::string s = w.str();
            s[n - 1] = '0';
            chain.add_transition(from, chain.index_of(s), *params.beta);
        }
    }
    chain.finalize();
    return chain;
}

std::vector<std::vector<int>> strongly_connected_components(const ChainSpec& chain) {
    int n = chain.size();
    std::vector<std::vector<int>> adj(n);
    for (const auto& tr : chain.transitions()) adj[tr.from].push_back(tr.to);

    // iterative Tarjan
    std::vector<int> index(n, -1), low(n, 0), stack;
    std::vector<char> on_stack(n, 0);
    std::vector<std::vector<int>> comps;
    int counter = 0;
    for (int s = 0; s < n; ++s) {
        if (index[s] != -1) continue;
        std::vector<std::pair<int, size_t>> call{{s, 0}};
        index[s] = low[s] = counter++;
        stack.push_back(s);
        on_stack[s] = 1;
        while (!call.empty()) {
            auto& [v, pos] = call.back();
            if (pos < adj[v].size()) {
                int w = adj[v][pos++];
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                std::vector<int> comp;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                comps.push_back(std::move(comp));
            }
            int done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
    }
    std::sort(comps.begin(), comps.end());
    return comps;
}

namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

bool is_prime(u64 p) {
    if (p < 2) return false;
    for (u64 q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

u32 nth_prime_below_2_31(int k) {
    static std::vector<u32> cache;
    u64 cand = cache.empty() ? 2147483647ULL : cache.back() - 1;
    while (static_cast<int>(cache.size()) <= k) {
        while (!is_prime(cand)) --cand;
        cache.push_back(static_cast<u32>(cand));
        --cand;
    }
    return cache[k];
}

u32 powmod(u64 b, u64 e, u32 p) {
    u64 r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<u32>(r);
}

u32 invmod(u32 a, u32 p) { return powmod(a, p - 2, p); }

using SparseRow = std::vector<std::pair<int, u32>>;

// Solve A x = b mod p with Markowitz-style pivoting. Returns false if A is
// singular mod p.
bool sparse_solve_mod(std::vector<SparseRow> rows, std::vector<u32> rhs, u32 p, std::vector<u32>& x) {
    int n = static_cast<int>(rows.size());
    std::vector<std::vector<int>> col_rows(n);
    std::vector<int> col_count(n, 0);
    for (int i = 0; i < n; ++i)
        for (auto& [c, v] : rows[i]) {
            col_rows[c].push_back(i);
            ++col_count[c];
        }
    std::vector<char> row_done(n, 0), col_done(n, 0);
    std::vector<std::pair<int, int>> pivots;
    pivots.reserve(n);

    auto entry = [&](int r, int c) -> u32 {
        auto& row = rows[r];
        auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(c, u32(0)),
                                   [](const auto& a, const auto& b) { return a.first < b.first; });
        return (it != row.end() && it->first == c) ? it->second : 0;
    };

    SparseRow scratch;
    for (int step = 0; step < n; ++step) {
        int best_c = -1;
        for (int c = 0; c < n; ++c)
            if (!col_done[c] && (best_c == -1 || col_count[c] < col_count[best_c])) best_c = c;
        if (best_c == -1 || col_count[best_c] == 0) return false;
        int c = best_c;
        // row with fewest entries holding a nonzero in column c
        int pr = -1;
        std::vector<int> live;
        for (int r : col_rows[c]) {
            if (row_done[r] || entry(r, c) == 0) continue;
            live.push_back(r);
            if (pr == -1 || rows[r].size() < rows[pr].size() || (rows[r].size() == rows[pr].size() && r < pr))
                pr = r;
        }
        std::sort(live.begin(), live.end());
        live.erase(std::unique(live.begin(), live.end()), live.end());
        col_rows[c] = live;
        if (pr == -1) return false;
        u32 inv = invmod(entry(pr, c), p);
        const SparseRow& prow = rows[pr];
        for (int r : live) {
            if (r == pr) continue;
            u64 f = static_cast<u64>(entry(r, c)) * inv % p;
            u32 neg = static_cast<u32>((p - f) % p);
            // rows[r] += neg * prow
            scratch.clear();
            auto& row = rows[r];
            size_t a = 0, b = 0;
            while (a < row.size() || b < prow.size()) {
                if (b == prow.size() || (a < row.size() && row[a].first < prow[b].first)) {
                    scratch.push_back(row[a++]);
                } else if (a == row.size() || prow[b].first < row[a].first) {
                    int cc = prow[b].first;
                    u32 v = static_cast<u32>(static_cast<u64>(neg) * prow[b].second % p);
                    ++b;
                    if (v) {
                        scratch.push_back({cc, v});
                        if (!col_done[cc]) {
                            col_rows[cc].push_back(r);
                            ++col_count[cc];
                        }
                    }
                } else {
                    int cc = row[a].first;
                    u32 v = static_cast<u32>((row[a].second + static_cast<u64>(neg) * prow[b].second) % p);
                    ++a;
                    ++b;
                    if (v) scratch.push_back({cc, v});
                    else if (!col_done[cc]) --col_count[cc];
                }
            }
            row.swap(scratch);
            rhs[r] = static_cast<u32>((rhs[r] + static_cast<u64>(neg) * rhs[pr]) % p);
        }
        row_done[pr] = 1;
        col_done[c] = 1;
        for (auto& [cc, v] : prow)
            if (!col_done[cc]) --col_count[cc];
        pivots.push_back({pr, c});
    }
    x.assign(n, 0);
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        auto [r, c] = *it;
        u64 acc = rhs[r];
        u32 diag = 0;
        for (auto& [cc, v] : rows[r]) {
            if (cc == c) diag = v;
            else acc = (acc + static_cast<u64>(p - v) * x[cc]) % p;
        }
        x[c] = static_cast<u32>(acc * invmod(diag, p) % p);
    }
    return true;
}

bool rational_reconstruct(const Integer& a, const Integer& m, Rational& out) {
    // find n/d = a mod m with |n|, d <= sqrt(m/2)
    Integer bound;
    mpz_class half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    Integer r0 = m, r1 = a % m, s0 = 0, s1 = 1;
    if (r1 < 0) r1 += m;
    while (r1 > bound) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        Integer s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (s1 == 0 || abs(s1) > bound) return false;
    Integer g = gcd(r1, s1);
    if (g != 1) return false;
    out = Rational(r1, s1);
    out.canonicalize();
    return true;
}

}  // namespace

bool is_stationary(const ChainSpec& chain, const std::vector<Rational>& pi) {
    int n = chain.size();
    if (static_cast<int>(pi.size()) != n) return false;
    std::vector<Rational> flow(n);
    for (const auto& tr : chain.transitions()) {
        Rational f = pi[tr.from] * tr.rate;
        flow[tr.to] += f;
        flow[tr.from] -= f;
    }
    Rational sum = 0;
    for (int i = 0; i < n; ++i) {
        if (flow[i] != 0) return false;
        sum += pi[i];
    }
    return sum == 1;
}

StationaryDistribution stationary_exact(const ChainSpec& chain) {
    int n = chain.size();
    if (n == 0) throw InvalidParams("empty chain");
    auto comps = strongly_connected_components(chain);
    if (comps.size() > 1) {
        std::string msg = "chain has " + std::to_string(comps.size()) + " strongly connected components:";
        for (const auto& comp : comps) {
            msg += " {";
            for (size_t i = 0; i < comp.size() && i < 8; ++i) msg += (i ? "," : "") + chain.states()[comp[i]];
            if (comp.size() > 8) msg += ",...";
            msg += "}";
        }
        throw NotIrreducible(msg);
    }
    StationaryDistribution out;
    out.states = chain.states();
    for (int i = 0; i < n; ++i) out.index.emplace(out.states[i], i);
    if (n == 1) {
        out.pi = {Rational(1)};
        return out;
    }

    // Integer generator: scale all rates by the lcm of their denominators.
    Integer L = 1;
    for (const auto& tr : chain.transitions()) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), tr.rate.get_den_mpz_t());
    // A = Q^T with the last row replaced by ones.
    std::vector<std::map<int, Integer>> A(n);
    for (const auto& tr : chain.transitions()) {
        Integer q = tr.rate.get_num() * (L / tr.rate.get_den());
        if (tr.to != n - 1) A[tr.to][tr.from] += q;
        if (tr.from != n - 1) A[tr.from][tr.from] -= q;
    }
    for (int j = 0; j < n; ++j) A[n - 1][j] = 1;

    std::vector<Integer> X(n, 0);
    Integer M = 1;
    int used = 0, failures = 0;
    for (int k = 0;; ++k) {
        u32 p = nth_prime_below_2_31(k);
        std::vector<SparseRow> rows(n);
        for (int i = 0; i < n; ++i)
            for (auto& [c, v] : A[i]) {
                Integer red = v % p;
                if (red < 0) red += p;
                u32 rv = static_cast<u32>(red.get_ui());
                if (rv) rows[i].push_back({c, rv});
            }
        std::vector<u32> rhs(n, 0), x;
        rhs[n - 1] = 1;
        if (!sparse_solve_mod(std::move(rows), std::move(rhs), p, x)) {
            if (++failures > 8) throw NotIrreducible("generator singular modulo every tried prime");
            continue;
        }
        // CRT
        if (used == 0) {
            for (int i = 0; i < n; ++i) X[i] = x[i];
        } else {
            u32 Mp = static_cast<u32>(mpz_fdiv_ui(M.get_mpz_t(), p));
            u32 Minv = invmod(Mp, p);
            for (int i = 0; i < n; ++i) {
                u32 Xp = static_cast<u32>(mpz_fdiv_ui(X[i].get_mpz_t(), p));
                u64 delta = (static_cast<u64>(x[i]) + p - Xp) % p * Minv % p;
                X[i] += M * static_cast<unsigned long>(delta);
            }
        }
        M *= p;
        ++used;
        if (used < 2) continue;
        std::vector<Rational> pi(n);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) ok = rational_reconstruct(X[i], M, pi[i]);
        if (!ok) continue;
        if (is_stationary(chain, pi)) {
            out.pi = std::move(pi);
            return out;
        }
    }
}

ProjectionReport check_projection(const ChainSpec& fine, const ChainSpec& coarse, const StateMap& f) {
    ProjectionReport rep;
    std::vector<int> image(fine.size());
    std::vector<char> hit(coarse.size(), 0);
    for (int i = 0; i < fine.size(); ++i) {
        int y = coarse.index_of(f(fine.states()[i]));
        if (y < 0) throw InvalidProjectionMap("state " + fine.states()[i] + " maps outside the coarse chain");
        image[i] = y;
        hit[y] = 1;
    }
    for (int y = 0; y < coarse.size(); ++y)
        if (!hit[y]) throw InvalidProjectionMap("coarse state " + coarse.states()[y] + " has no preimage");

    std::map<std::pair<int, int>, Rational> crate;
    for (const auto& tr : coarse.transitions()) crate[{tr.from, tr.to}] += tr.rate;
    std::map<std::pair<int, int>, Rational> frate;
    for (const auto& tr : fine.transitions()) frate[{tr.from, tr.to}] += tr.rate;

    // condition 1: every fine transition carries the rate of its image
    for (const auto& [key, rate] : frate) {
        ++rep.fine_transitions_checked;
        auto it = crate.find({image[key.first], image[key.second]});
        Rational want = it == crate.end() ? Rational(0) : it->second;
        if (rate != want)
            rep.violations.push_back("rate " + fine.states()[key.first] + " -> " + fine.states()[key.second] + " is " +
                                     rate.get_str() + ", image rate " + want.get_str());
    }
    // condition 2: unique lift of every coarse transition from every fiber element
    std::vector<std::vector<std::pair<int, Rational>>> out_by_state(fine.size());
    for (const auto& [key, rate] : frate) out_by_state[key.first].push_back({key.second, rate});
    std::vector<std::vector<int>> fiber(coarse.size());
    for (int i = 0; i < fine.size(); ++i) fiber[image[i]].push_back(i);
    for (const auto& [key, rate] : crate) {
        for (int x1 : fiber[key.first]) {
            ++rep.lifts_checked;
            int count = 0;
            Rational got;
            for (auto& [x2, r] : out_by_state[x1])
                if (image[x2] == key.second) {
                    ++count;
                    got = r;
                }
            if (count != 1)
                rep.violations.push_back("state " + fine.states()[x1] + " has " + std::to_string(count) + " lifts of " +
                                         coarse.states()[key.first] + " -> " + coarse.states()[key.second]);
            else if (got != rate)
                rep.violations.push_back("lift from " + fine.states()[x1] + " of " + coarse.states()[key.first] +
                                         " -> " + coarse.states()[key.second] + " has rate " + got.get_str());
        }
    }
    rep.ok = rep.violations.empty();
    return rep;
}

std::vector<std::pair<CyclicClass, Rational>> ring_class_probabilities(const SizeTriple& size,
                                                                       const StationaryDistribution& pi) {
    std::vector<std::pair<CyclicClass, Rational>> out;
    for (const auto& c : enumerate_states(size).classes)
        out.push_back({c, Rational(c.order) * pi.at(c.representative.str())});
    return out;
}

}  // namespace tasep
