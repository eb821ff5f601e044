#include "tasep/core.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace tasep {

Word::Word(std::string s) : s_(std::move(s)) {
    if (s_.empty()) throw InvalidWord("empty word");
    for (char c : s_)
        if (c != '0' && c != '1' && c != '2')
            throw InvalidWord("bad symbol '" + std::string(1, c) + "' in " + s_);
}

int Word::count(char c) const { return static_cast<int>(std::count(s_.begin(), s_.end(), c)); }

SizeTriple Word::sizes() const { return {count('2'), count('1'), count('0')}; }

Word Word::rotated(int shift) const {
    int n = size();
    shift = ((shift % n) + n) % n;
    return Word(s_.substr(shift) + s_.substr(0, shift));
}

Word Word::swapped(int i, int j) const {
    std::string t = s_;
    std::swap(t[i], t[j]);
    return Word(std::move(t));
}

std::vector<int> Word::positions(char c) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (s_[i] == c) out.push_back(i);
    return out;
}

SizeTriple classify(const Word& w) {
    if (w.size() == 0) throw InvalidWord("empty word");
    return w.sizes();
}

CyclicClass cyclic_class(const Word& w) {
    if (w.size() == 0) throw InvalidWord("empty word");
    int n = w.size();
    Word best = w;
    int order = n;
    for (int s = 1; s < n; ++s) {
        Word r = w.rotated(s);
        if (r == w && order == n) order = s;
        if (r < best) best = r;
    }
    return {best, order};
}

namespace {
void gen(std::string& cur, int k, int r, int l, std::vector<Word>& out) {
    if (k == 0 && r == 0 && l == 0) {
        out.emplace_back(cur);
        return;
    }
    // lexicographic order: 0 < 1 < 2
    if (l) { cur.push_back('0'); gen(cur, k, r, l - 1, out); cur.pop_back(); }
    if (r) { cur.push_back('1'); gen(cur, k, r - 1, l, out); cur.pop_back(); }
    if (k) { cur.push_back('2'); gen(cur, k - 1, r, l, out); cur.pop_back(); }
}
}  // namespace

std::vector<Word> words_of_size(const SizeTriple& s) {
    if (s.k < 0 || s.r < 0 || s.l < 0 || s.n() < 1) throw InvalidParams("bad size triple");
    std::vector<Word> out;
    std::string cur;
    gen(cur, s.k, s.r, s.l, out);
    return out;
}

std::vector<Word> open_words(int n, int r) {
    if (n < 1 || r < 0 || r > n) throw InvalidParams("need 0 <= r <= n, n >= 1");
    std::vector<Word> out;
    for (int k = 0; k <= n - r; ++k) {
        auto part = words_of_size({k, r, n - r - k});
        out.insert(out.end(), part.begin(), part.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

StateSet enumerate_states(const SizeTriple& size) {
    StateSet st;
    st.words = words_of_size(size);
    std::set<Word> seen;
    for (const auto& w : st.words) {
        auto c = cyclic_class(w);
        if (seen.insert(c.representative).second) st.classes.push_back(c);
    }
    std::sort(st.classes.begin(), st.classes.end(),
              [](const CyclicClass& a, const CyclicClass& b) { return a.representative < b.representative; });
    return st;
}

Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

Integer multinomial(const SizeTriple& s) {
    return binomial(s.n(), s.k) * binomial(s.n() - s.k, s.r);
}

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw InvalidParams("empty rational");
    for (char c : s)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-'))
            throw InvalidParams("not a rational: " + s);
    Rational q;
    if (q.set_str(s, 10) != 0) throw InvalidParams("not a rational: " + s);
    if (q.get_den() == 0) throw InvalidParams("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string rational_string(const Rational& q) { return q.get_str(); }

Rational rpow(const Rational& x, int e) {
    Rational out = 1;
    Rational b = e >= 0 ? x : Rational(1) / x;
    for (int i = 0; i < std::abs(e); ++i) out *= b;
    return out;
}

void RateParams::validate() const {
    if (t <= 0 || d <= 0 || e <= 0) throw InvalidParams("rates t, d, e must be positive");
    if (alpha && *alpha <= 0) throw InvalidParams("alpha must be positive");
    if (beta && *beta <= 0) throw InvalidParams("beta must be positive");
}

RateParams RateParams::parse(const std::string& spec) {
    RateParams p;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw InvalidParams("expected name=value in '" + item + "'");
        std::string key = item.substr(0, eq);
        Rational v = parse_rational(item.substr(eq + 1));
        if (key == "t") p.t = v;
        else if (key == "d") p.d = v;
        else if (key == "e") p.e = v;
        else if (key == "alpha") p.alpha = v;
        else if (key == "beta") p.beta = v;
        else throw InvalidParams("unknown parameter '" + key + "'");
    }
    p.validate();
    return p;
}

RateParams RateParams::random(std::mt19937_64& rng, bool open) {
    std::uniform_int_distribution<int> pick(1, 97);
    auto draw = [&] {
        Rational q(pick(rng), pick(rng));
        q.canonicalize();
        return q;
    };
    RateParams p;
    p.t = draw();
    p.d = draw();
    p.e = draw();
    if (open) {
        p.alpha = draw();
        p.beta = draw();
    }
    return p;
}

std::string RateParams::to_string() const {
    std::string s = "t=" + t.get_str() + ",d=" + d.get_str() + ",e=" + e.get_str();
    if (alpha) s += ",alpha=" + alpha->get_str();
    if (beta) s += ",beta=" + beta->get_str();
    return s;
}

RatePolynomial RatePolynomial::constant(const Integer& c) {
    RatePolynomial p;
    p.add_term({0, 0, 0, 0, 0}, c);
    return p;
}

RatePolynomial RatePolynomial::monomial(const Exponents& ex, const Integer& c) {
    RatePolynomial p;
    p.add_term(ex, c);
    return p;
}

RatePolynomial RatePolynomial::var(Var v, int power) {
    Exponents ex{0, 0, 0, 0, 0};
    ex[v] = power;
    return monomial(ex);
}

void RatePolynomial::add_term(const Exponents& ex, const Integer& c) {
    if (c == 0) return;
    auto it = terms_.find(ex);
    if (it == terms_.end()) {
        terms_.emplace(ex, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

RatePolynomial& RatePolynomial::operator+=(const RatePolynomial& o) {
    for (const auto& [ex, c] : o.terms_) add_term(ex, c);
    return *this;
}

RatePolynomial& RatePolynomial::operator-=(const RatePolynomial& o) {
    for (const auto& [ex, c] : o.terms_) add_term(ex, -c);
    return *this;
}

RatePolynomial operator*(const RatePolynomial& a, const RatePolynomial& b) {
    RatePolynomial out;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Exponents ex;
            for (int i = 0; i < 5; ++i) ex[i] = ea[i] + eb[i];
            out.add_term(ex, ca * cb);
        }
    return out;
}

Rational RatePolynomial::eval(const RateParams& p) const {
    const Rational* vals[5] = {&p.t, &p.d, &p.e, p.alpha ? &*p.alpha : nullptr, p.beta ? &*p.beta : nullptr};
    Rational sum = 0;
    for (const auto& [ex, c] : terms_) {
        Rational term = c;
        for (int i = 0; i < 5; ++i) {
            if (ex[i] == 0) continue;
            if (!vals[i]) throw InvalidParams(i == ALPHA ? "alpha required" : "beta required");
            term *= rpow(*vals[i], ex[i]);
        }
        sum += term;
    }
    return sum;
}

std::string RatePolynomial::to_string() const {
    if (terms_.empty()) return "0";
    static const char* names[5] = {"t", "d", "e", "alpha", "beta"};
    std::string out;
    // highest total degree first reads more naturally
    std::vector<std::pair<Exponents, Integer>> v(terms_.begin(), terms_.end());
    std::stable_sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
        int dx = 0, dy = 0;
        for (int i = 0; i < 5; ++i) dx += x.first[i], dy += y.first[i];
        return dx > dy;
    });
    for (const auto& [ex, c] : v) {
        std::string mono;
        for (int i = 0; i < 5; ++i) {
            if (ex[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[i];
            if (ex[i] != 1) mono += "^" + std::to_string(ex[i]);
        }
        Integer a = abs(c);
        std::string coef = a.get_str();
        std::string piece = mono.empty() ? coef : (a == 1 ? mono : coef + "*" + mono);
        if (out.empty()) out = (c < 0 ? "-" : "") + piece;
        else out += (c < 0 ? " - " : " + ") + piece;
    }
    return out;
}

}  // namespace tasep
