#include "tasep/formulas.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace tasep {

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    Matrix c(n, std::vector<Rational>(m));
    for (size_t i = 0; i < n; ++i)
        for (size_t q = 0; q < k; ++q) {
            if (a[i][q] == 0) continue;
            for (size_t j = 0; j < m; ++j)
                if (b[q][j] != 0) c[i][j] += a[i][q] * b[q][j];
        }
    return c;
}

Matrix identity_matrix(int m) {
    Matrix I(m, std::vector<Rational>(m));
    for (int i = 0; i < m; ++i) I[i][i] = 1;
    return I;
}

namespace {

Matrix zeros(int m) { return Matrix(m, std::vector<Rational>(m)); }

std::vector<Rational> row_times(const std::vector<Rational>& row, const Matrix& M) {
    std::vector<Rational> out(M.empty() ? 0 : M[0].size());
    for (size_t i = 0; i < row.size(); ++i) {
        if (row[i] == 0) continue;
        for (size_t j = 0; j < out.size(); ++j)
            if (M[i][j] != 0) out[j] += row[i] * M[i][j];
    }
    return out;
}

bool rows_equal(const Matrix& a, const Matrix& b, int rows) {
    for (int i = 0; i < rows; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

Matrix scaled(Matrix a, const Rational& s) {
    for (auto& row : a)
        for (auto& x : row) x *= s;
    return a;
}

Matrix added(Matrix a, const Matrix& b) {
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) a[i][j] += b[i][j];
    return a;
}

}  // namespace

RingMatrices ring_matrices(const RateParams& p, int m) {
    RingMatrices R{zeros(m), zeros(m), zeros(m)};
    for (int i = 0; i + 1 < m; ++i) R.D[i][i + 1] = 1 / p.d;
    for (int i = 0; i < m; ++i) R.A[i][0] = 1;
    for (int i = 0; i < m; ++i) {
        R.E[i][0] = rpow(p.d, i) / (p.e * rpow(p.t, i));
        for (int j = 1; j <= i; ++j) R.E[i][j] = rpow(p.d, i - j) / rpow(p.t, i - j + 1);
    }
    return R;
}

bool ring_relations_hold(const RingMatrices& R, const RateParams& p) {
    int m = static_cast<int>(R.D.size());
    if (!rows_equal(scaled(mat_mul(R.D, R.E), p.t), added(R.D, R.E), m - 1)) return false;
    if (!rows_equal(scaled(mat_mul(R.D, R.A), p.d), R.A, m - 1)) return false;
    return rows_equal(scaled(mat_mul(R.A, R.E), p.e), R.A, m);
}

Rational ansatz_trace_ring_at(const Word& x, const RateParams& p, int m) {
    if (x.count('1') == 0) throw TraceDiverges("trace needs at least one 1: " + x.str());
    if (m < x.size() + 2) throw TruncationError("dimension must be at least n+2");
    p.validate();
    auto R = ring_matrices(p, m);
    if (!ring_relations_hold(R, p)) throw TruncationError("ring matrices fail the relations");
    Matrix prod = identity_matrix(m);
    for (int i = 0; i < x.size(); ++i) {
        const Matrix& M = x[i] == '2' ? R.D : (x[i] == '1' ? R.A : R.E);
        prod = mat_mul(prod, M);
    }
    Rational tr = 0;
    for (int i = 0; i < m; ++i) tr += prod[i][i];
    return tr;
}

Rational ansatz_trace_ring(const Word& x, const RateParams& p, int m) {
    if (m == 0) m = x.size() + 2;
    Rational a = ansatz_trace_ring_at(x, p, m);
    Rational b = ansatz_trace_ring_at(x, p, m + 3);
    if (a != b) throw TruncationError("trace changes between dimensions " + std::to_string(m) + " and " +
                                      std::to_string(m + 3));
    return a;
}

OpenRepresentation open_representation(const RateParams& p, int r_max, int m) {
    p.validate();
    if (!p.alpha || !p.beta) throw InvalidParams("open representation needs alpha and beta");
    OpenRepresentation rep;
    rep.r_max = r_max;
    rep.m = m;
    int dim = (r_max + 1) * m;
    rep.D = zeros(dim);
    rep.A = zeros(dim);
    rep.E = zeros(dim);
    for (int c = 0; c <= r_max; ++c)
        for (int b = 0; b < m; ++b) {
            int s = rep.index(c, b);
            if (b + 1 < m) rep.D[s][rep.index(c, b + 1)] = 1;
            if (c + 1 <= r_max) rep.A[s][rep.index(c + 1, 0)] = rpow(p.d, -b);
            if (b == 0) {
                rep.E[s][s] = c > 0 ? 1 / p.e : 1 / *p.alpha;
            } else {
                // <c,b|E = (<c,b| + <c,b-1|E) / t
                int prev = rep.index(c, b - 1);
                for (int j = 0; j < dim; ++j) rep.E[s][j] = rep.E[prev][j] / p.t;
                rep.E[s][s] += 1 / p.t;
            }
        }
    rep.w.assign(dim, 0);
    rep.w[rep.index(0, 0)] = 1;
    rep.v.assign(dim, 0);
    for (int c = 0; c <= r_max; ++c)
        for (int b = 0; b < m; ++b) rep.v[rep.index(c, b)] = rpow(*p.beta, -b);
    return rep;
}

bool open_relations_hold(const OpenRepresentation& rep, const RateParams& p) {
    int dim = static_cast<int>(rep.D.size());
    auto DE = mat_mul(rep.D, rep.E), DA = mat_mul(rep.D, rep.A), AE = mat_mul(rep.A, rep.E);
    auto DpE = added(rep.D, rep.E);
    for (int c = 0; c <= rep.r_max; ++c)
        for (int b = 0; b + 1 < rep.m; ++b) {
            int s = rep.index(c, b);
            for (int j = 0; j < dim; ++j) {
                if (p.t * DE[s][j] != DpE[s][j]) return false;
                if (p.d * DA[s][j] != rep.A[s][j]) return false;
            }
        }
    for (int s = 0; s < dim; ++s)
        for (int j = 0; j < dim; ++j)
            if (p.e * AE[s][j] != rep.A[s][j]) return false;
    auto wE = row_times(rep.w, rep.E);
    for (int j = 0; j < dim; ++j)
        if (wE[j] * *p.alpha != rep.w[j]) return false;
    for (int c = 0; c <= rep.r_max; ++c)
        for (int b = 0; b + 1 < rep.m; ++b) {
            int s = rep.index(c, b);
            Rational Dv = 0;
            for (int j = 0; j < dim; ++j) Dv += rep.D[s][j] * rep.v[j];
            if (Dv * *p.beta != rep.v[s]) return false;
        }
    return true;
}

namespace {

// Building and checking the representation dominates; keep the recent ones.
std::shared_ptr<const OpenRepresentation> checked_representation(const RateParams& p, int r, int m) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const OpenRepresentation>> cache;
    std::string key = p.to_string() + ";" + std::to_string(r) + ";" + std::to_string(m);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto rep = std::make_shared<const OpenRepresentation>(open_representation(p, r, m));
    if (!open_relations_hold(*rep, p)) throw TruncationError("open representation fails the relations");
    std::lock_guard<std::mutex> lock(mu);
    if (cache.size() > 256) cache.clear();
    return cache.emplace(key, rep).first->second;
}

Rational open_bracket(const Word& x, const RateParams& p, int m) {
    auto held = checked_representation(p, x.count('1'), m);
    const OpenRepresentation& rep = *held;
    auto row = rep.w;
    for (int i = 0; i < x.size(); ++i) row = row_times(row, x[i] == '2' ? rep.D : (x[i] == '1' ? rep.A : rep.E));
    Rational s = 0;
    for (size_t j = 0; j < row.size(); ++j) s += row[j] * rep.v[j];
    return s;
}

Rational open_z(int n, int r, const RateParams& p, int m) {
    auto held = checked_representation(p, r, m);
    const OpenRepresentation& rep = *held;
    auto DE = added(rep.D, rep.E);
    // coefficient rows of y^0..y^r
    std::vector<std::vector<Rational>> poly(r + 1, std::vector<Rational>(rep.w.size()));
    poly[0] = rep.w;
    for (int step = 0; step < n; ++step) {
        std::vector<std::vector<Rational>> next(r + 1);
        for (int deg = 0; deg <= r; ++deg) {
            next[deg] = row_times(poly[deg], DE);
            if (deg > 0) {
                auto a = row_times(poly[deg - 1], rep.A);
                for (size_t j = 0; j < a.size(); ++j) next[deg][j] += a[j];
            }
        }
        poly = std::move(next);
    }
    Rational s = 0;
    for (size_t j = 0; j < rep.v.size(); ++j) s += poly[r][j] * rep.v[j];
    return s;
}

}  // namespace

Rational ansatz_open(const Word& x, const RateParams& p, int m) {
    if (m == 0) m = x.size() + 2;
    if (m < x.size() + 2) throw TruncationError("dimension must be at least n+2");
    Rational a = open_bracket(x, p, m), b = open_bracket(x, p, m + 3);
    if (a != b) throw TruncationError("open bracket changes with the truncation");
    return a;
}

Rational open_partition_function(int n, int r, const RateParams& p, int m) {
    if (r < 0 || r > n) throw InvalidParams("need 0 <= r <= n");
    if (m == 0) m = n + 2;
    if (m < n + 2) throw TruncationError("dimension must be at least n+2");
    Rational a = open_z(n, r, p, m), b = open_z(n, r, p, m + 3);
    if (a != b) throw TruncationError("partition function changes with the truncation");
    return a;
}

Rational uchiyama_numerator(const Word& x, const Rational& alpha, const Rational& beta, int m) {
    RateParams p;
    p.alpha = alpha;
    p.beta = beta;
    auto s = x.sizes();
    // alpha^k beta^l * beta^k alpha^l from the rescaled D and E
    return rpow(alpha * beta, s.k + s.l) * ansatz_open(x, p, m);
}

Rational uchiyama_partition_function(int n, int r, const Rational& alpha, const Rational& beta, int m) {
    RateParams p;
    p.alpha = alpha;
    p.beta = beta;
    return rpow(alpha * beta, n - r) * open_partition_function(n, r, p, m);
}

std::vector<int> lambda_partition(const Word& w) {
    if (w.count('1') > 0) throw InvalidInterval("interval contains a 1: " + w.str());
    int m = w.count('0');
    std::vector<int> lam;
    auto twos = w.positions('2');
    for (size_t i = 0; i < twos.size(); ++i) lam.push_back(m + static_cast<int>(i + 1) - (twos[i] + 1));
    return lam;
}

std::vector<std::vector<Integer>> binomial_matrix(const std::vector<int>& lambda) {
    int j = static_cast<int>(lambda.size());
    std::vector<std::vector<Integer>> A(j, std::vector<Integer>(j));
    for (int r = 1; r <= j; ++r)
        for (int c = 1; c <= j; ++c) A[r - 1][c - 1] = binomial(lambda[c - 1] + 1, c - r + 1);
    return A;
}

Integer integer_determinant(std::vector<std::vector<Integer>> a) {
    int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int sw = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) {
                    sw = i;
                    break;
                }
            if (sw < 0) return 0;
            std::swap(a[k], a[sw]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

std::vector<Word> zero_two_intervals(const Word& x) {
    auto ones = x.positions('1');
    if (ones.empty()) throw InvalidInterval("no 1 in " + x.str());
    Word y = x.rotated(ones.front());
    std::vector<Word> out;
    std::string cur;
    bool started = false;
    auto flush = [&] {
        // Word rejects empty strings; represent an empty interval by "" via a marker
        out.push_back(cur.empty() ? Word() : Word(cur));
        cur.clear();
    };
    for (int i = 0; i < y.size(); ++i) {
        if (y[i] == '1') {
            if (started) flush();
            started = true;
        } else {
            cur += y[i];
        }
    }
    flush();
    return out;
}

Integer det_weight(const Word& x) {
    auto s = x.sizes();
    if (s.r == 0) return binomial(s.k + s.l, s.k);
    Integer prod = 1;
    for (const auto& iv : zero_two_intervals(x)) {
        if (iv.size() == 0) continue;
        prod *= integer_determinant(binomial_matrix(lambda_partition(iv)));
    }
    return prod;
}

}  // namespace tasep
