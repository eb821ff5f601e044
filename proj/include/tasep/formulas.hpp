#pragma once

#include "tasep/core.hpp"

#include <vector>

namespace tasep {

using Matrix = std::vector<std::vector<Rational>>;

Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix identity_matrix(int m);

// Ring matrices: D = (1/d) superdiagonal, A = ones in column 0,
// E[i][0] = d^i/(e t^i), E[i][j] = d^(i-j)/t^(i-j+1) for 1 <= j <= i.
struct RingMatrices {
    Matrix D, A, E;
};
RingMatrices ring_matrices(const RateParams& p, int m);
// Checks tDE = D+E, dDA = A, eAE = A on rows unaffected by truncation.
bool ring_relations_hold(const RingMatrices& mats, const RateParams& p);

// tr(DAE(x)) with 2->D, 1->A, 0->E. m = 0 picks n+2. Computed at m and m+3;
// a mismatch throws TruncationError.
Rational ansatz_trace_ring(const Word& x, const RateParams& p, int m = 0);
Rational ansatz_trace_ring_at(const Word& x, const RateParams& p, int m);

// Open boundary representation on the basis <c,b| = <w| A^c D^b, c <= r,
// b < m. Relations tDE = D+E, dDA = A, eAE = A, <w|E = <w|/alpha,
// D|v> = |v>/beta.
struct OpenRepresentation {
    int r_max = 0, m = 0;
    Matrix D, A, E;
    std::vector<Rational> w, v;
    int index(int c, int b) const { return c * m + b; }
};
OpenRepresentation open_representation(const RateParams& p, int r_max, int m);
bool open_relations_hold(const OpenRepresentation& rep, const RateParams& p);

// <w|DAE(x)|v> and Z_{n,r} = [y^r] <w|(D + yA + E)^n|v>.
Rational ansatz_open(const Word& x, const RateParams& p, int m = 0);
Rational open_partition_function(int n, int r, const RateParams& p, int m = 0);

// alpha^k beta^l <w| prod(beta D, A, alpha E) |v> at t=d=e=1, and the matching
// partition function (alpha beta)^(n-r) Z_{n,r}.
Rational uchiyama_numerator(const Word& x, const Rational& alpha, const Rational& beta, int m = 0);
Rational uchiyama_partition_function(int n, int r, const Rational& alpha, const Rational& beta, int m = 0);

std::vector<int> lambda_partition(const Word& w);
std::vector<std::vector<Integer>> binomial_matrix(const std::vector<int>& lambda);
Integer integer_determinant(std::vector<std::vector<Integer>> a);  // Bareiss
std::vector<Word> zero_two_intervals(const Word& x);
Integer det_weight(const Word& x);

}  // namespace tasep
