#pragma once

#include "tasep/core.hpp"
#include "tasep/markov.hpp"
#include "tasep/mlq.hpp"
#include "tasep/trat.hpp"

#include <optional>
#include <vector>

namespace tasep {

// An AMLQ is an Mlq with open = true: drops run right to left with no wrap.
using Amlq = Mlq;

bool validate_amlq(const Mlq& a);
Amlq make_amlq(std::vector<char> top, std::vector<char> bottom);  // throws InvalidAmlq

// A <-> A_M in MLQ(1X1): a column (vacancy over 1-ball) on each side.
Mlq embed_amlq(const Amlq& a);
Amlq unembed_amlq(const Mlq& m);

std::vector<Amlq> all_amlqs(int n, int r);          // brute force over row pairs
std::vector<Amlq> enumerate_amlqs(const Word& x);   // through MLQ(1X1)

// Definition: ufree counts restricted 0-balls left of the leftmost 1-ball,
// lfree unmarked vacancies right of the rightmost 1-ball.
// Swapped: unmarked vacancies on the left, restricted 0-balls on the right.
enum class FreeConvention { Definition, Swapped };
constexpr FreeConvention kActiveConvention = FreeConvention::Definition;

struct RatStats {
    int n = 0, r = 0, k = 0, l = 0;
    int mv = 0, urest = 0, ufree = 0, lfree = 0;
};
RatStats amlq_stats(const Amlq& a, FreeConvention conv = kActiveConvention);

// wt = alpha^(n-r-ufree) beta^(n-r-lfree); the enhanced weight multiplies by
// d^(mv+lfree-k) e^(urest+ufree-l), which may carry negative exponents.
RatePolynomial amlq_weight(const Amlq& a, bool enhanced, FreeConvention conv = kActiveConvention);

// RAT region of X: north strip of each 0 runs over the sites before it
// (nearest first), west strip of each 2 over the 0s after it then the 1s after it.
Tiling rat_tiling(const Word& x);
RatStats rat_stats(const TratFilling& f);
RatePolynomial rat_weight(const TratFilling& f, bool enhanced);
TratFilling rat_from_amlq(const Amlq& a);
Amlq amlq_from_rat(const TratFilling& f);

struct AmlqMove {
    Amlq result;
    Var rate;
};
// i in 1..n+1: 1 is the left boundary, n+1 the right boundary, 2..n the bulk pair (i-1, i).
std::optional<AmlqMove> omega_amlq_move(const Amlq& a, int i);
Amlq omega_amlq(const Amlq& a, int i);
TratFilling zeta_rat(const TratFilling& f, int i);  // rat(omega_amlq(amlq(f), i + 1))

ChainSpec build_amlq_chain(int n, int r, const RateParams& params);

}  // namespace tasep
