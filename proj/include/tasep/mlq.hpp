#pragma once

#include "tasep/core.hpp"
#include "tasep/markov.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tasep {

struct Mlq {
    std::vector<char> top;     // 1 = ball
    std::vector<char> bottom;  // 1 = ball
    bool open = false;

    int n() const { return static_cast<int>(bottom.size()); }
    int top_balls() const;
    int bottom_balls() const;
    Mlq rotated(int shift) const;  // column i of the result is column i+shift

    // "010010|110110", top row first, site 1 leftmost; "open:" prefix for AMLQs
    std::string serialize() const;
    static Mlq parse(const std::string& s);

    bool operator==(const Mlq&) const = default;
    auto operator<=>(const Mlq&) const = default;
};

struct DropResult {
    Word type_word;
    int shift = 0;                               // canonical rotation used for the drop
    std::vector<std::pair<int, int>> pairing;    // (top site, bottom 0-ball site)
    std::vector<int> zero_ball_sites;            // x_1..x_l in canonical order
    std::vector<int> weights;                    // w_i aligned with zero_ball_sites
    std::vector<int> marked_vacancies;           // sorted sites
    std::vector<int> unrestricted;               // sorted 0-ball sites
    int mv() const { return static_cast<int>(marked_vacancies.size()); }
    int urest() const { return static_cast<int>(unrestricted.size()); }
};

namespace detail {
// Right-to-left drop on a non-wrapping row pair. Returns false if a ball
// runs off the right end. Unrestricted scan stops at 1-balls and the left end.
struct LinearDrop {
    std::vector<int> landing;     // landing[top site] = bottom site, -1 if none
    std::vector<int> owner;       // owner[vacancy] = landing site of the ball that marked it, -1 if unmarked
    std::vector<int> weight;      // weight[0-ball site], -1 elsewhere
    std::vector<char> occupied;
    std::vector<char> unrestricted;
    std::string type;
};
bool linear_drop(const std::vector<char>& top, const std::vector<char>& bottom, LinearDrop& out);
}  // namespace detail

// Type by a left-to-right cyclic drop (independent implementation).
Word mlq_type_cyclic(const Mlq& m);
int canonical_shift(const Mlq& m);  // first shift putting a 1-ball leftmost, -1 if r=0
DropResult drop(const Mlq& m);
Word mlq_type(const Mlq& m);

// Weights are listed per 0-ball starting from the first 1 of x.
bool is_x_consistent(const Word& x, const std::vector<int>& w);
Mlq mlq_from_weights(const Word& x, const std::vector<int>& w);
std::vector<std::vector<int>> consistent_lists(const Word& x);
std::vector<Mlq> enumerate_mlqs(const Word& x);
std::vector<Mlq> all_mlqs(const SizeTriple& size);

RatePolynomial mlq_weight(const Mlq& m);

struct MlqMove {
    Mlq result;
    Var rate;  // T, D or E
};
// Jump at site i (0-based), acting on the pair (i-1, i) cyclically.
std::optional<MlqMove> omega_mlq_move(const Mlq& m, int i);
Mlq omega_mlq(const Mlq& m, int i);  // identity where inapplicable

ChainSpec build_mlq_chain(const SizeTriple& size, const RateParams& params);

}  // namespace tasep
