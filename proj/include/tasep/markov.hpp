#pragma once

#include "tasep/core.hpp"

#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

namespace tasep {

enum class ChainKind { Ring, Open, Mlq, Amlq, Generic };
const char* chain_kind_name(ChainKind k);

struct Transition {
    int from;
    int to;
    Rational rate;
};

// States are opaque string keys. Parallel edges are merged and self-loops
// dropped by add_transition/finalize.
class ChainSpec {
public:
    ChainSpec() = default;
    explicit ChainSpec(ChainKind kind) : kind_(kind) {}

    int add_state(const std::string& key);
    int index_of(const std::string& key) const;  // -1 if absent
    void add_transition(int from, int to, const Rational& rate);
    void finalize();  // merge parallel edges, sort

    ChainKind kind() const { return kind_; }
    const std::vector<std::string>& states() const { return states_; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    int size() const { return static_cast<int>(states_.size()); }
    std::vector<Transition>& mutable_transitions() { return transitions_; }

private:
    ChainKind kind_ = ChainKind::Generic;
    std::vector<std::string> states_;
    std::unordered_map<std::string, int> index_;
    std::vector<Transition> transitions_;
};

struct StationaryDistribution {
    std::vector<std::string> states;
    std::vector<Rational> pi;
    std::unordered_map<std::string, int> index;

    const Rational& at(const std::string& key) const;
};

ChainSpec build_ring_chain(const SizeTriple& size, const RateParams& params);
ChainSpec build_open_chain(int n, int r, const RateParams& params);

// Strongly connected components, each sorted; size 1 for irreducible chains.
std::vector<std::vector<int>> strongly_connected_components(const ChainSpec& chain);

StationaryDistribution stationary_exact(const ChainSpec& chain);

// Exact check of pi Q = 0 and sum pi = 1.
bool is_stationary(const ChainSpec& chain, const std::vector<Rational>& pi);

struct ProjectionReport {
    bool ok = true;
    long fine_transitions_checked = 0;
    long lifts_checked = 0;
    std::vector<std::string> violations;
};

using StateMap = std::function<std::string(const std::string&)>;
ProjectionReport check_projection(const ChainSpec& fine, const ChainSpec& coarse, const StateMap& f);

// Class probabilities o(X)*pi(word) keyed by class representative.
std::vector<std::pair<CyclicClass, Rational>> ring_class_probabilities(const SizeTriple& size,
                                                                       const StationaryDistribution& pi);

}  // namespace tasep
