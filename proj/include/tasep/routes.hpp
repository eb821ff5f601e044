#pragma once

#include "tasep/core.hpp"
#include "tasep/open_boundary.hpp"

#include <map>
#include <optional>
#include <string>

namespace tasep {

// Class probabilities keyed by the class representative, one map per route.
using ClassTable = std::map<std::string, Rational>;

Word rotate_to_one(const Word& x);  // first rotation starting with 1 (x itself if r = 0)

ClassTable ring_by_solver(const SizeTriple& s, const RateParams& p);
ClassTable ring_by_mlq(const SizeTriple& s, const RateParams& p);
ClassTable ring_by_trat(const SizeTriple& s, const RateParams& p);
std::optional<ClassTable> ring_by_ansatz(const SizeTriple& s, const RateParams& p);  // none when r = 0
ClassTable ring_by_det(const SizeTriple& s);                                          // unit rates

// Unnormalized class weight: sum of MLQ weights of the rotation starting with 1.
RatePolynomial class_weight(const Word& x);

// Word probabilities for the open chain.
using WordTable = std::map<std::string, Rational>;
WordTable open_by_solver(int n, int r, const RateParams& p);
WordTable open_by_amlq(int n, int r, const RateParams& p, FreeConvention conv = kActiveConvention);
WordTable open_by_ansatz(int n, int r, const RateParams& p);

}  // namespace tasep
