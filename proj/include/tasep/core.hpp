#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace tasep {

using Rational = mpq_class;
using Integer = mpz_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

#define TASEP_ERROR(Name)                                               \
    struct Name : Error {                                               \
        using Error::Error;                                             \
        const char* kind() const noexcept override { return #Name; }    \
    }

TASEP_ERROR(InvalidWord);
TASEP_ERROR(InvalidParams);
TASEP_ERROR(NotIrreducible);
TASEP_ERROR(InvalidProjectionMap);
TASEP_ERROR(InvalidWeights);
TASEP_ERROR(InconsistentWeights);
TASEP_ERROR(TraceDiverges);
TASEP_ERROR(TruncationError);
TASEP_ERROR(NotRotated);
TASEP_ERROR(NotFlippable);
TASEP_ERROR(NotCompatible);
TASEP_ERROR(InvalidInterval);
TASEP_ERROR(InvalidAmlq);
TASEP_ERROR(ConventionViolation);

#undef TASEP_ERROR

struct SizeTriple {
    int k = 0;  // 2s
    int r = 0;  // 1s
    int l = 0;  // 0s
    int n() const { return k + r + l; }
    bool operator==(const SizeTriple&) const = default;
};

// Symbols are the characters '0','1','2'. Sites are 0-based here; docs and
// the CLI talk about sites 1..n.
class Word {
public:
    Word() = default;
    explicit Word(std::string s);

    int size() const { return static_cast<int>(s_.size()); }
    char operator[](int i) const { return s_[i]; }
    const std::string& str() const { return s_; }
    SizeTriple sizes() const;
    int count(char c) const;

    Word rotated(int shift) const;  // result[i] = this[(i+shift) mod n]
    Word swapped(int i, int j) const;
    std::vector<int> positions(char c) const;

    auto operator<=>(const Word&) const = default;

private:
    std::string s_;
};

struct CyclicClass {
    Word representative;
    int order = 0;
};

SizeTriple classify(const Word& w);
CyclicClass cyclic_class(const Word& w);

struct StateSet {
    std::vector<Word> words;
    std::vector<CyclicClass> classes;
};
StateSet enumerate_states(const SizeTriple& size);
std::vector<Word> words_of_size(const SizeTriple& size);
std::vector<Word> open_words(int n, int r);

Integer binomial(long n, long k);
Integer multinomial(const SizeTriple& s);

// Exponent order: T, D, E, ALPHA, BETA. Negative exponents are allowed
// (the enhanced open-boundary weights are Laurent monomials).
enum Var { T = 0, D = 1, E = 2, ALPHA = 3, BETA = 4 };
using Exponents = std::array<int, 5>;

struct RateParams {
    Rational t = 1, d = 1, e = 1;
    std::optional<Rational> alpha, beta;

    void validate() const;
    static RateParams parse(const std::string& spec);  // "t=1/2,d=3,alpha=2/5"
    static RateParams random(std::mt19937_64& rng, bool open);
    std::string to_string() const;
};

class RatePolynomial {
public:
    RatePolynomial() = default;
    static RatePolynomial constant(const Integer& c);
    static RatePolynomial monomial(const Exponents& ex, const Integer& c = 1);
    static RatePolynomial var(Var v, int power = 1);

    RatePolynomial& operator+=(const RatePolynomial& o);
    RatePolynomial& operator-=(const RatePolynomial& o);
    friend RatePolynomial operator+(RatePolynomial a, const RatePolynomial& b) { return a += b; }
    friend RatePolynomial operator-(RatePolynomial a, const RatePolynomial& b) { return a -= b; }
    friend RatePolynomial operator*(const RatePolynomial& a, const RatePolynomial& b);
    bool operator==(const RatePolynomial& o) const { return terms_ == o.terms_; }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Exponents, Integer>& terms() const { return terms_; }
    Rational eval(const RateParams& p) const;
    std::string to_string() const;

private:
    void add_term(const Exponents& ex, const Integer& c);
    std::map<Exponents, Integer> terms_;
};

Rational parse_rational(const std::string& s);
std::string rational_string(const Rational& q);  // "p/q" or "p"
Rational rpow(const Rational& x, int e);

}  // namespace tasep
