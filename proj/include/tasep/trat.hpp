#pragma once

#include "tasep/core.hpp"
#include "tasep/mlq.hpp"

#include <array>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace tasep {

struct ToricDiagram {
    Word type;                                 // begins with 1
    std::string path;                          // 'S' for 2, 'D' (southwest) for 1, 'W' for 0
    std::array<std::pair<int, int>, 6> ends;   // p1..p6
};
ToricDiagram build_diagram(const Word& x);

enum class TileKind { T20, T10, T21 };
const char* tile_kind_name(TileKind k);

// 20: (zero index, site of the 2); 10: (zero index, site of the 1); 21: (site of the 2, site of the 1).
// Zero indices count the 0s of the type from the left, sites are 0-based.
struct Tile {
    TileKind kind;
    int u, v;
    auto operator<=>(const Tile&) const = default;
};

struct Tiling {
    Word type;
    std::vector<Tile> tiles;
    std::vector<std::vector<int>> north;  // one per 0; strips list tiles in pointing order
    std::vector<std::vector<int>> west;   // one per 2
    std::vector<std::vector<int>> diag;   // two pieces per 1; only used for adjacency
    bool open = false;                    // open-boundary region: strips may carry no arrow
    int tile_index(const Tile& t) const;  // -1 if absent
};
Tiling canonical_tiling(const Word& x);

struct TratFilling {
    std::shared_ptr<const Tiling> tiling;
    std::vector<int> up;    // index into north[a], -1 for none (open regions only)
    std::vector<int> left;  // index into west[j], -1 likewise

    std::vector<int> left_counts() const;  // left-arrows per north strip
    bool operator==(const TratFilling& o) const { return up == o.up && left == o.left; }
};

// arrow content per tile: 0 empty, 'U' or 'L'
std::vector<char> arrow_map(const TratFilling& f);
bool is_valid_filling(const TratFilling& f);

std::vector<TratFilling> enumerate_fillings(std::shared_ptr<const Tiling> t);
std::vector<TratFilling> enumerate_fillings(const Tiling& t);

RatePolynomial trat_weight(const TratFilling& f);

// Fillings of T_X keyed by their left-arrow counts; the counts are the
// hitting weights of the matching MLQ.
class TratIndex {
public:
    explicit TratIndex(const Word& x);
    const std::vector<TratFilling>& fillings() const { return fillings_; }
    const TratFilling& by_weights(const std::vector<int>& w) const;
    std::shared_ptr<const Tiling> tiling() const { return tiling_; }

private:
    std::shared_ptr<const Tiling> tiling_;
    std::vector<TratFilling> fillings_;
    std::map<std::vector<int>, int> index_;
};

TratFilling trat_from_mlq(const Mlq& m);  // on T_X for the rotated type
Mlq mlq_from_trat(const TratFilling& f);

struct Hexagon {
    int t20, t10, t21;  // tile indices
};
std::vector<Hexagon> hexagons(const Tiling& t);
Tiling flip(const Tiling& t, const Hexagon& h);
// Arrow content of every tile is kept; only strip positions change.
TratFilling transport(const TratFilling& f, std::shared_ptr<const Tiling> flipped);

struct NestedPaths {
    std::string p1, p2;  // over 'S', 'D', 'W'
    bool operator==(const NestedPaths&) const = default;
    auto operator<=>(const NestedPaths&) const = default;
};
bool is_compatible(const NestedPaths& p);
NestedPaths paths_from_mlq(const Mlq& m);  // m must be canonically rotated
NestedPaths paths_from_trat(const TratFilling& f);
TratFilling trat_from_paths(const NestedPaths& p);

// trat(Omega^MLQ_i(mlq(f))), i is a 0-based site as in omega_mlq
TratFilling omega_trat(const TratFilling& f, int i);

std::string filling_json(const TratFilling& f);
std::string ascii_dump(const TratFilling& f);

}  // namespace tasep
