// Command-line front end: enumeration, probability queries and the verification harness.
// Exit status: 0 success, 1 verification failure, 2 usage or input error.

#include "tasep/formulas.hpp"
#include "tasep/markov.hpp"
#include "tasep/mlq.hpp"
#include "tasep/open_boundary.hpp"
#include "tasep/routes.hpp"
#include "tasep/trat.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <deque>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace tasep;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kReportSchema = "tasep-report/1";

struct Options {
    bool json = false;
    std::uint64_t seed = 20240611;
    int max_n = 0;  // 0 means the per-scenario default
    std::string params, word, alpha, beta, csv, size, mlq, weights, kind;
    int n = 0, r = -1;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string q(const Rational& x) { return rational_string(x); }

// Ring classes are named by the rotation starting at the first 1 of the
// representative (the representative itself when there are no 1s).
std::string class_name(const Word& x) { return rotate_to_one(cyclic_class(x).representative).str(); }

// Integers stay JSON integers when they fit; everything else is a "p/q" string.
Json exact(const Rational& x) {
    if (x.get_den() == 1 && x.get_num().fits_slong_p()) return x.get_num().get_si();
    return q(x);
}

SizeTriple parse_size(const std::string& s) {
    SizeTriple out;
    char c1 = 0, c2 = 0;
    std::istringstream in(s);
    if (!(in >> out.k >> c1 >> out.r >> c2 >> out.l) || c1 != ',' || c2 != ',' || out.k < 0 || out.r < 0 || out.l < 0 ||
        out.n() == 0)
        throw UsageError("--size expects k,r,l (counts of 2s, 1s, 0s)");
    return out;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw UsageError("not an integer list: " + s);
        }
    }
    return out;
}

RateParams rate_params(const Options& o, bool open) {
    RateParams p = o.params.empty() ? RateParams{} : RateParams::parse(o.params);
    if (!o.alpha.empty()) p.alpha = parse_rational(o.alpha);
    if (!o.beta.empty()) p.beta = parse_rational(o.beta);
    if (open) {
        if (!p.alpha) p.alpha = Rational(1);
        if (!p.beta) p.beta = Rational(1);
    }
    p.validate();
    return p;
}

Json params_json(const RateParams& p) {
    Json j = {{"t", q(p.t)}, {"d", q(p.d)}, {"e", q(p.e)}};
    if (p.alpha) j["alpha"] = q(*p.alpha);
    if (p.beta) j["beta"] = q(*p.beta);
    return j;
}

Word need_word(const Options& o) {
    if (o.word.empty()) throw UsageError("--word is required");
    return Word(o.word);
}

// Plain-text rendering of a result object.
void print_text(const Json& j, int indent = 0) {
    std::string pad(indent, ' ');
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json& v = it.value();
        if (v.is_array() && !v.empty() && v.front().is_object()) {
            std::cout << pad << it.key() << ":\n";
            for (const auto& row : v) {
                std::cout << pad << "  ";
                bool first = true;
                for (auto c = row.begin(); c != row.end(); ++c) {
                    std::cout << (first ? "" : "  ") << c.key() << "=" << (c->is_string() ? c->get<std::string>() : c->dump());
                    first = false;
                }
                std::cout << "\n";
            }
        } else if (v.is_object()) {
            std::cout << pad << it.key() << ":\n";
            print_text(v, indent + 2);
        } else {
            std::cout << pad << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    }
}

void emit(const Options& o, const Json& j) {
    if (o.json) std::cout << j.dump(2) << "\n";
    else print_text(j);
}

void write_csv(const std::string& path, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

// ---- states ----

int cmd_states(const Options& o) {
    if (o.size.empty()) throw UsageError("--size is required");
    auto s = parse_size(o.size);
    auto st = enumerate_states(s);
    Json classes = Json::array();
    for (const auto& c : st.classes) classes.push_back({{"class", class_name(c.representative)}, {"o", c.order}});
    emit(o, {{"size", {s.k, s.r, s.l}}, {"words", st.words.size()}, {"classes", classes}});
    return 0;
}

// ---- prob ----

int cmd_prob_ring(const Options& o) {
    RateParams p = rate_params(o, false);
    if (!o.word.empty()) {
        Word x(o.word);
        auto c = cyclic_class(x);
        auto table = ring_by_mlq(x.sizes(), p);
        Json j = {{"class", class_name(x)},
                  {"o", c.order},
                  {"weight", exact(class_weight(c.representative).eval(p))},
                  {"probability", q(table.at(c.representative.str()))}};
        if (!o.params.empty()) {
            j["params"] = params_json(p);
            j["weight_polynomial"] = class_weight(c.representative).to_string();
        }
        emit(o, j);
        return 0;
    }
    if (o.size.empty()) throw UsageError("prob ring needs --word or --size");
    auto s = parse_size(o.size);
    auto table = ring_by_mlq(s, p);
    Json rows = Json::array();
    std::vector<std::vector<std::string>> csv;
    for (const auto& c : enumerate_states(s).classes) {
        std::string rep = c.representative.str(), name = class_name(c.representative);
        Rational w = class_weight(c.representative).eval(p);
        rows.push_back({{"class", name}, {"o", c.order}, {"weight", exact(w)}, {"probability", q(table.at(rep))}});
        csv.push_back({name, std::to_string(c.order), q(w), q(table.at(rep))});
    }
    if (!o.csv.empty()) write_csv(o.csv, {"class", "o", "weight", "probability"}, csv);
    emit(o, {{"size", {s.k, s.r, s.l}}, {"params", params_json(p)}, {"classes", rows}});
    return 0;
}

int cmd_prob_open(const Options& o) {
    RateParams p = rate_params(o, true);
    if (p.t != 1) throw UsageError("open-boundary weights are defined at t = 1");
    if (!o.word.empty()) {
        Word x(o.word);
        int n = x.size(), r = x.count('1');
        Rational by_amlq = open_by_amlq(n, r, p).at(x.str());
        Rational by_ansatz = ansatz_open(x, p) / open_partition_function(n, r, p);
        Json j = {{"word", x.str()}, {"params", params_json(p)}, {"probability", q(by_amlq)}};
        bool agree = by_amlq == by_ansatz;
        Json routes = {{"amlq", q(by_amlq)}, {"ansatz", q(by_ansatz)}};
        if (p.d == 1 && p.e == 1) {
            j["numerator"] = q(uchiyama_numerator(x, *p.alpha, *p.beta));
            j["partition_function"] = q(uchiyama_partition_function(n, r, *p.alpha, *p.beta));
        }
        if (n <= 10) {
            Rational by_solver = open_by_solver(n, r, p).at(x.str());
            routes["solver"] = q(by_solver);
            agree = agree && by_solver == by_amlq;
        }
        j["routes"] = routes;
        j["agree"] = agree;
        emit(o, j);
        return agree ? 0 : 1;
    }
    if (o.n <= 0 || o.r < 0 || o.r > o.n) throw UsageError("prob open needs --word or --n and --r");
    auto table = open_by_amlq(o.n, o.r, p);
    Json rows = Json::array();
    std::vector<std::vector<std::string>> csv;
    for (const auto& [w, pr] : table) {
        rows.push_back({{"word", w}, {"probability", q(pr)}});
        csv.push_back({w, q(pr)});
    }
    if (!o.csv.empty()) write_csv(o.csv, {"word", "probability"}, csv);
    emit(o, {{"n", o.n}, {"r", o.r}, {"params", params_json(p)}, {"words", rows}});
    return 0;
}

// ---- mlq ----

Json sites_1based(const std::vector<int>& v) {
    Json out = Json::array();
    for (int s : v) out.push_back(s + 1);
    return out;
}

int cmd_mlq_enumerate(const Options& o) {
    Word x = rotate_to_one(need_word(o));
    Json rows = Json::array();
    for (const auto& m : enumerate_mlqs(x))
        rows.push_back({{"mlq", m.serialize()}, {"weights", drop(m).weights}, {"monomial", mlq_weight(m).to_string()}});
    emit(o, {{"type", x.str()}, {"count", rows.size()}, {"mlqs", rows}});
    return 0;
}

int cmd_mlq_drop(const Options& o) {
    if (o.mlq.empty()) throw UsageError("--mlq is required");
    Mlq m = Mlq::parse(o.mlq);
    if (m.open && !validate_amlq(m)) throw UsageError("not an acyclic MLQ: " + o.mlq);
    auto d = drop(m);
    Json j = {{"mlq", m.serialize()},
              {"type", d.type_word.str()},
              {"shift", d.shift},
              {"zero_ball_sites", sites_1based(d.zero_ball_sites)},
              {"weights", d.weights},
              {"marked_vacancies", sites_1based(d.marked_vacancies)},
              {"unrestricted", sites_1based(d.unrestricted)}};
    if (m.open) {
        auto st = amlq_stats(m);
        j["ufree"] = st.ufree;
        j["lfree"] = st.lfree;
        j["weight"] = amlq_weight(m, false).to_string();
        j["enhanced_weight"] = amlq_weight(m, true).to_string();
    } else {
        j["monomial"] = mlq_weight(m).to_string();
    }
    emit(o, j);
    return 0;
}

int cmd_mlq_lift(const Options& o) {
    Word x = need_word(o);
    auto w = parse_ints(o.weights);
    if (!is_x_consistent(x, w)) throw UsageError("weights are not consistent with " + x.str());
    Mlq m = mlq_from_weights(x, w);
    emit(o, {{"type", x.str()}, {"weights", w}, {"mlq", m.serialize()}});
    return 0;
}

// ---- trat ----

Word rotated_word(const Options& o) {
    Word x = need_word(o);
    if (x.count('1') == 0) throw UsageError("tableaux need at least one 1");
    return rotate_to_one(x);
}

int cmd_trat_enumerate(const Options& o) {
    Word x = rotated_word(o);
    TratIndex idx(x);
    if (!o.json) {
        std::cout << "type: " << x.str() << "\ncount: " << idx.fillings().size() << "\n";
        for (const auto& f : idx.fillings()) std::cout << "\n" << ascii_dump(f);
        return 0;
    }
    Json rows = Json::array();
    for (const auto& f : idx.fillings()) rows.push_back(Json::parse(filling_json(f)));
    emit(o, {{"type", x.str()}, {"count", rows.size()}, {"fillings", rows}});
    return 0;
}

int cmd_trat_weight(const Options& o) {
    Word x = rotated_word(o);
    RateParams p = rate_params(o, false);
    TratIndex idx(x);
    RatePolynomial sum;
    for (const auto& f : idx.fillings()) sum += trat_weight(f);
    emit(o, {{"type", x.str()}, {"count", idx.fillings().size()}, {"weight", sum.to_string()}, {"value", exact(sum.eval(p))}});
    return 0;
}

int cmd_trat_paths(const Options& o) {
    Word x = rotated_word(o);
    TratIndex idx(x);
    Json rows = Json::array();
    for (const auto& f : idx.fillings()) {
        auto np = paths_from_trat(f);
        rows.push_back({{"p1", np.p1}, {"p2", np.p2}, {"compatible", is_compatible(np)}});
    }
    emit(o, {{"type", x.str()}, {"count", rows.size()}, {"paths", rows}});
    return 0;
}

// ---- det, ansatz ----

int cmd_det(const Options& o) {
    Word x = need_word(o);
    Json ivs = Json::array(), lams = Json::array();
    if (x.count('1') > 0)
        for (const auto& iv : zero_two_intervals(x)) {
            ivs.push_back(iv.str());
            lams.push_back(lambda_partition(iv));
        }
    emit(o, {{"class", class_name(x)}, {"intervals", ivs}, {"lambdas", lams}, {"weight", exact(Rational(det_weight(x)))}});
    return 0;
}

int cmd_ansatz_ring(const Options& o) {
    Word x = need_word(o);
    RateParams p = rate_params(o, false);
    emit(o, {{"word", x.str()}, {"params", params_json(p)}, {"trace", q(ansatz_trace_ring(x, p))}});
    return 0;
}

int cmd_ansatz_open(const Options& o) {
    Word x = need_word(o);
    RateParams p = rate_params(o, true);
    Rational b = ansatz_open(x, p), z = open_partition_function(x.size(), x.count('1'), p);
    emit(o, {{"word", x.str()}, {"params", params_json(p)}, {"bracket", q(b)}, {"partition_function", q(z)},
             {"probability", q(b / z)}});
    return 0;
}

// ---- chain ----

ChainSpec chain_of(const Options& o, const RateParams& p) {
    if (o.kind == "ring" || o.kind == "mlq") {
        if (o.size.empty()) throw UsageError("--size is required for ring and mlq chains");
        auto s = parse_size(o.size);
        return o.kind == "ring" ? build_ring_chain(s, p) : build_mlq_chain(s, p);
    }
    if (o.n <= 0 || o.r < 0 || o.r > o.n) throw UsageError("--n and --r are required for open and amlq chains");
    return o.kind == "open" ? build_open_chain(o.n, o.r, p) : build_amlq_chain(o.n, o.r, p);
}

bool open_kind(const Options& o) { return o.kind == "open" || o.kind == "amlq"; }

int cmd_chain_build(const Options& o) {
    RateParams p = rate_params(o, open_kind(o));
    auto c = chain_of(o, p);
    Json edges = Json::array();
    for (const auto& tr : c.transitions())
        edges.push_back({{"from", c.states()[tr.from]}, {"to", c.states()[tr.to]}, {"rate", q(tr.rate)}});
    emit(o, {{"kind", o.kind}, {"states", c.size()}, {"transitions", edges.size()}, {"edges", edges}});
    return 0;
}

int cmd_chain_solve(const Options& o) {
    RateParams p = rate_params(o, open_kind(o));
    auto c = chain_of(o, p);
    auto pi = stationary_exact(c);
    Json rows = Json::array();
    std::vector<std::vector<std::string>> csv;
    for (size_t i = 0; i < pi.states.size(); ++i) {
        rows.push_back({{"state", pi.states[i]}, {"probability", q(pi.pi[i])}});
        csv.push_back({pi.states[i], q(pi.pi[i])});
    }
    Json j = {{"kind", o.kind}, {"params", params_json(p)}, {"stationary", is_stationary(c, pi.pi)}, {"states", rows}};
    if (o.kind == "ring") {
        Json classes = Json::array();
        csv.clear();
        for (auto& [cl, pr] : ring_class_probabilities(parse_size(o.size), pi)) {
            classes.push_back({{"class", class_name(cl.representative)}, {"o", cl.order}, {"probability", q(pr)}});
            csv.push_back({class_name(cl.representative), q(pr)});
        }
        j["classes"] = classes;
    }
    if (!o.csv.empty()) write_csv(o.csv, {o.kind == "ring" ? "class" : "state", "probability"}, csv);
    emit(o, j);
    return 0;
}

int cmd_chain_project(const Options& o) {
    if (o.kind != "mlq" && o.kind != "amlq") throw UsageError("chain project needs --kind mlq or amlq");
    RateParams p = rate_params(o, open_kind(o));
    auto fine = chain_of(o, p);
    ChainSpec coarse = o.kind == "mlq" ? build_ring_chain(parse_size(o.size), p) : build_open_chain(o.n, o.r, p);
    auto rep = check_projection(fine, coarse, [](const std::string& k) { return drop(Mlq::parse(k)).type_word.str(); });
    Json j = {{"kind", o.kind},
              {"params", params_json(p)},
              {"ok", rep.ok},
              {"fine_transitions_checked", rep.fine_transitions_checked},
              {"lifts_checked", rep.lifts_checked},
              {"violations", rep.violations}};
    emit(o, j);
    return rep.ok ? 0 : 1;
}

// ---- verify ----

struct Identity {
    std::string name;
    long checked = 0;
    bool pass = true;
    Json counterexample = nullptr;

    void check(bool ok, const std::function<Json()>& witness) {
        ++checked;
        if (!ok && pass) counterexample = witness();
        pass = pass && ok;
    }
};

class Report {
public:
    Report(std::string scenario, const Options& o) : scenario_(std::move(scenario)), seed_(o.seed), max_n_(o.max_n) {}

    Identity& id(const std::string& name) {
        for (auto& i : ids_)
            if (i.name == name) return i;
        ids_.push_back({name});
        return ids_.back();
    }
    void instance() { ++instances_; }
    bool pass() const {
        for (const auto& i : ids_)
            if (!i.pass) return false;
        return true;
    }
    Json json(double secs) const {
        Json ids = Json::array();
        for (const auto& i : ids_)
            ids.push_back({{"name", i.name}, {"checked", i.checked}, {"pass", i.pass}, {"counterexample", i.counterexample}});
        return {{"schema", kReportSchema}, {"scenario", scenario_}, {"seed", seed_},     {"max_n", max_n_},
                {"instances", instances_}, {"identities", ids},    {"pass", pass()}, {"wall_clock_s", secs}};
    }

private:
    std::string scenario_;
    std::uint64_t seed_;
    int max_n_;
    long instances_ = 0;
    std::deque<Identity> ids_;
};

Json witness(const std::string& word, const RateParams& p, const Rational& lhs, const Rational& rhs) {
    return {{"word", word}, {"params", params_json(p)}, {"lhs", q(lhs)}, {"rhs", q(rhs)}};
}

std::vector<SizeTriple> sizes_of(int n) {
    std::vector<SizeTriple> out;
    for (int k = 0; k <= n; ++k)
        for (int r = 0; k + r <= n; ++r) out.push_back({k, r, n - k - r});
    return out;
}

void verify_ring(Report& rep, int max_n, std::mt19937_64& rng) {
    auto compare = [&](const std::string& name, const ClassTable& want, const ClassTable& got, const RateParams& p) {
        auto& id = rep.id(name);
        for (const auto& [c, v] : want) id.check(got.at(c) == v, [&] { return witness(c, p, v, got.at(c)); });
    };
    for (int n = 2; n <= max_n; ++n)
        for (const auto& s : sizes_of(n)) {
            std::vector<RateParams> points{RateParams{}};
            if (n < max_n)
                for (int i = 0; i < 2; ++i) points.push_back(RateParams::random(rng, false));
            for (size_t pi = 0; pi < points.size(); ++pi) {
                const RateParams& p = points[pi];
                rep.instance();
                auto solver = ring_by_solver(s, p);
                compare("solver=mlq", solver, ring_by_mlq(s, p), p);
                compare("solver=trat", solver, ring_by_trat(s, p), p);
                if (auto a = ring_by_ansatz(s, p)) compare("solver=ansatz", solver, *a, p);
                if (pi == 0) compare("solver=det", solver, ring_by_det(s), p);
            }
        }
}

void verify_open(Report& rep, int max_n, std::mt19937_64& rng) {
    for (int n = 1; n <= max_n; ++n)
        for (int r = 0; r <= std::min(n, 2); ++r) {
            RateParams homog = RateParams::random(rng, true);
            homog.t = homog.d = homog.e = 1;
            std::vector<RateParams> points{homog};
            for (int i = 0; i < 2; ++i) {
                points.push_back(RateParams::random(rng, true));
                points.back().t = 1;
            }
            for (const auto& p : points) {
                rep.instance();
                auto solver = open_by_solver(n, r, p);
                auto amlq = open_by_amlq(n, r, p);
                auto ansatz = open_by_ansatz(n, r, p);
                for (const auto& [w, v] : solver) {
                    rep.id("open solver=amlq").check(amlq.at(w) == v, [&] { return witness(w, p, v, amlq.at(w)); });
                    rep.id("open solver=ansatz").check(ansatz.at(w) == v, [&] { return witness(w, p, v, ansatz.at(w)); });
                }
                if (p.d == 1 && p.e == 1) {
                    Rational z = uchiyama_partition_function(n, r, *p.alpha, *p.beta);
                    for (const auto& [w, v] : solver) {
                        Rational u = uchiyama_numerator(Word(w), *p.alpha, *p.beta) / z;
                        rep.id("open solver=uchiyama").check(u == v, [&] { return witness(w, p, v, u); });
                    }
                }
            }
            if (n <= 4 && r <= 1) {
                RateParams p = points.back();
                auto pr = check_projection(build_amlq_chain(n, r, p), build_open_chain(n, r, p),
                                           [](const std::string& k) { return drop(Mlq::parse(k)).type_word.str(); });
                rep.id("open amlq chain projects").check(pr.ok, [&] {
                    return Json{{"n", n}, {"r", r}, {"params", params_json(p)}, {"violation", pr.violations.front()}};
                });
            }
        }
}

void verify_bijections(Report& rep, int max_n) {
    for (int n = 1; n <= max_n; ++n)
        for (const auto& s : sizes_of(n)) {
            if (s.r == 0) continue;
            for (const auto& x : words_of_size(s)) {
                if (x[0] != '1') continue;
                rep.instance();
                TratIndex idx(x);
                std::set<NestedPaths> from_mlq, from_trat;
                auto ms = enumerate_mlqs(x);
                auto w = [&](const std::string& what) { return Json{{"word", x.str()}, {"object", what}}; };
                rep.id("mlq count = filling count").check(ms.size() == idx.fillings().size(), [&] { return w(x.str()); });
                for (const auto& m : ms) {
                    TratFilling f = trat_from_mlq(m);
                    rep.id("mlq->trat->mlq").check(mlq_from_trat(f) == m, [&] { return w(m.serialize()); });
                    rep.id("weight preserved").check(trat_weight(f) == mlq_weight(m), [&] { return w(m.serialize()); });
                    from_mlq.insert(paths_from_mlq(m));
                }
                for (const auto& f : idx.fillings()) {
                    auto pt = paths_from_trat(f);
                    from_trat.insert(pt);
                    rep.id("trat->paths->trat").check(trat_from_paths(pt) == f, [&] { return w(pt.p1 + "/" + pt.p2); });
                }
                rep.id("path sets agree").check(from_mlq == from_trat, [&] { return w(x.str()); });
            }
        }
}

void verify_flips(Report& rep, int max_n) {
    for (int n = 1; n <= max_n; ++n)
        for (const auto& s : sizes_of(n)) {
            if (s.r == 0) continue;
            for (const auto& x : words_of_size(s)) {
                if (x[0] != '1') continue;
                auto base = std::make_shared<const Tiling>(canonical_tiling(x));
                auto fs = enumerate_fillings(base);
                RatePolynomial w0;
                for (const auto& f : fs) w0 += trat_weight(f);
                for (const auto& h : hexagons(*base)) {
                    rep.instance();
                    auto t1 = std::make_shared<const Tiling>(flip(*base, h));
                    auto gs = enumerate_fillings(t1);
                    RatePolynomial w1;
                    for (const auto& g : gs) w1 += trat_weight(g);
                    auto wit = [&] { return Json{{"word", x.str()}, {"hexagon", {h.t20, h.t10, h.t21}}}; };
                    rep.id("filling count invariant").check(gs.size() == fs.size(), wit);
                    rep.id("weight sum invariant").check(w1 == w0, wit);
                }
            }
        }
}

int cmd_verify(const Options& o, const std::string& scenario) {
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(o.seed);
    Report rep(scenario, o);
    auto cap = [&](int def) { return o.max_n > 0 ? o.max_n : def; };
    if (scenario == "ring" || scenario == "all") verify_ring(rep, cap(7), rng);
    if (scenario == "open" || scenario == "all") verify_open(rep, cap(6), rng);
    if (scenario == "bijections" || scenario == "all") verify_bijections(rep, cap(7));
    if (scenario == "flips" || scenario == "all") verify_flips(rep, cap(6));
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Json j = rep.json(secs);
    if (o.json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "scenario " << scenario << ", seed " << o.seed << ", " << j["instances"] << " instances, "
                  << secs << " s\n";
        for (const auto& i : j["identities"])
            std::cout << (i["pass"].get<bool>() ? "PASS " : "FAIL ") << i["name"].get<std::string>() << " ("
                      << i["checked"] << " checks)" << (i["pass"].get<bool>() ? "" : " " + i["counterexample"].dump())
                      << "\n";
    }
    return rep.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact stationary probabilities of the two-species TASEP"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json, "JSON output");
    app.add_option("--seed", o.seed, "seed for random parameter points");
    app.add_option("--max-n", o.max_n, "largest system size for verify");
    app.add_option("--params", o.params, "rates, e.g. t=1/2,d=3,e=2/5,alpha=1,beta=1/3");

    auto word_opt = [&](CLI::App* c) { c->add_option("--word", o.word, "particle word over 0,1,2"); };
    auto rate_opts = [&](CLI::App* c) {
        c->add_option("--alpha", o.alpha, "entry rate");
        c->add_option("--beta", o.beta, "exit rate");
    };
    std::function<int()> run;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, std::function<int()> f) {
        auto c = parent->add_subcommand(name, help);
        c->callback([&run, f] { run = f; });
        return c;
    };

    auto states = leaf(&app, "states", "list cyclic classes of a size", [&] { return cmd_states(o); });
    states->add_option("--size", o.size, "k,r,l")->required();

    auto prob = app.add_subcommand("prob", "stationary probabilities")->require_subcommand(1);
    auto pr = leaf(prob, "ring", "ring class probabilities", [&] { return cmd_prob_ring(o); });
    word_opt(pr);
    pr->add_option("--size", o.size, "k,r,l: full table");
    pr->add_option("--csv", o.csv, "write the table as CSV");
    auto po = leaf(prob, "open", "open-boundary word probabilities", [&] { return cmd_prob_open(o); });
    word_opt(po);
    rate_opts(po);
    po->add_option("--n", o.n, "length");
    po->add_option("--r", o.r, "number of 1s");
    po->add_option("--csv", o.csv, "write the table as CSV");

    auto mlq = app.add_subcommand("mlq", "multiline queues")->require_subcommand(1);
    word_opt(leaf(mlq, "enumerate", "MLQs of a type", [&] { return cmd_mlq_enumerate(o); }));
    leaf(mlq, "drop", "drop data of an MLQ", [&] { return cmd_mlq_drop(o); })
        ->add_option("--mlq", o.mlq, "\"top|bottom\", prefix open: for acyclic")
        ->required();
    auto lift = leaf(mlq, "lift", "MLQ from hitting weights", [&] { return cmd_mlq_lift(o); });
    word_opt(lift);
    lift->add_option("--weights", o.weights, "comma-separated, from the first 1")->required();

    auto trat = app.add_subcommand("trat", "toric rhombic tableaux")->require_subcommand(1);
    word_opt(leaf(trat, "enumerate", "fillings of T_X", [&] { return cmd_trat_enumerate(o); }));
    word_opt(leaf(trat, "weight", "weight polynomial of a type", [&] { return cmd_trat_weight(o); }));
    word_opt(leaf(trat, "paths", "nested paths of each filling", [&] { return cmd_trat_paths(o); }));

    word_opt(leaf(&app, "det", "determinant weight at unit rates", [&] { return cmd_det(o); }));

    auto ansatz = app.add_subcommand("ansatz", "matrix products")->require_subcommand(1);
    word_opt(leaf(ansatz, "ring", "trace on the ring", [&] { return cmd_ansatz_ring(o); }));
    auto ao = leaf(ansatz, "open", "boundary bracket", [&] { return cmd_ansatz_open(o); });
    word_opt(ao);
    rate_opts(ao);

    auto chain = app.add_subcommand("chain", "Markov chains")->require_subcommand(1);
    for (auto [name, help, f] : {std::tuple<std::string, std::string, std::function<int()>>{
                                     "build", "list transitions", [&] { return cmd_chain_build(o); }},
                                 {"solve", "exact stationary distribution", [&] { return cmd_chain_solve(o); }},
                                 {"project", "check the projection to the particle chain", [&] { return cmd_chain_project(o); }}}) {
        auto c = leaf(chain, name, help, f);
        c->add_option("--kind", o.kind, "ring, open, mlq or amlq")
            ->required()
            ->check(CLI::IsMember({"ring", "open", "mlq", "amlq"}));
        c->add_option("--size", o.size, "k,r,l for ring and mlq");
        c->add_option("--n", o.n, "length for open and amlq");
        c->add_option("--r", o.r, "number of 1s for open and amlq");
        c->add_option("--csv", o.csv, "write the stationary table as CSV");
        rate_opts(c);
    }

    auto verify = app.add_subcommand("verify", "cross-verification harness")->require_subcommand(1);
    for (std::string s : {"ring", "open", "bijections", "flips", "all"})
        leaf(verify, s, "verify " + s, [&o, s] { return cmd_verify(o, s); });

    // global flags are accepted after the subcommand too
    std::function<void(CLI::App*)> fall = [&](CLI::App* a) {
        for (auto* c : a->get_subcommands({})) {
            c->fallthrough();
            fall(c);
        }
    };
    fall(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return 2;
    }
    try {
        return run ? run() : 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tasep::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
