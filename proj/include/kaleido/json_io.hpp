#pragma once

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "factorization.hpp"
#include "group.hpp"
#include "hajos_classify.hpp"
#include "latin.hpp"
#include "rigidity.hpp"
#include "splitting.hpp"
#include "transversal.hpp"
#include "ultrametric.hpp"

namespace kaleido {

using json = nlohmann::json;

// ---------------------------------------------------------------- rationals

inline json rat_to_json(const Rat& r) { return rat_str(r); }

inline Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (!j.is_string()) throw std::invalid_argument("a rational must be a string or an integer");
    return parse_rat(j.get<std::string>());
}

// ------------------------------------------------------------- core objects

inline void to_json(json& j, const GSpace& space) {
    j = json{{"points", space.points}, {"generators", space.generators}};
}

inline void from_json(const json& j, GSpace& space) {
    space = make_space(j.at("points").get<int>(),
                       j.at("generators").get<std::vector<std::vector<int>>>());
}

inline void to_json(json& j, const Coloring& chi) {
    j = json{{"palette", chi.palette}, {"colors", chi.color_of}};
}

inline void from_json(const json& j, Coloring& chi) {
    chi.palette = j.at("palette").get<int>();
    chi.color_of = j.at("colors").get<std::vector<int>>();
}

inline void to_json(json& j, const Partition& part) { j = part.blocks(); }

inline void from_json(const json& j, Partition& part) {
    auto blocks = j.get<std::vector<Configuration>>();
    int n = 0;
    for (const auto& b : blocks) n += static_cast<int>(b.size());
    std::vector<int> raw(n, -1);
    for (std::size_t id = 0; id < blocks.size(); ++id)
        for (int x : blocks[id]) {
            require(0 <= x && x < n, "partition block point out of range");
            require(raw[x] == -1, "partition blocks overlap");
            raw[x] = static_cast<int>(id);
        }
    part = Partition::from_block_of(raw);
}

inline RelPosition rel_from_string(const std::string& s) {
    if (s == "parallel") return RelPosition::parallel;
    if (s == "orthogonal") return RelPosition::orthogonal;
    if (s == "neither") return RelPosition::neither;
    throw std::invalid_argument("unknown step disposition: " + s);
}

inline void to_json(json& j, const SplittingChain& chain) {
    json steps = json::array();
    for (RelPosition p : chain.steps) steps.push_back(to_string(p));
    j = json{{"levels", chain.levels}, {"steps", steps}};
}

inline void from_json(const json& j, SplittingChain& chain) {
    chain.levels = j.at("levels").get<std::vector<Partition>>();
    chain.steps.clear();
    for (const auto& s : j.at("steps")) chain.steps.push_back(rel_from_string(s.get<std::string>()));
}

inline void to_json(json& j, const FactorizationCertificate& cert) {
    j = json{{"group", cert.group},
             {"subset", cert.subset},
             {"complement", cert.complement},
             {"periodic", cert.periodic ? json(*cert.periodic) : json(nullptr)}};
}

inline void from_json(const json& j, FactorizationCertificate& cert) {
    cert.group = j.at("group").get<std::string>();
    cert.subset = j.at("subset").get<Configuration>();
    cert.complement = j.at("complement").get<Configuration>();
    cert.periodic.reset();
    if (j.contains("periodic") && !j.at("periodic").is_null())
        cert.periodic = j.at("periodic").get<int>();
}

inline void to_json(json& j, const ClassifyResult& res) {
    json assignment = json::object();
    for (const auto& [var, prime] : res.assignment) assignment[std::string(1, var)] = prime;
    j = json{{"hajos", res.hajos}, {"family", res.family}, {"assignment", assignment}};
}

inline void from_json(const json& j, ClassifyResult& res) {
    res.hajos = j.at("hajos").get<bool>();
    res.family = j.value("family", std::string{});
    res.assignment.clear();
    if (j.contains("assignment"))
        for (const auto& [key, value] : j.at("assignment").items()) {
            require(key.size() == 1, "assignment variable must be a single letter");
            res.assignment.emplace_back(key[0], value.get<int>());
        }
}

// ----------------------------------------------------------------- geometry

inline void to_json(json& j, const QuadPoint& p) {
    j = json{{"ax", rat_to_json(p.ax)},
             {"bx", rat_to_json(p.bx)},
             {"ay", rat_to_json(p.ay)},
             {"by", rat_to_json(p.by)},
             {"tau", rat_to_json(p.tau)}};
}

inline void from_json(const json& j, QuadPoint& p) {
    p.ax = rat_from_json(j.at("ax"));
    p.bx = rat_from_json(j.at("bx"));
    p.ay = rat_from_json(j.at("ay"));
    p.by = rat_from_json(j.at("by"));
    p.tau = rat_from_json(j.at("tau"));
}

inline void to_json(json& j, const RigidityWitness& w) {
    json radii = json::array();
    for (const Rat& r : w.radii_sq) radii.push_back(rat_to_json(r));
    j = json{{"centers", w.centers}, {"radii_sq", radii}, {"point", w.point}};
}

inline void from_json(const json& j, RigidityWitness& w) {
    auto centers = j.at("centers").get<std::vector<int>>();
    require(centers.size() == 3, "witness needs exactly three centers");
    std::copy(centers.begin(), centers.end(), w.centers.begin());
    const auto& radii = j.at("radii_sq");
    require(radii.size() == 3, "witness needs exactly three radii");
    for (int i = 0; i < 3; ++i) w.radii_sq[i] = rat_from_json(radii.at(i));
    w.point = j.at("point").get<QuadPoint>();
}

inline void to_json(json& j, const PlanarPointSet& k) {
    j = json::array();
    for (const auto& p : k.pts) j.push_back({rat_to_json(p.x), rat_to_json(p.y)});
}

inline void from_json(const json& j, PlanarPointSet& k) {
    k.pts.clear();
    for (const auto& pair : j) {
        require(pair.size() == 2, "planar point needs exactly two coordinates");
        k.pts.push_back({rat_from_json(pair.at(0)), rat_from_json(pair.at(1))});
    }
}

// -------------------------------------------------------------- ultrametric

inline void to_json(json& j, const UltrametricSpec& spec) {
    j = json{{"branching", spec.branching}};
    if (!spec.scale.empty()) {
        json scale = json::array();
        for (const Rat& e : spec.scale) scale.push_back(rat_to_json(e));
        j["scale"] = scale;
    }
}

inline void from_json(const json& j, UltrametricSpec& spec) {
    spec.branching = j.at("branching").get<std::vector<int>>();
    spec.scale.clear();
    if (j.contains("scale"))
        for (const auto& e : j.at("scale")) spec.scale.push_back(rat_from_json(e));
    validate(spec);
}

inline void to_json(json& j, const UltraEntry& entry) {
    json steps = json::array();
    for (RelPosition p : entry.steps) steps.push_back(to_string(p));
    j = json{{"k", entry.k}, {"coloring", entry.coloring}, {"steps", steps}};
}

inline void from_json(const json& j, UltraEntry& entry) {
    entry.k = j.at("k").get<Configuration>();
    entry.coloring = j.at("coloring").get<Coloring>();
    entry.steps.clear();
    for (const auto& s : j.at("steps")) entry.steps.push_back(rel_from_string(s.get<std::string>()));
}

inline void to_json(json& j, const UltraReport& report) {
    j = json{{"all_ok", report.all_ok},
             {"subsets_checked", report.subsets_checked},
             {"kaleidoscopic", report.kaleidoscopic},
             {"violations", report.violations}};
}

inline void from_json(const json& j, UltraReport& report) {
    report.all_ok = j.at("all_ok").get<bool>();
    report.subsets_checked = j.at("subsets_checked").get<long long>();
    report.kaleidoscopic = j.at("kaleidoscopic").get<std::vector<UltraEntry>>();
    report.violations = j.at("violations").get<std::vector<Configuration>>();
}

// ------------------------------------------------------------ latin squares

inline void to_json(json& j, const LatinSquare& sq) {
    j = json{{"n", sq.n}, {"table", sq.cell}};
}

inline void from_json(const json& j, LatinSquare& sq) {
    sq.n = j.at("n").get<int>();
    sq.cell = j.at("table").get<std::vector<std::vector<int>>>();
    auto check = validate(sq);
    require(check.ok, check.reason);
}

inline void to_json(json& j, const PartialRectangle& rect) {
    j = json{{"n", rect.n}, {"r", rect.r}, {"s", rect.s}, {"table", rect.cell}};
}

inline void from_json(const json& j, PartialRectangle& rect) {
    rect.n = j.at("n").get<int>();
    rect.r = j.at("r").get<int>();
    rect.s = j.at("s").get<int>();
    rect.cell = j.at("table").get<std::vector<std::vector<int>>>();
    auto check = validate(rect);
    require(check.ok, check.reason);
}

// ----------------------------------------------------------------- file I/O

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    json j;
    in >> j;
    return j;
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << j.dump(2) << '\n';
}

inline GSpace load_space(const std::string& path) { return read_json_file(path).get<GSpace>(); }

// "n r s" then r rows of s whitespace-separated symbols
inline PartialRectangle load_rectangle_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    PartialRectangle rect;
    if (!(in >> rect.n >> rect.r >> rect.s))
        throw std::invalid_argument("malformed rectangle header in " + path);
    rect.cell.assign(rect.r > 0 ? rect.r : 0, {});
    for (int i = 0; i < rect.r; ++i)
        for (int j = 0; j < rect.s; ++j) {
            int v;
            if (!(in >> v)) throw std::invalid_argument("missing rectangle entry in " + path);
            rect.cell[i].push_back(v);
        }
    auto check = validate(rect);
    require(check.ok, check.reason + " in " + path);
    return rect;
}

// "n" then n rows of n whitespace-separated symbols; with validate_latin off
// only the shape is enforced, so a caller can report Latin violations as a
// verdict instead of a usage error
inline LatinSquare load_square_text(const std::string& path, bool validate_latin = true) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    LatinSquare sq;
    if (!(in >> sq.n)) throw std::invalid_argument("malformed square header in " + path);
    require(sq.n >= 1 && sq.n <= 4096, "square order out of range in " + path);
    sq.cell.assign(sq.n, {});
    for (int i = 0; i < sq.n; ++i)
        for (int j = 0; j < sq.n; ++j) {
            int v;
            if (!(in >> v)) throw std::invalid_argument("missing square entry in " + path);
            sq.cell[i].push_back(v);
        }
    if (validate_latin) {
        auto check = validate(sq);
        require(check.ok, check.reason + " in " + path);
    }
    return sq;
}

// one "x y" pair per line, each coordinate an integer or "p/q"
inline PlanarPointSet load_points_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    PlanarPointSet k;
    std::string sx, sy;
    while (in >> sx) {
        if (!(in >> sy))
            throw std::invalid_argument("odd coordinate count in " + path);
        k.pts.push_back({parse_rat(sx), parse_rat(sy)});
    }
    return k;
}

// ------------------------------------------------------------ list parsing

// comma-separated integers, e.g. "0,1,2"
inline std::vector<int> parse_int_list(const std::string& text) {
    require(text.empty() || text.back() != ',', "trailing comma in list: '" + text + "'");
    std::vector<int> out;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) {
        try {
            std::size_t pos = 0;
            int v = std::stoi(token, &pos);
            require(pos == token.size() && !token.empty(), "");
            out.push_back(v);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed integer list entry: '" + token + "'");
        }
    }
    require(!out.empty(), "empty list: '" + text + "'");
    return out;
}

// comma-separated exact rationals, e.g. "1,3/2,2"
inline std::vector<Rat> parse_rat_list(const std::string& text) {
    require(text.empty() || text.back() != ',', "trailing comma in list: '" + text + "'");
    std::vector<Rat> out;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) out.push_back(parse_rat(token));
    require(!out.empty(), "empty list: '" + text + "'");
    return out;
}

}  // namespace kaleido
