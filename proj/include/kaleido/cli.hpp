#pragma once

#include <chrono>
#include <map>

#include "json_io.hpp"

namespace kaleido {

// A complete record of one CLI request: the parsed query, the verdict, an
// optional re-checkable certificate, and search statistics.  Verdicts:
//   success — a requested object was found (certificate included)
//   absent  — the exhaustive search proved there is none
//   holds   — a property check passed
//   fails   — a property check failed (counterexample attached when one exists)
//   unknown — a search budget was exhausted before a verdict
//   error   — malformed input or an exceeded cap
struct Report {
    json query = json::object();
    std::string verdict;
    std::string reason;
    json certificate;  // object, or null when no certificate applies
    long long nodes = 0;
    double elapsed_ms = 0.0;

    json to_json() const {
        json j{{"query", query},
               {"verdict", verdict},
               {"certificate", certificate.is_null() ? json(nullptr) : certificate},
               {"stats", {{"nodes", nodes}, {"elapsed_ms", elapsed_ms}}}};
        if (!reason.empty()) j["reason"] = reason;
        return j;
    }

    static Report from_json(const json& j) {
        Report r;
        r.query = j.at("query");
        r.verdict = j.at("verdict").get<std::string>();
        r.reason = j.value("reason", std::string{});
        r.certificate = j.value("certificate", json(nullptr));
        if (j.contains("stats")) {
            r.nodes = j.at("stats").value("nodes", 0LL);
            r.elapsed_ms = j.at("stats").value("elapsed_ms", 0.0);
        }
        return r;
    }

    // stable line-oriented rendering: one "key: value" line per fact
    std::string text() const {
        std::ostringstream out;
        auto emit = [&](const std::string& key, const json& v) {
            out << key << ": ";
            if (v.is_string())
                out << v.get<std::string>();
            else
                out << v.dump();
            out << '\n';
        };
        for (const auto& [key, value] : query.items()) emit(key, value);
        out << "verdict: " << verdict << '\n';
        if (!reason.empty()) out << "reason: " << reason << '\n';
        if (certificate.is_object())
            for (const auto& [key, value] : certificate.items()) emit("certificate." + key, value);
        out << "nodes: " << nodes << '\n';
        return out.str();
    }
};

struct RunResult {
    int exit_code = 2;
    Report report;
    std::string format = "text";  // --format json|text
    std::string out_file;         // --out FILE (JSON report copy), empty = none
};

inline VerifyResult verify_report(const json& rep);

namespace detail {

inline const std::set<std::string>& value_flags() {
    static const std::set<std::string> f = {"format", "budget", "cap",   "space",     "group",
                                            "set",    "other",  "colors", "branching", "scale",
                                            "points", "rect",   "square", "seed",      "out"};
    return f;
}

inline const std::set<std::string>& bool_flags() {
    static const std::set<std::string> f = {"check-kaleido", "classify"};
    return f;
}

struct ParsedArgs {
    std::vector<std::string> words;
    std::map<std::string, std::string> values;
    std::set<std::string> flags;

    bool flag(const std::string& name) const { return flags.count(name) > 0; }

    std::optional<std::string> opt(const std::string& name) const {
        auto it = values.find(name);
        if (it == values.end()) return std::nullopt;
        return it->second;
    }

    std::string get(const std::string& name) const {
        auto v = opt(name);
        require(v.has_value(), "missing required flag --" + name);
        return *v;
    }
};

inline ParsedArgs parse_argv(const std::vector<std::string>& argv) {
    ParsedArgs args;
    for (std::size_t i = 0; i < argv.size(); ++i) {
        const std::string& tok = argv[i];
        if (tok.rfind("--", 0) == 0) {
            std::string name = tok.substr(2);
            if (bool_flags().count(name)) {
                args.flags.insert(name);
            } else if (value_flags().count(name)) {
                require(i + 1 < argv.size(), "flag --" + name + " expects a value");
                require(!args.values.count(name), "flag --" + name + " given twice");
                args.values[name] = argv[++i];
            } else {
                throw std::invalid_argument("unexpected flag: " + tok);
            }
        } else {
            args.words.push_back(tok);
        }
    }
    return args;
}

inline long long parse_count(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(text, &pos);
        require(pos == text.size() && v >= 0, "");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed " + what + ": '" + text + "'");
    }
}

inline int verdict_exit(const std::string& verdict) {
    if (verdict == "success" || verdict == "holds") return 0;
    if (verdict == "absent" || verdict == "fails") return 1;
    if (verdict == "unknown") return 3;
    return 2;
}

// Builds the G-space from exactly one of --group / --space and echoes the
// chosen input into the query.
inline GSpace resolve_space(const ParsedArgs& args, json& query) {
    auto group = args.opt("group");
    auto space_file = args.opt("space");
    require(group.has_value() != space_file.has_value(),
            "provide exactly one of --group and --space");
    if (group) {
        AbelianGroupSpec spec = parse_group_spec(*group);
        query["group"] = spec.text();
        return cayley_space(spec);
    }
    GSpace space = load_space(*space_file);
    query["space"] = space;
    return space;
}

inline AbelianGroupSpec resolve_group(const ParsedArgs& args, json& query) {
    AbelianGroupSpec spec = parse_group_spec(args.get("group"));
    query["group"] = spec.text();
    return spec;
}

inline Configuration resolve_set(const ParsedArgs& args, json& query,
                                 const char* key = "set") {
    Configuration c = parse_int_list(args.get(key));
    query[key] = c;
    return c;
}

inline std::vector<Configuration> classes_of(const Coloring& chi) {
    std::vector<Configuration> classes(chi.palette);
    for (std::size_t x = 0; x < chi.color_of.size(); ++x)
        classes[chi.color_of[x]].push_back(static_cast<int>(x));
    return classes;
}

inline json coloring_certificate(const Coloring& chi) {
    json j = chi;
    j["type"] = "coloring";
    j["classes"] = classes_of(chi);
    return j;
}

inline Configuration translate_config(const AbelianGroupSpec& spec, const Configuration& c,
                                      int g) {
    Configuration out;
    for (int x : c) out.push_back(spec.add(x, g));
    return normalized(out);
}

inline FactorizationCertificate certify_factorization(const AbelianGroupSpec& spec,
                                                      const Configuration& a,
                                                      const Configuration& b) {
    FactorizationCertificate cert{spec.text(), normalized(a), normalized(b), std::nullopt};
    if (auto g = is_periodic(spec, cert.complement))
        cert.periodic = *g;
    else if (auto g = is_periodic(spec, cert.subset))
        cert.periodic = *g;
    return cert;
}

inline void fill_outcome_coloring(Report& report, const Outcome<Coloring>& res,
                                  const json& extra_square = json(nullptr)) {
    report.nodes = res.nodes;
    switch (res.status) {
        case Status::found: {
            report.verdict = "success";
            report.certificate = coloring_certificate(*res.value);
            if (!extra_square.is_null()) report.certificate["square"] = extra_square;
            break;
        }
        case Status::absent: report.verdict = "absent"; break;
        default: report.verdict = "unknown"; report.reason = "search budget exhausted"; break;
    }
}

inline json quasi_flags_certificate(const LatinSquare& sq, const Configuration& set) {
    QuasiFlags flags = quasi_classify_subset(sq, set);
    json cert{{"type", "quasi_flags"}, {"self_complemented", flags.self_complemented}};
    cert["complemented"] = flags.complemented ? json(*flags.complemented) : json(nullptr);
    if (flags.doubly) {
        auto second = detail::least_delta_complement(sq, *flags.doubly);
        require(second.has_value(), "internal: doubly factor lost its complement");
        cert["doubly"] = json{{"b", *flags.doubly}, {"c", *second}};
    } else {
        cert["doubly"] = nullptr;
    }
    return cert;
}

inline void expect_words(const ParsedArgs& args, std::size_t n) {
    if (args.words.size() > n)
        throw std::invalid_argument("unexpected argument: " + args.words[n]);
}

inline void dispatch(const ParsedArgs& parsed, Report& report) {
    ParsedArgs args = parsed;
    require(!args.words.empty(), "missing command");
    // shorthand: a leading verb belongs to the kaleido group
    if (args.words[0] == "find" || args.words[0] == "check")
        args.words.insert(args.words.begin(), "kaleido");

    const std::string& group_word = args.words[0];
    long long budget = args.opt("budget") ? parse_count(*args.opt("budget"), "budget") : 0;
    std::optional<long long> cap_flag;
    if (args.opt("cap")) cap_flag = parse_count(*args.opt("cap"), "cap");

    if (group_word == "verify") {
        require(args.words.size() >= 2, "verify expects a report file");
        expect_words(args, 2);
        report.query["command"] = "verify";
        report.query["file"] = args.words[1];
        VerifyResult v = verify_report(read_json_file(args.words[1]));
        report.verdict = v.ok ? "holds" : "fails";
        report.reason = v.reason;
        return;
    }

    require(args.words.size() >= 2, "missing subcommand after '" + group_word + "'");
    const std::string& verb = args.words[1];
    report.query["command"] = group_word + " " + verb;

    if (group_word == "kaleido") {
        expect_words(args, 2);
        GSpace space = resolve_space(args, report.query);
        Configuration set = resolve_set(args, report.query);
        if (verb == "find") {
            report.query["budget"] = budget;
            fill_outcome_coloring(report, find_kaleidoscopic_coloring(space, set, budget));
        } else if (verb == "check") {
            Coloring chi{static_cast<int>(normalized(set).size()),
                         parse_int_list(args.get("colors"))};
            report.query["colors"] = chi.color_of;
            VerifyResult v = verify_kaleidoscopic(space, set, chi);
            report.verdict = v.ok ? "holds" : "fails";
            report.reason = v.reason;
            if (v.ok) report.certificate = coloring_certificate(chi);
        } else {
            throw std::invalid_argument("unknown subcommand: kaleido " + verb);
        }
        return;
    }

    if (group_word == "factorize") {
        expect_words(args, 2);
        AbelianGroupSpec spec = resolve_group(args, report.query);
        Configuration set = resolve_set(args, report.query);
        if (verb == "check") {
            Configuration other = resolve_set(args, report.query, "other");
            if (is_factorization(spec, set, other)) {
                report.verdict = "holds";
                json cert = certify_factorization(spec, set, other);
                cert["type"] = "factorization";
                report.certificate = cert;
            } else {
                report.verdict = "fails";
                report.reason = "products are not pairwise distinct or sizes do not multiply up";
            }
        } else if (verb == "complement") {
            if (auto b = find_complement(spec, set)) {
                report.verdict = "success";
                json cert = certify_factorization(spec, normalized(set), *b);
                cert["type"] = "factorization";
                report.certificate = cert;
            } else {
                report.verdict = "absent";
            }
        } else if (verb == "periodic") {
            if (auto g = is_periodic(spec, set)) {
                report.verdict = "success";
                report.certificate = json{{"type", "periodic"},
                                          {"group", spec.text()},
                                          {"subset", normalized(set)},
                                          {"period", *g},
                                          {"element", spec.element_at(*g).residues}};
            } else {
                report.verdict = "absent";
            }
        } else if (verb == "doubly") {
            if (auto bc = is_doubly_complemented(spec, set)) {
                report.verdict = "success";
                report.certificate = json{{"type", "doubly"},
                                          {"group", spec.text()},
                                          {"subset", normalized(set)},
                                          {"b", bc->first},
                                          {"c", bc->second}};
            } else {
                report.verdict = "absent";
            }
        } else {
            throw std::invalid_argument("unknown subcommand: factorize " + verb);
        }
        return;
    }

    if (group_word == "hajos") {
        if (verb == "classify") {
            std::vector<int> factors;
            if (args.words.size() >= 3) {
                expect_words(args, 3);
                factors = parse_int_list(args.words[2]);
            } else {
                factors = parse_group_spec(args.get("group")).orders;
            }
            report.query["type"] = factors;
            ClassifyResult res = hajos_classify(GroupTypeQuery{factors});
            if (res.hajos) {
                report.verdict = "holds";
                json cert = res;
                cert["type"] = "family";
                report.certificate = cert;
            } else {
                report.verdict = "fails";
                report.reason = "no listed family contains this group type";
            }
            return;
        }
        expect_words(args, 2);
        AbelianGroupSpec spec = resolve_group(args, report.query);
        int cap = static_cast<int>(cap_flag.value_or(Caps{}.hajos_cap));
        report.query["cap"] = cap;
        HajosResult res;
        if (verb == "brute")
            res = hajos_brute(spec, cap);
        else if (verb == "semi")
            res = hajos_check(spec, HajosVariant::semi, cap);
        else if (verb == "demi")
            res = hajos_check(spec, HajosVariant::demi, cap);
        else
            throw std::invalid_argument("unknown subcommand: hajos " + verb);
        report.nodes = res.checked;
        if (res.holds) {
            report.verdict = "holds";
            report.certificate = json{{"type", "sweep"}, {"checked", res.checked}};
        } else {
            report.verdict = "fails";
            json cert = *res.counterexample;
            cert["type"] = "factorization";
            report.certificate = cert;
        }
        return;
    }

    if (group_word == "split") {
        expect_words(args, 2);
        GSpace space = resolve_space(args, report.query);
        if (verb == "check") {
            Configuration set = resolve_set(args, report.query);
            if (auto chain = is_splittable(space, set)) {
                report.verdict = "success";
                json cert = *chain;
                cert["type"] = "chain";
                report.certificate = cert;
            } else {
                report.verdict = "absent";
            }
        } else if (verb == "generate") {
            int cap = static_cast<int>(cap_flag.value_or(Caps{}.congruence_cap));
            report.query["cap"] = cap;
            auto configs = generate_splittable(space, cap);
            report.verdict = "success";
            report.certificate = json{{"type", "splittable_list"},
                                      {"count", configs.size()},
                                      {"configurations", configs}};
        } else {
            throw std::invalid_argument("unknown subcommand: split " + verb);
        }
        return;
    }

    if (group_word == "ultra") {
        expect_words(args, 2);
        UltrametricSpec spec;
        spec.branching = parse_int_list(args.get("branching"));
        report.query["branching"] = spec.branching;
        if (auto s = args.opt("scale")) {
            spec.scale = parse_rat_list(*s);
            json scale = json::array();
            for (const Rat& e : spec.scale) scale.push_back(rat_to_json(e));
            report.query["scale"] = scale;
        }
        validate(spec);
        if (verb == "verify") {
            int cap = static_cast<int>(cap_flag.value_or(Caps{}.leaf_cap));
            report.query["cap"] = cap;
            UltraReport rep = verify_ultrametric_splittability(spec, cap);
            report.nodes = rep.subsets_checked;
            report.verdict = rep.all_ok ? "holds" : "fails";
            if (!rep.all_ok) report.reason = "a kaleidoscopical subset is not split by the chain";
            json cert = rep;
            cert["type"] = "ultra_report";
            report.certificate = cert;
        } else if (verb == "chain") {
            report.verdict = "success";
            report.certificate = json{{"type", "epsilon_chain"}, {"levels", epsilon_chain(spec)}};
        } else {
            throw std::invalid_argument("unknown subcommand: ultra " + verb);
        }
        return;
    }

    if (group_word == "rigid") {
        require(verb == "check", "unknown subcommand: rigid " + verb);
        expect_words(args, 2);
        std::string file = args.get("points");
        PlanarPointSet k = load_points_text(file);
        report.query["file"] = file;
        report.query["points"] = k;
        RigidityResult res = rigidity_check(k);
        report.nodes = res.triples_checked;
        if (res.rigid) {
            report.verdict = "holds";
            report.certificate =
                json{{"type", "rigid_sweep"}, {"triples_checked", res.triples_checked}};
        } else {
            report.verdict = "fails";
            json cert = *res.witness;
            cert["type"] = "rigidity_witness";
            report.certificate = cert;
        }
        return;
    }

    if (group_word == "latin") {
        expect_words(args, 2);
        std::optional<std::uint64_t> seed;
        if (auto s = args.opt("seed")) {
            seed = static_cast<std::uint64_t>(parse_count(*s, "seed"));
            report.query["seed"] = *seed;
        }
        require(!(args.flag("classify") && args.flag("check-kaleido")),
                "choose one of --classify and --check-kaleido");

        auto subset_work = [&](const LatinSquare& sq, const json& square_echo) {
            Configuration set = resolve_set(args, report.query);
            if (args.flag("check-kaleido")) {
                report.query["budget"] = budget;
                fill_outcome_coloring(report, quasi_kaleidoscopic(sq, set, budget), square_echo);
            } else {
                report.verdict = "success";
                report.certificate = quasi_flags_certificate(sq, set);
                if (!square_echo.is_null()) report.certificate["square"] = square_echo;
            }
        };

        if (verb == "complete") {
            PartialRectangle rect = load_rectangle_text(args.get("rect"));
            report.query["rectangle"] = rect;
            if (auto sq = complete_rectangle(rect, seed)) {
                report.verdict = "success";
                json cert = *sq;
                cert["type"] = "latin_square";
                report.certificate = cert;
            } else {
                report.verdict = "absent";
                report.reason = "a symbol occurs fewer than r+s-n times";
            }
        } else if (verb == "check") {
            LatinSquare sq = load_square_text(args.get("square"), false);
            report.query["square"] = json{{"n", sq.n}, {"table", sq.cell}};
            VerifyResult valid = validate(sq);
            if (!valid.ok) {
                report.verdict = "fails";
                report.reason = valid.reason;
            } else if (args.opt("set")) {
                subset_work(sq, json(nullptr));
            } else {
                report.verdict = "holds";
            }
        } else if (verb == "example9") {
            PartialRectangle rect = example9();
            report.query["rectangle"] = rect;
            LatinSquare sq = *complete_rectangle(rect, seed);
            if (args.opt("set")) {
                subset_work(sq, json(sq));
            } else {
                report.verdict = "success";
                json cert = sq;
                cert["type"] = "latin_square";
                report.certificate = cert;
            }
        } else {
            throw std::invalid_argument("unknown subcommand: latin " + verb);
        }
        return;
    }

    throw std::invalid_argument("unknown command: " + group_word);
}

}  // namespace detail

// Re-checks the certificate embedded in a report against the query it
// answers.  Never re-runs a search: every check is a direct evaluation of
// the certified object.  Throws std::invalid_argument when there is nothing
// to verify or the certificate type is not recognized; tampered certificates
// yield {false, reason}.
inline VerifyResult verify_report(const json& rep) {
    if (!rep.contains("certificate") || rep.at("certificate").is_null())
        throw std::invalid_argument("nothing to verify: the report carries no certificate");
    const json& cert = rep.at("certificate");
    const json& query = rep.at("query");
    const std::string type = cert.value("type", "");
    const std::string command = query.value("command", "");

    auto space_from_query = [&]() -> GSpace {
        if (query.contains("group")) return cayley_space(parse_group_spec(query.at("group")));
        return query.at("space").get<GSpace>();
    };

    try {
        if (type == "coloring") {
            Coloring chi = cert.get<Coloring>();
            Configuration set = query.at("set").get<Configuration>();
            if (cert.contains("classes") &&
                cert.at("classes").get<std::vector<Configuration>>() != detail::classes_of(chi))
                return {false, "color classes disagree with the coloring"};
            if (command.rfind("latin", 0) == 0) {
                json sqj = cert.contains("square") ? cert.at("square") : query.at("square");
                LatinSquare sq{sqj.at("n").get<int>(),
                               sqj.at("table").get<std::vector<std::vector<int>>>()};
                auto valid = validate(sq);
                if (!valid.ok) return valid;
                return verify_quasi_kaleidoscopic(sq, set, chi);
            }
            return verify_kaleidoscopic(space_from_query(), set, chi);
        }

        if (type == "factorization") {
            FactorizationCertificate c = cert.get<FactorizationCertificate>();
            AbelianGroupSpec spec = parse_group_spec(c.group);
            if (!is_factorization(spec, c.subset, c.complement))
                return {false, "claimed factorization does not multiply out bijectively"};
            if (c.periodic) {
                int g = *c.periodic;
                if (g <= 0 || g >= spec.order()) return {false, "periodic element out of range"};
                if (detail::translate_config(spec, c.subset, g) != normalized(c.subset) &&
                    detail::translate_config(spec, c.complement, g) != normalized(c.complement))
                    return {false, "claimed period moves both factors"};
            }
            if (command.rfind("hajos", 0) == 0) {
                if (c.periodic) return {false, "a counterexample cannot carry a period"};
                if (is_periodic(spec, c.subset)) return {false, "counterexample subset is periodic"};
                if (is_periodic(spec, c.complement))
                    return {false, "counterexample complement is periodic"};
            }
            return {true, ""};
        }

        if (type == "periodic") {
            AbelianGroupSpec spec = parse_group_spec(cert.at("group"));
            Configuration subset = cert.at("subset").get<Configuration>();
            int g = cert.at("period").get<int>();
            if (g <= 0 || g >= spec.order()) return {false, "period out of range"};
            if (detail::translate_config(spec, subset, g) != normalized(subset))
                return {false, "claimed period moves the subset"};
            if (cert.contains("element") &&
                cert.at("element").get<std::vector<int>>() != spec.element_at(g).residues)
                return {false, "period element disagrees with its index"};
            return {true, ""};
        }

        if (type == "doubly") {
            AbelianGroupSpec spec = parse_group_spec(cert.at("group"));
            Configuration a = cert.at("subset").get<Configuration>();
            Configuration b = cert.at("b").get<Configuration>();
            Configuration c = cert.at("c").get<Configuration>();
            if (!is_factorization(spec, a, b)) return {false, "G = A+B fails"};
            if (!is_factorization(spec, b, c)) return {false, "G = B+C fails"};
            return {true, ""};
        }

        if (type == "chain") {
            GSpace space = space_from_query();
            Configuration k = query.at("set").get<Configuration>();
            SplittingChain chain = cert.get<SplittingChain>();
            if (chain.levels.empty()) return {false, "empty chain"};
            if (chain.levels.front().block_count != space.points)
                return {false, "chain does not start at the discrete partition"};
            if (chain.levels.back().block_count != 1)
                return {false, "chain does not end at the full partition"};
            if (chain.steps.size() + 1 != chain.levels.size())
                return {false, "step count disagrees with level count"};
            for (const auto& level : chain.levels) {
                if (static_cast<int>(level.block_of.size()) != space.points)
                    return {false, "chain level lives on the wrong point set"};
                if (!level.invariant_under(space)) return {false, "chain level is not invariant"};
            }
            for (std::size_t i = 0; i + 1 < chain.levels.size(); ++i) {
                if (!chain.levels[i].refines(chain.levels[i + 1]) ||
                    chain.levels[i] == chain.levels[i + 1])
                    return {false, "chain is not strictly increasing"};
                RelPosition pos = relative_position(k, chain.levels[i], chain.levels[i + 1]);
                if (pos == RelPosition::neither) return {false, "a chain step is neither"};
                if (pos != chain.steps[i]) return {false, "a step disposition is misdeclared"};
            }
            return {true, ""};
        }

        if (type == "family") {
            GroupTypeQuery q{query.at("type").get<std::vector<int>>()};
            std::vector<std::pair<char, int>> assignment;
            for (const auto& [key, value] : cert.at("assignment").items()) {
                if (key.size() != 1) return {false, "assignment variable must be a single letter"};
                assignment.emplace_back(key[0], value.get<int>());
            }
            return verify_family_assignment(q, cert.at("family").get<std::string>(), assignment);
        }

        if (type == "quasi_flags") {
            json sqj = cert.contains("square") ? cert.at("square") : query.at("square");
            LatinSquare sq{sqj.at("n").get<int>(),
                           sqj.at("table").get<std::vector<std::vector<int>>>()};
            auto valid = validate(sq);
            if (!valid.ok) return valid;
            Configuration set = query.at("set").get<Configuration>();
            auto s = detail::checked_symbols(sq, set);
            const int size = static_cast<int>(s.size());
            // self-complementedness is a direct table evaluation — recompute
            bool self = false;
            if (size * size == sq.n) {
                std::vector<bool> mu(sq.n + 1, false), de(sq.n + 1, false);
                self = true;
                for (int x : s)
                    for (int y : s) {
                        int p = times(sq, x, y), q = rdiv(sq, x, y);
                        if (mu[p] || de[q]) self = false;
                        mu[p] = de[q] = true;
                    }
            }
            if (cert.at("self_complemented").get<bool>() != self)
                return {false, "self-complementedness flag is wrong"};
            auto delta_bijective = [&](const std::vector<int>& b, const std::vector<int>& a) {
                if (static_cast<int>(b.size() * a.size()) != sq.n) return false;
                std::vector<bool> seen(sq.n + 1, false);
                for (int x : b)
                    for (int y : a) {
                        int q = rdiv(sq, x, y);
                        if (seen[q]) return false;
                        seen[q] = true;
                    }
                return true;
            };
            if (!cert.at("complemented").is_null()) {
                auto b = cert.at("complemented").get<std::vector<int>>();
                for (int v : b)
                    if (v < 1 || v > sq.n) return {false, "complement symbol out of range"};
                if (!delta_bijective(b, s)) return {false, "claimed complement is not one"};
            }
            if (!cert.at("doubly").is_null()) {
                auto b = cert.at("doubly").at("b").get<std::vector<int>>();
                auto c = cert.at("doubly").at("c").get<std::vector<int>>();
                std::vector<bool> seen(sq.n + 1, false);
                if (static_cast<int>(b.size()) * size != sq.n)
                    return {false, "doubly factor has the wrong size"};
                for (int x : s)
                    for (int y : b) {
                        if (y < 1 || y > sq.n) return {false, "doubly factor symbol out of range"};
                        int p = times(sq, x, y);
                        if (seen[p]) return {false, "A x B products collide"};
                        seen[p] = true;
                    }
                if (!delta_bijective(c, b)) return {false, "doubly factor is not complemented"};
            }
            return {true, ""};
        }

        if (type == "rigidity_witness") {
            PlanarPointSet k = query.at("points").get<PlanarPointSet>();
            RigidityWitness w = cert.get<RigidityWitness>();
            return verify_rigidity_witness(k, w);
        }

        if (type == "latin_square") {
            LatinSquare sq{cert.at("n").get<int>(),
                           cert.at("table").get<std::vector<std::vector<int>>>()};
            auto valid = validate(sq);
            if (!valid.ok) return valid;
            if (query.contains("rectangle")) {
                const json& rj = query.at("rectangle");
                int n = rj.at("n").get<int>(), r = rj.at("r").get<int>(), s = rj.at("s").get<int>();
                auto cells = rj.at("table").get<std::vector<std::vector<int>>>();
                if (sq.n != n) return {false, "completed order differs from the rectangle's"};
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < s; ++j)
                        if (sq.cell[i][j] != cells[i][j])
                            return {false, "completion does not extend the rectangle"};
            }
            return {true, ""};
        }

        if (type == "ultra_report") {
            UltrametricSpec spec;
            spec.branching = query.at("branching").get<std::vector<int>>();
            if (query.contains("scale"))
                for (const auto& e : query.at("scale")) spec.scale.push_back(rat_from_json(e));
            validate(spec);
            GSpace space = ultrametric_space(spec);
            auto chain = epsilon_chain(spec);
            UltraReport ur = cert.get<UltraReport>();
            if (ur.all_ok != ur.violations.empty())
                return {false, "all_ok flag disagrees with the violation list"};
            for (const auto& entry : ur.kaleidoscopic) {
                auto v = verify_kaleidoscopic(space, entry.k, entry.coloring);
                if (!v.ok) return {false, "entry coloring fails: " + v.reason};
                if (entry.steps.size() + 1 != chain.size())
                    return {false, "entry step count disagrees with the chain"};
                for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
                    RelPosition pos = relative_position(entry.k, chain[i], chain[i + 1]);
                    if (pos != entry.steps[i]) return {false, "entry step disposition is wrong"};
                    if (pos == RelPosition::neither) return {false, "entry step is neither"};
                }
            }
            return {true, ""};
        }

        if (type == "epsilon_chain") {
            UltrametricSpec spec;
            spec.branching = query.at("branching").get<std::vector<int>>();
            if (query.contains("scale"))
                for (const auto& e : query.at("scale")) spec.scale.push_back(rat_from_json(e));
            validate(spec);
            auto expected = epsilon_chain(spec);
            auto got = cert.at("levels").get<std::vector<Partition>>();
            if (got.size() != expected.size()) return {false, "chain length is wrong"};
            for (std::size_t i = 0; i < got.size(); ++i)
                if (!(got[i] == expected[i])) return {false, "a chain level is wrong"};
            return {true, ""};
        }
    } catch (const std::invalid_argument& e) {
        return {false, e.what()};
    }

    throw std::invalid_argument("no verifier for certificate type: '" + type + "'");
}

// File-level verification entry point: reads a serialized report and
// re-checks its certificate.  Structural problems (unreadable file, missing
// certificate, unknown type) throw; a well-formed but wrong certificate
// returns false.
inline bool verify(const std::string& report_file) {
    return verify_report(read_json_file(report_file)).ok;
}

// Parses and executes one CLI request.  Never throws: malformed input, cap
// overruns, and internal failures all land in an "error" report with exit
// code 2.  Exit codes: 0 positive verdict, 1 negative/absent, 2 usage or cap
// error, 3 budget exhausted.
inline RunResult run(const std::vector<std::string>& argv) {
    RunResult rr;
    auto t0 = std::chrono::steady_clock::now();
    try {
        detail::ParsedArgs args = detail::parse_argv(argv);
        if (auto f = args.opt("format")) {
            require(*f == "json" || *f == "text", "--format must be 'json' or 'text'");
            rr.format = *f;
        }
        if (auto o = args.opt("out")) rr.out_file = *o;
        detail::dispatch(args, rr.report);
        rr.exit_code = detail::verdict_exit(rr.report.verdict);
    } catch (const json::exception& e) {
        rr.report.verdict = "error";
        rr.report.reason = e.what();
        rr.exit_code = 2;
    } catch (const std::exception& e) {
        rr.report.verdict = "error";
        rr.report.reason = e.what();
        rr.exit_code = 2;
    }
    rr.report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rr;
}

}  // namespace kaleido
