#include "nlse/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "nlse/errors.hpp"
#include "text.hpp"

namespace nlse {

namespace pt = boost::property_tree;

namespace {

// Boost's INI reader only knows full-line comments; drop trailing ones too.
std::string strip_comments(const std::string& ini) {
    std::istringstream in(ini);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        const auto cut = line.find_first_of(";#");
        out << line.substr(0, cut) << '\n';
    }
    return out.str();
}

pt::ptree parse_ini(const std::string& ini) {
    std::istringstream in(strip_comments(ini));
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return tree;
}

/// Validates that a config node only uses the listed keys and sections.
class Node {
public:
    Node(const pt::ptree& tree, std::string section) : tree_(tree), section_(std::move(section)) {}

    void allow(std::initializer_list<std::string_view> keys, std::initializer_list<std::string_view> sections = {}) const {
        for (const auto& [name, child] : tree_) {
            const bool is_section = !child.empty();
            bool ok = false;
            for (auto k : sections) ok = ok || k == name;
            if (!is_section)
                for (auto k : keys) ok = ok || k == name;
            if (!ok)
                throw ConfigError("config: unknown " + std::string(is_section ? "section" : "key") + " '" +
                                  qualified(name) + "'");
        }
    }

    bool has(const std::string& key) const {
        auto it = tree_.find(key);
        return it != tree_.not_found() && it->second.empty();
    }

    bool has_section(const std::string& key) const {
        auto it = tree_.find(key);
        return it != tree_.not_found() && !it->second.empty();
    }

    std::string required(const std::string& key) const {
        if (!has(key)) throw ConfigError("config: missing required key '" + qualified(key) + "'");
        return std::string(text::trim(tree_.find(key)->second.data()));
    }

    std::string optional(const std::string& key, std::string fallback) const {
        return has(key) ? required(key) : fallback;
    }

    double number(const std::string& key) const {
        const std::string raw = required(key);
        try {
            return text::to_double(raw);
        } catch (const ConfigError& e) {
            throw ConfigError("config: key '" + qualified(key) + "': " + e.what());
        }
    }

    double number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

    Node section(const std::string& name) const {
        static const pt::ptree empty;
        auto it = tree_.find(name);
        return Node(it == tree_.not_found() ? empty : it->second, name);
    }

    const pt::ptree& tree() const { return tree_; }

    std::string qualified(const std::string& key) const { return section_.empty() ? key : section_ + "." + key; }

private:
    const pt::ptree& tree_;
    std::string section_;
};

int integer(double v, const std::string& what) {
    if (v != std::round(v)) throw ConfigError("config: " + what + " must be an integer");
    return static_cast<int>(v);
}

Problem parse_problem(const Node& root) {
    const Node p = root.section("problem");
    p.allow({"potential", "nonlinearity", "datum", "a", "b", "T"});
    Problem problem;
    problem.potential = Potential::parse(p.optional("potential", "none"));
    problem.nonlinearity = Nonlinearity::parse(p.optional("nonlinearity", "none"));
    problem.datum = InitialDatum::parse(p.required("datum"));
    problem.a = p.number("a", -16.0);
    problem.b = p.number("b", 16.0);
    problem.T = p.number("T", 1.0);
    return problem;
}

std::vector<double> number_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& token : text::split_list(text)) out.push_back(text::to_double(token));
    return out;
}

// "<a>.<b>.<c>" -> pieces
std::vector<std::string> dotted(const std::string& key) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : key) {
        if (c == '.') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

SolveJob parse_solve_config(const std::string& ini_text) {
    const pt::ptree tree = parse_ini(ini_text);
    const Node root(tree, "");
    root.allow({"label", "scheme", "tau", "h", "N", "fs_oversample"}, {"problem"});
    if (!root.has_section("problem")) throw ConfigError("config: missing required section 'problem'");

    SolveJob job;
    job.label = root.optional("label", "solve");
    const Problem problem = parse_problem(root);
    job.datum = problem.datum;

    PeriodicGrid grid(problem.a, problem.b, 256);
    if (root.has("N") && root.has("h")) throw ConfigError("config: give either 'N' or 'h', not both");
    if (root.has("N"))
        grid = PeriodicGrid(problem.a, problem.b, integer(root.number("N"), "N"));
    else
        grid = PeriodicGrid::from_mesh_size(problem.a, problem.b, root.number("h"));

    const auto fs = integer(root.number("fs_oversample", kDefaultOversample), "fs_oversample");
    job.config = make_config(problem, parse_scheme(root.required("scheme")), root.number("tau"), grid, fs);
    job.config.validate();
    return job;
}

StudySpec parse_study_config(const std::string& ini_text) {
    const pt::ptree tree = parse_ini(ini_text);
    const Node root(tree, "");
    root.allow({"label", "schemes", "fs_oversample", "norms"}, {"problem", "sweep", "reference", "bands", "gates"});
    if (!root.has_section("problem")) throw ConfigError("config: missing required section 'problem'");

    StudySpec spec;
    spec.label = root.required("label");
    spec.problem = parse_problem(root);
    spec.fs_oversample = integer(root.number("fs_oversample", kDefaultOversample), "fs_oversample");

    spec.schemes.clear();
    for (const auto& name : text::split_list(root.required("schemes"))) spec.schemes.push_back(parse_scheme(name));
    if (root.has("norms")) {
        spec.norms.clear();
        for (const auto& name : text::split_list(root.required("norms"))) spec.norms.push_back(parse_norm(name));
    }

    const Node sweep = root.section("sweep");
    sweep.allow({"tau", "h"});
    if (sweep.has("tau") == sweep.has("h")) throw ConfigError("config: [sweep] needs exactly one of 'tau' or 'h'");
    spec.sweep.kind = sweep.has("tau") ? Sweep::Kind::tau : Sweep::Kind::h;
    spec.sweep.values = number_list(sweep.required(sweep.has("tau") ? "tau" : "h"));

    const Node ref = root.section("reference");
    ref.allow({"scheme", "tau", "h", "fs_oversample", "verify", "per_scheme"});
    spec.reference.scheme = parse_scheme(ref.required("scheme"));
    spec.reference.tau = ref.number("tau");
    spec.reference.h = ref.number("h");
    spec.reference.fs_oversample = integer(ref.number("fs_oversample", kDefaultOversample), "reference.fs_oversample");
    const std::string verify = ref.optional("verify", "false");
    if (verify != "true" && verify != "false") throw ConfigError("config: reference.verify must be true or false");
    spec.reference.verify = verify == "true";
    const std::string per_scheme = ref.optional("per_scheme", "false");
    if (per_scheme != "true" && per_scheme != "false") throw ConfigError("config: reference.per_scheme must be true or false");
    spec.reference.per_scheme = per_scheme == "true";

    const Node bands = root.section("bands");
    for (const auto& [key, value] : bands.tree()) {
        const auto parts = dotted(key);
        if (parts.size() != 2) throw ConfigError("config: band key '" + key + "' must be <scheme>.<norm>");
        const auto lims = number_list(value.data());
        if (lims.size() != 2) throw ConfigError("config: band '" + key + "' needs lo, hi");
        spec.bands.push_back({parse_scheme(parts[0]), parse_norm(parts[1]), lims[0], lims[1]});
    }

    const Node gates = root.section("gates");
    for (const auto& [key, value] : gates.tree()) {
        const auto parts = dotted(key);
        if (parts.size() != 4) throw ConfigError("config: gate key '" + key + "' must be <kind>.<first>.<second>.<norm>");
        Gate g{};
        if (parts[0] == "gap")
            g.kind = Gate::Kind::order_gap;
        else if (parts[0] == "ratio")
            g.kind = Gate::Kind::finest_error_ratio;
        else if (parts[0] == "fluct")
            g.kind = Gate::Kind::fluctuation;
        else
            throw ConfigError("config: unknown gate kind '" + parts[0] + "'");
        g.first = parse_scheme(parts[1]);
        g.second = parse_scheme(parts[2]);
        g.norm = parse_norm(parts[3]);
        g.threshold = text::to_double(value.data());
        spec.gates.push_back(g);
    }

    spec.validate();
    return spec;
}

}  // namespace nlse
