#include "config.hpp"

#include "htype/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace htype::cli {

namespace {

/// Parsed document plus the source line of every field path (YAML only).
struct Document {
    json root;
    std::map<std::string, int> lines;
    std::string file;
};

json yaml_scalar(const YAML::Node& n) {
    const std::string s = n.Scalar();
    if (n.Tag() == "!") return s;  // quoted
    if (s == "true" || s == "True") return true;
    if (s == "false" || s == "False") return false;
    if (s == "null" || s == "~" || s.empty()) return nullptr;
    static const std::regex integer(R"([-+]?[0-9]+)");
    if (std::regex_match(s, integer)) return std::stoll(s);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end && *end == '\0') return v;
    return s;
}

json yaml_to_json(const YAML::Node& n, const std::string& path, std::map<std::string, int>& lines) {
    lines[path] = n.Mark().line + 1;
    switch (n.Type()) {
        case YAML::NodeType::Map: {
            json out = json::object();
            for (const auto& kv : n) {
                const std::string key = kv.first.as<std::string>();
                out[key] = yaml_to_json(kv.second, path.empty() ? key : path + "." + key, lines);
            }
            return out;
        }
        case YAML::NodeType::Sequence: {
            json out = json::array();
            for (std::size_t i = 0; i < n.size(); ++i)
                out.push_back(yaml_to_json(n[i], path + "[" + std::to_string(i) + "]", lines));
            return out;
        }
        case YAML::NodeType::Scalar: return yaml_scalar(n);
        default: return nullptr;
    }
}

bool looks_like_json(const std::string& path, const std::string& text) {
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) return true;
    const auto first = text.find_first_not_of(" \t\r\n");
    return first != std::string::npos && text[first] == '{';
}

std::string read_file(const std::string& path, const std::string& what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(what + ": cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Document parse_document(const std::string& path) {
    Document doc;
    doc.file = path;
    const std::string text = read_file(path, "config");
    if (looks_like_json(path, text)) {
        try {
            doc.root = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ConfigError(path + ": JSON parse error: " + e.what());
        }
    } else {
        try {
            doc.root = yaml_to_json(YAML::Load(text), "", doc.lines);
        } catch (const YAML::Exception& e) {
            throw ConfigError(path + ":" + std::to_string(e.mark.line + 1) + ": YAML parse error: " + e.msg);
        }
    }
    if (doc.root.is_null()) doc.root = json::object();
    if (!doc.root.is_object()) throw ConfigError(path + ": top level must be a table");
    return doc;
}

/// Typed access to one table of the document with field-path diagnostics.
class Table {
public:
    Table(const Document& doc, const json& node, std::string path) : doc_(doc), node_(node), path_(std::move(path)) {
        if (!node_.is_object()) fail(path_, "expected a table");
    }

    [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
        std::string where = doc_.file.empty() ? "config" : doc_.file;
        if (const auto it = doc_.lines.find(field); it != doc_.lines.end()) where += ":" + std::to_string(it->second);
        throw ConfigError(where + ": " + (field.empty() ? "<root>" : field) + ": " + msg);
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
    bool has(const std::string& key) const { return node_.contains(key) && !node_.at(key).is_null(); }
    const json& raw(const std::string& key) const { return node_.at(key); }

    void allow(std::initializer_list<const char*> keys) const {
        const std::set<std::string> ok(keys.begin(), keys.end());
        for (const auto& [k, v] : node_.items())
            if (!ok.count(k)) fail(field(k), "unknown key");
    }

    double number(const std::string& key, double def) const {
        if (!has(key)) return def;
        const json& v = raw(key);
        if (!v.is_number()) fail(field(key), "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) fail(field(key), "must be finite");
        return d;
    }
    double positive(const std::string& key, double def) const {
        const double d = number(key, def);
        if (!(d > 0.0)) fail(field(key), "must be > 0");
        return d;
    }
    long long integer(const std::string& key, long long def) const {
        if (!has(key)) return def;
        const json& v = raw(key);
        if (!v.is_number_integer()) fail(field(key), "expected an integer");
        return v.get<long long>();
    }
    int bounded(const std::string& key, int def, int lo, int hi) const {
        const long long v = integer(key, def);
        if (v < lo || v > hi)
            fail(field(key), "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        return static_cast<int>(v);
    }
    std::string text(const std::string& key, const std::string& def) const {
        if (!has(key)) return def;
        if (!raw(key).is_string()) fail(field(key), "expected a string");
        return raw(key).get<std::string>();
    }
    Table sub(const std::string& key) const { return Table(doc_, raw(key), field(key)); }
    const Document& doc() const { return doc_; }

private:
    const Document& doc_;
    const json& node_;
    std::string path_;
};

EndomorphismSpace read_space(const Table& t) {
    t.allow({"l", "a", "b"});
    const int l = t.bounded("l", 3, 1, 64);
    const int a = t.bounded("a", 1, 0, 4096);
    const int b = t.bounded("b", 0, 0, 4096);
    if (a + b < 1) t.fail(t.field("a"), "a + b must be >= 1");
    try {
        return EndomorphismSpace(l, a, b);
    } catch (const std::exception& e) {
        t.fail(t.field("l"), e.what());
    }
}

BoundaryCondition read_bc(const Table& parent, const std::string& key, const json& v) {
    const std::string f = parent.field(key);
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "dirichlet") return BoundaryCondition::dirichlet();
        if (s == "neumann") return BoundaryCondition::neumann();
        parent.fail(f, "unknown boundary condition '" + s + "' (dirichlet, neumann or {robin: [A, B]})");
    }
    if (v.is_object() && v.contains("robin")) {
        const json& ab = v.at("robin");
        if (!ab.is_array() || ab.size() != 2 || !ab[0].is_number() || !ab[1].is_number())
            parent.fail(f, "robin needs [A, B]");
        try {
            return BoundaryCondition::robin(ab[0].get<double>(), ab[1].get<double>());
        } catch (const std::exception& e) {
            parent.fail(f, e.what());
        }
    }
    parent.fail(f, "expected a boundary condition");
}

void read_generators(GroupSpec& g, const Table& t, const std::string& key) {
    std::string file = t.text(key, "");
    if (file.empty()) t.fail(t.field(key), "expected a file path");
    // Relative paths are resolved against the config file's directory.
    const std::filesystem::path base = std::filesystem::path(t.doc().file).parent_path();
    if (std::filesystem::path(file).is_relative() && !base.empty()) file = (base / file).string();
    g.generator_file = file;
    const Document gd = parse_document(file);
    if (!gd.root.contains("generators") || !gd.root.at("generators").is_array())
        throw ConfigError(file + ": expected a 'generators' list of square matrices");
    const json& list = gd.root.at("generators");
    int k = -1;
    for (std::size_t a = 0; a < list.size(); ++a) {
        const std::string name = "generators[" + std::to_string(a) + "]";
        const json& m = list[a];
        if (!m.is_array() || m.empty()) throw ConfigError(file + ": " + name + " is not a matrix");
        const int rows = static_cast<int>(m.size());
        if (k < 0) k = rows;
        if (rows != k) throw ConfigError(file + ": " + name + " has " + std::to_string(rows) + " rows, expected " +
                                         std::to_string(k));
        Eigen::MatrixXd M(rows, rows);
        for (int i = 0; i < rows; ++i) {
            if (!m[i].is_array() || static_cast<int>(m[i].size()) != rows)
                throw ConfigError(file + ": " + name + " is not square");
            for (int j = 0; j < rows; ++j) {
                if (!m[i][j].is_number()) throw ConfigError(file + ": " + name + " has a non-numeric entry");
                M(i, j) = m[i][j].get<double>();
            }
        }
        const double skew = (M + M.transpose()).cwiseAbs().maxCoeff();
        if (skew > 1e-12) {
            std::ostringstream os;
            os << file << ": " << name << " is not skew-symmetric (max |A + A^T| = " << skew << ")";
            throw ConfigError(os.str());
        }
        g.generators.push_back(M);
    }
    if (g.generators.empty()) throw ConfigError(file + ": no generators");
}

}  // namespace

std::string to_string(const BoundaryCondition& bc) {
    if (bc.kind != BoundaryKind::Robin) return bc.name();
    std::ostringstream os;
    os.precision(17);
    os << "robin(" << bc.A << "," << bc.B << ")";
    return os.str();
}

const std::vector<OperatorKind>& all_operator_kinds() {
    static const std::vector<OperatorKind> kinds = {
        OperatorKind::RelativisticWave,  OperatorKind::Neutrino,          OperatorKind::Schrodinger,
        OperatorKind::TotalSchrodinger,  OperatorKind::FullStatic,        OperatorKind::Meson,
        OperatorKind::ShrinkingNeutrino, OperatorKind::ExpandingSchrodinger, OperatorKind::Tractor,
        OperatorKind::FullSolvable,
    };
    return kinds;
}

std::optional<OperatorKind> parse_operator_kind(const std::string& name) {
    for (OperatorKind k : all_operator_kinds())
        if (htype::to_string(k) == name) return k;
    return std::nullopt;
}

Algebra GroupSpec::algebra() const {
    if (space) return Algebra::h_type(*space);
    return from_representation(generators);
}

std::string GroupSpec::label() const {
    if (space) return "H^(" + std::to_string(space->a) + "," + std::to_string(space->b) + ")_" + std::to_string(space->l);
    return "generators:" + generator_file;
}

json GroupSpec::to_json() const {
    if (space) return {{"l", space->l}, {"a", space->a}, {"b", space->b}};
    json mats = json::array();
    for (const auto& M : generators) {
        json rows = json::array();
        for (int i = 0; i < M.rows(); ++i) {
            json row = json::array();
            for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
            rows.push_back(row);
        }
        mats.push_back(rows);
    }
    return {{"generators", mats}};
}

json SpectrumConfig::to_json() const {
    json strata_j = json::array();
    for (const auto& s : strata) {
        json e = {{"n", s.n}, {"m", s.m}, {"i", s.i}};
        e["s"] = s.s ? json(*s.s) : json(nullptr);
        strata_j.push_back(e);
    }
    return {{"mode", mode}, {"mu", mu},       {"k", k ? json(*k) : json(nullptr)},
            {"rmax", rmax}, {"pmax", pmax},   {"R", R},
            {"bc", cli::to_string(bc)},       {"count", count},
            {"nodes", nodes}, {"strata", strata_j}, {"zball_radius", zball_radius}};
}

json IsospecConfig::to_json() const {
    json bcs_j = json::array();
    for (const auto& bc : bcs) bcs_j.push_back(cli::to_string(bc));
    return {{"left", {{"l", left.l}, {"a", left.a}, {"b", left.b}}},
            {"right", {{"l", right.l}, {"a", right.a}, {"b", right.b}}},
            {"mu", mu},
            {"R", R},
            {"count", count},
            {"nodes", nodes},
            {"nmax", nmax},
            {"bcs", bcs_j}};
}

json WavesConfig::to_json() const {
    json kinds_j = json::array();
    for (OperatorKind k : kinds.empty() ? all_operator_kinds() : kinds) kinds_j.push_back(htype::to_string(k));
    return {{"hbar", pc.hbar}, {"c", pc.c},         {"m", pc.m},           {"q", q},
            {"kinds", kinds_j}, {"p", p},           {"q_exp", q_exp},      {"radius", radius},
            {"grid", {{"n", grid_n}, {"half", grid_half}, {"nT", grid_nT}, {"T0", T0}, {"T1", T1}}}};
}

double RunConfig::tol(const std::string& name) const {
    if (const auto it = tolerances.find(name); it != tolerances.end()) return it->second;
    return tolerances.at("default");
}

RunConfig load_config(const std::string& path) {
    RunConfig cfg;
    if (path.empty()) {
        cfg.group.space = EndomorphismSpace(3, 1, 0);
        return cfg;
    }
    cfg.source = path;
    const Document doc = parse_document(path);
    const Table root(doc, doc.root, "");
    root.allow({"group", "generators", "spectrum", "isospec", "waves", "verify", "report", "tolerances", "output",
                "jobs", "seed"});

    if (root.has("group") && root.has("generators")) root.fail("generators", "give either group or generators");
    if (root.has("generators")) {
        read_generators(cfg.group, root, "generators");
    } else {
        cfg.group.space = root.has("group") ? read_space(root.sub("group")) : EndomorphismSpace(3, 1, 0);
    }

    if (root.has("spectrum")) {
        const Table t = root.sub("spectrum");
        t.allow({"mode", "mu", "k", "rmax", "pmax", "R", "R2", "bc", "count", "nodes", "strata", "zball_radius"});
        SpectrumConfig& s = cfg.spectrum;
        s.mode = t.text("mode", s.mode);
        if (s.mode != "explicit" && s.mode != "compact") t.fail(t.field("mode"), "must be 'explicit' or 'compact'");
        s.mu = t.positive("mu", s.mu);
        if (t.has("k")) s.k = t.bounded("k", 2, 2, 1 << 20);
        s.rmax = t.bounded("rmax", s.rmax, 0, 64);
        s.pmax = t.bounded("pmax", s.pmax, 0, 64);
        if (t.has("R") && t.has("R2")) t.fail(t.field("R2"), "give either R or R2");
        s.R = t.has("R2") ? std::sqrt(t.positive("R2", 1.0)) : t.positive("R", s.R);
        if (t.has("bc")) s.bc = read_bc(t, "bc", t.raw("bc"));
        s.count = t.bounded("count", s.count, 1, 4096);
        s.nodes = t.bounded("nodes", s.nodes, 8, 4000);
        if (s.count > s.nodes / 2) t.fail(t.field("count"), "must be <= nodes / 2");
        s.zball_radius = t.positive("zball_radius", s.zball_radius);
        if (t.has("strata")) {
            const json& list = t.raw("strata");
            if (!list.is_array() || list.empty()) t.fail(t.field("strata"), "expected a non-empty list of [n, m(, s, i)]");
            s.strata.clear();
            for (std::size_t i = 0; i < list.size(); ++i) {
                const std::string f = t.field("strata") + "[" + std::to_string(i) + "]";
                const json& e = list[i];
                if (!e.is_array() || e.size() < 2 || e.size() > 4)
                    t.fail(f, "expected [n, m], [n, m, s] or [n, m, s, i]");
                for (const auto& x : e)
                    if (!x.is_number_integer()) t.fail(f, "entries must be integers");
                Stratum st;
                st.n = e[0].get<int>();
                st.m = e[1].get<int>();
                if (st.n < 0) t.fail(f, "n must be >= 0");
                if (std::abs(st.m) > st.n || (st.n + st.m) % 2 != 0) t.fail(f, "need |m| <= n and n + m even");
                if (e.size() >= 3) st.s = e[2].get<int>();
                if (e.size() == 4) st.i = e[3].get<int>();
                if ((st.s && *st.s < 0) || st.i < 1) t.fail(f, "need s >= 0 and i >= 1");
                s.strata.push_back(st);
            }
        }
    }

    if (root.has("isospec")) {
        const Table t = root.sub("isospec");
        t.allow({"left", "right", "mu", "R", "count", "nodes", "nmax", "bcs"});
        IsospecConfig& c = cfg.isospec;
        if (t.has("left")) c.left = read_space(t.sub("left"));
        if (t.has("right")) c.right = read_space(t.sub("right"));
        c.mu = t.positive("mu", c.mu);
        c.R = t.positive("R", c.R);
        c.count = t.bounded("count", c.count, 1, 1024);
        c.nodes = t.bounded("nodes", c.nodes, 16, 4000);
        c.nmax = t.bounded("nmax", c.nmax, 0, 6);
        if (t.has("bcs")) {
            const json& list = t.raw("bcs");
            if (!list.is_array() || list.empty()) t.fail(t.field("bcs"), "expected a non-empty list");
            c.bcs.clear();
            for (const auto& v : list) c.bcs.push_back(read_bc(t, "bcs", v));
        }
    }

    if (root.has("waves")) {
        const Table t = root.sub("waves");
        t.allow({"hbar", "c", "m", "q", "kinds", "p", "q_exp", "radius", "grid"});
        WavesConfig& w = cfg.waves;
        w.pc.hbar = t.positive("hbar", w.pc.hbar);
        w.pc.c = t.positive("c", w.pc.c);
        w.pc.m = t.number("m", w.pc.m);
        if (w.pc.m < 0.0) t.fail(t.field("m"), "must be >= 0");
        w.q = t.positive("q", w.q);
        w.p = t.bounded("p", w.p, 0, 8);
        w.q_exp = t.bounded("q_exp", w.q_exp, 0, 8);
        w.radius = t.positive("radius", w.radius);
        if (t.has("kinds")) {
            const json& list = t.raw("kinds");
            if (!list.is_array()) t.fail(t.field("kinds"), "expected a list of operator names");
            for (const auto& v : list) {
                const auto k = v.is_string() ? parse_operator_kind(v.get<std::string>()) : std::nullopt;
                if (!k) t.fail(t.field("kinds"), "unknown operator '" + v.dump() + "'");
                w.kinds.push_back(*k);
            }
        }
        if (t.has("grid")) {
            const Table g = t.sub("grid");
            g.allow({"n", "half", "nT", "T0", "T1"});
            w.grid_n = g.bounded("n", w.grid_n, 1, 64);
            w.grid_half = g.positive("half", w.grid_half);
            w.grid_nT = g.bounded("nT", w.grid_nT, 1, 1024);
            w.T0 = g.number("T0", w.T0);
            w.T1 = g.number("T1", w.T1);
        }
    }

    if (root.has("verify")) {
        const Table t = root.sub("verify");
        t.allow({"suites", "perturbation"});
        if (t.has("suites")) {
            for (const auto& v : t.raw("suites")) {
                if (!v.is_string()) t.fail(t.field("suites"), "expected suite names");
                cfg.verify.suites.push_back(v.get<std::string>());
            }
        }
        cfg.verify.perturbation = t.number("perturbation", 0.0);
        if (cfg.verify.perturbation < 0.0) t.fail(t.field("perturbation"), "must be >= 0");
    }

    if (root.has("report")) {
        const Table t = root.sub("report");
        t.allow({"commands"});
        if (t.has("commands")) {
            cfg.report_commands.clear();
            for (const auto& v : t.raw("commands")) {
                static const std::set<std::string> ok{"build-group", "spectrum", "curvature", "isospec", "waves"};
                if (!v.is_string() || !ok.count(v.get<std::string>()))
                    t.fail(t.field("commands"), "unknown command " + v.dump());
                cfg.report_commands.push_back(v.get<std::string>());
            }
        }
    }

    if (root.has("tolerances")) {
        const Table t = root.sub("tolerances");
        for (const auto& [k, v] : root.raw("tolerances").items()) cfg.tolerances[k] = t.positive(k, 1.0);
    }
    cfg.out = root.text("output", cfg.out);
    cfg.jobs = root.bounded("jobs", cfg.jobs, 1, 1024);
    const long long seed = root.integer("seed", 1);
    if (seed < 0) root.fail("seed", "must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(seed);
    return cfg;
}

void apply_overrides(RunConfig& cfg, const Overrides& o) {
    if (const char* env = std::getenv("HTYPE_OUT"); env && *env) cfg.out = env;
    if (const char* env = std::getenv("HTYPE_JOBS"); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (!end || *end != '\0' || v < 1 || v > 1024) throw ConfigError("HTYPE_JOBS: expected an integer in [1, 1024]");
        cfg.jobs = static_cast<int>(v);
    }
    if (o.out) cfg.out = *o.out;
    if (o.jobs) {
        if (*o.jobs < 1 || *o.jobs > 1024) throw ConfigError("--jobs: expected an integer in [1, 1024]");
        cfg.jobs = *o.jobs;
    }
    if (o.seed) cfg.seed = *o.seed;
    if (o.tol) {
        if (!(*o.tol > 0.0)) throw ConfigError("--tol: must be > 0");
        cfg.tolerances["default"] = *o.tol;
    }
    if (!o.only.empty()) cfg.only = o.only;
    if (o.perturbation) {
        if (!(*o.perturbation > 0.0)) throw ConfigError("--inject-failure: perturbation must be > 0");
        cfg.verify.perturbation = *o.perturbation;
    }
}

}  // namespace htype::cli
