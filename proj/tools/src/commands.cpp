#include "commands.hpp"

#include "output.hpp"
#include "pool.hpp"

#include "htype/errors.hpp"
#include "htype/geometry.hpp"
#include "htype/isospectral.hpp"
#include "htype/suites.hpp"
#include "htype/twisted.hpp"
#include "htype/waves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

namespace htype::cli {

namespace {

using cd = std::complex<double>;

json matrix_json(const Eigen::MatrixXd& M) {
    json rows = json::array();
    for (int i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
        rows.push_back(row);
    }
    return rows;
}

json vector_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

json complex_json(cd z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Eigen::VectorXd unit_vector(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> N01;
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = N01(rng);
    return v.normalized();
}

std::string space_label(const EndomorphismSpace& s) {
    return "H^(" + std::to_string(s.a) + "," + std::to_string(s.b) + ")_" + std::to_string(s.l);
}

json comparison_json(const SpectraComparison& c) {
    json mism = json::array();
    for (const auto& m : c.mismatches)
        mism.push_back({{"index", m.index},
                        {"left", m.left},
                        {"right", m.right},
                        {"left_multiplicity", m.left_multiplicity},
                        {"right_multiplicity", m.right_multiplicity}});
    return {{"left", c.left},           {"right", c.right},   {"tol", c.tol}, {"matched", c.matched},
            {"length_mismatch", c.length_mismatch}, {"mismatches", mism}, {"isospectral", c.isospectral()}};
}

json eigen_json(const SpectrumRecord& rec) {
    json out = json::array();
    for (const auto& e : rec.eigenvalues) out.push_back({{"value", e.value}, {"multiplicity", e.multiplicity}});
    return out;
}

json reduced_json(const ReducedParameters& r) {
    return {{"k", r.k},
            {"n", r.n},
            {"m", r.m},
            {"mu", r.mu},
            {"dk_residual", r.dk_residual},
            {"harmonic_defect", r.harmonic_defect}};
}

/// Description of a one-pole transform; enough to rebuild it with the same profile.
json twisted_json(const TwistedFunction& tf, double radius) {
    json exps = json::array();
    for (const auto& [p, q] : tf.exponents) exps.push_back({p, q});
    return {{"domain", htype::to_string(tf.domain)},
            {"poles", matrix_json(tf.poles)},
            {"exponents", exps},
            {"radius", radius},
            {"project_x", tf.project_x},
            {"project_k", tf.project_k ? json(*tf.project_k) : json(nullptr)},
            {"profile", "1"}};
}

// ---------------------------------------------------------------------------------------------
// build-group

json build_group(const RunConfig& cfg) {
    const Algebra alg = cfg.group.algebra();
    const HTypeCheck ht = is_h_type(alg, 100, cfg.seed);
    json out = {{"command", "build-group"},
                {"group", cfg.group.label()},
                {"k", alg.k()},
                {"l", alg.l()},
                {"dim", alg.dim()},
                {"h_type", ht.h_type},
                {"h_type_residual", ht.max_residual}};
    if (const auto space = alg.space()) {
        const CliffordDefects d = check_clifford(space->module());
        out["block_dim"] = space->block_dim();
        out["irreducible_dimension"] = irreducible_dimension(space->l);
        out["clifford_defects"] = {
            {"anticommutation", d.anticommutation}, {"skewness", d.skewness}, {"orthogonality", d.orthogonality}};
        if (space->a != space->b) {
            const IsomorphismWitness w = swap_witness(space->l, space->a, space->b);
            out["swap_isomorphism_defect"] =
                isomorphism_defect(alg, Algebra::h_type(space->l, space->b, space->a), w.A, w.Bz);
        }
    } else {
        out["z_gram"] = matrix_json(alg.z_gram());
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// spectrum

json spectrum(const RunConfig& cfg) {
    const SpectrumConfig& s = cfg.spectrum;
    const Algebra alg = cfg.group.algebra();
    const int k = s.k.value_or(alg.k());
    json out = {{"command", "spectrum"}, {"mode", s.mode}, {"group", cfg.group.label()}, {"k", k}, {"sigma", kSigma}};
    if (s.mode == "explicit") {
        const SpectrumRecord rec = explicit_spectrum(s.mu, k, s.rmax, s.pmax);
        json rows = json::array();
        for (const auto& e : rec.eigenvalues)
            rows.push_back({{"r", e.r}, {"p", (e.n + e.m) / 2}, {"n", e.n}, {"m", e.m}, {"value", e.value},
                            {"multiplicity", e.multiplicity}});
        out["mu"] = s.mu;
        out["provenance"] = rec.provenance;
        out["rows"] = rows;
        return out;
    }

    const double tol = cfg.tol("spectrum");
    const int coarse_nodes = std::max(16, (s.nodes * 3 / 4) & ~1);
    std::vector<json> records(s.strata.size());
    parallel_for(cfg.jobs, static_cast<int>(s.strata.size()), [&](int i) {
        const Stratum& st = s.strata[i];
        const RadialGLZOperator op = st.s ? exterior_operator(alg.l(), *st.s, st.i, s.zball_radius, s.bc, k, st.n, st.m)
                                          : RadialGLZOperator(k, st.n, st.m, s.mu);
        CollocationOptions fine_opt, coarse_opt;
        fine_opt.nodes = s.nodes;
        coarse_opt.nodes = coarse_nodes;
        const SpectrumRecord fine = compact_spectrum(op, s.R, s.bc, s.count, fine_opt);
        const SpectrumRecord coarse = compact_spectrum(op, s.R, s.bc, s.count, coarse_opt);
        const int p = (st.n + st.m) / 2, q = (st.n - st.m) / 2;
        const int mult = static_cast<int>(harmonic_space_dimension(k, p, q));
        json eig = json::array();
        double worst = 0.0;
        const std::size_t n = std::min(fine.eigenvalues.size(), coarse.eigenvalues.size());
        for (std::size_t j = 0; j < n; ++j) {
            const double v = fine.eigenvalues[j].value;
            const double conv = std::abs(v - coarse.eigenvalues[j].value) / (1.0 + std::abs(v));
            worst = std::max(worst, conv);
            eig.push_back({{"index", j}, {"value", v}, {"multiplicity", mult}, {"convergence", conv}});
        }
        records[i] = {{"n", st.n},
                      {"m", st.m},
                      {"p", p},
                      {"q", q},
                      {"s", st.s ? json(*st.s) : json(nullptr)},
                      {"i", st.i},
                      {"mu", op.mu},
                      {"R", s.R},
                      {"bc", to_string(s.bc)},
                      {"nodes", s.nodes},
                      {"check_nodes", coarse_nodes},
                      {"provenance", fine.provenance},
                      {"eigenvalues", eig},
                      {"found", n},
                      {"max_convergence", worst},
                      {"converged", worst <= tol && static_cast<int>(n) == s.count}};
    });
    out["tol"] = tol;
    out["records"] = records;
    return out;
}

// ---------------------------------------------------------------------------------------------
// curvature

json curvature(const RunConfig& cfg) {
    const Algebra alg = cfg.group.algebra();
    const int k = alg.k(), l = alg.l();
    const CurvatureReport rep = curvature_report(alg, 20, cfg.seed);
    json comparisons = json::array();
    auto compare = [&](const std::string& quantity, double closed, double numeric) {
        comparisons.push_back(
            {{"quantity", quantity}, {"closed", closed}, {"numeric", numeric}, {"difference", numeric - closed}});
    };
    for (int i = 0; i < k + l; ++i)
        compare("Ric(e" + std::to_string(i) + ",e" + std::to_string(i) + ")", i < k ? -l / 2.0 : k / 4.0,
                rep.ricci_trace(i, i));
    compare("scalar", rep.scalar, nilpotent_structure(alg).scalar());

    json solvable = json::array();
    for (int sig : {1, -1}) {
        const SolvableExtension ext{alg, 1.0, sig, 1};
        const LieMetricAlgebra eng = solvable_structure(ext);
        const Eigen::MatrixXd ric = eng.ricci();
        const double S = eng.scalar();
        const int T = ext.dim() - 1;
        const double einstein = ric(T, T) - 0.5 * S * eng.gram()(T, T);
        solvable.push_back({{"time_signature", sig},
                            {"scalar_engine", S},
                            {"scalar_closed", solvable_scalar(ext)},
                            {"ricci_TT_engine", ric(T, T)},
                            {"einstein_TT_engine", einstein},
                            {"einstein_TT_closed", einstein_tt_closed(k, l, eng.gram()(T, T))}});
    }
    return {{"command", "curvature"},
            {"group", cfg.group.label()},
            {"k", k},
            {"l", l},
            {"residuals",
             {{"pair_antisymmetry", rep.pair_antisymmetry},
              {"pair_symmetry", rep.pair_symmetry},
              {"bianchi", rep.bianchi},
              {"ricci_defect", rep.ricci_defect},
              {"connection_defect", rep.connection_defect},
              {"riemann_defect", rep.riemann_defect},
              {"torsion", rep.torsion},
              {"metric_compatibility", rep.metric_compatibility}}},
            {"ok", rep.ok()},
            {"comparisons", comparisons},
            {"solvable_q1", solvable}};
}

// ---------------------------------------------------------------------------------------------
// isospec

json isospec(const RunConfig& cfg) {
    const IsospecConfig& c = cfg.isospec;
    const Algebra L = Algebra::h_type(c.left);
    const Algebra R = Algebra::h_type(c.right);
    if (L.k() != R.k() || L.l() != R.l())
        throw InvalidArgument("isospec: " + space_label(c.left) + " and " + space_label(c.right) +
                              " differ in (k, l)");
    const double tol = cfg.tol("default");
    const Eigen::VectorXd Q = Eigen::VectorXd::Unit(L.k(), 0);
    struct Job {
        int p, q;
        BoundaryCondition bc;
    };
    std::vector<Job> jobs;
    for (int n = 0; n <= c.nmax; ++n)
        for (int p = n; p >= 0; --p)
            for (const auto& bc : c.bcs) jobs.push_back({p, n - p, bc});
    std::vector<json> rows(jobs.size());
    CollocationOptions opt;
    opt.nodes = c.nodes;
    parallel_for(cfg.jobs, static_cast<int>(jobs.size()), [&](int i) {
        const Job& j = jobs[i];
        const ReducedParameters pl = reduce_pole(L, Q, j.p, j.q, c.mu, cfg.seed);
        const ReducedParameters pr = reduce_pole(R, Q, j.p, j.q, c.mu, cfg.seed);
        auto solve = [&](const ReducedParameters& rp, const EndomorphismSpace& g) {
            SpectrumRecord rec = compact_spectrum(RadialGLZOperator(rp.k, rp.n, rp.m, rp.mu), c.R, j.bc, c.count, opt);
            rec.group = SpectrumRecord::Group{g.l, g.a, g.b};
            const int mult = static_cast<int>(harmonic_space_dimension(rp.k, j.p, j.q));
            for (auto& e : rec.eigenvalues) e.multiplicity = mult;
            return rec;
        };
        const SpectrumRecord sl = solve(pl, c.left);
        const SpectrumRecord sr = solve(pr, c.right);
        json row = comparison_json(spectra_compare(sl, sr, tol));
        row["p"] = j.p;
        row["q"] = j.q;
        row["bc"] = to_string(j.bc);
        row["parameters"] = {{"left", reduced_json(pl)}, {"right", reduced_json(pr)}};
        row["eigenvalues"] = {{"left", eigen_json(sl)}, {"right", eigen_json(sr)}};
        rows[i] = row;
    });
    bool all = true;
    for (const auto& r : rows) all = all && r.at("isospectral").get<bool>();

    // The sign flip on one Clifford block carries the right group's generators to the left group's.
    double flip = NAN;
    if (c.right.a >= 1 && c.right.b >= 1 && c.left.b == c.right.b - 1 && c.left.a == c.right.a + 1) {
        const Algebra F = flip_block(R, c.right.a);
        flip = 0.0;
        for (int a = 0; a < L.l(); ++a) flip = std::max(flip, (F.J(a) - L.J(a)).cwiseAbs().maxCoeff());
    }
    json out = {{"command", "isospec"},
                {"left", space_label(c.left)},
                {"right", space_label(c.right)},
                {"tol", tol},
                {"mu", c.mu},
                {"R", c.R},
                {"nodes", c.nodes},
                {"comparisons", rows},
                {"isospectral", all}};
    out["flip_block_defect"] = std::isnan(flip) ? json(nullptr) : json(flip);
    return out;
}

// ---------------------------------------------------------------------------------------------
// waves

json waves(const RunConfig& cfg) {
    const WavesConfig& w = cfg.waves;
    w.pc.validate();
    const Algebra alg = cfg.group.algebra();
    const int k = alg.k(), l = alg.l();
    std::mt19937_64 rng(cfg.seed);
    const Eigen::VectorXd Q = unit_vector(k, rng);
    const Eigen::VectorXd X = unit_vector(k, rng) * 0.4;
    const Eigen::VectorXd Z = unit_vector(l, rng) * 0.3;
    const Eigen::VectorXd Zg = unit_vector(l, rng) * 0.23;
    const double t0 = 0.2;

    // Smooth complex test field on (X, Z, time).
    std::vector<double> coeff(static_cast<std::size_t>(k + l + 1));
    for (auto& c : coeff) c = std::normal_distribution<double>(0.0, 0.5)(rng);
    const JetField field = [coeff](const std::vector<Jet>& v) {
        Jet s(v[0].dim());
        for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * coeff[i];
        return exp(s * cd(0.3, 0.8)) * (v[0] * v.back() + cd(1.0, 0.0));
    };

    TwistedFunction tf = TwistedFunction::one_pole(alg, Q, w.p, w.q_exp);
    const double radius = w.radius;
    tf.radius = [radius](const Jet& x2) { return Jet(x2.dim(), radius); };
    const PacketGrid grid = PacketGrid::box(X, l, w.grid_n, w.grid_half, w.grid_nT, w.T0, w.T1);
    const SolvableExtension ext{alg, w.q, -1, 1};

    json kinds = json::array();
    json packets = json::object();
    auto entry = [&](OperatorKind kind, json residuals, std::string note = "") {
        json e = {{"kind", htype::to_string(kind)}, {"residuals", std::move(residuals)}};
        if (!note.empty()) e["note"] = note;
        kinds.push_back(e);
    };
    const bool massive = w.pc.m > 0.0;
    for (OperatorKind kind : w.kinds.empty() ? all_operator_kinds() : w.kinds) {
        switch (kind) {
            case OperatorKind::RelativisticWave: {
                double worst = 0.0;
                for (int i = 0; i < 3; ++i)
                    worst = std::max(worst, std::abs(relativistic_residual(unit_vector(l, rng) * (0.5 + i), w.pc)));
                entry(kind, {{"plane_wave", worst}});
                break;
            }
            case OperatorKind::Neutrino: {
                if (!massive) {
                    entry(kind, json::object(), "needs m > 0");
                    break;
                }
                const NonrelLink nl = nonrelativistic_link(unit_vector(l, rng), w.pc, false, 6, cfg.seed);
                entry(kind, {{"link", nl.link_residual}, {"nonrelativistic", nl.nonrel_residual},
                             {"taylor_omega", nl.taylor_residual}});
                break;
            }
            case OperatorKind::Schrodinger:
            case OperatorKind::TotalSchrodinger: {
                if (!massive) {
                    entry(kind, json::object(), "needs m > 0");
                    break;
                }
                const auto v = kind == OperatorKind::Schrodinger ? SchrodingerVariant::S : SchrodingerVariant::TotalS;
                const SchrodingerCheck z = zcrystal_schrodinger_check(alg, w.pc, v, Zg, Q, 1, w.p, w.q_exp, 4, cfg.seed);
                const SchrodingerCheck s = sphere_schrodinger_check(alg, w.pc, v, radius, Q, 1, w.p, w.q_exp, 3, cfg.seed);
                entry(kind, {{"zcrystal", z.residual / z.scale},
                             {"sphere_bundle", s.residual / s.scale},
                             {"omega_tilde_zcrystal", z.omega_tilde},
                             {"omega_tilde_sphere", s.omega_tilde}});
                break;
            }
            case OperatorKind::FullStatic: {
                const double split = coefficient_distance(
                    static_operator(OperatorKind::Neutrino, w.pc, k, l) + static_operator(OperatorKind::Schrodinger, w.pc, k, l),
                    static_operator(OperatorKind::FullStatic, w.pc, k, l));
                const double pointwise = static_split_residual(alg, w.pc, field, X, Z, t0);
                entry(kind, {{"split_coefficients", split}, {"split_pointwise", pointwise}});
                break;
            }
            case OperatorKind::Meson:
            case OperatorKind::ShrinkingNeutrino: {
                // The meson packet solves the massless equation only.
                PhysicalConstants pc = w.pc;
                if (kind == OperatorKind::Meson) pc.m = 0.0;
                const PacketResidual pr = expanding_packet_residual(ext, pc, kind, tf, grid);
                json samples = json::array();
                for (const auto& s : pr.samples)
                    samples.push_back({{"Z", vector_json(s.Z)},
                                       {"T", s.T},
                                       {"value", complex_json(s.value)},
                                       {"residual", complex_json(s.residual)}});
                packets[htype::to_string(kind)] = samples;
                entry(kind, {{"packet_abs", pr.max_abs}, {"packet_rel", pr.max_rel}, {"omega", pr.omega}},
                      kind == OperatorKind::Meson ? "evaluated with m = 0" : "");
                break;
            }
            case OperatorKind::ExpandingSchrodinger:
            case OperatorKind::Tractor: {
                const double split = coefficient_distance(
                    solvable_operator(OperatorKind::ShrinkingNeutrino, w.pc, k, l, w.q) +
                        solvable_operator(OperatorKind::ExpandingSchrodinger, w.pc, k, l, w.q) +
                        solvable_operator(OperatorKind::Tractor, w.pc, k, l, w.q),
                    solvable_operator(OperatorKind::FullSolvable, w.pc, k, l, w.q));
                const SpacetimeOperator op = solvable_operator(kind, w.pc, k, l, w.q);
                entry(kind, {{"split_coefficients", split},
                             {"time_reversal_involution", coefficient_distance(time_reversed(time_reversed(op)), op)}});
                break;
            }
            case OperatorKind::FullSolvable: {
                const cd a = solvable_apply(ext, w.pc, kind, field, X, Z, t0);
                const cd b = solvable_laplace_beltrami(ext, field, X, Z, t0);
                entry(kind, {{"laplace_beltrami", std::abs(a - b) / std::max(1.0, std::abs(b))}});
                break;
            }
        }
    }
    json pc = {{"hbar", w.pc.hbar}, {"c", w.pc.c}, {"m", w.pc.m}};
    return {{"command", "waves"},      {"group", cfg.group.label()}, {"constants", pc},
            {"q", w.q},                {"sigma", kSigma},             {"twisted_function", twisted_json(tf, radius)},
            {"operators", kinds},      {"packets", packets}};
}

std::string cell(const json& v) {
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

/// Log display only; files keep 17 digits.
std::string short_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace

const std::vector<std::string>& cached_commands() {
    static const std::vector<std::string> names{"build-group", "spectrum", "curvature", "isospec", "waves"};
    return names;
}

json command_inputs(const std::string& command, const RunConfig& cfg) {
    if (command == "build-group") return {{"group", cfg.group.to_json()}, {"seed", cfg.seed}};
    if (command == "spectrum")
        return {{"group", cfg.group.to_json()}, {"spectrum", cfg.spectrum.to_json()}, {"tol", cfg.tol("spectrum")}};
    if (command == "curvature") return {{"group", cfg.group.to_json()}, {"seed", cfg.seed}};
    if (command == "isospec")
        return {{"isospec", cfg.isospec.to_json()}, {"tol", cfg.tol("default")}, {"seed", cfg.seed}};
    if (command == "waves") return {{"group", cfg.group.to_json()}, {"waves", cfg.waves.to_json()}, {"seed", cfg.seed}};
    throw ConfigError("unknown command '" + command + "'");
}

json compute(const std::string& command, const RunConfig& cfg) {
    if (command == "build-group") return build_group(cfg);
    if (command == "spectrum") return spectrum(cfg);
    if (command == "curvature") return curvature(cfg);
    if (command == "isospec") return isospec(cfg);
    if (command == "waves") return waves(cfg);
    throw ConfigError("unknown command '" + command + "'");
}

CachedResult fetch(const std::string& command, const RunConfig& cfg, ResultCache& cache) {
    CachedResult r;
    r.key = ResultCache::key(command, command_inputs(command, cfg));
    if (auto bytes = cache.load(r.key)) {
        r.bytes = std::move(*bytes);
        r.hit = true;
        return r;
    }
    r.bytes = dump_json(compute(command, cfg));
    cache.store(r.key, r.bytes);
    return r;
}

std::string result_csv(const std::string& command, const json& res) {
    std::vector<std::vector<std::string>> rows;
    if (command == "spectrum" && res.at("mode") == "explicit") {
        for (const auto& r : res.at("rows"))
            rows.push_back({cell(r["r"]), cell(r["p"]), cell(r["n"]), cell(r["m"]), cell(r["value"]),
                            cell(r["multiplicity"])});
        return to_csv({"r", "p", "n", "m", "eigenvalue", "multiplicity"}, rows);
    }
    if (command == "spectrum") {
        for (const auto& rec : res.at("records"))
            for (const auto& e : rec.at("eigenvalues"))
                rows.push_back({cell(rec["n"]), cell(rec["m"]), cell(rec["s"]), cell(rec["mu"]), cell(rec["bc"]),
                                cell(e["index"]), cell(e["value"]), cell(e["multiplicity"]), cell(e["convergence"])});
        return to_csv({"n", "m", "s", "mu", "bc", "index", "eigenvalue", "multiplicity", "convergence"}, rows);
    }
    if (command == "isospec") {
        for (const auto& c : res.at("comparisons")) {
            const auto& L = c.at("eigenvalues").at("left");
            const auto& R = c.at("eigenvalues").at("right");
            for (std::size_t i = 0; i < std::min(L.size(), R.size()); ++i)
                rows.push_back({cell(c["p"]), cell(c["q"]), cell(c["bc"]), std::to_string(i), cell(L[i]["value"]),
                                cell(R[i]["value"]), cell(L[i]["multiplicity"]), cell(R[i]["multiplicity"])});
        }
        return to_csv({"p", "q", "bc", "index", "left", "right", "left_multiplicity", "right_multiplicity"}, rows);
    }
    if (command == "waves") {
        for (const auto& [kind, samples] : res.at("packets").items())
            for (const auto& s : samples) {
                std::string z;
                for (std::size_t i = 0; i < s.at("Z").size(); ++i) z += (i ? ";" : "") + cell(s["Z"][i]);
                rows.push_back({kind, z, cell(s["T"]), cell(s["value"]["re"]), cell(s["value"]["im"]),
                                cell(s["residual"]["re"]), cell(s["residual"]["im"])});
            }
        return to_csv({"kind", "Z", "T", "value_re", "value_im", "residual_re", "residual_im"}, rows);
    }
    if (command == "curvature") {
        for (const auto& c : res.at("comparisons"))
            rows.push_back({cell(c["quantity"]), cell(c["closed"]), cell(c["numeric"]), cell(c["difference"])});
        return to_csv({"quantity", "closed", "numeric", "difference"}, rows);
    }
    return "";
}

std::string result_markdown(const std::string& command, const json& res) {
    std::ostringstream md;
    md << "## " << command << "\n\n";
    auto table = [&](const std::vector<std::string>& head, const std::vector<std::vector<std::string>>& rows) {
        md << "|";
        for (const auto& h : head) md << " " << h << " |";
        md << "\n|";
        for (std::size_t i = 0; i < head.size(); ++i) md << "---|";
        md << "\n";
        for (const auto& r : rows) {
            md << "|";
            for (const auto& c : r) md << " " << c << " |";
            md << "\n";
        }
        md << "\n";
    };
    if (command == "build-group") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& [key, v] : res.items())
            if (key != "command" && !v.is_structured()) rows.push_back({key, cell(v)});
        table({"field", "value"}, rows);
    } else if (command == "spectrum" && res.at("mode") == "explicit") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : res.at("rows"))
            rows.push_back({cell(r["r"]), cell(r["p"]), cell(r["value"]), cell(r["multiplicity"])});
        md << "Explicit eigenvalues, mu = " << cell(res["mu"]) << ", k = " << cell(res["k"]) << ".\n\n";
        table({"r", "p", "eigenvalue", "multiplicity"}, rows);
    } else if (command == "spectrum") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& rec : res.at("records")) {
            std::string first;
            const auto& e = rec.at("eigenvalues");
            for (std::size_t i = 0; i < std::min<std::size_t>(3, e.size()); ++i) first += (i ? ", " : "") + cell(e[i]["value"]);
            rows.push_back({cell(rec["n"]), cell(rec["m"]), cell(rec["mu"]), cell(rec["bc"]), first,
                            cell(rec["max_convergence"]), cell(rec["converged"])});
        }
        table({"n", "m", "mu", "bc", "leading eigenvalues", "convergence", "converged"}, rows);
    } else if (command == "curvature") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& [key, v] : res.at("residuals").items()) rows.push_back({key, cell(v)});
        table({"residual", "value"}, rows);
        rows.clear();
        for (const auto& c : res.at("comparisons"))
            rows.push_back({cell(c["quantity"]), cell(c["closed"]), cell(c["numeric"])});
        table({"quantity", "closed form", "numeric"}, rows);
    } else if (command == "isospec") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& c : res.at("comparisons"))
            rows.push_back({cell(c["p"]), cell(c["q"]), cell(c["bc"]), cell(c["matched"]),
                            std::to_string(c.at("mismatches").size()), cell(c["isospectral"])});
        md << cell(res["left"]) << " vs " << cell(res["right"]) << ", tol " << cell(res["tol"]) << ".\n\n";
        table({"p", "q", "bc", "matched", "mismatches", "isospectral"}, rows);
    } else if (command == "waves") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& e : res.at("operators"))
            for (const auto& [name, v] : e.at("residuals").items()) rows.push_back({cell(e["kind"]), name, cell(v)});
        table({"operator", "quantity", "value"}, rows);
    }
    return md.str();
}

int emit(const std::string& command, const CachedResult& result, const RunConfig& cfg, std::ostream& log) {
    const std::filesystem::path out(cfg.out);
    write_file_atomic(out / (command + ".json"), result.bytes);
    const json res = json::parse(result.bytes);
    const std::string csv = result_csv(command, res);
    if (!csv.empty()) write_file_atomic(out / (command + ".csv"), csv);
    log << command << ": " << (result.hit ? "cache hit " : "computed ") << result.key.substr(0, 16) << " -> "
        << (out / (command + ".json")).string() << "\n";
    if (command == "isospec") {
        log << "isospec: " << cell(res["left"]) << " vs " << cell(res["right"]) << " "
            << (res.at("isospectral").get<bool>() ? "isospectral" : "NOT isospectral") << "\n";
        return res.at("isospectral").get<bool>() ? kSuccess : kVerifyFailure;
    }
    if (command == "spectrum" && res.at("mode") == "compact") {
        for (const auto& rec : res.at("records"))
            if (!rec.at("converged").get<bool>()) {
                log << "spectrum: stratum n=" << cell(rec["n"]) << " m=" << cell(rec["m"])
                    << " did not converge (" << cell(rec["max_convergence"]) << ")\n";
                return kNumericalFailure;
            }
    }
    if (command == "build-group")
        log << "build-group: " << cell(res["group"]) << " k=" << cell(res["k"]) << " l=" << cell(res["l"])
            << " h_type=" << cell(res["h_type"]) << "\n";
    return kSuccess;
}

int run_verify(const RunConfig& cfg, std::ostream& log) {
    const auto& reg = suites::registry();
    std::vector<std::string> names = !cfg.only.empty() ? cfg.only : cfg.verify.suites;
    if (names.empty())
        for (const auto& e : reg) names.push_back(e.name);
    std::vector<const suites::SuiteEntry*> selected;
    for (const auto& n : names) {
        const auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& e) { return e.name == n; });
        if (it == reg.end()) {
            std::string known;
            for (const auto& e : reg) known += (known.empty() ? "" : ", ") + e.name;
            throw ConfigError("verify: unknown suite '" + n + "' (known: " + known + ")");
        }
        selected.push_back(&*it);
    }
    suites::Context ctx;
    if (cfg.group.space) ctx.group = *cfg.group.space;
    ctx.seed = cfg.seed;
    ctx.perturbation = cfg.verify.perturbation;

    std::vector<suites::SuiteResult> results(selected.size());
    std::vector<std::string> errors(selected.size());
    std::vector<bool> numerical(selected.size(), false);
    parallel_for(cfg.jobs, static_cast<int>(selected.size()), [&](int i) {
        try {
            results[i] = selected[i]->run(ctx);
        } catch (const NumericalFailure& e) {
            errors[i] = e.what();
            numerical[i] = true;
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
        results[i].suite = selected[i]->name;
    });

    json suites_j = json::array();
    bool all = true;
    bool any_numerical = false;
    for (std::size_t i = 0; i < selected.size(); ++i) {
        const auto& r = results[i];
        const bool ok = errors[i].empty() && r.passed();
        all = all && ok;
        any_numerical = any_numerical || numerical[i];
        json checks = json::array();
        for (const auto& c : r.checks)
            checks.push_back({{"name", c.name}, {"value", c.value}, {"bound", c.bound}, {"passed", c.passed()}});
        json s = {{"suite", r.suite}, {"passed", ok}, {"checks", checks}, {"notes", r.notes}};
        if (!errors[i].empty()) s["error"] = errors[i];
        suites_j.push_back(s);
        log << (ok ? "PASS " : "FAIL ") << r.suite;
        if (!errors[i].empty()) {
            log << "  error: " << errors[i];
        } else if (const auto* w = r.worst()) {
            log << "  worst: " << w->name << " = " << short_double(w->value) << " (bound " << short_double(w->bound)
                << ")";
        }
        log << "  [" << r.seconds << " s]\n";
        if (!ok)
            for (const auto& c : r.checks)
                if (!c.passed())
                    log << "     " << c.name << " = " << short_double(c.value) << " > " << short_double(c.bound)
                        << "\n";
    }
    json doc = {{"command", "verify"},
                {"group", cfg.group.label()},
                {"seed", cfg.seed},
                {"perturbation", cfg.verify.perturbation},
                {"suites", suites_j},
                {"passed", all}};
    write_file_atomic(std::filesystem::path(cfg.out) / "verify.json", dump_json(doc));
    if (any_numerical) return kNumericalFailure;
    return all ? kSuccess : kVerifyFailure;
}

int run_report(const RunConfig& cfg, ResultCache& cache, std::ostream& log) {
    const std::vector<std::string> commands = !cfg.only.empty() ? cfg.only : cfg.report_commands;
    for (const auto& c : commands)
        if (std::find(cached_commands().begin(), cached_commands().end(), c) == cached_commands().end())
            throw ConfigError("report: unknown command '" + c + "'");
    std::vector<CachedResult> results(commands.size());
    parallel_for(cfg.jobs, static_cast<int>(commands.size()),
                 [&](int i) { results[i] = fetch(commands[i], cfg, cache); });
    int code = kSuccess;
    json digest = json::object();
    std::ostringstream md;
    md << "# htype report\n\n";
    md << "Group " << cfg.group.label() << ", seed " << cfg.seed << ".\n\n";
    for (std::size_t i = 0; i < commands.size(); ++i) {
        code = std::max(code, emit(commands[i], results[i], cfg, log));
        const json res = json::parse(results[i].bytes);
        digest[commands[i]] = {{"cache_key", results[i].key}, {"result", res}};
        md << result_markdown(commands[i], res);
    }
    const std::filesystem::path out(cfg.out);
    write_file_atomic(out / "report.json", dump_json({{"command", "report"}, {"results", digest}}));
    write_file_atomic(out / "report.md", md.str());
    log << "report: " << (out / "report.md").string() << "\n";
    return code;
}

}  // namespace htype::cli
