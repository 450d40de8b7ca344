#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "bspec/eigen.hpp"
#include "bspec/forms.hpp"
#include "bspec/graph.hpp"
#include "bspec/io.hpp"
#include "bspec/metric.hpp"
#include "bspec/numberfield.hpp"
#include "bspec/spectral.hpp"
#include "bspec/tiling.hpp"

using namespace bspec;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitDomain = 3;
constexpr int kExitStructural = 4;
constexpr int kExitNumeric = 5;

struct Common {
    std::string out;
    std::string format = "json";
    double eps = 1e-15;
    int depth = 0;
    std::uint64_t seed = 1;
    long kmax = 0;
};

void add_common(CLI::App* c, Common& o, int depth, long kmax, double eps) {
    o.depth = depth;
    o.kmax = kmax;
    o.eps = eps;
    c->add_option("--out", o.out, "Output path (default stdout)");
    c->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    c->add_option("--eps", o.eps, "Truncation / clipping tolerance");
    c->add_option("--depth", o.depth, "Depth or level count");
    c->add_option("--seed", o.seed, "Random seed");
    c->add_option("--kmax", o.kmax, "Range of pole / resonance indices");
}

void emit(const Common& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + o.out);
    f << text;
}

void emit_report(const Common& o, const ojson& r) { emit(o, r.dump(2) + "\n"); }

struct LoadedGraph {
    BratteliGraph g;
    std::string digest;
};

LoadedGraph load_graph(const std::string& path) {
    std::string text = read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::Parse, path + ": " + e.what());
    }
    return {build_graph(parse_graph_spec(j)), digest(text)};
}

ojson eigen_json(const SpectralModel& m) {
    ojson e;
    e["pf"] = m.eigen.pf;
    e["eigenvalues"] = ojson::array();
    for (const auto& l : m.eigen.eigenvalues) e["eigenvalues"].push_back(complex_json(l));
    e["multiplicity"] = m.eigen.multiplicity;
    std::vector<double> r(m.eigen.R.data(), m.eigen.R.data() + m.eigen.R.size());
    std::vector<double> l(m.eigen.L.data(), m.eigen.L.data() + m.eigen.L.size());
    e["R"] = r;
    e["L"] = l;
    e["diagonalizable"] = m.eigen.diagonalizable;
    ojson cp = ojson::array();
    for (const auto& c : m.eigen.charpoly) cp.push_back(c.get_str());
    e["charpoly"] = cp;
    if (m.eigen.diagonalizable) {
        e["C"] = ojson::array();
        for (const auto& c : m.coeffs.c) e["C"].push_back(complex_json(c));
    }
    return e;
}

ojson poles_json(const ZetaReport& z) {
    ojson a = ojson::array();
    for (const auto& p : z.poles)
        a.push_back({{"location", complex_json(p.location)},
                     {"residue", complex_json(p.residue)},
                     {"eigen_index", p.eigen_index},
                     {"k", p.k}});
    return a;
}

std::string join_ids(const BratteliGraph& g, const std::vector<int>& w) {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) s += (i ? "." : "") + g.edges[w[i]].id;
    return s;
}

int cmd_analyze(const std::string& path, const Common& o, const std::vector<std::string>& args) {
    auto [g, dg] = load_graph(path);
    SpectralModel m = make_model(g);
    ojson rep = make_report("analyze", args, dg);
    auto& res = rep["results"];
    auto prim = is_primitive(graph_matrix(g));
    res["vertices"] = g.num_vertices();
    res["edges"] = g.num_edges();
    res["primitive"] = {{"primitive", prim.primitive}, {"witness", prim.witness}};
    res["eigen"] = eigen_json(m);
    res["s0"] = m.s0;
    bool connected = check_connectivity(g);
    res["h_connected"] = connected;
    if (!connected) rep["warnings"].push_back("H does not connect the out-edges of every vertex");
    if (m.eigen.diagonalizable) {
        auto z = poles_and_residues(m, static_cast<int>(o.kmax));
        res["residue_s0"] = m.coeffs.c[0].real() / -m.log_rho;
        res["period"] = z.period;
        res["poles"] = poles_json(z);
        ojson logs = ojson::array();
        for (size_t j = 0; j < m.eigen.eigenvalues.size(); ++j)
            if (std::abs(m.eigen.eigenvalues[j] - 1.0) < 1e-9)
                logs.push_back({{"eigenvalue", complex_json(m.eigen.eigenvalues[j])},
                                {"C", complex_json(m.coeffs.c[j])},
                                {"log_t_coefficient", m.coeffs.c[j].real() / (-2 * m.log_rho)}});
        res["log_terms"] = logs;
    }
    ojson table = ojson::array();
    CsvWriter csv({"cylinder", "measure"});
    for (int n = 1; n <= o.depth; ++n)
        for (const auto& w : all_paths(g, n)) {
            double mu = spectral_measure(m, w);
            table.push_back({{"cylinder", word_ids(g, w)}, {"measure", mu}});
            csv.row({join_ids(g, w), fmt_double(mu)});
        }
    res["spectral_measure"] = table;
    for (const auto& w : m.warnings) rep["warnings"].push_back(w);
    if (o.format == "csv") emit(o, csv.str());
    else emit_report(o, rep);
    return 0;
}

int cmd_zeta(const std::string& path, double re, double im, const Common& o,
             const std::vector<std::string>& args) {
    auto [g, dg] = load_graph(path);
    SpectralModel m = make_model(g);
    ojson rep = make_report("zeta", args, dg);
    auto& res = rep["results"];
    res["s0"] = m.s0;
    std::complex<double> z(re, im);
    if (m.eigen.diagonalizable) {
        auto zr = poles_and_residues(m, static_cast<int>(o.kmax));
        res["period"] = zr.period;
        res["poles"] = poles_json(zr);
        res["numeric_residue_s0"] = complex_json(numeric_residue(m, m.s0));
        if (!std::isnan(re)) res["closed"] = complex_json(zeta_closed(m, z));
    }
    if (!std::isnan(re) && re > m.s0) {
        auto sv = zeta_series(g, z, o.depth);
        res["series"] = {{"value", complex_json(sv.value)}, {"tail_bound", sv.tail_bound}, {"levels", o.depth}};
    }
    for (const auto& w : m.warnings) rep["warnings"].push_back(w);
    emit_report(o, rep);
    return 0;
}

int cmd_heat(const std::string& path, double tmin, double tmax, int points, int K, const Common& o,
             const std::vector<std::string>& args) {
    if (!(tmin > 0) || !(tmax >= tmin) || points < 1)
        throw Error(ErrorCode::InvalidArgument, "need 0 < tmin <= tmax and points >= 1");
    auto [g, dg] = load_graph(path);
    SpectralModel m = make_model(g);
    std::vector<double> ts;
    for (int i = 0; i < points; ++i) {
        double f = points == 1 ? 0 : static_cast<double>(i) / (points - 1);
        ts.push_back(std::exp(std::log(tmin) + f * (std::log(tmax) - std::log(tmin))));
    }
    auto h = heat_trace_sweep(m, ts, o.eps, K);
    CsvWriter csv({"t", "direct", "expansion", "residual", "direct_scaled"});
    ojson rows = ojson::array();
    for (size_t i = 0; i < ts.size(); ++i) {
        double scaled = h.direct[i] * std::pow(ts[i], m.s0 / 2);
        csv.row({fmt_double(ts[i]), fmt_double(h.direct[i]), fmt_double(h.expansion[i]),
                 fmt_double(h.residual[i]), fmt_double(scaled)});
        rows.push_back({{"t", ts[i]}, {"direct", h.direct[i]}, {"expansion", h.expansion[i]},
                        {"residual", h.residual[i]}, {"direct_scaled", scaled}});
    }
    if (o.format == "csv") {
        emit(o, csv.str());
    } else {
        ojson rep = make_report("heat", args, dg);
        rep["results"]["s0"] = m.s0;
        rep["results"]["period"] = h.period;
        rep["results"]["rows"] = rows;
        for (const auto& w : m.warnings) rep["warnings"].push_back(w);
        emit_report(o, rep);
    }
    return 0;
}

int cmd_measure(const std::string& path, int levels, const Common& o, const std::vector<std::string>& args) {
    auto [g, dg] = load_graph(path);
    SpectralModel m = make_model(g);
    CsvWriter csv({"cylinder", "measure", "children_sum", "cesaro_state"});
    ojson rows = ojson::array();
    double worst = 0;
    auto out = g.out_edges();
    for (int n = 1; n <= o.depth; ++n)
        for (const auto& w : all_paths(g, n)) {
            double mu = spectral_measure(m, w);
            double kids = 0;
            for (int e : out[g.edges[w.back()].range]) {
                auto c = w;
                c.push_back(e);
                kids += spectral_measure(m, c);
            }
            worst = std::max(worst, std::fabs(kids - mu));
            double st = state_cesaro(m, cylinder_indicator(g, w), levels).value;
            csv.row({join_ids(g, w), fmt_double(mu), fmt_double(kids), fmt_double(st)});
            rows.push_back({{"cylinder", word_ids(g, w)}, {"measure", mu}, {"children_sum", kids},
                            {"cesaro_state", st}});
        }
    if (o.format == "csv") {
        emit(o, csv.str());
    } else {
        ojson rep = make_report("measure", args, dg);
        rep["results"]["cylinders"] = rows;
        rep["results"]["additivity_error"] = worst;
        rep["results"]["cesaro_levels"] = levels;
        emit_report(o, rep);
    }
    return 0;
}

int cmd_distance(const std::string& path, const std::string& pairs_path, bool oracle, const Common& o,
                 const std::vector<std::string>& args) {
    auto [g, dg] = load_graph(path);
    std::string ptext = read_file(pairs_path);
    nlohmann::json pj;
    try {
        pj = nlohmann::json::parse(ptext);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::Parse, pairs_path + ": " + e.what());
    }
    auto pairs = parse_pairs(g, pj);
    HDistance hd(g);
    std::vector<std::string> header{"x", "y", "distance", "tail_bound", "n_xy", "c_xy"};
    if (oracle) {
        header.push_back("oracle");
        header.push_back("difference");
    }
    CsvWriter csv(header);
    ojson rows = ojson::array();
    bool mismatch = false;
    for (const auto& [x, y] : pairs) {
        auto d = connes_distance(g, hd, x, y, o.depth);
        std::vector<std::string> row{join_ids(g, x.edges), join_ids(g, y.edges), fmt_double(d.value),
                                     fmt_double(d.tail_bound), std::to_string(d.n_xy), std::to_string(d.c_xy)};
        ojson jr{{"x", word_ids(g, x.edges)}, {"y", word_ids(g, y.edges)}, {"distance", d.value},
                 {"tail_bound", d.tail_bound}, {"n_xy", d.n_xy}, {"c_xy", d.c_xy}};
        if (oracle) {
            double od = geodesic_oracle(g, x, y, o.depth);
            double diff = std::fabs(od - d.value);
            if (diff > d.tail_bound + 1e-12) mismatch = true;
            row.push_back(fmt_double(od));
            row.push_back(fmt_double(diff));
            jr["oracle"] = od;
            jr["difference"] = diff;
        }
        csv.row(row);
        rows.push_back(jr);
    }
    if (o.format == "csv") {
        emit(o, csv.str());
    } else {
        ojson rep = make_report("distance", args, dg);
        rep["results"]["depth"] = o.depth;
        rep["results"]["pairs"] = rows;
        emit_report(o, rep);
    }
    if (mismatch) {
        std::cerr << "error: closed formula and oracle differ beyond the tail bound\n";
        return kExitNumeric;
    }
    return 0;
}

int cmd_form(const std::string& path, const std::vector<int>& ks, int samples, const Common& o,
             const std::vector<std::string>& args) {
    auto [g, dg] = load_graph(path);
    ojson rep = make_report("form", args, dg);
    CsvWriter csv({"k", "n", "q_n"});
    ojson fam = ojson::array();
    for (int k : ks) {
        CircleTrigObs f{{{k, 1.0}}};
        auto fr = q_limit(g, f, f, o.depth);
        ojson vals = ojson::array();
        for (size_t n = 0; n < fr.values.size(); ++n) {
            vals.push_back(fr.values[n].real());
            csv.row({std::to_string(k), std::to_string(n + 1), fmt_double(fr.values[n].real())});
        }
        fam.push_back({{"k", k},
                       {"values", vals},
                       {"limit", fr.limit.real()},
                       {"converged", fr.converged},
                       {"diverging", fr.diverging},
                       {"target", std::pow(2 * M_PI * k, 2)}});
    }
    rep["results"]["circle_trig"] = fam;

    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> u(-0.5, 1.5);
    int cdepth = 3, passed = 0;
    auto words = all_paths(g, cdepth);
    for (int s = 0; s < samples; ++s) {
        CylinderObs c{cdepth, {}};
        for (const auto& w : words) c.table[w] = u(rng);
        if (markov_check(g, c, cdepth, o.eps)) ++passed;
    }
    rep["results"]["markov"] = {{"samples", samples}, {"passed", passed}, {"eps", o.eps}};
    if (o.format == "csv") emit(o, csv.str());
    else emit_report(o, rep);
    return 0;
}

int cmd_telescope(const std::string& path, int p, int samples, const Common& o,
                  const std::vector<std::string>& args) {
    auto [g, dg] = load_graph(path);
    BratteliGraph gp = telescope(g, p);
    ojson rep = make_report("telescope", args, dg);
    auto& res = rep["results"];
    res["p"] = p;
    res["s0"] = spectral_dimension(g);
    res["s0_telescoped"] = spectral_dimension(gp);
    auto lc = telescoping_lipschitz_check(g, p, samples, o.depth, o.seed);
    res["lipschitz"] = {{"samples", lc.samples}, {"ratio_min", lc.c_low}, {"ratio_max", lc.c_high},
                        {"bound_low", lc.bound_low}, {"bound_high", lc.bound_high}, {"pass", lc.all_pass}};
    res["graph"] = graph_to_json(gp);
    emit_report(o, rep);
    return lc.all_pass ? 0 : kExitNumeric;
}

FieldElement parse_beta(const Substitution1D& sub, const std::string& s) {
    std::vector<mpq_class> q;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            mpq_class v(tok);
            v.canonicalize();
            q.push_back(v);
        } catch (const std::invalid_argument&) {
            throw Error(ErrorCode::Parse, "bad rational '" + tok + "' in beta");
        }
    }
    if (q.empty()) throw Error(ErrorCode::Parse, "empty beta");
    return FieldElement(sub.field, q);
}

struct LoadedRules {
    Substitution1D sub;
    std::string digest;
};

LoadedRules load_substitution(const std::string& path) {
    std::string text = read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::Parse, path + ": " + e.what());
    }
    return {build_substitution(parse_rules(j)), digest(text)};
}

ojson pisot_json(const PisotData& pd) {
    ojson mp = ojson::array();
    for (const auto& c : pd.mp.coeffs) mp.push_back(c.get_str());
    ojson conj = ojson::array();
    for (const auto& c : pd.conjugates) conj.push_back(complex_json(c));
    return {{"theta", pd.theta}, {"minimal_polynomial", mp}, {"conjugates", conj}, {"J", pd.J},
            {"L", pd.L}, {"pisot", pd.pisot}, {"unimodular", pd.unimodular}, {"phases", pd.phases}};
}

int cmd_pisot(const std::string& path, const std::vector<std::string>& betas, const Common& o,
              const std::vector<std::string>& args) {
    auto [sub, dg] = load_substitution(path);
    auto dp = dirichlet_parameters(sub, o.kmax);
    auto geo = horizontal_geometry(sub);
    const auto& g = sub.graph;
    ojson rep = make_report("pisot", args, dg);
    auto& res = rep["results"];
    res["alphabet"] = sub.rules.alphabet;
    res["field"] = pisot_json(sub.pisot);
    res["rho_tr"] = dp.rho_tr;
    res["rho_lg"] = dp.rho_lg;
    ojson checks = ojson::array();
    for (const auto& c : dp.checks)
        checks.push_back({{"resonant", c.resonant}, {"k", c.k}, {"k_prime", c.k_prime}, {"min_gap", c.min_gap}});
    res["nonresonance"] = {{"verdict", dp.verdict}, {"min_gap", dp.min_gap}, {"kmax", o.kmax}, {"checks", checks}};
    ojson lens = ojson::array(), freqs = ojson::array();
    for (int v = 0; v < sub.num_letters(); ++v) {
        lens.push_back(field_json(sub.length[v]));
        freqs.push_back(field_json(sub.freq[v]));
    }
    res["lengths"] = lens;
    res["frequencies"] = freqs;
    ojson trv = ojson::array(), lgv = ojson::array();
    for (const auto& rv : geo.tr)
        trv.push_back({{"pair", {g.edges[rv.pair.from].id, g.edges[rv.pair.to].id}}, {"depth", rv.depth},
                       {"r", field_json(rv.r)}});
    for (const auto& mv : geo.lg)
        lgv.push_back({{"pair", {g.edges[mv.pair.from].id, g.edges[mv.pair.to].id}}, {"a", field_json(mv.a)}});
    res["return_vectors"] = trv;
    res["microtile_vectors"] = lgv;
    res["c_tr"] = field_json(geo.c_tr);
    res["c_lg"] = field_json(geo.c_lg);
    res["K"] = field_json(geo.K);
    CsvWriter csv({"beta", "delta_tr", "delta_lg"});
    ojson table = ojson::array();
    for (const auto& b : betas) {
        FieldElement beta = parse_beta(sub, b);
        double dtr = laplacian_eigenvalue(sub, geo, beta, Direction::Transversal);
        double dlg = laplacian_eigenvalue(sub, geo, beta, Direction::Longitudinal);
        csv.row({b, fmt_double(dtr), fmt_double(dlg)});
        table.push_back({{"beta", field_json(beta)}, {"delta_tr", dtr}, {"delta_lg", dlg}});
    }
    res["eigenvalues"] = table;
    rep["warnings"].push_back("pure point dynamical spectrum is assumed, not verified");
    if (o.format == "csv") emit(o, csv.str());
    else emit_report(o, rep);
    return 0;
}

int cmd_omega(const std::string& path, double rho_tr, double rho_lg, double tmin, double tmax, int points,
              const Common& o, const std::vector<std::string>& args) {
    auto [sub, dg] = load_substitution(path);
    ojson rep = make_report("omega", args, dg);
    if (std::isnan(rho_tr) || std::isnan(rho_lg)) {
        auto dp = dirichlet_parameters(sub, o.kmax);
        if (std::isnan(rho_tr)) rho_tr = dp.rho_tr;
        if (std::isnan(rho_lg)) rho_lg = dp.rho_lg;
    }
    auto om = omega_triple(sub, rho_tr, rho_lg);
    auto hc = omega_heat_check(om, tmin, tmax, points);
    auto& res = rep["results"];
    res["theta"] = sub.theta;
    res["rho_tr"] = rho_tr;
    res["rho_lg"] = rho_lg;
    res["s_tr"] = om.s_tr;
    res["s_lg"] = om.s_lg;
    res["s0"] = om.s0;
    res["s0_slope_fit"] = hc.slope_s0;
    res["heat_coefficient"] = hc.heat_coefficient;
    res["residue_positive"] = hc.positive;
    emit_report(o, rep);
    return 0;
}

int exit_code(ErrorCode c) {
    switch (c) {
    case ErrorCode::NotPisot:
    case ErrorCode::IrrationalityViolation:
    case ErrorCode::NotDiagonalizable:
        return kExitDomain;
    case ErrorCode::DisconnectedH:
        return kExitStructural;
    case ErrorCode::InsufficientDecay:
    case ErrorCode::Unreachable:
    case ErrorCode::NoMeeting:
    case ErrorCode::ParameterMismatch:
        return kExitNumeric;
    default:
        return kExitValidation;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral triples of stationary Bratteli diagrams and substitution tilings"};
    app.require_subcommand(1);
    std::vector<std::string> args(argv + 1, argv + argc);

    std::string spec, pairs, rules;
    Common oa, oz, oh, om, od, of, ot, op, oo;
    double re = std::nan(""), im = 0, tmin = 1e-8, tmax = 1e-2;
    int points = 25, K = 40, levels = 30, samples = 50, p = 2;
    bool oracle = false;
    std::vector<int> ks{1, 2, 3, 4};
    std::vector<std::string> betas{"1"};
    double rho_tr = std::nan(""), rho_lg = std::nan("");

    auto* analyze = app.add_subcommand("analyze", "Primitivity, eigen data, poles, residues, measure table");
    analyze->add_option("spec", spec, "Graph spec (JSON)")->required()->check(CLI::ExistingFile);
    add_common(analyze, oa, 3, 2, 1e-15);

    auto* zeta = app.add_subcommand("zeta", "Zeta function: poles, closed form and series");
    zeta->add_option("spec", spec)->required()->check(CLI::ExistingFile);
    zeta->add_option("--re", re, "Real part of z");
    zeta->add_option("--im", im, "Imaginary part of z");
    add_common(zeta, oz, 200, 2, 1e-15);

    auto* heat = app.add_subcommand("heat", "Heat trace sweep: direct sum vs expansion");
    heat->add_option("spec", spec)->required()->check(CLI::ExistingFile);
    heat->add_option("--tmin", tmin);
    heat->add_option("--tmax", tmax);
    heat->add_option("--points", points);
    heat->add_option("--K", K, "Fourier cutoff of the periodic functions");
    add_common(heat, oh, 0, 0, 1e-15);

    auto* measure = app.add_subcommand("measure", "Spectral measure of cylinders and their Cesaro states");
    measure->add_option("spec", spec)->required()->check(CLI::ExistingFile);
    measure->add_option("--levels", levels, "Levels of the Cesaro mean");
    add_common(measure, om, 3, 0, 1e-15);

    auto* distance = app.add_subcommand("distance", "Connes distances for a list of word pairs");
    distance->add_option("spec", spec)->required()->check(CLI::ExistingFile);
    distance->add_option("pairs", pairs, "Pairs file (JSON)")->required()->check(CLI::ExistingFile);
    distance->add_flag("--oracle", oracle, "Cross-check with the shortest-path oracle");
    add_common(distance, od, 12, 0, 1e-15);

    auto* form = app.add_subcommand("form", "Quadratic forms q_n on circle harmonics and the Markov check");
    form->add_option("spec", spec)->required()->check(CLI::ExistingFile);
    form->add_option("--k", ks, "Harmonics");
    form->add_option("--samples", samples, "Random cylinder functions for the Markov check");
    add_common(form, of, 20, 0, 1e-3);

    auto* tele = app.add_subcommand("telescope", "Telescoped graph and the Lipschitz sandwich");
    tele->add_option("spec", spec)->required()->check(CLI::ExistingFile);
    tele->add_option("--p", p)->check(CLI::PositiveNumber);
    tele->add_option("--samples", samples);
    add_common(tele, ot, 12, 0, 1e-15);

    auto* pisot = app.add_subcommand("pisot", "Pisot data, Dirichlet parameters and Laplacian eigenvalues");
    pisot->add_option("rules", rules, "Substitution rules (JSON)")->required()->check(CLI::ExistingFile);
    pisot->add_option("--beta", betas, "beta as comma-separated rationals in powers of theta");
    add_common(pisot, op, 0, 10000, 1e-15);

    auto* omega = app.add_subcommand("omega", "Tensor spectral triple of the tiling space");
    omega->add_option("rules", rules)->required()->check(CLI::ExistingFile);
    omega->add_option("--rho-tr", rho_tr);
    omega->add_option("--rho-lg", rho_lg);
    omega->add_option("--tmin", tmin);
    omega->add_option("--tmax", tmax);
    omega->add_option("--points", points);
    add_common(omega, oo, 0, 10000, 1e-15);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitValidation;
    }

    try {
        if (*analyze) return cmd_analyze(spec, oa, args);
        if (*zeta) return cmd_zeta(spec, re, im, oz, args);
        if (*heat) return cmd_heat(spec, tmin, tmax, points, K, oh, args);
        if (*measure) return cmd_measure(spec, levels, om, args);
        if (*distance) return cmd_distance(spec, pairs, oracle, od, args);
        if (*form) return cmd_form(spec, ks, samples, of, args);
        if (*tele) return cmd_telescope(spec, p, samples, ot, args);
        if (*pisot) return cmd_pisot(rules, betas, op, args);
        if (*omega) {
            if (!omega->count("--tmin")) tmin = 1e-30;
            if (!omega->count("--tmax")) tmax = 1e-10;
            if (!omega->count("--points")) points = 60;
            return cmd_omega(rules, rho_tr, rho_lg, tmin, tmax, points, oo, args);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.code());
    }
    return 0;
}
