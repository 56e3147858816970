// prs — exact Poisson cohomology of ruled surfaces over an elliptic curve.
//
// Subcommands: table, cohomology, obstruction, verify-family, bracket.
// All arithmetic is exact rational; identical seeds give byte-identical
// output.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "prs/expr.hpp"
#include "prs/table.hpp"

using nlohmann::json;
using namespace prs;

namespace {

struct FamilyFlags {
    std::string family;
    int n = 1;
    std::string coeffs;
    std::string t0 = "2/3";
    std::string g2 = "3/7";
    std::string g3 = "5/2";
};

void add_family_flags(CLI::App* cmd, FamilyFlags& ff) {
    cmd->add_option("--family", ff.family, "one of s0|twisted|sn|a0|am1")->required();
    cmd->add_option("--n", ff.n, "degree for the sn family (default 1)");
    cmd->add_option("--coeffs", ff.coeffs, "Poisson coefficients, e.g. A=1/2,B=0,C=3 or a0=0,c0=1");
    cmd->add_option("--t0", ff.t0, "twist parameter for the twisted family (default 2/3)");
    cmd->add_option("--g2", ff.g2, "elliptic invariant g2 (default 3/7)");
    cmd->add_option("--g3", ff.g3, "elliptic invariant g3 (default 5/2)");
}

SurfaceFamily make_family(const FamilyFlags& ff) {
    EllipticParams ell(parse_rat(ff.g2), parse_rat(ff.g3));
    if (ff.family == "s0") return SurfaceFamily::s0(ell);
    if (ff.family == "twisted") return SurfaceFamily::twisted(parse_rat(ff.t0), ell);
    if (ff.family == "sn") return SurfaceFamily::sn(ff.n, ell);
    if (ff.family == "a0") return SurfaceFamily::a0(ell);
    if (ff.family == "am1") return SurfaceFamily::am1(ell);
    throw invalid_parameters_error("unknown family '" + ff.family + "' (use s0|twisted|sn|a0|am1)");
}

std::vector<std::string> coeff_names(const SurfaceFamily& fam) {
    switch (fam.kind) {
        case FamilyKind::S0: return {"A", "B", "C"};
        case FamilyKind::Twisted: return {"A"};
        case FamilyKind::Sn: {
            std::vector<std::string> names{"a0"};
            for (int i = 0; i < fam.n; ++i) names.push_back("c" + std::to_string(i));
            return names;
        }
        case FamilyKind::A0: return {"a0"};
        case FamilyKind::Am1: return {};
    }
    return {};
}

PoissonStructure parse_structure(const SurfaceFamily& fam, const std::string& coeffs) {
    const auto names = coeff_names(fam);
    std::map<std::string, Rat> given;
    std::stringstream ss(coeffs);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw invalid_parameters_error("coefficient item '" + item + "' is not name=value");
        given[item.substr(0, eq)] = parse_rat(item.substr(eq + 1));
    }
    std::string expected;
    for (const auto& n : names) expected += (expected.empty() ? "" : ",") + n;
    for (const auto& [k, v] : given) {
        if (std::find(names.begin(), names.end(), k) == names.end())
            throw invalid_parameters_error("unknown coefficient '" + k + "'; this family takes: " +
                                           (expected.empty() ? "(none)" : expected));
    }
    std::vector<Rat> vals;
    for (const auto& n : names) {
        auto it = given.find(n);
        if (it == given.end())
            throw invalid_parameters_error("missing coefficient '" + n + "'; this family takes: " + expected);
        vals.push_back(it->second);
    }
    return PoissonStructure::make(fam, vals);
}

std::string matrix_str(const RatMatrix& m) {
    std::string out;
    for (int i = 0; i < m.rows(); ++i) {
        out += "  [";
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out += ", ";
            out += rat_str(m.at(i, j));
        }
        out += "]\n";
    }
    if (m.rows() == 0) out = "  [] (" + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")\n";
    return out;
}

std::string vec_str(const std::vector<Rat>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += rat_str(v[i]);
    }
    return out + ")";
}

std::string slot_section_str(const SlotSeries& s, Sheaf sheaf) {
    static const char* theta_gen[4] = {"d_xi", "xi^1 d_xi", "xi^2 d_xi", "d_u"};
    static const char* w2_gen[3] = {"d_xi^d_u", "xi^1 d_xi^d_u", "xi^2 d_xi^d_u"};
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i].is_zero_in_window()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + s[i].str() + ") " + (sheaf == Sheaf::Theta ? theta_gen[i] : w2_gen[i]);
    }
    return out.empty() ? "0" : out;
}

json row_json(const TableRow& r) {
    json j;
    j["family"] = r.family_label;
    j["class"] = r.class_label;
    j["n"] = r.n ? json(*r.n) : json(nullptr);
    j["hp"] = {r.hp0, r.hp1, r.hp2};
    j["verdict"] = verdict_str(r.verdict);
    j["certified"] = r.certified;
    return j;
}

int run_table(const RunConfig& cfg, const std::string& golden_path) {
    auto rows = cmd_table(cfg);
    if (cfg.format == "json") {
        json out;
        out["rows"] = json::array();
        for (const auto& r : rows) out["rows"].push_back(row_json(r));
        out["config"] = {{"n_max", cfg.n_max},
                         {"samples", cfg.samples},
                         {"seed", cfg.seed},
                         {"format", cfg.format}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "| family | Poisson structure | n | HP^0 | HP^1 | HP^2 | verdict | certified | matches |\n";
        std::cout << "|---|---|---|---|---|---|---|---|---|\n";
        for (const auto& r : rows) {
            std::cout << "| " << r.family_label << " | " << r.class_label << " | "
                      << (r.n ? std::to_string(*r.n) : std::string("-")) << " | " << r.hp0 << " | "
                      << r.hp1 << " | " << r.hp2 << " | " << verdict_str(r.verdict) << " | "
                      << (r.certified ? "yes" : "NO") << " | " << (r.matches() ? "yes" : "NO")
                      << " |\n";
        }
    }
    bool ok = table_ok(rows);
    if (!ok) {
        for (const auto& r : rows) {
            if (!r.matches())
                std::cerr << "MISMATCH: " << r.family_label << " / " << r.class_label
                          << (r.n ? " n=" + std::to_string(*r.n) : "") << ": got (" << r.hp0 << ","
                          << r.hp1 << "," << r.hp2 << "," << verdict_str(r.verdict) << "), expected ("
                          << r.expected_hp0 << "," << r.expected_hp1 << "," << r.expected_hp2 << ","
                          << verdict_str(r.expected_verdict) << ")\n";
            if (!r.certified)
                std::cerr << "UNCERTIFIED: " << r.family_label << " / " << r.class_label << "\n";
        }
    }
    if (!golden_path.empty()) {
        std::ifstream in(golden_path);
        if (!in) {
            std::cerr << "cannot open golden file: " << golden_path << "\n";
            return 3;
        }
        json want = json::parse(in);
        json got = json::array();
        for (const auto& r : rows) got.push_back(row_json(r));
        if (want.contains("rows") && want["rows"] == got) {
            std::cout << "golden: match\n";
        } else {
            std::cerr << "golden: MISMATCH against " << golden_path << "\n";
            return 4;
        }
    }
    return ok ? 0 : 1;
}

int run_cohomology(const FamilyFlags& ff, const RunConfig& cfg) {
    SurfaceFamily fam = make_family(ff);
    PoissonStructure P = parse_structure(fam, ff.coeffs);
    Truncation tr = cfg.truncation_for(fam);
    SurfaceCohomology ctx(fam, tr);
    auto st = stabilize(fam, Sheaf::Theta, tr);
    auto sw = stabilize(fam, Sheaf::Wedge2Theta, tr);

    std::cout << "family: " << fam.label() << "\nrow class: " << class_label(classify(P)) << "\n";
    std::cout << "truncation: M=" << tr.M << " N=" << tr.N << " K=" << tr.K << "\n\n";
    std::cout << "h0(Theta) = " << ctx.theta.h0_dim() << ", h1(Theta) = " << ctx.theta.h1_dim()
              << (st.certified ? "  (stabilization certified)" : "  (NOT certified)") << "\n";
    std::cout << "h0(Theta) basis (chart 0):\n";
    for (const auto& g : ctx.theta.h0_basis()) std::cout << "  " << g.chart0_str(Sheaf::Theta) << "\n";
    std::cout << "h1(Theta) representatives (overlap):\n";
    for (const auto& r : ctx.theta.h1_reps())
        std::cout << "  " << slot_section_str(r, Sheaf::Theta) << "\n";
    std::cout << "\nh0(w2Theta) = " << ctx.w2.h0_dim() << ", h1(w2Theta) = " << ctx.w2.h1_dim()
              << (sw.certified ? "  (stabilization certified)" : "  (NOT certified)") << "\n";
    std::cout << "h0(w2Theta) basis (chart 0):\n";
    for (const auto& g : ctx.w2.h0_basis()) std::cout << "  " << g.chart0_str(Sheaf::Wedge2Theta) << "\n";
    std::cout << "h1(w2Theta) representatives (overlap):\n";
    for (const auto& r : ctx.w2.h1_reps())
        std::cout << "  " << slot_section_str(r, Sheaf::Wedge2Theta) << "\n";

    auto pc = poisson_cohomology_on(P, ctx);
    std::cout << "\ninduced map on H0 (rows: h0(w2) basis, cols: h0(Theta) basis):\n"
              << matrix_str(pc.map_h0);
    std::cout << "induced map on H1 (rows: h1(w2) reps, cols: h1(Theta) reps):\n"
              << matrix_str(pc.map_h1);
    std::cout << "\nHP = (" << pc.hp0 << ", " << pc.hp1 << ", " << pc.hp2 << ")\n";
    return 0;
}

int run_obstruction(const FamilyFlags& ff, const RunConfig& cfg) {
    SurfaceFamily fam = make_family(ff);
    PoissonStructure P = parse_structure(fam, ff.coeffs);
    SurfaceCohomology ctx(fam, cfg.truncation_for(fam));
    auto w = obstruction_witness_on(P, ctx);
    if (!w) {
        std::cout << "none found (witness absence alone proves nothing; inconclusive)\n";
        return 0;
    }
    std::cout << "obstruction witness found:\n";
    std::cout << "  a = " << ctx.w2.h0_basis()[w->a_index].chart0_str(Sheaf::Wedge2Theta) << "\n";
    SlotSeries b(slot_count(Sheaf::Theta));
    for (std::size_t r = 0; r < ctx.theta.h1_reps().size(); ++r)
        b = slots_add(b, slots_scale(ctx.theta.h1_reps()[r], w->b_coords[r]));
    std::cout << "  b = " << slot_section_str(b, Sheaf::Theta) << "\n";
    std::cout << "  [a,b] class in h1(w2) reps = " << vec_str(w->bracket_class)
              << "  (outside the image of the induced H1 map)\n";
    return 0;
}

int run_verify_family(const FamilyFlags& ff, const RunConfig& cfg) {
    SurfaceFamily fam = make_family(ff);
    PoissonStructure P = parse_structure(fam, ff.coeffs);
    SurfaceCohomology ctx(fam, cfg.truncation_for(fam));
    auto F = registered_family_on(P, ctx);
    if (!F) {
        std::cout << "no registered analytic family for this coefficient class\n";
        return 2;
    }
    std::cout << "registered family: " << F->name() << "\nparameters:";
    for (const auto& [name, kind] : F->params) std::cout << " " << name;
    std::cout << "\n";
    bool wd = verify_lambda_welldefined(*F);
    std::cout << "Lambda well-defined across charts: " << (wd ? "true" : "FALSE") << "\n";
    auto pc = poisson_cohomology_on(P, ctx);
    KSMatrix ks = ks_matrix_on(*F, ctx);
    int r = rank(ks.m);
    std::cout << "Kodaira-Spencer matrix (rows: HP^1 basis, cols:";
    for (const auto& name : ks.param_names) std::cout << " " << name;
    std::cout << "):\n" << matrix_str(ks.m);
    std::cout << "KS rank " << r << "/" << pc.hp1 << (r == pc.hp1 ? "  (isomorphism)" : "") << "\n";
    return (wd && r == pc.hp1) ? 0 : 2;
}

int run_bracket(const FamilyFlags& ff, const std::string& lhs, const std::string& rhs, bool reduce,
                const RunConfig& cfg) {
    SurfaceFamily fam = make_family(ff);
    const Truncation tr = cfg.truncation_for(fam);
    const int top = tr.N;
    Bivector L = build_bivector(parse_field_expr(lhs), fam.elliptic, top);
    VectorField v = build_vector(parse_field_expr(rhs), fam.elliptic, top);
    Bivector br = schouten_bv(L, v, fam.twist());
    std::cout << "[L, v] = " << br.str() << "\n";
    if (reduce) {
        SurfaceCohomology ctx(fam, tr);
        auto cls = ctx.w2.reduce_class(slots_of(br));
        std::cout << "class in h1(w2Theta) representatives = " << vec_str(cls) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Poisson cohomology and deformation verdicts for ruled surfaces over an elliptic curve"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string golden;
    FamilyFlags ff;
    std::string lhs, rhs;
    bool reduce = false;

    auto add_trunc = [&cfg](CLI::App* cmd) {
        cmd->add_option("--trunc-m", [&cfg](const CLI::results_t& v) { cfg.M = std::stoi(v[0]); return true; },
                        "override pole depth M");
        cmd->add_option("--trunc-n", [&cfg](const CLI::results_t& v) { cfg.N = std::stoi(v[0]); return true; },
                        "override holomorphic order N");
        cmd->add_option("--trunc-k", [&cfg](const CLI::results_t& v) { cfg.K = std::stoi(v[0]); return true; },
                        "override elliptic cap K");
    };

    CLI::App* table = app.add_subcommand("table", "reproduce the reference verdict table");
    table->add_option("--n-max", cfg.n_max, "evaluate S_n rows for n = 1..n_max (default 6)");
    table->add_option("--samples", cfg.samples, "generic coefficient samples per row (default 3)");
    table->add_option("--seed", cfg.seed, "sampler seed (default 42)");
    table->add_option("--format", cfg.format, "md or json (default md)");
    table->add_option("--golden", golden, "diff the rows against a stored JSON table");
    add_trunc(table);

    CLI::App* coh = app.add_subcommand("cohomology", "sheaf and Poisson cohomology of one structure");
    add_family_flags(coh, ff);
    add_trunc(coh);

    CLI::App* obs = app.add_subcommand("obstruction", "search for a first-order obstruction witness");
    add_family_flags(obs, ff);
    add_trunc(obs);

    CLI::App* vf = app.add_subcommand("verify-family", "verify the registered analytic family");
    add_family_flags(vf, ff);
    add_trunc(vf);

    CLI::App* br = app.add_subcommand("bracket", "Schouten bracket of two field expressions");
    add_family_flags(br, ff);
    br->add_option("--lhs", lhs, "bivector expression, e.g. \"xi^1 d_xi^d_u\"")->required();
    br->add_option("--rhs", rhs, "vector expression, e.g. \"u1^-1 d_u\"")->required();
    br->add_flag("--reduce", reduce, "also print the reduced cohomology class");
    add_trunc(br);

    CLI11_PARSE(app, argc, argv);

    try {
        if (table->parsed()) {
            if (cfg.n_max < 1 || cfg.samples < 1)
                throw invalid_parameters_error("n_max and samples must be >= 1");
            if (cfg.format != "md" && cfg.format != "json")
                throw invalid_parameters_error("format must be md or json");
            return run_table(cfg, golden);
        }
        if (coh->parsed()) return run_cohomology(ff, cfg);
        if (obs->parsed()) return run_obstruction(ff, cfg);
        if (vf->parsed()) return run_verify_family(ff, cfg);
        if (br->parsed()) return run_bracket(ff, lhs, rhs, reduce, cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
