#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "binaryweyl/classifier.hpp"
#include "binaryweyl/curvature.hpp"
#include "binaryweyl/errors.hpp"
#include "binaryweyl/exact_verify.hpp"
#include "binaryweyl/metric.hpp"
#include "binaryweyl/paper_formulas.hpp"
#include "binaryweyl/report.hpp"
#include "binaryweyl/sampling.hpp"

namespace {

using namespace bw;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::vector<Rational> parse_point_list(const std::string& text) {
    std::vector<Rational> vals;
    std::string cur;
    for (char c : text + ",") {
        if (c == ',') {
            if (cur.empty()) throw SpecError("empty component in point list");
            vals.push_back(Rational::parse(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return vals;
}

Point4 to_point4(const std::vector<Rational>& vals) {
    if (vals.size() != 4) throw SpecError("--point needs four comma-separated values");
    Point4 p;
    for (int i = 0; i < 4; ++i) p[i] = vals[i].to_double();
    return p;
}

Point4q to_point4q(const std::vector<Rational>& vals) {
    if (vals.size() != 4) throw SpecError("--point needs four comma-separated values");
    return {vals[0], vals[1], vals[2], vals[3]};
}

std::string point_key(const Point4& p) {
    std::string s;
    for (int i = 0; i < 4; ++i) s += (i ? "," : "") + format_double(p[i]);
    return s;
}

void print_report(const std::vector<ReportRow>& rows, bool machine) {
    std::cout << emit_report(rows, machine ? ReportMode::Machine : ReportMode::Human);
}

int cmd_curvature(const std::string& spec_path, const std::string& point_text, bool exact,
                  bool machine) {
    MetricSpec spec = load_bwm_file(spec_path);
    auto vals = parse_point_list(point_text);
    ReportRow row{{"check", "curvature"}, {"spec", spec.name}};
    if (exact) {
        if (!spec.exact_evaluable())
            throw DomainError("spec '" + spec.name + "' is not exact-evaluable");
        Point4q p = to_point4q(vals);
        auto b = curvature<Rational>(spec, p);
        Rational rmax, wmax;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l) {
                        Rational r = b.riemann_down[i][j][k][l].abs();
                        if (rmax < r) rmax = r;
                        Rational w = b.weyl_down[i][j][k][l].abs();
                        if (wmax < w) wmax = w;
                    }
        std::string pt;
        for (int i = 0; i < 4; ++i) pt += (i ? "," : "") + p[i].str();
        row.push_back({"point", pt});
        row.push_back({"scalar", b.scalar.str()});
        row.push_back({"riemann_max", rmax.str()});
        row.push_back({"weyl_max", wmax.str()});
        for (const auto& pr : kPairs)
            row.push_back({"w" + std::to_string(pr[0] + 1) + std::to_string(pr[1] + 1),
                           b.weyl_mixed22(pr[0], pr[1]).str()});
        print_report({row}, machine);
        return kExitPass;
    }
    Point4 p = to_point4(vals);
    auto adm = admissible(spec, p);
    if (!adm.ok) throw DomainError("inadmissible point: " + adm.reason);
    auto b = curvature(spec, p);
    double rmax = 0, wmax = 0, ricmax = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            ricmax = std::fmax(ricmax, std::fabs(b.ricci[i][j]));
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    rmax = std::fmax(rmax, std::fabs(b.riemann_down[i][j][k][l]));
                    wmax = std::fmax(wmax, std::fabs(b.weyl_down[i][j][k][l]));
                }
        }
    row.push_back({"point", point_key(p)});
    row.push_back({"scalar", format_double(b.scalar)});
    row.push_back({"riemann_max", format_double(rmax)});
    row.push_back({"ricci_max", format_double(ricmax)});
    row.push_back({"weyl_max", format_double(wmax)});
    for (const auto& pr : kPairs)
        row.push_back({"w" + std::to_string(pr[0] + 1) + std::to_string(pr[1] + 1),
                       format_double(b.weyl_mixed22(pr[0], pr[1]))});
    print_report({row}, machine);
    return kExitPass;
}

int cmd_classify(const std::string& spec_path, int samples, std::uint64_t seed, double tol,
                 bool machine) {
    MetricSpec spec = load_bwm_file(spec_path);
    SamplePlan plan{samples, seed};
    std::vector<ReportRow> rows;
    bool all_pass = true;

    auto pts = sample_points(spec, plan.samples, plan.seed);
    SignatureProfile sig = signature(spec, pts.front());
    bool uniform = true;
    for (const auto& p : pts)
        if (signature(spec, p).pattern() != sig.pattern()) { uniform = false; break; }
    rows.push_back(ReportRow{{"check", "signature"},
                    {"spec", spec.name},
                    {"pattern", sig.pattern()},
                    {"tag", signature_tag_name(sig.tag)},
                    {"uniform", uniform ? "true" : "false"},
                    {"samples", std::to_string(static_cast<int>(pts.size()))}});

    Verdict cf = conformal_flatness(spec, plan, tol);
    all_pass = all_pass && cf.pass;
    rows.push_back(ReportRow{{"check", "conformal_flatness"},
                    {"spec", spec.name},
                    {"pass", cf.pass ? "true" : "false"},
                    {"max_residual", format_double(cf.max_residual)},
                    {"samples", std::to_string(cf.samples_used)}});

    if (spec.is_iv_family())
        rows.push_back(ReportRow{{"check", "lemma_case"},
                        {"spec", spec.name},
                        {"case", lemma_match_name(lemma_case(spec))}});

    Verdict t1 = table1_check(spec, plan, std::fmin(tol, 1e-9));
    rows.push_back(ReportRow{{"check", "table1"},
                    {"spec", spec.name},
                    {"pass", t1.pass ? "true" : "false"},
                    {"max_residual", format_double(t1.max_residual)},
                    {"samples", std::to_string(t1.samples_used)}});

    // Petrov is only meaningful once C^k_ikj vanishes
    ReportRow pet{{"check", "petrov"}, {"spec", spec.name}};
    if (t1.pass) {
        auto b = curvature(spec, pts.front());
        double scale = 0;
        for (const auto& pr : kPairs)
            scale = std::fmax(scale, std::fabs(b.weyl_mixed22(pr[0], pr[1])));
        std::array<double, 3> w{b.weyl_mixed22(0, 1), b.weyl_mixed22(0, 2),
                                b.weyl_mixed22(0, 3)};
        PetrovResult pr = petrov_tag(w, sig, std::fmax(tol, 1e-9));
        pet.push_back({"tag", petrov_tag_name(pr.tag)});
        pet.push_back({"advisory", pr.advisory ? "true" : "false"});
        (void)scale;
    } else {
        pet.push_back({"tag", "n/a"});
        pet.push_back({"advisory", "true"});
    }
    rows.push_back(pet);

    print_report(rows, machine);
    return all_pass ? kExitPass : kExitCheckFailed;
}

int cmd_flatness(const std::string& spec_path, int samples, std::uint64_t seed, double tol,
                 bool machine) {
    MetricSpec spec = load_bwm_file(spec_path);
    Verdict v = flatness(spec, SamplePlan{samples, seed}, tol);
    print_report({{{"check", "flatness"},
                   {"spec", spec.name},
                   {"pass", v.pass ? "true" : "false"},
                   {"max_residual", format_double(v.max_residual)},
                   {"samples", std::to_string(v.samples_used)}}},
                 machine);
    return v.pass ? kExitPass : kExitCheckFailed;
}

int cmd_verify(const std::string& identity, const std::string& m_text, int points,
               std::uint64_t seed, const std::string& mutate, bool machine) {
    auto name = identity_from_name(identity);
    if (!name) throw SpecError("unknown identity '" + identity + "'");
    IdentityCase c;
    c.name = *name;
    c.m = Rational::parse(m_text);
    c.trials = points;
    c.seed = seed;
    if (!mutate.empty()) {
        auto mt = mutation_from_name(mutate);
        if (!mt) throw SpecError("unknown mutation '" + mutate + "'");
        c.mutation = *mt;
    }
    IdentityOutcome out = run_identity(c);
    ReportRow row{{"identity", identity},
                  {"m", c.m.str()},
                  {"trials", std::to_string(out.trials_run)},
                  {"status", out.pass ? "pass" : "fail"}};
    if (c.mutation != MutationTag::None) row.push_back({"mutation", mutation_name(c.mutation)});
    if (!out.pass) row.push_back({"failure", out.failure});
    print_report({row}, machine);
    return out.pass ? kExitPass : kExitCheckFailed;
}

int cmd_scan(const std::string& spec_path, const std::string& grid_text, bool machine) {
    MetricSpec spec = load_bwm_file(spec_path);
    auto vals = parse_point_list(grid_text);
    if (vals.size() != 4) throw SpecError("--grid needs four comma-separated counts");
    std::array<int, 4> grid;
    for (int i = 0; i < 4; ++i) grid[i] = static_cast<int>(vals[i].to_long());
    auto rows = scan_report(spec, grid);
    std::vector<ReportRow> rep;
    for (const auto& r : rows) {
        ReportRow row{{"check", "scan"}, {"spec", spec.name}, {"point", point_key(r.p)}};
        if (!r.admissible) {
            row.push_back({"status", "skip"});
            row.push_back({"reason", r.skip_reason});
        } else {
            row.push_back({"status", "ok"});
            row.push_back({"pattern", r.sig.pattern()});
            row.push_back({"tag", signature_tag_name(r.sig.tag)});
            row.push_back({"weyl_residual", format_double(r.weyl_residual)});
            row.push_back({"riemann_residual", format_double(r.riemann_residual)});
        }
        rep.push_back(std::move(row));
    }
    print_report(rep, machine);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"binary metric Weyl verifier"};
    app.require_subcommand(1);

    std::string spec_path, point_text, grid_text, identity, m_text = "0", mutate;
    int samples = 100;
    int points = 100;
    std::uint64_t seed = 42;
    double tol = 1e-8;
    bool machine = false, exact = false;

    auto* curv = app.add_subcommand("curvature", "curvature tensors at a point");
    curv->add_option("spec", spec_path, "metric spec file (.bwm)")->required();
    curv->add_option("--point", point_text, "evaluation point a,b,c,d")->required();
    curv->add_flag("--exact", exact, "exact rational evaluation");
    curv->add_flag("--machine", machine, "machine-readable output");

    auto* cls = app.add_subcommand("classify", "signature, flatness and family verdicts");
    cls->add_option("spec", spec_path)->required();
    cls->add_option("--samples", samples, "sample count");
    cls->add_option("--seed", seed, "sampling seed");
    cls->add_option("--tol", tol, "verdict tolerance");
    cls->add_flag("--machine", machine);

    auto* flat = app.add_subcommand("flatness", "riemann_norm over sampled points");
    flat->add_option("spec", spec_path)->required();
    flat->add_option("--samples", samples);
    flat->add_option("--seed", seed);
    flat->add_option("--tol", tol);
    flat->add_flag("--machine", machine);

    auto* ver = app.add_subcommand("verify", "exact rational identity testing");
    ver->add_option("identity", identity,
                    "bracket|detM|L-lemma-a|L-lemma-b|flatness-elliptic|"
                    "lambda-cyclic-iv|derivative-identity-iv")
        ->required();
    ver->add_option("--m", m_text, "family parameter m (rational)");
    ver->add_option("--points", points, "trial count");
    ver->add_option("--seed", seed);
    ver->add_option("--mutate", mutate, "named closed-form mutation (negative control)");
    ver->add_flag("--exact", exact, "accepted for symmetry; verify is always exact");
    ver->add_flag("--machine", machine);

    auto* scan = app.add_subcommand("scan", "grid report over the declared boxes");
    scan->add_option("spec", spec_path)->required();
    scan->add_option("--grid", grid_text, "grid counts n1,n2,n3,n4")->required();
    scan->add_flag("--machine", machine);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(curv)) return cmd_curvature(spec_path, point_text, exact, machine);
        if (app.got_subcommand(cls)) return cmd_classify(spec_path, samples, seed, tol, machine);
        if (app.got_subcommand(flat)) return cmd_flatness(spec_path, samples, seed, tol, machine);
        if (app.got_subcommand(ver))
            return cmd_verify(identity, m_text, points, seed, mutate, machine);
        if (app.got_subcommand(scan)) return cmd_scan(spec_path, grid_text, machine);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
