#include "binaryweyl/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "binaryweyl/errors.hpp"
#include "binaryweyl/paper_formulas.hpp"
#include "binaryweyl/sampling.hpp"

namespace bw {

const char* signature_tag_name(SignatureTag t) {
    switch (t) {
        case SignatureTag::Riemannian: return "Riemannian";
        case SignatureTag::Lorentzian: return "Lorentzian";
        case SignatureTag::Neutral: return "neutral";
    }
    return "?";
}

std::string SignatureProfile::pattern() const {
    std::string s;
    for (int v : signs) s += v > 0 ? '+' : '-';
    return s;
}

const char* lemma_match_name(LemmaMatch m) {
    switch (m) {
        case LemmaMatch::A: return "a";
        case LemmaMatch::B: return "b";
        case LemmaMatch::C: return "c";
        case LemmaMatch::D: return "d";
        case LemmaMatch::None: return "none";
    }
    return "?";
}

const char* petrov_tag_name(PetrovTag t) {
    switch (t) {
        case PetrovTag::O: return "O";
        case PetrovTag::D: return "D";
        case PetrovTag::I: return "I";
    }
    return "?";
}

std::vector<Point4> sample_points(const MetricSpec& spec, int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<Point4> pts;
    pts.reserve(n);
    long attempts = 0;
    const long max_attempts = 200L * std::max(n, 1) + 1000;
    while (static_cast<int>(pts.size()) < n) {
        if (++attempts > max_attempts)
            throw DomainError("no admissible points found in the declared boxes (" +
                              std::to_string(pts.size()) + "/" + std::to_string(n) +
                              " after " + std::to_string(attempts - 1) + " draws)");
        Point4 p;
        for (int i = 0; i < 4; ++i)
            p[i] = rng.uniform(spec.domain.box[i].lo, spec.domain.box[i].hi);
        if (admissible(spec, p).ok) pts.push_back(p);
    }
    return pts;
}

Point4q random_rational_point(std::uint64_t seed, std::uint64_t index, long lo, long hi) {
    SplitMix64 rng(seed * 0x9e3779b97f4a7c15ULL + index + 1);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Point4q p;
        bool ok = true;
        for (int i = 0; i < 4; ++i) {
            long den = rng.uniform_long(1, 64);
            long num = rng.uniform_long(lo * den, hi * den);
            p[i] = Rational(num, den);
        }
        for (int i = 0; i < 4 && ok; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (p[i] == p[j]) { ok = false; break; }
        if (ok) return p;
    }
    throw DomainError("could not draw a collision-free rational point");
}

SignatureProfile signature(const MetricSpec& spec, const Point4& p) {
    auto adm = admissible(spec, p);
    if (!adm.ok) throw DomainError("inadmissible point: " + adm.reason);
    SignatureProfile prof;
    int plus = 0;
    for (int i = 0; i < 4; ++i) {
        double g = eval(spec.component_expr(i), p);
        if (g == 0) throw DomainError("degenerate metric component " + std::to_string(i + 1));
        prof.signs[i] = g > 0 ? 1 : -1;
        plus += prof.signs[i] > 0;
    }
    if (plus == 0 || plus == 4)
        prof.tag = SignatureTag::Riemannian;
    else if (plus == 2)
        prof.tag = SignatureTag::Neutral;
    else
        prof.tag = SignatureTag::Lorentzian;
    return prof;
}

Verdict conformal_flatness(const MetricSpec& spec, const SamplePlan& plan, double tol) {
    Verdict v;
    v.kind = "conformal_flatness";
    auto pts = sample_points(spec, plan.samples, plan.seed);
    double worst = 0;
    for (const auto& p : pts) worst = std::fmax(worst, max_frame_weyl(curvature(spec, p)));
    v.max_residual = worst;
    v.samples_used = static_cast<int>(pts.size());
    v.pass = worst <= tol;
    v.details = "frame-normalized |Weyl| vs tol " + std::to_string(tol);
    return v;
}

Verdict flatness(const MetricSpec& spec, const SamplePlan& plan, double tol) {
    Verdict v;
    v.kind = "flatness";
    auto pts = sample_points(spec, plan.samples, plan.seed);
    double worst = 0;
    for (const auto& p : pts) worst = std::fmax(worst, riemann_norm(spec, p));
    v.max_residual = worst;
    v.samples_used = static_cast<int>(pts.size());
    v.pass = worst <= tol;
    v.details = "riemann_norm vs tol " + std::to_string(tol);
    return v;
}

namespace {

bool same_poly(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t k = 0; k < n; ++k) {
        Rational av = k < a.size() ? a[k] : Rational(0);
        Rational bv = k < b.size() ? b[k] : Rational(0);
        if (av != bv) return false;
    }
    return true;
}

int poly_degree(const std::vector<Rational>& a) {
    for (std::size_t k = a.size(); k-- > 0;)
        if (!a[k].is_zero()) return static_cast<int>(k);
    return -1;  // zero polynomial
}

}  // namespace

LemmaMatch lemma_case(const MetricSpec& spec) {
    if (!spec.is_iv_family())
        throw SpecError("lemma_case applies to case-iv / table1-iv specs only");
    if (spec.m == Rational(0)) return LemmaMatch::C;
    std::array<const std::vector<Rational>*, 4> polys{};
    for (int i = 0; i < 4; ++i) {
        if (!spec.F[i].poly) return LemmaMatch::None;  // structure unknown
        polys[i] = &*spec.F[i].poly;
    }
    if (spec.m == Rational(-1)) {
        Rational sum;
        for (int i = 0; i < 4; ++i) {
            if (poly_degree(*polys[i]) > 0) return LemmaMatch::None;
            sum += (*polys[i]).empty() ? Rational(0) : (*polys[i])[0];
        }
        return sum.is_zero() ? LemmaMatch::A : LemmaMatch::None;
    }
    bool shared = same_poly(*polys[0], *polys[1]) && same_poly(*polys[0], *polys[2]) &&
                  same_poly(*polys[0], *polys[3]);
    if (!shared) return LemmaMatch::None;
    int deg = poly_degree(*polys[0]);
    if (spec.m == Rational(-1, 2) && deg <= 2) return LemmaMatch::B;
    if (spec.m == Rational(1, 2) && deg <= 6) return LemmaMatch::D;
    return LemmaMatch::None;
}

Verdict table1_check(const MetricSpec& spec, const SamplePlan& plan, double tol) {
    Verdict v;
    v.kind = "table1";
    auto pts = sample_points(spec, plan.samples, plan.seed);
    double worst_c = 0, worst_l = 0;
    for (const auto& p : pts) {
        PhiPoint<double> ph = phi_point(spec, p);
        // scale of the first-derivative data; the closed form is quadratic in it
        double s1 = 0, s2 = 0;
        for (int pid = 0; pid < 6; ++pid) {
            for (int d : kPairs[pid]) s1 = std::fmax(s1, std::fabs(ph.phi[pid].g[d]));
            s2 = std::fmax(s2, std::fabs(ph.phi2m(kPairs[pid][0], kPairs[pid][1])));
        }
        double cscale = std::fmax(1.0, s1 * s1);
        double lscale = std::fmax(1.0, s1 * s2);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                if (i == j) continue;
                for (int k = 0; k < 4; ++k) {
                    if (k == i || k == j) continue;
                    worst_c = std::fmax(worst_c,
                                        std::fabs(ckikj_closed(ph, i, j, k)) / cscale);
                }
            }
        for (int i = 0; i < 2; ++i)
            for (int j = i + 1; j < 3; ++j)
                for (int k = j + 1; k < 4; ++k)
                    worst_l = std::fmax(worst_l, lambda_cyclic_residual(ph, i, j, k) / lscale);
    }
    v.max_residual = std::fmax(worst_c, worst_l);
    v.samples_used = static_cast<int>(pts.size());
    v.pass = v.max_residual <= tol;
    v.details = "max |C^k_ikj| = " + std::to_string(worst_c) +
                ", max lambda cyclic residual = " + std::to_string(worst_l);
    return v;
}

PetrovResult petrov_tag(const std::array<double, 3>& w, const SignatureProfile& sig, double tol) {
    PetrovResult r;
    r.advisory = sig.tag != SignatureTag::Lorentzian;
    double s = std::fmax(std::fabs(w[0]), std::fmax(std::fabs(w[1]), std::fabs(w[2])));
    if (s <= tol) {
        r.tag = PetrovTag::O;
        return r;
    }
    double trace = w[0] + w[1] + w[2];
    if (std::fabs(trace) > 10 * tol * s)
        throw DomainError("trace constraint w1+w2+w3 = 0 violated; refusing to classify");
    int coincident = 0;
    coincident += std::fabs(w[0] - w[1]) <= tol * s;
    coincident += std::fabs(w[1] - w[2]) <= tol * s;
    coincident += std::fabs(w[0] - w[2]) <= tol * s;
    if (coincident >= 1)
        r.tag = PetrovTag::D;
    else
        r.tag = PetrovTag::I;
    return r;
}

std::vector<ScanRow> scan_report(const MetricSpec& spec, const std::array<int, 4>& grid) {
    for (int n : grid)
        if (n < 1) throw SpecError("grid counts must be positive");
    std::vector<ScanRow> rows;
    std::array<int, 4> idx{};
    auto coord = [&](int axis) {
        const Box& b = spec.domain.box[axis];
        int n = grid[axis];
        if (n == 1) return 0.5 * (b.lo + b.hi);
        return b.lo + (b.hi - b.lo) * idx[axis] / (n - 1);
    };
    while (true) {
        ScanRow row;
        for (int a = 0; a < 4; ++a) row.p[a] = coord(a);
        auto adm = admissible(spec, row.p);
        if (adm.ok) {
            row.admissible = true;
            row.sig = signature(spec, row.p);
            auto b = curvature(spec, row.p);
            row.weyl_residual = max_frame_weyl(b);
            row.riemann_residual = max_frame_riemann(b);
        } else {
            row.admissible = false;
            row.skip_reason = adm.reason;
        }
        rows.push_back(std::move(row));
        int a = 3;
        while (a >= 0 && ++idx[a] == grid[a]) idx[a--] = 0;
        if (a < 0) break;
    }
    return rows;
}

}  // namespace bw
