#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "binaryweyl/curvature.hpp"
#include "binaryweyl/metric.hpp"

namespace bw {

struct Verdict {
    std::string kind;
    bool pass = false;
    double max_residual = 0.0;
    int samples_used = 0;
    std::string details;
};

enum class SignatureTag { Riemannian, Lorentzian, Neutral };

const char* signature_tag_name(SignatureTag t);

struct SignatureProfile {
    std::array<int, 4> signs{};  // +1 / -1 per component
    SignatureTag tag = SignatureTag::Riemannian;

    std::string pattern() const;  // e.g. "+++-"
};

struct SamplePlan {
    int samples = 100;
    std::uint64_t seed = 42;
};

SignatureProfile signature(const MetricSpec& spec, const Point4& p);

// Pass iff the orthonormal-frame Weyl residual stays <= tol at every sampled
// admissible point.
Verdict conformal_flatness(const MetricSpec& spec, const SamplePlan& plan, double tol = 1e-8);

// Max riemann_norm over the sample; pass iff <= tol (flatness check).
Verdict flatness(const MetricSpec& spec, const SamplePlan& plan, double tol = 1e-9);

enum class LemmaMatch { A, B, C, D, None };
const char* lemma_match_name(LemmaMatch m);

// Structural match of an iv-family spec against the four Lemma cases.
LemmaMatch lemma_case(const MetricSpec& spec);

// Reports max |ckikj_closed| (normalized) and max lambda cyclic residual
// (normalized) over samples and all index triples.
Verdict table1_check(const MetricSpec& spec, const SamplePlan& plan, double tol = 1e-9);

enum class PetrovTag { O, D, I };
const char* petrov_tag_name(PetrovTag t);

struct PetrovResult {
    PetrovTag tag = PetrovTag::O;
    bool advisory = false;  // set for non-Lorentzian signatures
};

// w = (C^{12}_{12}, C^{13}_{13}, C^{14}_{14}); requires w1+w2+w3 ~ 0.
PetrovResult petrov_tag(const std::array<double, 3>& w, const SignatureProfile& sig,
                        double tol = 1e-9);

struct ScanRow {
    Point4 p{};
    bool admissible = false;
    std::string skip_reason;
    SignatureProfile sig{};
    double weyl_residual = 0.0;
    double riemann_residual = 0.0;
};

// Lexicographic grid over the spec's boxes; inadmissible points are emitted
// with a skip marker.
std::vector<ScanRow> scan_report(const MetricSpec& spec, const std::array<int, 4>& grid);

}  // namespace bw
