#include "kid/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kid {

StateVector StateVector::normalized(std::vector<double> coords) {
    double norm2 = 0.0;
    for (double c : coords) {
        if (!(c >= 0.0) || !std::isfinite(c)) throw Error("state coordinates must be finite and nonnegative");
        norm2 += c * c;
    }
    if (norm2 == 0.0) throw Error("cannot normalize a state with empty support");
    const double norm = std::sqrt(norm2);
    StateVector v;
    v.support_ = AttributeSet(coords.size());
    for (std::size_t j = 0; j < coords.size(); ++j) {
        coords[j] /= norm;
        if (coords[j] != 0.0) v.support_.set(j);
    }
    v.coords_ = std::move(coords);
    return v;
}

DimensionWeights::DimensionWeights(std::vector<double> weights) : weights_(std::move(weights)) {
    for (std::size_t d = 0; d < weights_.size(); ++d) set(d, weights_[d]);
}

void DimensionWeights::set(std::size_t dimension, double weight) {
    if (!(weight > 0.0) || !std::isfinite(weight)) throw Error("dimension weights must be positive and finite");
    weights_.at(dimension) = weight;
}

StateVector encode_attributes(const FormalContext& context, const AttributeSet& attrs,
                              const DimensionWeights& weights) {
    if (attrs.width() != context.attribute_count()) throw Error("attribute set does not match the context basis");
    if (weights.size() != context.dimensions().size()) throw Error("weights do not match the context dimensions");
    if (attrs.empty()) throw Error("cannot encode an empty attribute set");
    std::vector<double> coords(context.attribute_count(), 0.0);
    for (auto j : attrs.indices()) coords[j] = weights[context.dimension_of(j)];
    return StateVector::normalized(std::move(coords));
}

StateVector encode_concept(const FormalContext& context, const ThreeWayConcept& three_way,
                           const DimensionWeights& weights) {
    return encode_attributes(context, three_way.positive_intent, weights);
}

double similarity(const StateVector& a, const StateVector& b) {
    if (a.dimension() != b.dimension()) throw Error("state vectors are over different bases");
    double dot = 0.0;
    for (std::size_t j = 0; j < a.dimension(); ++j) dot += a.coords()[j] * b.coords()[j];
    return std::clamp(dot, 0.0, 1.0);
}

double fidelity(const StateVector& a, const StateVector& b) {
    const double s = similarity(a, b);
    return s * s;
}

ConceptMemory::ConceptMemory(const FormalContext& context, DimensionWeights weights)
    : context_(context), weights_(std::move(weights)) {
    if (weights_.size() != context_.dimensions().size()) throw Error("weights do not match the context dimensions");
    entries_.reserve(context_.activity_count());
    for (std::size_t i = 0; i < context_.activity_count(); ++i) {
        MemoryEntry e{three_way_from_activity(context_, i), std::nullopt};
        if (!e.three_way.positive_intent.empty()) e.vector = encode_concept(context_, e.three_way, weights_);
        entries_.push_back(std::move(e));
    }
}

std::string to_string(MatchKind kind) {
    switch (kind) {
        case MatchKind::Exact: return "Exact";
        case MatchKind::SmallestSuperset: return "SmallestSuperset";
        case MatchKind::LargestSubset: return "LargestSubset";
        case MatchKind::Overlap: return "Overlap";
        case MatchKind::None: return "None";
    }
    return "None";
}

namespace {

long long rank_key(double s) { return std::llround(s / kTieResolution); }

}  // namespace

bool MatchResult::unique_top() const {
    if (candidates.empty()) return false;
    if (candidates.size() == 1) return true;
    return rank_key(similarities[0]) > rank_key(similarities[1]);
}

MatchResult match_cue(const ConceptMemory& memory, const Cue& cue, const DimensionWeights& weights) {
    const FormalContext& ctx = memory.context();
    if (cue.attrs.width() != ctx.attribute_count()) throw Error("cue does not match the context basis");
    if (cue.attrs.empty()) throw Error("cannot match an empty cue");

    const auto& entries = memory.entries();
    std::vector<std::size_t> exact, supersets, subsets, overlaps;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const AttributeSet& intent = entries[i].three_way.positive_intent;
        if (intent.empty()) continue;
        if (intent == cue.attrs)
            exact.push_back(i);
        else if (cue.attrs.is_subset_of(intent))
            supersets.push_back(i);
        else if (intent.is_subset_of(cue.attrs))
            subsets.push_back(i);
        if (intent.intersects(cue.attrs)) overlaps.push_back(i);
    }

    auto keep_by_size = [&](std::vector<std::size_t>& v, bool smallest) {
        if (v.empty()) return;
        std::size_t best = entries[v.front()].three_way.positive_intent.count();
        for (auto i : v) {
            std::size_t c = entries[i].three_way.positive_intent.count();
            best = smallest ? std::min(best, c) : std::max(best, c);
        }
        std::erase_if(v, [&](std::size_t i) { return entries[i].three_way.positive_intent.count() != best; });
    };

    MatchResult result;
    if (!exact.empty()) {
        result.kind = MatchKind::Exact;
        result.candidates = std::move(exact);
    } else if (!supersets.empty()) {
        keep_by_size(supersets, true);
        result.kind = MatchKind::SmallestSuperset;
        result.candidates = std::move(supersets);
    } else if (!subsets.empty()) {
        keep_by_size(subsets, false);
        result.kind = MatchKind::LargestSubset;
        result.candidates = std::move(subsets);
    } else if (!overlaps.empty()) {
        result.kind = MatchKind::Overlap;
        result.candidates = std::move(overlaps);
    } else {
        return result;
    }

    const bool stored = weights == memory.weights();
    const StateVector cue_vec = encode_attributes(ctx, cue.attrs, weights);
    std::vector<double> sims(entries.size(), 0.0);
    for (auto i : result.candidates) {
        const StateVector concept_vec =
            stored ? *entries[i].vector : encode_attributes(ctx, entries[i].three_way.positive_intent, weights);
        sims[i] = similarity(cue_vec, concept_vec);
    }
    std::stable_sort(result.candidates.begin(), result.candidates.end(), [&](std::size_t a, std::size_t b) {
        auto ka = rank_key(sims[a]), kb = rank_key(sims[b]);
        return ka != kb ? ka > kb : a < b;
    });
    for (auto i : result.candidates) result.similarities.push_back(sims[i]);
    result.best_similarity = result.similarities.front();
    return result;
}

MatchResult match_cue(const ConceptMemory& memory, const Cue& cue) {
    return match_cue(memory, cue, memory.weights());
}

ActivitySet candidates_intersecting(const ConceptMemory& memory, const Cue& cue) {
    const FormalContext& ctx = memory.context();
    if (cue.attrs.width() != ctx.attribute_count()) throw Error("cue does not match the context basis");
    ActivitySet out = ctx.empty_activities();
    for (auto j : cue.attrs.indices()) out |= ctx.column(j);
    return out;
}

}  // namespace kid
