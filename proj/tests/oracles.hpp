#pragma once

// Test-only reference implementations. They work on plain boolean
// matrices and never call into the library's derivation or matching code.

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kid/context.hpp"
#include "kid/io.hpp"

namespace oracle {

struct PlainContext {
    std::size_t objects = 0;
    std::size_t attributes = 0;
    std::vector<std::vector<bool>> incidence;  // [object][attribute]
    /// Dimension index of each attribute; attributes of a dimension are contiguous.
    std::vector<std::size_t> dimension_of;
};

inline PlainContext random_context(std::mt19937& rng, std::size_t max_objects = 8, std::size_t max_attributes = 8) {
    PlainContext c;
    c.objects = std::uniform_int_distribution<std::size_t>(1, max_objects)(rng);
    c.attributes = std::uniform_int_distribution<std::size_t>(1, max_attributes)(rng);
    const double density = std::uniform_real_distribution<double>(0.15, 0.85)(rng);
    std::bernoulli_distribution cell(density);
    c.incidence.assign(c.objects, std::vector<bool>(c.attributes));
    for (auto& row : c.incidence)
        for (std::size_t j = 0; j < c.attributes; ++j) row[j] = cell(rng);
    std::size_t dims = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(3, c.attributes))(rng);
    for (std::size_t j = 0; j < c.attributes; ++j) c.dimension_of.push_back(j * dims / c.attributes);
    return c;
}

inline kid::FormalContext to_formal(const PlainContext& c) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < c.objects; ++i) names.push_back("o" + std::to_string(i));
    std::vector<kid::QualityDimension> dims;
    for (std::size_t j = 0; j < c.attributes; ++j) {
        if (dims.size() <= c.dimension_of[j]) dims.push_back({"D" + std::to_string(c.dimension_of[j]), {}});
        dims.back().attributes.push_back("a" + std::to_string(j));
    }
    std::vector<std::vector<std::uint8_t>> inc;
    for (const auto& row : c.incidence) inc.emplace_back(row.begin(), row.end());
    return kid::FormalContext(names, dims, inc);
}

inline std::vector<bool> objects_having(const PlainContext& c, const std::vector<bool>& attrs) {
    std::vector<bool> ext(c.objects, true);
    for (std::size_t i = 0; i < c.objects; ++i)
        for (std::size_t j = 0; j < c.attributes; ++j)
            if (attrs[j] && !c.incidence[i][j]) ext[i] = false;
    return ext;
}

inline std::vector<bool> attributes_shared(const PlainContext& c, const std::vector<bool>& objs) {
    std::vector<bool> in(c.attributes, true);
    for (std::size_t i = 0; i < c.objects; ++i)
        for (std::size_t j = 0; j < c.attributes; ++j)
            if (objs[i] && !c.incidence[i][j]) in[j] = false;
    return in;
}

using ConceptPair = std::pair<std::vector<bool>, std::vector<bool>>;

/// Every (A'', A') over all 2^m attribute subsets A.
inline std::set<ConceptPair> brute_force_concepts(const PlainContext& c) {
    std::set<ConceptPair> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << c.attributes); ++mask) {
        std::vector<bool> b(c.attributes);
        for (std::size_t j = 0; j < c.attributes; ++j) b[j] = (mask >> j) & 1U;
        auto ext = objects_having(c, b);
        out.insert({ext, attributes_shared(c, ext)});
    }
    return out;
}

/// Same as brute_force_concepts but enumerating all 2^n object subsets.
inline std::set<ConceptPair> brute_force_concepts_by_extent(const PlainContext& c) {
    std::set<ConceptPair> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << c.objects); ++mask) {
        std::vector<bool> a(c.objects);
        for (std::size_t i = 0; i < c.objects; ++i) a[i] = (mask >> i) & 1U;
        auto in = attributes_shared(c, a);
        out.insert({objects_having(c, in), in});
    }
    return out;
}

struct BruteMatch {
    std::string kind;
    std::vector<std::size_t> candidates;
    std::vector<double> similarities;
};

/// Tiered matcher by direct set comparison. Similarity is the weighted
/// cosine sum(w^2 over A∩B) / sqrt(sum(w^2 over A) * sum(w^2 over B)).
inline BruteMatch brute_force_match(const PlainContext& c, const std::vector<bool>& cue,
                                    const std::vector<double>& dim_weights) {
    auto w2 = [&](std::size_t j) { return dim_weights[c.dimension_of[j]] * dim_weights[c.dimension_of[j]]; };
    auto size = [&](const std::vector<bool>& s) { return std::count(s.begin(), s.end(), true); };
    auto cosine = [&](const std::vector<bool>& a, const std::vector<bool>& b) {
        double ab = 0, aa = 0, bb = 0;
        for (std::size_t j = 0; j < c.attributes; ++j) {
            if (a[j]) aa += w2(j);
            if (b[j]) bb += w2(j);
            if (a[j] && b[j]) ab += w2(j);
        }
        return ab / std::sqrt(aa * bb);
    };
    auto subset = [&](const std::vector<bool>& a, const std::vector<bool>& b) {
        for (std::size_t j = 0; j < c.attributes; ++j)
            if (a[j] && !b[j]) return false;
        return true;
    };
    auto meets = [&](const std::vector<bool>& a, const std::vector<bool>& b) {
        for (std::size_t j = 0; j < c.attributes; ++j)
            if (a[j] && b[j]) return true;
        return false;
    };

    std::vector<std::size_t> exact, sup, sub, over;
    for (std::size_t i = 0; i < c.objects; ++i) {
        const auto& row = c.incidence[i];
        if (size(row) == 0) continue;
        if (row == cue) exact.push_back(i);
        if (row != cue && subset(cue, row)) sup.push_back(i);
        if (row != cue && subset(row, cue)) sub.push_back(i);
        if (meets(row, cue)) over.push_back(i);
    }
    BruteMatch r;
    if (!exact.empty()) {
        r.kind = "Exact";
        r.candidates = exact;
    } else if (!sup.empty()) {
        long best = 1 << 30;
        for (auto i : sup) best = std::min<long>(best, size(c.incidence[i]));
        for (auto i : sup)
            if (size(c.incidence[i]) == best) r.candidates.push_back(i);
        r.kind = "SmallestSuperset";
    } else if (!sub.empty()) {
        long best = 0;
        for (auto i : sub) best = std::max<long>(best, size(c.incidence[i]));
        for (auto i : sub)
            if (size(c.incidence[i]) == best) r.candidates.push_back(i);
        r.kind = "LargestSubset";
    } else if (!over.empty()) {
        r.kind = "Overlap";
        r.candidates = over;
    } else {
        r.kind = "None";
        return r;
    }
    std::vector<std::pair<long long, std::size_t>> keyed;
    for (auto i : r.candidates) keyed.push_back({-std::llround(cosine(cue, c.incidence[i]) * 1e12), i});
    std::sort(keyed.begin(), keyed.end());
    r.candidates.clear();
    for (auto& [k, i] : keyed) {
        r.candidates.push_back(i);
        r.similarities.push_back(cosine(cue, c.incidence[i]));
    }
    return r;
}

inline kid::FormalContext adl_context() { return kid::parse_context(kid::read_file(KID_DATA_DIR "/adl_context.csv")); }

inline kid::ReferenceTimeTable adl_reftimes(const kid::FormalContext& ctx) {
    return kid::parse_reference_times(kid::read_file(KID_DATA_DIR "/adl_reftimes.csv"), ctx);
}

}  // namespace oracle
