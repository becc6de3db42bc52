#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kid/bitset.hpp"
#include "kid/context.hpp"
#include "kid/fca.hpp"

namespace kid {

/// Unit vector over the canonical attribute basis, nonnegative coordinates.
class StateVector {
public:
    /// Scales `coords` to unit norm. Throws when every coordinate is zero.
    static StateVector normalized(std::vector<double> coords);

    const std::vector<double>& coords() const { return coords_; }
    const AttributeSet& support() const { return support_; }
    std::size_t dimension() const { return coords_.size(); }

private:
    StateVector() = default;
    std::vector<double> coords_;
    AttributeSet support_;
};

/// Salience weight per quality dimension, indexed like
/// FormalContext::dimensions(). Defaults to 1 everywhere.
class DimensionWeights {
public:
    explicit DimensionWeights(std::size_t dimension_count) : weights_(dimension_count, 1.0) {}
    explicit DimensionWeights(std::vector<double> weights);

    static DimensionWeights uniform(const FormalContext& context) {
        return DimensionWeights(context.dimensions().size());
    }

    double operator[](std::size_t dimension) const { return weights_[dimension]; }
    void set(std::size_t dimension, double weight);
    const std::vector<double>& values() const { return weights_; }
    std::size_t size() const { return weights_.size(); }

    friend bool operator==(const DimensionWeights&, const DimensionWeights&) = default;

private:
    std::vector<double> weights_;
};

/// Weighted indicator of `attrs`, normalized. Shared by concepts and cues.
StateVector encode_attributes(const FormalContext& context, const AttributeSet& attrs,
                              const DimensionWeights& weights);
StateVector encode_concept(const FormalContext& context, const ThreeWayConcept& three_way,
                           const DimensionWeights& weights);

/// Inner product of two unit states; in [0, 1] for nonnegative coordinates.
double similarity(const StateVector& a, const StateVector& b);
/// Squared overlap |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

struct MemoryEntry {
    ThreeWayConcept three_way;
    /// Absent when the activity has an empty positive intent; such
    /// activities take no part in matching.
    std::optional<StateVector> vector;
};

/// The learned memory: one three-way concept and state per activity.
class ConceptMemory {
public:
    ConceptMemory(const FormalContext& context, DimensionWeights weights);

    const FormalContext& context() const { return context_; }
    const DimensionWeights& weights() const { return weights_; }
    const std::vector<MemoryEntry>& entries() const { return entries_; }
    const MemoryEntry& entry(std::size_t activity) const { return entries_[activity]; }

private:
    FormalContext context_;
    DimensionWeights weights_;
    std::vector<MemoryEntry> entries_;
};

struct Cue {
    AttributeSet attrs;
};

enum class MatchKind { Exact, SmallestSuperset, LargestSubset, Overlap, None };

std::string to_string(MatchKind kind);

struct MatchResult {
    MatchKind kind = MatchKind::None;
    /// Similarity descending, then canonical activity order.
    std::vector<std::size_t> candidates;
    /// Similarity per candidate, aligned with `candidates`.
    std::vector<double> similarities;
    double best_similarity = 0.0;

    /// True when exactly one candidate attains the best similarity.
    bool unique_top() const;
};

/// Similarities are ranked after rounding to this resolution, so values
/// that differ only by floating-point noise tie.
inline constexpr double kTieResolution = 1e-12;

/// Tiered matching: Exact, then SmallestSuperset, LargestSubset,
/// Overlap, None. The cue and every concept are encoded with `weights`.
/// Throws on an empty cue.
MatchResult match_cue(const ConceptMemory& memory, const Cue& cue, const DimensionWeights& weights);
/// Uses the memory's own weights.
MatchResult match_cue(const ConceptMemory& memory, const Cue& cue);

/// Activities whose positive intent shares at least one cued attribute.
ActivitySet candidates_intersecting(const ConceptMemory& memory, const Cue& cue);

}  // namespace kid
