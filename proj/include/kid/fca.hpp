#pragma once

#include <cstddef>
#include <vector>

#include "kid/bitset.hpp"
#include "kid/context.hpp"

namespace kid {

struct FormalConcept {
    ActivitySet extent;
    AttributeSet intent;

    friend bool operator==(const FormalConcept&, const FormalConcept&) = default;
};

/// Contributing (positive) and non-contributing (negative) attributes
/// partition the basis; the context is complete and binary.
struct ThreeWayConcept {
    ActivitySet extent;
    AttributeSet positive_intent;
    AttributeSet negative_intent;

    friend bool operator==(const ThreeWayConcept&, const ThreeWayConcept&) = default;
};

/// Largest attribute count enumerate_concepts accepts.
inline constexpr std::size_t kMaxEnumerationAttributes = 63;

ActivitySet derive_extent(const FormalContext& context, const AttributeSet& attrs);
AttributeSet derive_intent(const FormalContext& context, const ActivitySet& acts);
AttributeSet closure(const FormalContext& context, const AttributeSet& attrs);

/// All formal concepts, intents in lectic order under the canonical
/// attribute ordering (first attribute most significant). Starts at the
/// top concept, ends at the bottom concept.
std::vector<FormalConcept> enumerate_concepts(const FormalContext& context);

ThreeWayConcept three_way_from_activity(const FormalContext& context, std::size_t activity);
ThreeWayConcept three_way_from_activity(const FormalContext& context, std::string_view activity);

}  // namespace kid
