#include "kid/fca.hpp"

namespace kid {

namespace {

void check_width(const BitSet& s, std::size_t width, const char* what) {
    if (s.width() != width) throw Error(std::string(what) + " set does not match the context basis");
}

}  // namespace

ActivitySet derive_extent(const FormalContext& context, const AttributeSet& attrs) {
    check_width(attrs, context.attribute_count(), "attribute");
    ActivitySet extent = ActivitySet::full(context.activity_count());
    for (auto j : attrs.indices()) extent &= context.column(j);
    return extent;
}

AttributeSet derive_intent(const FormalContext& context, const ActivitySet& acts) {
    check_width(acts, context.activity_count(), "activity");
    AttributeSet intent = AttributeSet::full(context.attribute_count());
    for (auto i : acts.indices()) intent &= context.row(i);
    return intent;
}

AttributeSet closure(const FormalContext& context, const AttributeSet& attrs) {
    return derive_intent(context, derive_extent(context, attrs));
}

std::vector<FormalConcept> enumerate_concepts(const FormalContext& context) {
    const std::size_t n = context.attribute_count();
    if (n > kMaxEnumerationAttributes)
        throw Error("concept enumeration supports at most " + std::to_string(kMaxEnumerationAttributes) +
                    " attributes, context has " + std::to_string(n));

    std::vector<FormalConcept> out;
    AttributeSet current = closure(context, context.empty_attributes());
    out.push_back({derive_extent(context, current), current});

    const AttributeSet all = AttributeSet::full(n);
    while (current != all) {
        // Next closed set in lectic order: try each attribute from the
        // least significant end, keep the first whose closure adds nothing
        // before it.
        bool advanced = false;
        AttributeSet prefix = current;  // current ∩ {0..i-1}, shrunk as i descends
        for (std::size_t k = n; k-- > 0;) {
            prefix.reset(k);
            if (current.test(k)) continue;
            AttributeSet seed = prefix;
            seed.set(k);
            AttributeSet next = closure(context, seed);
            bool canonical = true;
            for (std::size_t j = 0; j < k; ++j) {
                if (next.test(j) != prefix.test(j)) {
                    canonical = false;
                    break;
                }
            }
            if (canonical) {
                current = std::move(next);
                out.push_back({derive_extent(context, current), current});
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return out;
}

ThreeWayConcept three_way_from_activity(const FormalContext& context, std::size_t activity) {
    if (activity >= context.activity_count()) throw Error("activity index out of range");
    const AttributeSet& positive = context.row(activity);
    AttributeSet negative = positive.complement();
    // Objects having every positive attribute and none of the negative ones.
    ActivitySet extent = derive_extent(context, positive);
    for (auto j : negative.indices()) {
        ActivitySet lacking = context.column(j).complement();
        extent &= lacking;
    }
    return {std::move(extent), positive, std::move(negative)};
}

ThreeWayConcept three_way_from_activity(const FormalContext& context, std::string_view activity) {
    return three_way_from_activity(context, context.activity_index(activity));
}

}  // namespace kid
