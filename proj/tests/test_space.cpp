#include <doctest.h>

#include <cmath>
#include <random>

#include "kid/space.hpp"
#include "oracles.hpp"

using namespace kid;

namespace {

double norm(const StateVector& v) {
    double s = 0;
    for (double c : v.coords()) s += c * c;
    return std::sqrt(s);
}

Cue cue_of(const FormalContext& ctx, std::vector<std::string> names) { return Cue{ctx.attributes_named(names)}; }

std::vector<std::string> cand_names(const FormalContext& ctx, const MatchResult& m) {
    std::vector<std::string> out;
    for (auto i : m.candidates) out.push_back(ctx.activities()[i]);
    return out;
}

}  // namespace

TEST_CASE("encode_concept on table 1") {
    auto ctx = oracle::adl_context();
    auto unit = DimensionWeights::uniform(ctx);

    auto sleeping = encode_concept(ctx, three_way_from_activity(ctx, "Sleeping"), unit);
    CHECK(sleeping.support().count() == 1);
    CHECK(sleeping.coords()[ctx.attribute_index("Pressure.Bed")] == doctest::Approx(1.0).epsilon(1e-12));

    auto breakfast = encode_concept(ctx, three_way_from_activity(ctx, "Breakfast"), unit);
    for (auto* a : {"Magnetic.Fridge", "Pressure.Seat", "Electric.Toaster"})
        CHECK(std::abs(breakfast.coords()[ctx.attribute_index(a)] - 1.0 / std::sqrt(3.0)) < 1e-12);
    CHECK(breakfast.support() == intent_of(ctx, "Breakfast"));

    DimensionWeights heavy = unit;
    heavy.set(4, 2.0);  // Electric
    auto weighted = encode_concept(ctx, three_way_from_activity(ctx, "Breakfast"), heavy);
    CHECK(std::abs(weighted.coords()[ctx.attribute_index("Magnetic.Fridge")] - 1.0 / std::sqrt(6.0)) < 1e-12);
    CHECK(std::abs(weighted.coords()[ctx.attribute_index("Pressure.Seat")] - 1.0 / std::sqrt(6.0)) < 1e-12);
    CHECK(std::abs(weighted.coords()[ctx.attribute_index("Electric.Toaster")] - 2.0 / std::sqrt(6.0)) < 1e-12);

    auto zero = parse_context(",D\n,a\nx,0\n");
    CHECK_THROWS_AS(encode_concept(zero, three_way_from_activity(zero, "x"), DimensionWeights::uniform(zero)), Error);
}

TEST_CASE("weights must be positive") {
    DimensionWeights w(2);
    CHECK_THROWS_AS(w.set(0, 0.0), Error);
    CHECK_THROWS_AS(w.set(1, -1.0), Error);
    CHECK_THROWS_AS(DimensionWeights(std::vector<double>{1.0, NAN}), Error);
}

TEST_CASE("similarity") {
    auto ctx = oracle::adl_context();
    auto unit = DimensionWeights::uniform(ctx);
    auto breakfast = encode_concept(ctx, three_way_from_activity(ctx, "Breakfast"), unit);
    CHECK(std::abs(similarity(breakfast, breakfast) - 1.0) < 1e-12);

    auto cue = encode_attributes(ctx, cue_of(ctx, {"Magnetic.Fridge", "Magnetic.Cupboard", "Electric.Toaster"}).attrs, unit);
    CHECK(std::abs(similarity(cue, breakfast) - 2.0 / 3.0) < 1e-12);
    CHECK(std::abs(fidelity(cue, breakfast) - 4.0 / 9.0) < 1e-12);

    auto leaving = encode_concept(ctx, three_way_from_activity(ctx, "Leaving"), unit);
    CHECK(similarity(leaving, breakfast) == 0.0);

    auto other = encode_attributes(parse_context(",D\n,a\nx,1\n"), AttributeSet::full(1), DimensionWeights(1));
    CHECK_THROWS_AS(similarity(other, breakfast), Error);
}

TEST_CASE("match_cue tiers on table 1") {
    auto ctx = oracle::adl_context();
    ConceptMemory memory(ctx, DimensionWeights::uniform(ctx));

    auto door = match_cue(memory, cue_of(ctx, {"Magnetic.MainDoor"}));
    CHECK(door.kind == MatchKind::Exact);
    CHECK(cand_names(ctx, door) == std::vector<std::string>{"Leaving"});
    CHECK(std::abs(door.best_similarity - 1.0) < 1e-12);
    CHECK(door.unique_top());

    auto fridge = match_cue(memory, cue_of(ctx, {"Magnetic.Fridge"}));
    CHECK(fridge.kind == MatchKind::SmallestSuperset);
    CHECK(cand_names(ctx, fridge) == std::vector<std::string>{"Breakfast", "Lunch", "Snacks"});
    CHECK(std::abs(fridge.best_similarity - 1.0 / std::sqrt(3.0)) < 1e-12);
    CHECK_FALSE(fridge.unique_top());

    auto two = match_cue(memory, cue_of(ctx, {"Magnetic.Fridge", "Magnetic.Cupboard"}));
    CHECK(two.kind == MatchKind::Overlap);
    CHECK(cand_names(ctx, two).front() == "Grooming");
    CHECK(std::abs(two.best_similarity - 0.5) < 1e-12);

    auto three = match_cue(memory, cue_of(ctx, {"Magnetic.Fridge", "Magnetic.Cupboard", "Electric.Toaster"}));
    CHECK(three.kind == MatchKind::Overlap);
    CHECK(cand_names(ctx, three).front() == "Breakfast");
    CHECK(std::abs(three.best_similarity - 2.0 / 3.0) < 1e-12);
    CHECK(three.unique_top());

    auto shower = match_cue(memory, cue_of(ctx, {"PIR.Shower", "Flush.Toilet"}));
    CHECK(shower.kind == MatchKind::Exact);
    CHECK(cand_names(ctx, shower) == std::vector<std::string>{"Toileting", "Showering"});
    CHECK_FALSE(shower.unique_top());

    // Bed + TV: no superset; Sleeping {Bed} is the largest subset.
    auto sub = match_cue(memory, cue_of(ctx, {"Pressure.Bed", "Electric.TV"}));
    CHECK(sub.kind == MatchKind::LargestSubset);
    CHECK(cand_names(ctx, sub) == std::vector<std::string>{"Sleeping"});

    auto none = match_cue(memory, cue_of(ctx, {"PIR.Basin"}));
    CHECK(none.kind == MatchKind::None);
    CHECK(none.candidates.empty());

    CHECK_THROWS_AS(match_cue(memory, Cue{ctx.empty_attributes()}), Error);
}

TEST_CASE("exact intents always match themselves") {
    auto ctx = oracle::adl_context();
    ConceptMemory memory(ctx, DimensionWeights::uniform(ctx));
    for (std::size_t i = 0; i < ctx.activity_count(); ++i) {
        auto m = match_cue(memory, Cue{ctx.row(i)});
        CHECK(m.kind == MatchKind::Exact);
        CHECK(std::find(m.candidates.begin(), m.candidates.end(), i) != m.candidates.end());
        for (auto c : m.candidates) CHECK(ctx.row(c) == ctx.row(i));
    }
}

TEST_CASE("candidates_intersecting") {
    auto ctx = oracle::adl_context();
    ConceptMemory memory(ctx, DimensionWeights::uniform(ctx));
    CHECK(ctx.activity_names(candidates_intersecting(memory, cue_of(ctx, {"Magnetic.Fridge"}))) ==
          std::vector<std::string>{"Breakfast", "Lunch", "Dinner", "Snacks"});
    CHECK(candidates_intersecting(memory, cue_of(ctx, {"PIR.Basin"})).empty());
    CHECK(ctx.activity_names(candidates_intersecting(memory, cue_of(ctx, {"Magnetic.Fridge", "Magnetic.Cupboard"}))) ==
          std::vector<std::string>{"Breakfast", "Lunch", "Dinner", "Snacks", "Grooming"});
}

TEST_CASE("match_cue equals brute force on random contexts") {
    std::mt19937 rng(31337);
    int checked = 0;
    for (int k = 0; k < 600; ++k) {
        auto plain = oracle::random_context(rng);
        auto ctx = oracle::to_formal(plain);
        std::vector<double> w(ctx.dimensions().size(), 1.0);
        if (k % 2) {
            std::uniform_real_distribution<double> dist(0.25, 4.0);
            for (auto& x : w) x = dist(rng);
        }
        DimensionWeights weights(w);
        ConceptMemory memory(ctx, weights);

        std::vector<bool> cue(plain.attributes);
        std::bernoulli_distribution pick(0.4);
        for (std::size_t j = 0; j < cue.size(); ++j) cue[j] = pick(rng);
        if (std::find(cue.begin(), cue.end(), true) == cue.end()) cue[0] = true;
        AttributeSet attrs(plain.attributes);
        for (std::size_t j = 0; j < cue.size(); ++j)
            if (cue[j]) attrs.set(j);

        auto got = match_cue(memory, Cue{attrs});
        auto want = oracle::brute_force_match(plain, cue, w);
        CHECK(to_string(got.kind) == want.kind);
        CHECK(got.candidates == want.candidates);
        REQUIRE(got.similarities.size() == want.similarities.size());
        for (std::size_t i = 0; i < got.similarities.size(); ++i)
            CHECK(std::abs(got.similarities[i] - want.similarities[i]) < 1e-12);
        ++checked;
    }
    CHECK(checked >= 500);
}

TEST_CASE("vector invariants on random contexts") {
    std::mt19937 rng(8);
    for (int k = 0; k < 200; ++k) {
        auto plain = oracle::random_context(rng);
        auto ctx = oracle::to_formal(plain);
        std::vector<double> w(ctx.dimensions().size());
        std::uniform_real_distribution<double> dist(0.1, 10.0);
        for (auto& x : w) x = dist(rng);
        ConceptMemory memory(ctx, DimensionWeights(w));
        std::vector<const StateVector*> vs;
        for (const auto& e : memory.entries())
            if (e.vector) vs.push_back(&*e.vector);
        for (auto* a : vs) {
            CHECK(std::abs(norm(*a) - 1.0) < 1e-9);
            CHECK(std::abs(similarity(*a, *a) - 1.0) < 1e-9);
            for (double c : a->coords()) CHECK(c >= 0.0);
            for (auto* b : vs) {
                const double s = similarity(*a, *b);
                CHECK(std::abs(s - similarity(*b, *a)) < 1e-12);
                CHECK(s >= 0.0);
                CHECK(s <= 1.0);
            }
        }
    }
}

TEST_CASE("common scaling of weights leaves matches unchanged") {
    std::mt19937 rng(4);
    for (int k = 0; k < 200; ++k) {
        auto plain = oracle::random_context(rng);
        auto ctx = oracle::to_formal(plain);
        const double scale = std::uniform_real_distribution<double>(0.1, 50.0)(rng);
        ConceptMemory base(ctx, DimensionWeights::uniform(ctx));
        DimensionWeights scaled(std::vector<double>(ctx.dimensions().size(), scale));
        AttributeSet cue(ctx.attribute_count());
        for (std::size_t j = 0; j < cue.width(); ++j)
            if (rng() % 2) cue.set(j);
        if (cue.empty()) cue.set(0);
        auto a = match_cue(base, Cue{cue});
        auto b = match_cue(base, Cue{cue}, scaled);
        CHECK(a.kind == b.kind);
        CHECK(a.candidates == b.candidates);
        CHECK(std::abs(a.best_similarity - b.best_similarity) < 1e-12);
    }
}

TEST_CASE("superset candidates shrink as the cue grows") {
    std::mt19937 rng(12);
    for (int k = 0; k < 300; ++k) {
        auto plain = oracle::random_context(rng);
        auto ctx = oracle::to_formal(plain);
        ConceptMemory memory(ctx, DimensionWeights::uniform(ctx));
        AttributeSet cue(ctx.attribute_count());
        cue.set(rng() % cue.width());
        auto prev = match_cue(memory, Cue{cue});
        for (std::size_t step = 0; step < 3; ++step) {
            AttributeSet grown = cue;
            grown.set(rng() % cue.width());
            auto next = match_cue(memory, Cue{grown});
            if (prev.kind == MatchKind::SmallestSuperset && next.kind == MatchKind::SmallestSuperset) {
                // Every intent containing the grown cue also contains the smaller one.
                for (auto c : next.candidates) CHECK(cue.is_subset_of(ctx.row(c)));
                CHECK(ctx.row(next.candidates.front()).count() >= ctx.row(prev.candidates.front()).count());
            }
            cue = grown;
            prev = next;
        }
    }
}
