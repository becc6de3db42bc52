// kid: learn activity concepts from a formal context and replay sensor
// event logs through the deadline-aware recognizer.
//
// Exit status: 0 ok, 1 input/validation error, 2 usage error,
// 3 recognize finished and raised at least one alert.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kid/context.hpp"
#include "kid/engine.hpp"
#include "kid/fca.hpp"
#include "kid/io.hpp"
#include "kid/space.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitAlert = 3;

std::string join(const std::vector<std::string>& names, const char* sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? sep : "") + names[i];
    return out;
}

/// Errors from a named input file, reported as "<file>: <what>".
template <class F>
auto with_file(const std::string& path, F&& f) {
    try {
        return f(kid::read_file(path));
    } catch (const kid::Error& e) {
        throw kid::Error(path + ": " + e.what());
    }
}

int cmd_learn(const std::string& context_path, const std::string& reftimes_path, const std::string& weights_path,
              const std::string& out_path) {
    auto context = with_file(context_path, [](const std::string& t) { return kid::parse_context(t); });
    auto reftimes = with_file(reftimes_path, [&](const std::string& t) { return kid::parse_reference_times(t, context); });
    auto weights = weights_path.empty()
                       ? kid::DimensionWeights::uniform(context)
                       : with_file(weights_path, [&](const std::string& t) { return kid::parse_weights(t, context); });
    kid::ModelArtifact model{context, reftimes, weights};
    (void)model.memory();  // fails early if any weight/basis mismatch
    kid::write_file_atomic(out_path, model.to_text());
    std::cout << "learned " << context.activity_count() << " activities over a " << context.attribute_count()
              << "-attribute basis\n";
    return 0;
}

int cmd_recognize(const std::string& model_path, const std::string& events_path, double theta, long long tick,
                  const std::string& horizon_text, const std::string& out_path) {
    auto model = with_file(model_path, [](const std::string& t) { return kid::ModelArtifact::from_text(t); });
    auto events = with_file(events_path, [&](const std::string& t) { return kid::parse_events(t, &model.context); });

    kid::Engine engine(model.memory(), model.reftimes, kid::EngineConfig{theta, kid::Duration{tick}});
    kid::Timestamp horizon;
    if (!horizon_text.empty())
        horizon = kid::Timestamp::parse(horizon_text);
    else if (!events.empty())
        horizon = events.back().at.end_of_day();

    const auto outputs = kid::run_stream(engine, events, horizon);
    const std::string report = kid::render_report(outputs);
    if (out_path.empty() || out_path == "-")
        std::cout << report;
    else
        kid::write_file_atomic(out_path, report);

    for (const auto& o : outputs)
        if (o.kind == kid::OutputKind::Alert) return kExitAlert;
    return 0;
}

int cmd_lattice(const std::string& context_path) {
    auto context = with_file(context_path, [](const std::string& t) { return kid::parse_context(t); });
    for (const auto& c : kid::enumerate_concepts(context))
        std::cout << '{' << join(context.activity_names(c.extent)) << "} | {"
                  << join(context.attribute_names(c.intent)) << "}\n";
    return 0;
}

int cmd_inspect(const std::string& model_path, const std::string& activity) {
    auto model = with_file(model_path, [](const std::string& t) { return kid::ModelArtifact::from_text(t); });
    const auto& ctx = model.context;
    const auto idx = ctx.find_activity(activity);
    if (!idx) {
        std::cerr << "error: unknown activity '" << activity << "'; valid names: " << join(ctx.activities()) << "\n";
        return kExitError;
    }
    const auto memory = model.memory();
    const auto& entry = memory.entry(*idx);
    const auto& ref = model.reftimes.reference(*idx);

    std::cout << "activity: " << activity << "\n"
              << "extent: {" << join(ctx.activity_names(entry.three_way.extent)) << "}\n"
              << "positive: {" << join(ctx.attribute_names(entry.three_way.positive_intent)) << "}\n"
              << "negative: {" << join(ctx.attribute_names(entry.three_way.negative_intent)) << "}\n"
              << "reference: " << (ref ? ref->format() : std::string("NA")) << "\n";
    if (!entry.vector) {
        std::cout << "vector: none (empty positive intent)\n";
        return 0;
    }
    std::cout << "vector:";
    char buf[32];
    for (double c : entry.vector->coords()) {
        std::snprintf(buf, sizeof buf, " %.9f", c);
        std::cout << buf;
    }
    std::cout << "\n";
    for (auto j : entry.vector->support().indices()) {
        std::snprintf(buf, sizeof buf, "%.9f", entry.vector->coords()[j]);
        std::cout << "  " << ctx.attributes()[j].qualified() << " " << buf << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Concept-based activity recognition with deadline alerts"};
    app.require_subcommand(1);

    std::string context_path, reftimes_path, weights_path, model_path, events_path, out_path, horizon, activity;
    double theta = 0.6;
    long long tick = 60;

    auto* learn = app.add_subcommand("learn", "Build a model artifact from a context and reference times");
    learn->add_option("--context", context_path, "Formal context CSV")->required();
    learn->add_option("--reftimes", reftimes_path, "Reference-time CSV")->required();
    learn->add_option("--weights", weights_path, "Dimension weights CSV (default: all 1)");
    learn->add_option("--out", out_path, "Model artifact to write")->required();

    auto* recognize = app.add_subcommand("recognize", "Replay an event log and write a report");
    recognize->add_option("--model", model_path, "Model artifact")->required();
    recognize->add_option("--events", events_path, "Event log (JSON lines)")->required();
    recognize->add_option("--theta", theta, "Recognition threshold in (0,1]")->capture_default_str();
    recognize->add_option("--tick-seconds", tick, "Clock tick granularity")->capture_default_str();
    recognize->add_option("--horizon", horizon, "Replay end D:HH:MM:SS (default: end of last event's day)");
    recognize->add_option("--out", out_path, "Report file (default: stdout)");

    auto* lattice = app.add_subcommand("lattice", "Print every formal concept of a context");
    lattice->add_option("--context", context_path, "Formal context CSV")->required();

    auto* inspect = app.add_subcommand("inspect", "Show an activity's three-way concept and state vector");
    inspect->add_option("--model", model_path, "Model artifact")->required();
    inspect->add_option("activity", activity, "Activity name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*learn) return cmd_learn(context_path, reftimes_path, weights_path, out_path);
        if (*recognize) return cmd_recognize(model_path, events_path, theta, tick, horizon, out_path);
        if (*lattice) return cmd_lattice(context_path);
        if (*inspect) return cmd_inspect(model_path, activity);
    } catch (const kid::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}
