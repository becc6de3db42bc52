#include "kid/engine.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

namespace kid {

Timestamp Timestamp::from_seconds(std::int64_t total) {
    if (total < 0) throw Error("timestamp before day 0");
    Timestamp t;
    t.total_ = total;
    return t;
}

Timestamp Timestamp::at(std::int64_t day, std::int64_t hour, std::int64_t minute, std::int64_t second) {
    if (day < 0 || hour < 0 || hour > 23 || minute < 0 || minute > 59 || second < 0 || second > 59)
        throw Error("timestamp field out of range");
    return from_seconds(day * 86400 + hour * 3600 + minute * 60 + second);
}

Timestamp Timestamp::parse(std::string_view text) {
    auto bad = [&] { return Error("unparseable timestamp '" + std::string(text) + "' (expected D:HH:MM:SS)"); };
    std::int64_t fields[4]{};
    std::size_t pos = 0;
    for (int f = 0; f < 4; ++f) {
        auto end = f < 3 ? text.find(':', pos) : text.size();
        if (end == std::string_view::npos) throw bad();
        auto part = text.substr(pos, end - pos);
        if (part.empty() || (f > 0 && part.size() != 2) || (f == 0 && part.size() > 1 && part[0] == '0'))
            throw bad();
        if (!std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; })) throw bad();
        auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), fields[f]);
        if (ec != std::errc{}) throw bad();
        pos = end + 1;
    }
    if (fields[1] > 23 || fields[2] > 59 || fields[3] > 59) throw bad();
    return at(fields[0], fields[1], fields[2], fields[3]);
}

std::string Timestamp::format() const {
    char buf[48];
    const auto sod = second_of_day();
    std::snprintf(buf, sizeof buf, "%lld:%02lld:%02lld:%02lld", static_cast<long long>(day()),
                  static_cast<long long>(sod / 3600), static_cast<long long>(sod / 60 % 60),
                  static_cast<long long>(sod % 60));
    return buf;
}

std::string to_string(EpisodeStatus s) {
    switch (s) {
        case EpisodeStatus::Recognized: return "Recognized";
        case EpisodeStatus::Uncertain: return "Uncertain";
        case EpisodeStatus::Unknown: return "Unknown";
    }
    return "Unknown";
}

std::string to_string(OutputKind k) {
    switch (k) {
        case OutputKind::EpisodeStart: return "EpisodeStart";
        case OutputKind::StatusChange: return "StatusChange";
        case OutputKind::Recognized: return "Recognized";
        case OutputKind::EpisodeEnd: return "EpisodeEnd";
        case OutputKind::Alert: return "Alert";
    }
    return "Alert";
}

std::string to_string(EndReason r) { return r == EndReason::NewActivity ? "NewActivity" : "AlertRaised"; }

EpisodeStatus parse_episode_status(std::string_view s) {
    if (s == "Recognized") return EpisodeStatus::Recognized;
    if (s == "Uncertain") return EpisodeStatus::Uncertain;
    if (s == "Unknown") return EpisodeStatus::Unknown;
    throw Error("unknown episode status '" + std::string(s) + "'");
}

OutputKind parse_output_kind(std::string_view s) {
    for (auto k : {OutputKind::EpisodeStart, OutputKind::StatusChange, OutputKind::Recognized, OutputKind::EpisodeEnd,
                   OutputKind::Alert})
        if (to_string(k) == s) return k;
    throw Error("unknown output kind '" + std::string(s) + "'");
}

EndReason parse_end_reason(std::string_view s) {
    if (s == "NewActivity") return EndReason::NewActivity;
    if (s == "AlertRaised") return EndReason::AlertRaised;
    throw Error("unknown end reason '" + std::string(s) + "'");
}

Engine::Engine(ConceptMemory memory, ReferenceTimeTable reftimes, EngineConfig config)
    : memory_(std::move(memory)), reftimes_(std::move(reftimes)), config_(config) {
    if (!(config_.theta > 0.0 && config_.theta <= 1.0)) throw Error("theta must lie in (0, 1]");
    if (config_.tick.seconds < 1) throw Error("tick must be at least 1 second");
    if (reftimes_.activities() != memory_.context().activities())
        throw Error("reference table and concept memory were built from different contexts");
}

std::vector<EngineOutput> Engine::on_event(const SensorEvent& e) {
    if (e.at < clock_) throw Error("event at " + e.at.format() + " precedes engine clock " + clock_.format());
    if (e.value != 0 && e.value != 1) throw Error("sensor value must be 0 or 1");
    const std::size_t attr = memory_.context().attribute_index(e.attr);

    std::vector<EngineOutput> out;
    expire(e.at, out);
    clock_ = e.at;
    if (e.value == 0) return out;

    if (!episode_) {
        open_episode(e.at, attr, out);
    } else if (episode_->status == EpisodeStatus::Recognized) {
        out.push_back({.at = e.at, .kind = OutputKind::EpisodeEnd, .reason = EndReason::NewActivity});
        episode_.reset();
        open_episode(e.at, attr, out);
    } else if (!episode_->cue.attrs.test(attr)) {
        episode_->cue.attrs.set(attr);
        evaluate(e.at, false, out);
    }
    // A deadline already behind the clock expires immediately.
    expire(e.at, out);
    return out;
}

std::vector<EngineOutput> Engine::on_tick(Timestamp now) {
    if (now < clock_) throw Error("tick at " + now.format() + " precedes engine clock " + clock_.format());
    std::vector<EngineOutput> out;
    expire(now, out);
    clock_ = now;
    return out;
}

void Engine::open_episode(Timestamp at, std::size_t attr, std::vector<EngineOutput>& out) {
    Episode ep;
    ep.started_at = at;
    ep.cue.attrs = memory_.context().empty_attributes();
    ep.cue.attrs.set(attr);
    ep.candidates = memory_.context().empty_activities();
    episode_ = std::move(ep);
    out.push_back({.at = at, .kind = OutputKind::EpisodeStart});
    evaluate(at, true, out);
}

void Engine::evaluate(Timestamp at, bool force_emit, std::vector<EngineOutput>& out) {
    Episode& ep = *episode_;
    const FormalContext& ctx = memory_.context();
    last_match_ = match_cue(memory_, ep.cue);
    const MatchResult& m = *last_match_;

    if (m.unique_top() && m.best_similarity >= config_.theta - kTieResolution) {
        const std::size_t a = m.candidates.front();
        const Duration ref = reftimes_.reference(a).value_or(reftimes_.global_horizon());
        ep.status = EpisodeStatus::Recognized;
        ep.activity = a;
        ep.recognized_at = at;
        ep.similarity = m.best_similarity;
        ep.candidates = ctx.empty_activities();
        ep.deadline = at + ref;
        out.push_back({.at = at,
                       .kind = OutputKind::Recognized,
                       .status = EpisodeStatus::Recognized,
                       .activity = ctx.activities()[a],
                       .deadline = ep.deadline,
                       .similarity = m.best_similarity});
        return;
    }

    const ActivitySet candidates = candidates_intersecting(memory_, ep.cue);
    std::optional<Duration> longest;
    for (auto i : candidates.indices()) {
        const auto& r = reftimes_.reference(i);
        if (r && (!longest || *r > *longest)) longest = *r;
    }
    const EpisodeStatus status = candidates.empty() ? EpisodeStatus::Unknown : EpisodeStatus::Uncertain;
    const Timestamp deadline = ep.started_at + longest.value_or(reftimes_.global_horizon());

    const bool changed = force_emit || status != ep.status || candidates != ep.candidates || deadline != ep.deadline;
    ep.status = status;
    ep.activity.reset();
    ep.similarity = m.best_similarity;
    ep.candidates = candidates;
    ep.deadline = deadline;
    if (changed)
        out.push_back({.at = at,
                       .kind = OutputKind::StatusChange,
                       .status = status,
                       .candidates = ctx.activity_names(candidates),
                       .deadline = deadline});
}

void Engine::expire(Timestamp now, std::vector<EngineOutput>& out) {
    if (!episode_ || now < episode_->deadline) return;
    const Episode& ep = *episode_;
    const Timestamp at = std::max(ep.deadline, clock_);
    EngineOutput alert{.at = at, .kind = OutputKind::Alert, .status = ep.status, .deadline = ep.deadline};
    if (ep.activity)
        alert.activity = memory_.context().activities()[*ep.activity];
    else
        alert.candidates = memory_.context().activity_names(ep.candidates);
    out.push_back(std::move(alert));
    out.push_back({.at = at, .kind = OutputKind::EpisodeEnd, .reason = EndReason::AlertRaised});
    episode_.reset();
}

std::vector<EngineOutput> run_stream(Engine& engine, const std::vector<SensorEvent>& events, Timestamp horizon) {
    for (std::size_t k = 1; k < events.size(); ++k)
        if (events[k].at < events[k - 1].at)
            throw Error("event " + std::to_string(k + 1) + " at " + events[k].at.format() + " is out of order");
    if (!events.empty() && horizon < events.back().at)
        throw Error("horizon " + horizon.format() + " precedes the last event");
    if (!events.empty() && events.front().at < engine.clock())
        throw Error("first event precedes the engine clock");

    std::vector<EngineOutput> out;
    auto append = [&](std::vector<EngineOutput>&& batch) {
        out.insert(out.end(), std::make_move_iterator(batch.begin()), std::make_move_iterator(batch.end()));
    };

    const std::int64_t tick = engine.config().tick.seconds;
    // First grid point strictly after the clock.
    std::int64_t next_tick = (engine.clock().total_seconds() / tick + 1) * tick;
    auto tick_until = [&](std::int64_t limit) {
        for (; next_tick <= limit; next_tick += tick) append(engine.on_tick(Timestamp::from_seconds(next_tick)));
    };

    for (const auto& e : events) {
        tick_until(e.at.total_seconds());
        append(engine.on_event(e));
    }
    if (horizon >= engine.clock()) {
        tick_until(horizon.total_seconds());
        append(engine.on_tick(horizon));
    }
    return out;
}

}  // namespace kid
