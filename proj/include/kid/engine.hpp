#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kid/context.hpp"
#include "kid/space.hpp"

namespace kid {

/// Day index plus second of day, stored as total seconds since day 0.
/// Text form is D:HH:MM:SS.
class Timestamp {
public:
    constexpr Timestamp() = default;
    static Timestamp from_seconds(std::int64_t total);
    static Timestamp at(std::int64_t day, std::int64_t hour, std::int64_t minute, std::int64_t second);
    static Timestamp parse(std::string_view text);  // throws Error

    std::int64_t day() const { return total_ / 86400; }
    std::int64_t second_of_day() const { return total_ % 86400; }
    std::int64_t total_seconds() const { return total_; }
    /// 23:59:59 on this timestamp's day.
    Timestamp end_of_day() const { return from_seconds(day() * 86400 + 86399); }
    std::string format() const;

    friend Timestamp operator+(Timestamp t, Duration d) { return from_seconds(t.total_ + d.seconds); }
    friend auto operator<=>(const Timestamp&, const Timestamp&) = default;

private:
    std::int64_t total_ = 0;
};

struct SensorEvent {
    Timestamp at;
    AttributeId attr;
    /// Only activations (1) contribute to the cue; releases (0) are ignored.
    int value = 1;

    friend bool operator==(const SensorEvent&, const SensorEvent&) = default;
};

struct EngineConfig {
    double theta = 0.6;
    Duration tick{60};
};

enum class EpisodeStatus { Recognized, Uncertain, Unknown };
enum class OutputKind { EpisodeStart, StatusChange, Recognized, EpisodeEnd, Alert };
enum class EndReason { NewActivity, AlertRaised };

std::string to_string(EpisodeStatus s);
std::string to_string(OutputKind k);
std::string to_string(EndReason r);
EpisodeStatus parse_episode_status(std::string_view s);
OutputKind parse_output_kind(std::string_view s);
EndReason parse_end_reason(std::string_view s);

struct Episode {
    Timestamp started_at;
    Cue cue;
    EpisodeStatus status = EpisodeStatus::Unknown;
    /// Recognized status only.
    std::optional<std::size_t> activity;
    Timestamp recognized_at;
    double similarity = 0.0;
    /// Uncertain/Unknown status: activities intersecting the cue.
    ActivitySet candidates;
    Timestamp deadline;
};

/// One engine emission. Payload fields are populated per kind:
///   EpisodeStart  -
///   StatusChange  status, candidates, deadline
///   Recognized    status, activity, similarity, deadline
///   EpisodeEnd    reason
///   Alert         status, activity or candidates, deadline (the expired one)
struct EngineOutput {
    Timestamp at;
    OutputKind kind = OutputKind::EpisodeStart;
    std::optional<EpisodeStatus> status;
    std::optional<std::string> activity;
    std::vector<std::string> candidates;
    std::optional<Timestamp> deadline;
    std::optional<double> similarity;
    std::optional<EndReason> reason;

    friend bool operator==(const EngineOutput&, const EngineOutput&) = default;
};

/// Online recognizer. Single owner; not safe for concurrent mutation.
class Engine {
public:
    Engine(ConceptMemory memory, ReferenceTimeTable reftimes, EngineConfig config);

    std::vector<EngineOutput> on_event(const SensorEvent& e);
    std::vector<EngineOutput> on_tick(Timestamp now);

    Timestamp clock() const { return clock_; }
    const std::optional<Episode>& episode() const { return episode_; }
    Duration global_horizon() const { return reftimes_.global_horizon(); }
    const ConceptMemory& memory() const { return memory_; }
    const EngineConfig& config() const { return config_; }
    /// Result of the most recent cue evaluation.
    const std::optional<MatchResult>& last_match() const { return last_match_; }

private:
    void open_episode(Timestamp at, std::size_t attr, std::vector<EngineOutput>& out);
    void evaluate(Timestamp at, bool force_emit, std::vector<EngineOutput>& out);
    void expire(Timestamp now, std::vector<EngineOutput>& out);

    ConceptMemory memory_;
    ReferenceTimeTable reftimes_;
    EngineConfig config_;
    Timestamp clock_;
    std::optional<Episode> episode_;
    std::optional<MatchResult> last_match_;
};

/// Replays `events` against `engine`, interleaving clock ticks every
/// config().tick seconds (aligned to multiples of the tick since day 0)
/// and a final tick at `horizon`. A tick due at an event's instant runs
/// before the event.
std::vector<EngineOutput> run_stream(Engine& engine, const std::vector<SensorEvent>& events, Timestamp horizon);

}  // namespace kid
