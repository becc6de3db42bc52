#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "kid/context.hpp"
#include "kid/engine.hpp"
#include "kid/space.hpp"

namespace kid {

inline constexpr std::string_view kModelFormat = "kid-model";
inline constexpr int kModelVersion = 1;

/// Persisted learning result: everything needed to rebuild ConceptMemory
/// and the reference table.
struct ModelArtifact {
    FormalContext context;
    ReferenceTimeTable reftimes;
    DimensionWeights weights;

    ConceptMemory memory() const { return ConceptMemory(context, weights); }

    /// Pretty-printed JSON document; identical inputs give identical bytes.
    std::string to_text() const;
    static ModelArtifact from_text(std::string_view text);  // throws Error
};

/// `Dimension,weight` lines; dimensions not listed keep weight 1.
DimensionWeights parse_weights(std::istream& in, const FormalContext& context);
DimensionWeights parse_weights(std::string_view text, const FormalContext& context);

/// One JSON object per line:
///   {"time":"0:10:34:00","dimension":"Magnetic","attribute":"Fridge","value":1}
/// Blank lines are skipped. Errors carry the 1-based line number. With a
/// context, attributes are resolved against it as well.
std::vector<SensorEvent> parse_events(std::istream& in, const FormalContext* context = nullptr);
std::vector<SensorEvent> parse_events(std::string_view text, const FormalContext* context = nullptr);
std::string render_event(const SensorEvent& e);

/// Single-line JSON with keys in a fixed order: at, kind, then the
/// populated payload fields.
std::string render_report_record(const EngineOutput& out);
EngineOutput parse_report_record(std::string_view line);  // throws Error
std::string render_report(const std::vector<EngineOutput>& outputs);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace kid
