#include "kid/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

namespace kid {

using ordered_json = nlohmann::ordered_json;

std::string ModelArtifact::to_text() const {
    ordered_json doc;
    doc["format"] = kModelFormat;
    doc["version"] = kModelVersion;

    ordered_json basis = ordered_json::array();
    for (const auto& a : context.attributes()) basis.push_back(a.qualified());
    doc["basis"] = basis;

    ordered_json dims = ordered_json::array();
    for (std::size_t d = 0; d < context.dimensions().size(); ++d) {
        const auto& dim = context.dimensions()[d];
        dims.push_back({{"name", dim.name}, {"attributes", dim.attributes}, {"weight", weights[d]}});
    }
    doc["dimensions"] = dims;

    ordered_json acts = ordered_json::array();
    for (std::size_t i = 0; i < context.activity_count(); ++i) {
        std::string row;
        for (std::size_t j = 0; j < context.attribute_count(); ++j) row += context.incident(i, j) ? '1' : '0';
        const auto& ref = reftimes.reference(i);
        acts.push_back({{"name", context.activities()[i]},
                        {"row", row},
                        {"reference", ref ? ordered_json(ref->format()) : ordered_json(nullptr)}});
    }
    doc["activities"] = acts;
    doc["global_horizon"] = reftimes.global_horizon().format();
    return doc.dump(2) + "\n";
}

ModelArtifact ModelArtifact::from_text(std::string_view text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("model is not valid JSON: ") + e.what());
    }
    try {
        if (doc.at("format").get<std::string>() != kModelFormat) throw Error("not a model artifact");
        const int version = doc.at("version").get<int>();
        if (version != kModelVersion)
            throw Error("unsupported model version " + std::to_string(version) + " (expected " +
                        std::to_string(kModelVersion) + ")");

        std::vector<QualityDimension> dims;
        std::vector<double> w;
        for (const auto& d : doc.at("dimensions")) {
            dims.push_back({d.at("name").get<std::string>(), d.at("attributes").get<std::vector<std::string>>()});
            w.push_back(d.at("weight").get<double>());
        }
        std::vector<std::string> names;
        std::vector<std::vector<std::uint8_t>> incidence;
        std::vector<std::optional<Duration>> refs;
        for (const auto& a : doc.at("activities")) {
            names.push_back(a.at("name").get<std::string>());
            std::vector<std::uint8_t> row;
            for (char c : a.at("row").get<std::string>()) {
                if (c != '0' && c != '1') throw Error("non-binary row in activity '" + names.back() + "'");
                row.push_back(c == '1' ? 1 : 0);
            }
            incidence.push_back(std::move(row));
            const auto& r = a.at("reference");
            refs.push_back(r.is_null() ? std::nullopt : std::optional<Duration>(Duration::parse(r.get<std::string>())));
        }
        FormalContext context(std::move(names), std::move(dims), std::move(incidence));

        const auto basis = doc.at("basis").get<std::vector<std::string>>();
        std::vector<std::string> expected;
        for (const auto& a : context.attributes()) expected.push_back(a.qualified());
        if (basis != expected) throw Error("basis does not match dimension attributes");

        ReferenceTimeTable reftimes(context, std::move(refs));
        if (doc.at("global_horizon").get<std::string>() != reftimes.global_horizon().format())
            throw Error("stored global horizon is inconsistent with reference times");
        DimensionWeights weights(std::move(w));
        return ModelArtifact{std::move(context), std::move(reftimes), std::move(weights)};
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed model artifact: ") + e.what());
    }
}

DimensionWeights parse_weights(std::istream& in, const FormalContext& context) {
    DimensionWeights weights = DimensionWeights::uniform(context);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError(n, 0, "expected 'dimension,weight'");
        const std::string name = line.substr(0, comma);
        const std::string value = line.substr(comma + 1);
        const auto& dims = context.dimensions();
        std::size_t d = 0;
        while (d < dims.size() && dims[d].name != name) ++d;
        if (d == dims.size()) throw ParseError(n, 1, "unknown dimension '" + name + "'");
        double w = 0.0;
        auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), w);
        if (ec != std::errc{} || p != value.data() + value.size())
            throw ParseError(n, 2, "unparseable weight '" + value + "'");
        try {
            weights.set(d, w);
        } catch (const Error& e) {
            throw ParseError(n, 2, e.what());
        }
    }
    return weights;
}

DimensionWeights parse_weights(std::string_view text, const FormalContext& context) {
    std::istringstream in{std::string(text)};
    return parse_weights(in, context);
}

std::vector<SensorEvent> parse_events(std::istream& in, const FormalContext* context) {
    std::vector<SensorEvent> events;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            const auto obj = nlohmann::json::parse(line);
            SensorEvent e;
            e.at = Timestamp::parse(obj.at("time").get<std::string>());
            e.attr = {obj.at("dimension").get<std::string>(), obj.at("attribute").get<std::string>()};
            if (context) (void)context->attribute_index(e.attr);
            e.value = obj.contains("value") ? obj.at("value").get<int>() : 1;
            if (e.value != 0 && e.value != 1) throw Error("value must be 0 or 1");
            if (!events.empty() && e.at < events.back().at)
                throw Error("event at " + e.at.format() + " precedes previous event at " + events.back().at.format());
            events.push_back(std::move(e));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(n, 0, std::string("malformed event: ") + e.what());
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(n, 0, e.what());
        }
    }
    return events;
}

std::vector<SensorEvent> parse_events(std::string_view text, const FormalContext* context) {
    std::istringstream in{std::string(text)};
    return parse_events(in, context);
}

std::string render_event(const SensorEvent& e) {
    ordered_json obj;
    obj["time"] = e.at.format();
    obj["dimension"] = e.attr.dimension;
    obj["attribute"] = e.attr.attribute;
    obj["value"] = e.value;
    return obj.dump();
}

std::string render_report_record(const EngineOutput& out) {
    ordered_json obj;
    obj["at"] = out.at.format();
    obj["kind"] = to_string(out.kind);
    if (out.status) obj["status"] = to_string(*out.status);
    if (out.activity) obj["activity"] = *out.activity;
    if (!out.candidates.empty() || out.kind == OutputKind::StatusChange ||
        (out.kind == OutputKind::Alert && !out.activity))
        obj["candidates"] = out.candidates;
    if (out.deadline) obj["deadline"] = out.deadline->format();
    if (out.similarity) obj["similarity"] = *out.similarity;
    if (out.reason) obj["reason"] = to_string(*out.reason);
    return obj.dump();
}

EngineOutput parse_report_record(std::string_view line) {
    try {
        const auto obj = nlohmann::json::parse(line);
        EngineOutput out;
        out.at = Timestamp::parse(obj.at("at").get<std::string>());
        out.kind = parse_output_kind(obj.at("kind").get<std::string>());
        if (obj.contains("status")) out.status = parse_episode_status(obj["status"].get<std::string>());
        if (obj.contains("activity")) out.activity = obj["activity"].get<std::string>();
        if (obj.contains("candidates")) out.candidates = obj["candidates"].get<std::vector<std::string>>();
        if (obj.contains("deadline")) out.deadline = Timestamp::parse(obj["deadline"].get<std::string>());
        if (obj.contains("similarity")) out.similarity = obj["similarity"].get<double>();
        if (obj.contains("reason")) out.reason = parse_end_reason(obj["reason"].get<std::string>());
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed report record: ") + e.what());
    }
}

std::string render_report(const std::vector<EngineOutput>& outputs) {
    std::string text;
    for (const auto& o : outputs) text += render_report_record(o) + "\n";
    return text;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error("cannot rename onto '" + path.string() + "': " + ec.message());
    }
}

}  // namespace kid
