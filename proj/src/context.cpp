#include "kid/context.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <sstream>

namespace kid {

namespace {

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            return out;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

struct NumberedLine {
    std::size_t number;
    std::string text;
};

std::vector<NumberedLine> read_lines(std::istream& in) {
    std::vector<NumberedLine> lines;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        lines.push_back({n, line});
    }
    return lines;
}

void check_name(const std::string& name, std::size_t line, std::size_t col, const char* what) {
    if (name.empty()) throw ParseError(line, col, std::string("empty ") + what + " name");
    if (name.find('.') != std::string::npos)
        throw ParseError(line, col, std::string(what) + " name '" + name + "' must not contain '.'");
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : Error("line " + std::to_string(line) + (column ? ", column " + std::to_string(column) : std::string()) +
            ": " + what),
      line_(line),
      column_(column) {}

FormalContext::FormalContext(std::vector<std::string> activities, std::vector<QualityDimension> dimensions,
                             std::vector<std::vector<std::uint8_t>> incidence)
    : activities_(std::move(activities)), dimensions_(std::move(dimensions)) {
    if (activities_.empty()) throw Error("context has no activities");
    if (dimensions_.empty()) throw Error("context has no quality dimensions");
    for (std::size_t i = 0; i < activities_.size(); ++i) {
        if (activities_[i].empty()) throw Error("empty activity name");
        for (std::size_t k = 0; k < i; ++k)
            if (activities_[k] == activities_[i]) throw Error("duplicate activity '" + activities_[i] + "'");
    }
    for (std::size_t d = 0; d < dimensions_.size(); ++d) {
        const auto& dim = dimensions_[d];
        if (dim.name.empty()) throw Error("empty dimension name");
        if (dim.attributes.empty()) throw Error("dimension '" + dim.name + "' has no attributes");
        for (std::size_t k = 0; k < d; ++k)
            if (dimensions_[k].name == dim.name) throw Error("duplicate dimension '" + dim.name + "'");
        for (std::size_t a = 0; a < dim.attributes.size(); ++a) {
            if (dim.attributes[a].empty()) throw Error("empty attribute name in dimension '" + dim.name + "'");
            for (std::size_t k = 0; k < a; ++k)
                if (dim.attributes[k] == dim.attributes[a])
                    throw Error("duplicate attribute '" + dim.name + "." + dim.attributes[a] + "'");
            attributes_.push_back({dim.name, dim.attributes[a]});
            attr_dimension_.push_back(d);
        }
    }
    if (incidence.size() != activities_.size()) throw Error("incidence row count does not match activities");
    columns_.assign(attributes_.size(), ActivitySet(activities_.size()));
    for (std::size_t i = 0; i < incidence.size(); ++i) {
        if (incidence[i].size() != attributes_.size())
            throw Error("incidence row for '" + activities_[i] + "' has wrong width");
        AttributeSet row(attributes_.size());
        for (std::size_t j = 0; j < attributes_.size(); ++j) {
            if (incidence[i][j] > 1) throw Error("non-binary incidence cell");
            if (incidence[i][j]) {
                row.set(j);
                columns_[j].set(i);
            }
        }
        rows_.push_back(std::move(row));
    }
}

std::size_t FormalContext::incidence_count() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.count();
    return n;
}

std::optional<std::size_t> FormalContext::find_activity(std::string_view name) const {
    auto it = std::find(activities_.begin(), activities_.end(), name);
    if (it == activities_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - activities_.begin());
}

std::size_t FormalContext::activity_index(std::string_view name) const {
    if (auto i = find_activity(name)) return *i;
    throw Error("unknown activity '" + std::string(name) + "'");
}

std::size_t FormalContext::attribute_index(std::string_view name) const {
    auto dot = name.find('.');
    if (dot != std::string_view::npos)
        return attribute_index(AttributeId{std::string(name.substr(0, dot)), std::string(name.substr(dot + 1))});
    std::optional<std::size_t> found;
    for (std::size_t j = 0; j < attributes_.size(); ++j) {
        if (attributes_[j].attribute != name) continue;
        if (found) throw Error("ambiguous attribute '" + std::string(name) + "'; qualify it with a dimension");
        found = j;
    }
    if (!found) throw Error("unknown attribute '" + std::string(name) + "'");
    return *found;
}

std::size_t FormalContext::attribute_index(const AttributeId& id) const {
    for (std::size_t j = 0; j < attributes_.size(); ++j)
        if (attributes_[j] == id) return j;
    throw Error("unknown attribute '" + id.qualified() + "'");
}

AttributeSet FormalContext::attributes_named(const std::vector<std::string>& names) const {
    AttributeSet s = empty_attributes();
    for (const auto& n : names) s.set(attribute_index(n));
    return s;
}

ActivitySet FormalContext::activities_named(const std::vector<std::string>& names) const {
    ActivitySet s = empty_activities();
    for (const auto& n : names) s.set(activity_index(n));
    return s;
}

std::vector<std::string> FormalContext::activity_names(const ActivitySet& s) const {
    std::vector<std::string> out;
    for (auto i : s.indices()) out.push_back(activities_[i]);
    return out;
}

std::vector<std::string> FormalContext::attribute_names(const AttributeSet& s) const {
    std::vector<std::string> out;
    for (auto j : s.indices()) out.push_back(attributes_[j].qualified());
    return out;
}

FormalContext parse_context(std::istream& in) {
    auto lines = read_lines(in);
    if (lines.size() < 2) throw ParseError(lines.empty() ? 1 : lines.back().number + 1, 0, "missing header rows");
    if (lines.size() < 3) throw ParseError(lines[1].number + 1, 0, "context has no activities");

    auto dim_row = split_fields(lines[0].text);
    auto attr_row = split_fields(lines[1].text);
    if (dim_row.size() != attr_row.size())
        throw ParseError(lines[1].number, 0,
                         "malformed header: " + std::to_string(dim_row.size() - 1) + " dimension cells but " +
                             std::to_string(attr_row.size() - 1) + " attribute cells");
    if (dim_row.size() < 2) throw ParseError(lines[0].number, 0, "context has no attribute columns");
    if (!dim_row[0].empty()) throw ParseError(lines[0].number, 1, "first header cell must be empty");
    if (!attr_row[0].empty()) throw ParseError(lines[1].number, 1, "first header cell must be empty");

    std::vector<QualityDimension> dims;
    for (std::size_t c = 1; c < dim_row.size(); ++c) {
        check_name(dim_row[c], lines[0].number, c + 1, "dimension");
        check_name(attr_row[c], lines[1].number, c + 1, "attribute");
        if (dims.empty() || dims.back().name != dim_row[c]) {
            for (const auto& d : dims)
                if (d.name == dim_row[c])
                    throw ParseError(lines[0].number, c + 1,
                                     "malformed header: dimension '" + dim_row[c] + "' columns are not contiguous");
            dims.push_back({dim_row[c], {}});
        }
        auto& attrs = dims.back().attributes;
        if (std::find(attrs.begin(), attrs.end(), attr_row[c]) != attrs.end())
            throw ParseError(lines[1].number, c + 1, "duplicate attribute '" + dim_row[c] + "." + attr_row[c] + "'");
        attrs.push_back(attr_row[c]);
    }

    std::vector<std::string> activities;
    std::vector<std::vector<std::uint8_t>> incidence;
    for (std::size_t r = 2; r < lines.size(); ++r) {
        const auto& line = lines[r];
        auto cells = split_fields(line.text);
        if (cells.size() != dim_row.size())
            throw ParseError(line.number, 0,
                             "expected " + std::to_string(dim_row.size()) + " fields, found " +
                                 std::to_string(cells.size()));
        if (cells[0].empty()) throw ParseError(line.number, 1, "empty activity name");
        if (std::find(activities.begin(), activities.end(), cells[0]) != activities.end())
            throw ParseError(line.number, 1, "duplicate activity '" + cells[0] + "'");
        std::vector<std::uint8_t> row;
        for (std::size_t c = 1; c < cells.size(); ++c) {
            if (cells[c] != "0" && cells[c] != "1")
                throw ParseError(line.number, c + 1,
                                 "non-binary cell '" + cells[c] + "' (activity " + cells[0] + ", attribute " +
                                     dim_row[c] + "." + attr_row[c] + ")");
            row.push_back(cells[c] == "1" ? 1 : 0);
        }
        activities.push_back(cells[0]);
        incidence.push_back(std::move(row));
    }
    return FormalContext(std::move(activities), std::move(dims), std::move(incidence));
}

FormalContext parse_context(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_context(in);
}

std::string serialize_context(const FormalContext& context) {
    std::string out;
    for (const auto& a : context.attributes()) out += "," + a.dimension;
    out += '\n';
    for (const auto& a : context.attributes()) out += "," + a.attribute;
    out += '\n';
    for (std::size_t i = 0; i < context.activity_count(); ++i) {
        out += context.activities()[i];
        for (std::size_t j = 0; j < context.attribute_count(); ++j) out += context.incident(i, j) ? ",1" : ",0";
        out += '\n';
    }
    return out;
}

AttributeSet intent_of(const FormalContext& context, std::string_view activity) {
    return context.row(context.activity_index(activity));
}

Duration Duration::parse(std::string_view text) {
    auto bad = [&] { return Error("unparseable duration '" + std::string(text) + "' (expected H:MM:SS)"); };
    auto c1 = text.find(':');
    if (c1 == std::string_view::npos || c1 == 0) throw bad();
    auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos || c2 != c1 + 3 || text.size() != c2 + 3) throw bad();
    auto digits = [&](std::string_view s) {
        std::int64_t v = 0;
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) throw bad();
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{}) throw bad();
        return v;
    };
    auto h = text.substr(0, c1);
    if (h.size() > 1 && h[0] == '0') throw bad();
    std::int64_t hours = digits(h);
    std::int64_t minutes = digits(text.substr(c1 + 1, 2));
    std::int64_t seconds = digits(text.substr(c2 + 1, 2));
    if (minutes > 59 || seconds > 59) throw bad();
    return Duration{hours * 3600 + minutes * 60 + seconds};
}

std::string Duration::format() const {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%lld:%02lld:%02lld", static_cast<long long>(seconds / 3600),
                  static_cast<long long>(seconds / 60 % 60), static_cast<long long>(seconds % 60));
    return buf;
}

ReferenceTimeTable::ReferenceTimeTable(const FormalContext& context,
                                       std::vector<std::optional<Duration>> per_activity)
    : activities_(context.activities()), per_activity_(std::move(per_activity)) {
    if (per_activity_.size() != activities_.size())
        throw Error("reference table must have one entry per activity");
    bool any = false;
    for (const auto& d : per_activity_) {
        if (!d) continue;
        if (d->seconds < 0) throw Error("negative reference time");
        if (!any || *d > horizon_) horizon_ = *d;
        any = true;
    }
    if (!any) throw Error("reference table has no available duration");
}

ReferenceTimeTable parse_reference_times(std::istream& in, const FormalContext& context) {
    std::vector<std::optional<Duration>> entries(context.activity_count());
    std::vector<bool> seen(context.activity_count(), false);
    std::size_t last_line = 0;
    for (const auto& line : read_lines(in)) {
        last_line = line.number;
        auto cells = split_fields(line.text);
        if (cells.size() != 2) throw ParseError(line.number, 0, "expected 'activity,duration'");
        auto idx = context.find_activity(cells[0]);
        if (!idx) throw ParseError(line.number, 1, "unknown activity '" + cells[0] + "'");
        if (seen[*idx]) throw ParseError(line.number, 1, "duplicate entry for activity '" + cells[0] + "'");
        seen[*idx] = true;
        if (cells[1] == "NA") continue;
        try {
            entries[*idx] = Duration::parse(cells[1]);
        } catch (const Error& e) {
            throw ParseError(line.number, 2, e.what());
        }
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i])
            throw ParseError(last_line + 1, 0, "missing reference time for activity '" + context.activities()[i] + "'");
    try {
        return ReferenceTimeTable(context, std::move(entries));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(last_line, 0, e.what());
    }
}

ReferenceTimeTable parse_reference_times(std::string_view text, const FormalContext& context) {
    std::istringstream in{std::string(text)};
    return parse_reference_times(in, context);
}

std::string serialize_reference_times(const ReferenceTimeTable& table) {
    std::string out;
    for (std::size_t i = 0; i < table.activities().size(); ++i) {
        const auto& d = table.reference(i);
        out += table.activities()[i] + "," + (d ? d->format() : std::string("NA")) + "\n";
    }
    return out;
}

}  // namespace kid
