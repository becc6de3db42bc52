#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kid/bitset.hpp"

namespace kid {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input format error with a 1-based line and column (column 0 when the
/// whole line is at fault).
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

struct QualityDimension {
    std::string name;
    std::vector<std::string> attributes;
};

struct AttributeId {
    std::string dimension;
    std::string attribute;

    std::string qualified() const { return dimension + "." + attribute; }
    friend bool operator==(const AttributeId&, const AttributeId&) = default;
};

/// Activities x dimension-qualified attributes with binary incidence.
/// Immutable once constructed; row and column order is the file order.
class FormalContext {
public:
    FormalContext(std::vector<std::string> activities, std::vector<QualityDimension> dimensions,
                  std::vector<std::vector<std::uint8_t>> incidence);

    std::size_t activity_count() const { return activities_.size(); }
    std::size_t attribute_count() const { return attributes_.size(); }

    const std::vector<std::string>& activities() const { return activities_; }
    const std::vector<QualityDimension>& dimensions() const { return dimensions_; }
    /// Attributes in canonical (dimension-major) order.
    const std::vector<AttributeId>& attributes() const { return attributes_; }
    /// Index into dimensions() for each canonical attribute.
    std::size_t dimension_of(std::size_t attr) const { return attr_dimension_[attr]; }

    bool incident(std::size_t activity, std::size_t attr) const { return rows_[activity].test(attr); }
    const AttributeSet& row(std::size_t activity) const { return rows_[activity]; }
    const ActivitySet& column(std::size_t attr) const { return columns_[attr]; }

    std::size_t incidence_count() const;

    std::optional<std::size_t> find_activity(std::string_view name) const;
    std::size_t activity_index(std::string_view name) const;  // throws Error

    /// Resolves "Dimension.Attribute", or a bare attribute name when it
    /// is unique across dimensions.
    std::size_t attribute_index(std::string_view name) const;  // throws Error
    std::size_t attribute_index(const AttributeId& id) const;  // throws Error

    AttributeSet empty_attributes() const { return AttributeSet(attribute_count()); }
    ActivitySet empty_activities() const { return ActivitySet(activity_count()); }
    AttributeSet attributes_named(const std::vector<std::string>& names) const;
    ActivitySet activities_named(const std::vector<std::string>& names) const;

    std::vector<std::string> activity_names(const ActivitySet& s) const;
    std::vector<std::string> attribute_names(const AttributeSet& s) const;

    friend bool operator==(const FormalContext& a, const FormalContext& b) {
        return a.activities_ == b.activities_ && a.attributes_ == b.attributes_ && a.rows_ == b.rows_;
    }

private:
    std::vector<std::string> activities_;
    std::vector<QualityDimension> dimensions_;
    std::vector<AttributeId> attributes_;
    std::vector<std::size_t> attr_dimension_;
    std::vector<AttributeSet> rows_;
    std::vector<ActivitySet> columns_;
};

FormalContext parse_context(std::istream& in);
FormalContext parse_context(std::string_view text);
/// Canonical text form; parse_context(serialize_context(c)) == c.
std::string serialize_context(const FormalContext& context);

/// Attributes with incidence 1 in the activity's row.
AttributeSet intent_of(const FormalContext& context, std::string_view activity);

/// Whole seconds. Text form is H:MM:SS with unpadded hours.
struct Duration {
    std::int64_t seconds = 0;

    static Duration parse(std::string_view text);  // throws Error
    std::string format() const;

    friend auto operator<=>(const Duration&, const Duration&) = default;
};

class ReferenceTimeTable {
public:
    /// One entry per context activity; nullopt marks Unavailable.
    ReferenceTimeTable(const FormalContext& context, std::vector<std::optional<Duration>> per_activity);

    const std::optional<Duration>& reference(std::size_t activity) const { return per_activity_[activity]; }
    const std::vector<std::optional<Duration>>& entries() const { return per_activity_; }
    const std::vector<std::string>& activities() const { return activities_; }
    Duration global_horizon() const { return horizon_; }

    friend bool operator==(const ReferenceTimeTable&, const ReferenceTimeTable&) = default;

private:
    std::vector<std::string> activities_;
    std::vector<std::optional<Duration>> per_activity_;
    Duration horizon_;
};

ReferenceTimeTable parse_reference_times(std::istream& in, const FormalContext& context);
ReferenceTimeTable parse_reference_times(std::string_view text, const FormalContext& context);
std::string serialize_reference_times(const ReferenceTimeTable& table);

}  // namespace kid
