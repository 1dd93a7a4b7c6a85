#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace qfriction {

struct Column {
    std::string name;  ///< no spaces or commas
    std::string unit;  ///< "1" for dimensionless
};

/**
 * Columnar curve data behind every file the tool emits.
 *
 * Invariants enforced by validate(): at least one column and one row,
 * rectangular rows, all values finite, first column strictly
 * increasing. Metadata is an ordered key/value list so emission is
 * byte-deterministic.
 */
class CurveTable {
public:
    std::vector<Column> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    void add_meta(std::string key, std::string value);
    const std::string* find_meta(const std::string& key) const;
    void validate() const;

    std::size_t column_index(const std::string& name) const;  ///< throws if absent
};

/// CSV: '#'-prefixed metadata lines, a header row, then comma-separated
/// values printed with 17 significant digits (bit-exact round trip).
void write_csv(const CurveTable& table, std::ostream& out);
CurveTable read_csv(std::istream& in);

/// JSON: one object {schema, metadata, columns, rows}; schema versioned.
void write_json(const CurveTable& table, std::ostream& out);
CurveTable read_json(std::istream& in);

struct SvgStyle {
    int width = 760;
    int height = 520;
    bool log_x = false;
    bool log_y = false;
    std::string title;
};

/// Standalone SVG line plot: one polyline per ordinate column, decade
/// ticks on logarithmic axes, legend from column names.
void write_svg(const CurveTable& table, const SvgStyle& style, std::ostream& out);

enum class TableFormat { csv, json, svg };

TableFormat parse_format(const std::string& name);  ///< throws std::invalid_argument

/// Writes in the requested format; file problems raise io_error.
void write_table_file(const CurveTable& table, const std::string& path,
                      TableFormat format, const SvgStyle& style = {});

/// Reads a table back (csv or json); used by the round-trip tests and
/// by downstream consumers of emitted data.
CurveTable read_table_file(const std::string& path, TableFormat format);

}  // namespace qfriction
