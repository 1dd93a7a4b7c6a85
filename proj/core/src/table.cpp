#include "qfriction/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qfriction/errors.hpp"

namespace qfriction {

namespace {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);  // 17 significant digits
    return buf;
}

bool plain_token(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c == ',' || c == ' ' || c == '\n' || c == '\r' || c == '#') return false;
    }
    return true;
}

}  // namespace

void CurveTable::add_meta(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
}

const std::string* CurveTable::find_meta(const std::string& key) const {
    for (const auto& [k, v] : metadata) {
        if (k == key) return &v;
    }
    return nullptr;
}

std::size_t CurveTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == name) return i;
    }
    throw std::invalid_argument("no column named '" + name + "'");
}

void CurveTable::validate() const {
    if (columns.empty()) {
        throw std::invalid_argument("table has no columns");
    }
    if (rows.empty()) {
        throw std::invalid_argument("table has no rows");
    }
    for (const auto& col : columns) {
        if (!plain_token(col.name) || col.unit.empty()) {
            throw std::invalid_argument("column names/units must be non-empty, "
                                        "without spaces or commas");
        }
    }
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& row : rows) {
        if (row.size() != columns.size()) {
            throw std::invalid_argument("ragged row in table");
        }
        for (double v : row) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("non-finite value in table");
            }
        }
        if (!(row[0] > prev)) {
            throw std::invalid_argument("abscissa must be strictly increasing");
        }
        prev = row[0];
    }
}

void write_csv(const CurveTable& table, std::ostream& out) {
    table.validate();
    out << "# qfriction-table schema=1\n";
    for (const auto& [key, value] : table.metadata) {
        out << "# meta " << key << "=" << value << "\n";
    }
    out << "# units";
    for (const auto& col : table.columns) out << " " << col.unit;
    out << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i].name;
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_value(row[i]);
        }
        out << "\n";
    }
}

CurveTable read_csv(std::istream& in) {
    CurveTable table;
    std::string line;
    std::vector<std::string> units;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string tag;
            ls >> tag;
            if (tag == "meta") {
                std::string rest;
                std::getline(ls, rest);
                const auto eq = rest.find('=');
                if (eq != std::string::npos) {
                    std::string key = rest.substr(0, eq);
                    while (!key.empty() && key.front() == ' ') key.erase(key.begin());
                    table.add_meta(key, rest.substr(eq + 1));
                }
            } else if (tag == "units") {
                std::string unit;
                while (ls >> unit) units.push_back(unit);
            }
            continue;
        }
        std::istringstream ls(line);
        std::string cell;
        if (!header_seen) {
            while (std::getline(ls, cell, ',')) {
                table.columns.push_back({cell, "1"});
            }
            for (std::size_t i = 0; i < units.size() && i < table.columns.size(); ++i) {
                table.columns[i].unit = units[i];
            }
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        row.reserve(table.columns.size());
        while (std::getline(ls, cell, ',')) {
            row.push_back(std::strtod(cell.c_str(), nullptr));
        }
        table.rows.push_back(std::move(row));
    }
    table.validate();
    return table;
}

void write_json(const CurveTable& table, std::ostream& out) {
    table.validate();
    nlohmann::ordered_json doc;
    doc["schema"] = "qfriction-table";
    doc["schema_version"] = 1;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.metadata) meta[key] = value;
    doc["metadata"] = std::move(meta);
    doc["columns"] = nlohmann::ordered_json::array();
    for (const auto& col : table.columns) {
        doc["columns"].push_back({{"name", col.name}, {"unit", col.unit}});
    }
    doc["rows"] = table.rows;
    out << doc.dump(2) << "\n";
}

CurveTable read_json(std::istream& in) {
    nlohmann::ordered_json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw io_error(std::string("invalid JSON table: ") + e.what());
    }
    if (doc.value("schema_version", 0) != 1) {
        throw io_error("unsupported table schema version");
    }
    CurveTable table;
    if (doc.contains("metadata")) {
        for (const auto& [key, value] : doc["metadata"].items()) {
            table.add_meta(key, value.get<std::string>());
        }
    }
    for (const auto& col : doc.at("columns")) {
        table.columns.push_back(
            {col.at("name").get<std::string>(), col.at("unit").get<std::string>()});
    }
    for (const auto& row : doc.at("rows")) {
        table.rows.push_back(row.get<std::vector<double>>());
    }
    table.validate();
    return table;
}

namespace {

struct AxisMap {
    double lo, hi;
    double pix0, pix1;
    bool log;

    double operator()(double v) const {
        const double a = log ? std::log10(v) : v;
        const double l = log ? std::log10(lo) : lo;
        const double h = log ? std::log10(hi) : hi;
        const double f = (h > l) ? (a - l) / (h - l) : 0.5;
        return pix0 + f * (pix1 - pix0);
    }
};

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string format_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};
constexpr const char* kDashes[] = {"none", "6,3", "2,3", "8,3,2,3", "4,2", "1,2"};

}  // namespace

void write_svg(const CurveTable& table, const SvgStyle& style, std::ostream& out) {
    table.validate();
    if (table.columns.size() < 2) {
        throw std::invalid_argument("an SVG plot needs at least two columns");
    }
    const int width = style.width;
    const int height = style.height;
    const double ml = 70, mr = 20, mt = style.title.empty() ? 20 : 40, mb = 50;

    double x_lo = table.rows.front()[0], x_hi = table.rows.back()[0];
    double y_lo = table.rows.front()[1], y_hi = y_lo;
    for (const auto& row : table.rows) {
        for (std::size_t c = 1; c < row.size(); ++c) {
            y_lo = std::min(y_lo, row[c]);
            y_hi = std::max(y_hi, row[c]);
        }
    }
    if (style.log_y) {
        // Positive floor for the log scale.
        double positive_min = y_hi;
        for (const auto& row : table.rows) {
            for (std::size_t c = 1; c < row.size(); ++c) {
                if (row[c] > 0.0) positive_min = std::min(positive_min, row[c]);
            }
        }
        y_lo = positive_min;
    }
    if (y_hi <= y_lo) y_hi = y_lo + 1.0;

    const AxisMap X{x_lo, x_hi, ml, width - mr, style.log_x};
    const AxisMap Y{y_lo, y_hi, height - mb, mt, style.log_y};

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
        << height << "\">\n";
    out << "  <rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"white\"/>\n";
    if (!style.title.empty()) {
        out << "  <text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"15\">"
            << xml_escape(style.title) << "</text>\n";
    }

    // Frame.
    out << "  <rect x=\"" << ml << "\" y=\"" << mt << "\" width=\""
        << width - ml - mr << "\" height=\"" << height - mt - mb
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    // Ticks: decades on log axes, five linear ticks otherwise.
    auto emit_x_tick = [&](double v) {
        const double px = X(v);
        out << "  <line x1=\"" << px << "\" y1=\"" << height - mb << "\" x2=\""
            << px << "\" y2=\"" << height - mb + 5 << "\" stroke=\"black\"/>\n";
        out << "  <text x=\"" << px << "\" y=\"" << height - mb + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            << "font-size=\"11\">" << format_tick(v) << "</text>\n";
    };
    auto emit_y_tick = [&](double v) {
        const double py = Y(v);
        out << "  <line x1=\"" << ml - 5 << "\" y1=\"" << py << "\" x2=\"" << ml
            << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
        out << "  <text x=\"" << ml - 8 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
            << "font-size=\"11\">" << format_tick(v) << "</text>\n";
    };
    if (style.log_x) {
        for (int d = static_cast<int>(std::ceil(std::log10(x_lo)));
             d <= static_cast<int>(std::floor(std::log10(x_hi) + 1e-9)); ++d) {
            emit_x_tick(std::pow(10.0, d));
        }
    } else {
        for (int i = 0; i <= 4; ++i) emit_x_tick(x_lo + (x_hi - x_lo) * i / 4.0);
    }
    if (style.log_y) {
        for (int d = static_cast<int>(std::ceil(std::log10(y_lo)));
             d <= static_cast<int>(std::floor(std::log10(y_hi) + 1e-9)); ++d) {
            emit_y_tick(std::pow(10.0, d));
        }
    } else {
        for (int i = 0; i <= 4; ++i) emit_y_tick(y_lo + (y_hi - y_lo) * i / 4.0);
    }

    // Axis labels from the column names.
    out << "  <text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << xml_escape(table.columns[0].name) << "</text>\n";

    // Series.
    const std::size_t n_series = table.columns.size() - 1;
    for (std::size_t c = 1; c < table.columns.size(); ++c) {
        const char* color = kPalette[(c - 1) % 6];
        const char* dash = kDashes[(c - 1) % 6];
        out << "  <polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"";
        if (std::string(dash) != "none") {
            out << " stroke-dasharray=\"" << dash << "\"";
        }
        out << " points=\"";
        bool first = true;
        for (const auto& row : table.rows) {
            if (style.log_y && !(row[c] > 0.0)) continue;
            out << (first ? "" : " ") << X(row[0]) << "," << Y(row[c]);
            first = false;
        }
        out << "\"/>\n";
    }

    // Legend.
    const double lx = ml + 12;
    double ly = mt + 16;
    for (std::size_t c = 1; c <= n_series; ++c) {
        const char* color = kPalette[(c - 1) % 6];
        out << "  <line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\""
            << lx + 24 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"";
        const char* dash = kDashes[(c - 1) % 6];
        if (std::string(dash) != "none") {
            out << " stroke-dasharray=\"" << dash << "\"";
        }
        out << "/>\n";
        out << "  <text x=\"" << lx + 30 << "\" y=\"" << ly
            << "\" font-family=\"sans-serif\" font-size=\"11\">"
            << xml_escape(table.columns[c].name) << "</text>\n";
        ly += 16;
    }
    out << "</svg>\n";
}

TableFormat parse_format(const std::string& name) {
    if (name == "csv") return TableFormat::csv;
    if (name == "json") return TableFormat::json;
    if (name == "svg") return TableFormat::svg;
    throw std::invalid_argument("unknown format '" + name +
                                "'; expected csv, json or svg");
}

void write_table_file(const CurveTable& table, const std::string& path,
                      TableFormat format, const SvgStyle& style) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw io_error("cannot open '" + path + "' for writing");
    }
    switch (format) {
        case TableFormat::csv: write_csv(table, out); break;
        case TableFormat::json: write_json(table, out); break;
        case TableFormat::svg: write_svg(table, style, out); break;
    }
    out.flush();
    if (!out) {
        throw io_error("write to '" + path + "' failed");
    }
}

CurveTable read_table_file(const std::string& path, TableFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot open '" + path + "' for reading");
    }
    switch (format) {
        case TableFormat::csv: return read_csv(in);
        case TableFormat::json: return read_json(in);
        case TableFormat::svg: break;
    }
    throw std::invalid_argument("reading SVG back is not supported");
}

}  // namespace qfriction
