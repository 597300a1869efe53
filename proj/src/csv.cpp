#include "regimekit/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "regimekit/errors.hpp"

namespace regimekit {
namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(trim(std::string_view(line).substr(pos)));
            break;
        }
        out.push_back(trim(std::string_view(line).substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

double parse_cell(const std::string& cell, const std::string& file, std::size_t row,
                  const std::string& column) {
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw LoadError(file + ":" + std::to_string(row) + ": non-numeric value '" +
                        cell + "' in column '" + column + "'");
    return v;
}

} // namespace

std::vector<Series> load_csv(const std::string& path, const std::string& date_column,
                             const std::vector<std::string>& value_columns) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw LoadError(path + ": empty file");
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
        static_cast<unsigned char>(line[1]) == 0xBB &&
        static_cast<unsigned char>(line[2]) == 0xBF)
        line.erase(0, 3);

    const std::vector<std::string> header = split_row(line);
    std::size_t date_idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == date_column) date_idx = i;
    if (date_idx == header.size())
        throw LoadError(path + ": date column '" + date_column + "' not found");

    // Column selection: requested names, or everything but the date column.
    std::vector<std::size_t> selected;
    if (value_columns.empty()) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (i != date_idx) selected.push_back(i);
    } else {
        for (const auto& want : value_columns) {
            bool found = false;
            for (std::size_t i = 0; i < header.size(); ++i) {
                if (header[i] == want && i != date_idx) {
                    selected.push_back(i);
                    found = true;
                    break;
                }
            }
            if (!found)
                throw LoadError(path + ": value column '" + want + "' not found");
        }
    }
    if (selected.empty()) throw LoadError(path + ": no value columns");

    std::vector<Period> periods;
    std::vector<std::vector<double>> cols(selected.size());
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split_row(line);
        if (cells.size() != header.size())
            throw LoadError(path + ":" + std::to_string(row) + ": expected " +
                            std::to_string(header.size()) + " cells, got " +
                            std::to_string(cells.size()));

        Period p;
        try {
            p = Period::parse(cells[date_idx]);
        } catch (const LoadError& e) {
            throw LoadError(path + ":" + std::to_string(row) + ": " + e.what());
        }
        if (!periods.empty()) {
            const Period expected = periods.back().plus(1);
            if (p == periods.back())
                throw LoadError(path + ":" + std::to_string(row) +
                                ": duplicate period " + p.str());
            if (p != expected)
                throw LoadError(path + ":" + std::to_string(row) + ": gap at " +
                                expected.str() + " in column '" + date_column + "'");
        }
        periods.push_back(p);
        for (std::size_t i = 0; i < selected.size(); ++i)
            cols[i].push_back(parse_cell(cells[selected[i]], path, row,
                                         header[selected[i]]));
    }
    if (periods.empty()) throw LoadError(path + ": no data rows");

    std::vector<Series> out;
    out.reserve(selected.size());
    for (std::size_t i = 0; i < selected.size(); ++i)
        out.push_back(Series{header[selected[i]], periods.front(), std::move(cols[i])});
    return out;
}

void write_csv(const std::string& path, const std::vector<Series>& columns,
               const std::string& date_column) {
    if (columns.empty()) throw DomainError("write_csv: no columns");
    const Period start = columns.front().start;
    const std::size_t n = columns.front().size();
    for (const auto& s : columns)
        if (s.start != start || s.size() != n)
            throw DomainError("write_csv: series '" + s.name +
                              "' does not share the common period range");

    std::ofstream out(path);
    if (!out) throw LoadError("cannot write '" + path + "'");
    out << date_column;
    for (const auto& s : columns) out << ',' << s.name;
    out << '\n';
    char buf[32];
    for (std::size_t i = 0; i < n; ++i) {
        out << start.plus(static_cast<int>(i)).str();
        for (const auto& s : columns) {
            std::snprintf(buf, sizeof(buf), "%.17g", s.values[i]);
            out << ',' << buf;
        }
        out << '\n';
    }
}

const Series& find_series(const std::vector<Series>& table, const std::string& name) {
    for (const auto& s : table)
        if (s.name == name) return s;
    throw DomainError("unknown series '" + name + "'");
}

} // namespace regimekit
