#include "mixtest/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mixtest {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
    return s.substr(b, e - b);
}

// Parses one field as a double; requires the whole field to be consumed.
bool parse_double(const std::string& field, double& out) {
    const std::string t = trim(field);
    if (t.empty()) return false;
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE) return false;
    out = v;
    return true;
}

std::string where(const std::string& path, std::size_t line_no) {
    return path + ":" + std::to_string(line_no) + ": ";
}

}  // namespace

Dataset read_csv_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);

    std::vector<double> values;
    std::size_t dim = 0;
    std::size_t rows = 0;
    std::size_t line_no = 0;
    bool saw_record = false;
    std::string line;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) {
            if (saw_record) continue;  // tolerate blank/padding lines
            throw DataError(where(path, line_no) + "blank line before any record");
        }

        const std::vector<std::string> fields = split_fields(line);
        std::vector<double> row(fields.size());
        bool ok = true;
        std::size_t bad = 0;
        for (std::size_t j = 0; j < fields.size(); ++j) {
            if (!parse_double(fields[j], row[j])) {
                ok = false;
                bad = j;
                break;
            }
        }

        if (!ok) {
            // Only the first line may fail to parse; treat it as a header.
            if (!saw_record && line_no == 1) continue;
            throw DataError(where(path, line_no) + "field " + std::to_string(bad + 1) +
                            " is not a number: '" + trim(fields[bad]) + "'");
        }
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (!std::isfinite(row[j])) {
                throw DataError(where(path, line_no) + "field " + std::to_string(j + 1) +
                                " is not finite");
            }
        }

        if (!saw_record) {
            dim = row.size();
            saw_record = true;
        } else if (row.size() != dim) {
            throw DataError(where(path, line_no) + "expected " + std::to_string(dim) +
                            " fields, got " + std::to_string(row.size()));
        }
        values.insert(values.end(), row.begin(), row.end());
        ++rows;
    }

    if (rows == 0) throw DataError(path + ": no records");
    return Dataset(dim, std::move(values));
}

void write_csv_dataset(const std::string& path, const Dataset& data,
                       const std::vector<std::string>& header) {
    if (!header.empty() && header.size() != static_cast<std::size_t>(data.dim)) {
        throw std::invalid_argument("write_csv_dataset: header size does not match dimension");
    }
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path + " for writing");

    if (!header.empty()) {
        for (std::size_t j = 0; j < header.size(); ++j) {
            if (j) out << ',';
            out << header[j];
        }
        out << '\n';
    }
    char buf[64];
    const std::size_t d = static_cast<std::size_t>(data.dim);
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", data.values[i * d + j]);
            if (j) out << ',';
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw DataError("write failed: " + path);
}

}  // namespace mixtest
