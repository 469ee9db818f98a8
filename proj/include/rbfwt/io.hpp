#ifndef RBFWT_IO_HPP
#define RBFWT_IO_HPP

// Plot-ready CSV: one header line, values as decimal with 17 significant
// digits, LF line endings, no trailing separators. Complex values occupy
// two real columns. Data files carry numbers only; run metadata lives in
// a sidecar, so identical inputs reproduce identical bytes.

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "series.hpp"
#include "transforms.hpp"

namespace rbfwt {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;  // rectangular, header-width
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

inline double parse_csv_number(const std::string& field, const std::string& path,
                               std::size_t line_no) {
    const char* s = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    if (end == s || *end != '\0')
        throw domain_error(path + " line " + std::to_string(line_no) +
                           ": not a number: '" + field + "'");
    return v;
}

}  // namespace detail

inline void write_csv(const std::string& path, const CsvTable& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw domain_error("cannot open for writing: " + path);
    for (std::size_t c = 0; c < t.header.size(); ++c) {
        if (c) out << ',';
        out << t.header[c];
    }
    out << '\n';
    for (const auto& row : t.rows) {
        if (row.size() != t.header.size())
            throw domain_error("csv row width " + std::to_string(row.size()) +
                               " does not match header width " +
                               std::to_string(t.header.size()));
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << detail::num_str(row[c]);
        }
        out << '\n';
    }
    if (!out) throw domain_error("write failed: " + path);
}

inline CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw domain_error("cannot open for reading: " + path);
    CsvTable t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) {
            t.header = detail::split_csv_line(line);
            if (t.header.empty() || t.header.back().empty())
                throw domain_error(path + " line 1: empty or trailing-separator header");
            continue;
        }
        if (line.empty() || line == "\r") continue;  // tolerate one blank tail line
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != t.header.size())
            throw domain_error(path + " line " + std::to_string(line_no) + ": expected " +
                               std::to_string(t.header.size()) + " fields, got " +
                               std::to_string(fields.size()));
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields)
            row.push_back(detail::parse_csv_number(f, path, line_no));
        t.rows.push_back(std::move(row));
    }
    if (t.header.empty()) throw domain_error(path + ": empty file");
    return t;
}

// r,value
inline void write_radial_csv(const std::string& path, const RadialSamples& s) {
    if (s.radii.size() != s.values.size())
        throw domain_error("radial samples have mismatched lengths");
    CsvTable t;
    t.header = {"r", "value"};
    t.rows.reserve(s.radii.size());
    for (std::size_t i = 0; i < s.radii.size(); ++i)
        t.rows.push_back({s.radii[i], s.values[i]});
    write_csv(path, t);
}

inline RadialSamples read_radial_csv(const std::string& path) {
    const CsvTable t = read_csv(path);
    if (t.header != std::vector<std::string>{"r", "value"})
        throw domain_error(path + ": expected header 'r,value'");
    RadialSamples s;
    s.radii.reserve(t.rows.size());
    s.values.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        s.radii.push_back(row[0]);
        s.values.push_back(row[1]);
    }
    return s;
}

// lambda,re,im; dimension and spectrum kind are not serialized, the caller
// supplies them when reading
inline void write_spectrum_csv(const std::string& path, const Spectrum& s) {
    CsvTable t;
    t.header = {"lambda", "re", "im"};
    t.rows.reserve(s.lambdas.size());
    for (std::size_t i = 0; i < s.lambdas.size(); ++i)
        t.rows.push_back({s.lambdas[i], s.values[i].real(), s.values[i].imag()});
    write_csv(path, t);
}

inline Spectrum read_spectrum_csv(const std::string& path, double n,
                                  spectrum_kind kind) {
    const CsvTable t = read_csv(path);
    if (t.header != std::vector<std::string>{"lambda", "re", "im"})
        throw domain_error(path + ": expected header 'lambda,re,im'");
    Spectrum s;
    s.n = n;
    s.kind = kind;
    s.lambdas.reserve(t.rows.size());
    s.values.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        s.lambdas.push_back(row[0]);
        s.values.emplace_back(row[1], row[2]);
    }
    return s;
}

}  // namespace rbfwt

#endif  // RBFWT_IO_HPP
