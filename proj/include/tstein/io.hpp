#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tstein/matrix.hpp"

namespace tstein {

/// Malformed matrix file; carries the path and 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::string file, std::size_t line, const std::string& reason)
        : Error(file + ":" + std::to_string(line) + ": " + reason), file_(std::move(file)), line_(line) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// 17 significant digits (%.17g); strtod reads the exact same double back.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

inline bool parse_double(const std::string& tok, double& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

} // namespace detail

/**
 * Writes a Matrix Market array file, field complex, general symmetry:
 * header, "rows cols", then one "re im" pair per line in column-major order.
 */
inline void write_matrix_market(std::ostream& os, const ComplexMatrix& m, const std::string& comment = {}) {
    os << "%%MatrixMarket matrix array complex general\n";
    if (!comment.empty()) os << "% " << comment << "\n";
    os << m.rows() << " " << m.cols() << "\n";
    for (const auto& v : m.data()) os << format_double(v.real()) << " " << format_double(v.imag()) << "\n";
}

inline void save_matrix_market(const std::string& path, const ComplexMatrix& m, const std::string& comment = {}) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    write_matrix_market(os, m, comment);
    if (!os) throw IoError("write to '" + path + "' failed");
}

/// Reads array-format files with field complex, real or integer (imaginary parts then zero).
inline ComplexMatrix read_matrix_market(std::istream& is, const std::string& name = "<stream>") {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line)) throw ParseError(name, 1, "empty file");
    ++lineno;
    std::istringstream head(line);
    std::string banner, object, format, field, symmetry;
    head >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket") throw ParseError(name, lineno, "missing %%MatrixMarket banner");
    if (detail::lower(object) != "matrix" || detail::lower(format) != "array")
        throw ParseError(name, lineno, "only 'matrix array' files are supported");
    field = detail::lower(field);
    if (field != "complex" && field != "real" && field != "integer")
        throw ParseError(name, lineno, "unsupported field '" + field + "'");
    if (detail::lower(symmetry) != "general") throw ParseError(name, lineno, "only 'general' symmetry is supported");
    const bool complex_field = field == "complex";

    auto next_data_line = [&](std::vector<std::string>& toks) {
        while (std::getline(is, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            auto first = line.find_first_not_of(" \t");
            if (first == std::string::npos || line[first] == '%') continue;
            toks.clear();
            std::istringstream ls(line);
            for (std::string t; ls >> t;) toks.push_back(t);
            return true;
        }
        return false;
    };

    std::vector<std::string> toks;
    if (!next_data_line(toks)) throw ParseError(name, lineno, "missing size line");
    if (toks.size() != 2) throw ParseError(name, lineno, "size line must hold 'rows cols'");
    std::size_t rows = 0, cols = 0;
    auto parse_size = [&](const std::string& t, std::size_t& out) {
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
        if (ec != std::errc{} || ptr != t.data() + t.size() || out == 0)
            throw ParseError(name, lineno, "invalid dimension '" + t + "'");
    };
    parse_size(toks[0], rows);
    parse_size(toks[1], cols);

    std::vector<Complex> data;
    data.reserve(rows * cols);
    const std::size_t want = complex_field ? 2 : 1;
    while (data.size() < rows * cols) {
        if (!next_data_line(toks))
            throw ParseError(name, lineno, "expected " + std::to_string(rows * cols) + " entries, found " +
                                               std::to_string(data.size()));
        if (toks.size() != want)
            throw ParseError(name, lineno, complex_field ? "entry must be 'real imag'" : "entry must be one number");
        double re = 0.0, im = 0.0;
        if (!detail::parse_double(toks[0], re) || (complex_field && !detail::parse_double(toks[1], im)))
            throw ParseError(name, lineno, "malformed number");
        if (!std::isfinite(re) || !std::isfinite(im)) throw ParseError(name, lineno, "non-finite entry");
        data.emplace_back(re, im);
    }
    if (next_data_line(toks)) throw ParseError(name, lineno, "trailing data after the last entry");
    return ComplexMatrix::from_column_major(rows, cols, std::move(data));
}

inline ComplexMatrix load_matrix_market(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path + "'");
    return read_matrix_market(is, path);
}

} // namespace tstein
