#include "report.hpp"

#include <cmath>
#include <string>

#include "tstein/io.hpp"

namespace tstein::cli {

namespace {

void write(const Json& j, int indent, int depth, std::string& out) {
    const auto pad = [&](int d) {
        if (indent >= 0) out += '\n' + std::string(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += '{';
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first) out += ',';
            first = false;
            pad(depth + 1);
            out += Json(key).dump();
            out += indent >= 0 ? ": " : ":";
            write(value, indent, depth + 1, out);
        }
        pad(depth);
        out += '}';
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        // numeric leaves stay on one line to keep matrices readable
        bool flat = true;
        for (const auto& v : j)
            if (v.is_structured()) flat = false;
        out += '[';
        bool first = true;
        for (const auto& v : j) {
            if (!first) out += flat && indent >= 0 ? ", " : ",";
            first = false;
            if (!flat) pad(depth + 1);
            write(v, indent, depth + 1, out);
        }
        if (!flat) pad(depth);
        out += ']';
        return;
    }
    case Json::value_t::number_float: {
        const double v = j.get<double>();
        out += std::isfinite(v) ? format_double(v) : "null";
        return;
    }
    default:
        out += j.dump();
    }
}

} // namespace

std::string dump_json(const Json& j, int indent) {
    std::string out;
    write(j, indent, 0, out);
    return out;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json complex_list_json(const std::vector<Complex>& values) {
    Json arr = Json::array();
    for (const auto& v : values) arr.push_back(complex_json(v));
    return arr;
}

Json matrix_json(const ComplexMatrix& m) {
    Json data = Json::array();
    for (const auto& v : m.data()) data.push_back(complex_json(v));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

} // namespace tstein::cli
