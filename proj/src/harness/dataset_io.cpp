#include "emdlsh/harness/dataset_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "emdlsh/errors.hpp"

namespace emdlsh {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& tok, std::size_t line) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0' || errno == ERANGE)
        throw FormatError("line " + std::to_string(line) + ": bad coordinate '" + tok + "'");
    return v;
}

std::size_t parse_count(const std::string& tok, const char* what) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw FormatError(std::string("header: bad ") + what + " '" + tok + "'");
    return static_cast<std::size_t>(std::stoull(tok));
}

}  // namespace

void write_dataset(std::ostream& os, const Dataset& data) {
    if (data.n() == 0) throw InvalidInput("cannot write an empty dataset");
    os << "EMDSET v1 " << mode_name(data.mode()) << ' ' << data.n() << ' ' << data.s() << ' ' << data.dim();
    if (data.mode() == Mode::grid) os << ' ' << data.delta();
    os << '\n';
    for (std::size_t i = 0; i < data.n(); ++i) {
        if (i > 0) os << '\n';
        for (const Vector& a : data[i]) {
            for (std::size_t j = 0; j < a.dim(); ++j) os << (j ? " " : "") << format_double(a[j]);
            os << '\n';
        }
    }
}

Dataset read_dataset(std::istream& is, std::optional<Mode> expected) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line)) throw FormatError("empty dataset file");
    ++lineno;
    std::istringstream hs(line);
    std::string magic, version, mode_tok, n_tok, s_tok, d_tok, delta_tok, extra;
    hs >> magic >> version >> mode_tok >> n_tok >> s_tok >> d_tok;
    if (magic != "EMDSET" || version != "v1") throw FormatError("missing EMDSET v1 header");
    Mode mode;
    try {
        mode = parse_mode(mode_tok);
    } catch (const InvalidInput&) {
        throw FormatError("header: unknown mode '" + mode_tok + "'");
    }
    if (expected && *expected != mode)
        throw FormatError("mode mismatch: file has " + std::string(mode_name(mode)) + ", expected " +
                          std::string(mode_name(*expected)));
    const std::size_t n = parse_count(n_tok, "n"), s = parse_count(s_tok, "s"), d = parse_count(d_tok, "d");
    std::int64_t delta = 1;
    if (mode == Mode::grid) {
        hs >> delta_tok;
        delta = static_cast<std::int64_t>(parse_count(delta_tok, "delta"));
    }
    if (hs >> extra) throw FormatError("header: trailing token '" + extra + "'");
    if (n == 0 || s == 0 || d == 0) throw FormatError("header: n, s and d must be positive");

    std::vector<PointSet> points;
    points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Vector> elems;
        while (elems.size() < s) {
            if (!std::getline(is, line)) throw FormatError("unexpected end of file in point " + std::to_string(i));
            ++lineno;
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                if (!elems.empty())
                    throw FormatError("line " + std::to_string(lineno) + ": blank line inside a point");
                continue;
            }
            std::istringstream ls(line);
            std::vector<double> coords;
            std::string tok;
            while (ls >> tok) coords.push_back(parse_double(tok, lineno));
            if (coords.size() != d)
                throw FormatError("line " + std::to_string(lineno) + ": expected " + std::to_string(d) +
                                  " coordinates, got " + std::to_string(coords.size()));
            try {
                elems.push_back(Vector::make(mode, std::move(coords), delta));
            } catch (const InvalidInput& e) {
                throw FormatError("line " + std::to_string(lineno) + ": not a " + std::string(mode_name(mode)) +
                                  " vector (" + e.what() + ")");
            }
        }
        points.emplace_back(std::move(elems));
    }
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            throw FormatError("line " + std::to_string(lineno) + ": data after the last point");
    }
    return Dataset(std::move(points));
}

void save_dataset(const std::string& path, const Dataset& data) {
    std::ofstream os(path);
    if (!os) throw FormatError("cannot open " + path + " for writing");
    write_dataset(os, data);
    if (!os) throw FormatError("write failed for " + path);
}

Dataset load_dataset(const std::string& path, std::optional<Mode> expected) {
    std::ifstream is(path);
    if (!is) throw FormatError("cannot open " + path);
    return read_dataset(is, expected);
}

}  // namespace emdlsh
