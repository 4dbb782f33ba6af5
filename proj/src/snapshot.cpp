#include "bsq/snapshot.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace bsq {

namespace {

[[noreturn]] void fail(int line, const std::string& message) {
    throw SnapshotFormatError("snapshot line " + std::to_string(line) + ": " + message);
}

double parse_double(std::string_view text, int line) {
    std::string owned(text);
    char* end = nullptr;
    const double value = std::strtod(owned.c_str(), &end);
    if (end == owned.c_str() || *end != '\0') fail(line, "cannot parse number '" + owned + "'");
    return value;
}

int parse_int(std::string_view text, int line) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        fail(line, "cannot parse integer '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string snapshot_filename(long index) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "snapshot_%06ld.dat", index);
    return buf;
}

void write_snapshot(std::ostream& out, const Snapshot& s) {
    if (s.x.size() != static_cast<std::size_t>(s.n) || s.eta.size() != s.x.size() || s.u.size() != s.x.size()) {
        throw std::invalid_argument("snapshot arrays do not match n");
    }
    out << "n=" << s.n << '\n';
    out << "dx=" << format_double(s.dx) << '\n';
    out << "t=" << format_double(s.time) << '\n';
    out << "alpha=" << format_double(s.alpha) << '\n';
    out << "beta=" << format_double(s.beta) << '\n';
    out << "froude=" << format_double(s.froude) << '\n';
    out << "sponge=" << (s.sponge ? 1 : 0) << '\n';
    if (s.stationary) out << "stationary=1\n";
    if (s.amplitude) out << "amplitude=" << format_double(*s.amplitude) << '\n';
    if (s.residual) out << "residual=" << format_double(*s.residual) << '\n';
    if (s.iterations) out << "iterations=" << *s.iterations << '\n';
    std::string row;
    for (int j = 0; j < s.n; ++j) {
        row = format_double(s.x[j]);
        row += ' ';
        row += format_double(s.eta[j]);
        row += ' ';
        row += format_double(s.u[j]);
        row += '\n';
        out << row;
    }
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& snapshot) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_snapshot(out, snapshot);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

Snapshot read_snapshot(std::istream& in) {
    Snapshot s;
    bool have_n = false;
    bool have_dx = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq != std::string::npos) {
            if (!s.x.empty()) fail(line_no, "header line after data rows");
            const std::string key = line.substr(0, eq);
            const std::string_view value = std::string_view(line).substr(eq + 1);
            if (key == "n") {
                s.n = parse_int(value, line_no);
                have_n = true;
            } else if (key == "dx") {
                s.dx = parse_double(value, line_no);
                have_dx = true;
            } else if (key == "t") {
                s.time = parse_double(value, line_no);
            } else if (key == "alpha") {
                s.alpha = parse_double(value, line_no);
            } else if (key == "beta") {
                s.beta = parse_double(value, line_no);
            } else if (key == "froude") {
                s.froude = parse_double(value, line_no);
            } else if (key == "sponge") {
                s.sponge = parse_int(value, line_no) != 0;
            } else if (key == "stationary") {
                s.stationary = parse_int(value, line_no) != 0;
            } else if (key == "amplitude") {
                s.amplitude = parse_double(value, line_no);
            } else if (key == "residual") {
                s.residual = parse_double(value, line_no);
            } else if (key == "iterations") {
                s.iterations = parse_int(value, line_no);
            } else {
                fail(line_no, "unknown header key '" + key + "'");
            }
            continue;
        }
        std::istringstream row(line);
        std::string a, b, c, extra;
        if (!(row >> a >> b >> c) || (row >> extra)) fail(line_no, "expected three columns");
        s.x.push_back(parse_double(a, line_no));
        s.eta.push_back(parse_double(b, line_no));
        s.u.push_back(parse_double(c, line_no));
    }
    if (!have_n || !have_dx) throw SnapshotFormatError("snapshot header is missing n or dx");
    if (static_cast<int>(s.x.size()) != s.n) {
        throw SnapshotFormatError("snapshot has " + std::to_string(s.x.size()) + " rows, header says n=" +
                                  std::to_string(s.n));
    }
    return s;
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_snapshot(in);
}

}  // namespace bsq
