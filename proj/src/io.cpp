#include "aer/io.hpp"

#include "aer/errors.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace aer {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    fs::path tmp = p;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(std::hash<std::string>{}(path) & 0xffff);
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out) throw ConfigError("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, p, ec);
    if (ec) {
        fs::remove(tmp);
        throw ConfigError("cannot move output into place at '" + path + "': " + ec.message());
    }
}

std::string field_csv(const Grid2D& g, int j_begin, int j_end, const std::vector<double>& values) {
    const int nx = g.nx();
    if (values.size() != static_cast<std::size_t>(nx) * (j_end - j_begin + 1)) throw ConfigError("CSV block size mismatch");
    std::string out = "y\\x";
    for (int i = 0; i < nx; ++i) out += "," + format_double(g.x(i));
    out += '\n';
    for (int j = j_begin; j <= j_end; ++j) {
        out += format_double(g.y(j));
        for (int i = 0; i < nx; ++i) out += "," + format_double(values[static_cast<std::size_t>(j - j_begin) * nx + i]);
        out += '\n';
    }
    return out;
}

std::string field_csv(const Field2D& f) { return field_csv(f.grid(), 0, f.grid().m(), f.values()); }

void write_field_csv(const std::string& path, const Field2D& f) { write_file_atomic(path, field_csv(f)); }

Field2D parse_field_csv(const std::string& text, const std::string& origin) {
    std::stringstream in(text);
    std::string line;
    auto fail = [&](int ln, const std::string& m) { throw ConfigError(origin + ":" + std::to_string(ln) + ": " + m); };
    auto cells = [](const std::string& l) {
        std::vector<std::string> c;
        std::stringstream ss(l);
        std::string item;
        while (std::getline(ss, item, ',')) c.push_back(item);
        return c;
    };
    auto num = [&](const std::string& s, int ln) {
        char* end = nullptr;
        double v = std::strtod(s.c_str(), &end);
        if (s.empty() || end != s.c_str() + s.size()) fail(ln, "bad number '" + s + "'");
        return v;
    };
    if (!std::getline(in, line)) fail(1, "empty file");
    auto head = cells(line);
    if (head.size() < 4) fail(1, "header needs at least three x coordinates");
    std::vector<double> xs;
    for (std::size_t i = 1; i < head.size(); ++i) xs.push_back(num(head[i], 1));
    std::vector<double> ys, vals;
    int ln = 1;
    while (std::getline(in, line)) {
        ++ln;
        if (line.empty()) continue;
        auto c = cells(line);
        if (c.size() != head.size()) fail(ln, "row has " + std::to_string(c.size()) + " cells, header has " + std::to_string(head.size()));
        ys.push_back(num(c[0], ln));
        for (std::size_t i = 1; i < c.size(); ++i) vals.push_back(num(c[i], ln));
    }
    if (ys.size() < 3) fail(ln, "need at least three rows");
    double a = -ys.front();
    if (std::abs(ys.back() - a) > 1e-12 * std::max(1.0, a)) fail(ln, "y coordinates are not symmetric about 0");
    Grid2D g(xs.front(), xs.back(), a, static_cast<int>(xs.size()) - 1, static_cast<int>(ys.size()) - 1);
    return Field2D(g, std::move(vals));
}

Field2D read_field_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_field_csv(ss.str(), path);
}

std::string front_csv(const FrontCurve& fc) {
    std::string out = "time,x,h0,h0x\n";
    for (std::size_t k = 0; k < fc.times.size(); ++k)
        for (int i = 0; i <= fc.grid.n(); ++i)
            out += format_double(fc.times[k]) + "," + format_double(fc.grid.x(i)) + "," + format_double(fc.h[k][i]) + "," +
                   format_double(fc.hx[k][i]) + "\n";
    return out;
}

void write_json(const std::string& path, const nlohmann::json& j) { write_file_atomic(path, j.dump(2) + "\n"); }

}  // namespace aer
