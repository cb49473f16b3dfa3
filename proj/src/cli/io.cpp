#include "qnr/cli/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace qnr::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(std::string_view what, std::string_view text) {
    throw Error(ErrorCode::ParseError, std::string(what) + ": '" + std::string(text) + "'");
}

}  // namespace

std::string format_real(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

std::string format_complex(Complex z) {
    std::string out = format_real(z.real());
    const double im = z.imag() == 0.0 ? 0.0 : z.imag();
    if (im < 0.0) out += "-" + format_real(-im);
    else out += "+" + format_real(im);
    return out + "i";
}

double parse_real(std::string_view s) {
    s = trim(s);
    std::string_view body = s;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    if (body.empty()) bad("empty number", s);
    double v = 0.0;
    const auto r = std::from_chars(body.data(), body.data() + body.size(), v);
    if (r.ec != std::errc{} || r.ptr != body.data() + body.size()) bad("not a number", s);
    if (!std::isfinite(v)) bad("non-finite number", s);
    return v;
}

Complex parse_complex(std::string_view s) {
    s = trim(s);
    if (s.empty()) bad("empty entry", s);
    if (s.back() != 'i' && s.back() != 'j') return {parse_real(s), 0.0};
    const std::string_view body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not leading and not an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_part = [&](std::string_view t) {
        t = trim(t);
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_real(t);
    };
    if (split == std::string_view::npos) return {0.0, imag_part(body)};
    return {parse_real(body.substr(0, split)), imag_part(body.substr(split))};
}

CMat parse_matrix_csv(std::string_view text) {
    std::vector<std::vector<Complex>> rows;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const auto line = trim(text.substr(pos, nl - pos));
        pos = nl + 1;
        if (line.empty() || line.front() == '#') continue;
        std::vector<Complex> row;
        std::size_t c = 0;
        while (true) {
            auto comma = line.find(',', c);
            const auto cell = line.substr(c, comma == std::string_view::npos ? std::string_view::npos : comma - c);
            row.push_back(parse_complex(cell));
            if (comma == std::string_view::npos) break;
            c = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    const std::size_t n = rows.size();
    if (n == 0) throw Error(ErrorCode::ParseError, "csv matrix has no rows");
    std::vector<Complex> entries;
    for (const auto& r : rows) {
        if (r.size() != n) throw Error(ErrorCode::ParseError, "csv matrix is not square");
        entries.insert(entries.end(), r.begin(), r.end());
    }
    return CMat(n, std::move(entries));
}

CMat parse_matrix_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("invalid json: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw Error(ErrorCode::ParseError, "json matrix needs \"dim\" and \"entries\"");
    if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1)
        throw Error(ErrorCode::ParseError, "\"dim\" must be a positive integer");
    const auto n = static_cast<std::size_t>(j["dim"].get<long long>());
    const auto& e = j["entries"];
    if (!e.is_array() || e.size() != n * n) throw Error(ErrorCode::ParseError, "\"entries\" must hold dim^2 pairs");
    std::vector<Complex> entries;
    entries.reserve(n * n);
    for (const auto& p : e) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw Error(ErrorCode::ParseError, "each entry must be a [re, im] pair");
        const double re = p[0].get<double>(), im = p[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im)) throw Error(ErrorCode::ParseError, "non-finite entry");
        entries.emplace_back(re, im);
    }
    return CMat(n, std::move(entries));
}

std::string write_matrix_csv(const CMat& m) {
    std::string out;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            if (j) out += ',';
            out += format_complex(m(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string write_matrix_json(const CMat& m) {
    std::string out = "{\"dim\": " + std::to_string(m.dim()) + ", \"entries\": [";
    bool first = true;
    for (const auto& z : m.entries()) {
        if (!first) out += ", ";
        first = false;
        out += "[" + format_real(z.real()) + ", " + format_real(z.imag()) + "]";
    }
    return out + "]}\n";
}

MatrixFormat detect_format(std::string_view path, std::string_view text) {
    auto ends = [&](std::string_view suf) {
        return path.size() >= suf.size() && path.substr(path.size() - suf.size()) == suf;
    };
    if (ends(".json")) return MatrixFormat::Json;
    if (ends(".csv")) return MatrixFormat::Csv;
    const auto t = trim(text);
    return !t.empty() && t.front() == '{' ? MatrixFormat::Json : MatrixFormat::Csv;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CMat read_matrix_file(const std::string& path) {
    const std::string text = read_text(path);
    return detect_format(path, text) == MatrixFormat::Json ? parse_matrix_json(text) : parse_matrix_csv(text);
}

void write_text(const std::string& path, std::string_view text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    out << text;
}

}  // namespace qnr::cli
