#pragma once

// Matrix files.
//   json: {"dim": n, "entries": [[re, im], ...]} row-major
//   csv:  one line per row, entries "a+bi", "a-bi" or a bare real
// Numbers are written with 17 significant digits and parsed with from_chars,
// so a write/read cycle reproduces every bit and no locale is consulted.

#include <string>
#include <string_view>

#include "qnr/matcore.hpp"

namespace qnr::cli {

enum class MatrixFormat { Json, Csv };

std::string format_real(double v);
std::string format_complex(Complex z);

/// Throws ParseError.
double parse_real(std::string_view s);
Complex parse_complex(std::string_view s);

CMat parse_matrix_csv(std::string_view text);
CMat parse_matrix_json(std::string_view text);
std::string write_matrix_csv(const CMat& m);
std::string write_matrix_json(const CMat& m);

/// By extension (.json / .csv), else by the first non-blank character.
MatrixFormat detect_format(std::string_view path, std::string_view text);
CMat read_matrix_file(const std::string& path);

std::string read_text(const std::string& path);
/// Writes to `path`, or to stdout when `path` is empty or "-".
void write_text(const std::string& path, std::string_view text);

}  // namespace qnr::cli
