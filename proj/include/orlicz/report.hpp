/**
 * @file report.hpp
 * @brief Verification report rows, their CSV and JSON forms, and JSON specs
 *        for balls and c-sets.
 *
 * Numbers are written with %.17g and rows in input order, so a report is a
 * byte-for-byte function of the run configuration.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "orlicz/ball.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/sets.hpp"

namespace orlicz {

struct CheckRow {
    std::string check_id;
    std::uint64_t instance_hash = 0;
    double margin = 0.0;
    double tol = 0.0;
    Verdict verdict = Verdict::vacuous;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view text);
std::string hash_hex(std::uint64_t h);
/// %.17g.
std::string format_double(double v);

struct Counts {
    std::size_t pass = 0, fail = 0, vacuous = 0;
};
Counts count_verdicts(const std::vector<CheckRow>& rows);

/// check_id,instance_hash,margin,tol,verdict
std::string rows_csv(const std::vector<CheckRow>& rows);
void write_text(const std::string& path, const std::string& text);

/// Counts per check_id and overall, plus the row with the smallest margin + tol.
std::string summary_json(const std::string& suite, std::uint64_t seed, const std::vector<CheckRow>& rows);

/// {"young": [g, ...]} with g one of {"type": "power", "p": 2, "scale": 1},
///   {"type": "pieces", "points": [[0,0],[1,"inf"]], "interp": "linear"}, {"type": "cube", "width": 1}
/// | {"type": "lp", "n": 3, "p": 2} | {"type": "cube", "n": 3, "half_width": 1}
/// | {"type": "box", "half_widths": [1, 2]}
/// | {"type": "functions", "functions": [f, ...]} with f one of
///   {"kind": "power", "p": 2, "scale": 1}, {"kind": "cube", "width": 1},
///   {"kind": "points", "points": [[0,0],[1,1]], "interp": "linear", "p": 1, "cap": 2}.
/// Point values may be the string "inf".
/// Throws std::invalid_argument on malformed input.
OrliczBall parse_ball(const std::string& json_text);
/// {"corners": [[1.0, 0.2], [0.3, 1.0]]}
CSet parse_cset(const std::string& json_text);
/// {"xs": [0, 0.5], "heights": [1.0, 0.866]}
StairSet parse_stair(const std::string& json_text);

/// Reads a whole file; throws std::invalid_argument when it cannot be opened.
std::string read_text(const std::string& path);

}  // namespace orlicz
