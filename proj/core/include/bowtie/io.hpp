#pragma once

// JSON serialization of expansions and verification reports. Rationals are
// written as "p/q" strings ("p" for integers); zero coefficients are omitted
// and indices are sorted so that equal inputs give byte-identical files.

#include <string>

#include "bowtie/analytic.hpp"
#include "bowtie/elliptic.hpp"
#include "bowtie/siegel2.hpp"
#include "bowtie/strong_symmetry.hpp"

namespace bowtie::io {

std::string to_json(const elliptic::QExpansion& f);
std::string to_json(const siegel2::SiegelExpansion& F);
std::string to_json(const strong_symmetry::BowtieReport& report);

elliptic::QExpansion qexpansion_from_json(const std::string& text);
siegel2::SiegelExpansion siegel_expansion_from_json(const std::string& text);

/// Writes text and a trailing newline to path (or stdout for "-"); throws
/// std::runtime_error on failure.
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace bowtie::io
