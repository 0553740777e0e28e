#pragma once

#include <string>
#include <string_view>

#include "amplex/complex.hpp"

namespace amplex::io {

enum class Format { Text, Structured };

/// `vertices <n>` followed by one line per maximal simplex, lines sorted
/// lexicographically as integer sequences.
std::string to_text(const SimplicialComplex& x);
SimplicialComplex from_text(std::string_view text);

/// {"maximal_simplices": [[...], ...], "vertices": n}
std::string to_structured(const SimplicialComplex& x);
SimplicialComplex from_structured(std::string_view text);

std::string write(const SimplicialComplex& x, Format f);
/// Detects the format from the first non-blank character.
SimplicialComplex read(std::string_view text);

SimplicialComplex read_file(const std::string& path);
void write_file(const std::string& path, const SimplicialComplex& x, Format f);

Format parse_format(std::string_view name);

}  // namespace amplex::io
